//! Closed-form invariants of the parametric families, on raw (unnormalized)
//! coefficients.
//!
//! Residual and discriminant values are derived from the family's quartic
//! coefficients. The expected zero/nonzero pattern is kept alongside as a
//! [`Claim`], since it need not agree with the derived value.

use crate::catalog::catalog_state;
use crate::error::{Error, Result};
use crate::invariants::{aggregate_invariants, degree, QuarticCoeffs};
use crate::params::Params;
use crate::registry::{Named, Registry};
use crate::state::Amplitude;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Zero,
    NonZero,
    Unstated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyExpected {
    pub i48: Amplitude,
    pub n_sq: f64,
    pub dres: f64,
    pub delta: Amplitude,
    pub dres_claim: Claim,
    pub delta_claim: Claim,
}

impl FamilyExpected {
    fn from_quartic(q: QuarticCoeffs, i48: Amplitude, n_sq: f64, dres_claim: Claim, delta_claim: Claim) -> Self {
        Self { i48, n_sq, dres: n_sq - 2.0 * i48.norm(), delta: q.delta(), dres_claim, delta_claim }
    }
}

pub trait FamilyFormula: Named + Send + Sync {
    fn params(&self) -> &'static [&'static str];
    fn expected(&self, p: &Params) -> Result<FamilyExpected>;
}

fn zero() -> Amplitude {
    Amplitude::new(0.0, 0.0)
}

pub struct GAbcd;

impl Named for GAbcd {
    fn name(&self) -> &'static str {
        "G_abcd"
    }
}

impl FamilyFormula for GAbcd {
    fn params(&self) -> &'static [&'static str] {
        &["a", "b", "c", "d"]
    }

    fn expected(&self, p: &Params) -> Result<FamilyExpected> {
        let (a, b, c, d) = (p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?);
        let big_a = (a * a - b * b) * (d * d - c * c);
        let big_b = (a * a - d * d) * (b * b - c * c) / 4.0;
        let t = (big_a - 2.0 * big_b) / 6.0;
        let q = QuarticCoeffs { i3: [big_b, big_b], t, p: [zero(), zero()] };
        let i48 = (big_a - 2.0 * big_b).powu(2) / 12.0 + big_b * big_b;
        let n_sq = (big_a - 2.0 * big_b).norm_sqr() / 6.0 + 2.0 * big_b.norm_sqr();
        Ok(FamilyExpected::from_quartic(q, i48, n_sq, Claim::NonZero, Claim::NonZero))
    }
}

pub struct LAbc2;

impl Named for LAbc2 {
    fn name(&self) -> &'static str {
        "L_abc2"
    }
}

impl FamilyFormula for LAbc2 {
    fn params(&self) -> &'static [&'static str] {
        &["a", "b", "c"]
    }

    fn expected(&self, p: &Params) -> Result<FamilyExpected> {
        let (a, b, c) = (p.get("a")?, p.get("b")?, p.get("c")?);
        let x = (a * a - c * c) * (b * b - c * c);
        let y = c * (a * a - b * b);
        let q = QuarticCoeffs { i3: [y, zero()], t: x / 6.0, p: [zero(), zero()] };
        let mut e = FamilyExpected::from_quartic(q, x * x / 12.0, x.norm_sqr() / 6.0 + y.norm_sqr(), Claim::Unstated, Claim::Zero);
        e.dres = y.norm_sqr();
        Ok(e)
    }
}

pub struct La2b2;

impl Named for La2b2 {
    fn name(&self) -> &'static str {
        "L_a2b2"
    }
}

impl FamilyFormula for La2b2 {
    fn params(&self) -> &'static [&'static str] {
        &["a", "b"]
    }

    fn expected(&self, p: &Params) -> Result<FamilyExpected> {
        let (a, b) = (p.get("a")?, p.get("b")?);
        let x = (a * a - b * b).powu(4);
        let mut e = FamilyExpected::from_quartic(
            QuarticCoeffs { i3: [zero(), zero()], t: (a * a - b * b).powu(2) / 6.0, p: [zero(), zero()] },
            x / 12.0,
            x.norm() / 6.0,
            Claim::Zero,
            Claim::Zero,
        );
        e.dres = 0.0;
        e.delta = zero();
        Ok(e)
    }
}

pub struct La20;

impl Named for La20 {
    fn name(&self) -> &'static str {
        "L_a2_0_3p1t"
    }
}

impl FamilyFormula for La20 {
    fn params(&self) -> &'static [&'static str] {
        &["a"]
    }

    fn expected(&self, p: &Params) -> Result<FamilyExpected> {
        let a = p.get("a")?;
        let x = a.powu(8);
        let mut e = FamilyExpected::from_quartic(
            QuarticCoeffs { i3: [zero(), zero()], t: a.powu(4) / 6.0, p: [zero(), zero()] },
            x / 12.0,
            x.norm() / 6.0,
            Claim::Zero,
            Claim::Zero,
        );
        e.dres = 0.0;
        e.delta = zero();
        Ok(e)
    }
}

pub struct PsiAb;

impl Named for PsiAb {
    fn name(&self) -> &'static str {
        "Psi_ab"
    }
}

impl FamilyFormula for PsiAb {
    fn params(&self) -> &'static [&'static str] {
        &["a", "b"]
    }

    fn expected(&self, p: &Params) -> Result<FamilyExpected> {
        let (a, b) = (p.get("a")?, p.get("b")?);
        let q = QuarticCoeffs {
            i3: [a * a * b * b, b.powu(4)],
            t: (a.powu(4) - 2.0 * a * b.powu(3)) / 6.0,
            p: [a.powu(3) * b / 2.0, -a * a * b * b / 2.0],
        };
        let i48 = (a.powu(4) + 4.0 * a * b.powu(3)).powu(2) / 12.0;
        Ok(FamilyExpected::from_quartic(q, i48, q.n_sq(), Claim::NonZero, Claim::NonZero))
    }
}

pub type FamilyRegistry = Registry<dyn FamilyFormula>;

pub fn default_families() -> FamilyRegistry {
    let mut reg = FamilyRegistry::new("family");
    reg.register(Box::new(GAbcd))
        .register(Box::new(LAbc2))
        .register(Box::new(La2b2))
        .register(Box::new(La20))
        .register(Box::new(PsiAb));
    reg
}

pub fn family_expected(family: &str, params: &Params) -> Result<FamilyExpected> {
    let reg = default_families();
    let f = reg.get(family).map_err(|_| Error::UnknownFamily(family.to_string()))?;
    f.expected(params)
}

/// `|x - y| / max(|y|, scale)`, or the absolute difference when both vanish.
pub fn relative_deviation(numeric: Amplitude, expected: Amplitude, scale: f64) -> f64 {
    let denom = expected.norm().max(scale);
    let diff = (numeric - expected).norm();
    if denom > 0.0 {
        diff / denom
    } else {
        diff
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deviation {
    pub numeric: Amplitude,
    pub expected: Amplitude,
    pub absolute: f64,
    pub relative: f64,
}

impl Deviation {
    fn new(numeric: Amplitude, expected: Amplitude, scale: f64) -> Self {
        Self { numeric, expected, absolute: (numeric - expected).norm(), relative: relative_deviation(numeric, expected, scale) }
    }
}

/// Numeric invariants of a family member against the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyComparison {
    pub family: String,
    pub params: Params,
    pub expected: FamilyExpected,
    pub i48: Deviation,
    pub n_sq: Deviation,
    pub dres: Deviation,
    pub delta: Deviation,
}

impl FamilyComparison {
    pub fn max_relative(&self) -> f64 {
        [&self.i48, &self.n_sq, &self.dres, &self.delta].iter().map(|d| d.relative).fold(0.0, f64::max)
    }
}

/// Builds the raw family member and compares. Relative deviations are taken
/// against the larger of the expected modulus, the sum of moduli of the
/// terms that make up each quantity and `|a|^degree`, so values that cancel
/// to zero are judged on the scale of their ingredients.
pub fn compare_family(family: &str, params: &Params) -> Result<FamilyComparison> {
    let expected = family_expected(family, params)?;
    let s = catalog_state(family, params)?;
    let r = aggregate_invariants(&s)?;
    let q = r.triples[3].coeffs;
    let re = |x: f64| Amplitude::new(x, 0.0);
    let floor = |deg: i32| r.norm.powi(deg);
    let i48_scale = q.i48_scale().max(floor(degree::I48));
    let delta_scale = (r.i48.norm().powi(3) + 27.0 * r.j12.norm_sqr()).max(floor(degree::DELTA));
    let n_scale = r.n_triple_sq[3].max(floor(degree::N_SQ_FOUR));
    Ok(FamilyComparison {
        family: family.to_string(),
        params: params.clone(),
        i48: Deviation::new(r.i48, expected.i48, i48_scale),
        n_sq: Deviation::new(re(r.n_triple_sq[3]), re(expected.n_sq), n_scale),
        dres: Deviation::new(re(r.dres), re(expected.dres), n_scale + 2.0 * r.i48.norm()),
        delta: Deviation::new(r.delta24, expected.delta, delta_scale),
        expected,
    })
}
