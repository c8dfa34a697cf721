//! Seven-class scheme for four-qubit states.
//!
//! The zero pattern of `(I_(4,8), D_{A4}, Delta)` selects the class; font
//! counts for transposed qubit 1 separate I from III and V from VI.

pub mod families;
pub mod minimize;

use std::fmt;

pub use families::{compare_family, default_families, family_expected, FamilyComparison, FamilyExpected};
pub use minimize::{font_minimize, FontMinOptions, FontMinResult};

use crate::error::Result;
use crate::fonts::font_counts;
use crate::invariants::{aggregate_invariants, FourQubitReport};
use crate::ptrans::reduced_single;
use crate::state::PureState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MajorClass {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    /// Product across every single-qubit cut.
    Unentangled,
    Unresolved,
}

impl fmt::Display for MajorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
            Self::IV => "IV",
            Self::V => "V",
            Self::VI => "VI",
            Self::VII => "VII",
            Self::Unentangled => "unentangled",
            Self::Unresolved => "unresolved",
        };
        f.write_str(s)
    }
}

/// Which row produced class III: vanishing residual `D_{A4}`, or a nonzero
/// residual with no three-way font on qubit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassIiiReading {
    ResidualZero,
    ResidualNonZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassSignature {
    pub i48_zero: bool,
    pub dres_zero: bool,
    pub delta_zero: bool,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
}

/// Decision table. `(I, D, Delta)` nonzero-pattern to class:
///
/// | I48 | D   | Delta | class                      |
/// |-----|-----|-------|----------------------------|
/// | !=0 | !=0 | !=0   | I if `n3 >= 1`, else III   |
/// | !=0 | !=0 | 0     | II                         |
/// | !=0 | 0   | !=0   | III                        |
/// | !=0 | 0   | 0     | IV                         |
/// | 0   | !=0 | 0     | V if `n2 >= 1`, else VI    |
/// | 0   | 0   | 0     | VII                        |
///
/// Anything else is unresolved.
pub fn decide(sig: &ClassSignature) -> (MajorClass, Option<ClassIiiReading>) {
    use MajorClass::*;
    match (sig.i48_zero, sig.dres_zero, sig.delta_zero) {
        (false, false, false) if sig.n3 >= 1 => (I, None),
        (false, false, false) => (III, Some(ClassIiiReading::ResidualNonZero)),
        (false, false, true) => (II, None),
        (false, true, false) => (III, Some(ClassIiiReading::ResidualZero)),
        (false, true, true) => (IV, None),
        (true, false, true) if sig.n2 >= 1 => (V, None),
        (true, false, true) => (VI, None),
        (true, true, true) => (VII, None),
        _ => (Unresolved, None),
    }
}

#[derive(Debug, Clone)]
pub struct ClassReport {
    pub major_class: MajorClass,
    pub iii_reading: Option<ClassIiiReading>,
    pub signature: ClassSignature,
    pub minimized_state_used: bool,
    pub minimization: Option<FontMinResult>,
    pub invariants: FourQubitReport,
    pub notes: Vec<String>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
    /// Run [`font_minimize`] before counting fonts.
    pub font_min: Option<FontMinOptions>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { tol: crate::invariants::DEFAULT_TOL, font_min: None }
    }
}

/// True when every single-qubit reduced state is pure.
pub fn is_fully_product(s: &PureState, tol: f64) -> Result<bool> {
    let scale = tol * s.norm_sqr().powi(2);
    for q in 1..=s.n_qubits() {
        let r = reduced_single(s, q)?;
        if (r[0][0] * r[1][1] - r[0][1] * r[1][0]).norm() > scale {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classify(s: &PureState, tol: f64, use_font_min: bool) -> Result<ClassReport> {
    let font_min = use_font_min.then(|| FontMinOptions { tol, ..Default::default() });
    classify_with(s, &ClassifyOptions { tol, font_min })
}

pub fn classify_with(s: &PureState, opts: &ClassifyOptions) -> Result<ClassReport> {
    s.require_arity(4)?;
    let tol = opts.tol;
    let invariants = aggregate_invariants(s)?;
    let mut notes = Vec::new();
    let minimization = match &opts.font_min {
        Some(fm) => Some(font_minimize(s, &FontMinOptions { tol, ..fm.clone() })?),
        None => None,
    };
    let counted = minimization.as_ref().map_or(s, |m| &m.state);
    let counts = font_counts(counted, 1, tol)?;
    let signature = ClassSignature {
        i48_zero: invariants.i48_zero(tol),
        dres_zero: invariants.dres_zero(tol),
        delta_zero: invariants.delta_zero(tol),
        n2: counts[0],
        n3: counts[1],
        n4: counts[2],
    };
    let (major_class, iii_reading) = if is_fully_product(s, tol)? {
        (MajorClass::Unentangled, None)
    } else {
        decide(&signature)
    };
    if let Some(m) = &minimization {
        if m.guard_tripped {
            notes.push("minimized representative changed an invariant; counted fonts on the input".into());
        }
        if m.objective.count == m.initial.count && m.initial.count > 1 {
            notes.push(format!("font minimization did not reduce the count ({} fonts)", m.initial.count));
        }
    }
    match (major_class, iii_reading) {
        (MajorClass::I, _) | (MajorClass::III, Some(ClassIiiReading::ResidualNonZero)) => notes.push(format!(
            "I vs III decided by three-way font count n3 = {}{}",
            signature.n3,
            if opts.font_min.is_none() { " on the unminimized representative" } else { "" }
        )),
        (MajorClass::III, Some(ClassIiiReading::ResidualZero)) => notes.push("class III with vanishing residual D_A4".into()),
        (MajorClass::V | MajorClass::VI, _) => notes.push(format!("V vs VI decided by two-way font count n2 = {}", signature.n2)),
        (MajorClass::Unresolved, _) => notes.push("zero pattern of (I48, D_A4, Delta) matches no row".into()),
        _ => {}
    }
    if invariants.cross_triple_deviation > 1e-9 {
        notes.push(format!("I48 differs across singled qubits (relative {:.3e})", invariants.cross_triple_deviation));
    }
    Ok(ClassReport {
        major_class,
        iii_reading,
        signature,
        minimized_state_used: minimization.is_some(),
        minimization,
        invariants,
        notes,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_state;
    use crate::params::Params;
    use crate::state::Amplitude;

    fn class_of(name: &str, p: Params) -> MajorClass {
        let s = catalog_state(name, &p).unwrap().normalize().unwrap();
        classify(&s, 1e-9, false).unwrap().major_class
    }

    #[test]
    fn table_is_total() {
        for bits in 0..8u8 {
            for n2 in 0..2 {
                for n3 in 0..2 {
                    let sig = ClassSignature {
                        i48_zero: bits & 4 != 0,
                        dres_zero: bits & 2 != 0,
                        delta_zero: bits & 1 != 0,
                        n2,
                        n3,
                        n4: 1,
                    };
                    let (class, reading) = decide(&sig);
                    assert_eq!(reading.is_some(), class == MajorClass::III);
                    let unresolved = sig.i48_zero && !sig.delta_zero;
                    assert_eq!(class == MajorClass::Unresolved, unresolved, "{sig:?}");
                }
            }
        }
    }

    #[test]
    fn worked_examples() {
        let none = Params::new;
        assert_eq!(class_of("GHZ4", none()), MajorClass::IV);
        assert_eq!(class_of("W4", none()), MajorClass::VII);
        assert_eq!(class_of("Psi_a", none().with("a", 1.0)), MajorClass::II);
        let g = |a: f64, b: f64, c: f64, d: f64| none().with("a", a).with("b", b).with("c", c).with("d", d);
        assert_eq!(class_of("G_abcd", g(1.0, 0.0, 0.0, 1.0)), MajorClass::IV);
        assert_eq!(class_of("G_abcd", g(0.0, 1.0, 1.0, 0.0)), MajorClass::IV);
        assert_eq!(class_of("G_abcd", g(1.0, 1.0, 1.0, 1.0)), MajorClass::VII);
        assert_eq!(class_of("G_abcd", g(1.0, 2.0, 3.0, 4.0)), MajorClass::III);
    }

    #[test]
    fn product_state_is_unentangled() {
        let s = PureState::from_terms(4, &[("0000", Amplitude::new(1.0, 0.0))]).unwrap();
        let r = classify(&s, 1e-9, true).unwrap();
        assert_eq!(r.major_class, MajorClass::Unentangled);
        assert_eq!(r.signature.n2 + r.signature.n3 + r.signature.n4, 0);
    }
}
