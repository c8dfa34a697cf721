use crate::error::{Error, Result};
use crate::fonts::{d2, d3, d4, font_det, FontSpec, Spectator};
use crate::state::{Amplitude, PureState};

use super::{degree, is_zero};

/// Coefficients of the binary quartic
/// `I3_0 y^4 + 4 P_0 y^3 + 6 T y^2 + 4 P_1 y + I3_1` obtained from the
/// three-qubit invariant of `y psi_0 + psi_1`, where `psi_b` is the slice with
/// the singled qubit fixed to `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticCoeffs {
    /// `(I3)_{(A4)0}, (I3)_{(A4)1}`.
    pub i3: [Amplitude; 2],
    pub t: Amplitude,
    pub p: [Amplitude; 2],
}

impl QuarticCoeffs {
    /// `3 T^2 - 4 P_0 P_1 + I3_0 I3_1`.
    pub fn i48(&self) -> Amplitude {
        3.0 * self.t * self.t - 4.0 * self.p[0] * self.p[1] + self.i3[0] * self.i3[1]
    }

    /// `det [[I3_1, P_1, T], [P_1, T, P_0], [T, P_0, I3_0]]`.
    pub fn j12(&self) -> Amplitude {
        let (a, b, c) = (self.i3[1], self.p[1], self.t);
        let (d, e) = (self.p[0], self.i3[0]);
        a * (c * e - d * d) - b * (b * e - d * c) + c * (b * d - c * c)
    }

    pub fn delta(&self) -> Amplitude {
        let (i, j) = (self.i48(), self.j12());
        i * i * i - 27.0 * j * j
    }

    /// `|I3_0|^2 + |I3_1|^2 + 6|T|^2 + 4|P_0|^2 + 4|P_1|^2`.
    pub fn n_sq(&self) -> f64 {
        self.i3[0].norm_sqr()
            + self.i3[1].norm_sqr()
            + 6.0 * self.t.norm_sqr()
            + 4.0 * (self.p[0].norm_sqr() + self.p[1].norm_sqr())
    }

    /// Coefficients of `y^4, y^3, y^2, y, 1`.
    pub fn binary_quartic(&self) -> [Amplitude; 5] {
        [self.i3[0], 4.0 * self.p[0], 6.0 * self.t, 4.0 * self.p[1], self.i3[1]]
    }

    /// Sum of the moduli of the terms of `I_(4,8)`, a scale for relative
    /// comparisons.
    pub fn i48_scale(&self) -> f64 {
        3.0 * self.t.norm_sqr() + 4.0 * (self.p[0] * self.p[1]).norm() + (self.i3[0] * self.i3[1]).norm()
    }
}

/// `D^{000}_{(A4)i} + D^{001}_{(A4)i}`.
fn s4(s: &PureState, i: u8) -> Result<Amplitude> {
    Ok(d3(s, Spectator::A4, 0, 0, i)? + d3(s, Spectator::A4, 0, 1, i)?)
}

/// `D^{000}_{(A3)i} + D^{001}_{(A3)i}` on the triple `A1A2A4`.
fn s3(s: &PureState, i: u8) -> Result<Amplitude> {
    Ok(d3(s, Spectator::A3, 0, 0, i)? + d3(s, Spectator::A3, 0, 1, i)?)
}

/// `(I3^{A1A2A3})_{(A4)i4} = (D^{000}_{(A4)i4} + D^{001}_{(A4)i4})^2 - 4 D^{00}_{(A3)0(A4)i4} D^{00}_{(A3)1(A4)i4}`.
pub fn i3_conditional(s: &PureState, i4: u8) -> Result<Amplitude> {
    s.require_arity(4)?;
    let sum = s4(s, i4)?;
    Ok(sum * sum - 4.0 * d2(s, 0, i4)? * d2(s, 1, i4)?)
}

/// `D^{0000} + D^{0011} - D^{0010} - D^{0001}`.
pub fn i4(s: &PureState) -> Result<Amplitude> {
    s.require_arity(4)?;
    Ok(d4(s, 0, 0)? + d4(s, 1, 1)? - d4(s, 1, 0)? - d4(s, 0, 1)?)
}

/// `(T, P_0, P_1)` with qubit 4 singled out.
pub fn t_p_invariants(s: &PureState) -> Result<(Amplitude, Amplitude, Amplitude)> {
    let q = quartic_coeffs(s)?;
    Ok((q.t, q.p[0], q.p[1]))
}

/// Quartic coefficients with qubit 4 singled out.
pub fn quartic_coeffs(s: &PureState) -> Result<QuarticCoeffs> {
    s.require_arity(4)?;
    let big_s = d4(s, 0, 0)? + d4(s, 1, 1)? + d4(s, 1, 0)? + d4(s, 0, 1)?;
    let (a0, a1) = (s3(s, 0)?, s3(s, 1)?);
    let (b0, b1) = (s4(s, 0)?, s4(s, 1)?);
    let d = |i3, i4| d2(s, i3, i4);
    let t = big_s * big_s / 6.0 - (2.0 / 3.0) * a0 * a1 + b0 * b1 / 3.0
        - (2.0 / 3.0) * (d(0, 0)? * d(1, 1)? + d(0, 1)? * d(1, 0)?);
    let p0 = 0.5 * b0 * big_s - (d(1, 0)? * a0 + d(0, 0)? * a1);
    let p1 = 0.5 * b1 * big_s - (d(1, 1)? * a0 + d(0, 1)? * a1);
    Ok(QuarticCoeffs { i3: [b0 * b0 - 4.0 * d(0, 0)? * d(1, 0)?, b1 * b1 - 4.0 * d(0, 1)? * d(1, 1)?], t, p: [p0, p1] })
}

fn check_singled(s: &PureState, singled: usize) -> Result<()> {
    s.require_arity(4)?;
    if !(1..=4).contains(&singled) {
        return Err(Error::QubitOutOfRange { qubit: singled, n: 4 });
    }
    Ok(())
}

fn coeffs_singled(s: &PureState, singled: usize) -> Result<QuarticCoeffs> {
    check_singled(s, singled)?;
    quartic_coeffs(&s.with_qubit_last(singled)?)
}

pub fn i48(s: &PureState) -> Result<Amplitude> {
    Ok(quartic_coeffs(s)?.i48())
}

pub fn j12(s: &PureState) -> Result<Amplitude> {
    Ok(quartic_coeffs(s)?.j12())
}

pub fn delta24(s: &PureState) -> Result<Amplitude> {
    Ok(quartic_coeffs(s)?.delta())
}

/// `(N_{Al}^{AiAjAk})^2` with `singled = l`.
pub fn n_triple_sq(s: &PureState, singled: usize) -> Result<f64> {
    Ok(coeffs_singled(s, singled)?.n_sq())
}

/// `I^{ApAq}_{ArAs} = sum_{ir,is} |D^{00}_{(Ar)ir(As)is}|` for the pair
/// `{p, q}`, transposing the lower qubit.
pub fn pair_sum(s: &PureState, p: usize, q: usize) -> Result<f64> {
    s.require_arity(4)?;
    let (lo, hi) = (p.min(q), p.max(q));
    if lo == hi || lo == 0 || hi > 4 {
        return Err(Error::InvalidPermutation(vec![p, q]));
    }
    let mut total = 0.0;
    for t in 0..4u8 {
        let spec = FontSpec::new(lo, &[lo, hi], &[0], &[t >> 1, t & 1]);
        total += font_det(s, &spec)?.norm();
    }
    Ok(total)
}

/// Invariants built from one choice of singled qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleInvariants {
    pub singled: usize,
    pub coeffs: QuarticCoeffs,
    pub i48: Amplitude,
    pub j12: Amplitude,
    pub delta24: Amplitude,
    pub n_sq: f64,
    /// `(N)^2 - 2 |I_(4,8)|`.
    pub dres: f64,
}

impl TripleInvariants {
    fn from_coeffs(singled: usize, coeffs: QuarticCoeffs) -> Self {
        let i48 = coeffs.i48();
        let n_sq = coeffs.n_sq();
        Self { singled, coeffs, i48, j12: coeffs.j12(), delta24: coeffs.delta(), n_sq, dres: n_sq - 2.0 * i48.norm() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourQubitReport {
    /// Qubit whose slices define the headline quartic.
    pub singled: usize,
    pub norm: f64,
    pub i4: Amplitude,
    pub tau4: f64,
    pub i3_cond: [Amplitude; 2],
    pub t_inv: Amplitude,
    pub p_inv: [Amplitude; 2],
    pub i48: Amplitude,
    pub j12: Amplitude,
    pub delta24: Amplitude,
    /// `(N_{Al})^2` for `l = 1..4`.
    pub n_triple_sq: [f64; 4],
    /// `16 ((N_{A4})^2 + (N_{A3})^2 + (N_{A2})^2)`.
    pub n44_sq: f64,
    pub n48: f64,
    /// `((p, q), I^{ApAq})` for the six pairs.
    pub pair_sums: Vec<((usize, usize), f64)>,
    /// Three weighted terms over `w(1,2,3)`, `w(1,2,4)` and `w(1,3,4)`; see `i26_symmetric`
    /// for the version summed over every triple.
    pub i26: f64,
    /// Symmetrized over all triples and spectators.
    pub i26_symmetric: f64,
    pub dres: f64,
    pub tau48: f64,
    /// One entry per singled qubit, `1..4`.
    pub triples: Vec<TripleInvariants>,
    /// Largest `|I_(4,8)^{(l)} - I_(4,8)^{(4)}|` over `l`, relative to the
    /// `I_(4,8)` term scale.
    pub cross_triple_deviation: f64,
}

impl FourQubitReport {
    pub fn i48_zero(&self, tol: f64) -> bool {
        is_zero(self.i48.norm(), degree::I48, self.norm, tol)
    }

    pub fn dres_zero(&self, tol: f64) -> bool {
        is_zero(self.dres, degree::DRES, self.norm, tol)
    }

    pub fn j12_zero(&self, tol: f64) -> bool {
        is_zero(self.j12.norm(), degree::J12, self.norm, tol)
    }

    /// Zero when both `I_(4,8)` and `J` vanish, or when `|Delta|` is small
    /// against `|I_(4,8)|^3 + 27 |J|^2`; the difference of two large cubes
    /// cancels far below the plain degree-24 threshold.
    pub fn delta_zero(&self, tol: f64) -> bool {
        (self.i48_zero(tol) && self.j12_zero(tol))
            || self.delta24.norm() <= tol * (self.i48.norm().powi(3) + 27.0 * self.j12.norm_sqr())
    }

    pub fn pair(&self, p: usize, q: usize) -> f64 {
        let key = (p.min(q), p.max(q));
        self.pair_sums.iter().find(|(k, _)| *k == key).map_or(0.0, |(_, v)| *v)
    }
}

pub fn aggregate_invariants(s: &PureState) -> Result<FourQubitReport> {
    aggregate_invariants_singled(s, 4)
}

pub fn aggregate_invariants_singled(s: &PureState, singled: usize) -> Result<FourQubitReport> {
    check_singled(s, singled)?;
    let triples: Vec<TripleInvariants> = (1..=4)
        .map(|l| coeffs_singled(s, l).map(|c| TripleInvariants::from_coeffs(l, c)))
        .collect::<Result<_>>()?;
    let head = &triples[singled - 1];
    let n_sq: Vec<f64> = triples.iter().map(|t| t.n_sq).collect();
    let n: Vec<f64> = n_sq.iter().map(|x| x.max(0.0).sqrt()).collect();
    let n48 = 16.0 * n[0] * n[1] + 16.0 * (n[0] + n[1]) * n[2] + 16.0 * (n[0] + n[1] + n[2]) * n[3];

    let mut pair_sums = Vec::with_capacity(6);
    for p in 1..=4 {
        for q in p + 1..=4 {
            pair_sums.push(((p, q), pair_sum(s, p, q)?));
        }
    }
    let pair = |p: usize, q: usize| pair_sums.iter().find(|(k, _)| *k == (p.min(q), p.max(q))).unwrap().1;
    let w2 = |p, q, r| 3.0 * pair(p, q) * pair(p, r);
    let i26 = 1.5 * w2(1, 2, 3) * (pair(1, 4) + pair(2, 4) + pair(3, 4))
        + 1.5 * w2(1, 2, 4) * (pair(2, 3) + pair(3, 4))
        + 1.5 * w2(1, 3, 4) * pair(2, 4);
    let mut i26_symmetric = 0.0;
    for spectator in 1..=4 {
        let t: Vec<usize> = (1..=4).filter(|&q| q != spectator).collect();
        let (a, b, c) = (pair(t[0], t[1]), pair(t[0], t[2]), pair(t[1], t[2]));
        let links: f64 = t.iter().map(|&x| pair(x, spectator)).sum();
        i26_symmetric += 0.75 * (a * b + a * c + b * c) * links;
    }

    let reference = triples[3].i48;
    let scale = triples.iter().map(|t| t.coeffs.i48_scale()).fold(0.0, f64::max);
    let cross = triples.iter().map(|t| (t.i48 - reference).norm()).fold(0.0, f64::max);
    let i4v = i4(s)?;
    Ok(FourQubitReport {
        singled,
        norm: s.norm(),
        i4: i4v,
        tau4: 4.0 * i4v.norm(),
        i3_cond: head.coeffs.i3,
        t_inv: head.coeffs.t,
        p_inv: head.coeffs.p,
        i48: head.i48,
        j12: head.j12,
        delta24: head.delta24,
        n_triple_sq: [n_sq[0], n_sq[1], n_sq[2], n_sq[3]],
        n44_sq: 16.0 * (n_sq[3] + n_sq[2] + n_sq[1]),
        n48,
        pair_sums,
        i26,
        i26_symmetric,
        dres: head.dres,
        tau48: 4.0 * (12.0 * head.i48).sqrt().norm(),
        cross_triple_deviation: if scale > 0.0 { cross / scale } else { cross },
        triples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_state;
    use crate::params::Params;

    fn named(name: &str) -> PureState {
        catalog_state(name, &Params::new()).unwrap().normalize().unwrap()
    }

    fn near(a: Amplitude, b: f64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn ghz_values() {
        let s = named("GHZ4");
        let r = aggregate_invariants(&s).unwrap();
        assert!(near(r.i4, 0.5, 1e-15));
        assert!(near(r.t_inv, 1.0 / 24.0, 1e-15));
        assert!(near(r.i48, 1.0 / 192.0, 1e-15));
        assert!(near(r.j12, -(1.0f64 / 24.0).powi(3), 1e-15));
        assert!(r.delta24.norm() < 1e-20 && r.delta_zero(1e-9));
        assert!((r.tau48 - 1.0).abs() < 1e-12);
        assert!((r.n_triple_sq[3] - 1.0 / 96.0).abs() < 1e-15);
        assert!(r.dres_zero(1e-9));
    }

    #[test]
    fn cluster_and_w() {
        let c1 = aggregate_invariants(&named("C1")).unwrap();
        assert!(c1.i4.norm() < 1e-15);
        assert!((c1.tau48 - 1.0).abs() < 1e-12);
        let w = aggregate_invariants(&named("W4")).unwrap();
        assert_eq!(w.i4.norm(), 0.0);
        assert!(w.tau48 < 1e-9 && w.i48_zero(1e-9));
        assert!((w.i26 - 27.0 / 64.0).abs() < 1e-12);
        assert!((w.i26_symmetric - 27.0 / 64.0).abs() < 1e-12);
    }

    #[test]
    fn brown_and_hs() {
        let b = aggregate_invariants(&named("BrownPhi")).unwrap();
        assert!(near(b.i3_cond[0], 1.0 / 32.0, 1e-15) && near(b.i3_cond[1], 1.0 / 32.0, 1e-15));
        assert!(near(b.t_inv, 1.0 / 32.0, 1e-15));
        assert!(b.p_inv.iter().all(|p| p.norm() < 1e-15));
        assert!(near(b.i48, 1.0 / 256.0, 1e-15));
        let hs = aggregate_invariants(&named("HS")).unwrap();
        assert!(hs.t_inv.norm() < 1e-15 && hs.p_inv.iter().all(|p| p.norm() < 1e-15));
        assert!(hs.tau48 < 1e-7);
        assert!((hs.i26 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn psi_ab_closed_forms() {
        let (a, b) = (Amplitude::new(0.7, -0.3), Amplitude::new(-1.1, 0.4));
        let s = catalog_state("Psi_ab", &Params::new().with("a", a).with("b", b)).unwrap();
        let r = aggregate_invariants(&s).unwrap();
        let tol = 1e-12;
        assert!((r.i3_cond[0] - a * a * b * b).norm() < tol);
        assert!((r.i3_cond[1] - b.powu(4)).norm() < tol);
        assert!((r.t_inv - (a.powu(4) - 2.0 * a * b.powu(3)) / 6.0).norm() < tol);
        assert!((r.p_inv[0] - a.powu(3) * b / 2.0).norm() < tol);
        assert!((r.p_inv[1] + a * a * b * b / 2.0).norm() < tol);
        let expected = (a.powu(4) + 4.0 * a * b.powu(3)).powu(2) / 12.0;
        assert!((r.i48 - expected).norm() < tol);
    }

    #[test]
    fn singled_variants_and_errors() {
        let s = named("GHZ4");
        let r = aggregate_invariants_singled(&s, 2).unwrap();
        assert_eq!(r.singled, 2);
        assert!(r.cross_triple_deviation < 1e-12);
        assert!(aggregate_invariants_singled(&s, 5).is_err());
        assert!(i48(&named("GHZ3")).is_err());
        assert!(pair_sum(&s, 2, 2).is_err());
    }
}
