//! Independent routes to the four-qubit quartic, used to cross-check the
//! font-determinant formulas.
//!
//! [`polarization_coeffs`] evaluates Cayley's hyperdeterminant of the
//! three-qubit slice combination `y psi_0 + psi_1` at five points and
//! interpolates. [`delta_via_resolvent`] computes the quartic discriminant
//! from its resolvent cubic.

use crate::error::Result;
use crate::state::{Amplitude, PureState};

use super::four::QuarticCoeffs;

/// Cayley hyperdeterminant of a `2x2x2` array, indexed big-endian.
pub fn hyperdeterminant(a: &[Amplitude; 8]) -> Amplitude {
    let (a000, a001, a010, a011) = (a[0], a[1], a[2], a[3]);
    let (a100, a101, a110, a111) = (a[4], a[5], a[6], a[7]);
    let sq = (a000 * a111).powu(2) + (a001 * a110).powu(2) + (a010 * a101).powu(2) + (a100 * a011).powu(2);
    let (x, y, z, w) = (a000 * a111, a011 * a100, a101 * a010, a110 * a001);
    let cross = x * y + x * z + x * w + y * z + y * w + z * w;
    let quad = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
    sq - 2.0 * cross + 4.0 * quad
}

/// Quartic coefficients of a four-qubit state with qubit 4 singled out, by
/// polynomial interpolation in `y`.
pub fn polarization_coeffs(s: &PureState) -> Result<QuarticCoeffs> {
    s.require_arity(4)?;
    let amps = s.amps();
    let f = |y: f64| {
        let mut slice = [Amplitude::new(0.0, 0.0); 8];
        for (k, v) in slice.iter_mut().enumerate() {
            *v = amps[2 * k] * y + amps[2 * k + 1];
        }
        hyperdeterminant(&slice)
    };
    let c0 = f(0.0);
    let (fp1, fm1, fp2, fm2) = (f(1.0), f(-1.0), f(2.0), f(-2.0));
    let e1 = (fp1 + fm1) / 2.0 - c0;
    let e2 = (fp2 + fm2) / 2.0 - c0;
    let c4 = (e2 - 4.0 * e1) / 12.0;
    let c2 = e1 - c4;
    let o1 = (fp1 - fm1) / 2.0;
    let o2 = (fp2 - fm2) / 2.0;
    let c3 = (o2 - 2.0 * o1) / 6.0;
    let c1 = o1 - c3;
    Ok(QuarticCoeffs { i3: [c4, c0], t: c2 / 6.0, p: [c3 / 4.0, c1 / 4.0] })
}

/// Discriminant of `c[0] x^4 + c[1] x^3 + c[2] x^2 + c[3] x + c[4]`, via the
/// resolvent cubic of the monic quartic. Requires `c[0] != 0`.
pub fn quartic_discriminant(c: &[Amplitude; 5]) -> Amplitude {
    let lead = c[0];
    let (b, cc, d, e) = (c[1] / lead, c[2] / lead, c[3] / lead, c[4] / lead);
    // z^3 - cc z^2 + (b d - 4 e) z - (b^2 e - 4 cc e + d^2)
    let p = -cc;
    let q = b * d - 4.0 * e;
    let r = -(b * b * e - 4.0 * cc * e + d * d);
    let cubic = p * p * q * q - 4.0 * q.powu(3) - 4.0 * p.powu(3) * r + 18.0 * p * q * r - 27.0 * r * r;
    lead.powu(6) * cubic
}

/// `Delta = I_(4,8)^3 - 27 J^2` recomputed as `disc / 256` of the binary
/// quartic `(I3_0, 4 P_0, 6 T, 4 P_1, I3_1)`.
pub fn delta_via_resolvent(q: &QuarticCoeffs) -> Amplitude {
    quartic_discriminant(&q.binary_quartic()) / 256.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::quartic_coeffs;
    use crate::state::random_state;

    #[test]
    fn interpolation_matches_font_formulas() {
        for seed in 0..50 {
            let s = random_state(4, seed).unwrap();
            let a = quartic_coeffs(&s).unwrap();
            let b = polarization_coeffs(&s).unwrap();
            for (x, y) in a.binary_quartic().iter().zip(b.binary_quartic()) {
                assert!((x - y).norm() < 1e-13, "seed {seed}");
            }
        }
    }

    #[test]
    fn discriminant_of_known_roots() {
        // (x-1)(x-2)(x-3)(x-4): product of squared root differences = 144
        let c = [1.0, -10.0, 35.0, -50.0, 24.0].map(|x| Amplitude::new(x, 0.0));
        assert!((quartic_discriminant(&c) - 144.0).norm() < 1e-9);
        // double root
        let c = [1.0, -4.0, 5.0, -2.0, 0.0].map(|x| Amplitude::new(x, 0.0));
        assert!(quartic_discriminant(&c).norm() < 1e-12);
    }

    #[test]
    fn resolvent_matches_delta() {
        for seed in 0..20 {
            let q = quartic_coeffs(&random_state(4, seed).unwrap()).unwrap();
            let (d, o) = (q.delta(), delta_via_resolvent(&q));
            assert!((d - o).norm() <= 1e-8 * d.norm(), "seed {seed}");
        }
    }
}
