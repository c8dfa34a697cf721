use crate::error::Result;
use crate::fonts::{d2_three, d3_three, font_det, FontSpec};
use crate::ptrans::{negativity, TransposeKind};
use crate::state::{Amplitude, PureState};

use super::{degree, is_zero, DEFAULT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeQubitReport {
    /// `[D^{00}_{(Am)0}, D^{00}_{(Am)1}]` for spectator `m = 1, 2, 3`.
    pub d2_fonts: [[Amplitude; 2]; 3],
    /// `D^{000}, D^{001}, D^{010}` with qubit 1 transposed.
    pub d3_fonts: [Amplitude; 3],
    /// `(N_{Am}^{AiAj})^2` for `m = 1, 2, 3`.
    pub n_pair_sq: [f64; 3],
    /// `4 (N_{A3}^{A1A2})^2 + 4 (N_{A2}^{A1A3})^2`.
    pub n_global_sq: f64,
    pub i3: Amplitude,
    pub tau3: f64,
    /// `|D_{(Am)0}| + |D_{(Am)1}|` for `m = 1, 2, 3`.
    pub w_sums: [f64; 3],
    pub i2_w: f64,
    /// Whether `I3` passed the degree-4 zero test, the branch on which the
    /// `w_sums` are invariants.
    pub i3_zero: bool,
}

/// `D^{00}_{(Am)i}`: two-way font on the pair other than `m`, lower qubit
/// transposed.
fn pair_font(s: &PureState, m: usize, bit: u8) -> Result<Amplitude> {
    let pair: Vec<usize> = (1..=3).filter(|&q| q != m).collect();
    font_det(s, &FontSpec::new(pair[0], &pair, &[0], &[bit]))
}

/// `|D_{(A3)0}|^2 + |D_{(A3)1}|^2 + 2 |(D^{000} + D^{001}) / 2|^2` after
/// moving qubit `m` last.
fn n_pair_sq(s: &PureState, m: usize) -> Result<f64> {
    let t = s.with_qubit_last(m)?;
    let (d0, d1) = (d2_three(&t, 0)?, d2_three(&t, 1)?);
    let half = (d3_three(&t, 0, 0)? + d3_three(&t, 0, 1)?) / 2.0;
    Ok(d0.norm_sqr() + d1.norm_sqr() + 2.0 * half.norm_sqr())
}

/// `(D^{000} + D^{001})^2 - 4 D_{(A3)0} D_{(A3)1}`.
pub fn i3_three(s: &PureState) -> Result<Amplitude> {
    let sum = d3_three(s, 0, 0)? + d3_three(s, 0, 1)?;
    Ok(sum * sum - 4.0 * d2_three(s, 0)? * d2_three(s, 1)?)
}

pub fn three_qubit_report(s: &PureState) -> Result<ThreeQubitReport> {
    three_qubit_report_tol(s, DEFAULT_TOL)
}

pub fn three_qubit_report_tol(s: &PureState, tol: f64) -> Result<ThreeQubitReport> {
    s.require_arity(3)?;
    let mut d2_fonts = [[Amplitude::new(0.0, 0.0); 2]; 3];
    let mut n_sq = [0.0; 3];
    let mut w_sums = [0.0; 3];
    for m in 1..=3 {
        d2_fonts[m - 1] = [pair_font(s, m, 0)?, pair_font(s, m, 1)?];
        n_sq[m - 1] = n_pair_sq(s, m)?;
        w_sums[m - 1] = d2_fonts[m - 1][0].norm() + d2_fonts[m - 1][1].norm();
    }
    let i3 = i3_three(s)?;
    let i2_w = 3.0 * (w_sums[0] * w_sums[1] + w_sums[0] * w_sums[2] + w_sums[1] * w_sums[2]);
    Ok(ThreeQubitReport {
        d2_fonts,
        d3_fonts: [d3_three(s, 0, 0)?, d3_three(s, 0, 1)?, d3_three(s, 1, 0)?],
        n_pair_sq: n_sq,
        n_global_sq: 4.0 * (n_sq[2] + n_sq[1]),
        i3,
        tau3: 4.0 * i3.norm(),
        w_sums,
        i2_w,
        i3_zero: is_zero(i3.norm(), degree::I3, s.norm(), tol),
    })
}

/// `((N_G^{A1})^2, 4 (N_{A3}^{A1A2})^2 + 4 (N_{A2}^{A1A3})^2)` for a
/// normalized three-qubit state.
pub fn n_global_sq_relation(s: &PureState) -> Result<(f64, f64)> {
    s.require_arity(3)?;
    let ng = negativity(s, 1, TransposeKind::Global)?.value;
    Ok((ng * ng, 4.0 * (n_pair_sq(s, 3)? + n_pair_sq(s, 2)?)))
}
