//! Polynomial local-unitary invariants and derived monotones for two, three
//! and four qubits.
//!
//! Every invariant is a homogeneous polynomial in the amplitudes (and their
//! conjugates for the moduli-based ones). Zero tests therefore compare
//! `|v|` against `tol * ||a||^degree` rather than a fixed threshold.

mod four;
pub mod oracle;
mod three;

pub use four::{
    aggregate_invariants, aggregate_invariants_singled, i3_conditional, i4, i48, j12, delta24, n_triple_sq,
    pair_sum, quartic_coeffs, t_p_invariants, FourQubitReport, QuarticCoeffs, TripleInvariants,
};
pub use three::{i3_three, n_global_sq_relation, three_qubit_report, three_qubit_report_tol, ThreeQubitReport};

use crate::error::Result;
use crate::fonts::font_det;
use crate::fonts::FontSpec;
use crate::state::PureState;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Degrees of the invariants, in amplitudes.
pub mod degree {
    pub const I4: i32 = 2;
    pub const I3: i32 = 4;
    pub const N_SQ_THREE: i32 = 4;
    pub const N_SQ_FOUR: i32 = 8;
    pub const I48: i32 = 8;
    pub const DRES: i32 = 8;
    pub const J12: i32 = 12;
    pub const DELTA: i32 = 24;
}

/// `|value| <= tol * norm^degree`.
pub fn is_zero(value: f64, degree: i32, norm: f64, tol: f64) -> bool {
    value.abs() <= tol * norm.powi(degree)
}

/// `|D^{00}|` of a two-qubit state.
pub fn i2_pair(s: &PureState) -> Result<f64> {
    s.require_arity(2)?;
    Ok(font_det(s, &FontSpec::new(1, &[1, 2], &[0], &[]))?.norm())
}

#[derive(Debug, Clone)]
pub enum InvariantReport {
    Two { i2: f64 },
    Three(Box<ThreeQubitReport>),
    Four(Box<FourQubitReport>),
}

/// Report for a state of two, three or four qubits. `singled` only matters
/// for four qubits.
pub fn invariant_report(s: &PureState, singled: usize) -> Result<InvariantReport> {
    match s.n_qubits() {
        2 => Ok(InvariantReport::Two { i2: i2_pair(s)? }),
        3 => Ok(InvariantReport::Three(Box::new(three_qubit_report(s)?))),
        _ => Ok(InvariantReport::Four(Box::new(aggregate_invariants_singled(s, singled)?))),
    }
}
