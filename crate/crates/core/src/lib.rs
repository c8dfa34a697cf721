//! Negativity fonts, K-way partial transposes and polynomial local-unitary
//! invariants of two-, three- and four-qubit pure states.
//!
//! Basis states are indexed big-endian: qubit 1 is the most significant bit,
//! so `a_{i1 i2 .. in}` sits at position `sum_k i_k 2^(n-k)`.

pub mod catalog;
pub mod classify;
pub mod eigen;
pub mod error;
pub mod fonts;
pub mod invariants;
pub mod optim;
pub mod params;
pub mod ptrans;
pub mod registry;
pub mod state;
pub mod suites;

pub use error::{Error, Result};
pub use params::Params;
pub use state::{Amplitude, LocalUnitary, PureState};
