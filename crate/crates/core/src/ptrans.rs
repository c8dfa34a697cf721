//! Pure-state projectors, global and K-way partial transposes, negativity.

use crate::eigen::{hermitian_eigen, CMatrix};
use crate::error::{Error, Result};
use crate::state::{qubit_mask, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransposeKind {
    Global,
    KWay(usize),
}

impl std::fmt::Display for TransposeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Global => f.write_str("global"),
            Self::KWay(k) => write!(f, "{k}-way"),
        }
    }
}

/// Dense `2^n x 2^n` matrix with rows and columns labelled by basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    m: CMatrix,
}

impl DensityMatrix {
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }
}

/// Partially transposed projector tagged with how it was produced.
#[derive(Debug, Clone, PartialEq)]
pub struct TransposedMatrix {
    pub kind: TransposeKind,
    pub qubit: usize,
    pub rho: DensityMatrix,
}

/// `(i|rho|j) = a_i conj(a_j)`.
pub fn density_from_pure(s: &PureState) -> DensityMatrix {
    let a = s.amps();
    DensityMatrix { n: s.n_qubits(), m: CMatrix::from_fn(a.len(), |i, j| a[i] * a[j].conj()) }
}

fn check_qubit(rho: &DensityMatrix, p: usize) -> Result<()> {
    if p == 0 || p > rho.n {
        return Err(Error::QubitOutOfRange { qubit: p, n: rho.n });
    }
    Ok(())
}

/// Swaps the bit of qubit `p` between row and column wherever `keep(i, j)`
/// holds for an element whose row and column differ on `p`.
fn selective_transpose(rho: &DensityMatrix, p: usize, keep: impl Fn(u32) -> bool) -> DensityMatrix {
    let mask = qubit_mask(p, rho.n);
    let src = &rho.m;
    let m = CMatrix::from_fn(src.dim(), |i, j| {
        let diff = i ^ j;
        if diff & mask != 0 && keep(diff.count_ones()) {
            src[(i ^ mask, j ^ mask)]
        } else {
            src[(i, j)]
        }
    });
    DensityMatrix { n: rho.n, m }
}

pub fn global_pt(rho: &DensityMatrix, p: usize) -> Result<TransposedMatrix> {
    check_qubit(rho, p)?;
    Ok(TransposedMatrix { kind: TransposeKind::Global, qubit: p, rho: selective_transpose(rho, p, |_| true) })
}

/// Transposes only the coherences with `K` flipped qubits, one of which is
/// `p`. For `K = 2` elements with one or two flips are both transposed.
pub fn kway_pt(rho: &DensityMatrix, p: usize, k: usize) -> Result<TransposedMatrix> {
    check_qubit(rho, p)?;
    if k < 2 || k > rho.n {
        return Err(Error::BadK { k, n: rho.n });
    }
    let m = if k == 2 {
        selective_transpose(rho, p, |f| f <= 2)
    } else {
        selective_transpose(rho, p, |f| f as usize == k)
    };
    Ok(TransposedMatrix { kind: TransposeKind::KWay(k), qubit: p, rho: m })
}

pub fn partial_transpose(rho: &DensityMatrix, p: usize, kind: TransposeKind) -> Result<TransposedMatrix> {
    match kind {
        TransposeKind::Global => global_pt(rho, p),
        TransposeKind::KWay(k) => kway_pt(rho, p, k),
    }
}

/// Max-norm of `rho_G - sum_{K=2}^{n} rho_K + (n-2) rho`.
pub fn decomposition_residual(s: &PureState, p: usize) -> Result<f64> {
    let rho = density_from_pure(s);
    let n = s.n_qubits();
    let mut acc = global_pt(&rho, p)?.rho.m.scaled_add((n - 2) as f64, &rho.m);
    for k in 2..=n {
        acc = acc.scaled_add(-1.0, &kway_pt(&rho, p, k)?.rho.m);
    }
    Ok(acc.max_abs_diff(&CMatrix::zeros(acc.dim())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Negativity {
    /// `sum |lambda| - 1`.
    pub value: f64,
    /// Negative eigenvalues, ascending.
    pub negative_eigenvalues: Vec<f64>,
    pub eigenvalues: Vec<f64>,
}

pub fn spectrum_negativity(m: &TransposedMatrix) -> Result<Negativity> {
    let eigenvalues = hermitian_eigen(&m.rho.m)?.values;
    let value = eigenvalues.iter().map(|l| l.abs()).sum::<f64>() - 1.0;
    let negative_eigenvalues = eigenvalues.iter().copied().filter(|&l| l < 0.0).collect();
    Ok(Negativity { value, negative_eigenvalues, eigenvalues })
}

pub fn negativity(s: &PureState, p: usize, kind: TransposeKind) -> Result<Negativity> {
    let rho = density_from_pure(s);
    spectrum_negativity(&partial_transpose(&rho, p, kind)?)
}

/// Single-qubit reduced density matrix of qubit `q`, as `[[r00, r01], [r10, r11]]`.
pub fn reduced_single(s: &PureState, q: usize) -> Result<[[num_complex::Complex64; 2]; 2]> {
    let n = s.n_qubits();
    if q == 0 || q > n {
        return Err(Error::QubitOutOfRange { qubit: q, n });
    }
    let mask = qubit_mask(q, n);
    let a = s.amps();
    let mut r = [[num_complex::Complex64::new(0.0, 0.0); 2]; 2];
    for idx in (0..a.len()).filter(|i| i & mask == 0) {
        let (x0, x1) = (a[idx], a[idx | mask]);
        r[0][0] += x0 * x0.conj();
        r[0][1] += x0 * x1.conj();
        r[1][0] += x1 * x0.conj();
        r[1][1] += x1 * x1.conj();
    }
    Ok(r)
}
