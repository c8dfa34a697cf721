//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense row-major complex square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn scaled_add(&self, factor: f64, other: &CMatrix) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b * factor).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
    pub sweeps: usize,
}

impl Eigen {
    /// `Q diag(values) Q^dagger`.
    pub fn reconstruct(&self) -> CMatrix {
        let (q, n) = (&self.vectors, self.vectors.dim());
        CMatrix::from_fn(n, |i, j| (0..n).map(|k| q[(i, k)] * self.values[k] * q[(j, k)].conj()).sum())
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Converged once every off-diagonal modulus is below `1e-14 * ||m||_F`.
pub fn hermitian_eigen(m: &CMatrix) -> Result<Eigen> {
    let n = m.dim();
    let fro = m.frobenius();
    let residual = m.hermiticity_residual();
    if residual > 1e-10 * fro.max(1.0) {
        return Err(Error::NotHermitian(residual));
    }
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let threshold = 1e-14 * fro;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm())
            .fold(0.0, f64::max);
        if off <= threshold {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, threshold);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors, sweeps })
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}

/// Annihilates `a[p][q]` with the unitary `J = diag(1, e^{-i phi}) R(theta)`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize, threshold: f64) {
    let h = a[(p, q)];
    let mag = h.norm();
    if mag <= threshold * 1e-3 {
        return;
    }
    let phase = h / mag;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let tau = (aqq - app) / (2.0 * mag);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let t = if tau == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{random_state, stream_rng};
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let mut rng = stream_rng(seed, 3);
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn scaled_identity() {
        let m = CMatrix::from_fn(4, |i, j| if i == j { c(0.25, 0.0) } else { c(0.0, 0.0) });
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![0.25; 4]);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        // (|00><00| + |00><11| + |11><00| + |11><11|)/2 transposed on qubit 1
        let mut m = CMatrix::zeros(4);
        m[(0, 0)] = c(0.5, 0.0);
        m[(3, 3)] = c(0.5, 0.0);
        m[(1, 2)] = c(0.5, 0.0);
        m[(2, 1)] = c(0.5, 0.0);
        let ev = hermitian_eigenvalues(&m).unwrap();
        let expected = [-0.5, 0.5, 0.5, 0.5];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_one_projector() {
        let s = random_state(4, 21).unwrap();
        let a = s.amps();
        let m = CMatrix::from_fn(16, |i, j| a[i] * a[j].conj());
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert!((ev[15] - 1.0).abs() < 1e-12);
        assert!(ev[..15].iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn trace_and_reconstruction() {
        for (seed, n) in [(1, 2), (2, 5), (3, 16), (4, 32)] {
            let m = random_hermitian(n, seed);
            let e = hermitian_eigen(&m).unwrap();
            let sum: f64 = e.values.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
            assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            assert!(e.reconstruct().max_abs_diff(&m) < 1e-9);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(hermitian_eigen(&m), Err(Error::NotHermitian(_))));
    }
}
