//! Pure-state vectors over the computational basis.
//!
//! Qubit 1 is the most significant bit: the amplitude `a_{i1 i2 .. iN}` lives at
//! array position `sum_k i_k * 2^(N-k)`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type Amplitude = Complex64;

pub const MIN_QUBITS: usize = 2;
pub const MAX_QUBITS: usize = 6;

/// Bit of qubit `q` (1-based) in basis index `idx` of an `n`-qubit register.
#[inline]
pub fn bit(idx: usize, q: usize, n: usize) -> usize {
    (idx >> (n - q)) & 1
}

/// Mask selecting qubit `q` (1-based) in an `n`-qubit basis index.
#[inline]
pub fn qubit_mask(q: usize, n: usize) -> usize {
    1 << (n - q)
}

/// Basis index of a label given as bits `i1, i2, .., iN`.
pub fn index_of(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | (b as usize & 1))
}

/// Bits `i1, .., iN` of basis index `idx`.
pub fn bits_of(idx: usize, n: usize) -> Vec<u8> {
    (1..=n).map(|q| bit(idx, q, n) as u8).collect()
}

/// Bitstring label such as `"0110"`.
pub fn label(idx: usize, n: usize) -> String {
    bits_of(idx, n).iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Amplitude>,
    normalized: bool,
}

impl PureState {
    pub fn new(n: usize, amps: Vec<Amplitude>) -> Result<Self> {
        if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
            return Err(Error::UnsupportedQubitCount(n));
        }
        let expected = 1usize << n;
        if amps.len() != expected {
            return Err(Error::DimensionMismatch { n, expected, got: amps.len() });
        }
        if let Some(i) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if amps.iter().all(|a| a.norm() < 1e-300) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { n, amps, normalized: false })
    }

    /// Builds a state from `(bitstring, amplitude)` pairs; unlisted entries are zero.
    /// Repeated labels accumulate.
    pub fn from_terms(n: usize, terms: &[(&str, Amplitude)]) -> Result<Self> {
        let mut amps = vec![Amplitude::new(0.0, 0.0); 1usize.checked_shl(n as u32).unwrap_or(0)];
        for (lbl, a) in terms {
            let bits: Vec<u8> = lbl.bytes().map(|c| (c == b'1') as u8).collect();
            if bits.len() != n || lbl.bytes().any(|c| c != b'0' && c != b'1') {
                return Err(Error::DimensionMismatch { n, expected: n, got: bits.len() });
            }
            amps[index_of(&bits)] += a;
        }
        Self::new(n, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    /// Amplitude at basis label bits `i1..iN`.
    pub fn amp(&self, bits: &[u8]) -> Amplitude {
        self.amps[index_of(bits)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            n: self.n,
            amps: self.amps.iter().map(|a| a / norm).collect(),
            normalized: true,
        })
    }

    /// Multiplies every amplitude by `factor`, clearing the normalized flag.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.n, self.amps.iter().map(|a| a * factor).collect())
    }

    pub fn inner(&self, other: &PureState) -> Amplitude {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn apply_local_unitary(&self, u: &LocalUnitary) -> Result<Self> {
        if u.qubit == 0 || u.qubit > self.n {
            return Err(Error::QubitOutOfRange { qubit: u.qubit, n: self.n });
        }
        let mask = qubit_mask(u.qubit, self.n);
        let mut out = self.amps.clone();
        for idx in (0..self.dim()).filter(|i| i & mask == 0) {
            let (a0, a1) = (self.amps[idx], self.amps[idx | mask]);
            out[idx] = u.m[0][0] * a0 + u.m[0][1] * a1;
            out[idx | mask] = u.m[1][0] * a0 + u.m[1][1] * a1;
        }
        Ok(Self { n: self.n, amps: out, normalized: self.normalized })
    }

    /// Applies one local unitary per qubit, `us[k]` acting on qubit `k + 1`.
    pub fn apply_local_unitaries(&self, us: &[[[Amplitude; 2]; 2]]) -> Result<Self> {
        let mut s = self.clone();
        for (k, m) in us.iter().enumerate() {
            s = s.apply_local_unitary(&LocalUnitary::new(*m, k + 1)?)?;
        }
        Ok(s)
    }

    /// Reorders qubits. `perm[m - 1]` names the input qubit placed at output
    /// position `m`, so the output amplitude at `(j1..jn)` equals the input
    /// amplitude at `(j_{perm^-1(1)}..j_{perm^-1(n)})`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        let valid = perm.len() == n
            && perm.iter().all(|&q| {
                let ok = (1..=n).contains(&q) && !seen[q];
                if ok {
                    seen[q] = true;
                }
                ok
            });
        if !valid {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        let mut out = vec![Amplitude::new(0.0, 0.0); self.dim()];
        for (idx_in, a) in self.amps.iter().enumerate() {
            let idx_out = perm
                .iter()
                .enumerate()
                .fold(0, |acc, (m, &q)| acc | (bit(idx_in, q, n) << (n - 1 - m)));
            out[idx_out] = *a;
        }
        Ok(Self { n, amps: out, normalized: self.normalized })
    }

    /// Moves qubit `q` to the last position, keeping the others in order.
    pub fn with_qubit_last(&self, q: usize) -> Result<Self> {
        if q == 0 || q > self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        let perm: Vec<usize> = (1..=self.n).filter(|&k| k != q).chain(std::iter::once(q)).collect();
        self.permute_qubits(&perm)
    }

    pub(crate) fn require_arity(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::WrongArity { expected: n, got: self.n });
        }
        Ok(())
    }
}

/// Inverse of a qubit permutation in the convention of [`PureState::permute_qubits`].
pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (m, &q) in perm.iter().enumerate() {
        inv[q - 1] = m + 1;
    }
    inv
}

/// 2x2 unitary acting on one qubit (1-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitary {
    pub m: [[Amplitude; 2]; 2],
    pub qubit: usize,
}

impl LocalUnitary {
    pub fn new(m: [[Amplitude; 2]; 2], qubit: usize) -> Result<Self> {
        let residual = unitarity_residual(&m);
        if residual > 1e-12 {
            return Err(Error::NonUnitary(residual));
        }
        Ok(Self { m, qubit })
    }

    pub fn identity(qubit: usize) -> Self {
        let (o, z) = (Amplitude::new(1.0, 0.0), Amplitude::new(0.0, 0.0));
        Self { m: [[o, z], [z, o]], qubit }
    }

    /// `(1 + |x|^2)^(-1/2) [[1, -x*], [x, 1]]`.
    pub fn from_x(x: Amplitude, qubit: usize) -> Self {
        let s = 1.0 / (1.0 + x.norm_sqr()).sqrt();
        let one = Amplitude::new(s, 0.0);
        Self { m: [[one, -x.conj() * s], [x * s, one]], qubit }
    }

    /// `[[alpha, -beta*], [beta, alpha*]]` with `|alpha|^2 + |beta|^2 = 1`.
    pub fn special(alpha: Amplitude, beta: Amplitude, qubit: usize) -> Self {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        let (a, b) = (alpha / norm, beta / norm);
        Self { m: [[a, -b.conj()], [b, a.conj()]], qubit }
    }

    /// Z-Y-Z Euler parametrisation of SU(2).
    pub fn from_euler(theta: f64, phi: f64, lambda: f64, qubit: usize) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let alpha = Amplitude::from_polar(c, (phi + lambda) / 2.0);
        let beta = Amplitude::from_polar(s, -(phi - lambda) / 2.0);
        Self { m: [[alpha, -beta.conj()], [beta, alpha.conj()]], qubit }
    }

    pub fn det(&self) -> Amplitude {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

fn unitarity_residual(m: &[[Amplitude; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let dot: Amplitude = (0..2).map(|k| m[k][i].conj() * m[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

/// Deterministic generator for stream `stream` of seed `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_amp<R: rand::Rng + ?Sized>(rng: &mut R) -> Amplitude {
    Amplitude::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Normalized state with i.i.d. standard complex Gaussian amplitudes.
pub fn random_state_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PureState> {
    if !(MIN_QUBITS..=MAX_QUBITS).contains(&n) {
        return Err(Error::UnsupportedQubitCount(n));
    }
    let amps = (0..1usize << n).map(|_| gaussian_amp(rng)).collect();
    PureState::new(n, amps)?.normalize()
}

pub fn random_state(n: usize, seed: u64) -> Result<PureState> {
    random_state_with(n, &mut stream_rng(seed, 0))
}

/// Haar-distributed element of SU(2) acting on `qubit`.
pub fn random_special_unitary_with<R: rand::Rng + ?Sized>(rng: &mut R, qubit: usize) -> LocalUnitary {
    loop {
        let (alpha, beta) = (gaussian_amp(rng), gaussian_amp(rng));
        if alpha.norm_sqr() + beta.norm_sqr() > 1e-24 {
            return LocalUnitary::special(alpha, beta, qubit);
        }
    }
}

pub fn random_special_unitary(seed: u64, qubit: usize) -> LocalUnitary {
    random_special_unitary_with(&mut stream_rng(seed, 0), qubit)
}

/// Applies an independent random SU(2) element to every qubit.
pub fn scramble_locally<R: rand::Rng + ?Sized>(s: &PureState, rng: &mut R) -> PureState {
    (1..=s.n_qubits()).fold(s.clone(), |acc, q| {
        acc.apply_local_unitary(&random_special_unitary_with(rng, q))
            .expect("qubit in range")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    fn real(v: &[f64]) -> Vec<Amplitude> {
        v.iter().map(|&x| c(x, 0.0)).collect()
    }

    #[test]
    fn make_state_contracts() {
        let s = PureState::new(2, real(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(!s.is_normalized());
        assert_eq!(s.amp(&[0, 0]), c(1.0, 0.0));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ghz = PureState::from_terms(4, &[("0000", c(h, 0.0)), ("1111", c(h, 0.0))]).unwrap();
        assert_eq!(ghz.amps()[0], c(h, 0.0));
        assert_eq!(ghz.amps()[15], c(h, 0.0));

        assert_eq!(
            PureState::new(3, real(&[0.0; 9])),
            Err(Error::DimensionMismatch { n: 3, expected: 8, got: 9 })
        );
        assert_eq!(PureState::new(2, real(&[0.0; 4])), Err(Error::ZeroVector));
        assert_eq!(
            PureState::new(2, vec![c(f64::NAN, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
            Err(Error::NonFinite(0))
        );
        assert_eq!(PureState::new(7, real(&[1.0; 128])), Err(Error::UnsupportedQubitCount(7)));
    }

    #[test]
    fn normalize_examples() {
        let s = PureState::new(2, real(&[2.0, 0.0, 0.0, 0.0])).unwrap().normalize().unwrap();
        assert!(s.is_normalized());
        assert_eq!(s.amps()[0], c(1.0, 0.0));

        let ghz = PureState::from_terms(4, &[("0000", c(1.0, 0.0)), ("1111", c(1.0, 0.0))])
            .unwrap()
            .normalize()
            .unwrap();
        assert_abs_diff_eq!(ghz.amps()[0].re, std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);

        let r = random_state(4, 3).unwrap();
        let again = r.normalize().unwrap();
        for (a, b) in r.amps().iter().zip(again.amps()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn index_round_trip() {
        for n in MIN_QUBITS..=MAX_QUBITS {
            for idx in 0..1usize << n {
                assert_eq!(index_of(&bits_of(idx, n)), idx);
            }
        }
        assert_eq!(label(0b0110, 4), "0110");
        assert_eq!(index_of(&[1, 0, 0]), 4);
    }

    #[test]
    fn local_unitary_examples() {
        let s = random_state(3, 11).unwrap();
        let same = s.apply_local_unitary(&LocalUnitary::identity(2)).unwrap();
        assert_eq!(s, same);

        let x = LocalUnitary::new([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]], 2).unwrap();
        let ket00 = PureState::new(2, real(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        let flipped = ket00.apply_local_unitary(&x).unwrap();
        assert_eq!(flipped.amp(&[0, 1]), c(1.0, 0.0));

        assert!(matches!(
            s.apply_local_unitary(&LocalUnitary::identity(4)),
            Err(Error::QubitOutOfRange { qubit: 4, n: 3 })
        ));
        assert!(matches!(
            LocalUnitary::new([[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]], 1),
            Err(Error::NonUnitary(_))
        ));
    }

    #[test]
    fn local_unitaries_preserve_norm() {
        let mut rng = stream_rng(7, 1);
        for trial in 0..1000 {
            let n = 2 + trial % 5;
            let s = random_state_with(n, &mut rng).unwrap();
            let q = 1 + trial % n;
            let u = random_special_unitary_with(&mut rng, q);
            let t = s.apply_local_unitary(&u).unwrap();
            assert!((t.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn permutation_examples() {
        let s = random_state(4, 5).unwrap();
        assert_eq!(s.permute_qubits(&[1, 2, 3, 4]).unwrap(), s);

        let ket01 = PureState::new(2, real(&[0.0, 1.0, 0.0, 0.0])).unwrap();
        assert_eq!(ket01.permute_qubits(&[2, 1]).unwrap().amp(&[1, 0]), c(1.0, 0.0));

        let swap34 = [1, 2, 4, 3];
        let twice = s.permute_qubits(&swap34).unwrap().permute_qubits(&swap34).unwrap();
        assert_eq!(twice, s);

        let perm = [3, 1, 4, 2];
        let back = s
            .permute_qubits(&perm)
            .unwrap()
            .permute_qubits(&inverse_permutation(&perm))
            .unwrap();
        assert_eq!(back, s);

        // output position m holds input qubit perm[m-1]
        let t = s.permute_qubits(&perm).unwrap();
        assert_eq!(t.amp(&[1, 0, 0, 1]), s.amp(&[0, 1, 1, 0]));

        assert!(matches!(s.permute_qubits(&[1, 1, 2, 3]), Err(Error::InvalidPermutation(_))));
        assert!(matches!(s.permute_qubits(&[1, 2, 3]), Err(Error::InvalidPermutation(_))));
    }

    #[test]
    fn random_state_properties() {
        assert_eq!(random_state(4, 9).unwrap(), random_state(4, 9).unwrap());
        let s = random_state(4, 1).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
        let t = random_state(4, 2).unwrap();
        assert!(s.inner(&t).norm() < 1.0 - 1e-6);
        assert!(random_state(1, 0).is_err());
    }

    #[test]
    fn special_unitary_construction() {
        let id = LocalUnitary::from_x(c(0.0, 0.0), 1);
        assert_eq!(id, LocalUnitary::identity(1));
        for seed in 0..200 {
            let u = random_special_unitary(seed, 1);
            assert!(unitarity_residual(&u.m) < 1e-12);
            assert!((u.det() - 1.0).norm() < 1e-12);
        }
        let e = LocalUnitary::from_euler(0.3, 1.1, -0.7, 2);
        assert!(unitarity_residual(&e.m) < 1e-12);
        assert!((e.det() - 1.0).norm() < 1e-12);
        assert!((LocalUnitary::from_euler(0.0, 0.0, 0.0, 1).m[0][0] - 1.0).norm() < 1e-15);
    }
}
