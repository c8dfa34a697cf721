//! Negativity fonts: 2x2 amplitude arrays whose determinants certify negative
//! eigenvalues of partially transposed projectors.
//!
//! A font for transposed qubit `p` is fixed by a flip set `S1` containing `p`,
//! a bit pattern `s` on `S1 \ {p}` and a bit assignment `t` on the remaining
//! (spectator) qubits. Its determinant is
//! `a(p=0, s, t) a(p=1, !s, t) - a(p=0, !s, t) a(p=1, s, t)`.
//! Swapping `s` for its complement negates the determinant, so the canonical
//! pattern gives the lowest qubit of `S1 \ {p}` the bit 0.

use crate::error::{Error, Result};
use crate::state::{qubit_mask, Amplitude, PureState};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FontSpec {
    pub p: usize,
    /// Sorted, contains `p`.
    pub flip_set: Vec<usize>,
    /// Bits of `flip_set \ {p}` in qubit order.
    pub row: Vec<u8>,
    /// Bits of the qubits outside `flip_set` in qubit order.
    pub spectators: Vec<u8>,
}

impl FontSpec {
    pub fn new(p: usize, flip_set: &[usize], row: &[u8], spectators: &[u8]) -> Self {
        let mut flip_set = flip_set.to_vec();
        flip_set.sort_unstable();
        Self { p, flip_set, row: row.to_vec(), spectators: spectators.to_vec() }
    }

    /// Number of flipped qubits `K`.
    pub fn order(&self) -> usize {
        self.flip_set.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.row.first().is_none_or(|&b| b == 0)
    }

    /// Same font with the row pattern complemented.
    pub fn complemented(&self) -> Self {
        Self { row: self.row.iter().map(|b| 1 - b).collect(), ..self.clone() }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let k = self.flip_set.len();
        let ok = (1..=n).contains(&self.p)
            && (2..=n).contains(&k)
            && self.flip_set.contains(&self.p)
            && self.flip_set.windows(2).all(|w| w[0] < w[1])
            && self.flip_set.iter().all(|q| (1..=n).contains(q))
            && self.row.len() == k - 1
            && self.spectators.len() == n - k
            && self.row.iter().chain(&self.spectators).all(|&b| b <= 1);
        if ok {
            Ok(())
        } else {
            Err(Error::SpecMismatch(n))
        }
    }

    /// Row and column basis indices of the top-left entry `a(p=0, s, t)` and
    /// the mask that flips every qubit of `S1`.
    fn anchor(&self, n: usize) -> (usize, usize) {
        let mut idx = 0;
        let mut flip = 0;
        let (mut r, mut t) = (self.row.iter(), self.spectators.iter());
        for q in 1..=n {
            let m = qubit_mask(q, n);
            if self.flip_set.contains(&q) {
                flip |= m;
                if q != self.p && *r.next().expect("validated") == 1 {
                    idx |= m;
                }
            } else if *t.next().expect("validated") == 1 {
                idx |= m;
            }
        }
        (idx, flip)
    }

    /// Superscript over all qubits with spectators shown as `(Aq)b`,
    /// e.g. `D^{010}_(A4)1`.
    pub fn label(&self, n: usize) -> String {
        let (mut r, mut t) = (self.row.iter(), self.spectators.iter());
        let mut sup = String::new();
        let mut sub = String::new();
        for q in 1..=n {
            if q == self.p {
                sup.push('0');
            } else if self.flip_set.contains(&q) {
                sup.push(char::from(b'0' + r.next().copied().unwrap_or(0)));
            } else {
                sub.push_str(&format!("(A{q}){}", t.next().copied().unwrap_or(0)));
            }
        }
        if sub.is_empty() {
            format!("D^{{{sup}}}")
        } else {
            format!("D^{{{sup}}}_{sub}")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FontDet {
    pub spec: FontSpec,
    pub value: Amplitude,
}

fn subsets_containing(n: usize, p: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k && m & (1 << (p - 1)) != 0)
        .map(|m| (1..=n).filter(|q| m & (1 << (q - 1)) != 0).collect())
        .collect()
}

fn bit_patterns(len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0usize..1 << len).map(move |v| (0..len).map(|k| ((v >> (len - 1 - k)) & 1) as u8).collect())
}

/// Canonical fonts of order `k` for transposed qubit `p`.
pub fn enumerate_fonts_of_order(n: usize, p: usize, k: usize) -> Result<Vec<FontSpec>> {
    if p == 0 || p > n {
        return Err(Error::QubitOutOfRange { qubit: p, n });
    }
    if k < 2 || k > n {
        return Err(Error::BadK { k, n });
    }
    let mut out = Vec::new();
    for set in subsets_containing(n, p, k) {
        for t in bit_patterns(n - k) {
            for rest in bit_patterns(k - 2) {
                let mut row = vec![0u8];
                row.extend(rest);
                out.push(FontSpec::new(p, &set, &row, &t));
            }
        }
    }
    Ok(out)
}

/// Every canonical font for transposed qubit `p`, ordered by `K`, flip set,
/// spectator bits, row pattern.
pub fn enumerate_fonts(n: usize, p: usize) -> Result<Vec<FontSpec>> {
    let mut out = Vec::new();
    for k in 2..=n {
        out.extend(enumerate_fonts_of_order(n, p, k)?);
    }
    Ok(out)
}

/// Determinant of the font, canonical or not.
pub fn font_det(s: &PureState, spec: &FontSpec) -> Result<Amplitude> {
    let n = s.n_qubits();
    spec.validate(n)?;
    Ok(det_unchecked(s, spec))
}

/// Basis indices `[w, x, y, z]` with `D = a_w a_x - a_y a_z`.
pub fn font_corners(spec: &FontSpec, n: usize) -> Result<[usize; 4]> {
    spec.validate(n)?;
    Ok(corners(spec, n))
}

fn corners(spec: &FontSpec, n: usize) -> [usize; 4] {
    let (top, flip) = spec.anchor(n);
    let pm = qubit_mask(spec.p, n);
    // a(p=0,s,t) a(p=1,!s,t) - a(p=0,!s,t) a(p=1,s,t)
    [top, top ^ flip, top ^ (flip & !pm), top ^ pm]
}

fn det_unchecked(s: &PureState, spec: &FontSpec) -> Amplitude {
    let [w, x, y, z] = corners(spec, s.n_qubits());
    let a = s.amps();
    a[w] * a[x] - a[y] * a[z]
}

pub fn all_font_dets(s: &PureState, p: usize) -> Result<Vec<FontDet>> {
    Ok(enumerate_fonts(s.n_qubits(), p)?
        .into_iter()
        .map(|spec| FontDet { value: det_unchecked(s, &spec), spec })
        .collect())
}

/// Number of canonical order-`k` fonts with `|D| > tol * ||a||^2`.
pub fn count_nonzero_fonts(s: &PureState, p: usize, k: usize, tol: f64) -> Result<usize> {
    let threshold = tol * s.norm_sqr();
    Ok(enumerate_fonts_of_order(s.n_qubits(), p, k)?
        .iter()
        .filter(|spec| det_unchecked(s, spec).norm() > threshold)
        .count())
}

/// Nonzero-font counts indexed by `K - 2`, i.e. `[n2, n3, ..., nn]`.
pub fn font_counts(s: &PureState, p: usize, tol: f64) -> Result<Vec<usize>> {
    (2..=s.n_qubits()).map(|k| count_nonzero_fonts(s, p, k, tol)).collect()
}

/// Two-way determinant on qubits 1 and 2 with qubit 3 fixed (three qubits):
/// `D^{00}_{(A3)i3}`.
pub fn d2_three(s: &PureState, i3: u8) -> Result<Amplitude> {
    s.require_arity(3)?;
    Ok(det_unchecked(s, &FontSpec::new(1, &[1, 2], &[0], &[i3])))
}

/// Three-way determinant `D^{0 i2 i3}` of a three-qubit state.
pub fn d3_three(s: &PureState, i2: u8, i3: u8) -> Result<Amplitude> {
    s.require_arity(3)?;
    Ok(det_unchecked(s, &FontSpec::new(1, &[1, 2, 3], &[i2, i3], &[])))
}

/// `D^{00}_{(A3)i3(A4)i4} = a_{00i3i4} a_{11i3i4} - a_{01i3i4} a_{10i3i4}`.
pub fn d2(s: &PureState, i3: u8, i4: u8) -> Result<Amplitude> {
    s.require_arity(4)?;
    Ok(det_unchecked(s, &FontSpec::new(1, &[1, 2], &[0], &[i3, i4])))
}

/// Three-way determinants of a four-qubit state with one of qubits 3 or 4
/// as spectator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spectator {
    /// `D^{0 i2 i3}_{(A4)i4}`: flip set `{1,2,3}`.
    A4,
    /// `D^{0 i2 i4}_{(A3)i3}`: flip set `{1,2,4}`.
    A3,
}

/// Three-way determinant with row bits `(i2, ix)` on the flipped qubits other
/// than 1, and `spectator_bit` on the spectator. Row `(1, 0)` is not canonical:
/// it equals minus the row `(0, 1)` determinant.
pub fn d3(s: &PureState, spectator: Spectator, i2: u8, ix: u8, spectator_bit: u8) -> Result<Amplitude> {
    s.require_arity(4)?;
    let set: &[usize] = match spectator {
        Spectator::A4 => &[1, 2, 3],
        Spectator::A3 => &[1, 2, 4],
    };
    Ok(det_unchecked(s, &FontSpec::new(1, set, &[i2, ix], &[spectator_bit])))
}

/// Canonical four-way determinant `D^{00 i3 i4}`.
pub fn d4(s: &PureState, i3: u8, i4: u8) -> Result<Amplitude> {
    s.require_arity(4)?;
    Ok(det_unchecked(s, &FontSpec::new(1, &[1, 2, 3, 4], &[0, i3, i4], &[])))
}
