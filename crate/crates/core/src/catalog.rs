//! Named states and parametric families with explicit amplitudes.
//!
//! Builders return the raw coefficients; callers normalize when they need
//! unit-norm states.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::Result;
use crate::params::Params;
use crate::registry::{Named, Registry};
use crate::state::{Amplitude, PureState};

pub trait StateRecipe: Named + Send + Sync {
    /// Parameter names the builder reads, in display order.
    fn params(&self) -> &'static [&'static str] {
        &[]
    }

    fn description(&self) -> &'static str;

    fn build(&self, params: &Params) -> Result<PureState>;
}

fn re(x: f64) -> Amplitude {
    Complex64::new(x, 0.0)
}

/// A state with fixed amplitudes.
struct Fixed {
    name: &'static str,
    description: &'static str,
    n: usize,
    terms: fn() -> Vec<(&'static str, Amplitude)>,
}

impl Named for Fixed {
    fn name(&self) -> &'static str {
        self.name
    }
}

impl StateRecipe for Fixed {
    fn description(&self) -> &'static str {
        self.description
    }

    fn build(&self, _params: &Params) -> Result<PureState> {
        PureState::from_terms(self.n, &(self.terms)())
    }
}

type FamilyTerms = fn(&[Amplitude]) -> Vec<(&'static str, Amplitude)>;

/// A four-qubit family whose amplitudes are polynomials in complex parameters.
struct Family {
    name: &'static str,
    description: &'static str,
    params: &'static [&'static str],
    terms: FamilyTerms,
}

impl Named for Family {
    fn name(&self) -> &'static str {
        self.name
    }
}

impl StateRecipe for Family {
    fn params(&self) -> &'static [&'static str] {
        self.params
    }

    fn description(&self) -> &'static str {
        self.description
    }

    fn build(&self, params: &Params) -> Result<PureState> {
        let values = self.params.iter().map(|p| params.get(p)).collect::<Result<Vec<_>>>()?;
        PureState::from_terms(4, &(self.terms)(&values))
    }
}

fn pairs(out: &mut Vec<(&'static str, Amplitude)>, labels: [&'static str; 2], a: Amplitude) {
    out.extend(labels.into_iter().map(|l| (l, a)));
}

fn g_abcd(v: &[Amplitude]) -> Vec<(&'static str, Amplitude)> {
    let (a, b, c, d) = (v[0], v[1], v[2], v[3]);
    let mut t = Vec::with_capacity(8);
    pairs(&mut t, ["0000", "1111"], (a + d) / 2.0);
    pairs(&mut t, ["1100", "0011"], (a - d) / 2.0);
    pairs(&mut t, ["1010", "0101"], (b + c) / 2.0);
    pairs(&mut t, ["0110", "1001"], (b - c) / 2.0);
    t
}

fn l_abc2(v: &[Amplitude]) -> Vec<(&'static str, Amplitude)> {
    let (a, b, c) = (v[0], v[1], v[2]);
    let mut t = Vec::with_capacity(7);
    pairs(&mut t, ["0000", "1111"], (a + b) / 2.0);
    pairs(&mut t, ["1100", "0011"], (a - b) / 2.0);
    pairs(&mut t, ["1010", "0101"], c);
    t.push(("0110", re(1.0)));
    t
}

fn l_a2b2(v: &[Amplitude]) -> Vec<(&'static str, Amplitude)> {
    let (a, b) = (v[0], v[1]);
    let mut t = Vec::with_capacity(6);
    pairs(&mut t, ["0000", "1111"], a);
    pairs(&mut t, ["0101", "1010"], b);
    pairs(&mut t, ["0110", "0011"], re(1.0));
    t
}

fn l_a2_0_3p1t(v: &[Amplitude]) -> Vec<(&'static str, Amplitude)> {
    let a = v[0];
    let mut t = Vec::with_capacity(5);
    pairs(&mut t, ["0000", "1111"], a);
    t.extend(["0101", "0110", "0011"].map(|l| (l, re(1.0))));
    t
}

fn psi_ab(v: &[Amplitude]) -> Vec<(&'static str, Amplitude)> {
    let (a, b) = (v[0], v[1]);
    let mut t = Vec::with_capacity(5);
    pairs(&mut t, ["0000", "1111"], a);
    t.extend(["1101", "1110", "0011"].map(|l| (l, b)));
    t
}

fn psi_a(v: &[Amplitude]) -> Vec<(&'static str, Amplitude)> {
    let a = v[0];
    vec![("0000", a), ("1111", a), ("1110", re(1.0))]
}

fn fixed_entries() -> Vec<Fixed> {
    vec![
        Fixed {
            name: "Bell",
            description: "(|00> + |11>)/sqrt2",
            n: 2,
            terms: || vec![("00", re(FRAC_1_SQRT_2)), ("11", re(FRAC_1_SQRT_2))],
        },
        Fixed {
            name: "GHZ3",
            description: "(|000> + |111>)/sqrt2",
            n: 3,
            terms: || vec![("000", re(FRAC_1_SQRT_2)), ("111", re(FRAC_1_SQRT_2))],
        },
        Fixed {
            name: "W3",
            description: "(|001> + |010> + |100>)/sqrt3",
            n: 3,
            terms: || ["001", "010", "100"].map(|l| (l, re(1.0 / 3f64.sqrt()))).to_vec(),
        },
        Fixed {
            name: "GHZ4",
            description: "(|0000> + |1111>)/sqrt2",
            n: 4,
            terms: || vec![("0000", re(FRAC_1_SQRT_2)), ("1111", re(FRAC_1_SQRT_2))],
        },
        Fixed {
            name: "W4",
            description: "(|0000> + |1100> + |1010> + |1001>)/2",
            n: 4,
            terms: || ["0000", "1100", "1010", "1001"].map(|l| (l, re(0.5))).to_vec(),
        },
        Fixed {
            name: "C1",
            description: "cluster (|0000> + |1100> + |0011> - |1111>)/2",
            n: 4,
            terms: || vec![("0000", re(0.5)), ("1100", re(0.5)), ("0011", re(0.5)), ("1111", re(-0.5))],
        },
        Fixed {
            name: "C2",
            description: "cluster (|0000> + |0110> + |1001> - |1111>)/2",
            n: 4,
            terms: || vec![("0000", re(0.5)), ("0110", re(0.5)), ("1001", re(0.5)), ("1111", re(-0.5))],
        },
        Fixed {
            name: "C3",
            description: "cluster (|0000> + |1010> + |0101> - |1111>)/2",
            n: 4,
            terms: || vec![("0000", re(0.5)), ("1010", re(0.5)), ("0101", re(0.5)), ("1111", re(-0.5))],
        },
        Fixed {
            name: "Dicke42",
            description: "two-excitation Dicke state, equal weight 1/sqrt6",
            n: 4,
            terms: || {
                ["0011", "1100", "0101", "1010", "1001", "0110"]
                    .map(|l| (l, re(1.0 / 6f64.sqrt())))
                    .to_vec()
            },
        },
        Fixed {
            name: "HS",
            description: "(|0011>+|1100> + w(|1010>+|0101>) + w^2(|1001>+|0110>))/sqrt6, w = exp(2 pi i/3)",
            n: 4,
            terms: || {
                let s = 1.0 / 6f64.sqrt();
                let w = Complex64::from_polar(s, 2.0 * PI / 3.0);
                let w2 = Complex64::from_polar(s, 4.0 * PI / 3.0);
                vec![
                    ("0011", re(s)),
                    ("1100", re(s)),
                    ("1010", w),
                    ("0101", w),
                    ("1001", w2),
                    ("0110", w2),
                ]
            },
        },
        Fixed {
            name: "BrownPhi",
            description: "(|0000>+|1101>)/2 + (|1011>+|0011>+|0110>-|1110>)/sqrt8",
            n: 4,
            terms: || {
                let q = 1.0 / 8f64.sqrt();
                vec![
                    ("0000", re(0.5)),
                    ("1101", re(0.5)),
                    ("1011", re(q)),
                    ("0011", re(q)),
                    ("0110", re(q)),
                    ("1110", re(-q)),
                ]
            },
        },
    ]
}

fn family_entries() -> Vec<Family> {
    vec![
        Family {
            name: "G_abcd",
            description: "(a+d)/2(|0000>+|1111>) + (a-d)/2(|1100>+|0011>) + (b+c)/2(|1010>+|0101>) + (b-c)/2(|0110>+|1001>)",
            params: &["a", "b", "c", "d"],
            terms: g_abcd,
        },
        Family {
            name: "L_abc2",
            description: "(a+b)/2(|0000>+|1111>) + (a-b)/2(|1100>+|0011>) + c(|1010>+|0101>) + |0110>",
            params: &["a", "b", "c"],
            terms: l_abc2,
        },
        Family {
            name: "L_a2b2",
            description: "a(|0000>+|1111>) + b(|0101>+|1010>) + |0110> + |0011>",
            params: &["a", "b"],
            terms: l_a2b2,
        },
        Family {
            name: "L_a2_0_3p1t",
            description: "a(|0000>+|1111>) + |0101> + |0110> + |0011>",
            params: &["a"],
            terms: l_a2_0_3p1t,
        },
        Family {
            name: "Psi_ab",
            description: "a(|0000>+|1111>) + b(|1101>+|1110>+|0011>)",
            params: &["a", "b"],
            terms: psi_ab,
        },
        Family {
            name: "Psi_a",
            description: "a(|0000>+|1111>) + |1110>",
            params: &["a"],
            terms: psi_a,
        },
    ]
}

pub type Catalog = Registry<dyn StateRecipe>;

/// Registry holding every built-in named state and family.
pub fn default_catalog() -> Catalog {
    let mut cat = Catalog::new("state");
    for f in fixed_entries() {
        cat.register(Box::new(f));
    }
    for f in family_entries() {
        cat.register(Box::new(f));
    }
    cat
}

/// Raw (unnormalized where the defining expression is) state `name`.
pub fn catalog_state(name: &str, params: &Params) -> Result<PureState> {
    let cat = default_catalog();
    let recipe = cat.get(name).map_err(|_| crate::Error::UnknownState(name.to_string()))?;
    recipe.build(params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn nonzero(s: &PureState) -> Vec<Amplitude> {
        s.amps().iter().copied().filter(|a| a.norm() > 1e-15).collect()
    }

    #[test]
    fn ghz4_amplitudes() {
        let s = catalog_state("GHZ4", &Params::new()).unwrap();
        assert_eq!(s.amp(&[0, 0, 0, 0]), re(FRAC_1_SQRT_2));
        assert_eq!(s.amp(&[1, 1, 1, 1]), re(FRAC_1_SQRT_2));
        assert_eq!(nonzero(&s.normalize().unwrap()).len(), 2);
    }

    #[test]
    fn hs_amplitudes() {
        let s = catalog_state("HS", &Params::new()).unwrap().normalize().unwrap();
        let nz = nonzero(&s);
        assert_eq!(nz.len(), 6);
        for a in nz {
            assert!((a.norm() - 1.0 / 6f64.sqrt()).abs() < 1e-12);
        }
        let w = Complex64::from_polar(1.0 / 6f64.sqrt(), 2.0 * PI / 3.0);
        assert!((s.amp(&[1, 0, 1, 0]) - w).norm() < 1e-15);
        assert!((s.amp(&[0, 1, 1, 0]) - w * w * 6f64.sqrt()).norm() < 1e-15);
    }

    #[test]
    fn g_abcd_member() {
        let p = Params::new().with("a", 1.0).with("b", 0.0).with("c", 0.0).with("d", 1.0);
        let s = catalog_state("G_abcd", &p).unwrap();
        assert_eq!(s.amp(&[0, 0, 0, 0]), re(1.0));
        assert_eq!(s.amp(&[1, 1, 1, 1]), re(1.0));
        assert_eq!(nonzero(&s).len(), 2);

        let p = Params::new().with("a", 1.0).with("b", 2.0).with("c", 3.0).with("d", 4.0);
        assert_eq!(nonzero(&catalog_state("G_abcd", &p).unwrap()).len(), 8);
    }

    #[test]
    fn catalog_errors() {
        assert_eq!(catalog_state("nosuch", &Params::new()), Err(Error::UnknownState("nosuch".into())));
        assert_eq!(
            catalog_state("Psi_ab", &Params::new().with("a", 1.0)),
            Err(Error::MissingParameter("b".into()))
        );
    }

    #[test]
    fn every_entry_builds() {
        let cat = default_catalog();
        let p = Params::new().with("a", 0.7).with("b", 1.3).with("c", -0.4).with("d", 2.0);
        for recipe in cat.iter() {
            let s = recipe.build(&p).unwrap();
            assert_eq!(s.dim(), 1 << s.n_qubits());
            assert!(s.norm() > 0.0);
        }
        for name in ["Bell", "GHZ3", "GHZ4", "W3", "W4", "C1", "C2", "C3", "Dicke42", "HS", "BrownPhi"] {
            let s = catalog_state(name, &Params::new()).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn complex_parameters_are_kept() {
        let p = Params::new().with("a", Complex64::new(0.0, 1.0));
        let s = catalog_state("Psi_a", &p).unwrap();
        assert_eq!(s.amp(&[0, 0, 0, 0]), Complex64::new(0.0, 1.0));
    }
}
