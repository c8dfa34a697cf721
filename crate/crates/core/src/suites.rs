//! Randomized property suites: each runs a number of seeded trials and
//! reports the worst residual against its threshold.

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::invariants::oracle::{delta_via_resolvent, polarization_coeffs};
use crate::invariants::{aggregate_invariants, degree, i3_three, n_global_sq_relation, FourQubitReport};
use crate::ptrans::{decomposition_residual, density_from_pure, global_pt};
use crate::registry::{Named, Registry};
use crate::state::{random_state_with, scramble_locally, stream_rng, Amplitude, PureState};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub trials: usize,
    pub max_residual: f64,
    pub threshold: f64,
    /// Per-check worst residuals, e.g. `("I48", 3e-16)`.
    pub details: Vec<(String, f64)>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.threshold
    }
}

pub trait CheckSuite: Named + Send + Sync {
    fn description(&self) -> &'static str;
    fn default_trials(&self) -> usize;
    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome>;
}

#[derive(Default)]
struct Worst(Vec<(String, f64)>);

impl Worst {
    fn record(&mut self, name: &str, value: f64) {
        match self.0.iter_mut().find(|(n, _)| n == name) {
            Some((_, v)) => *v = v.max(value),
            None => self.0.push((name.to_string(), value)),
        }
    }

    fn finish(self, suite: &'static str, trials: usize, threshold: f64) -> SuiteOutcome {
        let max_residual = self.0.iter().map(|(_, v)| *v).fold(0.0, f64::max);
        SuiteOutcome { suite, trials, max_residual, threshold, details: self.0 }
    }
}

fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    let amps = a.amps().iter().flat_map(|x| b.amps().iter().map(move |y| x * y)).collect();
    PureState::new(a.n_qubits() + b.n_qubits(), amps)
}

/// Normalized `[alpha, beta]` taken from the first two amplitudes of a
/// random two-qubit state.
fn random_qubit<R: Rng>(rng: &mut R) -> [Amplitude; 2] {
    let s = random_state_with(2, rng).expect("two qubits supported");
    let (x, y) = (s.amps()[0], s.amps()[1]);
    let n = (x.norm_sqr() + y.norm_sqr()).sqrt();
    [x / n, y / n]
}

fn append_qubit(s: &PureState, q: [Amplitude; 2]) -> Result<PureState> {
    let amps = s.amps().iter().flat_map(|a| [a * q[0], a * q[1]]).collect();
    PureState::new(s.n_qubits() + 1, amps)
}

/// Three random qubits followed by a product fourth qubit.
pub fn random_triple_single<R: Rng>(rng: &mut R) -> Result<PureState> {
    let three = random_state_with(3, rng)?;
    append_qubit(&three, random_qubit(rng))
}

pub fn random_pair_pair<R: Rng>(rng: &mut R) -> Result<PureState> {
    tensor(&random_state_with(2, rng)?, &random_state_with(2, rng)?)
}

/// Relative change of a complex invariant of the given degree.
fn drift(a: Complex64, b: Complex64, deg: i32, norm: f64) -> f64 {
    (a - b).norm() / a.norm().max(norm.powi(deg))
}

fn headline(r: &FourQubitReport) -> [(&'static str, Complex64, i32); 4] {
    [("I4", r.i4, degree::I4), ("I48", r.i48, degree::I48), ("J", r.j12, degree::J12), ("Delta", r.delta24, degree::DELTA)]
}

pub struct Decomposition;

impl Named for Decomposition {
    fn name(&self) -> &'static str {
        "decomposition"
    }
}

impl CheckSuite for Decomposition {
    fn description(&self) -> &'static str {
        "global transpose minus all K-way transposes plus (n-2) rho vanishes; global transpose is an involution"
    }

    fn default_trials(&self) -> usize {
        500
    }

    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome> {
        let mut worst = Worst::default();
        for t in 0..trials {
            let mut rng = stream_rng(seed, t as u64);
            let n = if t % 2 == 0 { 3 } else { 4 };
            let s = random_state_with(n, &mut rng)?;
            let rho = density_from_pure(&s);
            for p in 1..=n {
                worst.record(&format!("residual n={n}"), decomposition_residual(&s, p)?);
                let back = global_pt(&global_pt(&rho, p)?.rho, p)?.rho;
                worst.record("involution", back.matrix().max_abs_diff(rho.matrix()));
                worst.record("hermiticity", global_pt(&rho, p)?.rho.matrix().hermiticity_residual());
            }
        }
        Ok(worst.finish(self.name(), trials, 1e-12))
    }
}

pub struct Invariance;

impl Named for Invariance {
    fn name(&self) -> &'static str {
        "invariance"
    }
}

impl CheckSuite for Invariance {
    fn description(&self) -> &'static str {
        "I3, I4, I48, J, Delta and the modulus invariants are unchanged by random local special unitaries"
    }

    fn default_trials(&self) -> usize {
        500
    }

    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome> {
        let mut worst = Worst::default();
        for t in 0..trials {
            let mut rng = stream_rng(seed, t as u64);
            let s3 = random_state_with(3, &mut rng)?;
            let u3 = scramble_locally(&s3, &mut rng);
            worst.record("I3", drift(i3_three(&s3)?, i3_three(&u3)?, degree::I3, 1.0));
            let s = random_state_with(4, &mut rng)?;
            let u = scramble_locally(&s, &mut rng);
            let (a, b) = (aggregate_invariants(&s)?, aggregate_invariants(&u)?);
            for ((name, x, deg), (_, y, _)) in headline(&a).into_iter().zip(headline(&b)) {
                worst.record(name, drift(x, y, deg, 1.0));
            }
            for l in 0..4 {
                worst.record("N^2", (a.n_triple_sq[l] - b.n_triple_sq[l]).abs());
            }
            worst.record("tau48", (a.tau48 - b.tau48).abs());
        }
        Ok(worst.finish(self.name(), trials, 1e-9))
    }
}

pub struct Homogeneity;

impl Named for Homogeneity {
    fn name(&self) -> &'static str {
        "homogeneity"
    }
}

impl CheckSuite for Homogeneity {
    fn description(&self) -> &'static str {
        "scaling amplitudes by lambda scales each invariant by lambda^degree"
    }

    fn default_trials(&self) -> usize {
        200
    }

    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome> {
        let mut worst = Worst::default();
        for t in 0..trials {
            let mut rng = stream_rng(seed, t as u64);
            let s = random_state_with(4, &mut rng)?;
            let lambda: f64 = rng.gen_range(0.3..3.0);
            let a = aggregate_invariants(&s)?;
            let b = aggregate_invariants(&s.scaled(lambda)?)?;
            for ((name, x, deg), (_, y, _)) in headline(&a).into_iter().zip(headline(&b)) {
                let expected = x * lambda.powi(deg);
                worst.record(name, (y - expected).norm() / expected.norm().max(f64::MIN_POSITIVE));
            }
            let n_expected = a.n_triple_sq[3] * lambda.powi(degree::N_SQ_FOUR);
            worst.record("N^2", (b.n_triple_sq[3] - n_expected).abs() / n_expected);
        }
        Ok(worst.finish(self.name(), trials, 1e-9))
    }
}

pub struct NegativityRelation;

impl Named for NegativityRelation {
    fn name(&self) -> &'static str {
        "negativity-relation"
    }
}

impl CheckSuite for NegativityRelation {
    fn description(&self) -> &'static str {
        "three qubits: squared global negativity equals 4 (N_A3^A1A2)^2 + 4 (N_A2^A1A3)^2"
    }

    fn default_trials(&self) -> usize {
        300
    }

    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome> {
        let mut worst = Worst::default();
        for t in 0..trials {
            let s = random_state_with(3, &mut stream_rng(seed, t as u64))?;
            let (lhs, rhs) = n_global_sq_relation(&s)?;
            worst.record("|lhs - rhs|", (lhs - rhs).abs());
        }
        Ok(worst.finish(self.name(), trials, 1e-9))
    }
}

pub struct Vanishing;

impl Named for Vanishing {
    fn name(&self) -> &'static str {
        "vanishing"
    }
}

impl CheckSuite for Vanishing {
    fn description(&self) -> &'static str {
        "I48 vanishes on triple-single and pair-pair products and on W4 under random local unitaries"
    }

    fn default_trials(&self) -> usize {
        100
    }

    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome> {
        let w = crate::catalog::catalog_state("W4", &crate::Params::new())?.normalize()?;
        let mut worst = Worst::default();
        for t in 0..trials {
            let mut rng = stream_rng(seed, t as u64);
            let cases = [
                ("triple x single", random_triple_single(&mut rng)?),
                ("pair x pair", random_pair_pair(&mut rng)?),
                ("W4", scramble_locally(&w, &mut rng)),
            ];
            for (name, s) in cases {
                let r = aggregate_invariants(&s)?;
                worst.record(name, r.i48.norm() / s.norm().powi(degree::I48));
                if name == "triple x single" {
                    worst.record("J on triple x single", r.j12.norm() / s.norm().powi(degree::J12));
                }
            }
        }
        Ok(worst.finish(self.name(), trials, 1e-9))
    }
}

pub struct Discriminant;

impl Named for Discriminant {
    fn name(&self) -> &'static str {
        "discriminant"
    }
}

impl CheckSuite for Discriminant {
    fn description(&self) -> &'static str {
        "Delta agrees with the resolvent-cubic discriminant of the interpolated quartic"
    }

    fn default_trials(&self) -> usize {
        100
    }

    fn run(&self, trials: usize, seed: u64) -> Result<SuiteOutcome> {
        let mut worst = Worst::default();
        for t in 0..trials {
            let s = random_state_with(4, &mut stream_rng(seed, t as u64))?;
            let r = aggregate_invariants(&s)?;
            let oracle = delta_via_resolvent(&polarization_coeffs(&s)?);
            worst.record("relative", (r.delta24 - oracle).norm() / r.delta24.norm());
        }
        Ok(worst.finish(self.name(), trials, 1e-8))
    }
}

pub type SuiteRegistry = Registry<dyn CheckSuite>;

pub fn default_suites() -> SuiteRegistry {
    let mut reg = SuiteRegistry::new("check suite");
    reg.register(Box::new(Decomposition))
        .register(Box::new(Invariance))
        .register(Box::new(Homogeneity))
        .register(Box::new(NegativityRelation))
        .register(Box::new(Vanishing))
        .register(Box::new(Discriminant));
    reg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small_runs() {
        for suite in default_suites().iter() {
            let out = suite.run(5, 42).unwrap();
            assert!(out.passed(), "{}: {:?}", suite.name(), out.details);
            assert!(!out.details.is_empty());
        }
    }

    #[test]
    fn product_builders() {
        let mut rng = stream_rng(1, 0);
        let s = random_triple_single(&mut rng).unwrap();
        assert_eq!(s.n_qubits(), 4);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        let s = random_pair_pair(&mut rng).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }
}
