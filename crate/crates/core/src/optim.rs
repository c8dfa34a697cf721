//! Derivative-free minimizers over `R^d`.

use crate::registry::{Named, Registry};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    pub max_iter: usize,
    /// Initial simplex edge or pattern step.
    pub initial_step: f64,
    /// Stop once every vertex lies within `xtol` of the best one...
    pub xtol: f64,
    /// ...and every vertex value within `ftol` of the best value.
    pub ftol: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { max_iter: 1000, initial_step: 0.5, xtol: 1e-10, ftol: 1e-15 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Best value after each iteration; non-increasing.
    pub trace: Vec<f64>,
}

pub trait Minimizer: Named + Send + Sync {
    fn minimize(&self, f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], opts: &MinimizeOptions) -> MinimizeResult;
}

/// Nelder-Mead with dimension-adapted coefficients (Gao and Han).
pub struct NelderMead;

impl Named for NelderMead {
    fn name(&self) -> &'static str {
        "nelder-mead"
    }
}

fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

impl Minimizer for NelderMead {
    fn minimize(&self, f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], opts: &MinimizeOptions) -> MinimizeResult {
        let d = x0.len();
        if d == 0 {
            let fx = f(x0);
            return MinimizeResult { x: Vec::new(), fx, iterations: 0, evaluations: 1, trace: vec![fx] };
        }
        let dn = d as f64;
        let (alpha, beta, gamma, delta) = (1.0, 1.0 + 2.0 / dn, 0.75 - 0.5 / dn, 1.0 - 1.0 / dn);
        let mut evals = 0;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
        simplex.push((x0.to_vec(), eval(x0, &mut evals)));
        for k in 0..d {
            let mut x = x0.to_vec();
            x[k] += opts.initial_step;
            let v = eval(&x, &mut evals);
            simplex.push((x, v));
        }
        let mut trace = Vec::new();
        let mut iterations = 0;
        while iterations < opts.max_iter {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = &simplex[0];
            let spread_x = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&best.0).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            let spread_f = simplex[1..].iter().map(|(_, v)| (v - best.1).abs()).fold(0.0, f64::max);
            if spread_x <= opts.xtol && spread_f <= opts.ftol {
                break;
            }
            iterations += 1;
            let mut centroid = vec![0.0; d];
            for (x, _) in &simplex[..d] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / dn;
                }
            }
            let worst = simplex[d].clone();
            let second = simplex[d - 1].1;
            let xr = lerp(&centroid, &worst.0, -alpha);
            let fr = eval(&xr, &mut evals);
            if fr < simplex[0].1 {
                let xe = lerp(&centroid, &worst.0, -alpha * beta);
                let fe = eval(&xe, &mut evals);
                simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < second {
                simplex[d] = (xr, fr);
            } else {
                let (xc, fc) = if fr < worst.1 {
                    let xc = lerp(&centroid, &worst.0, -alpha * gamma);
                    let fc = eval(&xc, &mut evals);
                    (xc, fc)
                } else {
                    let xc = lerp(&centroid, &worst.0, gamma);
                    let fc = eval(&xc, &mut evals);
                    (xc, fc)
                };
                if fc < fr.min(worst.1) {
                    simplex[d] = (xc, fc);
                } else {
                    let best = simplex[0].0.clone();
                    for vertex in simplex.iter_mut().skip(1) {
                        let x = lerp(&best, &vertex.0, delta);
                        let v = eval(&x, &mut evals);
                        *vertex = (x, v);
                    }
                }
            }
            trace.push(simplex.iter().map(|v| v.1).fold(f64::INFINITY, f64::min));
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, fx) = simplex.swap_remove(0);
        MinimizeResult { x, fx, iterations, evaluations: evals, trace }
    }
}

/// Coordinate pattern search with step halving.
pub struct Compass;

impl Named for Compass {
    fn name(&self) -> &'static str {
        "compass"
    }
}

impl Minimizer for Compass {
    fn minimize(&self, f: &mut dyn FnMut(&[f64]) -> f64, x0: &[f64], opts: &MinimizeOptions) -> MinimizeResult {
        let mut x = x0.to_vec();
        let mut fx = f(&x);
        let mut evals = 1;
        let mut step = opts.initial_step;
        let mut trace = Vec::new();
        let mut iterations = 0;
        while iterations < opts.max_iter && step > opts.xtol {
            iterations += 1;
            let mut improved = false;
            for k in 0..x.len() {
                for sign in [1.0, -1.0] {
                    let mut y = x.clone();
                    y[k] += sign * step;
                    let fy = f(&y);
                    evals += 1;
                    if fy < fx {
                        x = y;
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
            trace.push(fx);
        }
        MinimizeResult { x, fx, iterations, evaluations: evals, trace }
    }
}

pub type MinimizerRegistry = Registry<dyn Minimizer>;

pub fn default_minimizers() -> MinimizerRegistry {
    let mut reg = MinimizerRegistry::new("minimizer");
    reg.register(Box::new(NelderMead)).register(Box::new(Compass));
    reg
}
