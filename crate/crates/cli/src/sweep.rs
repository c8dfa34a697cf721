//! Family sweeps over a parameter grid, written as CSV.
//!
//! A grid is one `name=values` argument per family parameter. `values` is a
//! comma-separated list of complex numbers (`a=1,0.5-2i`) or a real range
//! `start:stop:count` (`b=0:1:5`, endpoints included).

use std::io::Write;

use negfont::classify::families::{Claim, Deviation, FamilyComparison};
use negfont::classify::{compare_family, default_families};
use negfont::params::parse_complex;
use negfont::{Amplitude, Params};

use crate::error::{CliError, CliResult};

/// Relative deviation above which a sweep counts as a violation.
pub const FAIL_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<Amplitude>,
}

fn parse_values(name: &str, text: &str) -> CliResult<Vec<Amplitude>> {
    let bad = |msg: String| CliError::BadGrid(format!("`{name}`: {msg}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(format!("bad range bound `{s}`")));
        let (start, stop) = (num(parts[0])?, num(parts[1])?);
        let count: usize = parts[2].trim().parse().map_err(|_| bad(format!("bad point count `{}`", parts[2])))?;
        return Ok(match count {
            0 => Vec::new(),
            1 => vec![Amplitude::new(start, 0.0)],
            _ => (0..count).map(|k| Amplitude::new(start + (stop - start) * k as f64 / (count - 1) as f64, 0.0)).collect(),
        });
    }
    if parts.len() != 1 {
        return Err(bad(format!("expected a list or start:stop:count, got `{text}`")));
    }
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_complex(s).map_err(|_| bad(format!("bad value `{s}`"))))
        .collect()
}

/// Parses the grid and orders the axes as the family lists its parameters.
pub fn parse_grid(family_params: &[&str], specs: &[String]) -> CliResult<Vec<Axis>> {
    let mut axes: Vec<Axis> = Vec::new();
    for spec in specs {
        let (name, values) =
            spec.split_once('=').ok_or_else(|| CliError::BadGrid(format!("expected name=values, got `{spec}`")))?;
        let name = name.trim();
        if !family_params.contains(&name) {
            return Err(CliError::BadGrid(format!("unknown parameter `{name}` (family takes {family_params:?})")));
        }
        if axes.iter().any(|a| a.name == name) {
            return Err(CliError::BadGrid(format!("parameter `{name}` given twice")));
        }
        axes.push(Axis { name: name.to_string(), values: parse_values(name, values)? });
    }
    let mut ordered = Vec::new();
    for p in family_params {
        let axis = axes.iter().find(|a| a.name == *p).ok_or_else(|| CliError::BadGrid(format!("no values for `{p}`")))?;
        if axis.values.is_empty() {
            return Err(CliError::BadGrid(format!("`{p}` has an empty value list")));
        }
        ordered.push(axis.clone());
    }
    Ok(ordered)
}

/// Grid points in row-major order, last axis fastest.
pub fn points(axes: &[Axis]) -> Vec<Params> {
    let total: usize = axes.iter().map(|a| a.values.len()).product();
    (0..total)
        .map(|mut idx| {
            let mut picks = vec![0; axes.len()];
            for (k, axis) in axes.iter().enumerate().rev() {
                picks[k] = idx % axis.values.len();
                idx /= axis.values.len();
            }
            axes.iter().zip(picks).fold(Params::new(), |p, (a, i)| p.with(&a.name, a.values[i]))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub points: usize,
    pub max_relative: f64,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.max_relative <= FAIL_THRESHOLD
    }
}

fn claim(c: Claim) -> &'static str {
    match c {
        Claim::Zero => "zero",
        Claim::NonZero => "nonzero",
        Claim::Unstated => "",
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn quantity_columns(d: &Deviation, complex: bool) -> Vec<String> {
    let mut row = vec![num(d.numeric.re)];
    if complex {
        row.push(num(d.numeric.im));
    }
    row.push(num(d.expected.re));
    if complex {
        row.push(num(d.expected.im));
    }
    row.push(num(d.absolute));
    row.push(num(d.relative));
    row
}

const QUANTITIES: [(&str, bool); 4] = [("i48", true), ("n_triple_sq", false), ("dres", false), ("delta", true)];

fn header(params: &[&str]) -> Vec<String> {
    let mut h: Vec<String> = params.iter().flat_map(|p| [format!("{p}_re"), format!("{p}_im")]).collect();
    for (q, complex) in QUANTITIES {
        if complex {
            h.extend([format!("{q}_re"), format!("{q}_im"), format!("{q}_expected_re"), format!("{q}_expected_im")]);
        } else {
            h.extend([q.to_string(), format!("{q}_expected")]);
        }
        h.extend([format!("{q}_abs_dev"), format!("{q}_rel_dev")]);
    }
    h.extend(["dres_claim".into(), "delta_claim".into()]);
    h
}

fn row(params: &[&str], c: &FamilyComparison) -> CliResult<Vec<String>> {
    let mut r = Vec::new();
    for p in params {
        let v = c.params.get(p)?;
        r.extend([num(v.re), num(v.im)]);
    }
    for (d, (_, complex)) in [&c.i48, &c.n_sq, &c.dres, &c.delta].into_iter().zip(QUANTITIES) {
        r.extend(quantity_columns(d, complex));
    }
    r.extend([claim(c.expected.dres_claim).to_string(), claim(c.expected.delta_claim).to_string()]);
    Ok(r)
}

/// Evaluates every grid point and writes one CSV row per point.
pub fn run<W: Write>(family: &str, grid: &[String], out: W) -> CliResult<SweepSummary> {
    let families = default_families();
    let formula = families.get(family).map_err(|_| negfont::Error::UnknownFamily(family.to_string()))?;
    let params = formula.params();
    let axes = parse_grid(params, grid)?;
    let pts = points(&axes);
    if pts.is_empty() {
        return Err(CliError::BadGrid("grid has no points".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(params))?;
    let mut max_relative = 0.0f64;
    for p in &pts {
        let c = compare_family(family, p)?;
        max_relative = max_relative.max(c.max_relative());
        w.write_record(row(params, &c)?)?;
    }
    w.flush().map_err(|e| CliError::io("<csv>", e))?;
    Ok(SweepSummary { points: pts.len(), max_relative })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ranges_and_lists() {
        let axes = parse_grid(&["a", "b"], &grid(&["b=0:1:3", "a=1,2i"])).unwrap();
        assert_eq!(axes[0].name, "a");
        assert_eq!(axes[0].values, vec![Amplitude::new(1.0, 0.0), Amplitude::new(0.0, 2.0)]);
        assert_eq!(axes[1].values.len(), 3);
        assert_eq!(axes[1].values[1], Amplitude::new(0.5, 0.0));
        assert_eq!(points(&axes).len(), 6);
    }

    #[test]
    fn empty_or_incomplete_grids_are_rejected() {
        for g in [grid(&[]), grid(&["a=0:1:0"]), grid(&["a="]), grid(&["a=1", "a=2"]), grid(&["z=1"])] {
            assert!(matches!(parse_grid(&["a"], &g), Err(CliError::BadGrid(_))), "{g:?}");
        }
    }

    #[test]
    fn sweep_writes_one_row_per_point() {
        let mut buf = Vec::new();
        let s = run("L_a2b2", &grid(&["a=0.5,1+1i", "b=0.3:0.9:3"]), &mut buf).unwrap();
        assert_eq!(s.points, 6);
        assert!(s.passed());
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.starts_with("a_re,a_im,b_re,b_im,i48_re"));
    }
}
