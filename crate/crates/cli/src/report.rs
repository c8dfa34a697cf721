//! JSON report assembly. Complex values are written as `{re, im, abs}`.

use serde_json::{json, Map, Value};

use negfont::classify::{ClassIiiReading, ClassReport};
use negfont::invariants::{FourQubitReport, InvariantReport, ThreeQubitReport, TripleInvariants};
use negfont::Amplitude;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

pub fn cplx(z: Amplitude) -> Value {
    json!({ "re": z.re, "im": z.im, "abs": z.norm() })
}

fn cplx_list(zs: &[Amplitude]) -> Value {
    Value::Array(zs.iter().map(|z| cplx(*z)).collect())
}

/// Top-level envelope shared by every report.
pub fn envelope(command: &str, tol: f64, seed: Option<u64>, input: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("tool".into(), json!({ "name": "negfont", "version": env!("CARGO_PKG_VERSION") }));
    m.insert("command".into(), json!(command));
    m.insert("tolerance".into(), json!(tol));
    if let Some(seed) = seed {
        m.insert("seed".into(), json!(seed));
    }
    m.insert("input".into(), input);
    m
}

fn three_json(r: &ThreeQubitReport) -> Value {
    let d2: Vec<Value> =
        r.d2_fonts.iter().enumerate().map(|(k, d)| json!({ "spectator": k + 1, "values": cplx_list(d) })).collect();
    json!({
        "kind": "three-qubit",
        "d2_fonts": d2,
        "d3_fonts": cplx_list(&r.d3_fonts),
        "n_pair_sq": r.n_pair_sq,
        "n_global_sq": r.n_global_sq,
        "i3": cplx(r.i3),
        "tau3": r.tau3,
        "w_sums": r.w_sums,
        "i2_w": r.i2_w,
        "i3_zero": r.i3_zero,
    })
}

fn triple_json(t: &TripleInvariants) -> Value {
    json!({
        "singled": t.singled,
        "i3_conditional": cplx_list(&t.coeffs.i3),
        "t": cplx(t.coeffs.t),
        "p": cplx_list(&t.coeffs.p),
        "i48": cplx(t.i48),
        "j12": cplx(t.j12),
        "delta24": cplx(t.delta24),
        "n_sq": t.n_sq,
        "dres": t.dres,
    })
}

pub fn four_json(r: &FourQubitReport, tol: f64) -> Value {
    let pairs: Vec<Value> = r.pair_sums.iter().map(|((p, q), v)| json!({ "pair": [p, q], "value": v })).collect();
    json!({
        "kind": "four-qubit",
        "singled": r.singled,
        "norm": r.norm,
        "i4": cplx(r.i4),
        "tau4": r.tau4,
        "i3_conditional": cplx_list(&r.i3_cond),
        "t": cplx(r.t_inv),
        "p": cplx_list(&r.p_inv),
        "i48": cplx(r.i48),
        "j12": cplx(r.j12),
        "delta24": cplx(r.delta24),
        "n_triple_sq": r.n_triple_sq,
        "n44_sq": r.n44_sq,
        "n48": r.n48,
        "pair_sums": pairs,
        "i26": r.i26,
        "i26_symmetric": r.i26_symmetric,
        "dres": r.dres,
        "tau48": r.tau48,
        "zero_tests": {
            "i48": r.i48_zero(tol),
            "dres": r.dres_zero(tol),
            "j12": r.j12_zero(tol),
            "delta24": r.delta_zero(tol),
        },
        "triples": r.triples.iter().map(triple_json).collect::<Vec<_>>(),
        "cross_triple_deviation": r.cross_triple_deviation,
    })
}

pub fn invariants_json(r: &InvariantReport, tol: f64) -> Value {
    match r {
        InvariantReport::Two { i2 } => json!({ "kind": "two-qubit", "i2": i2, "concurrence": 2.0 * i2 }),
        InvariantReport::Three(t) => three_json(t),
        InvariantReport::Four(f) => four_json(f, tol),
    }
}

pub fn class_json(r: &ClassReport) -> Value {
    let sig = r.signature;
    let reading = r.iii_reading.map(|x| match x {
        ClassIiiReading::ResidualZero => "residual-zero",
        ClassIiiReading::ResidualNonZero => "residual-nonzero",
    });
    let minimization = r.minimization.as_ref().map(|m| {
        json!({
            "restarts_run": m.restarts_run,
            "initial": { "count": m.initial.count, "sum": m.initial.sum },
            "final": { "count": m.objective.count, "sum": m.objective.sum },
            "guard_tripped": m.guard_tripped,
            "angles": m.angles,
            "trace": m.trace.iter().map(|e| json!({
                "restart": e.restart, "count": e.objective.count, "sum": e.objective.sum,
            })).collect::<Vec<_>>(),
        })
    });
    let mut v = json!({
        "major_class": r.major_class.to_string(),
        "signature": {
            "i48_zero": sig.i48_zero,
            "dres_zero": sig.dres_zero,
            "delta_zero": sig.delta_zero,
        },
        "font_counts": { "transposed_qubit": 1, "n2": sig.n2, "n3": sig.n3, "n4": sig.n4 },
        "minimized_state_used": r.minimized_state_used,
        "notes": r.notes,
    });
    if let Some(reading) = reading {
        v["iii_reading"] = json!(reading);
    }
    if let Some(m) = minimization {
        v["minimization"] = m;
    }
    v
}

/// Fails on the first `null`, which is where a non-finite float landed.
pub fn ensure_finite(v: &Value, path: &str) -> CliResult<()> {
    match v {
        Value::Null => Err(CliError::NonFinite(path.to_string())),
        Value::Array(items) => items.iter().enumerate().try_for_each(|(k, x)| ensure_finite(x, &format!("{path}[{k}]"))),
        Value::Object(m) => m.iter().try_for_each(|(k, x)| ensure_finite(x, &format!("{path}.{k}"))),
        _ => Ok(()),
    }
}

/// Pretty JSON with a trailing newline, after checking every number is finite.
pub fn to_text(m: Map<String, Value>) -> CliResult<String> {
    let v = Value::Object(m);
    ensure_finite(&v, "report")?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_finite_is_caught() {
        let v = json!({ "a": [1.0, f64::NAN] });
        assert!(matches!(ensure_finite(&v, "r"), Err(CliError::NonFinite(p)) if p == "r.a[1]"));
        assert!(ensure_finite(&json!({ "a": [1.0, 2.0] }), "r").is_ok());
    }

    #[test]
    fn complex_layout() {
        assert_eq!(cplx(Amplitude::new(3.0, 4.0)), json!({ "re": 3.0, "im": 4.0, "abs": 5.0 }));
    }
}
