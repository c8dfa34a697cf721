//! `negfont` command-line tool.
//!
//! Exit status: 0 on success, 2 for parse or usage errors, 3 when a check,
//! sweep or report finds a violation, 4 for an unsupported qubit count.

mod error;
mod report;
mod statefile;
mod sweep;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use negfont::catalog::default_catalog;
use negfont::classify::{classify_with, ClassifyOptions, FontMinOptions};
use negfont::fonts::{all_font_dets, font_counts};
use negfont::invariants::{invariant_report, DEFAULT_TOL};
use negfont::ptrans::{negativity, TransposeKind};
use negfont::suites::default_suites;
use negfont::{Params, PureState};

use crate::error::{CliError, CliResult};
use crate::report::{class_json, cplx, envelope, four_json, invariants_json, to_text};

#[derive(Parser)]
#[command(name = "negfont", version, about = "Negativity fonts, local-unitary invariants and four-qubit classes")]
struct Cli {
    /// Relative tolerance for every degree-aware zero test.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// State file: one `bitstring re im` line per amplitude.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Use the raw coefficients instead of normalizing first.
    #[arg(long)]
    no_normalize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant report for a 2-, 3- or 4-qubit state.
    Invariants {
        #[command(flatten)]
        input: Input,
        /// Singled qubit for the four-qubit quartic.
        #[arg(long, default_value_t = 4)]
        triple: usize,
    },
    /// Four-qubit class report.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Search for a local-unitary representative with fewer fonts first.
        #[arg(long)]
        font_min: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Global and K-way negativities for every qubit.
    Negativity {
        #[command(flatten)]
        input: Input,
    },
    /// Every negativity-font determinant, by transposed qubit.
    Fonts {
        #[command(flatten)]
        input: Input,
        /// Only this transposed qubit.
        #[arg(long)]
        qubit: Option<usize>,
    },
    /// Writes a named state as a state file.
    Catalog {
        /// State or family name.
        name: Option<String>,
        /// Family parameters as `name=value`, e.g. `a=1 b=0.5-2i`.
        params: Vec<String>,
        /// List the names and their parameters.
        #[arg(long)]
        list: bool,
    },
    /// Compares a family's numeric invariants with its closed forms over a grid.
    Sweep {
        family: String,
        /// One `name=v1,v2,..` or `name=start:stop:count` per parameter.
        grid: Vec<String>,
    },
    /// Runs a randomized property suite.
    Check {
        suite: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Loaded {
    state: PureState,
    descriptor: Value,
}

fn load(input: &Input) -> CliResult<Loaded> {
    let raw = statefile::read(&input.input)?;
    let state = if input.no_normalize { raw.clone() } else { raw.normalize()? };
    let descriptor = json!({
        "path": input.input.display().to_string(),
        "n_qubits": raw.n_qubits(),
        "raw_norm": raw.norm(),
        "normalized": !input.no_normalize,
    });
    Ok(Loaded { state, descriptor })
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn cmd_invariants(cli: &Cli, input: &Input, triple: usize) -> CliResult<()> {
    let l = load(input)?;
    let n = l.state.n_qubits();
    if !(2..=4).contains(&n) {
        return Err(CliError::UnsupportedArity { command: "invariants", expected: "2, 3 or 4", n });
    }
    if n == 4 && !(1..=4).contains(&triple) {
        return Err(CliError::Usage(format!("--triple must be 1..4, got {triple}")));
    }
    if n != 4 && triple != 4 {
        return Err(CliError::Usage("--triple applies to four-qubit states only".into()));
    }
    let r = invariant_report(&l.state, triple)?;
    let mut m = envelope("invariants", cli.tol, None, l.descriptor);
    m.insert("invariants".into(), invariants_json(&r, cli.tol));
    emit(cli.out.as_deref(), &to_text(m)?)
}

fn cmd_classify(cli: &Cli, input: &Input, font_min: bool, seed: u64) -> CliResult<()> {
    let l = load(input)?;
    let n = l.state.n_qubits();
    if n != 4 {
        return Err(CliError::UnsupportedArity { command: "classify", expected: "4", n });
    }
    let opts = ClassifyOptions {
        tol: cli.tol,
        font_min: font_min.then(|| FontMinOptions { seed, tol: cli.tol, ..Default::default() }),
    };
    let r = classify_with(&l.state, &opts)?;
    let mut m = envelope("classify", cli.tol, font_min.then_some(seed), l.descriptor);
    m.insert("class".into(), class_json(&r));
    m.insert("invariants".into(), four_json(&r.invariants, cli.tol));
    emit(cli.out.as_deref(), &to_text(m)?)
}

fn cmd_negativity(cli: &Cli, input: &Input) -> CliResult<()> {
    let l = load(input)?;
    let n = l.state.n_qubits();
    let mut entries = Vec::new();
    for p in 1..=n {
        let kinds = std::iter::once(TransposeKind::Global).chain((2..=n).map(TransposeKind::KWay));
        for kind in kinds {
            let neg = negativity(&l.state, p, kind)?;
            entries.push(json!({
                "qubit": p,
                "kind": kind.to_string(),
                "negativity": neg.value,
                "negative_eigenvalues": neg.negative_eigenvalues,
            }));
        }
    }
    let mut m = envelope("negativity", cli.tol, None, l.descriptor);
    m.insert("negativity".into(), Value::Array(entries));
    emit(cli.out.as_deref(), &to_text(m)?)
}

fn cmd_fonts(cli: &Cli, input: &Input, qubit: Option<usize>) -> CliResult<()> {
    let l = load(input)?;
    let n = l.state.n_qubits();
    let qubits: Vec<usize> = match qubit {
        Some(q) if (1..=n).contains(&q) => vec![q],
        Some(q) => return Err(negfont::Error::QubitOutOfRange { qubit: q, n }.into()),
        None => (1..=n).collect(),
    };
    let mut blocks = Vec::new();
    for p in qubits {
        let counts = font_counts(&l.state, p, cli.tol)?;
        let fonts: Vec<Value> = all_font_dets(&l.state, p)?
            .iter()
            .map(|f| json!({ "label": f.spec.label(n), "order": f.spec.order(), "value": cplx(f.value) }))
            .collect();
        let by_order: Vec<Value> =
            counts.iter().enumerate().map(|(k, c)| json!({ "order": k + 2, "nonzero": c })).collect();
        blocks.push(json!({ "transposed_qubit": p, "nonzero_counts": by_order, "fonts": fonts }));
    }
    let mut m = envelope("fonts", cli.tol, None, l.descriptor);
    m.insert("fonts".into(), Value::Array(blocks));
    emit(cli.out.as_deref(), &to_text(m)?)
}

fn cmd_catalog(cli: &Cli, name: Option<&str>, params: &[String], list: bool) -> CliResult<()> {
    let cat = default_catalog();
    if list {
        let mut text = String::new();
        for recipe in cat.iter() {
            let ps = recipe.params();
            let arity = if ps.is_empty() { String::new() } else { format!("({})", ps.join(", ")) };
            text.push_str(&format!("{}{arity}\t{}\n", recipe.name(), recipe.description()));
        }
        return emit(cli.out.as_deref(), &text);
    }
    let name = name.ok_or_else(|| CliError::Usage("catalog needs a state name or --list".into()))?;
    let recipe = cat.get(name).map_err(|_| negfont::Error::UnknownState(name.to_string()))?;
    let p = Params::parse_assignments(params)?;
    let state = recipe.build(&p)?;
    let mut header = vec![format!("{name} {p}").trim_end().to_string()];
    header.push("raw coefficients; bitstrings are big-endian, leftmost bit is qubit 1".into());
    emit(cli.out.as_deref(), &statefile::render(&state, &header))
}

fn cmd_sweep(cli: &Cli, family: &str, grid: &[String]) -> CliResult<()> {
    let summary = match &cli.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            sweep::run(family, grid, file)?
        }
        None => sweep::run(family, grid, std::io::stdout().lock())?,
    };
    eprintln!("{family}: {} points, max relative deviation {:.3e}", summary.points, summary.max_relative);
    if summary.passed() {
        Ok(())
    } else {
        Err(CliError::Violation(format!(
            "relative deviation {:.3e} exceeds {:.0e}",
            summary.max_relative,
            sweep::FAIL_THRESHOLD
        )))
    }
}

fn cmd_check(cli: &Cli, suite: &str, trials: Option<u64>, seed: u64) -> CliResult<()> {
    let suites = default_suites();
    let s = suites.get(suite).map_err(|_| {
        CliError::Usage(format!("unknown suite `{suite}`; available: {}", suites.names().join(", ")))
    })?;
    let trials = trials.map_or(s.default_trials(), |t| t as usize);
    let outcome = s.run(trials, seed)?;
    let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
    let mut text = format!(
        "{}: {verdict} max residual {:.3e} (threshold {:.0e}) over {trials} trials, seed {seed}\n",
        outcome.suite, outcome.max_residual, outcome.threshold
    );
    for (name, v) in &outcome.details {
        text.push_str(&format!("  {name}: {v:.3e}\n"));
    }
    print!("{text}");
    if let Some(path) = &cli.out {
        let mut m = envelope("check", cli.tol, Some(seed), json!({ "suite": suite, "trials": trials }));
        let details: Vec<Value> = outcome.details.iter().map(|(k, v)| json!({ "check": k, "max_residual": v })).collect();
        m.insert(
            "outcome".into(),
            json!({
                "passed": outcome.passed(),
                "max_residual": outcome.max_residual,
                "threshold": outcome.threshold,
                "details": details,
            }),
        );
        emit(Some(path), &to_text(m)?)?;
    }
    if outcome.passed() {
        Ok(())
    } else {
        Err(CliError::Violation(format!("{suite} exceeded its threshold")))
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Invariants { input, triple } => cmd_invariants(cli, input, *triple),
        Command::Classify { input, font_min, seed } => cmd_classify(cli, input, *font_min, *seed),
        Command::Negativity { input } => cmd_negativity(cli, input),
        Command::Fonts { input, qubit } => cmd_fonts(cli, input, *qubit),
        Command::Catalog { name, params, list } => cmd_catalog(cli, name.as_deref(), params, *list),
        Command::Sweep { family, grid } => cmd_sweep(cli, family, grid),
        Command::Check { suite, trials, seed } => cmd_check(cli, suite, *trials, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("negfont: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
