//! Amplitude-list state files.
//!
//! One amplitude per line as `bitstring re im`, with `im` optional. The
//! leftmost bit is qubit 1. Blank lines and `#` comments are ignored, omitted
//! basis states are zero and the qubit count is the bitstring length.
//!
//! ```text
//! # GHZ4
//! 0000 0.7071067811865476 0
//! 1111 0.7071067811865476 0
//! ```

use std::fmt::Write as _;
use std::path::Path;

use negfont::state::{index_of, label};
use negfont::{Amplitude, PureState};

use crate::error::{CliError, CliResult};

pub fn parse(text: &str, path: &str) -> CliResult<PureState> {
    let err = |line: usize, msg: String| CliError::Parse { path: path.to_string(), line, msg };
    let mut n = None;
    let mut entries: Vec<(usize, usize, Amplitude)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(line_no, format!("expected `bitstring re [im]`, found {} fields", fields.len())));
        }
        let bits = fields[0];
        if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(err(line_no, format!("malformed bitstring `{bits}`")));
        }
        match n {
            None => n = Some(bits.len()),
            Some(m) if m != bits.len() => {
                return Err(err(line_no, format!("bitstring `{bits}` has length {}, earlier lines have {m}", bits.len())))
            }
            _ => {}
        }
        let number = |s: &str| -> CliResult<f64> {
            s.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| err(line_no, format!("bad number `{s}`")))
        };
        let re = number(fields[1])?;
        let im = fields.get(2).map_or(Ok(0.0), |s| number(s))?;
        let bit_vec: Vec<u8> = bits.bytes().map(|b| b - b'0').collect();
        let idx = index_of(&bit_vec);
        if let Some((_, first, _)) = entries.iter().find(|(i, _, _)| *i == idx) {
            return Err(err(line_no, format!("duplicate basis state `{bits}` (first on line {first})")));
        }
        entries.push((idx, line_no, Amplitude::new(re, im)));
    }
    let n = n.ok_or_else(|| err(0, "no amplitudes".into()))?;
    if n > 6 {
        return Err(negfont::Error::UnsupportedQubitCount(n).into());
    }
    let mut amps = vec![Amplitude::new(0.0, 0.0); 1 << n];
    for (idx, _, a) in entries {
        amps[idx] = a;
    }
    match PureState::new(n, amps) {
        Err(negfont::Error::ZeroVector) => Err(err(0, "all amplitudes are zero".into())),
        other => Ok(other?),
    }
}

pub fn read(path: &Path) -> CliResult<PureState> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text, &path.display().to_string())
}

/// Nonzero amplitudes in index order, numbers in shortest round-trip form.
pub fn render(s: &PureState, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        let _ = writeln!(out, "# {h}");
    }
    let n = s.n_qubits();
    for (idx, a) in s.amps().iter().enumerate() {
        if a.re != 0.0 || a.im != 0.0 {
            let _ = writeln!(out, "{} {:?} {:?}", label(idx, n), a.re, a.im);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let a = Amplitude::new(0.1f64.sqrt(), -1.0 / 3.0);
        let b = Amplitude::new(1e-20, 0.0);
        let s = PureState::from_terms(3, &[("010", a), ("111", b)]).unwrap();
        let back = parse(&render(&s, &["test".into()]), "mem").unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse("# header\n00 1 0\n0x 1 0\n", "f").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e}");
        let e = parse("00 1\n011 1\n", "f").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }));
        let e = parse("00 1\n00 2\n", "f").unwrap_err();
        assert!(e.to_string().contains("duplicate"));
        assert!(matches!(parse("00 0 0\n", "f").unwrap_err(), CliError::Parse { .. }));
        assert!(matches!(parse("", "f").unwrap_err(), CliError::Parse { .. }));
    }

    #[test]
    fn arity_errors_map_to_exit_four() {
        assert_eq!(parse("0 1\n", "f").unwrap_err().exit_code(), 4);
        assert_eq!(parse("0000000 1\n", "f").unwrap_err().exit_code(), 4);
    }
}
