//! Line-oriented circuit files.
//!
//! ```text
//! # comment
//! qubits 2
//! m 8
//! x 0
//! t 1 3
//! cx 0 1
//! cs 0 1 2
//! ```
//!
//! The two header lines are required, in that order. `;` also separates
//! statements, so a whole circuit fits on one line. Exponents outside their
//! canonical range (`[0, m)` for `t`, `[0, m/d)` for `cs`) are reduced and
//! reported as warnings.

use super::{Circuit, Gate};
use crate::group::{GroupError, Modulus};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header `{expected}`")]
    MissingHeader { line: usize, expected: &'static str },
    #[error("line {line}: unknown mnemonic `{word}`")]
    UnknownMnemonic { line: usize, word: String },
    #[error("line {line}: `{mnemonic}` takes {expected} arguments, got {got}")]
    Arity { line: usize, mnemonic: String, expected: usize, got: usize },
    #[error("line {line}: `{token}` is not an integer")]
    BadInteger { line: usize, token: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GroupError },
    #[error("missing header lines")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

/// Parses a circuit, discarding exponent-reduction warnings.
pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    parse_with_warnings(text).map(|(c, _)| c)
}

pub fn parse_with_warnings(text: &str) -> Result<(Circuit, Vec<ParseWarning>), ParseError> {
    let statements = text.lines().enumerate().flat_map(|(i, line)| {
        let code = line.split('#').next().unwrap_or("");
        code.split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(move |s| (i + 1, s))
            .collect::<Vec<_>>()
    });

    let mut n = None;
    let mut circuit: Option<Circuit> = None;
    let mut warnings = Vec::new();

    for (line, stmt) in statements {
        let words: Vec<&str> = stmt.split_whitespace().collect();
        let int = |token: &str| -> Result<i64, ParseError> {
            token
                .parse::<i64>()
                .map_err(|_| ParseError::BadInteger { line, token: token.to_string() })
        };
        let index = |token: &str| -> Result<usize, ParseError> {
            let v = int(token)?;
            usize::try_from(v).map_err(|_| ParseError::BadInteger { line, token: token.to_string() })
        };

        let Some(c) = circuit.as_mut() else {
            // Header section.
            match (n, words.as_slice()) {
                (None, ["qubits", v]) => n = Some(index(v)?),
                (None, _) => return Err(ParseError::MissingHeader { line, expected: "qubits <n>" }),
                (Some(n), ["m", v]) => {
                    let raw = int(v)?;
                    let m = u32::try_from(raw)
                        .map_err(|_| GroupError::InvalidModulus(0))
                        .and_then(Modulus::new)
                        .map_err(|source| ParseError::Invalid { line, source })?;
                    circuit = Some(Circuit::new(n, m).map_err(|source| ParseError::Invalid { line, source })?);
                }
                (Some(_), _) => return Err(ParseError::MissingHeader { line, expected: "m <int>" }),
            }
            continue;
        };

        let m = c.modulus();
        let arity = |expected: usize| -> Result<(), ParseError> {
            if words.len() - 1 != expected {
                Err(ParseError::Arity {
                    line,
                    mnemonic: words[0].to_string(),
                    expected,
                    got: words.len() - 1,
                })
            } else {
                Ok(())
            }
        };
        let mut reduce = |raw: i64, bound: u32, what: &str| -> u32 {
            let reduced = raw.rem_euclid(bound as i64) as u32;
            if raw != reduced as i64 {
                warnings.push(ParseWarning {
                    line,
                    message: format!("{what} exponent {raw} reduced to {reduced}"),
                });
            }
            reduced
        };

        let gate = match words[0] {
            "x" => {
                arity(1)?;
                Gate::X(index(words[1])?)
            }
            "t" => {
                arity(2)?;
                let qubit = index(words[1])?;
                let power = reduce(int(words[2])?, m.get(), "t");
                Gate::T { qubit, power }
            }
            "cx" => {
                arity(2)?;
                Gate::Cx { control: index(words[1])?, target: index(words[2])? }
            }
            "cs" => {
                arity(3)?;
                let (a, b) = (index(words[1])?, index(words[2])?);
                let power = reduce(int(words[3])?, m.cs_order(), "cs");
                Gate::Cs { a, b, power }
            }
            other => return Err(ParseError::UnknownMnemonic { line, word: other.to_string() }),
        };
        c.push(gate).map_err(|source| ParseError::Invalid { line, source })?;
    }

    match circuit {
        Some(c) => Ok((c, warnings)),
        None if n.is_some() => Err(ParseError::MissingHeader { line: 0, expected: "m <int>" }),
        None => Err(ParseError::Empty),
    }
}
