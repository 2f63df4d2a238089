//! The line-oriented morphism spec format.
//!
//! ```text
//! # Thue-Morse
//! alphabet 0 1
//! start 0
//! rule 0 -> 0 1
//! rule 1 -> 1 0
//! code 0 -> a      # optional; letters without a code line map to themselves
//! ```
//!
//! Tokens are separated by whitespace and `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;

use morphic::{
    Alphabet, Coding, Error, MorphicPresentation, Morphism, NonUniformizationResult, Symbol, Word,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown symbol {symbol:?}")]
    UnknownSymbol { line: usize, symbol: String },
    #[error("missing `{0}` line")]
    MissingSection(&'static str),
    #[error("no rule for symbol {0:?}")]
    MissingRule(String),
    #[error("the morphism is not prolongable from the start symbol {0:?}")]
    NotProlongable(String),
    #[error("invalid presentation: {0}")]
    Invalid(Error),
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn parse_error(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse {
        line,
        message: message.into(),
    }
}

fn symbol(line: usize, name: &str) -> Result<Symbol, SpecError> {
    Symbol::new(name).map_err(|e| parse_error(line, e.to_string()))
}

fn declared(alphabet: &Alphabet, line: usize, name: &str) -> Result<Symbol, SpecError> {
    let s = symbol(line, name)?;
    if alphabet.contains(s) {
        Ok(s)
    } else {
        Err(SpecError::UnknownSymbol {
            line,
            symbol: name.to_string(),
        })
    }
}

/// Splits `<lhs> -> <rhs>*`.
fn arrow<'l, 'a>(line: &'l Line<'a>) -> Result<(&'a str, &'l [&'a str]), SpecError> {
    match line.tokens.as_slice() {
        [_, lhs, "->", rhs @ ..] => Ok((lhs, rhs)),
        _ => Err(parse_error(
            line.number,
            format!("expected `{} <symbol> -> ...`", line.tokens[0]),
        )),
    }
}

pub fn parse_spec(text: &str) -> Result<MorphicPresentation, SpecError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line {
            number: i + 1,
            tokens: raw
                .split('#')
                .next()
                .unwrap_or("")
                .split_whitespace()
                .collect(),
        })
        .filter(|l| !l.tokens.is_empty())
        .collect();

    let mut alphabet_line = None;
    let mut start_line = None;
    for line in &lines {
        let slot = match line.tokens[0] {
            "alphabet" => &mut alphabet_line,
            "start" => &mut start_line,
            "rule" | "code" => continue,
            other => {
                return Err(parse_error(
                    line.number,
                    format!("unknown directive {other:?}"),
                ))
            }
        };
        if slot.replace(line).is_some() {
            return Err(parse_error(
                line.number,
                format!("duplicate `{}` line", line.tokens[0]),
            ));
        }
    }

    let alphabet_line = alphabet_line.ok_or(SpecError::MissingSection("alphabet"))?;
    let names = &alphabet_line.tokens[1..];
    if names.is_empty() {
        return Err(parse_error(alphabet_line.number, "empty alphabet"));
    }
    let symbols = names
        .iter()
        .map(|n| symbol(alphabet_line.number, n))
        .collect::<Result<Vec<_>, _>>()?;
    let alphabet =
        Alphabet::new(symbols).map_err(|e| parse_error(alphabet_line.number, e.to_string()))?;

    let start_line = start_line.ok_or(SpecError::MissingSection("start"))?;
    let start = match start_line.tokens.as_slice() {
        [_, name] => declared(&alphabet, start_line.number, name)?,
        _ => return Err(parse_error(start_line.number, "expected `start <symbol>`")),
    };

    let mut rules: HashMap<Symbol, Word> = HashMap::new();
    let mut codes: HashMap<Symbol, Symbol> = HashMap::new();
    for line in &lines {
        match line.tokens[0] {
            "rule" => {
                let (lhs, rhs) = arrow(line)?;
                let lhs = declared(&alphabet, line.number, lhs)?;
                let image = rhs
                    .iter()
                    .map(|n| declared(&alphabet, line.number, n))
                    .collect::<Result<Word, _>>()?;
                if rules.insert(lhs, image).is_some() {
                    return Err(parse_error(line.number, format!("second rule for {lhs}")));
                }
            }
            "code" => {
                let (lhs, rhs) = arrow(line)?;
                let lhs = declared(&alphabet, line.number, lhs)?;
                let [target] = rhs else {
                    return Err(parse_error(
                        line.number,
                        "a code line maps to exactly one symbol",
                    ));
                };
                let target = symbol(line.number, target)?;
                if codes.insert(lhs, target).is_some() {
                    return Err(parse_error(
                        line.number,
                        format!("second code line for {lhs}"),
                    ));
                }
            }
            _ => {}
        }
    }

    let images = alphabet
        .iter()
        .map(|s| {
            rules
                .remove(&s)
                .map(|w| (s, w))
                .ok_or_else(|| SpecError::MissingRule(s.name().to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let morphism = Morphism::endomorphism(alphabet.clone(), images).map_err(SpecError::Invalid)?;
    let coding = Coding::from_pairs(
        &alphabet,
        alphabet
            .iter()
            .map(|s| (s, codes.get(&s).copied().unwrap_or(s))),
    )
    .map_err(SpecError::Invalid)?;
    MorphicPresentation::new(morphism, start, coding).map_err(|e| match e {
        Error::NotProlongable(s) => SpecError::NotProlongable(s.name().to_string()),
        other => SpecError::Invalid(other),
    })
}

/// Writes a presentation in the spec format. `code` lines are written for
/// every letter unless the coding is the identity.
pub fn emit_spec(p: &MorphicPresentation) -> String {
    let mut out = String::new();
    let m = p.morphism();
    writeln!(out, "alphabet {}", m.domain()).unwrap();
    writeln!(out, "start {}", p.start()).unwrap();
    for (s, image) in m.images() {
        if image.is_empty() {
            writeln!(out, "rule {s} ->").unwrap();
        } else {
            writeln!(out, "rule {s} -> {image}").unwrap();
        }
    }
    if !p.coding().is_identity() {
        for s in m.domain().iter() {
            writeln!(out, "code {s} -> {}", p.coding().map(s).expect("total")).unwrap();
        }
    }
    out
}

/// Comment lines describing what the construction chose.
pub fn trace_lines(r: &NonUniformizationResult, input_letters: usize) -> Vec<String> {
    let t = &r.trace;
    vec![
        format!(
            "fresh start: {}",
            t.fresh_start.map_or("none".to_string(), |s| s.to_string())
        ),
        format!(
            "power applied: {} (expanding exponent {}, squarings {})",
            t.power_applied, t.expanding_exponent, t.squarings
        ),
        format!("b: {}", t.b),
        format!("c: {}", t.c),
        format!("b': {}", t.b_prime),
        format!("c': {}", t.c_prime),
        format!("|w1|: {}", t.w1.len()),
        format!("|w2|: {}", t.w2.len()),
        format!("|z|: {}", t.z.len()),
        format!("|t|: {}", t.t.len()),
        format!(
            "alphabet size: {input_letters} -> {}",
            r.gamma_prime.domain().len()
        ),
    ]
}

/// The result's presentation in the spec format, preceded by its trace as
/// comments.
pub fn emit_result(r: &NonUniformizationResult, input_letters: usize) -> Result<String, Error> {
    let mut out = String::new();
    for line in trace_lines(r, input_letters) {
        writeln!(out, "# {line}").unwrap();
    }
    out.push_str(&emit_spec(&r.presentation()?));
    Ok(out)
}
