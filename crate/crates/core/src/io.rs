//! Text formats shared by the CLI: sequences, polynomials and hedgehogs.
//!
//! A sequence file is either newline-delimited exact numbers or a JSON array
//! of decimal strings. Integers are the norm; `p/q` is accepted for
//! rational-valued sequences. Floats are rejected.

use num_complex::Complex64;

use crate::analytic::Hedgehog;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, rat_to_string};
use crate::poly::IntPolynomial;
use crate::sequences::ExactSequence;

pub fn parse_sequence(text: &str) -> Result<ExactSequence> {
    let trimmed = text.trim_start();
    let terms = if trimmed.starts_with('[') {
        let items: Vec<String> = serde_json::from_str(trimmed)
            .map_err(|e| Error::input(format!("sequence JSON must be an array of decimal strings: {e}")))?;
        items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?
    };
    ExactSequence::from_rationals(terms)
}

/// JSON array of decimal-string coefficients, lowest degree first.
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    serde_json::from_str(text.trim()).map_err(|e| Error::input(format!("invalid polynomial JSON: {e}")))
}

/// JSON array of `[re, im]` pairs.
pub fn parse_hedgehog(text: &str) -> Result<Hedgehog> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text.trim())
        .map_err(|e| Error::input(format!("hedgehog JSON must be an array of [re, im] pairs: {e}")))?;
    Hedgehog::new(pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
}

pub fn sequence_lines(seq: &ExactSequence) -> String {
    let mut out = String::new();
    for t in seq.terms() {
        out.push_str(&rat_to_string(t));
        out.push('\n');
    }
    out
}

pub fn sequence_json(seq: &ExactSequence) -> String {
    let items: Vec<String> = seq.terms().iter().map(rat_to_string).collect();
    serde_json::to_string(&items).expect("strings always serialize")
}
