//! Matrix file parsing.
//!
//! Two formats are accepted, sniffed by the first non-whitespace byte:
//!
//! - plain text: the order `n` on the first line, then `n` lines of `n`
//!   whitespace-separated entries (integers, exact decimals, or `p/q`);
//! - JSON: `{"n": 3, "entries": [[...], ...]}` with entries given as
//!   strings or numeric literals.
//!
//! Decimal literals are converted to exact base-10 rationals; binary
//! floating point never enters the pipeline (JSON numbers are read with
//! arbitrary precision for the same reason). Malformed input is rejected
//! with line/column diagnostics.

use std::fmt;

use mband_core::{Rational, RationalMatrix};

#[derive(Debug)]
pub struct ParseDiag {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseDiag {
    fn new(line: Option<usize>, column: Option<usize>, message: impl Into<String>) -> Self {
        ParseDiag {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseDiag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            _ => write!(f, "{}", self.message),
        }
    }
}

pub fn parse_matrix(src: &str) -> Result<RationalMatrix, ParseDiag> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

fn tokens_with_cols(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_whitespace()
        .map(move |tok| (tok.as_ptr() as usize - base, tok))
}

fn parse_text(src: &str) -> Result<RationalMatrix, ParseDiag> {
    let mut lines = src
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| ParseDiag::new(Some(1), None, "expected the matrix order n"))?;
    let mut header_tokens = tokens_with_cols(header);
    let (col, tok) = header_tokens.next().expect("line is nonempty");
    let n: usize = tok.parse().map_err(|_| {
        ParseDiag::new(
            Some(header_no + 1),
            Some(col + 1),
            format!("invalid matrix order {tok:?}"),
        )
    })?;
    if n == 0 {
        return Err(ParseDiag::new(
            Some(header_no + 1),
            Some(col + 1),
            "matrix order must be positive",
        ));
    }
    if let Some((col, tok)) = header_tokens.next() {
        return Err(ParseDiag::new(
            Some(header_no + 1),
            Some(col + 1),
            format!("unexpected token {tok:?} after the matrix order"),
        ));
    }

    let mut entries = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| {
            ParseDiag::new(None, None, format!("expected {n} matrix rows, found {row}"))
        })?;
        let mut count = 0;
        for (col, tok) in tokens_with_cols(line) {
            if count == n {
                return Err(ParseDiag::new(
                    Some(line_no + 1),
                    Some(col + 1),
                    format!("row {} has more than {n} entries", row + 1),
                ));
            }
            let value: Rational = tok.parse().map_err(|e| {
                ParseDiag::new(Some(line_no + 1), Some(col + 1), format!("{e}"))
            })?;
            entries.push(value);
            count += 1;
        }
        if count != n {
            return Err(ParseDiag::new(
                Some(line_no + 1),
                None,
                format!("row {} has {count} entries, expected {n}", row + 1),
            ));
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(ParseDiag::new(
            Some(line_no + 1),
            None,
            format!("unexpected content after {n} matrix rows"),
        ));
    }
    RationalMatrix::new(n, entries).map_err(|e| ParseDiag::new(None, None, format!("{e}")))
}

fn parse_json(src: &str) -> Result<RationalMatrix, ParseDiag> {
    let value: serde_json::Value = serde_json::from_str(src)
        .map_err(|e| ParseDiag::new(Some(e.line()), Some(e.column()), e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseDiag::new(None, None, "expected a JSON object"))?;
    let n = obj
        .get("n")
        .and_then(serde_json::Value::as_u64)
        .ok_or_else(|| ParseDiag::new(None, None, "missing or invalid \"n\""))? as usize;
    if n == 0 {
        return Err(ParseDiag::new(None, None, "matrix order must be positive"));
    }
    let rows = obj
        .get("entries")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| ParseDiag::new(None, None, "missing or invalid \"entries\""))?;
    if rows.len() != n {
        return Err(ParseDiag::new(
            None,
            None,
            format!("\"entries\" has {} rows, expected {n}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            ParseDiag::new(None, None, format!("row {} is not an array", i + 1))
        })?;
        if row.len() != n {
            return Err(ParseDiag::new(
                None,
                None,
                format!("row {} has {} entries, expected {n}", i + 1, row.len()),
            ));
        }
        for (j, cell) in row.iter().enumerate() {
            let literal = match cell {
                serde_json::Value::String(s) => s.clone(),
                // arbitrary-precision numbers keep the exact source literal
                serde_json::Value::Number(num) => num.to_string(),
                other => {
                    return Err(ParseDiag::new(
                        None,
                        None,
                        format!("entry ({},{}) is not a number or string: {other}", i + 1, j + 1),
                    ))
                }
            };
            let value: Rational = literal.parse().map_err(|e| {
                ParseDiag::new(None, None, format!("entry ({},{}): {e}", i + 1, j + 1))
            })?;
            entries.push(value);
        }
    }
    RationalMatrix::new(n, entries).map_err(|e| ParseDiag::new(None, None, format!("{e}")))
}
