//! Plain-text numeric tables: one row per line, fields separated by
//! whitespace or commas, `#` starts a comment.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Rows of exactly `fields` finite numbers.
pub fn parse_rows(text: &str, fields: usize) -> Result<Vec<Vec<f64>>, ParseError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if parts.len() != fields {
            return Err(ParseError {
                line: i + 1,
                message: format!("expected {fields} fields, found {}", parts.len()),
            });
        }
        let mut row = Vec::with_capacity(fields);
        for p in parts {
            let v: f64 = p.parse().map_err(|_| ParseError {
                line: i + 1,
                message: format!("'{p}' is not a number"),
            })?;
            if !v.is_finite() {
                return Err(ParseError { line: i + 1, message: format!("'{p}' is not finite") });
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}
