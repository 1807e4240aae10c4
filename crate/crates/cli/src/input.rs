//! Matrix, margin and vector parsing.
//!
//! A matrix file is a header line `d n` followed by `d` lines of `n`
//! integers. A margin file holds three such blocks (u, v, w) separated by
//! blank lines. Lines starting with `#` are ignored.

use std::fs;
use std::path::{Path, PathBuf};

use monoid_holes::linalg::{IntMatrix, IntVector};
use monoid_holes::transport::MarginTriple;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Syntax { path: PathBuf, line: usize, message: String },
    #[error("{path}: {message}")]
    Shape { path: PathBuf, message: String },
    #[error("invalid vector: {0}")]
    Vector(String),
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn parse_ints(path: &Path, line: &Line<'_>) -> Result<Vec<BigInt>, InputError> {
    line.text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<BigInt>().map_err(|_| InputError::Syntax {
                path: path.to_path_buf(),
                line: line.number,
                message: format!("`{tok}` is not an integer"),
            })
        })
        .collect()
}

fn parse_block(path: &Path, lines: &[Line<'_>]) -> Result<IntMatrix, InputError> {
    let syntax = |line: usize, message: String| InputError::Syntax {
        path: path.to_path_buf(),
        line,
        message,
    };
    let (header, body) = lines.split_first().ok_or_else(|| InputError::Shape {
        path: path.to_path_buf(),
        message: "empty matrix block".to_string(),
    })?;
    let dims = parse_ints(path, header)?;
    let [d, n] = dims.as_slice() else {
        return Err(syntax(header.number, "header must be `d n`".to_string()));
    };
    let to_usize = |x: &BigInt| usize::try_from(x).ok().filter(|&v| v > 0);
    let (Some(d), Some(n)) = (to_usize(d), to_usize(n)) else {
        return Err(syntax(header.number, "matrix dimensions must be positive".to_string()));
    };
    if body.len() != d {
        return Err(InputError::Shape {
            path: path.to_path_buf(),
            message: format!("header announces {d} rows but {} follow", body.len()),
        });
    }
    let mut rows = Vec::with_capacity(d);
    for line in body {
        let row = parse_ints(path, line)?;
        if row.len() != n {
            return Err(syntax(line.number, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    IntMatrix::from_rows(&rows).map_err(|e| InputError::Shape {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Splits the file into blocks of non-blank, non-comment lines.
fn blocks(text: &str) -> Vec<Vec<Line<'_>>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let text = raw.trim();
        if text.starts_with('#') {
            continue;
        }
        if text.is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        current.push(Line { number: i + 1, text });
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_matrix(path: &Path, text: &str) -> Result<IntMatrix, InputError> {
    let lines: Vec<Line<'_>> = blocks(text).into_iter().flatten().collect();
    parse_block(path, &lines)
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix, InputError> {
    parse_matrix(path, &read(path)?)
}

pub fn parse_margins(path: &Path, text: &str) -> Result<MarginTriple, InputError> {
    let blocks = blocks(text);
    let [u, v, w] = blocks.as_slice() else {
        return Err(InputError::Shape {
            path: path.to_path_buf(),
            message: format!("expected three margin blocks (u, v, w), found {}", blocks.len()),
        });
    };
    Ok(MarginTriple {
        u: parse_block(path, u)?,
        v: parse_block(path, v)?,
        w: parse_block(path, w)?,
    })
}

pub fn read_margins(path: &Path) -> Result<MarginTriple, InputError> {
    parse_margins(path, &read(path)?)
}

/// Integers separated by whitespace or commas, optionally wrapped in brackets or parentheses.
pub fn parse_vector(words: &[String]) -> Result<IntVector, InputError> {
    let joined = words.join(" ");
    let trimmed = joined.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let entries = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigInt>().map_err(|_| InputError::Vector(format!("`{t}` is not an integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.is_empty() {
        return Err(InputError::Vector("no entries".to_string()));
    }
    Ok(IntVector::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("test.mat")
    }

    #[test]
    fn matrix_round_trip() {
        let m = parse_matrix(p(), "2 4\n1 1 1 1\n0 2 3 4\n").unwrap();
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[1, 1, 1, 1], &[0, 2, 3, 4]]));
        let big = parse_matrix(p(), "# comment\n1 1\n123456789012345678901234567890\n").unwrap();
        assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(parse_matrix(p(), "2 2\n1 2\n"), Err(InputError::Shape { .. })));
        assert!(matches!(parse_matrix(p(), "1 2\n1 x\n"), Err(InputError::Syntax { line: 2, .. })));
        assert!(matches!(parse_matrix(p(), "1 2\n1 2 3\n"), Err(InputError::Syntax { line: 2, .. })));
        assert!(matches!(parse_matrix(p(), "0 2\n"), Err(InputError::Syntax { line: 1, .. })));
        assert!(matches!(parse_matrix(p(), ""), Err(InputError::Shape { .. })));
    }

    #[test]
    fn margins() {
        let m = parse_margins(p(), "1 1\n5\n\n1 1\n5\n\n1 1\n5\n").unwrap();
        assert_eq!(m.grand_totals(), [5.into(), 5.into(), 5.into()]);
        assert!(parse_margins(p(), "1 1\n5\n").is_err());
    }

    #[test]
    fn vectors() {
        let v = |s: &[&str]| parse_vector(&s.iter().map(|x| x.to_string()).collect::<Vec<_>>());
        assert_eq!(v(&["1", "1"]).unwrap(), IntVector::from_i64s(&[1, 1]));
        assert_eq!(v(&["(1,", "-2)"]).unwrap(), IntVector::from_i64s(&[1, -2]));
        assert_eq!(v(&["[3,4]"]).unwrap(), IntVector::from_i64s(&[3, 4]));
        assert!(v(&["a"]).is_err());
        assert!(v(&[]).is_err());
    }
}
