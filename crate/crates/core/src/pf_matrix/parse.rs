//! Text format for transition matrices.
//!
//! ```text
//! 3 3
//! 0 1 0
//! 0 0 1
//! 1 1 0
//! real: 1 2
//! surface: 2 1
//! ```
//!
//! Line one holds `rows cols`, then one line per row of whitespace-separated
//! nonnegative decimal integers. The optional `real:` line lists 0-based real
//! branch indices, the optional `surface:` line gives `genus punctures`.
//! Blank lines and lines starting with `#` are ignored.

use num_bigint::BigUint;
use thiserror::Error;

use super::IntMatrix;
use crate::surface::SurfaceSig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: IntMatrix,
    pub real: Option<Vec<usize>>,
    pub surface: Option<SurfaceSig>,
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<Vec<T>, ParseError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| err(line, format!("{what}: {t:?} is not a nonnegative integer")))
        })
        .collect()
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `rows cols` header"))?;
    let dims: Vec<usize> = numbers(hline, header, "header")?;
    let [rows, cols] = dims[..] else {
        return Err(err(hline, "header must be `rows cols`"));
    };
    if rows == 0 || cols == 0 {
        return Err(err(hline, "matrix dimensions must be positive"));
    }

    let mut entries = Vec::with_capacity(rows * cols);
    let mut real = None;
    let mut surface = None;
    let mut row_count = 0;
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        if let Some(rest) = line.strip_prefix("real:") {
            if real.is_some() {
                return Err(err(ln, "duplicate `real:` line"));
            }
            real = Some(numbers::<usize>(ln, rest, "real index")?);
        } else if let Some(rest) = line.strip_prefix("surface:") {
            if surface.is_some() {
                return Err(err(ln, "duplicate `surface:` line"));
            }
            let v: Vec<u32> = numbers(ln, rest, "surface")?;
            let [g, n] = v[..] else {
                return Err(err(ln, "surface line must be `surface: genus punctures`"));
            };
            surface = Some(SurfaceSig::new(g, n));
        } else {
            if real.is_some() || surface.is_some() {
                return Err(err(ln, "matrix rows must precede `real:` and `surface:`"));
            }
            if row_count == rows {
                return Err(err(ln, format!("expected {rows} rows, found more")));
            }
            let vals: Vec<BigUint> = numbers(ln, line, "entry")?;
            if vals.len() != cols {
                return Err(err(ln, format!("row has {} entries, expected {cols}", vals.len())));
            }
            entries.extend(vals);
            row_count += 1;
        }
    }
    if row_count != rows {
        return Err(err(
            last_line + 1,
            format!("expected {rows} rows, found {row_count}"),
        ));
    }
    if let Some(r) = &real {
        if let Some(&bad) = r.iter().find(|&&i| i >= rows) {
            return Err(err(last_line, format!("real index {bad} out of range")));
        }
    }
    let matrix = IntMatrix::new(rows, cols, entries).map_err(|e| err(hline, e.to_string()))?;
    Ok(MatrixFile {
        matrix,
        real,
        surface,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let f = parse_matrix_file("# golden\n2 2\n0 1\n1 1\n\nreal: 0 1\nsurface: 2 0\n").unwrap();
        assert_eq!(f.matrix, IntMatrix::from_rows(&[[0u64, 1], [1, 1]]).unwrap());
        assert_eq!(f.real, Some(vec![0, 1]));
        assert_eq!(f.surface, Some(SurfaceSig::closed(2)));
    }

    #[test]
    fn big_entries() {
        let f = parse_matrix_file("1 1\n123456789012345678901234567890\n").unwrap();
        assert_eq!(f.matrix.get(0, 0).to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn missing_row_names_line() {
        let e = parse_matrix_file("3 3\n0 1 0\n0 0 1\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("expected 3 rows"));
    }

    #[test]
    fn bad_tokens() {
        assert_eq!(parse_matrix_file("2 2\n0 1\n1 -1\n").unwrap_err().line, 3);
        assert_eq!(parse_matrix_file("2 2\n0 1\n1\n").unwrap_err().line, 3);
        assert_eq!(parse_matrix_file("2\n").unwrap_err().line, 1);
        assert_eq!(parse_matrix_file("").unwrap_err().line, 1);
        assert_eq!(parse_matrix_file("1 1\n1\nsurface: 2\n").unwrap_err().line, 3);
        assert_eq!(parse_matrix_file("1 1\n1\nreal: 4\n").unwrap_err().line, 3);
    }
}
