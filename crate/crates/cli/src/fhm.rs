//! FHM1, a plain-text sparse matrix format with exact rational entries.
//!
//! ```text
//! FHM1 <rows> <cols> <nnz> <tag>
//! <row> <col> <num>/<den>        (nnz lines, 0-based, sorted by (col, row))
//! ```
//!
//! Denominators are positive and fractions are in lowest terms, so a matrix
//! has exactly one encoding.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use foulkes_core::{Rational, SparseExactMatrix};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FhmError {
    /// 1-based line number; 0 for problems found after reading everything.
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FhmError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FHM1 line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FhmError {}

fn err(line: usize, message: impl Into<String>) -> FhmError {
    FhmError { line, message: message.into() }
}

/// The full FHM1 text of `m`.
pub fn to_string(m: &SparseExactMatrix, tag: &str) -> String {
    assert!(!tag.is_empty() && !tag.contains(char::is_whitespace), "tag must be one token");
    let mut out = String::new();
    writeln!(out, "FHM1 {} {} {} {tag}", m.rows(), m.cols(), m.nnz()).unwrap();
    for (c, col) in m.columns().enumerate() {
        for (r, x) in col {
            writeln!(out, "{r} {c} {}/{}", x.numer(), x.denom()).unwrap();
        }
    }
    out
}

pub fn write(m: &SparseExactMatrix, tag: &str, w: &mut impl Write) -> std::io::Result<()> {
    w.write_all(to_string(m, tag).as_bytes())
}

/// Parses FHM1 text, returning the matrix and its tag.
pub fn read(r: impl BufRead) -> Result<(SparseExactMatrix, String), FhmError> {
    let mut lines = r.lines().enumerate();
    let header = match lines.next() {
        Some((_, Ok(h))) => h,
        Some((_, Err(e))) => return Err(err(1, e.to_string())),
        None => return Err(err(1, "empty input")),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "FHM1" {
        return Err(err(1, "expected `FHM1 <rows> <cols> <nnz> <tag>`"));
    }
    let num = |s: &str, what: &str| s.parse::<usize>().map_err(|_| err(1, format!("bad {what} {s:?}")));
    let (rows, cols, nnz) = (num(fields[1], "row count")?, num(fields[2], "column count")?, num(fields[3], "nnz")?);
    let tag = fields[4].to_string();

    let mut columns: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); cols];
    let mut last: Option<(usize, usize)> = None;
    let mut seen = 0;
    for (k, line) in lines {
        let ln = k + 1;
        let line = line.map_err(|e| err(ln, e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        seen += 1;
        if seen > nnz {
            return Err(err(ln, format!("more than the {nnz} entries announced in the header")));
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err(ln, "expected `<row> <col> <num>/<den>`"));
        }
        let r: usize = parts[0].parse().map_err(|_| err(ln, format!("bad row {:?}", parts[0])))?;
        let c: usize = parts[1].parse().map_err(|_| err(ln, format!("bad column {:?}", parts[1])))?;
        if r >= rows || c >= cols {
            return Err(err(ln, format!("entry ({r}, {c}) outside {rows}x{cols}")));
        }
        if last.is_some_and(|(lr, lc)| (lc, lr) >= (c, r)) {
            return Err(err(ln, "entries must be strictly increasing in (col, row)"));
        }
        last = Some((r, c));
        let (n, d) = parts[2].split_once('/').ok_or_else(|| err(ln, "entry must be written num/den"))?;
        let n: BigInt = n.parse().map_err(|_| err(ln, format!("bad numerator {n:?}")))?;
        let d: BigInt = d.parse().map_err(|_| err(ln, format!("bad denominator {d:?}")))?;
        if d <= BigInt::from(0) {
            return Err(err(ln, "denominator must be positive"));
        }
        let x = Rational::from_bigints(n.clone(), d.clone());
        if x.is_zero() || x.numer() != n || x.denom() != d {
            return Err(err(ln, "entry must be a nonzero fraction in lowest terms"));
        }
        columns[c].push((r as u32, x));
    }
    if seen != nnz {
        return Err(err(0, format!("header announces {nnz} entries, found {seen}")));
    }
    let m = SparseExactMatrix::from_columns(rows, columns).map_err(|e| err(0, e.to_string()))?;
    Ok((m, tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_encoding() {
        let text = to_string(&SparseExactMatrix::identity(1), "psi");
        assert_eq!(text, "FHM1 1 1 1 psi\n0 0 1/1\n");
    }

    #[test]
    fn round_trip() {
        let m = SparseExactMatrix::from_columns(
            3,
            vec![vec![(0, Rational::new(-2, 3)), (2, Rational::new(5, 1))], vec![], vec![(1, Rational::new(1, 7))]],
        )
        .unwrap();
        let text = to_string(&m, "test");
        let (back, tag) = read(text.as_bytes()).unwrap();
        assert_eq!((back.clone(), tag.as_str()), (m, "test"));
        assert_eq!(to_string(&back, "test"), text);
    }

    #[test]
    fn rejections_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("FHM2 1 1 1 psi\n0 0 1/1\n", 1),
            ("FHM1 1 1 2 psi\n0 0 1/1\n", 0),
            ("FHM1 1 1 1 psi\n0 0 1/1\n0 0 1/1\n", 3),
            ("FHM1 2 2 2 psi\n1 0 1/1\n0 0 1/1\n", 3),
            ("FHM1 1 1 1 psi\n0 1 1/1\n", 2),
            ("FHM1 1 1 1 psi\n0 0 2/4\n", 2),
            ("FHM1 1 1 1 psi\n0 0 1/-1\n", 2),
            ("FHM1 1 1 1 psi\n0 0 0/1\n", 2),
            ("FHM1 1 1 1 psi\n0 0 1\n", 2),
            ("FHM1 1 1 1 psi\nx 0 1/1\n", 2),
        ];
        for (text, line) in cases {
            let e = read(text.as_bytes()).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }
}
