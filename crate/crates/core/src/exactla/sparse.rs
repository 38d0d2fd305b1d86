use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::Rational;
use crate::Error;

/// Column-major sparse matrix with exact rational entries.
///
/// Each column holds `(row, value)` pairs sorted by row, with no duplicates
/// and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseExactMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, Rational)>>,
}

/// Sparse vector with exact entries, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVector {
    pub len: usize,
    pub entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn zero(len: usize) -> Self {
        SparseVector { len, entries: Vec::new() }
    }

    /// Builds a vector from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(len: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, v) in entries {
            assert!(i < len, "index {i} out of range {len}");
            *acc.entry(i).or_default() += &v;
        }
        SparseVector {
            len,
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scale(&self, s: &Rational) -> SparseVector {
        if s.is_zero() {
            return SparseVector::zero(self.len);
        }
        SparseVector {
            len: self.len,
            entries: self.entries.iter().map(|(i, v)| (*i, v * s)).collect(),
        }
    }

    /// Returns `c` with `self == c * other`, if the two are proportional
    /// and `other` is nonzero.
    pub fn ratio_to(&self, other: &SparseVector) -> Option<Rational> {
        if self.len != other.len || other.is_zero() || self.nnz() != other.nnz() {
            return None;
        }
        let c = &self.entries[0].1 / &other.entries[0].1;
        let same = self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|((i, x), (j, y))| i == j && *x == &c * y);
        same.then_some(c)
    }
}

impl SparseExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseExactMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (j, col) in m.columns.iter_mut().enumerate() {
            col.push((j as u32, Rational::one()));
        }
        m
    }

    /// Assembles a matrix from `(row, col, value)` triplets in any order.
    /// Duplicate positions are summed; zeros are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, Error> {
        let mut buckets: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::InvalidArgument(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            buckets[c].push((r as u32, v));
        }
        let columns = buckets.into_iter().map(normalize_column).collect();
        Ok(SparseExactMatrix { rows, cols, columns })
    }

    /// Builds a matrix from per-column entry lists (any order within a column).
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, Rational)>>) -> Result<Self, Error> {
        let cols = columns.len();
        for col in &columns {
            if let Some((r, _)) = col.iter().find(|(r, _)| *r as usize >= rows) {
                return Err(Error::InvalidArgument(format!(
                    "row index {r} outside {rows} rows"
                )));
            }
        }
        let columns = columns.into_iter().map(normalize_column).collect();
        Ok(SparseExactMatrix { rows, cols, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, Rational)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[(u32, Rational)]> {
        self.columns.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.columns[c].binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Entries as `(row, col, value)` in `(col, row)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    pub fn column_vector(&self, j: usize) -> SparseVector {
        SparseVector {
            len: self.rows,
            entries: self.columns[j].iter().map(|(r, v)| (*r as usize, v.clone())).collect(),
        }
    }

    pub fn transpose(&self) -> SparseExactMatrix {
        let mut out: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            out[r].push((c as u32, v.clone()));
        }
        SparseExactMatrix { rows: self.cols, cols: self.rows, columns: out }
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector, Error> {
        if v.len != self.cols {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} applied to a matrix with {} columns",
                v.len, self.cols
            )));
        }
        let terms = v.entries.iter().flat_map(|(j, x)| {
            self.columns[*j].iter().map(move |(r, a)| (*r as usize, a * x))
        });
        Ok(SparseVector::from_entries(self.rows, terms))
    }

    /// Product `self * rhs`.
    pub fn matmul(&self, rhs: &SparseExactMatrix) -> Result<SparseExactMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut columns = Vec::with_capacity(rhs.cols);
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for col in &rhs.columns {
            acc.clear();
            for (k, b) in col {
                for (r, a) in &self.columns[*k as usize] {
                    *acc.entry(*r).or_default() += &(a * b);
                }
            }
            columns.push(
                std::mem::take(&mut acc)
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Ok(SparseExactMatrix { rows: self.rows, cols: rhs.cols, columns })
    }

    pub fn scale(&self, s: &Rational) -> SparseExactMatrix {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, v * s)).collect())
            .collect();
        SparseExactMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// Selects rows and columns by index, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseExactMatrix {
        let mut row_pos = vec![u32::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_pos[old] = new as u32;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut col: Vec<(u32, Rational)> = self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_pos[*r as usize] != u32::MAX)
                    .map(|(r, v)| (row_pos[*r as usize], v.clone()))
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        SparseExactMatrix { rows: rows.len(), cols: cols.len(), columns }
    }

    /// Multiplies each column by the lcm of its denominators, giving an
    /// integer matrix with the same rank and kernel support.
    pub fn integer_columns(&self) -> Vec<Vec<(u32, BigInt)>> {
        self.columns
            .iter()
            .map(|col| {
                let lcm = col.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(&v.denom()));
                col.iter()
                    .map(|(r, v)| (*r, v.numer() * (&lcm / v.denom())))
                    .collect()
            })
            .collect()
    }

    /// Row indices with at least one nonzero entry, sorted.
    pub fn row_support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.rows];
        for (r, _, _) in self.entries() {
            seen[r] = true;
        }
        (0..self.rows).filter(|&r| seen[r]).collect()
    }

    /// Dense copy, row-major. Intended for small matrices only.
    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }
}

fn normalize_column(mut col: Vec<(u32, Rational)>) -> Vec<(u32, Rational)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, Rational)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += &v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseExactMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, q(1)), (0, 0, q(2)), (1, 1, q(1)), (1, 1, q(-1))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(0, 0), q(3));
        assert!(SparseExactMatrix::from_triplets(1, 1, vec![(1, 0, q(1))]).is_err());
    }

    #[test]
    fn matmul_small() {
        // [[1,2],[0,1]] * [[1,0],[3,1]] = [[7,2],[3,1]]
        let a = SparseExactMatrix::from_triplets(2, 2, vec![(0, 0, q(1)), (0, 1, q(2)), (1, 1, q(1))]).unwrap();
        let b = SparseExactMatrix::from_triplets(2, 2, vec![(0, 0, q(1)), (1, 0, q(3)), (1, 1, q(1))]).unwrap();
        let c = a.matmul(&b).unwrap();
        assert_eq!(c.to_dense(), vec![vec![q(7), q(2)], vec![q(3), q(1)]]);
        assert_eq!(c.transpose().transpose(), c);
    }

    #[test]
    fn integer_columns_clear_denominators() {
        let m = SparseExactMatrix::from_triplets(
            2,
            1,
            vec![(0, 0, Rational::new(1, 2)), (1, 0, Rational::new(1, 3))],
        )
        .unwrap();
        let cols = m.integer_columns();
        assert_eq!(cols[0], vec![(0, BigInt::from(3)), (1, BigInt::from(2))]);
    }

    #[test]
    fn proportional_vectors() {
        let v = SparseVector::from_entries(3, vec![(0, q(2)), (2, q(4))]);
        let w = SparseVector::from_entries(3, vec![(0, q(1)), (2, q(2))]);
        assert_eq!(v.ratio_to(&w), Some(q(2)));
        let u = SparseVector::from_entries(3, vec![(0, q(1)), (2, q(3))]);
        assert_eq!(v.ratio_to(&u), None);
    }
}
