//! The two factors of `psi_{a x b}` for `a < b`, with `B = b - 1`:
//! the right factor `phi_{1,b} o ... o phi_{a,b}` turns one `E_i` of each
//! kind into `F_b`, and the left factor applies the remaining operators
//! `phi_{i,j}`, `j <= B`.

use std::collections::BTreeMap;

use super::psi::{check_shape, to_column, PsiMatrix};
use crate::combinatorics::BlockSetPartition;
use crate::exactla::{Rational, SparseExactMatrix};
use crate::tensorspace::{Letter, OrbitSumBasis, WordVector};
use crate::{Error, DEFAULT_PSI_LIMIT};

fn check_factor_shape(a: usize, b: usize) -> Result<(), Error> {
    check_shape(a, b, DEFAULT_PSI_LIMIT)?;
    if a >= b {
        return Err(Error::InvalidArgument(format!("the factorization needs a < b, got {a}x{b}")));
    }
    Ok(())
}

/// Operators of the right factor, leftmost first.
pub fn right_chain(a: usize, b: usize) -> Vec<(usize, usize)> {
    (1..=a).map(|i| (i, b)).collect()
}

/// Operators of the left factor, leftmost first.
pub fn left_chain(a: usize, b: usize) -> Vec<(usize, usize)> {
    (1..=a).flat_map(|i| (1..b).map(move |j| (i, j))).collect()
}

/// `S_a` orbit sums of the `(a x B, (0^B, a))` weight space: `a` positions
/// carry `F_b`, the rest split into `a` blocks of size `B` carrying `E_1..E_a`.
pub fn middle_basis(a: usize, b: usize) -> Result<OrbitSumBasis, Error> {
    let free = (1..=a).map(|i| Letter::E(i as u8)).collect();
    OrbitSumBasis::pointed(free, Letter::F(b as u8), a, b - 1)
}

/// `S_B` orbit sums of the `(empty, b x a)` weight space with `F_b` held
/// fixed: `a` positions carry `F_b`, the rest split into `B` blocks of size
/// `a` carrying `F_1..F_B`.
///
/// The left factor needs this finer basis: the image of a single middle
/// orbit sum keeps `F_b` on its own positions and so is only `S_B`-invariant.
/// Only on the image of the right factor does the left factor produce
/// `S_b`-invariant vectors.
pub fn left_codomain_basis(a: usize, b: usize) -> Result<OrbitSumBasis, Error> {
    let free = (1..b).map(|j| Letter::F(j as u8)).collect();
    OrbitSumBasis::pointed(free, Letter::F(b as u8), a, a)
}

fn apply_factor(
    domain: &OrbitSumBasis,
    codomain: &OrbitSumBasis,
    chain: &[(usize, usize)],
    mut inspect: impl FnMut(usize, &WordVector) -> Result<(), Error>,
) -> Result<SparseExactMatrix, Error> {
    let mut columns = Vec::with_capacity(domain.len());
    for idx in 0..domain.len() {
        let image = domain.orbit_vector(idx).apply_chain(chain)?;
        inspect(idx, &image)?;
        columns.push(to_column(codomain.express(&image)?));
    }
    SparseExactMatrix::from_columns(codomain.len(), columns)
}

/// Matrix of the right factor from `orbit_sum_basis(a, b)` to [`middle_basis`].
pub fn right_factor(a: usize, b: usize) -> Result<SparseExactMatrix, Error> {
    right_factor_inspect(a, b, |_, _| Ok(()))
}

/// [`right_factor`], handing each column's image (as a word vector) to
/// `inspect` before it is rewritten in orbit sums.
pub fn right_factor_inspect(
    a: usize,
    b: usize,
    inspect: impl FnMut(usize, &WordVector) -> Result<(), Error>,
) -> Result<SparseExactMatrix, Error> {
    check_factor_shape(a, b)?;
    let domain = OrbitSumBasis::sa_orbits(a, b)?;
    apply_factor(&domain, &middle_basis(a, b)?, &right_chain(a, b), inspect)
}

/// Matrix of the left factor from [`middle_basis`] to [`left_codomain_basis`].
pub fn left_factor(a: usize, b: usize) -> Result<SparseExactMatrix, Error> {
    check_factor_shape(a, b)?;
    apply_factor(&middle_basis(a, b)?, &left_codomain_basis(a, b)?, &left_chain(a, b), |_, _| Ok(()))
}

/// 0/1 matrix rewriting `S_b` orbit sums in the finer `S_B` orbit sums:
/// the orbit sum of `R` is the sum, over the blocks `Q` of `R`, of the `S_B`
/// orbit sum with `F_b` on `Q` and the other blocks of `R` as free blocks.
pub fn sb_to_sbminus_embedding(a: usize, b: usize) -> Result<SparseExactMatrix, Error> {
    check_factor_shape(a, b)?;
    let coarse = OrbitSumBasis::sb_orbits(a, b)?;
    let fine = left_codomain_basis(a, b)?;
    let mut columns = Vec::with_capacity(coarse.len());
    for r in &coarse.elements {
        let labels = r.labels();
        let mut col: Vec<(u32, Rational)> = (1..=b as u8)
            .map(|q| {
                let relabelled: Vec<u8> = labels.iter().map(|&l| if l == q { 0 } else { l }).collect();
                let p = BlockSetPartition::from_labels(&relabelled).expect("relabelling keeps sizes");
                (fine.index_of(&p).expect("pointed partition is a basis element") as u32, Rational::one())
            })
            .collect();
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    SparseExactMatrix::from_columns(fine.len(), columns)
}

/// Outcome of comparing `left_factor * right_factor` with `psi` (after the
/// embedding into the finer codomain basis).
#[derive(Clone, Debug)]
pub struct FactorizationCheck {
    pub a: usize,
    pub b: usize,
    pub equal: bool,
    /// First column where the two sides differ.
    pub first_mismatch: Option<usize>,
}

pub fn check_factorization(a: usize, b: usize, psi: &PsiMatrix) -> Result<FactorizationCheck, Error> {
    if (psi.a, psi.b) != (a, b) {
        return Err(Error::InvalidArgument("psi matrix has the wrong shape".into()));
    }
    let product = left_factor(a, b)?.matmul(&right_factor(a, b)?)?;
    let embedded = sb_to_sbminus_embedding(a, b)?.matmul(&psi.matrix)?;
    let first_mismatch = (0..product.cols()).find(|&c| product.column(c) != embedded.column(c));
    Ok(FactorizationCheck { a, b, equal: first_mismatch.is_none() && product == embedded, first_mismatch })
}

/// Columns and rows of the left factor grouped by the positions of `F_b`.
#[derive(Clone, Debug)]
pub struct QBlockStructure {
    /// For each `Q` (1-based positions), the domain columns whose orbit has `F_b` on `Q`.
    pub column_blocks: BTreeMap<Vec<usize>, Vec<usize>>,
    /// For each `Q`, the codomain rows hit by columns of that block.
    pub row_supports: BTreeMap<Vec<usize>, Vec<usize>>,
    /// Column entries landing in a row whose `F_b` positions differ from the column's.
    pub cross_entries: Vec<(usize, usize)>,
}

impl QBlockStructure {
    /// True when no two `Q`-blocks share a row.
    pub fn supports_disjoint(&self) -> bool {
        let mut owner: BTreeMap<usize, &Vec<usize>> = BTreeMap::new();
        for (q, rows) in &self.row_supports {
            for r in rows {
                if let Some(prev) = owner.insert(*r, q) {
                    if prev != q {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn left_factor_q_blocks(a: usize, b: usize, left: &SparseExactMatrix) -> Result<QBlockStructure, Error> {
    let domain = middle_basis(a, b)?;
    let codomain = left_codomain_basis(a, b)?;
    if (left.rows(), left.cols()) != (codomain.len(), domain.len()) {
        return Err(Error::InvalidArgument("matrix is not the left factor".into()));
    }
    let mut column_blocks: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut row_supports: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut cross_entries = Vec::new();
    for (c, p) in domain.elements.iter().enumerate() {
        let q = p.unblocked();
        column_blocks.entry(q.clone()).or_default().push(c);
        let rows = row_supports.entry(q.clone()).or_default();
        for (r, _) in left.column(c) {
            let r = *r as usize;
            rows.push(r);
            if codomain.elements[r].unblocked() != q {
                cross_entries.push((r, c));
            }
        }
    }
    for rows in row_supports.values_mut() {
        rows.sort_unstable();
        rows.dedup();
    }
    Ok(QBlockStructure { column_blocks, row_supports, cross_entries })
}
