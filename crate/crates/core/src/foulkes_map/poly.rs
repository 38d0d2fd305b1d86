//! The polynomial-side map `Sym^a(Sym^b C^n) -> Sym^b(Sym^a C^n)`.

use std::fmt;

use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::exactla::{Rational, SparseExactMatrix};
use crate::Error;

/// Largest domain or codomain dimension [`psi_poly`] will assemble.
pub const POLY_DIM_LIMIT: usize = 250_000;

/// Normalization used by [`psi_poly`], recorded in exports.
pub const PSI_POLY_CONVENTION: &str =
    "each distinct ordering of each degree-b monomial counted once; overall scalar 1";

/// A basis element of `Sym^a(Sym^b C^n)`: `a` monomials of degree `b`, each
/// stored as its sorted list of variable indices (0-based), the list of
/// monomials itself sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MonomialMultiset {
    pub monomials: Vec<Vec<usize>>,
}

impl MonomialMultiset {
    /// Sorts the input into canonical form.
    pub fn new(mut monomials: Vec<Vec<usize>>) -> Self {
        for m in &mut monomials {
            m.sort_unstable();
        }
        monomials.sort();
        MonomialMultiset { monomials }
    }

    pub fn total_degree(&self) -> usize {
        self.monomials.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for MonomialMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .monomials
            .iter()
            .map(|m| m.iter().map(|x| format!("x{}", x + 1)).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Nondecreasing sequences of length `k` over `0..n`, in lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] + 1 < n) else { break };
        let v = cur[pos] + 1;
        for x in &mut cur[pos..] {
            *x = v;
        }
    }
    out
}

fn multiset_count(n: usize, k: usize) -> Option<usize> {
    if n == 0 {
        return Some(usize::from(k == 0));
    }
    binomial(n + k - 1, k).to_usize()
}

/// Symmetric-power basis of `Sym^a(Sym^b C^n)` in canonical order, or a
/// resource error if it has more than `limit` elements.
pub fn monomial_multiset_basis(a: usize, b: usize, n: usize, limit: usize) -> Result<Vec<MonomialMultiset>, Error> {
    let inner = multiset_count(n, b).ok_or_else(|| Error::ResourceLimit("too many monomials".into()))?;
    let size = multiset_count(inner, a).filter(|&s| s <= limit);
    if size.is_none() {
        return Err(Error::ResourceLimit(format!("dim Sym^{a}(Sym^{b} C^{n}) exceeds {limit}")));
    }
    let monomials = multisets(n, b);
    Ok(multisets(monomials.len(), a)
        .into_iter()
        .map(|idx| MonomialMultiset { monomials: idx.into_iter().map(|k| monomials[k].clone()).collect() })
        .collect())
}

/// Distinct orderings of a sorted sequence, in lexicographic order.
fn distinct_orderings(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Matrix of `Sym^a(Sym^b C^n) -> Sym^b(Sym^a C^n)`: the image of
/// `{M_1, ..., M_a}` sums, over every choice of a distinct ordering
/// `w_k` of each `M_k`, the element `{w_1[j] ... w_a[j] : j = 1..b}`.
/// Columns and rows follow [`monomial_multiset_basis`] for `(a, b)` and
/// `(b, a)`. Entries are nonnegative integers (see [`PSI_POLY_CONVENTION`]).
pub fn psi_poly(a: usize, b: usize, n: usize) -> Result<SparseExactMatrix, Error> {
    if a == 0 || b == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("need a, b, n >= 1, got {a}, {b}, {n}")));
    }
    let domain = monomial_multiset_basis(a, b, n, POLY_DIM_LIMIT)?;
    let codomain = monomial_multiset_basis(b, a, n, POLY_DIM_LIMIT)?;
    let row_of: FxHashMap<&MonomialMultiset, u32> =
        codomain.iter().enumerate().map(|(k, m)| (m, k as u32)).collect();
    let mut columns = Vec::with_capacity(domain.len());
    for elem in &domain {
        let orderings: Vec<Vec<Vec<usize>>> = elem.monomials.iter().map(|m| distinct_orderings(m)).collect();
        let mut counts: FxHashMap<u32, i64> = FxHashMap::default();
        let mut choice = vec![0usize; a];
        loop {
            let products: Vec<Vec<usize>> =
                (0..b).map(|j| (0..a).map(|k| orderings[k][choice[k]][j]).collect()).collect();
            let image = MonomialMultiset::new(products);
            *counts.entry(row_of[&image]).or_default() += 1;
            let Some(k) = (0..a).rev().find(|&k| choice[k] + 1 < orderings[k].len()) else { break };
            choice[k] += 1;
            for c in &mut choice[k + 1..] {
                *c = 0;
            }
        }
        let mut col: Vec<(u32, Rational)> = counts.into_iter().map(|(r, c)| (r, Rational::from_integer(c))).collect();
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    SparseExactMatrix::from_columns(codomain.len(), columns)
}
