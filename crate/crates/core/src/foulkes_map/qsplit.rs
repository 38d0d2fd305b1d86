//! Splitting weight spaces by a position set `Q`, and the block structure of
//! the raising operators along those splits.

use std::collections::BTreeMap;

use crate::combinatorics::WeakComposition;
use crate::exactla::Rational;
use crate::tensorspace::{gl2_weight_basis, phi, weight_basis, zeta_gl2, Letter, WeightBasis, Word};
use crate::Error;

/// How a word determines its position set `Q` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QSplit {
    /// `Q` is the set of positions carrying this letter.
    FixedLetter(Letter),
    /// `Q` is the set of positions carrying none of these letters.
    Complement(Vec<Letter>),
}

impl QSplit {
    pub fn positions(&self, w: Word) -> Vec<usize> {
        let letters = w.letters();
        let keep = |l: &Letter| match self {
            QSplit::FixedLetter(x) => l == x,
            QSplit::Complement(xs) => !xs.contains(l),
        };
        letters.iter().enumerate().filter(|(_, l)| keep(l)).map(|(k, _)| k + 1).collect()
    }

    /// `|Q|` shared by every word of `basis`.
    pub fn block_cardinality(&self, basis: &WeightBasis) -> usize {
        let count = |l: &Letter| match *l {
            Letter::E(i) => basis.alpha.entries().get(i as usize - 1).copied().unwrap_or(0),
            Letter::F(j) => basis.beta.entries().get(j as usize - 1).copied().unwrap_or(0),
        };
        match self {
            QSplit::FixedLetter(x) => count(x),
            QSplit::Complement(xs) => basis.d() - xs.iter().map(count).sum::<usize>(),
        }
    }
}

/// Indices of the words of `basis` whose position set is exactly `q`, in basis order.
pub fn q_block_split(basis: &WeightBasis, split: &QSplit, q: &[usize]) -> Result<Vec<usize>, Error> {
    let expected = split.block_cardinality(basis);
    if q.len() != expected {
        return Err(Error::InvalidArgument(format!("|Q| = {} but this split needs {expected}", q.len())));
    }
    if q.windows(2).any(|w| w[0] >= w[1]) || q.iter().any(|&p| p == 0 || p > basis.d()) {
        return Err(Error::InvalidArgument(format!("Q = {q:?} is not an increasing subset of 1..={}", basis.d())));
    }
    Ok((0..basis.len()).filter(|&k| split.positions(basis.words()[k]) == q).collect())
}

/// All nonempty blocks of the split, keyed by `Q`.
pub fn q_blocks(basis: &WeightBasis, split: &QSplit) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, &w) in basis.words().iter().enumerate() {
        out.entry(split.positions(w)).or_default().push(k);
    }
    out
}

/// `(gamma_i, (0^B, i))`: the weight reached after `i` steps of the right factor.
pub fn gamma_weight(a: usize, b: usize, i: usize) -> (WeakComposition, WeakComposition) {
    let alpha = (0..a).map(|k| if k < i { b - 1 } else { b }).collect();
    let mut beta = vec![0; b];
    beta[b - 1] = i;
    (WeakComposition::new(alpha), WeakComposition::new(beta))
}

/// Outcome of comparing the blocks of `phi_{i,b}` on the `(gamma_{i-1}, (0^B, i-1))`
/// weight space with the `GL_2` raising operator on `B + i` tensor factors,
/// scaled by `(B + i) / ab`. Within a `Q`-block, each fixed assignment of the
/// letters on `Q` must reproduce that operator exactly.
#[derive(Clone, Debug)]
pub struct ZetaBlockCheck {
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub blocks: usize,
    /// Entries of `phi_{i,b}` joining two different blocks.
    pub cross_entries: usize,
    /// Blocks whose restriction differs from the scaled `GL_2` operator.
    pub mismatched_blocks: Vec<Vec<usize>>,
}

impl ZetaBlockCheck {
    pub fn holds(&self) -> bool {
        self.cross_entries == 0 && self.mismatched_blocks.is_empty()
    }
}

fn on_positions(w: Word, q: &[usize]) -> Vec<Letter> {
    q.iter().map(|&p| w.letter(p - 1)).collect()
}

/// Writes the letters of `w` outside `q` as a two-letter word, `E_i -> E_1`, `F_b -> F_1`.
fn squeeze(w: Word, q: &[usize], i: usize, b: usize) -> Result<Word, Error> {
    let letters: Vec<Letter> = w
        .letters()
        .into_iter()
        .enumerate()
        .filter(|(k, _)| q.binary_search(&(k + 1)).is_err())
        .map(|(_, l)| match l {
            Letter::E(x) if x as usize == i => Ok(Letter::E(1)),
            Letter::F(y) if y as usize == b => Ok(Letter::F(1)),
            other => Err(Error::Inconsistent(format!("{other} outside Q in {w}"))),
        })
        .collect::<Result<_, _>>()?;
    Word::from_letters(&letters)
}

pub fn check_zeta_blocks(a: usize, b: usize, i: usize) -> Result<ZetaBlockCheck, Error> {
    if a == 0 || b < 2 || i == 0 || i > a {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= a and b >= 2, got a={a} b={b} i={i}")));
    }
    let d = a * b;
    let n = b - 1 + i;
    let (alpha, beta) = gamma_weight(a, b, i - 1);
    let basis = weight_basis(d, &alpha, &beta)?;
    let map = phi(i, b, &basis)?;
    let split = QSplit::Complement(vec![Letter::E(i as u8), Letter::F(b as u8)]);
    let zeta = zeta_gl2(n, i - 1)?;
    let small_dom = gl2_weight_basis(n, i - 1)?;
    let small_cod = gl2_weight_basis(n, i)?;
    let scale = Rational::new(n as i64, d as i64);

    let mut cross_entries = 0;
    let mut mismatched_blocks = Vec::new();
    let blocks = q_blocks(&basis, &split);
    for (q, cols) in &blocks {
        // Within a block, the letters on Q are untouched by phi_{i,b}; each
        // assignment of them carries its own copy of the GL_2 operator.
        let mut copies: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
        let mut ok = true;
        for &c in cols {
            let w = basis.words()[c];
            *copies.entry(on_positions(w, q)).or_default() += 1;
            let sc = small_dom.index_of(squeeze(w, q, i, b)?).expect("squeezed word has the GL_2 weight");
            let mut hits = 0;
            for (r, x) in map.matrix.column(c) {
                let t = map.target.words()[*r as usize];
                if &split.positions(t) != q || on_positions(t, q) != on_positions(w, q) {
                    cross_entries += 1;
                    continue;
                }
                let sr = small_cod.index_of(squeeze(t, q, i, b)?).expect("squeezed word has the GL_2 weight");
                ok &= *x == &zeta.get(sr, sc) * &scale;
                hits += 1;
            }
            ok &= hits == zeta.column(sc).len();
        }
        ok &= copies.values().all(|&k| k == small_dom.len());
        if !ok {
            mismatched_blocks.push(q.clone());
        }
    }
    Ok(ZetaBlockCheck { a, b, i, blocks: blocks.len(), cross_entries, mismatched_blocks })
}

/// Follows each `S_a` orbit sum of the `(a x b, empty)` space through
/// `phi_{1,b}`, then `phi_{2,b}`, and so on, returning the first step whose
/// image has a word outside the `(gamma_i, (0^B, i))` weight, or `None`.
pub fn gamma_chain_violation(a: usize, b: usize) -> Result<Option<(usize, usize)>, Error> {
    let domain = crate::tensorspace::OrbitSumBasis::sa_orbits(a, b)?;
    for idx in 0..domain.len() {
        let mut v = domain.orbit_vector(idx);
        for i in 1..=a {
            v = v.apply_phi(i, b)?;
            let want = gamma_weight(a, b, i);
            for (w, _) in v.terms() {
                if w.content(a, b)? != want {
                    return Ok(Some((idx, i)));
                }
            }
            if v.is_zero() {
                return Ok(Some((idx, i)));
            }
        }
    }
    Ok(None)
}
