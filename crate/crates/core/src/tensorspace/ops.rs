use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use rustc_hash::FxHashMap;

use super::basis::{gl2_weight_basis, weight_basis, WeightBasis};
use super::word::{sa_act, sb_act, Letter, Word};
use crate::combinatorics::{binomial, WeakComposition};
use crate::exactla::{Rational, SparseExactMatrix, SparseVector};
use crate::Error;

/// The matrix of a raising operator together with its target basis.
#[derive(Clone, Debug)]
pub struct PhiMap {
    pub matrix: SparseExactMatrix,
    pub target: WeightBasis,
    /// `alpha_i = 0`: the operator is the zero map and `target` is empty.
    pub vanishes: bool,
}

fn check_indices(i: usize, j: usize, a: usize, b: usize) -> Result<(), Error> {
    if i == 0 || i > a || j == 0 || j > b {
        return Err(Error::InvalidArgument(format!("phi_({i},{j}) undefined for a={a}, b={b}")));
    }
    Ok(())
}

/// `phi_{i,j}` on a weight basis: each word maps to `1/d` times the sum of the
/// words obtained by turning one `E_i` into `F_j`.
pub fn phi(i: usize, j: usize, basis: &WeightBasis) -> Result<PhiMap, Error> {
    check_indices(i, j, basis.a(), basis.b())?;
    let d = basis.d();
    if basis.alpha.entries()[i - 1] == 0 {
        return Ok(PhiMap {
            matrix: SparseExactMatrix::zeros(0, basis.len()),
            target: basis.empty_like(),
            vanishes: true,
        });
    }
    let mut alpha = basis.alpha.entries().to_vec();
    let mut beta = basis.beta.entries().to_vec();
    alpha[i - 1] -= 1;
    beta[j - 1] += 1;
    let target = weight_basis(d, &WeakComposition::new(alpha), &WeakComposition::new(beta))?;
    let from = Letter::E(i as u8).code();
    let to = Letter::F(j as u8).code();
    let entry = Rational::new(1, d as i64);
    let columns = basis
        .words()
        .iter()
        .map(|&w| {
            let mut col: Vec<(u32, Rational)> = (0..d)
                .filter(|&k| w.code(k) == from)
                .map(|k| {
                    let row = target.index_of(w.with_code(k, to)).expect("image has target content");
                    (row as u32, entry.clone())
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    let matrix = SparseExactMatrix::from_columns(target.len(), columns)?;
    Ok(PhiMap { matrix, target, vanishes: false })
}

/// A vector in `(x)^d V` with coefficients `c_w / d^exp`, `c_w` integers.
///
/// Every raising operator contributes exactly one factor `1/d`, so a chain of
/// them keeps integer numerators over a shared power of `d`. This lets long
/// chains run on hash maps of machine integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordVector {
    d: usize,
    exp: u32,
    coeffs: FxHashMap<Word, i64>,
}

impl WordVector {
    pub fn zero(d: usize) -> Self {
        WordVector { d, exp: 0, coeffs: FxHashMap::default() }
    }

    /// Integer combination of words, all of length `d`.
    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (Word, i64)>) -> Result<Self, Error> {
        let mut v = Self::zero(d);
        for (w, c) in terms {
            if w.len() != d {
                return Err(Error::InvalidArgument(format!("{w} does not have length {d}")));
            }
            v.add(w, c)?;
        }
        Ok(v)
    }

    fn add(&mut self, w: Word, c: i64) -> Result<(), Error> {
        let slot = self.coeffs.entry(w).or_insert(0);
        *slot = slot
            .checked_add(c)
            .ok_or_else(|| Error::ResourceLimit("coefficient overflow in word vector".into()))?;
        if *slot == 0 {
            self.coeffs.remove(&w);
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Power of `d` in the common denominator.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Integer numerators over `d^exponent`.
    pub fn terms(&self) -> impl Iterator<Item = (Word, i64)> + '_ {
        self.coeffs.iter().map(|(w, c)| (*w, *c))
    }

    pub fn numerator(&self, w: Word) -> i64 {
        self.coeffs.get(&w).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, w: Word) -> Rational {
        self.scale_numerator(self.numerator(w))
    }

    pub(crate) fn scale_numerator(&self, c: i64) -> Rational {
        let den = BigInt::from(self.d).pow(self.exp);
        match den.to_i64() {
            Some(den) => Rational::new(c, den),
            None => Rational::from_bigints(BigInt::from(c), den),
        }
    }

    /// `phi_{i,j}` applied to this vector. An operator with no `E_i` to
    /// convert yields the zero vector.
    pub fn apply_phi(&self, i: usize, j: usize) -> Result<WordVector, Error> {
        if i == 0 || i > 127 || j == 0 || j > 127 {
            return Err(Error::InvalidArgument(format!("phi_({i},{j}) out of range")));
        }
        let from = Letter::E(i as u8).code();
        let to = Letter::F(j as u8).code();
        let mut out = WordVector { d: self.d, exp: self.exp + 1, coeffs: FxHashMap::default() };
        out.coeffs.reserve(self.coeffs.len() * 2);
        for (&w, &c) in &self.coeffs {
            for k in 0..self.d {
                if w.code(k) == from {
                    out.add(w.with_code(k, to), c)?;
                }
            }
        }
        Ok(out)
    }

    /// Applies a sequence of raising operators, rightmost first, matching
    /// the usual reading of `phi_{i1,j1} o ... o phi_{ik,jk}`.
    pub fn apply_chain(&self, chain: &[(usize, usize)]) -> Result<WordVector, Error> {
        let mut v = self.clone();
        for &(i, j) in chain.iter().rev() {
            v = v.apply_phi(i, j)?;
        }
        Ok(v)
    }

    pub fn act_sa(&self, pi: &[usize]) -> WordVector {
        self.map_words(|w| sa_act(pi, w))
    }

    pub fn act_sb(&self, pi: &[usize]) -> WordVector {
        self.map_words(|w| sb_act(pi, w))
    }

    fn map_words(&self, f: impl Fn(Word) -> Word) -> WordVector {
        WordVector {
            d: self.d,
            exp: self.exp,
            coeffs: self.coeffs.iter().map(|(w, c)| (f(*w), *c)).collect(),
        }
    }

    /// Expansion in a weight basis; fails if the support leaves the basis.
    pub fn to_sparse(&self, basis: &WeightBasis) -> Result<SparseVector, Error> {
        let mut entries = Vec::with_capacity(self.coeffs.len());
        for (&w, &c) in &self.coeffs {
            let idx = basis
                .index_of(w)
                .ok_or_else(|| Error::Inconsistent(format!("{w} lies outside the target weight space")))?;
            entries.push((idx, self.scale_numerator(c)));
        }
        Ok(SparseVector::from_entries(basis.len(), entries))
    }

    pub fn sorted_terms(&self) -> Vec<(Word, i64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_unstable();
        v
    }
}

/// The `GL_2` raising operator `e -> f` from `gl2_weight_basis(n, k)` to
/// `gl2_weight_basis(n, k + 1)`, with the same `1/n` normalization as `phi`.
pub fn zeta_gl2(n: usize, k: usize) -> Result<SparseExactMatrix, Error> {
    if k >= n {
        return Err(Error::InvalidArgument(format!("no e left to raise: k={k}, n={n}")));
    }
    Ok(phi(1, 1, &gl2_weight_basis(n, k)?)?.matrix)
}

/// `(e(x)f - f(x)e)` in each of the slot pairs `(1,2), ..., (2 l2 - 1, 2 l2)`,
/// tensored with the symmetrization of `e^(n-k-l2) f^(k-l2)` on the remaining
/// slots (the average over distinct arrangements), as a vector over
/// `gl2_weight_basis(n, k)`.
pub fn wedge_sym_vector(l2: usize, n: usize, k: usize) -> Result<SparseVector, Error> {
    if k > n || l2 > k || l2 > n - k {
        return Err(Error::InvalidArgument(format!("wedge vector needs l2 <= k <= n - l2, got l2={l2}, k={k}, n={n}")));
    }
    let basis = gl2_weight_basis(n, k)?;
    let e = Letter::E(1).code();
    let f = Letter::F(1).code();
    let p = n - k - l2;
    let q = k - l2;
    let rest = p + q;
    let weight = Rational::from_bigints(BigInt::from(1), BigInt::from(binomial(rest, q)));
    let mut entries = Vec::new();
    let mut codes = vec![0u8; n];
    for signs in 0u32..(1 << l2) {
        let mut negative = false;
        for t in 0..l2 {
            let flip = signs >> t & 1 == 1;
            negative ^= flip;
            codes[2 * t] = if flip { f } else { e };
            codes[2 * t + 1] = if flip { e } else { f };
        }
        for fmask in 0u32..(1 << rest) {
            if fmask.count_ones() as usize != q {
                continue;
            }
            for s in 0..rest {
                codes[2 * l2 + s] = if fmask >> s & 1 == 1 { f } else { e };
            }
            let idx = basis.index_of(Word::from_codes(&codes)).expect("word has content (n-k, k)");
            entries.push((idx, if negative { -weight.clone() } else { weight.clone() }));
        }
    }
    Ok(SparseVector::from_entries(basis.len(), entries))
}
