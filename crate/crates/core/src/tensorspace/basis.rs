use num_traits::ToPrimitive;
use serde::Serialize;

use super::word::{Letter, Word, MAX_WORD_LEN};
use crate::combinatorics::{multinomial, WeakComposition};
use crate::{Error, DEFAULT_BASIS_LIMIT};

/// All words of content `(alpha, beta)`, sorted lexicographically
/// (`E_1 < ... < E_a < F_1 < ... < F_b`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightBasis {
    pub alpha: WeakComposition,
    pub beta: WeakComposition,
    words: Vec<Word>,
}

impl WeightBasis {
    pub fn a(&self) -> usize {
        self.alpha.len()
    }

    pub fn b(&self) -> usize {
        self.beta.len()
    }

    /// Word length.
    pub fn d(&self) -> usize {
        self.alpha.size() + self.beta.size()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: Word) -> Option<usize> {
        self.words.binary_search(&w).ok()
    }

    /// The basis of the space `phi_{i,j}` would land in if `alpha_i` were
    /// positive; used as the target of a vanishing operator.
    pub(crate) fn empty_like(&self) -> WeightBasis {
        WeightBasis { alpha: self.alpha.clone(), beta: self.beta.clone(), words: Vec::new() }
    }
}

/// The weight basis of `(x)^d V` for content `(alpha, beta)`, with `a` and `b`
/// read off the lengths of `alpha` and `beta`.
pub fn weight_basis(d: usize, alpha: &WeakComposition, beta: &WeakComposition) -> Result<WeightBasis, Error> {
    weight_basis_with_limit(d, alpha, beta, DEFAULT_BASIS_LIMIT)
}

pub fn weight_basis_with_limit(
    d: usize,
    alpha: &WeakComposition,
    beta: &WeakComposition,
    limit: usize,
) -> Result<WeightBasis, Error> {
    if alpha.size() + beta.size() != d {
        return Err(Error::InvalidArgument(format!(
            "content {:?},{:?} does not have size {d}",
            alpha.entries(),
            beta.entries()
        )));
    }
    if d > MAX_WORD_LEN {
        return Err(Error::ResourceLimit(format!("word length {d} exceeds {MAX_WORD_LEN}")));
    }
    if alpha.len() > 127 || beta.len() > 127 {
        return Err(Error::InvalidArgument("at most 127 letters of each kind".into()));
    }
    let mut counts: Vec<usize> = alpha.entries().to_vec();
    counts.extend_from_slice(beta.entries());
    let size = multinomial(&counts).to_usize().unwrap_or(usize::MAX);
    if size > limit {
        return Err(Error::ResourceLimit(format!("weight space of dimension {size} exceeds {limit}")));
    }
    let codes: Vec<u8> = (1..=alpha.len())
        .map(|i| Letter::E(i as u8).code())
        .chain((1..=beta.len()).map(|j| Letter::F(j as u8).code()))
        .collect();
    let mut words = Vec::with_capacity(size);
    let mut cur = [0u8; MAX_WORD_LEN];
    fn rec(k: usize, d: usize, counts: &mut [usize], codes: &[u8], cur: &mut [u8; MAX_WORD_LEN], out: &mut Vec<Word>) {
        if k == d {
            out.push(Word::from_codes(&cur[..d]));
            return;
        }
        for t in 0..counts.len() {
            if counts[t] > 0 {
                counts[t] -= 1;
                cur[k] = codes[t];
                rec(k + 1, d, counts, codes, cur, out);
                counts[t] += 1;
            }
        }
    }
    rec(0, d, &mut counts, &codes, &mut cur, &mut words);
    Ok(WeightBasis { alpha: alpha.clone(), beta: beta.clone(), words })
}

/// Words of length `n` in `e = E_1`, `f = F_1` with exactly `k` copies of `f`.
pub fn gl2_weight_basis(n: usize, k: usize) -> Result<WeightBasis, Error> {
    if k > n {
        return Err(Error::InvalidArgument(format!("need k <= n, got k={k}, n={n}")));
    }
    weight_basis(n, &WeakComposition::new(vec![n - k]), &WeakComposition::new(vec![k]))
}
