use rustc_hash::FxHashMap;

use super::basis::WeightBasis;
use super::ops::WordVector;
use super::word::{Letter, Word};
use crate::combinatorics::{
    enumerate_block_partitions, enumerate_pointed_partitions, permutations, BlockSetPartition,
};
use crate::exactla::SparseVector;
use crate::Error;

/// Orbit-sum basis of the invariants of a symmetric group permuting the
/// letters `free`, inside a weight space where every free letter occurs
/// equally often and an optional `fixed` letter fills the remaining slots.
///
/// Element `P` is the sum of the words placing `free[sigma(l - 1)]` on block
/// `l` of `P` and `fixed` on its unblocked positions, over all permutations
/// `sigma`. Since blocks are nonempty and distinct, these words are distinct.
#[derive(Clone, Debug)]
pub struct OrbitSumBasis {
    pub free: Vec<Letter>,
    pub fixed: Option<Letter>,
    pub elements: Vec<BlockSetPartition>,
    label_of: [u8; 256],
    sigmas: Vec<Vec<usize>>,
}

impl OrbitSumBasis {
    fn build(free: Vec<Letter>, fixed: Option<Letter>, elements: Vec<BlockSetPartition>) -> Self {
        let mut label_of = [u8::MAX; 256];
        for (k, l) in free.iter().enumerate() {
            label_of[l.code() as usize] = k as u8 + 1;
        }
        if let Some(l) = fixed {
            label_of[l.code() as usize] = 0;
        }
        let sigmas = permutations(free.len());
        OrbitSumBasis { free, fixed, elements, label_of, sigmas }
    }

    /// `S_a` orbit sums in the `(a x b, empty)` weight space: the domain of `psi_{a x b}`.
    pub fn sa_orbits(a: usize, b: usize) -> Result<Self, Error> {
        let free = (1..=a).map(|i| Letter::E(i as u8)).collect();
        Ok(Self::build(free, None, enumerate_block_partitions(a, b)?))
    }

    /// `S_b` orbit sums in the `(empty, b x a)` weight space: the codomain of `psi_{a x b}`.
    pub fn sb_orbits(a: usize, b: usize) -> Result<Self, Error> {
        let free = (1..=b).map(|j| Letter::F(j as u8)).collect();
        Ok(Self::build(free, None, enumerate_block_partitions(b, a)?))
    }

    /// Orbit sums under the permutations of `free`, with `fixed_count`
    /// copies of `fixed` and `size` copies of each free letter.
    pub fn pointed(free: Vec<Letter>, fixed: Letter, fixed_count: usize, size: usize) -> Result<Self, Error> {
        let elements = enumerate_pointed_partitions(fixed_count, free.len(), size)?;
        Ok(Self::build(free, Some(fixed), elements))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &BlockSetPartition) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Number of words in each orbit.
    pub fn orbit_size(&self) -> usize {
        self.sigmas.len()
    }

    /// The word placing `free[sigma[l - 1]]` on block `l` of `p`.
    pub fn word(&self, p: &BlockSetPartition, sigma: &[usize]) -> Word {
        let mut codes = [0u8; 16];
        let n = p.ground_size();
        for (pos, code) in codes.iter_mut().enumerate().take(n) {
            let l = p.label(pos);
            *code = if l == 0 {
                self.fixed.expect("unblocked position needs a fixed letter").code()
            } else {
                self.free[sigma[l as usize - 1]].code()
            };
        }
        Word::from_codes(&codes[..n])
    }

    pub fn orbit_words(&self, p: &BlockSetPartition) -> Vec<Word> {
        self.sigmas.iter().map(|s| self.word(p, s)).collect()
    }

    /// Element `idx` as a word vector with all coefficients 1.
    pub fn orbit_vector(&self, idx: usize) -> WordVector {
        let p = &self.elements[idx];
        WordVector::from_terms(p.ground_size(), self.orbit_words(p).into_iter().map(|w| (w, 1)))
            .expect("orbit words share one length")
    }

    pub fn orbit_sparse(&self, idx: usize, basis: &WeightBasis) -> Result<SparseVector, Error> {
        self.orbit_vector(idx).to_sparse(basis)
    }

    /// The orbit containing `w`, or `None` if `w` uses a letter outside the
    /// alphabet or has the wrong letter counts.
    pub fn classify(&self, w: Word) -> Option<BlockSetPartition> {
        let mut labels = [0u8; 16];
        let n = w.len();
        for (pos, l) in labels.iter_mut().enumerate().take(n) {
            let lab = self.label_of[w.code(pos) as usize];
            if lab == u8::MAX {
                return None;
            }
            *l = lab;
        }
        let p = BlockSetPartition::from_labels(&labels[..n]).ok()?;
        self.index_of(&p).map(|_| p)
    }

    /// Rewrites an invariant vector in this basis. Fails with
    /// [`Error::Inconsistent`] unless every orbit met by the support is
    /// complete and carries a single coefficient.
    pub fn express(&self, v: &WordVector) -> Result<SparseVector, Error> {
        let mut seen: FxHashMap<BlockSetPartition, (i64, usize)> = FxHashMap::default();
        for (w, c) in v.terms() {
            let p = self
                .classify(w)
                .ok_or_else(|| Error::Inconsistent(format!("{w} lies outside the invariant space")))?;
            let slot = seen.entry(p).or_insert((c, 0));
            if slot.0 != c {
                return Err(Error::Inconsistent(format!("orbit {p:?} carries unequal coefficients")));
            }
            slot.1 += 1;
        }
        let mut entries = Vec::with_capacity(seen.len());
        for (p, (c, count)) in seen {
            if count != self.orbit_size() {
                return Err(Error::Inconsistent(format!(
                    "orbit {p:?} only partly present ({count} of {} words)",
                    self.orbit_size()
                )));
            }
            let idx = self.index_of(&p).expect("classified partitions are basis elements");
            entries.push((idx, v.scale_numerator(c)));
        }
        Ok(SparseVector::from_entries(self.len(), entries))
    }
}

/// `orbit_sum_basis(a, b)`: the `S_a` orbit sums spanning the invariants of
/// the `(a x b, empty)` weight space.
pub fn orbit_sum_basis(a: usize, b: usize) -> Result<OrbitSumBasis, Error> {
    OrbitSumBasis::sa_orbits(a, b)
}
