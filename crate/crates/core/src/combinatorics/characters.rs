//! Irreducible characters of the symmetric group via the
//! Murnaghan-Nakayama rule.
//!
//! Rim hooks are removed on beta-sets: with `L` parts, `beta_k = lambda_k + L - 1 - k`.
//! Removing a rim hook of length `r` replaces some `beta` by `beta - r`
//! (which must not already be in the set) and contributes the sign
//! `(-1)^(number of betas strictly between)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{class_size, partitions_of, Partition};
use crate::Error;

/// Memoized evaluator for `chi^lambda(mu)`. Not shared between threads;
/// each caller owns its own table.
#[derive(Default)]
pub struct CharacterMemo {
    memo: HashMap<(Vec<usize>, Vec<usize>), BigInt>,
}

impl CharacterMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, lambda: &Partition, mu: &Partition) -> Result<BigInt, Error> {
        if lambda.size() != mu.size() {
            return Err(Error::InvalidArgument(format!(
                "character of {lambda} at {mu}: sizes differ"
            )));
        }
        Ok(self.chi(lambda.parts(), mu.parts()))
    }

    fn chi(&mut self, lambda: &[usize], mu: &[usize]) -> BigInt {
        let Some((&r, rest)) = mu.split_first() else {
            return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
        };
        if rest.is_empty() {
            // A single rim hook of length |lambda| exists only for hooks.
            return match hook_sign(lambda) {
                Some(s) => BigInt::from(s),
                None => BigInt::zero(),
            };
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let len = lambda.len();
        let beta: Vec<usize> = lambda.iter().enumerate().map(|(k, &l)| l + len - 1 - k).collect();
        let mut total = BigInt::zero();
        for k in 0..len {
            let b = beta[k];
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let between = beta.iter().filter(|&&x| x > target && x < b).count();
            let mut nb = beta.clone();
            nb[k] = target;
            nb.sort_unstable_by(|x, y| y.cmp(x));
            let mut shape: Vec<usize> =
                nb.iter().enumerate().map(|(i, &x)| x - (len - 1 - i)).collect();
            while shape.last() == Some(&0) {
                shape.pop();
            }
            let sub = self.chi(&shape, rest);
            if between % 2 == 0 {
                total += sub;
            } else {
                total -= sub;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `(-1)^(leg length)` if `lambda` is a hook, otherwise `None`.
fn hook_sign(lambda: &[usize]) -> Option<i64> {
    if lambda.is_empty() {
        return Some(1);
    }
    if lambda[1..].iter().any(|&p| p > 1) {
        return None;
    }
    Some(if (lambda.len() - 1) % 2 == 0 { 1 } else { -1 })
}

/// `chi^lambda(mu)` for a single pair; builds a fresh memo.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<BigInt, Error> {
    CharacterMemo::new().value(lambda, mu)
}

/// The full character table of `S_n`, rows and columns both indexed by
/// partitions of `n` in reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    /// `values[i][j] = chi^{partitions[i]}(partitions[j])`.
    pub values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    pub fn compute(n: usize) -> Self {
        let partitions = partitions_of(n, None);
        let mut memo = CharacterMemo::new();
        let values = partitions
            .iter()
            .map(|l| partitions.iter().map(|m| memo.chi(l.parts(), m.parts())).collect())
            .collect();
        CharacterTable { n, partitions, values }
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        // Reverse-lexicographic order is descending under Partition's Ord.
        self.partitions.binary_search_by(|q| p.cmp(q)).ok()
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        Some(&self.values[self.index_of(lambda)?][self.index_of(mu)?])
    }

    pub fn class_sizes(&self) -> Vec<BigUint> {
        self.partitions.iter().map(class_size).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{dim_irrep_sym, factorial};
    use num_traits::Signed;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_and_sign() {
        for mu in partitions_of(6, None) {
            assert_eq!(character(&p(&[6]), &mu).unwrap(), BigInt::one());
        }
        assert_eq!(character(&p(&[1, 1, 1, 1, 1]), &p(&[2, 1, 1, 1])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn known_values_in_s4() {
        assert_eq!(character(&p(&[2, 2]), &p(&[1, 1, 1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(character(&p(&[2, 2]), &p(&[2, 2])).unwrap(), BigInt::from(2));
        assert_eq!(character(&p(&[2, 2]), &p(&[3, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(character(&p(&[3, 1]), &p(&[4])).unwrap(), BigInt::from(-1));
        assert!(character(&p(&[3]), &p(&[2])).is_err());
    }

    #[test]
    fn identity_column_gives_dimensions() {
        for n in 0..=10 {
            let id = Partition::new(vec![1; n]).unwrap();
            for l in partitions_of(n, None) {
                assert_eq!(
                    character(&l, &id).unwrap(),
                    BigInt::from(dim_irrep_sym(&l)),
                    "lambda = {l}"
                );
            }
        }
    }

    #[test]
    fn first_orthogonality_relation() {
        for n in 1..=9 {
            let t = CharacterTable::compute(n);
            let sizes = t.class_sizes();
            for i in 0..t.partitions.len() {
                for k in 0..t.partitions.len() {
                    let s: BigInt = (0..t.partitions.len())
                        .map(|j| BigInt::from(sizes[j].clone()) * &t.values[i][j] * &t.values[k][j])
                        .sum();
                    let expect = if i == k { BigInt::from(factorial(n)) } else { BigInt::zero() };
                    assert_eq!(s, expect, "n={n} rows {i},{k}");
                }
            }
        }
    }

    #[test]
    fn row_norms_up_to_twelve() {
        for n in 10..=12 {
            let t = CharacterTable::compute(n);
            let sizes = t.class_sizes();
            for row in &t.values {
                let s: BigInt = row.iter().zip(&sizes).map(|(v, c)| BigInt::from(c.clone()) * v * v).sum();
                assert_eq!(s, BigInt::from(factorial(n)));
            }
        }
    }

    #[test]
    fn table_lookup() {
        let t = CharacterTable::compute(5);
        assert_eq!(t.index_of(&p(&[5])), Some(0));
        assert_eq!(t.index_of(&p(&[1, 1, 1, 1, 1])), Some(6));
        assert!(t.value(&p(&[3, 2]), &p(&[5])).unwrap().abs() <= BigInt::one());
    }
}
