//! Multiplicities of irreducibles in `Sym^a(Sym^b)`, computed two
//! independent ways, and the checks built on them.

mod checks;
mod monomials;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    enumerate_block_partitions, factorial, partitions_of, permutation_of_type, BlockSetPartition,
    CharacterTable, Partition,
};
use crate::Error;

pub use checks::{
    foulkes_check, foulkes_compare, hermite_check, hermite_compare, feasible_poly_variables, kernel_consistency, kernel_consistency_at, kernel_consistency_with, ComparisonRow, KernelReport,
    MultiplicityComparison,
};
pub use monomials::{plethysm_via_monomials, MONOMIAL_TERM_LIMIT};

/// Largest `ab` for the character-theoretic route.
pub const CHARACTER_LIMIT: usize = 12;

/// Multiplicities of the irreducibles `{lambda}`, `|lambda| = n`. Partitions
/// without an entry have multiplicity zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityVector {
    pub n: usize,
    #[serde(with = "as_pairs")]
    pub mults: BTreeMap<Partition, BigUint>,
}

impl MultiplicityVector {
    pub fn get(&self, lambda: &Partition) -> BigUint {
        self.mults.get(lambda).cloned().unwrap_or_default()
    }

    /// Partitions with nonzero multiplicity, in reverse-lexicographic order.
    pub fn support(&self) -> Vec<&Partition> {
        self.mults.iter().rev().filter(|(_, m)| !m.is_zero()).map(|(p, _)| p).collect()
    }

    /// Drops the partitions with more than `parts` parts.
    pub fn truncated(&self, parts: usize) -> MultiplicityVector {
        let mults = self.mults.iter().filter(|(p, _)| p.length() <= parts).map(|(p, m)| (p.clone(), m.clone())).collect();
        MultiplicityVector { n: self.n, mults }
    }
}

/// JSON objects need string keys, so the map is written as `[[parts], mult]`
/// pairs, multiplicities as plain integers.
mod as_pairs {
    use super::*;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<Partition, BigUint>, s: S) -> Result<S::Ok, S::Error> {
        let pairs = m
            .iter()
            .rev()
            .map(|(p, v)| v.to_u64().map(|v| (p, v)).ok_or_else(|| S::Error::custom("multiplicity exceeds u64")))
            .collect::<Result<Vec<_>, _>>()?;
        s.collect_seq(pairs)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Partition, BigUint>, D::Error> {
        let pairs = Vec::<(Partition, u64)>::deserialize(d)?;
        let n = pairs.first().map(|(p, _)| p.size());
        if pairs.iter().any(|(p, _)| Some(p.size()) != n) {
            return Err(D::Error::custom("partitions of different sizes"));
        }
        Ok(pairs.into_iter().map(|(p, v)| (p, BigUint::from(v))).collect())
    }
}

fn check_size(a: usize, b: usize) -> Result<(), Error> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(format!("need a, b >= 1, got {a}x{b}")));
    }
    if a * b > CHARACTER_LIMIT {
        return Err(Error::ResourceLimit(format!("ab = {} exceeds {CHARACTER_LIMIT}", a * b)));
    }
    Ok(())
}

fn count_fixed(elements: &[BlockSetPartition], mu: &Partition) -> u64 {
    let perm = permutation_of_type(mu.parts());
    elements.iter().filter(|p| p.is_fixed_by(&perm)).count() as u64
}

/// Value at cycle type `mu` of the permutation character of `S_ab` on the
/// set partitions of `1..ab` into `a` blocks of size `b`: the number of such
/// partitions fixed by the permutation whose cycles are consecutive runs.
pub fn perm_character_value(a: usize, b: usize, mu: &Partition) -> Result<u64, Error> {
    check_size(a, b)?;
    if mu.size() != a * b {
        return Err(Error::InvalidArgument(format!("{mu} is not a partition of {}", a * b)));
    }
    Ok(count_fixed(&enumerate_block_partitions(a, b)?, mu))
}

/// The permutation character at every cycle type, in reverse-lexicographic order of types.
pub fn perm_character(a: usize, b: usize) -> Result<Vec<(Partition, u64)>, Error> {
    check_size(a, b)?;
    let elements = enumerate_block_partitions(a, b)?;
    Ok(partitions_of(a * b, None).into_iter().map(|mu| {
        let v = count_fixed(&elements, &mu);
        (mu, v)
    }).collect())
}

fn inner_product(table: &CharacterTable, row: usize, perm: &[(Partition, u64)], sizes: &[BigUint]) -> Result<BigUint, Error> {
    let mut total = BigInt::zero();
    for (k, (_, v)) in perm.iter().enumerate() {
        total += BigInt::from(sizes[k].clone()) * &table.values[row][k] * BigInt::from(*v);
    }
    let order = BigInt::from(factorial(table.n));
    let (q, r) = total.div_rem(&order);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Inconsistent(format!(
            "character inner product {total}/{order} for {} is not a nonnegative integer",
            table.partitions[row]
        )));
    }
    Ok(q.to_biguint().expect("nonnegative"))
}

/// Multiplicity of `{lambda}` in `Sym^a(Sym^b)`, as the multiplicity of the
/// Specht module `[lambda]` in the permutation module on block set partitions.
pub fn multiplicity(lambda: &Partition, a: usize, b: usize) -> Result<BigUint, Error> {
    check_size(a, b)?;
    if lambda.size() != a * b {
        return Err(Error::InvalidArgument(format!("{lambda} is not a partition of {}", a * b)));
    }
    let table = CharacterTable::compute(a * b);
    let row = table.index_of(lambda).expect("every partition of n has a row");
    inner_product(&table, row, &perm_character(a, b)?, &table.class_sizes())
}

/// [`multiplicity`] for every partition of `ab`.
pub fn multiplicity_vector(a: usize, b: usize) -> Result<MultiplicityVector, Error> {
    check_size(a, b)?;
    multiplicity_vector_from(&CharacterTable::compute(a * b), &perm_character(a, b)?)
}

/// [`multiplicity_vector`] from a precomputed character table of `S_n` and
/// permutation character (as returned by [`perm_character`]).
pub fn multiplicity_vector_from(table: &CharacterTable, perm: &[(Partition, u64)]) -> Result<MultiplicityVector, Error> {
    if perm.len() != table.partitions.len() || perm.iter().zip(&table.partitions).any(|((mu, _), p)| mu != p) {
        return Err(Error::InvalidArgument("permutation character does not match the table's classes".into()));
    }
    let sizes = table.class_sizes();
    let mut mults = BTreeMap::new();
    for row in 0..table.partitions.len() {
        mults.insert(table.partitions[row].clone(), inner_product(table, row, perm, &sizes)?);
    }
    Ok(MultiplicityVector { n: table.n, mults })
}

/// Sum of `mult(lambda) * f^lambda`, with `f^lambda` the Specht module dimension.
pub fn sym_dimension(v: &MultiplicityVector) -> BigUint {
    v.mults.iter().map(|(p, m)| m * crate::combinatorics::dim_irrep_sym(p)).sum()
}

/// Sum of `mult(lambda) * dim {lambda}(C^n)`.
pub fn gl_dimension(v: &MultiplicityVector, n: usize) -> BigUint {
    v.mults.iter().map(|(p, m)| m * crate::combinatorics::dim_irrep_gl(p, n)).sum()
}

pub(crate) fn to_usize(x: &BigUint) -> usize {
    x.to_usize().expect("fits in usize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binomial, block_partition_count, BlockSetPartition};

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Brute-force fixed points over every pairing of `1..4`.
    #[test]
    fn perm_character_two_by_two() {
        let pairings = [
            [vec![1, 2], vec![3, 4]],
            [vec![1, 3], vec![2, 4]],
            [vec![1, 4], vec![2, 3]],
        ];
        let brute = |perm: &[usize]| {
            pairings
                .iter()
                .filter(|blocks| {
                    let q = BlockSetPartition::from_blocks(&blocks[..]).unwrap();
                    q.permuted(perm) == q
                })
                .count() as u64
        };
        for mu in ["4", "2,2", "1,1,1,1", "3,1", "2,1,1"] {
            let mu = p(mu);
            assert_eq!(perm_character_value(2, 2, &mu).unwrap(), brute(&permutation_of_type(mu.parts())), "{mu}");
        }
        assert_eq!(perm_character_value(2, 2, &p("4")).unwrap(), 1);
        assert_eq!(perm_character_value(2, 2, &p("2,2")).unwrap(), 3);
        assert_eq!(perm_character_value(2, 2, &p("1,1,1,1")).unwrap(), 3);
        assert!(perm_character_value(2, 2, &p("3")).is_err());
    }

    #[test]
    fn identity_fixes_everything() {
        for (a, b) in [(2, 3), (3, 3), (2, 5), (4, 3)] {
            let id = Partition::new(vec![1; a * b]).unwrap();
            assert_eq!(BigUint::from(perm_character_value(a, b, &id).unwrap()), block_partition_count(a, b));
        }
    }

    #[test]
    fn small_multiplicities() {
        assert_eq!(multiplicity(&p("2,2"), 2, 2).unwrap(), BigUint::from(1u8));
        assert_eq!(multiplicity(&p("3,1"), 2, 2).unwrap(), BigUint::from(0u8));
        assert_eq!(multiplicity(&p("4"), 2, 2).unwrap(), BigUint::from(1u8));
        assert_eq!(multiplicity(&p("2,2,2"), 3, 2).unwrap(), BigUint::from(1u8));
        assert_eq!(multiplicity(&p("2,2,2"), 2, 3).unwrap(), BigUint::from(0u8));
        for (a, b) in [(1, 5), (2, 3), (3, 4), (6, 2)] {
            assert_eq!(multiplicity(&Partition::new(vec![a * b]).unwrap(), a, b).unwrap(), BigUint::from(1u8));
        }
        assert!(matches!(multiplicity(&p("7,6"), 1, 13), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn dimension_identity_and_row_bound() {
        for a in 1..=6 {
            for b in 1..=12 / a {
                let v = multiplicity_vector(a, b).unwrap();
                assert_eq!(sym_dimension(&v), block_partition_count(a, b), "{a}x{b}");
                assert!(v.support().iter().all(|l| l.length() <= a), "{a}x{b}");
            }
        }
    }

    #[test]
    fn gl_dimension_identity() {
        for n in 1..=3usize {
            for a in 1..=9 {
                for b in 1..=9 / a {
                    let v = multiplicity_vector(a, b).unwrap();
                    let inner = binomial(n + b - 1, b);
                    let inner = to_usize(&inner);
                    assert_eq!(gl_dimension(&v, n), binomial(inner + a - 1, a), "{a}x{b} n={n}");
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let v = multiplicity_vector(2, 2).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("[[4],1]"));
        let back: MultiplicityVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
