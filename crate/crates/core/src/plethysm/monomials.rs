use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::MultiplicityVector;
use crate::combinatorics::{binomial, kostka, partitions_of, Partition, WeakComposition};
use crate::Error;

/// Largest number of monomial multisets expanded by [`plethysm_via_monomials`].
pub const MONOMIAL_TERM_LIMIT: usize = 5_000_000;

/// Exponent vectors of the degree-`b` monomials in `n` variables.
fn exponents(n: usize, b: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == n {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, b, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Multiplicities in `Sym^a(Sym^b C^n)` by expanding its character over
/// the monomial basis and peeling off Schur functions with Kostka numbers,
/// largest partition first. Only partitions with at most `n` parts appear.
pub fn plethysm_via_monomials(a: usize, b: usize, n: usize) -> Result<MultiplicityVector, Error> {
    if a == 0 || b == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("need a, b, n >= 1, got {a}, {b}, {n}")));
    }
    let inner = binomial(n + b - 1, b).to_usize().filter(|&k| k < 1 << 20);
    let terms = inner.and_then(|k| binomial(k + a - 1, a).to_usize()).filter(|&t| t <= MONOMIAL_TERM_LIMIT);
    if terms.is_none() {
        return Err(Error::ResourceLimit(format!("Sym^{a}(Sym^{b} C^{n}) has too many monomials")));
    }
    if a * b > 255 {
        return Err(Error::ResourceLimit("degree too large".into()));
    }
    let monos = exponents(n, b);

    // Weight multiplicities, kept only at dominant weights.
    let mut weights: FxHashMap<Vec<u8>, u64> = FxHashMap::default();
    let mut idx = vec![0usize; a];
    let mut total = vec![0u8; n];
    loop {
        total.iter_mut().for_each(|t| *t = 0);
        for &k in &idx {
            for (t, e) in total.iter_mut().zip(&monos[k]) {
                *t += e;
            }
        }
        if total.windows(2).all(|w| w[0] >= w[1]) {
            *weights.entry(total.clone()).or_default() += 1;
        }
        let Some(pos) = (0..a).rev().find(|&p| idx[p] + 1 < monos.len()) else { break };
        let v = idx[pos] + 1;
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }

    let shapes = partitions_of(a * b, Some(n));
    let mut mults: BTreeMap<Partition, BigUint> = BTreeMap::new();
    for (k, lambda) in shapes.iter().enumerate() {
        let mut key: Vec<u8> = lambda.parts().iter().map(|&x| x as u8).collect();
        key.resize(n, 0);
        let content = WeakComposition::from(lambda);
        let mut rest = BigInt::from(weights.get(&key).copied().unwrap_or(0));
        if kostka(lambda, &content)? != BigUint::from(1u8) {
            return Err(Error::Inconsistent(format!("K({lambda},{lambda}) is not 1")));
        }
        for (nu, m) in &mults {
            if m.is_zero() {
                continue;
            }
            rest -= BigInt::from(m * kostka(nu, &content)?);
        }
        // Unitriangularity: nothing smaller in this order contributes to lambda.
        for later in &shapes[k + 1..] {
            if !kostka(later, &content)?.is_zero() {
                return Err(Error::Inconsistent(format!("K({later},{lambda}) is nonzero")));
            }
        }
        if rest.is_negative() {
            return Err(Error::Inconsistent(format!("negative multiplicity for {lambda}")));
        }
        mults.insert(lambda.clone(), rest.to_biguint().expect("nonnegative"));
    }
    Ok(MultiplicityVector { n: a * b, mults })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plethysm::multiplicity_vector;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_lists() {
        assert_eq!(exponents(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(exponents(3, 4).len(), 15);
        assert_eq!(exponents(1, 5), vec![vec![5]]);
    }

    #[test]
    fn single_symmetric_power() {
        for b in 1..=6 {
            let v = plethysm_via_monomials(1, b, 3).unwrap();
            assert_eq!(v.support(), vec![&Partition::new(vec![b]).unwrap()]);
        }
    }

    #[test]
    fn two_by_two_in_two_variables() {
        let v = plethysm_via_monomials(2, 2, 2).unwrap();
        assert_eq!(v.support(), vec![&p("4"), &p("2,2")]);
        assert!(v.support().iter().all(|l| v.get(l) == BigUint::from(1u8)));
    }

    #[test]
    fn agrees_with_characters() {
        let v = plethysm_via_monomials(2, 3, 6).unwrap();
        assert_eq!(v, multiplicity_vector(2, 3).unwrap());
        for (a, b, n) in [(3, 2, 6), (3, 3, 4), (2, 4, 4), (4, 2, 3), (3, 4, 3), (2, 5, 3)] {
            let v = plethysm_via_monomials(a, b, n).unwrap();
            assert_eq!(v, multiplicity_vector(a, b).unwrap().truncated(n), "{a}x{b} n={n}");
        }
    }

    #[test]
    fn limit() {
        assert!(matches!(plethysm_via_monomials(6, 6, 12), Err(Error::ResourceLimit(_))));
    }
}
