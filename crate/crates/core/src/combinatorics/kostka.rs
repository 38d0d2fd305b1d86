use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{Partition, WeakComposition};
use crate::Error;

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
///
/// Peels off the entries equal to the largest letter, which always form a
/// horizontal strip, and recurses on the remaining shape.
pub fn kostka(lambda: &Partition, mu: &WeakComposition) -> Result<BigUint, Error> {
    if lambda.size() != mu.size() {
        return Err(Error::InvalidArgument(format!(
            "kostka({lambda}, {:?}): sizes differ",
            mu.entries()
        )));
    }
    let mut memo = HashMap::new();
    Ok(count(lambda.parts(), mu.entries(), &mut memo))
}

fn count(
    shape: &[usize],
    content: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), BigUint>,
) -> BigUint {
    let Some((&last, rest)) = content.split_last() else {
        return if shape.is_empty() { BigUint::one() } else { BigUint::zero() };
    };
    // Letters 1..=k fill at most k rows.
    if shape.len() > content.len() {
        return BigUint::zero();
    }
    let key = (shape.to_vec(), content.len());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for inner in horizontal_strips(shape, last) {
        total += count(&inner, rest, memo);
    }
    memo.insert(key, total.clone());
    total
}

/// Shapes `nu` with `shape / nu` a horizontal strip of `size` boxes.
fn horizontal_strips(shape: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(shape: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == shape.len() {
            if left == 0 {
                let mut v = cur.clone();
                while v.last() == Some(&0) {
                    v.pop();
                }
                out.push(v);
            }
            return;
        }
        let floor = shape.get(i + 1).copied().unwrap_or(0);
        let max_take = (shape[i] - floor).min(left);
        for take in 0..=max_take {
            cur.push(shape[i] - take);
            rec(shape, i + 1, left - take, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(shape, 0, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{dim_irrep_gl, partitions_of};
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Enumerates fillings of the diagram row by row and keeps the semistandard ones.
    fn brute_kostka(lambda: &Partition, mu: &[usize]) -> usize {
        let cells: Vec<(usize, usize)> = lambda
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
            .collect();
        let k = mu.len();
        let mut fill = vec![vec![0usize; lambda.part(0)]; lambda.length()];
        fn rec(
            idx: usize,
            cells: &[(usize, usize)],
            k: usize,
            fill: &mut Vec<Vec<usize>>,
            used: &mut Vec<usize>,
            mu: &[usize],
        ) -> usize {
            if idx == cells.len() {
                return usize::from(used == mu);
            }
            let (i, j) = cells[idx];
            let mut total = 0;
            for v in 1..=k {
                if used[v - 1] == mu[v - 1] {
                    continue;
                }
                if j > 0 && fill[i][j - 1] > v {
                    continue;
                }
                if i > 0 && fill[i - 1][j] >= v {
                    continue;
                }
                fill[i][j] = v;
                used[v - 1] += 1;
                total += rec(idx + 1, cells, k, fill, used, mu);
                used[v - 1] -= 1;
            }
            total
        }
        rec(0, &cells, k, &mut fill, &mut vec![0; k], mu)
    }

    #[test]
    fn basic_values() {
        assert_eq!(kostka(&p(&[4]), &WeakComposition::new(vec![4])).unwrap(), BigUint::one());
        assert_eq!(kostka(&p(&[2, 2]), &WeakComposition::new(vec![1, 1, 1, 1])).unwrap(), BigUint::from(2u32));
        assert_eq!(brute_kostka(&p(&[2, 2]), &[1, 1, 1, 1]), 2);
        assert!(kostka(&p(&[2]), &WeakComposition::new(vec![1])).is_err());
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 1..=6 {
            for l in partitions_of(n, None) {
                for m in partitions_of(n, None) {
                    let expect = brute_kostka(&l, m.parts());
                    let got = kostka(&l, &WeakComposition::from(&m)).unwrap();
                    assert_eq!(got, BigUint::from(expect), "K({l},{m})");
                }
            }
        }
    }

    #[test]
    fn two_row_weight_space_is_one_dimensional_iff() {
        // lambda two-row of size b + i - 1, content (b, i - 1).
        for b in 2..=8 {
            for i in 1..b {
                for l in partitions_of(b + i - 1, Some(2)) {
                    let k = kostka(&l, &WeakComposition::new(vec![b, i - 1])).unwrap();
                    let expect = if l.part(1) <= i - 1 { 1u32 } else { 0 };
                    assert_eq!(k, BigUint::from(expect), "lambda={l} b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn gl_dimension_is_sum_of_weight_multiplicities() {
        fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
            if parts == 1 {
                return vec![vec![n]];
            }
            (0..=n)
                .flat_map(|first| {
                    compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
                })
                .collect()
        }
        for size in 0..=8 {
            for n in 1..=4 {
                for l in partitions_of(size, None) {
                    let total: BigUint = compositions(size, n)
                        .into_iter()
                        .map(|c| kostka(&l, &WeakComposition::new(c)).unwrap())
                        .sum();
                    assert_eq!(total, dim_irrep_gl(&l, n), "lambda={l} n={n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn invariant_under_permuting_content(
            idx in 0usize..77,
            seed in any::<u64>(),
        ) {
            use rand::{seq::SliceRandom, SeedableRng};
            let parts = partitions_of(12, None);
            let l = &parts[idx % parts.len()];
            let m = &parts[(idx * 31 + 7) % parts.len()];
            let mut shuffled: Vec<usize> = m.parts().to_vec();
            shuffled.resize(shuffled.len().max(6), 0);
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let base = kostka(l, &WeakComposition::from(m)).unwrap();
            let perm = kostka(l, &WeakComposition::new(shuffled)).unwrap();
            prop_assert_eq!(base, perm);
        }
    }
}
