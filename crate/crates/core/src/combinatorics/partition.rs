use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// An integer partition: positive parts in weakly decreasing order.
///
/// Ordering is lexicographic on the parts, so sorting descending gives the
/// reverse-lexicographic order used for every enumeration in this crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are dropped; anything else out of order is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, Error> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The rectangle with `rows` rows of length `cols`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition { parts: vec![cols; rows] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Dominance order: every prefix sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut s, mut t) = (0, 0);
        for i in 0..self.length().max(other.length()) {
            s += self.part(i);
            t += other.part(i);
            if s < t {
                return false;
            }
        }
        true
    }

    /// Hook length of the box in row `i`, column `j` (0-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Multiplicity of each part size `k`, indexed by `k`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self, Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,2,1`, `(2, 2, 1)`, or an empty string / `()` for the empty partition.
    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// A sequence of nonnegative integers whose order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeakComposition(pub Vec<usize>);

impl WeakComposition {
    pub fn new(entries: Vec<usize>) -> Self {
        WeakComposition(entries)
    }

    pub fn zeros(len: usize) -> Self {
        WeakComposition(vec![0; len])
    }

    /// `(width, width, ..., width)` with `len` entries.
    pub fn constant(len: usize, width: usize) -> Self {
        WeakComposition(vec![width; len])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The partition obtained by sorting the nonzero entries.
    pub fn sorted(&self) -> Partition {
        let mut v: Vec<usize> = self.0.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: v }
    }
}

impl From<&Partition> for WeakComposition {
    fn from(p: &Partition) -> Self {
        WeakComposition(p.parts.clone())
    }
}

/// All partitions of `n` with at most `max_parts` parts, in reverse
/// lexicographic order (`(n)` first, `(1^n)` last).
pub fn partitions_of(n: usize, max_parts: Option<usize>) -> Vec<Partition> {
    fn rec(rem: usize, max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rem.min(max_part)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(sum k)! / prod k!`.
pub fn multinomial(ks: &[usize]) -> BigUint {
    let n: usize = ks.iter().sum();
    ks.iter().fold(factorial(n), |acc, &k| acc / factorial(k))
}

/// Size of the conjugacy class of cycle type `mu` in `S_n`: `n! / z_mu`.
pub fn class_size(mu: &Partition) -> BigUint {
    let z = mu
        .multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigUint::one(), |acc, (k, &m)| acc * BigUint::from(k).pow(m as u32) * factorial(m));
    factorial(mu.size()) / z
}

/// Dimension of the Specht module `[lambda]`, by the hook length formula.
pub fn dim_irrep_sym(lambda: &Partition) -> BigUint {
    let hooks = hook_product(lambda);
    factorial(lambda.size()) / hooks
}

fn hook_product(lambda: &Partition) -> BigUint {
    let mut prod = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            prod *= lambda.hook(i, j);
        }
    }
    prod
}

/// Dimension of the irreducible `GL_n` module `{lambda}`, by the hook-content
/// formula; zero when `lambda` has more than `n` parts.
pub fn dim_irrep_gl(lambda: &Partition, n: usize) -> BigUint {
    if lambda.length() > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            num *= n + j - i;
        }
    }
    num / hook_product(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Brute-force count of weakly decreasing positive sequences summing to n.
    fn brute_partition_count(n: usize) -> usize {
        fn rec(rem: usize, max: usize) -> usize {
            if rem == 0 {
                return 1;
            }
            (1..=rem.min(max)).map(|k| rec(rem - k, k)).sum()
        }
        rec(n, n)
    }

    /// Brute-force number of permutations of `n` points with the given cycle type.
    fn brute_class_size(mu: &[usize]) -> usize {
        let n: usize = mu.iter().sum();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        let target = p(mu);
        loop {
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for s in 0..n {
                if !seen[s] {
                    let mut len = 0;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = perm[x];
                        len += 1;
                    }
                    cycles.push(len);
                }
            }
            cycles.sort_unstable_by(|a, b| b.cmp(a));
            if p(&cycles) == target {
                count += 1;
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(0, None), vec![Partition::empty()]);
        assert_eq!(partitions_of(4, None).len(), 5);
        assert_eq!(partitions_of(4, None).len(), brute_partition_count(4));
        assert_eq!(partitions_of(12, None).len(), 77);
        assert_eq!(brute_partition_count(12), 77);
        assert_eq!(partitions_of(6, Some(2)).len(), 4);
    }

    #[test]
    fn reverse_lexicographic_order() {
        let ps = partitions_of(4, None);
        let expect: Vec<Partition> =
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])];
        assert_eq!(ps, expect);
        let mut sorted = partitions_of(9, None);
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(sorted, partitions_of(9, None));
    }

    #[test]
    fn class_sizes_in_s4() {
        assert_eq!(class_size(&p(&[1, 1, 1, 1])), BigUint::from(1u32));
        assert_eq!(class_size(&p(&[2, 1, 1])), BigUint::from(brute_class_size(&[2, 1, 1])));
        assert_eq!(class_size(&p(&[2, 1, 1])), BigUint::from(6u32));
        assert_eq!(class_size(&p(&[4])), BigUint::from(brute_class_size(&[4])));
        assert_eq!(class_size(&p(&[4])), BigUint::from(6u32));
        let total: BigUint = partitions_of(6, None).iter().map(class_size).sum();
        assert_eq!(total, factorial(6));
    }

    #[test]
    fn specht_dimensions() {
        assert_eq!(dim_irrep_sym(&p(&[5])), BigUint::from(1u32));
        assert_eq!(dim_irrep_sym(&p(&[2, 2])), BigUint::from(2u32));
        assert_eq!(dim_irrep_sym(&p(&[3, 2, 1])), BigUint::from(16u32));
    }

    #[test]
    fn gl_dimensions() {
        assert_eq!(dim_irrep_gl(&p(&[2]), 2), BigUint::from(3u32));
        assert_eq!(dim_irrep_gl(&p(&[1, 1, 1]), 2), BigUint::zero());
        assert_eq!(dim_irrep_gl(&p(&[2, 1]), 3), BigUint::from(8u32));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,2,2".parse::<Partition>().unwrap(), p(&[2, 2, 2]));
        assert_eq!("(3, 1)".parse::<Partition>().unwrap().to_string(), "(3,1)");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,3".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugate_and_dominance() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])));
        assert!(!p(&[2, 2]).dominates(&p(&[3, 1])));
        assert!(!p(&[3, 3]).dominates(&p(&[4, 1, 1])));
    }
}
