//! Set partitions of `{1..n}` into blocks of equal size, optionally with a
//! distinguished set of points kept apart from the blocks.
//!
//! Partitions are stored as label strings: position `p` carries the label of
//! its block, blocks are labelled `1, 2, ...` in order of their minimum
//! element, and label `0` marks the distinguished points. Four bits per
//! position packed into a `u64`, so `n <= 16`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::factorial;
use crate::{Error, DEFAULT_BLOCK_LIMIT};

/// Hard ceiling imposed by the packed label representation.
pub const MAX_GROUND_SET: usize = 16;

/// Position 0 occupies the top nibble so that numeric key order is
/// lexicographic order of label strings.
#[inline]
fn shift(p: usize) -> u32 {
    (60 - 4 * p) as u32
}

/// A partition of `{1..n}` into blocks of one common size, in canonical form
/// (blocks ordered by minimum element). Positions labelled `0` belong to no
/// block; they only occur in partitions built by [`enumerate_pointed_partitions`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSetPartition {
    n: u8,
    num_blocks: u8,
    key: u64,
}

impl BlockSetPartition {
    /// Builds the canonical form from a label string. Any labelling by
    /// `0..=15` works as long as label `0` marks unblocked points and all
    /// other labels name blocks of the same size.
    pub fn from_labels(labels: &[u8]) -> Result<Self, Error> {
        if labels.len() > MAX_GROUND_SET {
            return Err(Error::ResourceLimit(format!(
                "ground set of size {} exceeds {MAX_GROUND_SET}",
                labels.len()
            )));
        }
        let mut relabel = [0u8; 16];
        let mut sizes = [0u8; 16];
        let mut next = 0u8;
        let mut key = 0u64;
        for (p, &l) in labels.iter().enumerate() {
            if l > 15 {
                return Err(Error::InvalidArgument(format!("label {l} exceeds 15")));
            }
            let c = if l == 0 {
                0
            } else {
                if relabel[l as usize] == 0 {
                    next += 1;
                    relabel[l as usize] = next;
                }
                relabel[l as usize]
            };
            sizes[c as usize] += 1;
            key |= (c as u64) << shift(p);
        }
        if next > 0 && sizes[1..=next as usize].iter().any(|&s| s != sizes[1]) {
            return Err(Error::InvalidArgument(format!("blocks of unequal size in {labels:?}")));
        }
        Ok(BlockSetPartition { n: labels.len() as u8, num_blocks: next, key })
    }

    /// Builds from explicit blocks of 1-based elements; the union must be
    /// `{1..n}` for `n` the total number of elements.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self, Error> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n > MAX_GROUND_SET {
            return Err(Error::ResourceLimit(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
        }
        let mut labels = vec![0u8; n];
        for (k, block) in blocks.iter().enumerate() {
            for &x in block {
                if x == 0 || x > n || labels[x - 1] != 0 {
                    return Err(Error::InvalidArgument(format!("blocks {blocks:?} do not partition 1..{n}")));
                }
                labels[x - 1] = u8::try_from(k + 1)
                    .ok()
                    .filter(|&l| l <= 15)
                    .ok_or_else(|| Error::ResourceLimit("more than 15 blocks".into()))?;
            }
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::InvalidArgument("empty block".into()));
        }
        Self::from_labels(&labels)
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks as usize
    }

    /// Common block size (0 when there are no blocks).
    pub fn block_size(&self) -> usize {
        (0..self.ground_size()).filter(|&p| self.label(p) == 1).count()
    }

    /// Label of the 0-based position `p`: 0 for unblocked points, else the
    /// 1-based block index.
    #[inline]
    pub fn label(&self, p: usize) -> u8 {
        ((self.key >> shift(p)) & 0xf) as u8
    }

    pub fn labels(&self) -> Vec<u8> {
        (0..self.ground_size()).map(|p| self.label(p)).collect()
    }

    /// Packed label string; equal keys mean equal partitions for a fixed `n`,
    /// and key order is label-string order.
    pub fn key(&self) -> u64 {
        self.key
    }

    /// Blocks as sorted lists of 1-based elements, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for p in 0..self.ground_size() {
            let l = self.label(p);
            if l > 0 {
                out[l as usize - 1].push(p + 1);
            }
        }
        out
    }

    /// 1-based elements not in any block.
    pub fn unblocked(&self) -> Vec<usize> {
        (0..self.ground_size()).filter(|&p| self.label(p) == 0).map(|p| p + 1).collect()
    }

    /// Image under a permutation of positions, `perm[p]` being the 0-based
    /// image of position `p`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.ground_size());
        let mut labels = [0u8; MAX_GROUND_SET];
        for (p, &q) in perm.iter().enumerate() {
            labels[q] = self.label(p);
        }
        Self::from_labels(&labels[..self.ground_size()]).expect("permutation keeps block sizes")
    }

    pub fn is_fixed_by(&self, perm: &[usize]) -> bool {
        self.permuted(perm) == *self
    }
}

impl fmt::Debug for BlockSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fixed = self.unblocked();
        if !fixed.is_empty() {
            write!(f, "{fixed:?}|")?;
        }
        write!(f, "{:?}", self.blocks())
    }
}

impl Serialize for BlockSetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlockSetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        Self::from_blocks(&blocks).map_err(serde::de::Error::custom)
    }
}

/// `(ab)! / ((b!)^a a!)`.
pub fn block_partition_count(a: usize, b: usize) -> BigUint {
    let denom = (0..a).fold(factorial(a), |acc, _| acc * factorial(b));
    factorial(a * b) / denom
}

/// All partitions of `{1..ab}` into `a` blocks of size `b`, in lexicographic
/// order of their label strings.
pub fn enumerate_block_partitions(a: usize, b: usize) -> Result<Vec<BlockSetPartition>, Error> {
    enumerate_block_partitions_with_limit(a, b, DEFAULT_BLOCK_LIMIT)
}

pub fn enumerate_block_partitions_with_limit(
    a: usize,
    b: usize,
    limit: usize,
) -> Result<Vec<BlockSetPartition>, Error> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(format!("need a, b >= 1, got {a}x{b}")));
    }
    if a * b > limit.min(MAX_GROUND_SET) {
        return Err(Error::ResourceLimit(format!(
            "ab = {} exceeds the block enumeration limit {}",
            a * b,
            limit.min(MAX_GROUND_SET)
        )));
    }
    enumerate_pointed_partitions(0, a, b)
}

/// All labellings of `fixed + blocks * size` positions in which `fixed`
/// positions carry label 0 and the rest form `blocks` blocks of `size`,
/// in lexicographic order of label strings.
pub fn enumerate_pointed_partitions(
    fixed: usize,
    blocks: usize,
    size: usize,
) -> Result<Vec<BlockSetPartition>, Error> {
    let n = fixed + blocks * size;
    if n > MAX_GROUND_SET || blocks > 15 {
        return Err(Error::ResourceLimit(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
    }
    struct State {
        n: usize,
        blocks: usize,
        size: usize,
        fixed_left: usize,
        fill: [usize; 16],
        opened: usize,
        key: u64,
        out: Vec<BlockSetPartition>,
    }
    fn rec(s: &mut State, p: usize) {
        if p == s.n {
            s.out.push(BlockSetPartition { n: s.n as u8, num_blocks: s.blocks as u8, key: s.key });
            return;
        }
        if s.fixed_left > 0 {
            s.fixed_left -= 1;
            rec(s, p + 1);
            s.fixed_left += 1;
        }
        let top = (s.opened + 1).min(s.blocks);
        for l in 1..=top {
            if s.fill[l] == s.size {
                continue;
            }
            let opens = l > s.opened;
            s.fill[l] += 1;
            if opens {
                s.opened += 1;
            }
            s.key |= (l as u64) << shift(p);
            rec(s, p + 1);
            s.key &= !(0xf << shift(p));
            if opens {
                s.opened -= 1;
            }
            s.fill[l] -= 1;
        }
    }
    let mut s = State {
        n,
        blocks: if size == 0 { 0 } else { blocks },
        size,
        fixed_left: fixed,
        fill: [0; 16],
        opened: 0,
        key: 0,
        out: Vec::new(),
    };
    rec(&mut s, 0);
    Ok(s.out)
}

/// Canonical permutation of cycle type `mu` on `0..|mu|`: consecutive runs
/// of points are cycled.
pub fn permutation_of_type(mu: &[usize]) -> Vec<usize> {
    let n: usize = mu.iter().sum();
    let mut perm = vec![0; n];
    let mut start = 0;
    for &len in mu {
        for k in 0..len {
            perm[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    perm
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot has a successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// All set partitions of `0..n` (restricted growth strings), filtered to
    /// those with `a` blocks of size `b`.
    fn brute_force(a: usize, b: usize) -> BTreeSet<Vec<Vec<usize>>> {
        let n = a * b;
        let mut out = BTreeSet::new();
        let mut rgs = vec![0usize; n];
        fn rec(p: usize, maxl: usize, rgs: &mut Vec<usize>, a: usize, b: usize, out: &mut BTreeSet<Vec<Vec<usize>>>) {
            if p == rgs.len() {
                let mut blocks = vec![Vec::new(); maxl];
                for (i, &l) in rgs.iter().enumerate() {
                    blocks[l].push(i + 1);
                }
                if blocks.len() == a && blocks.iter().all(|bl| bl.len() == b) {
                    out.insert(blocks);
                }
                return;
            }
            for l in 0..=maxl {
                rgs[p] = l;
                rec(p + 1, maxl.max(l + 1), rgs, a, b, out);
            }
        }
        rec(0, 0, &mut rgs, a, b, &mut out);
        out
    }

    #[test]
    fn small_counts_match_brute_force() {
        for (a, b, expect) in [(1, 3, 1), (2, 2, 3), (3, 3, 280), (2, 3, 10), (3, 2, 15), (4, 2, 105)] {
            let got = enumerate_block_partitions(a, b).unwrap();
            assert_eq!(got.len(), expect, "{a}x{b}");
            let brute = brute_force(a, b);
            let mine: BTreeSet<_> = got.iter().map(|p| p.blocks()).collect();
            assert_eq!(mine, brute);
        }
    }

    #[test]
    fn order_is_lexicographic_on_label_strings() {
        let parts = enumerate_block_partitions(3, 2).unwrap();
        let labels: Vec<_> = parts.iter().map(|p| p.labels()).collect();
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(labels, sorted);
        assert!(parts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(parts[0].blocks(), vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(parts[14].blocks(), vec![vec![1, 6], vec![2, 5], vec![3, 4]]);
    }

    #[test]
    fn counts_match_formula() {
        for a in 1..=12 {
            for b in 1..=12 / a {
                let n = enumerate_block_partitions(a, b).unwrap().len();
                assert_eq!(BigUint::from(n), block_partition_count(a, b), "{a}x{b}");
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(enumerate_block_partitions_with_limit(3, 3, 8), Err(Error::ResourceLimit(_))));
        assert!(matches!(enumerate_block_partitions(3, 6), Err(Error::ResourceLimit(_))));
        assert!(enumerate_block_partitions(0, 2).is_err());
    }

    #[test]
    fn pointed_counts() {
        // choose the fixed points, then partition the rest
        assert_eq!(enumerate_pointed_partitions(3, 3, 3).unwrap().len(), 220 * 280);
        assert_eq!(enumerate_pointed_partitions(2, 2, 1).unwrap().len(), 6);
        assert_eq!(enumerate_pointed_partitions(4, 0, 3).unwrap().len(), 1);
    }

    #[test]
    fn from_blocks_round_trip_and_validation() {
        let p = BlockSetPartition::from_blocks(&[vec![4, 2], vec![1, 3]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(p.block_size(), 2);
        assert!(BlockSetPartition::from_blocks(&[vec![1, 2], vec![2, 3]]).is_err());
        assert!(BlockSetPartition::from_blocks(&[vec![1, 2], vec![3]]).is_err());
        assert_eq!(format!("{p:?}"), "[[1, 3], [2, 4]]");
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        let all: BTreeSet<_> = permutations(5).into_iter().collect();
        assert_eq!(all.len(), 120);
    }

    #[test]
    fn permutation_action() {
        let p = BlockSetPartition::from_blocks(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert!(p.is_fixed_by(&permutation_of_type(&[2, 2])));
        assert!(!p.is_fixed_by(&permutation_of_type(&[3, 1])));
        assert_eq!(permutation_of_type(&[3, 1]), vec![1, 2, 0, 3]);
    }

    proptest! {
        #[test]
        fn canonical_form_is_unique(seed in any::<u64>(), idx in 0usize..280) {
            use rand::{seq::SliceRandom, SeedableRng};
            let all = enumerate_block_partitions(3, 3).unwrap();
            let p = all[idx];
            let mut blocks = p.blocks();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            blocks.shuffle(&mut rng);
            for b in &mut blocks {
                b.shuffle(&mut rng);
            }
            prop_assert_eq!(BlockSetPartition::from_blocks(&blocks).unwrap(), p);
        }
    }
}
