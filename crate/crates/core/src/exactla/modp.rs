//! Rank over prime fields.
//!
//! Elimination starts sparse, choosing pivots by Markowitz cost
//! `(row_len - 1) * (col_count - 1)`. Once the cheapest pivot is too
//! expensive the remaining rows and columns are handed to a dense echelon
//! builder that reduces incoming rows in batches against the basis found so
//! far and stops as soon as the rank reaches the number of live columns.
//!
//! Primes below 2^25 use a floating-point kernel: residues are kept signed in
//! `(-p, p)`, products stay below 2^50, and up to 16 updates are accumulated
//! exactly in an `f64` before a reduction, which lets the inner loop
//! vectorize. Larger primes (up to 2^31) fall back to integer arithmetic.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::rational::{inv_mod, mul_mod, pow_mod};
use super::SparseExactMatrix;
use crate::Error;

/// Largest prime accepted by [`rank_mod_p`].
pub const MAX_PRIME: u64 = (1 << 31) - 1;
const FLOAT_KERNEL_BOUND: u64 = 1 << 25;
const MARKOWITZ_LIMIT: u64 = 4096;
const BATCH: usize = 16;
const LAZY_UPDATES: u32 = 16;
const SHUFFLE_SEED: u64 = 0x5eed_f00d;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes strictly below `bound`, descending.
pub fn primes_below(bound: u64, count: usize) -> Vec<u64> {
    (2..bound).rev().filter(|&n| is_prime(n)).take(count).collect()
}

/// Default certification primes: the three largest primes below 2^25.
pub fn default_primes() -> Vec<u64> {
    primes_below(FLOAT_KERNEL_BOUND, 3)
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &SparseExactMatrix, p: u64) -> Result<usize, Error> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "{p} is not a prime below 2^31"
        )));
    }
    let rows = reduce_rows(m, p)?;
    Ok(rank_of_rows(rows, m.cols(), p))
}

/// Rank of a matrix already reduced mod `p`, given as sparse rows of
/// `(col, residue)` with residues in `1..p`.
pub(crate) fn rank_of_rows(rows: Vec<Vec<(u32, u32)>>, cols: usize, p: u64) -> usize {
    let mut elim = SparseElimination::new(rows, cols, p);
    let sparse_rank = elim.run();
    let (dense_rows, live_cols) = elim.remainder();
    sparse_rank + dense_rank(dense_rows, live_cols, p)
}

fn reduce_rows(m: &SparseExactMatrix, p: u64) -> Result<Vec<Vec<(u32, u32)>>, Error> {
    let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m.rows()];
    let mut inverses: FxHashMap<i64, u64> = FxHashMap::default();
    for (c, col) in m.columns().enumerate() {
        for (r, v) in col {
            let residue = match v.as_small() {
                Some((n, d)) => {
                    let inv = match inverses.get(&d) {
                        Some(&i) => i,
                        None => {
                            let dm = (d as u64) % p;
                            if dm == 0 {
                                return Err(Error::BadPrime { prime: p });
                            }
                            let i = inv_mod(dm, p);
                            inverses.insert(d, i);
                            i
                        }
                    };
                    mul_mod(n.rem_euclid(p as i64) as u64, inv, p)
                }
                None => v.mod_p(p)?,
            };
            if residue != 0 {
                rows[*r as usize].push((c as u32, residue as u32));
            }
        }
    }
    Ok(rows)
}

struct SparseElimination {
    p: u64,
    rows: Vec<Vec<(u32, u32)>>,
    alive: Vec<bool>,
    /// Rows that may contain each column; may hold stale or duplicate ids.
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<u32>,
    col_done: Vec<bool>,
}

impl SparseElimination {
    fn new(rows: Vec<Vec<(u32, u32)>>, cols: usize, p: u64) -> Self {
        let mut col_rows = vec![Vec::new(); cols];
        let mut col_count = vec![0u32; cols];
        for (i, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(i as u32);
                col_count[c as usize] += 1;
            }
        }
        let alive = rows.iter().map(|r| !r.is_empty()).collect();
        SparseElimination { p, rows, alive, col_rows, col_count, col_done: vec![false; cols] }
    }

    fn value_at(&self, row: usize, col: u32) -> Option<u32> {
        let r = &self.rows[row];
        r.binary_search_by_key(&col, |e| e.0).ok().map(|k| r[k].1)
    }

    fn run(&mut self) -> usize {
        let mut rank = 0;
        loop {
            let Some(col) = (0..self.col_count.len())
                .filter(|&c| !self.col_done[c] && self.col_count[c] > 0)
                .min_by_key(|&c| self.col_count[c])
            else {
                break;
            };
            let mut cands = std::mem::take(&mut self.col_rows[col]);
            cands.sort_unstable();
            cands.dedup();
            cands.retain(|&r| self.alive[r as usize] && self.value_at(r as usize, col as u32).is_some());
            debug_assert_eq!(cands.len(), self.col_count[col] as usize);
            let pivot = *cands.iter().min_by_key(|&&r| self.rows[r as usize].len()).unwrap();
            let cost = (self.rows[pivot as usize].len() as u64 - 1) * (cands.len() as u64 - 1);
            if cost > MARKOWITZ_LIMIT {
                self.col_rows[col] = cands;
                break;
            }
            let pivot_row = std::mem::take(&mut self.rows[pivot as usize]);
            self.alive[pivot as usize] = false;
            let pv = self.value_at_in(&pivot_row, col as u32);
            let inv = inv_mod(pv as u64, self.p);
            for &other in cands.iter().filter(|&&r| r != pivot) {
                let ov = self.value_at(other as usize, col as u32).unwrap();
                let factor = mul_mod(ov as u64, inv, self.p);
                self.eliminate(other as usize, &pivot_row, factor);
            }
            for &(c, _) in &pivot_row {
                self.col_count[c as usize] -= 1;
            }
            debug_assert_eq!(self.col_count[col], 0);
            self.col_done[col] = true;
            rank += 1;
        }
        rank
    }

    fn value_at_in(&self, row: &[(u32, u32)], col: u32) -> u32 {
        row[row.binary_search_by_key(&col, |e| e.0).unwrap()].1
    }

    /// `rows[target] -= factor * pivot_row`, keeping column bookkeeping exact.
    fn eliminate(&mut self, target: usize, pivot_row: &[(u32, u32)], factor: u64) {
        let p = self.p;
        let old = std::mem::take(&mut self.rows[target]);
        let mut out = Vec::with_capacity(old.len() + pivot_row.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < pivot_row.len() {
            let take_old = j == pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
            let take_piv = i == old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
            if take_old {
                out.push(old[i]);
                i += 1;
            } else if take_piv {
                let (c, v) = pivot_row[j];
                let nv = (p - mul_mod(factor, v as u64, p)) % p;
                if nv != 0 {
                    out.push((c, nv as u32));
                    self.col_count[c as usize] += 1;
                    self.col_rows[c as usize].push(target as u32);
                }
                j += 1;
            } else {
                let (c, a) = old[i];
                let v = pivot_row[j].1;
                let nv = (a as u64 + p - mul_mod(factor, v as u64, p)) % p;
                if nv != 0 {
                    out.push((c, nv as u32));
                } else {
                    self.col_count[c as usize] -= 1;
                }
                i += 1;
                j += 1;
            }
        }
        if out.is_empty() {
            self.alive[target] = false;
        }
        self.rows[target] = out;
    }

    /// Live rows re-indexed onto the live columns.
    fn remainder(self) -> (Vec<Vec<(u32, u32)>>, usize) {
        let mut map = vec![u32::MAX; self.col_count.len()];
        let mut live = 0u32;
        for c in 0..self.col_count.len() {
            if !self.col_done[c] && self.col_count[c] > 0 {
                map[c] = live;
                live += 1;
            }
        }
        let rows = self
            .rows
            .into_iter()
            .zip(self.alive)
            .filter(|(r, alive)| *alive && !r.is_empty())
            .map(|(r, _)| r.into_iter().map(|(c, v)| (map[c as usize], v)).collect())
            .collect();
        (rows, live as usize)
    }
}

fn dense_rank(mut rows: Vec<Vec<(u32, u32)>>, cols: usize, p: u64) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    rows.shuffle(&mut ChaCha8Rng::seed_from_u64(SHUFFLE_SEED));
    if p < FLOAT_KERNEL_BOUND {
        let mut basis = FloatEchelon::new(cols, p);
        for chunk in rows.chunks(BATCH) {
            basis.insert_batch(chunk);
            if basis.rank() == cols {
                break;
            }
        }
        basis.rank()
    } else {
        let mut basis = IntEchelon::new(cols, p);
        for row in &rows {
            basis.insert(row);
            if basis.rank() == cols {
                break;
            }
        }
        basis.rank()
    }
}

/// Echelon basis over `Z/pZ` with residues stored as exact `f64`s.
///
/// Each basis row has a unit at its pivot column and zeros at the pivot
/// columns of every earlier basis row, so an incoming row is reduced by a
/// single pass over the basis in insertion order.
struct FloatEchelon {
    cols: usize,
    p: f64,
    pinv: f64,
    pu: u64,
    basis: Vec<Vec<f64>>,
    pivots: Vec<usize>,
}

/// 1.5 * 2^52: adding and subtracting rounds to the nearest integer.
const ROUND_MAGIC: f64 = 6_755_399_441_055_744.0;

impl FloatEchelon {
    fn new(cols: usize, p: u64) -> Self {
        FloatEchelon {
            cols,
            p: p as f64,
            pinv: 1.0 / p as f64,
            pu: p,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    fn reduce(&self, x: f64) -> f64 {
        let q = (x * self.pinv + ROUND_MAGIC) - ROUND_MAGIC;
        x - q * self.p
    }

    /// Fully reduced representative in `[-p/2, p/2]`.
    #[inline]
    fn canonical(&self, x: f64) -> f64 {
        let mut r = self.reduce(x);
        let half = self.p * 0.5;
        if r > half {
            r -= self.p;
        } else if r < -half {
            r += self.p;
        }
        r
    }

    fn reduce_row(&self, row: &mut [f64]) {
        let (p, pinv) = (self.p, self.pinv);
        for x in row.iter_mut() {
            let q = (*x * pinv + ROUND_MAGIC) - ROUND_MAGIC;
            *x -= q * p;
        }
    }

    fn to_u64(&self, x: f64) -> u64 {
        (x as i64).rem_euclid(self.pu as i64) as u64
    }

    fn from_u64(&self, v: u64) -> f64 {
        let v = v as f64;
        if v > self.p * 0.5 {
            v - self.p
        } else {
            v
        }
    }

    fn insert_batch(&mut self, batch: &[Vec<(u32, u32)>]) {
        let mut dense: Vec<Vec<f64>> = batch
            .iter()
            .map(|r| {
                let mut d = vec![0.0; self.cols];
                for &(c, v) in r {
                    d[c as usize] = self.from_u64(v as u64);
                }
                d
            })
            .collect();
        let mut pending = vec![0u32; dense.len()];
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            for (row, count) in dense.iter_mut().zip(pending.iter_mut()) {
                let f = {
                    let x = row[pc];
                    let q = (x * self.pinv + ROUND_MAGIC) - ROUND_MAGIC;
                    let mut r = x - q * self.p;
                    let half = self.p * 0.5;
                    if r > half {
                        r -= self.p;
                    } else if r < -half {
                        r += self.p;
                    }
                    r
                };
                if f == 0.0 {
                    row[pc] = 0.0;
                    continue;
                }
                axpy(row, f, b);
                row[pc] = 0.0;
                *count += 1;
                if *count == LAZY_UPDATES {
                    let (p, pinv) = (self.p, self.pinv);
                    for x in row.iter_mut() {
                        let q = (*x * pinv + ROUND_MAGIC) - ROUND_MAGIC;
                        *x -= q * p;
                    }
                    *count = 0;
                }
            }
        }
        for t in 0..dense.len() {
            let mut row = std::mem::take(&mut dense[t]);
            for x in row.iter_mut() {
                *x = self.canonical(*x);
            }
            let Some(pc) = row.iter().position(|&x| x != 0.0) else {
                continue;
            };
            let inv = inv_mod(self.to_u64(row[pc]), self.pu);
            let inv_f = self.from_u64(inv);
            for x in row.iter_mut() {
                *x = self.canonical(*x * inv_f);
            }
            for later in dense.iter_mut().skip(t + 1) {
                let f = self.canonical(later[pc]);
                if f != 0.0 {
                    axpy(later, f, &row);
                    self.reduce_row(later);
                }
                later[pc] = 0.0;
            }
            self.basis.push(row);
            self.pivots.push(pc);
            if self.basis.len() == self.cols {
                return;
            }
        }
    }
}

#[inline]
fn axpy(row: &mut [f64], f: f64, b: &[f64]) {
    for (x, y) in row.iter_mut().zip(b) {
        *x -= f * *y;
    }
}

struct IntEchelon {
    cols: usize,
    p: u64,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    fn new(cols: usize, p: u64) -> Self {
        IntEchelon { cols, p, basis: Vec::new(), pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn insert(&mut self, sparse: &[(u32, u32)]) {
        let p = self.p;
        let mut row = vec![0u64; self.cols];
        for &(c, v) in sparse {
            row[c as usize] = v as u64;
        }
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            let nf = p - f;
            for (x, y) in row.iter_mut().zip(b) {
                *x = (*x + nf * *y) % p;
            }
        }
        if let Some(pc) = row.iter().position(|&x| x != 0) {
            let inv = inv_mod(row[pc], p);
            for x in row.iter_mut() {
                *x = *x * inv % p;
            }
            self.basis.push(row);
            self.pivots.push(pc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rational;

    fn int_matrix(rows: &[&[i64]]) -> SparseExactMatrix {
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r, c, Rational::from_integer(v)))
        });
        SparseExactMatrix::from_triplets(rows.len(), rows[0].len(), triplets).unwrap()
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(10007) && is_prime(2_147_483_647));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(1_000_000_007 * 3));
        let ps = default_primes();
        assert_eq!(ps.len(), 3);
        assert!(ps.iter().all(|&p| p < 1 << 25 && is_prime(p)));
    }

    #[test]
    fn identity_and_proportional_rows() {
        assert_eq!(rank_mod_p(&SparseExactMatrix::identity(5), 7).unwrap(), 5);
        assert_eq!(rank_mod_p(&int_matrix(&[&[1, 2], &[2, 4]]), 101).unwrap(), 1);
    }

    #[test]
    fn rank_drops_when_prime_divides_a_minor() {
        // det = 6
        let m = int_matrix(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 2);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 2_147_483_647).unwrap(), 2);
    }

    #[test]
    fn rejects_composites_and_bad_denominators() {
        assert!(matches!(rank_mod_p(&SparseExactMatrix::identity(2), 9), Err(Error::InvalidArgument(_))));
        let m = SparseExactMatrix::from_triplets(1, 1, vec![(0, 0, Rational::new(1, 7))]).unwrap();
        assert!(matches!(rank_mod_p(&m, 7), Err(Error::BadPrime { prime: 7 })));
    }

    #[test]
    fn dense_kernels_agree_on_a_dense_matrix() {
        // Hilbert-like integer matrix forces the dense phase.
        let n = 40;
        let rows: Vec<Vec<(u32, u32)>> = (0..n)
            .map(|i| (0..n).map(|j| (j as u32, ((i * j + i + 3 * j) % 97 + 1) as u32)).collect())
            .collect();
        let small = dense_rank(rows.clone(), n, 33_554_393);
        let large = dense_rank(rows, n, 2_147_483_647);
        assert_eq!(small, large);
    }
}
