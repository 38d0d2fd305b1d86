use num_bigint::BigInt;
use num_traits::Zero;

use super::{Rational, SparseExactMatrix, SparseVector};
use crate::Error;

/// Limits for dense fraction-free elimination.
#[derive(Clone, Copy, Debug)]
pub struct ExactLimits {
    /// Largest `rows * cols` accepted for dense elimination.
    pub max_cells: usize,
    /// Abort when an intermediate entry exceeds this many bits.
    pub max_entry_bits: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_cells: 1 << 20, max_entry_bits: 4096 }
    }
}

/// Row echelon form computed by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn bareiss(m: &SparseExactMatrix, limits: ExactLimits) -> Result<Echelon, Error> {
    let (nr, nc) = (m.rows(), m.cols());
    if nr.saturating_mul(nc) > limits.max_cells {
        return Err(Error::ResourceLimit(format!(
            "exact elimination of a {nr}x{nc} matrix exceeds {} cells",
            limits.max_cells
        )));
    }
    let mut a = vec![vec![BigInt::zero(); nc]; nr];
    for (c, col) in m.integer_columns().into_iter().enumerate() {
        for (r, v) in col {
            a[r as usize][c] = v;
        }
    }
    let mut prev = BigInt::from(1);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(k) = (r..nr).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..nc {
                let v = pv * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                let v = v / &prev;
                if v.bits() > limits.max_entry_bits {
                    return Err(Error::ResourceLimit(format!(
                        "intermediate entry exceeds {} bits",
                        limits.max_entry_bits
                    )));
                }
                row[j] = v;
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Ok(Echelon { rows: a, pivots })
}

/// Rank over the rationals using default limits.
pub fn rank_exact(m: &SparseExactMatrix) -> Result<usize, Error> {
    rank_exact_with(m, ExactLimits::default())
}

pub fn rank_exact_with(m: &SparseExactMatrix, limits: ExactLimits) -> Result<usize, Error> {
    Ok(bareiss(m, limits)?.pivots.len())
}

/// A basis of the right kernel `{v : m v = 0}` over the rationals.
///
/// One vector per non-pivot column `f`, normalized so that `v[f] = 1` and
/// `v` vanishes on every other non-pivot column.
pub fn kernel_basis_exact(m: &SparseExactMatrix) -> Result<Vec<SparseVector>, Error> {
    kernel_basis_exact_with(m, ExactLimits::default())
}

pub fn kernel_basis_exact_with(
    m: &SparseExactMatrix,
    limits: ExactLimits,
) -> Result<Vec<SparseVector>, Error> {
    let nc = m.cols();
    let ech = bareiss(m, limits)?;
    // Column scaling from integer_columns must be undone on the solution.
    let scales: Vec<Rational> = m
        .columns()
        .map(|col| {
            let lcm = col.iter().fold(BigInt::from(1), |l, (_, v)| {
                num_integer::Integer::lcm(&l, &v.denom())
            });
            Rational::from(lcm)
        })
        .collect();
    let mut is_pivot = vec![false; nc];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..nc).filter(|&c| !is_pivot[c]) {
        // Solve U x = 0 with x[free] = 1 in the scaled coordinates.
        let mut x = vec![Rational::zero(); nc];
        x[free] = Rational::one();
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots).rev() {
            let mut s = Rational::zero();
            for j in pc + 1..nc {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += &(&Rational::from(row[j].clone()) * &x[j]);
                }
            }
            x[pc] = -(&s / &Rational::from(row[pc].clone()));
        }
        let entries = x
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, &v * &scales[j]));
        let mut v = SparseVector::from_entries(nc, entries);
        // Normalize the free coordinate back to one.
        let lead = v.get(free);
        v = v.scale(&lead.recip());
        basis.push(v);
    }
    Ok(basis)
}

/// Exact check that `m v = 0`.
pub fn annihilates(m: &SparseExactMatrix, v: &SparseVector) -> Result<bool, Error> {
    Ok(m.apply(v)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> SparseExactMatrix {
        let triplets = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, &v)| (r, c, Rational::from_integer(v)))
        });
        SparseExactMatrix::from_triplets(rows.len(), rows[0].len(), triplets).unwrap()
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let m = SparseExactMatrix::zeros(3, 3);
        assert_eq!(rank_exact(&m).unwrap(), 0);
        let k = kernel_basis_exact(&m).unwrap();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            assert_eq!(v.entries, vec![(i, Rational::one())]);
        }
    }

    #[test]
    fn upper_triangular_is_full_rank() {
        let m = int_matrix(&[&[1, 1], &[0, 1]]);
        assert_eq!(rank_exact(&m).unwrap(), 2);
        assert!(kernel_basis_exact(&m).unwrap().is_empty());
    }

    #[test]
    fn kernel_with_rational_entries() {
        let m = SparseExactMatrix::from_triplets(
            2,
            3,
            vec![
                (0, 0, Rational::new(1, 2)),
                (0, 1, Rational::new(1, 3)),
                (1, 2, Rational::from_integer(5)),
                (1, 0, Rational::new(2, 7)),
            ],
        )
        .unwrap();
        assert_eq!(rank_exact(&m).unwrap(), 2);
        let k = kernel_basis_exact(&m).unwrap();
        assert_eq!(k.len(), 1);
        assert!(annihilates(&m, &k[0]).unwrap());
    }

    #[test]
    fn entry_growth_limit_is_enforced() {
        let m = int_matrix(&[&[3, 5, 7], &[11, 13, 17], &[19, 23, 31]]);
        let tight = ExactLimits { max_cells: 100, max_entry_bits: 4 };
        assert!(matches!(rank_exact_with(&m, tight), Err(Error::ResourceLimit(_))));
        let small = ExactLimits { max_cells: 4, max_entry_bits: 4096 };
        assert!(matches!(rank_exact_with(&m, small), Err(Error::ResourceLimit(_))));
    }
}
