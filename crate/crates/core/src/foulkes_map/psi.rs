use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};

use crate::combinatorics::{factorial, permutations, BlockSetPartition, WeakComposition};
use crate::exactla::{Rational, SparseExactMatrix, SparseVector};
use crate::tensorspace::{phi, weight_basis, OrbitSumBasis, WeightBasis};
use crate::{Error, DEFAULT_PSI_LIMIT};

/// Matrix of `psi_{a x b}` from `S_a` orbit sums of the `(a x b, empty)`
/// weight space to `S_b` orbit sums of the `(empty, b x a)` weight space.
/// Columns follow `enumerate_block_partitions(a, b)`, rows follow
/// `enumerate_block_partitions(b, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMatrix {
    pub a: usize,
    pub b: usize,
    pub matrix: SparseExactMatrix,
}

impl PsiMatrix {
    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// The raising operators of `phi_{a x b}` in the order of the defining
/// product `phi_{1,1} o phi_{1,2} o ... o phi_{a,b}` (leftmost first).
pub fn defining_chain(a: usize, b: usize) -> Vec<(usize, usize)> {
    (1..=a).flat_map(|i| (1..=b).map(move |j| (i, j))).collect()
}

pub(crate) fn check_shape(a: usize, b: usize, limit: usize) -> Result<(), Error> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(format!("need a, b >= 1, got {a}x{b}")));
    }
    if a * b > limit {
        return Err(Error::ResourceLimit(format!("ab = {} exceeds the limit {limit}", a * b)));
    }
    Ok(())
}

pub(crate) fn rect(a: usize, b: usize) -> WeakComposition {
    WeakComposition::constant(a, b)
}

/// `psi_{a x b}` by applying the raising operators of the defining product
/// to each orbit-sum column, then rewriting the image in `S_b` orbit sums.
/// The rewrite fails with [`Error::Inconsistent`] if some image is not
/// `S_b`-invariant.
pub fn psi_composed(a: usize, b: usize) -> Result<PsiMatrix, Error> {
    psi_composed_with_limit(a, b, DEFAULT_PSI_LIMIT)
}

pub fn psi_composed_with_limit(a: usize, b: usize, limit: usize) -> Result<PsiMatrix, Error> {
    check_shape(a, b, limit)?;
    let domain = OrbitSumBasis::sa_orbits(a, b)?;
    let codomain = OrbitSumBasis::sb_orbits(a, b)?;
    let chain = defining_chain(a, b);
    let mut columns = Vec::with_capacity(domain.len());
    for idx in 0..domain.len() {
        let image = domain.orbit_vector(idx).apply_chain(&chain)?;
        columns.push(to_column(codomain.express(&image)?));
    }
    let matrix = SparseExactMatrix::from_columns(codomain.len(), columns)?;
    Ok(PsiMatrix { a, b, matrix })
}

pub(crate) fn to_column(v: SparseVector) -> Vec<(u32, Rational)> {
    v.entries.into_iter().map(|(i, x)| (i as u32, x)).collect()
}

/// Largest `ab` for which [`psi_composed_via_matrices`] materializes the
/// intermediate weight spaces.
pub const MATRIX_ROUTE_LIMIT: usize = 9;

/// `psi_{a x b}` as an explicit product of the full `phi_{i,j}` matrices
/// with the orbit-sum inclusion matrix, for small `ab`.
pub fn psi_composed_via_matrices(a: usize, b: usize) -> Result<PsiMatrix, Error> {
    check_shape(a, b, MATRIX_ROUTE_LIMIT)?;
    let d = a * b;
    let domain = OrbitSumBasis::sa_orbits(a, b)?;
    let codomain = OrbitSumBasis::sb_orbits(a, b)?;
    let mut basis = weight_basis(d, &rect(a, b), &WeakComposition::zeros(b))?;
    let inclusion = (0..domain.len())
        .map(|idx| domain.orbit_sparse(idx, &basis).map(to_column))
        .collect::<Result<Vec<_>, _>>()?;
    let mut product = SparseExactMatrix::from_columns(basis.len(), inclusion)?;
    for &(i, j) in defining_chain(a, b).iter().rev() {
        let step = phi(i, j, &basis)?;
        product = step.matrix.matmul(&product)?;
        basis = step.target;
    }
    let columns = (0..product.cols())
        .map(|c| express_rational(&codomain, &basis, &product.column_vector(c)).map(to_column))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = SparseExactMatrix::from_columns(codomain.len(), columns)?;
    Ok(PsiMatrix { a, b, matrix })
}

/// Rewrites a vector over `basis` in the orbit sums of `orbits`, checking
/// invariance as [`OrbitSumBasis::express`] does.
pub fn express_rational(
    orbits: &OrbitSumBasis,
    basis: &WeightBasis,
    v: &SparseVector,
) -> Result<SparseVector, Error> {
    let mut seen: std::collections::BTreeMap<BlockSetPartition, (Rational, usize)> = Default::default();
    for (idx, x) in &v.entries {
        let w = basis.words()[*idx];
        let p = orbits
            .classify(w)
            .ok_or_else(|| Error::Inconsistent(format!("{w} lies outside the invariant space")))?;
        let slot = seen.entry(p).or_insert((x.clone(), 0));
        if &slot.0 != x {
            return Err(Error::Inconsistent(format!("orbit {p:?} carries unequal coefficients")));
        }
        slot.1 += 1;
    }
    let mut entries = Vec::with_capacity(seen.len());
    for (p, (x, count)) in seen {
        if count != orbits.orbit_size() {
            return Err(Error::Inconsistent(format!("orbit {p:?} only partly present")));
        }
        entries.push((orbits.index_of(&p).expect("classified"), x));
    }
    Ok(SparseVector::from_entries(orbits.len(), entries))
}

/// `a! / (ab)^(ab)`, the common value of every nonzero entry of `psi_{a x b}`.
pub fn psi_entry(a: usize, b: usize) -> Rational {
    let d = a * b;
    let den = BigInt::from(d).pow(d as u32);
    let num = BigInt::from(factorial(a));
    match (num.to_i64(), den.to_i64()) {
        (Some(n), Some(m)) => Rational::new(n, m),
        _ => Rational::from_bigints(num, den),
    }
}

/// `psi_{a x b}` from its closed form: the orbit sum of `R` (blocks of size
/// `a`) appears in the image of `P` (blocks of size `b`) with coefficient
/// `a! (ab)^(-ab)` exactly when every block of `R` meets every block of `P`
/// once, and not at all otherwise.
pub fn psi_fused(a: usize, b: usize) -> Result<PsiMatrix, Error> {
    psi_fused_with_limit(a, b, DEFAULT_PSI_LIMIT)
}

pub fn psi_fused_with_limit(a: usize, b: usize, limit: usize) -> Result<PsiMatrix, Error> {
    check_shape(a, b, limit)?;
    let domain = OrbitSumBasis::sa_orbits(a, b)?;
    let codomain = OrbitSumBasis::sb_orbits(a, b)?;
    let entry = psi_entry(a, b);
    let perms = permutations(b);
    let n = a * b;
    let mut columns = Vec::with_capacity(domain.len());
    let mut choice = vec![0usize; a];
    for p in &domain.elements {
        let blocks = p.blocks();
        let mut rows: Vec<u32> = Vec::new();
        // Block 1 fixes the labelling of the transversals; the remaining
        // blocks each pick a bijection onto them.
        loop {
            let mut labels = [0u8; 16];
            for (k, block) in blocks.iter().enumerate() {
                let sigma = &perms[choice[k]];
                for (t, &x) in block.iter().enumerate() {
                    labels[x - 1] = sigma[t] as u8 + 1;
                }
            }
            let r = BlockSetPartition::from_labels(&labels[..n])?;
            rows.push(codomain.index_of(&r).expect("transversal systems are codomain elements") as u32);
            let mut k = a;
            loop {
                if k == 1 {
                    break;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < perms.len() {
                    break;
                }
                choice[k] = 0;
            }
            if choice[1..].iter().all(|&c| c == 0) {
                break;
            }
        }
        rows.sort_unstable();
        if rows.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Inconsistent(format!("repeated transversal system for {p:?}")));
        }
        columns.push(rows.into_iter().map(|r| (r, entry.clone())).collect());
    }
    let matrix = SparseExactMatrix::from_columns(codomain.len(), columns)?;
    Ok(PsiMatrix { a, b, matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::block_partition_count;
    use crate::exactla::{rank_exact, rank_mod_p};

    #[test]
    fn single_row_cases() {
        for b in 1..=6 {
            let psi = psi_composed(1, b).unwrap();
            assert_eq!((psi.codomain_dim(), psi.domain_dim()), (1, 1));
            assert_eq!(psi.matrix.nnz(), 1);
            assert_eq!(psi, psi_fused(1, b).unwrap());
        }
        assert_eq!(psi_fused(1, 1).unwrap().matrix.to_dense(), vec![vec![Rational::one()]]);
    }

    #[test]
    fn small_ranks() {
        let psi = psi_composed(2, 2).unwrap();
        assert_eq!((psi.codomain_dim(), psi.domain_dim()), (3, 3));
        assert_eq!(rank_exact(&psi.matrix).unwrap(), 3);
        let psi = psi_composed(2, 3).unwrap();
        assert_eq!((psi.codomain_dim(), psi.domain_dim()), (15, 10));
        assert_eq!(rank_exact(&psi.matrix).unwrap(), 10);
    }

    #[test]
    fn routes_agree() {
        for (a, b) in [(1, 3), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2)] {
            let vec_route = psi_composed(a, b).unwrap();
            assert_eq!(vec_route, psi_composed_via_matrices(a, b).unwrap(), "{a}x{b}");
            assert_eq!(vec_route, psi_fused(a, b).unwrap(), "{a}x{b}");
        }
    }

    #[test]
    fn fused_dimensions_and_column_counts() {
        for (a, b) in [(2, 5), (3, 4), (4, 3), (2, 6), (6, 2)] {
            let psi = psi_fused(a, b).unwrap();
            assert_eq!(psi.domain_dim(), block_partition_count(a, b).to_usize().unwrap());
            assert_eq!(psi.codomain_dim(), block_partition_count(b, a).to_usize().unwrap());
            let per_column = (1..=b).product::<usize>().pow(a as u32 - 1);
            assert!(psi.matrix.columns().all(|c| c.len() == per_column));
        }
    }

    #[test]
    fn rank_of_three_by_three() {
        let psi = psi_fused(3, 3).unwrap();
        assert_eq!(rank_mod_p(&psi.matrix, 10007).unwrap(), 280);
        assert_eq!(rank_exact(&psi.matrix).unwrap(), 280);
    }

    #[test]
    fn limits() {
        assert!(matches!(psi_composed(4, 4), Err(Error::ResourceLimit(_))));
        assert!(matches!(psi_composed_via_matrices(2, 5), Err(Error::ResourceLimit(_))));
        assert!(psi_fused(0, 3).is_err());
    }
}
