use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{check_size, multiplicity_vector, to_usize, MultiplicityVector};
use crate::combinatorics::{dim_irrep_gl, dim_irrep_sym, partitions_of, Partition};
use crate::exactla::{certify_injective_with, CertifyOptions};
use crate::foulkes_map::{monomial_multiset_basis, psi_fused, psi_poly, PsiMatrix};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub lambda: Partition,
    /// Multiplicity in `Sym^a(Sym^b)`.
    pub left: u64,
    /// Multiplicity in `Sym^b(Sym^a)`.
    pub right: u64,
}

/// Side-by-side multiplicities of `Sym^a(Sym^b)` and `Sym^b(Sym^a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityComparison {
    pub a: usize,
    pub b: usize,
    pub rows: Vec<ComparisonRow>,
    /// Partitions where the expected relation fails.
    pub violations: Vec<Partition>,
}

impl MultiplicityComparison {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn row(&self, lambda: &Partition) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| &r.lambda == lambda)
    }
}

fn compare(
    left: &MultiplicityVector,
    right: &MultiplicityVector,
    a: usize,
    b: usize,
    keep: impl Fn(&Partition) -> bool,
    ok: impl Fn(u64, u64) -> bool,
) -> Result<MultiplicityComparison, Error> {
    if left.n != a * b || right.n != a * b {
        return Err(Error::InvalidArgument(format!("multiplicity vectors are not for degree {}", a * b)));
    }
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for lambda in partitions_of(a * b, None).into_iter().filter(|l| keep(l)) {
        let (l, r) = (to_usize(&left.get(&lambda)) as u64, to_usize(&right.get(&lambda)) as u64);
        if !ok(l, r) {
            violations.push(lambda.clone());
        }
        rows.push(ComparisonRow { lambda, left: l, right: r });
    }
    Ok(MultiplicityComparison { a, b, rows, violations })
}

/// Compares the multiplicities of every `{lambda}`, `|lambda| = ab`, in
/// `Sym^a(Sym^b)` and `Sym^b(Sym^a)`; a violation is a partition where the
/// first exceeds the second.
pub fn foulkes_check(a: usize, b: usize) -> Result<MultiplicityComparison, Error> {
    check_size(a, b)?;
    if a > b {
        return Err(Error::InvalidArgument(format!("need a <= b, got {a}x{b}")));
    }
    foulkes_compare(a, b, &multiplicity_vector(a, b)?, &multiplicity_vector(b, a)?)
}

/// [`foulkes_check`] on precomputed vectors for `Sym^a(Sym^b)` and `Sym^b(Sym^a)`.
pub fn foulkes_compare(
    a: usize,
    b: usize,
    left: &MultiplicityVector,
    right: &MultiplicityVector,
) -> Result<MultiplicityComparison, Error> {
    if a > b {
        return Err(Error::InvalidArgument(format!("need a <= b, got {a}x{b}")));
    }
    compare(left, right, a, b, |_| true, |l, r| l <= r)
}

/// Same comparison restricted to partitions with at most two parts, where
/// the two multiplicities must be equal.
pub fn hermite_check(a: usize, b: usize) -> Result<MultiplicityComparison, Error> {
    check_size(a, b)?;
    hermite_compare(a, b, &multiplicity_vector(a, b)?, &multiplicity_vector(b, a)?)
}

pub fn hermite_compare(
    a: usize,
    b: usize,
    left: &MultiplicityVector,
    right: &MultiplicityVector,
) -> Result<MultiplicityComparison, Error> {
    compare(left, right, a, b, |l| l.length() <= 2, |l, r| l == r)
}

/// Compares the kernel of `psi_{a x b}` with the multiplicities and with the
/// kernel of the polynomial-side map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub a: usize,
    pub b: usize,
    /// Number of columns of `psi`.
    pub domain_dim: usize,
    /// Rank of `psi` (a modular lower bound when no certificate was found).
    pub psi_rank: usize,
    pub psi_rank_certified: bool,
    /// `sum_lambda max(0, m_{a,b}(lambda) - m_{b,a}(lambda)) f^lambda`,
    /// a lower bound for the kernel dimension of `psi`.
    pub kernel_lower_bound: usize,
    /// Variables used for the polynomial-side map (`ab` when feasible).
    pub poly_variables: usize,
    pub poly_domain_dim: usize,
    pub poly_rank: usize,
    pub poly_rank_certified: bool,
    /// The same bound over partitions with at most `poly_variables` parts,
    /// weighted by `GL_n` dimensions: a lower bound for the polynomial-side kernel.
    pub poly_kernel_lower_bound: usize,
    pub consistent: bool,
}

impl KernelReport {
    pub fn psi_kernel_dim(&self) -> usize {
        self.domain_dim - self.psi_rank
    }

    pub fn poly_kernel_dim(&self) -> usize {
        self.poly_domain_dim - self.poly_rank
    }
}

/// Largest dimension on either side of the polynomial-side map used by
/// [`kernel_consistency`]; the number of variables is lowered from `ab`
/// until both fit.
pub const KERNEL_POLY_DIM_BUDGET: usize = 20_000;

pub fn kernel_consistency(a: usize, b: usize) -> Result<KernelReport, Error> {
    check_size(a, b)?;
    let psi = psi_fused(a, b)?;
    kernel_consistency_with(&psi, &CertifyOptions::default())
}

/// Largest `n <= ab` for which both sides of the polynomial-side map fit the budget.
pub fn feasible_poly_variables(a: usize, b: usize) -> usize {
    (1..=a * b)
        .rev()
        .find(|&n| {
            monomial_multiset_basis(a, b, n, KERNEL_POLY_DIM_BUDGET).is_ok()
                && monomial_multiset_basis(b, a, n, KERNEL_POLY_DIM_BUDGET).is_ok()
        })
        .expect("one variable always fits")
}

/// [`kernel_consistency`] for an already assembled `psi`.
pub fn kernel_consistency_with(psi: &PsiMatrix, opts: &CertifyOptions) -> Result<KernelReport, Error> {
    kernel_consistency_at(psi, feasible_poly_variables(psi.a, psi.b), opts)
}

/// Kernel comparison with the polynomial side taken in `n` variables.
///
/// With fewer than `ab` variables only partitions with at most `n` parts
/// are seen, so the bound on that side is restricted accordingly, and
/// injectivity of `psi` still forces injectivity there.
pub fn kernel_consistency_at(psi: &PsiMatrix, n: usize, opts: &CertifyOptions) -> Result<KernelReport, Error> {
    let (a, b) = (psi.a, psi.b);
    check_size(a, b)?;
    if n == 0 || n > a * b {
        return Err(Error::InvalidArgument(format!("variable count {n} must lie in 1..={}", a * b)));
    }
    let left = multiplicity_vector(a, b)?;
    let right = multiplicity_vector(b, a)?;
    let mut kernel_lower_bound = BigUint::default();
    let mut poly_kernel_lower_bound = BigUint::default();
    for (lambda, m) in &left.mults {
        let other = right.get(lambda);
        if m > &other {
            kernel_lower_bound += (m - &other) * dim_irrep_sym(lambda);
            poly_kernel_lower_bound += (m - &other) * dim_irrep_gl(lambda, n);
        }
    }
    let kernel_lower_bound = to_usize(&kernel_lower_bound);
    let poly_kernel_lower_bound = to_usize(&poly_kernel_lower_bound);

    let cert = certify_injective_with(&psi.matrix, opts)?;
    let poly = psi_poly(a, b, n)?;
    let poly_cert = certify_injective_with(&poly, opts)?;

    // The multiplicity bounds cap both ranks; an injective psi forces an
    // injective polynomial-side map, and at n = ab the converse holds too.
    let consistent = psi.domain_dim() - cert.rank >= kernel_lower_bound
        && poly.cols() - poly_cert.rank >= poly_kernel_lower_bound
        && (!cert.injective || (kernel_lower_bound == 0 && poly_cert.injective))
        && (n != a * b || cert.injective == poly_cert.injective);
    Ok(KernelReport {
        a,
        b,
        domain_dim: psi.domain_dim(),
        psi_rank: cert.rank,
        psi_rank_certified: cert.injective,
        kernel_lower_bound,
        poly_variables: n,
        poly_domain_dim: poly.cols(),
        poly_rank: poly_cert.rank,
        poly_rank_certified: poly_cert.injective,
        poly_kernel_lower_bound,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn square_case_is_equality() {
        for a in 1..=3 {
            let r = foulkes_check(a, a).unwrap();
            assert!(r.holds());
            assert!(r.rows.iter().all(|row| row.left == row.right));
        }
    }

    #[test]
    fn two_by_three() {
        let r = foulkes_check(2, 3).unwrap();
        assert!(r.holds());
        assert_eq!(r.rows.len(), 11);
        let row = r.row(&p("2,2,2")).unwrap();
        assert_eq!((row.left, row.right), (0, 1));
        let unequal: Vec<_> = r.rows.iter().filter(|row| row.left != row.right).map(|row| &row.lambda).collect();
        assert_eq!(unequal, vec![&p("2,2,2")]);
        assert!(matches!(foulkes_check(3, 2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn hermite_examples() {
        let r = hermite_check(2, 3).unwrap();
        assert!(r.holds());
        let row = r.row(&p("4,2")).unwrap();
        assert_eq!((row.left, row.right), (1, 1));
        let row = r.row(&p("6")).unwrap();
        assert_eq!((row.left, row.right), (1, 1));
        assert!(hermite_check(2, 5).unwrap().holds());
        assert!(hermite_check(5, 2).unwrap().holds());
    }

    #[test]
    fn kernels_are_zero_in_small_cases() {
        for (a, b) in [(1, 3), (2, 2), (2, 3), (3, 3)] {
            let r = kernel_consistency(a, b).unwrap();
            assert!(r.consistent, "{r:?}");
            assert_eq!((r.psi_kernel_dim(), r.kernel_lower_bound), (0, 0), "{a}x{b}");
        }
        let r = kernel_consistency(2, 3).unwrap();
        assert_eq!((r.poly_variables, r.poly_kernel_dim()), (6, 0));
    }

    #[test]
    fn kernel_bound_when_a_exceeds_b() {
        // (2,2,2) occurs in Sym^3(Sym^2) but not in Sym^2(Sym^3), so psi_{3x2}
        // goes from a 15- to a 10-dimensional space.
        let r = kernel_consistency(3, 2).unwrap();
        assert_eq!(r.domain_dim, 15);
        assert_eq!(r.kernel_lower_bound, 5);
        assert!(r.consistent);
    }

    #[test]
    fn restricted_variable_count() {
        // In three variables (2,2,2) is a one-dimensional GL_3 module.
        let psi = psi_fused(3, 2).unwrap();
        let r = kernel_consistency_at(&psi, 3, &CertifyOptions::default()).unwrap();
        assert_eq!((r.poly_domain_dim, r.poly_kernel_lower_bound), (56, 1));
        assert!(r.poly_kernel_dim() >= 1);
        assert!(r.consistent);
        // Two variables cannot see three-row shapes.
        let r = kernel_consistency_at(&psi, 2, &CertifyOptions::default()).unwrap();
        assert_eq!(r.poly_kernel_lower_bound, 0);
        assert!(kernel_consistency_at(&psi, 7, &CertifyOptions::default()).is_err());
    }
}
