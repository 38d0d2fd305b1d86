//! Property suites run by `foulkes verify`. Each suite enumerates every case
//! up to a size bound, checks it exactly, and reports counterexamples.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, dim_irrep_sym, kostka, Partition, WeakComposition};
use crate::exactla::{certify_injective, rank_mod_p, Rational, SparseExactMatrix};
use crate::foulkes_map::{
    check_factorization, check_zeta_blocks, defining_chain, left_factor, left_factor_q_blocks, psi_composed,
    psi_fused, right_factor, right_factor_inspect, PsiMatrix,
};
use crate::tensorspace::{phi, wedge_sym_vector, weight_basis, zeta_gl2, OrbitSumBasis, WordVector};
use crate::Error;

/// Counterexamples kept per suite.
const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Commute,
    Invariance,
    Factorization,
    Qsplit,
    Zeta,
    Wedge,
}

impl Claim {
    pub const ALL: [Claim; 6] =
        [Claim::Commute, Claim::Invariance, Claim::Factorization, Claim::Qsplit, Claim::Zeta, Claim::Wedge];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Commute => "commute",
            Claim::Invariance => "invariance",
            Claim::Factorization => "factorization",
            Claim::Qsplit => "qsplit",
            Claim::Zeta => "zeta",
            Claim::Wedge => "wedge",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Claim::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown claim {s:?}")))
    }
}

/// Parses a claim name or `all`.
/// Parses `all`, one claim name, or a comma-separated list of names.
pub fn parse_claims(s: &str) -> Result<Vec<Claim>, Error> {
    if s == "all" {
        return Ok(Claim::ALL.to_vec());
    }
    let mut out: Vec<Claim> = Vec::new();
    for part in s.split(',') {
        let c: Claim = part.trim().parse()?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub max_ab: usize,
    /// Number of individual cases checked.
    pub cases: usize,
    pub passed: bool,
    /// Up to ten failing cases, described in words.
    pub counterexamples: Vec<String>,
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_COUNTEREXAMPLES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self, claim: Claim, max_ab: usize) -> ClaimReport {
        ClaimReport { claim, max_ab, cases: self.cases, passed: self.failed == 0, counterexamples: self.failures }
    }
}

pub fn run_claim(claim: Claim, max_ab: usize) -> Result<ClaimReport, Error> {
    if max_ab == 0 || max_ab > crate::DEFAULT_PSI_LIMIT {
        return Err(Error::ResourceLimit(format!("max-ab must lie in 1..={}", crate::DEFAULT_PSI_LIMIT)));
    }
    let mut t = Tally::default();
    match claim {
        Claim::Commute => commute_suite(max_ab, &mut t)?,
        Claim::Invariance => invariance_suite(max_ab, &mut t)?,
        Claim::Factorization => factorization_suite(max_ab, &mut t)?,
        Claim::Qsplit => qsplit_suite(max_ab, &mut t)?,
        Claim::Zeta => zeta_suite(max_ab, &mut t)?,
        Claim::Wedge => wedge_suite(max_ab, &mut t)?,
    }
    Ok(t.finish(claim, max_ab))
}

/// Pairs `(a, b)`, both at least 1, with `ab <= max_ab`.
fn shapes(max_ab: usize, strict: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=max_ab {
        for b in 1..=max_ab / a {
            if !strict || a < b {
                out.push((a, b));
            }
        }
    }
    out
}

fn weak_compositions(total: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in weak_compositions(total - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `phi_{i',j'} o phi_{i,j}` on the weight space, with its target words.
fn compose_pair(
    basis: &crate::tensorspace::WeightBasis,
    first: (usize, usize),
    second: (usize, usize),
) -> Result<(SparseExactMatrix, Vec<crate::tensorspace::Word>), Error> {
    let p = phi(first.0, first.1, basis)?;
    let q = phi(second.0, second.1, &p.target)?;
    Ok((q.matrix.matmul(&p.matrix)?, q.target.words().to_vec()))
}

/// Every pair of raising operators commutes on every weight space of
/// `(x)^d (C^a + C^b)` with `a + b <= 4` and `d <= max_ab`.
fn commute_suite(max_ab: usize, t: &mut Tally) -> Result<(), Error> {
    for (a, b) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
        let ops: Vec<(usize, usize)> = (1..=a).flat_map(|i| (1..=b).map(move |j| (i, j))).collect();
        for d in 1..=max_ab {
            for split in 0..=d {
                for alpha in weak_compositions(split, a) {
                    for beta in weak_compositions(d - split, b) {
                        let basis =
                            weight_basis(d, &WeakComposition::new(alpha.clone()), &WeakComposition::new(beta.clone()))?;
                        for (k, &x) in ops.iter().enumerate() {
                            for &y in &ops[k + 1..] {
                                let (xy, yx) = (compose_pair(&basis, x, y)?, compose_pair(&basis, y, x)?);
                                // A vanishing product has no well-defined target; both must vanish.
                                let ok = if xy.0.nnz() == 0 || yx.0.nnz() == 0 {
                                    xy.0.nnz() == 0 && yx.0.nnz() == 0
                                } else {
                                    xy == yx
                                };
                                t.record(ok, || {
                                    format!("phi{x:?} and phi{y:?} differ on weight ({alpha:?}, {beta:?})")
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn adjacent_transpositions(k: usize) -> Vec<Vec<usize>> {
    (0..k.saturating_sub(1))
        .map(|s| {
            let mut p: Vec<usize> = (0..k).collect();
            p.swap(s, s + 1);
            p
        })
        .collect()
}

/// Indices of domain columns whose right-factor image is moved by some
/// adjacent transposition of `E_1..E_a`.
pub fn right_factor_invariance_failures(a: usize, b: usize) -> Result<Vec<usize>, Error> {
    let gens = adjacent_transpositions(a);
    let mut bad = Vec::new();
    let mut inspect = |idx: usize, v: &WordVector| {
        if gens.iter().any(|g| &v.act_sa(g) != v) {
            bad.push(idx);
        }
        Ok(())
    };
    // The orbit-sum rewrite would reject non-invariant images, so run the
    // chain directly and only inspect.
    match right_factor_inspect(a, b, &mut inspect) {
        Ok(_) | Err(Error::Inconsistent(_)) => Ok(bad),
        Err(e) => Err(e),
    }
}

/// Indices of domain columns whose `psi` image is moved by some adjacent
/// transposition of `F_1..F_b`.
pub fn psi_image_invariance_failures(a: usize, b: usize) -> Result<Vec<usize>, Error> {
    let domain = OrbitSumBasis::sa_orbits(a, b)?;
    let gens = adjacent_transpositions(b);
    let chain = defining_chain(a, b);
    let mut bad = Vec::new();
    for idx in 0..domain.len() {
        let v = domain.orbit_vector(idx).apply_chain(&chain)?;
        if v.is_zero() || gens.iter().any(|g| v.act_sb(g) != v) {
            bad.push(idx);
        }
    }
    Ok(bad)
}

fn invariance_suite(max_ab: usize, t: &mut Tally) -> Result<(), Error> {
    for (a, b) in shapes(max_ab, true) {
        let bad = right_factor_invariance_failures(a, b)?;
        t.record(bad.is_empty(), || format!("{a}x{b}: right factor moves columns {bad:?}"));
    }
    for (a, b) in shapes(max_ab, false) {
        let bad = psi_image_invariance_failures(a, b)?;
        t.record(bad.is_empty(), || format!("{a}x{b}: psi image moved by S_b on columns {bad:?}"));
    }
    Ok(())
}

/// Rank of the left factor computed block by block along the positions of `F_b`.
/// Returns `None` if two blocks share a row, when the block ranks do not add up.
pub fn left_factor_blockwise_rank(a: usize, b: usize, left: &SparseExactMatrix, prime: u64) -> Result<Option<usize>, Error> {
    let s = left_factor_q_blocks(a, b, left)?;
    if !s.cross_entries.is_empty() || !s.supports_disjoint() {
        return Ok(None);
    }
    let mut rank = 0;
    for (q, cols) in &s.column_blocks {
        let rows = &s.row_supports[q];
        rank += rank_mod_p(&left.submatrix(rows, cols), prime)?;
    }
    Ok(Some(rank))
}

/// `psi_{a x b}` is injective, and so is `psi_{a x (b-1)}` when `a < b`,
/// together with the two factors: the ladder behind the inductive argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderStep {
    pub a: usize,
    pub b: usize,
    pub rank: usize,
    pub domain_dim: usize,
    pub injective: bool,
    pub previous_injective: Option<bool>,
}

pub fn ladder_step(a: usize, b: usize, psi: &PsiMatrix, previous: Option<&PsiMatrix>) -> Result<LadderStep, Error> {
    let cert = certify_injective(&psi.matrix)?;
    let previous_injective = previous.map(|p| certify_injective(&p.matrix).map(|c| c.injective)).transpose()?;
    Ok(LadderStep { a, b, rank: cert.rank, domain_dim: psi.domain_dim(), injective: cert.injective, previous_injective })
}

fn factorization_suite(max_ab: usize, t: &mut Tally) -> Result<(), Error> {
    let prime = crate::exactla::default_primes()[0];
    for (a, b) in shapes(max_ab, false) {
        let fused = psi_fused(a, b)?;
        let composed = psi_composed(a, b)?;
        t.record(fused == composed, || format!("{a}x{b}: fused and composed psi differ"));
        if a < b {
            let check = check_factorization(a, b, &composed)?;
            t.record(check.equal, || format!("{a}x{b}: factorization fails at column {:?}", check.first_mismatch));

            let right = right_factor(a, b)?;
            let right_ok = rank_mod_p(&right, prime)? == right.cols();
            let left = left_factor(a, b)?;
            let left_ok = left_factor_blockwise_rank(a, b, &left, prime)? == Some(left.cols());
            let previous = if b > a { Some(psi_fused(a, b - 1)?) } else { None };
            let step = ladder_step(a, b, &composed, previous.as_ref())?;
            // Injective previous step and factors force an injective psi.
            let ok = right_ok && left_ok && step.injective;
            t.record(ok, || format!("{a}x{b}: ladder step {step:?}, right {right_ok}, left {left_ok}"));
        } else if a == b {
            let cert = certify_injective(&composed.matrix)?;
            t.record(cert.injective, || format!("{a}x{a}: psi not certified injective, rank {}", cert.rank));
        }
    }
    Ok(())
}

fn qsplit_suite(max_ab: usize, t: &mut Tally) -> Result<(), Error> {
    for (a, b) in shapes(max_ab, true) {
        let left = left_factor(a, b)?;
        let s = left_factor_q_blocks(a, b, &left)?;
        let expected_blocks = binomial(a * b, a);
        t.record(
            s.cross_entries.is_empty() && s.supports_disjoint() && BigUint::from(s.column_blocks.len()) == expected_blocks,
            || format!("{a}x{b}: left factor not block diagonal ({} cross entries)", s.cross_entries.len()),
        );
        for i in 1..=a {
            let z = check_zeta_blocks(a, b, i)?;
            t.record(z.holds(), || format!("{a}x{b}, i={i}: {z:?}"));
        }
    }
    Ok(())
}

/// `(n, k)` pairs of the `GL_2` operators met by the right factor:
/// `n = B + i`, `k = i - 1`, `1 <= i <= a < b`.
pub fn zeta_cases(max_n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 2..=max_n + 1 {
        for a in 1..b {
            for i in 1..=a {
                let n = b - 1 + i;
                if n <= max_n && !out.contains(&(n, i - 1)) {
                    out.push((n, i - 1));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `C(n, k) = sum of f^lambda` over two-row `lambda` with `lambda_2 <= k`,
/// checking along the way that those are exactly the shapes with
/// `K_{lambda,(n-k,k)} = 1` and that all other two-row shapes give 0.
pub fn two_row_weight_identity(n: usize, k: usize) -> Result<bool, Error> {
    let content = WeakComposition::new(vec![n - k, k]);
    let mut total = BigUint::zero();
    for l2 in 0..=n / 2 {
        let lambda = Partition::new(vec![n - l2, l2])?;
        let kst = kostka(&lambda, &content)?;
        let expect = if l2 <= k { BigUint::one() } else { BigUint::zero() };
        if kst != expect {
            return Ok(false);
        }
        total += kst * dim_irrep_sym(&lambda);
    }
    Ok(total == binomial(n, k))
}

fn zeta_suite(max_ab: usize, t: &mut Tally) -> Result<(), Error> {
    for (n, k) in zeta_cases(max_ab) {
        let z = zeta_gl2(n, k)?;
        let cert = certify_injective(&z)?;
        t.record(cert.injective, || format!("zeta({n}, {k}) has rank {} < {}", cert.rank, z.cols()));
        let ok = two_row_weight_identity(n, k)?;
        t.record(ok, || format!("two-row weight identity fails for n={n}, k={k}"));
    }
    Ok(())
}

/// The image of the wedge vector `(l2, n, k)` under the `GL_2` raising
/// operator, as a multiple of the wedge vector `(l2, n, k + 1)`.
pub fn wedge_ratio(l2: usize, n: usize, k: usize) -> Result<Option<Rational>, Error> {
    let v = wedge_sym_vector(l2, n, k)?;
    let image = zeta_gl2(n, k)?.apply(&v)?;
    let shifted = wedge_sym_vector(l2, n, k + 1)?;
    Ok(image.ratio_to(&shifted))
}

fn wedge_suite(max_ab: usize, t: &mut Tally) -> Result<(), Error> {
    for n in 1..=max_ab {
        for l2 in 0..=n / 2 {
            for k in l2..n - l2 {
                let ratio = wedge_ratio(l2, n, k)?;
                let expect = Rational::new((n - k - l2) as i64, n as i64);
                let ok = ratio.as_ref() == Some(&expect) && !expect.is_zero();
                t.record(ok, || format!("wedge l2={l2} n={n} k={k}: ratio {ratio:?}, expected {expect}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutations;

    fn fully_invariant(v: &WordVector, a: usize) -> bool {
        permutations(a).iter().all(|p| &v.act_sa(p) == v)
    }

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.name().parse::<Claim>().unwrap(), c);
        }
        assert_eq!(parse_claims("all").unwrap().len(), 6);
        assert!(parse_claims("bogus").is_err());
    }

    #[test]
    fn small_suites_pass() {
        for c in Claim::ALL {
            let r = run_claim(c, 6).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.cases > 0, "{c}");
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(run_claim(Claim::Zeta, 0), Err(Error::ResourceLimit(_))));
        assert!(matches!(run_claim(Claim::Zeta, 13), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn zeta_case_list() {
        let cases = zeta_cases(4);
        assert_eq!(cases, vec![(2, 0), (3, 0), (4, 0), (4, 1)]);
        assert!(zeta_cases(12).iter().all(|&(n, k)| 2 * k < n));
    }

    #[test]
    fn weight_identity_rejects_nothing_valid() {
        for n in 1..=12 {
            for k in 0..=n / 2 {
                assert!(two_row_weight_identity(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn invariance_checks_see_a_broken_vector() {
        let v = WordVector::from_terms(4, [("E1E1E2E2".parse().unwrap(), 1)]).unwrap();
        assert!(!fully_invariant(&v, 2));
        assert!(adjacent_transpositions(2).iter().any(|g| v.act_sa(g) != v));
        let w = v.clone().apply_chain(&[]).unwrap();
        assert_eq!(w, v);
        let orbit = OrbitSumBasis::sa_orbits(2, 2).unwrap().orbit_vector(0);
        assert!(fully_invariant(&orbit, 2));
    }

    #[test]
    fn blockwise_rank_of_left_factor() {
        let left = left_factor(2, 3).unwrap();
        let p = crate::exactla::default_primes()[0];
        assert_eq!(left_factor_blockwise_rank(2, 3, &left, p).unwrap(), Some(rank_mod_p(&left, p).unwrap()));
    }
}
