use serde::{Deserialize, Serialize};

use super::bareiss::{rank_exact_with, ExactLimits};
use super::modp::{default_primes, rank_mod_p};
use super::SparseExactMatrix;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMethod {
    Modular,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Injective,
    NotInjective,
    /// Every prime showed a rank drop and exact elimination was out of reach.
    Inconclusive,
}

/// Outcome of an injectivity check.
///
/// A modular certificate is only ever issued in the full-column-rank
/// direction: rank mod p never exceeds the rational rank, so full rank mod p
/// proves injectivity. A rank drop mod p proves nothing on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    /// Exact rank, or for inconclusive certificates the best modular lower bound.
    pub rank: usize,
    pub cols: usize,
    pub method: RankMethod,
    pub primes: Vec<u64>,
    pub injective: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub primes: Vec<u64>,
    pub exact: ExactLimits,
    /// Also run exact elimination after a modular success, when within limits.
    pub confirm_exact: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { primes: default_primes(), exact: ExactLimits::default(), confirm_exact: false }
    }
}

pub fn certify_injective(m: &SparseExactMatrix) -> Result<RankCertificate, Error> {
    certify_injective_with(m, &CertifyOptions::default())
}

pub fn certify_injective_with(
    m: &SparseExactMatrix,
    opts: &CertifyOptions,
) -> Result<RankCertificate, Error> {
    let cols = m.cols();
    let mut tried = Vec::new();
    let mut best = 0;
    for &p in &opts.primes {
        let rank = match rank_mod_p(m, p) {
            Ok(r) => r,
            Err(Error::BadPrime { .. }) => continue,
            Err(e) => return Err(e),
        };
        tried.push(p);
        best = best.max(rank);
        if rank == cols {
            if opts.confirm_exact {
                if let Ok(exact) = rank_exact_with(m, opts.exact) {
                    if exact != cols {
                        return Err(Error::Inconsistent(format!(
                            "full rank mod {p} but exact rank {exact} < {cols}"
                        )));
                    }
                    return Ok(RankCertificate {
                        rank: cols,
                        cols,
                        method: RankMethod::Exact,
                        primes: tried,
                        injective: true,
                        verdict: Verdict::Injective,
                    });
                }
            }
            return Ok(RankCertificate {
                rank: cols,
                cols,
                method: RankMethod::Modular,
                primes: tried,
                injective: true,
                verdict: Verdict::Injective,
            });
        }
    }
    match rank_exact_with(m, opts.exact) {
        Ok(rank) => Ok(RankCertificate {
            rank,
            cols,
            method: RankMethod::Exact,
            primes: tried,
            injective: rank == cols,
            verdict: if rank == cols { Verdict::Injective } else { Verdict::NotInjective },
        }),
        Err(Error::ResourceLimit(_)) => Ok(RankCertificate {
            rank: best,
            cols,
            method: RankMethod::Modular,
            primes: tried,
            injective: false,
            verdict: Verdict::Inconclusive,
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rational;

    #[test]
    fn identity_needs_one_prime() {
        let c = certify_injective(&SparseExactMatrix::identity(4)).unwrap();
        assert!(c.injective);
        assert_eq!(c.method, RankMethod::Modular);
        assert_eq!(c.primes.len(), 1);
    }

    #[test]
    fn kernel_is_decided_exactly() {
        let m = SparseExactMatrix::from_triplets(
            2,
            2,
            [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4)]
                .into_iter()
                .map(|(r, c, v)| (r, c, Rational::from_integer(v))),
        )
        .unwrap();
        let c = certify_injective(&m).unwrap();
        assert!(!c.injective);
        assert_eq!(c.method, RankMethod::Exact);
        assert_eq!(c.verdict, Verdict::NotInjective);
        assert_eq!(c.rank, 1);
    }

    #[test]
    fn too_large_for_exact_is_inconclusive() {
        let m = SparseExactMatrix::zeros(3, 3);
        let opts = CertifyOptions {
            exact: ExactLimits { max_cells: 4, max_entry_bits: 64 },
            ..Default::default()
        };
        let c = certify_injective_with(&m, &opts).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(!c.injective);
    }

    #[test]
    fn skips_primes_dividing_denominators() {
        let m = SparseExactMatrix::from_triplets(1, 1, vec![(0, 0, Rational::new(1, 7))]).unwrap();
        let opts = CertifyOptions { primes: vec![7, 11], ..Default::default() };
        let c = certify_injective_with(&m, &opts).unwrap();
        assert_eq!(c.primes, vec![11]);
        assert!(c.injective);
    }
}
