//! Exact sparse linear algebra: rationals, sparse matrices, rank over prime
//! fields and over the rationals, kernels, and injectivity certificates.

mod bareiss;
mod certify;
mod modp;
mod rational;
mod sparse;

pub use bareiss::{
    annihilates, kernel_basis_exact, kernel_basis_exact_with, rank_exact, rank_exact_with,
    ExactLimits,
};
pub use certify::{
    certify_injective, certify_injective_with, CertifyOptions, RankCertificate, RankMethod,
    Verdict,
};
pub use modp::{default_primes, is_prime, primes_below, rank_mod_p, MAX_PRIME};
pub use rational::Rational;
pub use sparse::{SparseExactMatrix, SparseVector};
