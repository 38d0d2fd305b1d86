//! Exact construction of the Foulkes-Howe map `psi_{a x b}` on weight spaces
//! of tensor powers of `C^a + C^b`, together with the machinery to check its
//! structural properties and an independent character-theoretic oracle for
//! plethysm multiplicities.
//!
//! Module map:
//! - [`combinatorics`]: partitions, block set partitions, characters, Kostka numbers.
//! - [`tensorspace`]: weight bases, raising operators, `S_a` orbit sums, the `GL_2` operator.
//! - [`foulkes_map`]: `psi` (composed and fused), its left/right factors, `Q`-splits, `Psi`.
//! - [`exactla`]: exact sparse matrices, modular and rational rank, certificates.
//! - [`plethysm`]: multiplicities of `Sym^a(Sym^b)` and the checks built on them.
//! - [`claims`]: the property suites behind `foulkes verify`.

pub mod claims;
pub mod combinatorics;
pub mod exactla;
pub mod foulkes_map;
pub mod plethysm;
pub mod tensorspace;

pub use combinatorics::{BlockSetPartition, Partition, WeakComposition};
pub use exactla::{RankCertificate, Rational, SparseExactMatrix, SparseVector};
pub use foulkes_map::PsiMatrix;
pub use plethysm::MultiplicityVector;
pub use tensorspace::{Letter, WeightBasis, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("prime {prime} divides a denominator; retry with another prime")]
    BadPrime { prime: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Largest `ab` accepted when enumerating block set partitions.
pub const DEFAULT_BLOCK_LIMIT: usize = 16;
/// Largest `ab` accepted when assembling `psi` with exact rational entries.
pub const DEFAULT_PSI_LIMIT: usize = 12;
/// Largest weight basis materialized as an explicit word list.
pub const DEFAULT_BASIS_LIMIT: usize = 4_000_000;
