//! Benchmark inputs shared by the criterion targets.

use foulkes_core::foulkes_map::{psi_fused, PsiMatrix};

/// Shapes small enough to benchmark repeatedly.
pub const SHAPES: [(usize, usize); 4] = [(2, 3), (2, 4), (3, 3), (2, 5)];

pub fn psi(a: usize, b: usize) -> PsiMatrix {
    psi_fused(a, b).expect("benchmark shapes are within limits")
}
