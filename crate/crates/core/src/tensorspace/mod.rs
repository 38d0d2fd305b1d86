//! Weight spaces of `(x)^d V` for `V = C^a + C^b`, the raising operators
//! `phi_{i,j}`, the `S_a` action with its orbit-sum bases, and the `GL_2`
//! raising operator on `(x)^n C^2`.

mod basis;
mod ops;
mod orbit;
mod word;

pub use basis::{gl2_weight_basis, weight_basis, weight_basis_with_limit, WeightBasis};
pub use ops::{phi, wedge_sym_vector, zeta_gl2, PhiMap, WordVector};
pub use orbit::{orbit_sum_basis, OrbitSumBasis};
pub use word::{sa_act, sb_act, Letter, Word, MAX_WORD_LEN};
