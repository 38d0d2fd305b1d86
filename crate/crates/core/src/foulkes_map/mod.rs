//! `psi_{a x b}` between orbit-sum bases, its two factors for `a < b`, the
//! `Q`-block splits of the intermediate weight spaces, and the
//! polynomial-side map on symmetric powers.

mod factors;
mod poly;
mod psi;
mod qsplit;

pub use factors::{
    check_factorization, left_chain, left_codomain_basis, left_factor, left_factor_q_blocks, middle_basis,
    right_chain, right_factor, right_factor_inspect, sb_to_sbminus_embedding, FactorizationCheck, QBlockStructure,
};
pub use poly::{monomial_multiset_basis, psi_poly, MonomialMultiset, POLY_DIM_LIMIT, PSI_POLY_CONVENTION};
pub use psi::{
    defining_chain, express_rational, psi_composed, psi_composed_via_matrices, psi_composed_with_limit, psi_entry,
    psi_fused, psi_fused_with_limit, PsiMatrix, MATRIX_ROUTE_LIMIT,
};
pub use qsplit::{
    check_zeta_blocks, gamma_chain_violation, gamma_weight, q_block_split, q_blocks, QSplit, ZetaBlockCheck,
};
