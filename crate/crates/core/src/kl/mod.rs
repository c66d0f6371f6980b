//! Exact decompositions in the Grothendieck ring via Kazhdan–Lusztig
//! polynomials of symmetric groups.

mod dictionary;
mod engine;
mod perm;
mod transition;

pub use dictionary::multiseg_to_perm;
pub use engine::{KLPolynomial, KlEngine, CACHE_DIR_ENV};
pub use perm::{bruhat_leq, Permutation, MAX_DEGREE};
pub use transition::{
    move_closure, multiply_irreducibles, to_irreducible_basis, to_standard_basis, transition_matrix, KlOracle,
    TransitionMatrix, DEFAULT_MAX_SUPPORT,
};

/// `P_{u,v}` with a throwaway in-memory engine.
pub fn kl_polynomial(u: &Permutation, v: &Permutation) -> crate::Result<KLPolynomial> {
    KlEngine::new().kl_polynomial(u, v)
}
