//! Commuting maps: predicates, commutation ideals, the catalog search for
//! `Com(f, d)` and its grid oracle, automorphisms, multipliers and
//! morphism checks.

pub mod automorphisms;
pub mod ideal;
pub mod morphism;
pub mod multiplier;
pub mod predicates;
pub mod search;

pub use automorphisms::{affine_inverse, automorphisms, projective_automorphisms, AutomorphismReport};
pub use ideal::{commutation_ideal, CommutationIdeal, IdealTarget, EQUATION_CAP};
pub use morphism::{binary_resultant, is_morphism, MorphismVerdict, DEFAULT_PRIMES};
pub use multiplier::{multiplier, CompanionReport, MultiplierReport};
pub use predicates::{commutes_affine, commutes_projective, cross_products, require_commuting};
pub use search::{
    brute_force_commutant, commutant_search, run_sequential, CandidateSpace, CatalogSearch, CommutantResult,
    Completeness, GridSearch, GridSpec, SearchMethod, CANDIDATE_CAP,
};
