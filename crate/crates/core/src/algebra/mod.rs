//! Exact term rewriting for the deformed position–momentum algebra: Jacobi
//! constraints on the most general linear-plus-quadratic deformation and the
//! matching of a canonical-variable representation.
//!
//! Momentum factors commute among themselves; all non-commutativity enters
//! through [q_i, ·], which acts as a derivation. Coefficients are exact
//! rationals in the formal symbols, truncated above grade 2 (α-like symbols
//! have grade 1, β-like grade 2).

mod commutator;
mod constraints;
mod poly;
mod term;
mod text;

pub use commutator::{
    canonical_to_deformed, commutator_q, commutator_qi_pinv, commutator_qi_pj, commutator_qi_pnorm,
    jacobi_residual, momentum_map, representation_commutator, substitute, target_commutator,
};
pub use constraints::{match_representation, solve_jacobi_constraints, ConstraintSet, Equation, RepresentationMatch};
pub use poly::{Monomial, Poly, Symbol, MAX_GRADE, Q, SYMBOLS};
pub use term::{normalize, rename_free, truncate_momentum_degree, Idx, MomentumTerm, Species, TermSum};
