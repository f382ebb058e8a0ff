//! The y_n-integral operators `T[m]`, `T̃_γ[m_λ]` on graded vertical cells, the
//! `⟦·⟧`-extension, seeded empirical operator norms, and the integral form of the
//! interface-driven solution.

pub mod apply;
pub mod ensemble;
pub mod halfspace;
pub mod multiplier;
pub mod sol1;

pub use apply::{apply_t, apply_t_tilde, KernelMatrices, TimeSlices, SINGULAR_WARN};
pub use ensemble::{ensemble, empirical_bound, empirical_bound_tilde, refinement_study, BoundEstimate, EnsembleSpec, Member, Refinement};
pub use halfspace::{cell_nodes, jjump_extend, HalfSpaceFunction, TwoPhaseFunction};
pub use multiplier::{certified_symbols, CertifiedKind, CertifiedSymbol, ExpA, FnSymbol, InversePower, Multiplier, TableSymbol, ZeroSymbol};
pub use sol1::{graded_simpson, sol1_check, Sol1Report, Sol1Route};

#[cfg(test)]
mod tests;
