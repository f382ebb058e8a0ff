//! Closed-form symbols of the two-phase interface problem.

pub mod family;
pub mod kernel;
pub mod roots;
pub mod table;
pub mod whole_space;

pub use family::{
    evaluate, omega_n_unweighted, omega_n_weighted, pressure_coeff, pressure_symbol, s_family_symbol, velocity_profile,
    velocity_symbol, Family, Profile, SymbolKind, SymbolRequest,
};
pub use kernel::{exp_kernel, m_kernel, phi1};
pub use roots::{compute_roots, sqrt_positive_real, Roots, Sector, SpectralPoint};
pub use table::{build_symbol_table, build_symbol_table_with_floor, det_by_elimination, SymbolTable};
pub use whole_space::{appendix_a_symbol, helmholtz_symbol};
