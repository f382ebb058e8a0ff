//! Time-dependent problems with zero initial data, by numerical inversion of the two-sided
//! Laplace transform along `λ = γ + iτ`.
//!
//! Data are a fixed spatial pattern times a scalar time profile, so each contour node needs
//! one resolvent solve of the spatial data; the profile's transform is a scalar factor.

pub mod contour;
pub mod maxreg;
pub mod profile;
pub mod solve;

pub use contour::{Assembler, ContourSpec};
pub use maxreg::{maxreg_plancherel, maxreg_ratio, MaxRegReport, Weight};
pub use profile::{laplace_of_data, TimeData, TimeProfile};
pub use solve::{laplace_of_series, solve_evolution, EvolutionSolution, TimeSeries};
