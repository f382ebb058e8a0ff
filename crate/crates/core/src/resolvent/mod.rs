//! Resolvent problems solved mode by mode in the tangential variables, with the vertical
//! dependence kept in closed form.
//!
//! `u = ψ + w`: ψ solves the whole-space problem for the force (trig series on the vertically
//! periodized box), `w` is the interface-driven correction built from the symbol table. The
//! surface problem adds the height η through the Lopatinskii determinant.

pub mod data;
pub mod dump;
pub mod field;
pub mod grid;
pub mod norms;
pub mod residual;
pub mod solve;
pub mod sweep;

pub use data::{Decay, ForceMode, InterfaceData, JumpMode, ModeData, ResolventData};
pub use field::{ModeField, PhysicalField, SideCoef, TwoPhaseField, WholeMode};
pub use grid::{GridSpec, Torus};
pub use norms::{loglog_slope, norms_and_ratio, Bundle, Quadrature, RatioReport};
pub use residual::{fd_convergence, fd_residual, residual_report, EquationResidual, ResidualReport};
pub use solve::{
    boundary_solve, helmholtz_mode, helmholtz_solve, solve_rswith, solve_rswithout, surface_solve, FullSpaceForce,
    SurfaceMode, WholeSpaceField,
};
pub use sweep::{ratio_sweep, summarize, RaySummary, RaySweep, SweepRow};
