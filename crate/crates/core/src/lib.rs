//! Spectral solver and verification harness for the two-phase Stokes resolvent and
//! evolution problems across a flat interface.
//!
//! Layers, bottom-up: [`symbols`] evaluates every closed-form multiplier; [`certifier`]
//! sweeps the complex sectors and reports empirical bound constants; [`resolvent`] solves
//! the stationary problems mode by mode and checks them against independent oracles;
//! [`evolution`] inverts the Laplace transform on a vertical contour; [`operator`] applies
//! the y_n-integral operators directly; [`cli`] wires everything to config files and CSV.

pub mod error;
pub mod params;
pub mod certifier;
pub mod cli;
pub mod evolution;
pub mod operator;
pub mod resolvent;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use params::{FluidParams, Side};
