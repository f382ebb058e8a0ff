//! Physical constants of the two fluids and the phase selector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper (`x_n > 0`) or lower (`x_n < 0`) phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Plus, Side::Minus];

    /// `+1` for the upper phase, `-1` for the lower one.
    pub fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }

    /// Storage slot: 0 for the upper phase, 1 for the lower.
    pub fn index(self) -> usize {
        match self {
            Side::Plus => 0,
            Side::Minus => 1,
        }
    }

    /// Whether `x_n` belongs to the closure of this phase.
    pub fn admits(self, x_n: f64) -> bool {
        x_n == 0.0 || self.sign() * x_n > 0.0
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::Plus => "+",
            Side::Minus => "-",
        }
    }
}

/// Densities, viscosities, surface tension and gravity coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluidParams {
    pub rho_plus: f64,
    pub rho_minus: f64,
    pub mu_plus: f64,
    pub mu_minus: f64,
    #[serde(default)]
    pub c_sigma: f64,
    #[serde(default)]
    pub c_g: f64,
}

impl Default for FluidParams {
    fn default() -> Self {
        FluidParams {
            rho_plus: 1.0,
            rho_minus: 2.0,
            mu_plus: 1.0,
            mu_minus: 3.0,
            c_sigma: 1.0,
            c_g: 1.0,
        }
    }
}

impl FluidParams {
    pub fn new(rho_plus: f64, rho_minus: f64, mu_plus: f64, mu_minus: f64) -> Result<Self> {
        FluidParams {
            rho_plus,
            rho_minus,
            mu_plus,
            mu_minus,
            c_sigma: 0.0,
            c_g: 0.0,
        }
        .validated()
    }

    /// Same densities and viscosities in both phases.
    pub fn symmetric(rho: f64, mu: f64) -> Result<Self> {
        Self::new(rho, rho, mu, mu)
    }

    pub fn with_surface(mut self, c_sigma: f64, c_g: f64) -> Result<Self> {
        self.c_sigma = c_sigma;
        self.c_g = c_g;
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let positive = [
            ("rho_plus", self.rho_plus),
            ("rho_minus", self.rho_minus),
            ("mu_plus", self.mu_plus),
            ("mu_minus", self.mu_minus),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")));
            }
        }
        for (name, v) in [("c_sigma", self.c_sigma), ("c_g", self.c_g)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be >= 0, got {v}")));
            }
        }
        Ok(self)
    }

    pub fn rho(&self, side: Side) -> f64 {
        match side {
            Side::Plus => self.rho_plus,
            Side::Minus => self.rho_minus,
        }
    }

    pub fn mu(&self, side: Side) -> f64 {
        match side {
            Side::Plus => self.mu_plus,
            Side::Minus => self.mu_minus,
        }
    }

    /// `[[rho]] = rho_+ - rho_-`.
    pub fn rho_jump(&self) -> f64 {
        self.rho_plus - self.rho_minus
    }

    pub fn has_surface(&self) -> bool {
        self.c_sigma > 0.0 || self.c_g > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_density() {
        assert!(FluidParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(FluidParams::new(1.0, 1.0, -2.0, 1.0).is_err());
        assert!(FluidParams::new(1.0, 1.0, 1.0, 1.0).unwrap().with_surface(-1.0, 0.0).is_err());
    }

    #[test]
    fn jump_may_have_any_sign() {
        let fp = FluidParams::new(1.0, 3.0, 1.0, 1.0).unwrap();
        assert_eq!(fp.rho_jump(), -2.0);
        let fp = FluidParams::new(3.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(fp.rho_jump(), 2.0);
    }
}
