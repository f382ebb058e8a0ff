//! Characteristic roots and the sector geometry they live on.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::FluidParams;

/// Square root with strictly positive real part; the closed negative real axis is rejected.
pub fn sqrt_positive_real(z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::BranchCut(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::BranchCut(format!("{z}")));
    }
    let w = z.sqrt();
    if w.re <= 0.0 {
        // only reachable through underflow in |z| ~ 1e-320
        return Err(Error::BranchCut(format!("{z} (root {w})")));
    }
    Ok(w)
}

/// Angles of the two sectors: `Σ_{ε,γ}` for λ and the double lobe `Σ̃_η` for each ξ_j.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sector {
    pub epsilon: f64,
    pub eta: f64,
    #[serde(default)]
    pub gamma: f64,
}

impl Default for Sector {
    fn default() -> Self {
        Sector { epsilon: PI / 4.0, eta: PI / 16.0, gamma: 0.0 }
    }
}

impl Sector {
    pub fn validated(self) -> Result<Self> {
        if !(self.epsilon > 0.0 && self.epsilon < PI / 2.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, pi/2), got {}", self.epsilon)));
        }
        let eta_max = (PI / 4.0).min(self.epsilon / 2.0);
        if !(self.eta > 0.0 && self.eta < eta_max) {
            return Err(Error::InvalidParameter(format!(
                "eta must lie in (0, min(pi/4, epsilon/2)) = (0, {eta_max}), got {}",
                self.eta
            )));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        Ok(self)
    }

    pub fn contains_lambda(&self, lambda: C64) -> bool {
        lambda != C64::new(0.0, 0.0) && lambda.arg().abs() < PI - self.epsilon && lambda.norm() >= self.gamma
    }

    pub fn contains_xi(&self, z: C64) -> bool {
        if z == C64::new(0.0, 0.0) {
            return false;
        }
        let a = z.arg().abs();
        a < self.eta || a > PI - self.eta
    }
}

/// A resolvent parameter together with the (possibly complex) tangential frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub lambda: C64,
    pub xi: Vec<C64>,
}

impl SpectralPoint {
    pub fn new(lambda: C64, xi: Vec<C64>) -> Result<Self> {
        if xi.is_empty() {
            return Err(Error::Dimension("need at least one tangential frequency (n >= 2)".into()));
        }
        Ok(SpectralPoint { lambda, xi })
    }

    pub fn real(lambda: f64, xi: &[f64]) -> Result<Self> {
        Self::new(C64::new(lambda, 0.0), xi.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Spatial dimension n.
    pub fn dim(&self) -> usize {
        self.xi.len() + 1
    }

    pub fn check_in(&self, sector: &Sector) -> Result<()> {
        if !sector.contains_lambda(self.lambda) {
            return Err(Error::InvalidParameter(format!("lambda = {} outside the sector", self.lambda)));
        }
        if let Some(z) = self.xi.iter().find(|z| !sector.contains_xi(**z)) {
            return Err(Error::InvalidParameter(format!("xi component {z} outside the frequency lobes")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Roots {
    pub a: C64,
    pub b_plus: C64,
    pub b_minus: C64,
    pub a_tilde: f64,
}

impl Roots {
    pub fn b(&self, side: crate::params::Side) -> C64 {
        match side {
            crate::params::Side::Plus => self.b_plus,
            crate::params::Side::Minus => self.b_minus,
        }
    }
}

/// `A = √Σξ_j²`, `B± = √(ρ±λ/μ± + A²)`, `Ã = √Σ|ξ_j|²`.
pub fn compute_roots(p: &SpectralPoint, fp: &FluidParams) -> Result<Roots> {
    let a2: C64 = p.xi.iter().map(|z| z * z).sum();
    let a = sqrt_positive_real(a2)?;
    let b_plus = sqrt_positive_real(p.lambda * (fp.rho_plus / fp.mu_plus) + a2)?;
    let b_minus = sqrt_positive_real(p.lambda * (fp.rho_minus / fp.mu_minus) + a2)?;
    let a_tilde = p.xi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(Roots { a, b_plus, b_minus, a_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_positive_real(c(4.0, 0.0)).unwrap(), c(2.0, 0.0));
        assert!(sqrt_positive_real(c(-1.0, 0.0)).is_err());
        assert!(sqrt_positive_real(c(0.0, 0.0)).is_err());
        let w = sqrt_positive_real(c(3.0, 4.0)).unwrap();
        assert!((w - c(2.0, 1.0)).norm() < 1e-15);
        // just above and below the cut
        assert!(sqrt_positive_real(c(-1.0, 1e-300)).unwrap().re > 0.0);
        assert!(sqrt_positive_real(c(-1.0, -1e-300)).unwrap().re > 0.0);
    }

    #[test]
    fn root_examples() {
        let fp = FluidParams::symmetric(1.0, 1.0).unwrap();
        let r = compute_roots(&SpectralPoint::real(2.0, &[3.0, 4.0]).unwrap(), &fp).unwrap();
        assert!((r.a - c(5.0, 0.0)).norm() < 1e-15);
        assert!((r.a_tilde - 5.0).abs() < 1e-15);
        let r = compute_roots(&SpectralPoint::real(9.0, &[4.0]).unwrap(), &fp).unwrap();
        assert!((r.b_plus - c(5.0, 0.0)).norm() < 1e-15);
        assert!((r.b_minus - c(5.0, 0.0)).norm() < 1e-15);
        let p = SpectralPoint::new(c(1.0, 0.0), vec![C64::from_polar(1.0, 0.1)]).unwrap();
        let r = compute_roots(&p, &fp).unwrap();
        assert!(r.a.re > 0.0 && r.a.re >= 0.1f64.cos() * r.a_tilde - 1e-15);
        // left lobe maps to the same A
        let q = SpectralPoint::new(c(1.0, 0.0), vec![-C64::from_polar(1.0, 0.1)]).unwrap();
        assert!((compute_roots(&q, &fp).unwrap().a - r.a).norm() < 1e-15);
    }

    #[test]
    fn sector_predicates() {
        let s = Sector::default().validated().unwrap();
        assert!(!s.contains_lambda(c(-1.0, 1.0 - 1e-9)));
        assert!(s.contains_lambda(c(-1.0, 1.1)));
        assert!(!s.contains_lambda(c(0.0, 0.0)));
        assert!(s.contains_xi(c(-1.0, 0.01)));
        assert!(!s.contains_xi(c(0.0, 1.0)));
        assert!(Sector { eta: PI / 4.0, ..Sector::default() }.validated().is_err());
        assert!(Sector { epsilon: 0.2, eta: 0.15, gamma: 0.0 }.validated().is_err());
    }
}
