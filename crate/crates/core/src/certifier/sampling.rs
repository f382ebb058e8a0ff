//! Seeded product grids over Σ_{ε,γ0} × Σ̃_η^{n−1} × (0, ∞).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbols::{Sector, SpectralPoint};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SectorSampling {
    pub dim: usize,
    pub epsilon: f64,
    pub eta: f64,
    pub gamma0: f64,
    /// Angular distance kept from every sector boundary.
    pub delta: f64,
    pub n_radii: usize,
    pub n_angles: usize,
    pub n_xn: usize,
    pub radius_range: [f64; 2],
    pub xi_range: [f64; 2],
    pub xn_range: [f64; 2],
    pub jitter: bool,
}

impl Default for SectorSampling {
    fn default() -> Self {
        SectorSampling {
            dim: 3,
            epsilon: PI / 4.0,
            eta: PI / 16.0,
            gamma0: 1.0,
            delta: 1e-3,
            n_radii: 25,
            n_angles: 20,
            n_xn: 20,
            radius_range: [1.0, 1e4],
            xi_range: [1e-2, 1e2],
            xn_range: [1e-3, 1e2],
            jitter: true,
        }
    }
}

/// One sample: a spectral point, a vertical coordinate (positive; mirrored for the lower
/// phase), and an extra normal frequency for the whole-space multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: SpectralPoint,
    pub x_n: f64,
    pub xi_normal: C64,
}

impl Sample {
    /// `(ξ′, ξ_n)`.
    pub fn full_xi(&self) -> Vec<C64> {
        let mut v = self.point.xi.clone();
        v.push(self.xi_normal);
        v
    }
}

impl SectorSampling {
    pub fn sector(&self) -> Sector {
        Sector { epsilon: self.epsilon, eta: self.eta, gamma: self.gamma0 }
    }

    pub fn validated(self) -> Result<Self> {
        self.sector().validated()?;
        if !(2..=3).contains(&self.dim) {
            return Err(Error::InvalidParameter(format!("dim must be 2 or 3, got {}", self.dim)));
        }
        if self.n_radii == 0 || self.n_angles == 0 || self.n_xn == 0 {
            return Err(Error::InvalidParameter("empty sampling grid".into()));
        }
        if !(self.delta > 0.0 && self.delta < self.eta) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, eta), got {}", self.delta)));
        }
        for (name, [lo, hi]) in [("radius_range", self.radius_range), ("xi_range", self.xi_range), ("xn_range", self.xn_range)] {
            if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must satisfy 0 < lo <= hi, got [{lo}, {hi}]")));
            }
        }
        if self.radius_range[0] < self.gamma0 {
            return Err(Error::InvalidParameter(format!(
                "radius_range starts at {} below gamma0 = {}",
                self.radius_range[0], self.gamma0
            )));
        }
        Ok(self)
    }

    pub fn max_arg(&self) -> f64 {
        PI - self.epsilon - self.delta
    }

    pub fn len(&self) -> usize {
        self.n_radii * self.n_angles * self.n_xn
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn log_grid(range: [f64; 2], count: usize, i: usize) -> f64 {
    if count == 1 {
        return range[0];
    }
    let (lo, hi) = (range[0].ln(), range[1].ln());
    (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp()
}

fn log_cell(range: [f64; 2], count: usize) -> f64 {
    if count == 1 {
        0.0
    } else {
        (range[1] / range[0]).ln() / (count - 1) as f64
    }
}

/// Product grid (radius × angle × x_n) with optional seeded jitter; the extreme rays
/// `arg λ = ±(π − ε − δ)` are always present, and ξ components cover both lobes.
pub fn sample_sectors(cfg: &SectorSampling, seed: u64) -> Result<Vec<Sample>> {
    let cfg = cfg.clone().validated()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_arg = cfg.max_arg();
    let xi_arg = cfg.eta - cfg.delta;
    let d_arg = if cfg.n_angles > 1 { 2.0 * max_arg / (cfg.n_angles - 1) as f64 } else { 0.0 };
    let d_r = log_cell(cfg.radius_range, cfg.n_radii);
    let d_x = log_cell(cfg.xn_range, cfg.n_xn);
    let xi_mid = (cfg.xi_range[0] * cfg.xi_range[1]).sqrt();
    let mut out = Vec::with_capacity(cfg.len());
    let mut index = 0usize;
    for ir in 0..cfg.n_radii {
        for ia in 0..cfg.n_angles {
            for ix in 0..cfg.n_xn {
                let mut r = log_grid(cfg.radius_range, cfg.n_radii, ir);
                let mut arg = if cfg.n_angles == 1 { 0.0 } else { -max_arg + d_arg * ia as f64 };
                let mut x = log_grid(cfg.xn_range, cfg.n_xn, ix);
                let edge_ray = cfg.n_angles > 1 && (ia == 0 || ia + 1 == cfg.n_angles);
                let draw_xi = |rng: &mut ChaCha8Rng, slot: usize| -> C64 {
                    if cfg.jitter {
                        let lr = rng.random_range(cfg.xi_range[0].ln()..=cfg.xi_range[1].ln());
                        let a = rng.random_range(-xi_arg..=xi_arg);
                        let z = C64::from_polar(lr.exp(), a);
                        if rng.random_bool(0.5) { -z } else { z }
                    } else {
                        let z = C64::new(xi_mid, 0.0);
                        if (index + slot) % 2 == 1 { -z } else { z }
                    }
                };
                let xi: Vec<C64> = (0..cfg.dim - 1).map(|s| draw_xi(&mut rng, s)).collect();
                let xi_normal = draw_xi(&mut rng, cfg.dim - 1);
                if cfg.jitter {
                    r = (r.ln() + d_r * rng.random_range(-0.5..=0.5)).exp().clamp(cfg.radius_range[0], cfg.radius_range[1]);
                    if !edge_ray {
                        arg = (arg + d_arg * rng.random_range(-0.5..=0.5)).clamp(-max_arg, max_arg);
                    }
                    x = (x.ln() + d_x * rng.random_range(-0.5..=0.5)).exp().clamp(cfg.xn_range[0], cfg.xn_range[1]);
                }
                let lambda = C64::from_polar(r, arg);
                out.push(Sample { point: SpectralPoint::new(lambda, xi)?, x_n: x, xi_normal });
                index += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_grid_is_single_point() {
        let cfg = SectorSampling { n_radii: 1, n_angles: 1, n_xn: 1, jitter: false, radius_range: [2.0, 5.0], ..Default::default() };
        let s = sample_sectors(&cfg, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].point.lambda, C64::new(2.0, 0.0));
        assert_eq!(s[0].x_n, cfg.xn_range[0]);
    }

    #[test]
    fn samples_respect_sector_and_cover_both_lobes() {
        let cfg = SectorSampling { n_radii: 6, n_angles: 7, n_xn: 5, ..Default::default() };
        let s = sample_sectors(&cfg, 42).unwrap();
        assert_eq!(s.len(), 210);
        let sector = cfg.sector();
        let mut lobes = [false; 2];
        for smp in &s {
            smp.point.check_in(&sector).unwrap();
            assert!(sector.contains_xi(smp.xi_normal));
            for z in &smp.point.xi {
                lobes[(z.re < 0.0) as usize] = true;
            }
            assert!(smp.x_n >= cfg.xn_range[0] && smp.x_n <= cfg.xn_range[1]);
        }
        assert!(lobes[0] && lobes[1]);
        let max_arg = s.iter().map(|x| x.point.lambda.arg()).fold(f64::MIN, f64::max);
        assert!((max_arg - cfg.max_arg()).abs() < 1e-12);
    }

    #[test]
    fn seeded_determinism() {
        let cfg = SectorSampling { n_radii: 3, n_angles: 3, n_xn: 3, ..Default::default() };
        assert_eq!(sample_sectors(&cfg, 7).unwrap(), sample_sectors(&cfg, 7).unwrap());
        assert_ne!(sample_sectors(&cfg, 7).unwrap(), sample_sectors(&cfg, 8).unwrap());
    }

    #[test]
    fn invalid_configs() {
        assert!(sample_sectors(&SectorSampling { n_xn: 0, ..Default::default() }, 0).is_err());
        assert!(sample_sectors(&SectorSampling { eta: PI / 4.0, ..Default::default() }, 0).is_err());
        assert!(sample_sectors(&SectorSampling { radius_range: [0.5, 2.0], ..Default::default() }, 0).is_err());
    }
}
