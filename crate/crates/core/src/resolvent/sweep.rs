//! λ-ray sweeps of the resolvent-estimate ratio.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::ResolventData;
use super::grid::GridSpec;
use super::norms::{loglog_slope, norms_and_ratio, RatioReport};
use super::solve::{solve_rswith, solve_rswithout};
use crate::error::{Error, Result};
use crate::params::FluidParams;

/// Rays `arg λ = θ_r`, magnitudes log-spaced on `[mag_min, mag_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySweep {
    pub args: Vec<f64>,
    pub mag_min: f64,
    pub mag_max: f64,
    pub points_per_decade: usize,
    #[serde(default = "default_q")]
    pub q: f64,
    /// Solve the surface-tension problem instead of the plain one.
    #[serde(default)]
    pub surface: bool,
}

fn default_q() -> f64 {
    2.0
}

impl Default for RaySweep {
    fn default() -> Self {
        let a = 3.0 * std::f64::consts::PI / 8.0;
        RaySweep { args: vec![0.0, a, -a], mag_min: 1e-2, mag_max: 1e4, points_per_decade: 2, q: 2.0, surface: false }
    }
}

impl RaySweep {
    pub fn validated(self) -> Result<Self> {
        if self.args.is_empty() || self.args.iter().any(|a| !(a.abs() < std::f64::consts::PI)) {
            return Err(Error::InvalidParameter("ray arguments must lie in (−π, π)".into()));
        }
        if !(self.mag_min > 0.0 && self.mag_max >= self.mag_min && self.mag_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("bad |λ| range [{}, {}]", self.mag_min, self.mag_max)));
        }
        if self.points_per_decade == 0 {
            return Err(Error::InvalidParameter("points_per_decade must be positive".into()));
        }
        Ok(self)
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        let (a, b) = (self.mag_min.log10(), self.mag_max.log10());
        let steps = ((b - a) * self.points_per_decade as f64).round() as usize;
        if steps == 0 {
            return vec![self.mag_min];
        }
        (0..=steps).map(|i| 10f64.powf(a + (b - a) * i as f64 / steps as f64)).collect()
    }

    pub fn lambdas(&self) -> Vec<(f64, f64, C64)> {
        let mags = self.magnitudes();
        self.args.iter().flat_map(|&t| mags.iter().map(move |&m| (t, m, C64::from_polar(m, t)))).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub arg: f64,
    pub mag: f64,
    pub report: RatioReport,
}

/// Slope of log ratio vs log |λ| and max/min spread, per ray.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySummary {
    pub arg: f64,
    pub slope: f64,
    pub spread: f64,
}

/// One solve per λ (in parallel, collected in order).
pub fn ratio_sweep(sweep: &RaySweep, data: &ResolventData, fp: &FluidParams, grid: &GridSpec) -> Result<Vec<SweepRow>> {
    sweep
        .lambdas()
        .par_iter()
        .map(|&(arg, mag, lambda)| {
            let field = if sweep.surface {
                solve_rswith(data, lambda, fp, grid)?
            } else {
                solve_rswithout(data, lambda, fp, grid)?
            };
            let (_, report) = norms_and_ratio(&field, data, grid, sweep.q)?;
            Ok(SweepRow { arg, mag, report })
        })
        .collect()
}

pub fn summarize(rows: &[SweepRow]) -> Vec<RaySummary> {
    let mut args: Vec<f64> = Vec::new();
    for r in rows {
        if !args.contains(&r.arg) {
            args.push(r.arg);
        }
    }
    args.into_iter()
        .map(|arg| {
            let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.arg == arg).map(|r| (r.mag, r.report.ratio)).collect();
            let mx = pts.iter().map(|p| p.1).fold(0.0, f64::max);
            let mn = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let slope = if pts.len() > 1 { loglog_slope(&pts) } else { 0.0 };
            RaySummary { arg, slope, spread: if mn > 0.0 { mx / mn } else { f64::INFINITY } }
        })
        .collect()
}
