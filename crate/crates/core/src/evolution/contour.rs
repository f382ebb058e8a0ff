//! The truncated vertical line `λ = γ + iτ` and the FFT assembly of the inverse transform.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `τ_m = −τ_max + (m + ½)h`, `h = 2τ_max/N` (midpoint rule, every weight `h`).
///
/// The discrete inverse is `P`-periodic in time, `P = 2π/h`; it is sampled at
/// `M = oversample·N` points per period.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContourSpec {
    pub gamma: f64,
    pub nodes: usize,
    pub tau_max: f64,
    #[serde(default = "one")]
    pub oversample: usize,
}

fn one() -> usize {
    1
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec { gamma: 1.0, nodes: 2048, tau_max: 409.6, oversample: 1 }
    }
}

impl ContourSpec {
    pub fn validated(self) -> Result<Self> {
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!("contour abscissa γ = {} must be positive", self.gamma)));
        }
        if self.nodes < 2 || !self.nodes.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("contour nodes = {} must be a power of two", self.nodes)));
        }
        if !(self.tau_max > 0.0 && self.tau_max.is_finite()) || self.oversample == 0 {
            return Err(Error::InvalidParameter("τ_max must be positive and oversample ≥ 1".into()));
        }
        Ok(self)
    }

    pub fn step(&self) -> f64 {
        2.0 * self.tau_max / self.nodes as f64
    }

    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.step()
    }

    pub fn taus(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.nodes).map(|m| -self.tau_max + (m as f64 + 0.5) * h).collect()
    }

    pub fn lambdas(&self) -> Vec<C64> {
        self.taus().into_iter().map(|t| C64::new(self.gamma, t)).collect()
    }

    pub fn weights(&self) -> Vec<f64> {
        vec![self.step(); self.nodes]
    }

    pub fn time_points(&self) -> usize {
        self.nodes * self.oversample
    }

    /// One period of time nodes, increasing, starting at `−P/2`; `t = 0` sits at index `M/2`.
    pub fn times(&self) -> Vec<f64> {
        let m = self.time_points();
        let dt = self.period() / m as f64;
        (0..m).map(|k| (k as f64 - (m / 2) as f64) * dt).collect()
    }

    pub fn assembler(&self) -> Assembler {
        Assembler::new(self)
    }
}

/// Reusable FFT plan for [`ContourSpec::times`].
#[derive(Clone)]
pub struct Assembler {
    spec: ContourSpec,
    fft: Arc<dyn Fft<f64>>,
    /// `(h/2π)·e^{i(−τ_max + h/2)t_k}` per output slot (in `times()` order).
    phase: Vec<C64>,
    times: Vec<f64>,
}

impl Assembler {
    fn new(spec: &ContourSpec) -> Self {
        let m = spec.time_points();
        let fft = FftPlanner::new().plan_fft_inverse(m);
        let h = spec.step();
        let times = spec.times();
        let c = h / (2.0 * std::f64::consts::PI);
        let phase = times.iter().map(|&t| c * C64::from_polar(1.0, (-spec.tau_max + 0.5 * h) * t)).collect();
        Assembler { spec: spec.clone(), fft, phase, times }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// `e^{−γt}·U(t)` at every time node from `F(λ_m)`: the periodic, damped inverse.
    pub fn damped(&self, values: &[C64]) -> Vec<C64> {
        let m = self.spec.time_points();
        let mut buf = vec![C64::new(0.0, 0.0); m];
        buf[..values.len()].copy_from_slice(values);
        self.fft.process(&mut buf);
        // FFT slot k holds t = k·dt (mod P); times() starts at −P/2
        let half = m / 2;
        (0..m).map(|i| buf[(i + half) % m] * self.phase[i]).collect()
    }

    /// `U(t)` itself.
    pub fn undamped(&self, values: &[C64]) -> Vec<C64> {
        let g = self.spec.gamma;
        self.damped(values).into_iter().zip(&self.times).map(|(u, &t)| u * (g * t).exp()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let c = ContourSpec::default().validated().unwrap();
        assert!((c.step() - 0.4).abs() < 1e-15);
        assert!((c.weights().iter().sum::<f64>() - 2.0 * c.tau_max).abs() < 1e-9);
        let t = c.taus();
        assert!((t[0] + t[c.nodes - 1]).abs() < 1e-12);
        assert_eq!(c.times()[c.time_points() / 2], 0.0);
        assert!(ContourSpec { nodes: 1000, ..c.clone() }.validated().is_err());
        assert!(ContourSpec { gamma: 0.0, ..c }.validated().is_err());
    }

    #[test]
    fn inverts_a_ramp() {
        // 1 − e^{−t} ↔ 1/(λ(λ+1))
        for over in [1, 2] {
            let c = ContourSpec { oversample: over, ..ContourSpec::default() };
            let f: Vec<C64> = c.lambdas().iter().map(|l| 1.0 / (l * (l + 1.0))).collect();
            let a = c.assembler();
            let u = a.undamped(&f);
            for (&t, v) in a.times().iter().zip(&u) {
                let exact = if t > 0.0 { 1.0 - (-t).exp() } else { 0.0 };
                if t.abs() < 6.0 {
                    assert!((v - exact).norm() < 2e-3, "t = {t}: {v} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn direct_sum_agrees_with_fft() {
        let c = ContourSpec { nodes: 64, tau_max: 20.0, gamma: 1.5, oversample: 2 };
        let lam = c.lambdas();
        let f: Vec<C64> = lam.iter().map(|l| 1.0 / (l + 0.3)).collect();
        let a = c.assembler();
        let fast = a.undamped(&f);
        let h = c.step();
        for (k, &t) in a.times().iter().enumerate() {
            let direct: C64 = lam.iter().zip(&f).map(|(l, v)| v * (l * t).exp()).sum::<C64>() * h / (2.0 * std::f64::consts::PI);
            assert!((direct - fast[k]).norm() < 1e-12 * direct.norm().max(1.0));
        }
    }
}
