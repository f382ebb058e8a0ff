//! Tangential torus, graded vertical nodes, and the FFT plumbing between them.

use std::sync::Arc;

use num_complex::Complex64 as C64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Torus `∏ [0, 2πL_j)` with `N_j` points per direction, and on each side of the interface
/// the nodes `x_i = X·(e^{βi/N_v} − 1)/(e^β − 1)`, `i = 0..=N_v` (node 0 is the one-sided trace).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
    pub n_tan: Vec<usize>,
    pub lengths: Vec<f64>,
    pub n_v: usize,
    pub x_max: f64,
    #[serde(default = "default_grading")]
    pub grading: f64,
}

fn default_grading() -> f64 {
    8.0
}

impl GridSpec {
    /// Square torus of side 2π, `N` points per direction.
    pub fn cube(n: usize, n_tan: usize, n_v: usize, x_max: f64) -> Result<Self> {
        GridSpec { n, n_tan: vec![n_tan; n.saturating_sub(1)], lengths: vec![1.0; n.saturating_sub(1)], n_v, x_max, grading: default_grading() }
            .validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(2..=3).contains(&self.n) {
            return Err(Error::Dimension(format!("n = {} (expected 2 or 3)", self.n)));
        }
        if self.n_tan.len() != self.n - 1 || self.lengths.len() != self.n - 1 {
            return Err(Error::Dimension(format!("need {} tangential counts and lengths", self.n - 1)));
        }
        if let Some(bad) = self.n_tan.iter().find(|&&m| m < 2 || !m.is_power_of_two()) {
            return Err(Error::InvalidParameter(format!("tangential count {bad} is not a power of two >= 2")));
        }
        if self.lengths.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(Error::InvalidParameter("torus lengths must be positive".into()));
        }
        if self.n_v < 2 {
            return Err(Error::InvalidParameter(format!("n_v = {} (need >= 2)", self.n_v)));
        }
        if !(self.x_max > 0.0 && self.x_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("x_max = {}", self.x_max)));
        }
        if !(self.grading >= 0.0 && self.grading.is_finite()) {
            return Err(Error::InvalidParameter(format!("grading = {}", self.grading)));
        }
        Ok(self)
    }

    /// Same grid with `N_v` doubled; old nodes are a subset of the new ones.
    pub fn refined(&self) -> Self {
        GridSpec { n_v: self.n_v * 2, ..self.clone() }
    }

    /// Distances `|x_n|` of the vertical nodes, increasing from 0 to X.
    pub fn vertical_nodes(&self) -> Vec<f64> {
        let nv = self.n_v as f64;
        (0..=self.n_v)
            .map(|i| {
                if self.grading == 0.0 {
                    self.x_max * i as f64 / nv
                } else {
                    self.x_max * (self.grading * i as f64 / nv).exp_m1() / self.grading.exp_m1()
                }
            })
            .collect()
    }

    /// Trapezoid weights on [`Self::vertical_nodes`].
    pub fn vertical_weights(&self) -> Vec<f64> {
        trapezoid_weights(&self.vertical_nodes())
    }

    pub fn xi(&self, k: &[i64]) -> Vec<f64> {
        k.iter().zip(&self.lengths).map(|(&k, &l)| k as f64 / l).collect()
    }

    /// Modes strictly inside the band: `|k_j| < N_j/2` (Nyquist excluded).
    pub fn contains_mode(&self, k: &[i64]) -> bool {
        k.len() == self.n - 1 && k.iter().zip(&self.n_tan).all(|(&k, &m)| k.unsigned_abs() < (m / 2) as u64)
    }

    pub fn torus_volume(&self) -> f64 {
        self.lengths.iter().map(|l| 2.0 * std::f64::consts::PI * l).product()
    }

    pub fn tangential_points(&self) -> usize {
        self.n_tan.iter().product()
    }

    pub fn torus(&self) -> Torus {
        Torus::new(&self.n_tan)
    }
}

pub fn trapezoid_weights(x: &[f64]) -> Vec<f64> {
    let mut w = vec![0.0; x.len()];
    for i in 1..x.len() {
        let h = 0.5 * (x[i] - x[i - 1]);
        w[i - 1] += h;
        w[i] += h;
    }
    w
}

/// Row-major periodic array with `f(x) = Σ_k c_k e^{2πi k·i/N}` convention.
pub struct Torus {
    dims: Vec<usize>,
    fwd: Vec<Arc<dyn Fft<f64>>>,
    inv: Vec<Arc<dyn Fft<f64>>>,
}

impl Torus {
    pub fn new(dims: &[usize]) -> Self {
        let mut planner = FftPlanner::new();
        Torus {
            dims: dims.to_vec(),
            fwd: dims.iter().map(|&m| planner.plan_fft_forward(m)).collect(),
            inv: dims.iter().map(|&m| planner.plan_fft_inverse(m)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flat index of the (signed) mode `k`.
    pub fn index(&self, k: &[i64]) -> usize {
        k.iter().zip(&self.dims).fold(0, |acc, (&k, &m)| acc * m + k.rem_euclid(m as i64) as usize)
    }

    /// Signed mode at a flat index (upper half maps to negatives; Nyquist stays positive).
    pub fn mode(&self, mut idx: usize) -> Vec<i64> {
        let mut k = vec![0; self.dims.len()];
        for (slot, &m) in k.iter_mut().zip(&self.dims).rev() {
            let r = (idx % m) as i64;
            idx /= m;
            *slot = if r > m as i64 / 2 { r - m as i64 } else { r };
        }
        k
    }

    fn apply(&self, data: &mut [C64], plans: &[Arc<dyn Fft<f64>>]) {
        assert_eq!(data.len(), self.len());
        let mut stride = 1;
        for axis in (0..self.dims.len()).rev() {
            let m = self.dims[axis];
            let block = m * stride;
            let mut line = vec![C64::new(0.0, 0.0); m];
            for start in (0..data.len()).step_by(block) {
                for off in 0..stride {
                    for (i, v) in line.iter_mut().enumerate() {
                        *v = data[start + off + i * stride];
                    }
                    plans[axis].process(&mut line);
                    for (i, v) in line.iter().enumerate() {
                        data[start + off + i * stride] = *v;
                    }
                }
            }
            stride = block;
        }
    }

    /// Coefficients → point values.
    pub fn to_physical(&self, data: &mut [C64]) {
        self.apply(data, &self.inv);
    }

    /// Point values → coefficients (normalized by the point count).
    pub fn to_modes(&self, data: &mut [C64]) {
        self.apply(data, &self.fwd);
        let s = 1.0 / self.len() as f64;
        data.iter_mut().for_each(|v| *v *= s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_nodes_monotone_and_nested() {
        let g = GridSpec::cube(3, 8, 16, 10.0).unwrap();
        let x = g.vertical_nodes();
        assert_eq!(x[0], 0.0);
        assert!((x[16] - 10.0).abs() < 1e-12);
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        let xr = g.refined().vertical_nodes();
        for (i, v) in x.iter().enumerate() {
            assert!((xr[2 * i] - v).abs() < 1e-12);
        }
        let w = g.vertical_weights();
        assert!((w.iter().sum::<f64>() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_grids() {
        assert!(GridSpec::cube(4, 8, 16, 1.0).is_err());
        assert!(GridSpec::cube(2, 6, 16, 1.0).is_err());
        assert!(GridSpec::cube(2, 8, 1, 1.0).is_err());
        assert!(GridSpec::cube(2, 8, 8, 0.0).is_err());
    }

    #[test]
    fn single_mode_roundtrip() {
        let t = Torus::new(&[8, 4]);
        let mut d = vec![C64::new(0.0, 0.0); 32];
        d[t.index(&[-3, 1])] = C64::new(2.0, -1.0);
        let mut p = d.clone();
        t.to_physical(&mut p);
        // x = (2π i/8, 2π j/4)
        let want = C64::new(2.0, -1.0) * (C64::i() * 2.0 * std::f64::consts::PI * (-3.0 * 5.0 / 8.0 + 1.0 * 2.0 / 4.0)).exp();
        assert!((p[5 * 4 + 2] - want).norm() < 1e-12);
        t.to_modes(&mut p);
        for (a, b) in p.iter().zip(&d) {
            assert!((a - b).norm() < 1e-13);
        }
        assert_eq!(t.mode(t.index(&[-3, 1])), vec![-3, 1]);
    }

    #[test]
    fn band_excludes_nyquist() {
        let g = GridSpec::cube(3, 8, 4, 1.0).unwrap();
        assert!(g.contains_mode(&[3, -3]));
        assert!(!g.contains_mode(&[4, 0]));
        assert!(!g.contains_mode(&[1]));
    }
}
