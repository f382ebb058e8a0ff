//! Functions on the half space `T^{n−1} × (0, Y)`: tangential modes × graded vertical cells.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::resolvent::GridSpec;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Cell midpoints and widths of the graded partition `y_i = Y·(e^{βi/N} − 1)/(e^β − 1)`:
/// every node is strictly positive, so kernels singular at `x_n + y_n = 0` are never hit.
pub fn cell_nodes(grid: &GridSpec) -> (Vec<f64>, Vec<f64>) {
    let edges = grid.vertical_nodes();
    edges.windows(2).map(|e| (0.5 * (e[0] + e[1]), e[1] - e[0])).unzip()
}

/// Modal values `values[mode][node]` on the cell midpoints, for the listed tangential modes.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpaceFunction {
    pub grid: GridSpec,
    pub modes: Vec<Vec<i64>>,
    pub values: Vec<Vec<C64>>,
}

impl HalfSpaceFunction {
    pub fn zero(grid: &GridSpec, modes: Vec<Vec<i64>>) -> Self {
        let nv = grid.n_v;
        let values = vec![vec![ZERO; nv]; modes.len()];
        HalfSpaceFunction { grid: grid.clone(), modes, values }
    }

    /// Sample `f(k, y)` on the cell midpoints.
    pub fn from_fn<F: Fn(&[i64], f64) -> C64>(grid: &GridSpec, modes: Vec<Vec<i64>>, f: F) -> Result<Self> {
        if let Some(bad) = modes.iter().find(|k| !grid.contains_mode(k) || k.iter().all(|&v| v == 0)) {
            return Err(Error::InvalidParameter(format!("mode {bad:?} is zero or outside the band")));
        }
        let (y, _) = cell_nodes(grid);
        let values = modes.iter().map(|k| y.iter().map(|&y| f(k, y)).collect()).collect();
        Ok(HalfSpaceFunction { grid: grid.clone(), modes, values })
    }

    /// `‖f‖_{L_q}` — Parseval in x′ for `q = 2`, sampling on the torus otherwise.
    pub fn norm(&self, q: f64) -> Result<f64> {
        if !(q > 1.0 && q.is_finite()) {
            return Err(Error::InvalidParameter(format!("q = {q}")));
        }
        let (_, w) = cell_nodes(&self.grid);
        let vol = self.grid.torus_volume();
        let mut total = 0.0;
        if q == 2.0 {
            for v in &self.values {
                total += v.iter().zip(&w).map(|(z, w)| z.norm_sqr() * w).sum::<f64>() * vol;
            }
            return Ok(total.sqrt());
        }
        let torus = self.grid.torus();
        let np = self.grid.tangential_points();
        let mut arr = vec![ZERO; np];
        for (i, wi) in w.iter().enumerate() {
            arr.iter_mut().for_each(|z| *z = ZERO);
            for (k, v) in self.modes.iter().zip(&self.values) {
                arr[torus.index(k)] += v[i];
            }
            torus.to_physical(&mut arr);
            total += arr.iter().map(|z| z.norm().powf(q)).sum::<f64>() * vol / np as f64 * wi;
        }
        Ok(total.powf(1.0 / q))
    }

    pub fn axpy(&mut self, s: C64, other: &HalfSpaceFunction) -> Result<()> {
        if self.modes != other.modes || self.grid != other.grid {
            return Err(Error::Dimension("half-space functions live on different modes or grids".into()));
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += s * y;
            }
        }
        Ok(())
    }
}

/// A function on both phases: `upper[mode][i]` at `+y_i`, `lower[mode][i]` at `−y_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhaseFunction {
    pub upper: HalfSpaceFunction,
    pub lower: HalfSpaceFunction,
}

impl TwoPhaseFunction {
    pub fn from_fn<F: Fn(&[i64], f64) -> C64>(grid: &GridSpec, modes: Vec<Vec<i64>>, f: F) -> Result<Self> {
        Ok(TwoPhaseFunction {
            upper: HalfSpaceFunction::from_fn(grid, modes.clone(), |k, y| f(k, y))?,
            lower: HalfSpaceFunction::from_fn(grid, modes, |k, y| f(k, -y))?,
        })
    }

    /// `‖f‖_{L_q}` over both phases.
    pub fn norm(&self, q: f64) -> Result<f64> {
        Ok((self.upper.norm(q)?.powf(q) + self.lower.norm(q)?.powf(q)).powf(1.0 / q))
    }
}

/// `⟦f⟧(x′, y) = f(x′, y) − f(x′, −y)` on `y > 0`; its limit at `y → 0+` is the interface jump.
pub fn jjump_extend(f: &TwoPhaseFunction) -> Result<HalfSpaceFunction> {
    let mut out = f.upper.clone();
    out.axpy(C64::new(-1.0, 0.0), &f.lower)?;
    Ok(out)
}
