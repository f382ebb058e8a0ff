//! `T[m]f(x) = ∫₀^∞ F⁻¹[m(ξ′, x_n + y_n) f̂(ξ′, y_n)] dy_n` on the graded cells, and its
//! time-conjugated form `T̃_γ`.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::halfspace::{cell_nodes, HalfSpaceFunction};
use super::multiplier::Multiplier;
use crate::error::{Error, Result};
use crate::resolvent::GridSpec;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `|m(2y₀)|·2y₀` at or above this means the symbol is x_n⁻¹-singular at the grid scale
/// and the midpoint rule is only resolving it through the grading.
pub const SINGULAR_WARN: f64 = 0.1;

/// Per-mode quadrature matrices `K_ij = m(ξ′, x_i + y_j)·w_j`, row-major.
#[derive(Debug, Clone)]
pub struct KernelMatrices {
    pub grid: GridSpec,
    pub modes: Vec<Vec<i64>>,
    pub mats: Vec<Vec<C64>>,
    /// Largest `|m(2y₀)|·2y₀` over modes.
    pub singular_indicator: f64,
}

impl KernelMatrices {
    pub fn build(m: &dyn Multiplier, grid: &GridSpec, modes: &[Vec<i64>]) -> Result<Self> {
        let (y, w) = cell_nodes(grid);
        let nv = y.len();
        let sums: Vec<f64> = y.iter().flat_map(|&x| y.iter().map(move |&yy| x + yy)).collect();
        let built: Vec<(Vec<C64>, f64)> = modes
            .par_iter()
            .map(|k| {
                let xi = grid.xi(k);
                let mut vals = m.eval(&xi, &sums)?;
                if vals.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidParameter(format!("{} is not finite on the grid at mode {k:?}", m.label())));
                }
                let ind = vals[0].norm() * sums[0];
                for row in vals.chunks_mut(nv) {
                    row.iter_mut().zip(&w).for_each(|(v, w)| *v *= w);
                }
                Ok((vals, ind))
            })
            .collect::<Result<_>>()?;
        let singular_indicator = built.iter().map(|b| b.1).fold(0.0, f64::max);
        if singular_indicator >= SINGULAR_WARN {
            log::warn!(
                "{}: |m|·s = {singular_indicator:.3} at the smallest node sum; the kernel is x_n⁻¹-singular and only the grading resolves it",
                m.label()
            );
        }
        Ok(KernelMatrices { grid: grid.clone(), modes: modes.to_vec(), mats: built.into_iter().map(|b| b.0).collect(), singular_indicator })
    }

    pub fn apply(&self, f: &HalfSpaceFunction) -> Result<HalfSpaceFunction> {
        if f.grid != self.grid {
            return Err(Error::Dimension("function and kernel live on different grids".into()));
        }
        let nv = self.grid.n_v;
        let values = f
            .modes
            .iter()
            .zip(&f.values)
            .map(|(k, v)| {
                let idx = self.modes.iter().position(|m| m == k).ok_or_else(|| Error::Dimension(format!("no kernel for mode {k:?}")))?;
                Ok(self.mats[idx].chunks(nv).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
            })
            .collect::<Result<_>>()?;
        Ok(HalfSpaceFunction { grid: f.grid.clone(), modes: f.modes.clone(), values })
    }
}

/// `T[m]f` on the cell midpoints of `f`'s grid.
pub fn apply_t(m: &dyn Multiplier, f: &HalfSpaceFunction) -> Result<HalfSpaceFunction> {
    KernelMatrices::build(m, &f.grid, &f.modes)?.apply(f)
}

/// A time-periodic half-space function: `slices[k]` at `t_k = k·dt`, `k = 0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSlices {
    pub dt: f64,
    pub slices: Vec<HalfSpaceFunction>,
}

impl TimeSlices {
    /// `(Σ_k dt·‖f(t_k)‖_q^p)^{1/p}`.
    pub fn norm(&self, p: f64, q: f64) -> Result<f64> {
        let mut s = 0.0;
        for f in &self.slices {
            s += self.dt * f.norm(q)?.powf(p);
        }
        Ok(s.powf(1.0 / p))
    }

    /// `e^{c t_k}·f(t_k)`.
    pub fn weighted(&self, c: f64) -> Self {
        let mut out = self.clone();
        for (k, f) in out.slices.iter_mut().enumerate() {
            let w = (c * k as f64 * self.dt).exp();
            f.values.iter_mut().flatten().for_each(|z| *z *= w);
        }
        out
    }
}

/// `T̃_γ[m_λ]g = e^{γt}F⁻¹_{τ→t} T[m_{γ+iτ}] F_{t→τ}(e^{−γt}g)` with the discrete periodic
/// transform in time; `family(λ)` returns the symbol at `λ`.
pub fn apply_t_tilde<F>(family: F, gamma: f64, g: &TimeSlices) -> Result<TimeSlices>
where
    F: Fn(C64) -> Result<Box<dyn Multiplier>> + Sync,
{
    let mt = g.slices.len();
    let Some(first) = g.slices.first() else { return Ok(g.clone()) };
    if g.slices.iter().any(|s| s.grid != first.grid || s.modes != first.modes) {
        return Err(Error::Dimension("time slices differ in grid or modes".into()));
    }
    let nv = first.grid.n_v;
    let damped = g.weighted(-gamma);
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(mt);
    let inv = planner.plan_fft_inverse(mt);
    // spec[l][mode][node]
    let nm = first.modes.len();
    let mut spec = vec![vec![vec![ZERO; nv]; nm]; mt];
    let mut line = vec![ZERO; mt];
    for a in 0..nm {
        for i in 0..nv {
            for (t, s) in damped.slices.iter().enumerate() {
                line[t] = s.values[a][i];
            }
            fwd.process(&mut line);
            for (l, v) in line.iter().enumerate() {
                spec[l][a][i] = *v / mt as f64;
            }
        }
    }
    let period = mt as f64 * g.dt;
    let out: Vec<Vec<Vec<C64>>> = spec
        .into_par_iter()
        .enumerate()
        .map(|(l, vals)| {
            let freq = if l <= mt / 2 { l as i64 } else { l as i64 - mt as i64 };
            let tau = 2.0 * std::f64::consts::PI * freq as f64 / period;
            let m = family(C64::new(gamma, tau))?;
            let f = HalfSpaceFunction { grid: first.grid.clone(), modes: first.modes.clone(), values: vals };
            Ok(apply_t(m.as_ref(), &f)?.values)
        })
        .collect::<Result<_>>()?;
    let mut slices = vec![HalfSpaceFunction { grid: first.grid.clone(), modes: first.modes.clone(), values: vec![vec![ZERO; nv]; nm] }; mt];
    for a in 0..nm {
        for i in 0..nv {
            for (l, v) in line.iter_mut().enumerate() {
                *v = out[l][a][i];
            }
            inv.process(&mut line);
            for (t, s) in slices.iter_mut().enumerate() {
                s.values[a][i] = line[t];
            }
        }
    }
    Ok(TimeSlices { dt: g.dt, slices }.weighted(gamma))
}
