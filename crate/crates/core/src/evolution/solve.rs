//! One resolvent solve per contour node, assembled into time series.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::contour::ContourSpec;
use super::profile::{laplace_of_data, TimeData};
use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};
use crate::resolvent::{solve_rswith, solve_rswithout, GridSpec, TwoPhaseField};

/// Solves of the *spatial* data at every contour node; the profile enters as the scalar
/// `scale[m] = p̂(λ_m)`.
#[derive(Debug, Clone)]
pub struct EvolutionSolution {
    pub contour: ContourSpec,
    pub data: TimeData,
    pub grid: GridSpec,
    pub fluid: FluidParams,
    pub with_surface: bool,
    pub lambdas: Vec<C64>,
    pub scale: Vec<C64>,
    pub fields: Vec<TwoPhaseField>,
    /// Integrand size at the truncation ends relative to its maximum (interface traces).
    pub tail: f64,
}

/// Time samples of named channels over one period of the discrete inverse.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    /// `channels[c][k]` at `times[k]`.
    pub channels: Vec<Vec<C64>>,
}

impl TimeSeries {
    pub fn zero_index(&self) -> usize {
        self.times.len() / 2
    }
}

const TAIL_WARN: f64 = 1e-3;

pub fn solve_evolution(data: &TimeData, contour: &ContourSpec, fp: &FluidParams, grid: &GridSpec, with_surface: bool) -> Result<EvolutionSolution> {
    let contour = contour.clone().validated()?;
    let data = data.clone().validated()?;
    let rate = data.profile.growth_rate();
    if contour.gamma <= rate {
        return Err(Error::Growth { rate, gamma: contour.gamma });
    }
    if with_surface && contour.gamma < 1.0 {
        return Err(Error::InvalidParameter(format!("surface problem needs γ ≥ 1, got {}", contour.gamma)));
    }
    let lambdas = contour.lambdas();
    let fields: Vec<TwoPhaseField> = lambdas
        .par_iter()
        .map(|&l| if with_surface { solve_rswith(&data.spatial, l, fp, grid) } else { solve_rswithout(&data.spatial, l, fp, grid) })
        .collect::<Result<_>>()?;
    let scale: Vec<C64> = lambdas.iter().map(|&l| data.profile.laplace(l)).collect::<Result<_>>()?;
    let size: Vec<f64> = fields
        .iter()
        .zip(&scale)
        .map(|(f, s)| -> Result<f64> {
            let tr: f64 = f.traces()?.iter().flat_map(|t| t.iter().flatten()).map(|z| z.norm()).sum();
            Ok(tr * s.norm())
        })
        .collect::<Result<_>>()?;
    let max = size.iter().cloned().fold(0.0, f64::max);
    let tail = if max > 0.0 { size[0].max(size[size.len() - 1]) / max } else { 0.0 };
    if tail > TAIL_WARN {
        log::warn!("contour truncation: integrand at ±τ_max is {tail:.2e} of its maximum");
    }
    Ok(EvolutionSolution { contour, data, grid: grid.clone(), fluid: *fp, with_surface, lambdas, scale, fields, tail })
}

impl EvolutionSolution {
    /// Assemble `U(t)` for channels given per contour node by `values(field)` (unscaled
    /// spatial solve; the profile factor is applied here).
    pub fn series<F>(&self, values: F) -> Result<TimeSeries>
    where
        F: Fn(&TwoPhaseField) -> Result<Vec<C64>> + Sync,
    {
        let per_node: Vec<Vec<C64>> = self
            .fields
            .par_iter()
            .zip(&self.scale)
            .map(|(f, s)| Ok(values(f)?.into_iter().map(|v| v * s).collect()))
            .collect::<Result<_>>()?;
        let width = per_node.first().map_or(0, |v| v.len());
        let asm = self.contour.assembler();
        let channels = (0..width)
            .into_par_iter()
            .map(|c| {
                let col: Vec<C64> = per_node.iter().map(|v| v[c]).collect();
                asm.undamped(&col)
            })
            .collect();
        Ok(TimeSeries { times: asm.times().to_vec(), channels })
    }

    /// Velocity and pressure of every mode at the given heights (`x_n ≥ 0` is read on the
    /// upper side, `x_n < 0` on the lower one; `0` gives both traces).
    pub fn point_series(&self, heights: &[f64]) -> Result<TimeSeries> {
        self.series(|f| point_values(f, heights, true))
    }

    /// Spatial L₂ norm of the velocity at every time node (Parseval in x′, trapezoid in x_n).
    pub fn velocity_norms(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let nodes = self.grid.vertical_nodes();
        let w = self.grid.vertical_weights();
        let vol = self.grid.torus_volume();
        let ts = self.series(|f| {
            let mut out = Vec::new();
            for m in &f.modes {
                for s in Side::BOTH {
                    for &x in &nodes {
                        out.extend(m.velocity(s, s.sign() * x, 0)?);
                    }
                }
            }
            Ok(out)
        })?;
        let n = self.grid.n;
        let nv = nodes.len();
        let norms = (0..ts.times.len())
            .map(|k| {
                let mut acc = 0.0;
                for (c, ch) in ts.channels.iter().enumerate() {
                    let node = (c / n) % nv;
                    acc += w[node] * vol * ch[k].norm_sqr();
                }
                acc.sqrt()
            })
            .collect();
        Ok((ts.times, norms))
    }

    /// `(‖U(0)‖, max_t ‖U(t)‖)` — zero initial data means the first is at quadrature level.
    pub fn causality(&self) -> Result<(f64, f64)> {
        let (times, norms) = self.velocity_norms()?;
        let k0 = times.len() / 2;
        debug_assert_eq!(times[k0], 0.0);
        Ok((norms[k0], norms.iter().cloned().fold(0.0, f64::max)))
    }

    /// Re-transform the assembled velocity at `λ*` (Simpson over `[0, P/2)`) and compare with a
    /// direct resolvent solve of the transformed data, at the given heights. Returns the
    /// relative max-norm discrepancy. The pressure is left out: it follows `∂_t` of the data
    /// instantly and may jump at `t = 0`, where the truncated inverse rings.
    pub fn roundtrip(&self, lambda_star: C64, heights: &[f64]) -> Result<f64> {
        if lambda_star.re <= self.contour.gamma {
            return Err(Error::InvalidParameter(format!("λ* = {lambda_star} must lie right of the contour")));
        }
        let ts = self.series(|f| point_values(f, heights, false))?;
        let transformed: Vec<C64> = ts.channels.iter().map(|ch| laplace_of_series(&ts.times, ch, lambda_star)).collect();
        let direct_data = laplace_of_data(&self.data, lambda_star)?;
        let direct = if self.with_surface {
            solve_rswith(&direct_data, lambda_star, &self.fluid, &self.grid)?
        } else {
            solve_rswithout(&direct_data, lambda_star, &self.fluid, &self.grid)?
        };
        let exact = point_values(&direct, heights, false)?;
        let scale = exact.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let err = exact.iter().zip(&transformed).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        Ok(if scale > 0.0 { err / scale } else { err })
    }
}

fn point_values(f: &TwoPhaseField, heights: &[f64], with_pressure: bool) -> Result<Vec<C64>> {
    let mut out = Vec::new();
    for m in &f.modes {
        for &x in heights {
            let sides: &[Side] = if x == 0.0 { &Side::BOTH } else if x > 0.0 { &[Side::Plus] } else { &[Side::Minus] };
            for &s in sides {
                out.extend(m.velocity(s, x, 0)?);
                if with_pressure {
                    out.push(m.pressure(s, x, 0)?);
                }
            }
        }
    }
    Ok(out)
}

/// `∫_0^T e^{−λt}u(t)dt` of a uniformly sampled channel by Simpson, `T` the last sample
/// reachable with an even number of panels from `t = 0`.
pub fn laplace_of_series(times: &[f64], values: &[C64], lambda: C64) -> C64 {
    let k0 = times.iter().position(|&t| t >= 0.0).unwrap_or(times.len());
    if times.len() < k0 + 3 {
        return C64::new(0.0, 0.0);
    }
    let dt = times[k0 + 1] - times[k0];
    let mut panels = times.len() - 1 - k0;
    panels -= panels % 2;
    let f = |i: usize| values[k0 + i] * (-lambda * times[k0 + i]).exp();
    let mut s = f(0) + f(panels);
    for i in 1..panels {
        s += f(i) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * dt / 3.0
}
