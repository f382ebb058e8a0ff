//! Seeded random band-limited test functions and empirical operator norms.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::apply::{apply_t_tilde, KernelMatrices, TimeSlices};
use super::halfspace::{cell_nodes, HalfSpaceFunction};
use super::multiplier::Multiplier;
use crate::error::{Error, Result};
use crate::resolvent::GridSpec;

/// Ensemble shape. Vertical rates are log-uniform in `[rate_min, rate_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub size: usize,
    pub seed: u64,
    /// Tangential modes with `0 < max_j |k_j| ≤ band`.
    #[serde(default = "default_band")]
    pub band: i64,
    #[serde(default = "default_terms")]
    pub terms: usize,
    #[serde(default = "default_rate_min")]
    pub rate_min: f64,
    #[serde(default = "default_rate_max")]
    pub rate_max: f64,
}

fn default_band() -> i64 {
    2
}
fn default_terms() -> usize {
    3
}
fn default_rate_min() -> f64 {
    0.2
}
fn default_rate_max() -> f64 {
    5.0
}

impl EnsembleSpec {
    pub fn new(size: usize, seed: u64) -> Self {
        EnsembleSpec { size, seed, band: default_band(), terms: default_terms(), rate_min: default_rate_min(), rate_max: default_rate_max() }
    }

    pub fn validated(self) -> Result<Self> {
        if self.size == 0 || self.terms == 0 || self.band < 1 {
            return Err(Error::InvalidParameter("ensemble size, terms and band must be positive".into()));
        }
        if !(self.rate_min > 0.0 && self.rate_max >= self.rate_min && self.rate_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("rates [{}, {}]", self.rate_min, self.rate_max)));
        }
        Ok(self)
    }
}

/// One member: per mode, `Σ_r c_r e^{−s_r y}`. Independent of the grid, so refinements
/// see the same functions.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub modes: Vec<(Vec<i64>, Vec<(C64, f64)>)>,
}

impl Member {
    pub fn value(&self, idx: usize, y: f64) -> C64 {
        self.modes[idx].1.iter().map(|(c, s)| c * (-s * y).exp()).sum()
    }

    pub fn sample(&self, grid: &GridSpec) -> Result<HalfSpaceFunction> {
        let (y, _) = cell_nodes(grid);
        let values = (0..self.modes.len()).map(|a| y.iter().map(|&y| self.value(a, y)).collect()).collect();
        let modes: Vec<Vec<i64>> = self.modes.iter().map(|m| m.0.clone()).collect();
        if let Some(bad) = modes.iter().find(|k| !grid.contains_mode(k)) {
            return Err(Error::InvalidParameter(format!("ensemble mode {bad:?} outside the grid band")));
        }
        Ok(HalfSpaceFunction { grid: grid.clone(), modes, values })
    }
}

fn band_modes(dim: usize, band: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|k| (-band..=band).map(move |v| [k.clone(), vec![v]].concat())).collect();
    }
    out.retain(|k| k.iter().any(|&v| v != 0));
    out
}

/// `spec.size` members in `n` dimensions, deterministic in `spec.seed`.
pub fn ensemble(spec: &EnsembleSpec, n: usize) -> Result<Vec<Member>> {
    let spec = spec.clone().validated()?;
    let modes = band_modes(n - 1, spec.band);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = (spec.rate_min.ln(), spec.rate_max.ln());
    Ok((0..spec.size)
        .map(|_| Member {
            modes: modes
                .iter()
                .map(|k| {
                    let terms = (0..spec.terms)
                        .map(|_| {
                            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                            let s = if hi > lo { rng.random_range(lo..hi).exp() } else { spec.rate_min };
                            (c, s)
                        })
                        .collect();
                    (k.clone(), terms)
                })
                .collect(),
        })
        .collect())
}

/// `max_f ‖T[m]f‖_q / ‖f‖_q` over the ensemble, plus the kernel's singular-scale indicator.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundEstimate {
    pub ratio: f64,
    pub singular_indicator: f64,
}

pub fn empirical_bound(m: &dyn Multiplier, grid: &GridSpec, q: f64, members: &[Member]) -> Result<BoundEstimate> {
    let Some(first) = members.first() else { return Ok(BoundEstimate { ratio: 0.0, singular_indicator: 0.0 }) };
    let modes: Vec<Vec<i64>> = first.modes.iter().map(|m| m.0.clone()).collect();
    let k = KernelMatrices::build(m, grid, &modes)?;
    let ratios: Vec<f64> = members
        .par_iter()
        .map(|mem| {
            let f = mem.sample(grid)?;
            let nf = f.norm(q)?;
            if nf == 0.0 {
                return Ok(0.0);
            }
            Ok(k.apply(&f)?.norm(q)? / nf)
        })
        .collect::<Result<_>>()?;
    Ok(BoundEstimate { ratio: ratios.into_iter().fold(0.0, f64::max), singular_indicator: k.singular_indicator })
}

/// Empirical norms on `levels` grids, each with `N_v` doubled.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub label: String,
    pub q: f64,
    pub n_v: Vec<usize>,
    pub norms: Vec<f64>,
    pub singular_indicator: f64,
}

impl Refinement {
    /// Largest relative change between consecutive levels.
    pub fn drift(&self) -> f64 {
        self.norms.windows(2).map(|w| ((w[1] - w[0]) / w[0].abs().max(f64::MIN_POSITIVE)).abs()).fold(0.0, f64::max)
    }

    /// `norm_last / norm_first`.
    pub fn growth(&self) -> f64 {
        self.norms.last().unwrap_or(&0.0) / self.norms.first().copied().unwrap_or(1.0).max(f64::MIN_POSITIVE)
    }
}

pub fn refinement_study(m: &dyn Multiplier, grid: &GridSpec, q: f64, members: &[Member], levels: usize) -> Result<Refinement> {
    let mut g = grid.clone();
    let mut out = Refinement { label: m.label(), q, n_v: Vec::new(), norms: Vec::new(), singular_indicator: 0.0 };
    for _ in 0..levels {
        let b = empirical_bound(m, &g, q, members)?;
        out.n_v.push(g.n_v);
        out.norms.push(b.ratio);
        out.singular_indicator = out.singular_indicator.max(b.singular_indicator);
        g = g.refined();
    }
    Ok(out)
}

/// `max ‖e^{−γt}T̃_γ g‖_{L_p(L_q)} / ‖e^{−γt}g‖_{L_p(L_q)}` over `g = b(t)·f` with `f` from
/// the ensemble and `b` a smooth bump on `[0, period)` (sampled at `slices` points).
pub fn empirical_bound_tilde<F>(family: F, gamma: f64, grid: &GridSpec, p: f64, q: f64, members: &[Member], period: f64, slices: usize) -> Result<f64>
where
    F: Fn(C64) -> Result<Box<dyn Multiplier>> + Sync,
{
    if slices < 2 || !(period > 0.0) {
        return Err(Error::InvalidParameter("need at least two time slices on a positive period".into()));
    }
    let dt = period / slices as f64;
    let bump = |t: f64| {
        let u = t / period;
        (std::f64::consts::PI * u).sin().powi(4)
    };
    let mut best: f64 = 0.0;
    for mem in members {
        let f = mem.sample(grid)?;
        let slices: Vec<HalfSpaceFunction> = (0..slices)
            .map(|k| {
                let b = bump(k as f64 * dt);
                let mut s = f.clone();
                s.values.iter_mut().flatten().for_each(|z| *z *= b);
                s
            })
            .collect();
        let g = TimeSlices { dt, slices };
        let tg = apply_t_tilde(&family, gamma, &g)?;
        let den = g.weighted(-gamma).norm(p, q)?;
        if den > 0.0 {
            best = best.max(tg.weighted(-gamma).norm(p, q)? / den);
        }
    }
    Ok(best)
}
