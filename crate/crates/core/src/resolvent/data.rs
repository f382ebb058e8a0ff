//! Right-hand sides: interior force, boundary data in the bulk, and their interface jumps.
//!
//! Bulk data on each phase is a sum of tangential modes with vertical profile
//! `e^{−κ|x_n|}`; the force is a trig series on the vertically periodized box `[−X, X)`.

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::params::Side;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Vertical decay rate of the bulk data profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decay {
    /// κ fixed.
    Fixed(f64),
    /// κ = s·(|λ|^{1/2} + |ξ′|): the data lives on the same boundary-layer scale as the solution.
    Adapted(f64),
}

impl Default for Decay {
    fn default() -> Self {
        Decay::Fixed(1.0)
    }
}

impl Decay {
    pub fn rate(&self, lambda: C64, xi_abs: f64) -> f64 {
        match *self {
            Decay::Fixed(k) => k,
            Decay::Adapted(s) => s * (lambda.norm().sqrt() + xi_abs),
        }
    }

    fn validated(self) -> Result<Self> {
        let v = match self {
            Decay::Fixed(k) | Decay::Adapted(k) => k,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("decay parameter {v} must be positive")));
        }
        Ok(self)
    }
}

/// `c·e^{iπ m x_n / X}` — one vertical Fourier mode of the force at a fixed tangential mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceMode {
    pub m: i64,
    pub c: Vec<C64>,
}

/// Data of one tangential mode `k` (so `ξ_j = k_j/L_j`). Slot 0 is the upper phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeData {
    pub k: Vec<i64>,
    pub g: [Vec<C64>; 2],
    pub h: [Vec<C64>; 2],
    pub d: C64,
    pub f: Vec<ForceMode>,
}

impl ModeData {
    pub fn zero(k: Vec<i64>, n: usize) -> Self {
        ModeData { k, g: [vec![ZERO; n], vec![ZERO; n]], h: [vec![ZERO; n], vec![ZERO; n]], d: ZERO, f: Vec::new() }
    }

    pub fn g_jump(&self) -> Vec<C64> {
        self.g[0].iter().zip(&self.g[1]).map(|(p, m)| p - m).collect()
    }

    pub fn h_jump(&self) -> Vec<C64> {
        self.h[0].iter().zip(&self.h[1]).map(|(p, m)| p - m).collect()
    }

    /// Force at height `x_n` (either side; the force is defined across the interface).
    pub fn force_at(&self, x_n: f64, x_max: f64, n: usize) -> Vec<C64> {
        let mut out = vec![ZERO; n];
        for fm in &self.f {
            let e = (I * (std::f64::consts::PI * fm.m as f64 / x_max) * x_n).exp();
            for (o, c) in out.iter_mut().zip(&fm.c) {
                *o += c * e;
            }
        }
        out
    }

    fn scale(&mut self, s: C64) {
        for v in self.g.iter_mut().chain(self.h.iter_mut()) {
            v.iter_mut().for_each(|z| *z *= s);
        }
        self.d *= s;
        for fm in &mut self.f {
            fm.c.iter_mut().for_each(|z| *z *= s);
        }
    }
}

/// `∂_n^m e^{−κ|x_n|}` on the given side.
pub fn profile(kappa: f64, side: Side, x_n: f64, order: u32) -> f64 {
    (-kappa * side.sign()).powi(order as i32) * (-kappa * x_n.abs()).exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolventData {
    pub n: usize,
    pub modes: Vec<ModeData>,
    pub decay: Decay,
}

impl ResolventData {
    pub fn zero(n: usize) -> Self {
        ResolventData { n, modes: Vec::new(), decay: Decay::default() }
    }

    /// Checks shapes and drops modes the interface symbols cannot carry: the zero tangential
    /// mode (every interface symbol divides by A) and anything outside the grid's band.
    pub fn validated(mut self, grid: &GridSpec) -> Result<Self> {
        if self.n != grid.n {
            return Err(Error::Dimension(format!("data n = {} vs grid n = {}", self.n, grid.n)));
        }
        self.decay = self.decay.validated()?;
        let n = self.n;
        for md in &self.modes {
            let shapes_ok = md.k.len() == n - 1
                && md.g.iter().chain(md.h.iter()).all(|v| v.len() == n)
                && md.f.iter().all(|fm| fm.c.len() == n);
            if !shapes_ok {
                return Err(Error::Dimension(format!("mode {:?}: wrong component count", md.k)));
            }
        }
        let before = self.modes.len();
        self.modes.retain(|md| md.k.iter().any(|&k| k != 0) && grid.contains_mode(&md.k));
        if self.modes.len() != before {
            log::warn!("filtered {} data mode(s): zero tangential frequency or outside the band", before - self.modes.len());
        }
        let mut keys: Vec<&Vec<i64>> = self.modes.iter().map(|m| &m.k).collect();
        keys.sort();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("duplicate tangential mode in data".into()));
        }
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.modes.iter().all(|m| {
            m.g.iter().chain(m.h.iter()).flatten().all(|z| *z == ZERO)
                && m.d == ZERO
                && m.f.iter().all(|fm| fm.c.iter().all(|z| *z == ZERO))
        })
    }

    pub fn interface(&self) -> InterfaceData {
        InterfaceData {
            n: self.n,
            modes: self.modes.iter().map(|m| JumpMode { k: m.k.clone(), g: m.g_jump(), h: m.h_jump(), d: m.d }).collect(),
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        out.modes.iter_mut().for_each(|m| m.scale(s));
        out
    }

    /// Data shifted by `shift` in x′: every mode picks up the phase `e^{−iξ′·shift}`.
    pub fn translated(&self, shift: &[f64], grid: &GridSpec) -> Self {
        let mut out = self.clone();
        for m in &mut out.modes {
            let xi = grid.xi(&m.k);
            let phase: f64 = xi.iter().zip(shift).map(|(a, b)| a * b).sum();
            m.scale((-I * phase).exp());
        }
        out
    }

    /// Random smooth data on a single tangential mode; `with_force` adds two vertical force modes.
    pub fn random_single_mode<R: Rng>(n: usize, k: Vec<i64>, rng: &mut R, with_force: bool, with_d: bool) -> Self {
        let mut c = || C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let mut md = ModeData::zero(k, n);
        for v in md.g.iter_mut().chain(md.h.iter_mut()) {
            v.iter_mut().for_each(|z| *z = c());
        }
        if with_d {
            md.d = c();
        }
        if with_force {
            md.f = [1i64, -2].iter().map(|&m| ForceMode { m, c: (0..n).map(|_| c()).collect() }).collect();
        }
        ResolventData { n, modes: vec![md], decay: Decay::default() }
    }
}

/// Jumps ⟦g⟧, ⟦h⟧ and the kinematic datum per tangential mode.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpMode {
    pub k: Vec<i64>,
    pub g: Vec<C64>,
    pub h: Vec<C64>,
    pub d: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceData {
    pub n: usize,
    pub modes: Vec<JumpMode>,
}

impl InterfaceData {
    /// From point values on the tangential grid (`g`, `h`: n component arrays each).
    /// Zero and Nyquist modes are filtered with a warning when they carry energy.
    pub fn from_physical(grid: &GridSpec, g: &[Vec<C64>], h: &[Vec<C64>], d: &[C64]) -> Result<Self> {
        let n = grid.n;
        let np = grid.tangential_points();
        if g.len() != n || h.len() != n || g.iter().chain(h.iter()).any(|v| v.len() != np) || d.len() != np {
            return Err(Error::Dimension(format!("interface fields must be {n} arrays of {np} points")));
        }
        let torus = grid.torus();
        let to_modes = |v: &[C64]| {
            let mut v = v.to_vec();
            torus.to_modes(&mut v);
            v
        };
        let gm: Vec<Vec<C64>> = g.iter().map(|v| to_modes(v)).collect();
        let hm: Vec<Vec<C64>> = h.iter().map(|v| to_modes(v)).collect();
        let dm = to_modes(d);
        let mut modes = Vec::new();
        let mut dropped = 0.0f64;
        let mut total = 0.0f64;
        let energies: Vec<f64> =
            (0..np).map(|idx| gm.iter().chain(hm.iter()).map(|v| v[idx].norm_sqr()).sum::<f64>() + dm[idx].norm_sqr()).collect();
        let floor = roundoff_floor(&energies);
        for (idx, &energy) in energies.iter().enumerate() {
            let k = torus.mode(idx);
            total += energy;
            if energy <= floor {
                continue;
            }
            if k.iter().all(|&k| k == 0) || !grid.contains_mode(&k) {
                dropped += energy;
                continue;
            }
            modes.push(JumpMode { k, g: gm.iter().map(|v| v[idx]).collect(), h: hm.iter().map(|v| v[idx]).collect(), d: dm[idx] });
        }
        if dropped > 1e-28 * total.max(1e-300) {
            log::warn!("interface data: filtered zero/Nyquist modes carrying {:.3e} of {:.3e} energy", dropped, total);
        }
        Ok(InterfaceData { n, modes })
    }

    /// Point values `(⟦g⟧, ⟦h⟧, d)` on the tangential grid.
    pub fn to_physical(&self, grid: &GridSpec) -> (Vec<Vec<C64>>, Vec<Vec<C64>>, Vec<C64>) {
        let torus = grid.torus();
        let np = grid.tangential_points();
        let mut g = vec![vec![ZERO; np]; self.n];
        let mut h = vec![vec![ZERO; np]; self.n];
        let mut d = vec![ZERO; np];
        for m in &self.modes {
            let i = torus.index(&m.k);
            for j in 0..self.n {
                g[j][i] += m.g[j];
                h[j][i] += m.h[j];
            }
            d[i] += m.d;
        }
        for v in g.iter_mut().chain(h.iter_mut()).chain(std::iter::once(&mut d)) {
            torus.to_physical(v);
        }
        (g, h, d)
    }

    /// Wraps the jumps as bulk data (upper phase carries them, lower phase zero).
    pub fn as_bulk(&self) -> ResolventData {
        let modes = self
            .modes
            .iter()
            .map(|m| {
                let mut md = ModeData::zero(m.k.clone(), self.n);
                md.g[0] = m.g.clone();
                md.h[0] = m.h.clone();
                md.d = m.d;
                md
            })
            .collect();
        ResolventData { n: self.n, modes, decay: Decay::default() }
    }
}

/// Spectral energies at or below this are FFT round-off, not data.
pub(crate) fn roundoff_floor(energies: &[f64]) -> f64 {
    let max = energies.iter().cloned().fold(0.0, f64::max);
    let tol = 64.0 * f64::EPSILON;
    tol * tol * max
}
