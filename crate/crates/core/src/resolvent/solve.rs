//! The four solves: whole-space force reduction, interface-driven problem, surface
//! problem, and their compositions.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::data::{ForceMode, InterfaceData, ModeData, ResolventData};
use super::field::{EtaBulk, ModeField, SideCoef, TwoPhaseField, WholeMode};
use super::grid::{GridSpec, Torus};
use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};
use crate::symbols::{build_symbol_table, helmholtz_symbol, pressure_coeff, velocity_profile, SpectralPoint, SymbolTable};

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

pub fn mode_table(xi: &[f64], lambda: C64, fp: &FluidParams) -> Result<SymbolTable> {
    let p = SpectralPoint::new(lambda, xi.iter().map(|&x| C64::new(x, 0.0)).collect())?;
    build_symbol_table(&p, fp)
}

/// `(ψ̂₊, ψ̂₋)` for one full-space mode; `φ̂` is the same on both sides.
pub fn helmholtz_mode(xi: &[f64], fm: &ForceMode, x_max: f64, lambda: C64, fp: &FluidParams) -> Result<[WholeMode; 2]> {
    let xi_n = std::f64::consts::PI * fm.m as f64 / x_max;
    let full: Vec<C64> = xi.iter().chain(std::iter::once(&xi_n)).map(|&x| C64::new(x, 0.0)).collect();
    let side = |s: Side| -> Result<WholeMode> {
        let (vel, press) = helmholtz_symbol(&full, lambda, fp, s)?;
        Ok(WholeMode {
            xi_n,
            vel: vel.iter().map(|row| row.iter().zip(&fm.c).map(|(p, c)| p * c).sum()).collect(),
            press: press.iter().zip(&fm.c).map(|(p, c)| p * c).sum(),
        })
    };
    Ok([side(Side::Plus)?, side(Side::Minus)?])
}

/// A force sampled on the torus × uniform periodic vertical grid `z_i = −X + 2X i/n_z`;
/// each component is row-major with the vertical index last.
#[derive(Debug, Clone, PartialEq)]
pub struct FullSpaceForce {
    pub n_z: usize,
    pub comps: Vec<Vec<C64>>,
}

/// Whole-space solution per tangential mode.
#[derive(Debug, Clone, PartialEq)]
pub struct WholeSpaceField {
    pub modes: Vec<(Vec<i64>, [Vec<WholeMode>; 2])>,
    pub force: Vec<(Vec<i64>, ForceMode)>,
}

impl FullSpaceForce {
    /// Modal coefficients of `e^{ik·x′/L} e^{iπ m x_n/X}`. Zero tangential modes (whose interface
    /// correction would sit at ξ′ = 0) and Nyquist modes are filtered with a warning.
    pub fn modes(&self, grid: &GridSpec) -> Result<Vec<(Vec<i64>, ForceMode)>> {
        if self.n_z < 2 || !self.n_z.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("n_z = {} must be a power of two >= 2", self.n_z)));
        }
        let mut dims = grid.n_tan.clone();
        dims.push(self.n_z);
        let torus = Torus::new(&dims);
        if self.comps.len() != grid.n || self.comps.iter().any(|c| c.len() != torus.len()) {
            return Err(Error::Dimension(format!("force needs {} components of {} points", grid.n, torus.len())));
        }
        let spectra: Vec<Vec<C64>> = self
            .comps
            .iter()
            .map(|c| {
                let mut c = c.clone();
                torus.to_modes(&mut c);
                c
            })
            .collect();
        let mut out = Vec::new();
        let (mut dropped, mut total) = (0.0f64, 0.0f64);
        let energies: Vec<f64> = (0..torus.len()).map(|idx| spectra.iter().map(|s| s[idx].norm_sqr()).sum()).collect();
        let floor = super::data::roundoff_floor(&energies);
        for (idx, &energy) in energies.iter().enumerate() {
            let full = torus.mode(idx);
            if energy <= floor {
                continue;
            }
            total += energy;
            let (k, m) = (full[..grid.n - 1].to_vec(), full[grid.n - 1]);
            if k.iter().all(|&k| k == 0) || !grid.contains_mode(&k) || 2 * m.unsigned_abs() as usize >= self.n_z {
                dropped += energy;
                continue;
            }
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            out.push((k, ForceMode { m, c: spectra.iter().map(|s| s[idx] * sign).collect() }));
        }
        if dropped > 1e-28 * total.max(1e-300) {
            log::warn!("force: filtered zero-tangential/Nyquist modes carrying {:.3e} of {:.3e} energy", dropped, total);
        }
        Ok(out)
    }
}

/// ψ± = P f̂/(ρ±λ + μ±|ξ|²), φ = −iξ·f̂/|ξ|² from a sampled force.
pub fn helmholtz_solve(f: &FullSpaceForce, lambda: C64, fp: &FluidParams, grid: &GridSpec) -> Result<WholeSpaceField> {
    let force = f.modes(grid)?;
    let mut modes: Vec<(Vec<i64>, [Vec<WholeMode>; 2])> = Vec::new();
    for (k, fm) in &force {
        let pair = helmholtz_mode(&grid.xi(k), fm, grid.x_max, lambda, fp)?;
        let slot = match modes.iter().position(|(kk, _)| kk == k) {
            Some(p) => p,
            None => {
                modes.push((k.clone(), [Vec::new(), Vec::new()]));
                modes.len() - 1
            }
        };
        let [p, m] = pair;
        modes[slot].1[0].push(p);
        modes[slot].1[1].push(m);
    }
    Ok(WholeSpaceField { modes, force })
}

impl WholeSpaceField {
    /// Moves the force into bulk data (merging with existing modes) so a composed solve sees it.
    pub fn attach_to(&self, data: &mut ResolventData) {
        for (k, fm) in &self.force {
            match data.modes.iter_mut().find(|m| &m.k == k) {
                Some(md) => md.f.push(fm.clone()),
                None => {
                    let mut md = ModeData::zero(k.clone(), data.n);
                    md.f.push(fm.clone());
                    data.modes.push(md);
                }
            }
        }
    }
}

/// Interface-driven coefficients for data columns `[⟦g_1⟧..⟦g_n⟧, ⟦h_1⟧..⟦h_n⟧]`.
pub fn boundary_coefs(t: &SymbolTable, g: &[C64], h: &[C64]) -> Result<[SideCoef; 2]> {
    let n = t.dim();
    let data: Vec<C64> = g.iter().chain(h).copied().collect();
    let mut out = [SideCoef::zero(n), SideCoef::zero(n)];
    for side in Side::BOTH {
        let c = &mut out[side.index()];
        for (col, &v) in data.iter().enumerate() {
            if v == ZERO {
                continue;
            }
            for j in 1..=n {
                let p = velocity_profile(t, side, j, col)?;
                c.c_m[j - 1] += p.c_m * v;
                c.c_e[j - 1] += p.c_e * v;
            }
            c.p += pressure_coeff(t, side, col)? * v;
        }
    }
    Ok(out)
}

fn empty_mode(k: Vec<i64>, xi: Vec<f64>, t: &SymbolTable, bdry: [SideCoef; 2]) -> ModeField {
    ModeField { k, xi, a: t.a, b: [t.b_plus, t.b_minus], bdry, whole: [Vec::new(), Vec::new()], eta: None }
}

fn check_dims(n: usize, grid: &GridSpec) -> Result<()> {
    if n != grid.n {
        return Err(Error::Dimension(format!("data n = {n} vs grid n = {}", grid.n)));
    }
    Ok(())
}

/// Problem with `f = 0`: per mode `û = Σ_k(φ_k ⟦ĝ_k⟧ + ψ_k ⟦ĥ_k⟧)`, likewise θ̂.
pub fn boundary_solve(data: &InterfaceData, lambda: C64, fp: &FluidParams, grid: &GridSpec) -> Result<TwoPhaseField> {
    check_dims(data.n, grid)?;
    let modes = data
        .modes
        .par_iter()
        .map(|m| {
            let xi = grid.xi(&m.k);
            let t = mode_table(&xi, lambda, fp)?;
            let bdry = boundary_coefs(&t, &m.g, &m.h)?;
            Ok(empty_mode(m.k.clone(), xi, &t, bdry))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwoPhaseField { n: data.n, lambda, fluid: *fp, modes, pressure_offset: [0.0; 2], with_surface: false })
}

/// `(ψ̂(0), μ D̂(ψ)ν|₀)` summed over the vertical force modes on one side.
fn whole_traces(xi: &[f64], whole: &[WholeMode], mu: f64) -> (Vec<C64>, Vec<C64>) {
    let n = xi.len() + 1;
    let mut psi = vec![ZERO; n];
    let mut stress = vec![ZERO; n];
    for w in whole {
        let dn = I * w.xi_n;
        for j in 0..n {
            psi[j] += w.vel[j];
        }
        for j in 0..n - 1 {
            stress[j] += -mu * (I * xi[j] * w.vel[n - 1] + dn * w.vel[j]);
        }
        stress[n - 1] += -mu * 2.0 * dn * w.vel[n - 1];
    }
    (psi, stress)
}

fn solve_mode_without(md: &ModeData, lambda: C64, fp: &FluidParams, grid: &GridSpec) -> Result<(ModeField, SymbolTable)> {
    let xi = grid.xi(&md.k);
    let t = mode_table(&xi, lambda, fp)?;
    let mut whole: [Vec<WholeMode>; 2] = [Vec::new(), Vec::new()];
    for fm in &md.f {
        let [p, m] = helmholtz_mode(&xi, fm, grid.x_max, lambda, fp)?;
        whole[0].push(p);
        whole[1].push(m);
    }
    let (psi_p, st_p) = whole_traces(&xi, &whole[0], fp.mu_plus);
    let (psi_m, st_m) = whole_traces(&xi, &whole[1], fp.mu_minus);
    let n = xi.len() + 1;
    let gj = md.g_jump();
    let hj = md.h_jump();
    let g_t: Vec<C64> = (0..n).map(|j| gj[j] - (st_p[j] - st_m[j])).collect();
    let h_t: Vec<C64> = (0..n).map(|j| hj[j] - (psi_p[j] - psi_m[j])).collect();
    let bdry = boundary_coefs(&t, &g_t, &h_t)?;
    let mut mf = empty_mode(md.k.clone(), xi, &t, bdry);
    mf.whole = whole;
    Ok((mf, t))
}

/// `u = ψ + w`, `θ = φ + κ` with `(w, κ)` driven by `g̃ = g − μD(ψ)ν`, `h̃ = h − ψ`.
pub fn solve_rswithout(data: &ResolventData, lambda: C64, fp: &FluidParams, grid: &GridSpec) -> Result<TwoPhaseField> {
    check_dims(data.n, grid)?;
    let modes = data
        .modes
        .par_iter()
        .map(|md| solve_mode_without(md, lambda, fp, grid).map(|(m, _)| m))
        .collect::<Result<Vec<_>>>()?;
    Ok(TwoPhaseField { n: data.n, lambda, fluid: *fp, modes, pressure_offset: [0.0; 2], with_surface: false })
}

/// Per-mode surface response to `d̃̂`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMode {
    pub k: Vec<i64>,
    pub gain: C64,
    pub eta: C64,
    pub w: [SideCoef; 2],
}

fn check_surface(fp: &FluidParams) -> Result<()> {
    if !(fp.c_sigma > 0.0 && fp.c_g >= 0.0) {
        return Err(Error::InvalidParameter(format!("surface problem needs c_sigma > 0, c_g >= 0 (got {}, {})", fp.c_sigma, fp.c_g)));
    }
    Ok(())
}

fn surface_mode(t: &SymbolTable, k: Vec<i64>, d_tilde: C64) -> Result<SurfaceMode> {
    let n = t.dim();
    let gain = t.height_gain()?;
    let eta = gain * d_tilde;
    let mut g = vec![ZERO; n];
    g[n - 1] = -t.surface_factor() * eta;
    let w = boundary_coefs(t, &g, &vec![ZERO; n])?;
    Ok(SurfaceMode { k, gain, eta, w })
}

/// `η̂ = det L·d̃̂/ℒ`, `(ŵ, κ̂)` = interface-driven response to `⟦ĝ_n⟧ = −(⟦ρ⟧c_g − c_σA²)η̂`.
pub fn surface_solve(d_tilde: &[(Vec<i64>, C64)], lambda: C64, fp: &FluidParams, grid: &GridSpec) -> Result<Vec<SurfaceMode>> {
    check_surface(fp)?;
    d_tilde
        .par_iter()
        .map(|(k, d)| {
            if !grid.contains_mode(k) || k.iter().all(|&k| k == 0) {
                return Err(Error::InvalidParameter(format!("mode {k:?} outside the band or zero")));
            }
            let t = mode_table(&grid.xi(k), lambda, fp)?;
            surface_mode(&t, k.clone(), *d)
        })
        .collect()
}

/// `(u, θ) = (v + w, τ + κ)`: `v` from the problem without surface terms, then the surface
/// problem for `d̃ = d − v_n` (upper-phase trace).
pub fn solve_rswith(data: &ResolventData, lambda: C64, fp: &FluidParams, grid: &GridSpec) -> Result<TwoPhaseField> {
    check_dims(data.n, grid)?;
    check_surface(fp)?;
    let n = data.n;
    let modes = data
        .modes
        .par_iter()
        .map(|md| {
            let (mut mf, t) = solve_mode_without(md, lambda, fp, grid)?;
            let v_trace = mf.velocity(Side::Plus, 0.0, 0)?[n - 1];
            let s = surface_mode(&t, md.k.clone(), md.d - v_trace)?;
            let v = mf.bdry.clone();
            for (b, w) in mf.bdry.iter_mut().zip(&s.w) {
                b.axpy(C64::new(1.0, 0.0), w);
            }
            let xi_abs = mf.xi.iter().map(|x| x * x).sum::<f64>().sqrt();
            mf.eta = Some(EtaBulk { gain: s.gain, d: md.d, kappa: data.decay.rate(lambda, xi_abs), v });
            Ok(mf)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwoPhaseField { n, lambda, fluid: *fp, modes, pressure_offset: [0.0; 2], with_surface: true })
}
