//! Two independent checks of a solve: per-mode analytic derivatives, and vertical
//! central differences on the graded nodes.

use num_complex::Complex64 as C64;

use super::data::{profile, ModeData, ResolventData};
use super::field::{ModeField, TwoPhaseField};
use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::params::Side;
use crate::symbols::table::surface_factor;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const TINY: f64 = 1e-250;

/// `abs`: RMS over the torus (Parseval), max over nodes. `rel`: max over modes/nodes/components
/// of `|Σ terms| / Σ|terms|`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationResidual {
    pub name: &'static str,
    pub abs: f64,
    pub rel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub spectral: Vec<EquationResidual>,
    /// Max over nodes of the torus-RMS central-difference residual.
    pub fd_momentum: f64,
    pub fd_divergence: f64,
}

impl ResidualReport {
    pub fn get(&self, name: &str) -> Option<&EquationResidual> {
        self.spectral.iter().find(|e| e.name == name)
    }

    pub fn max_rel(&self) -> f64 {
        self.spectral.iter().map(|e| e.rel).fold(0.0, f64::max)
    }
}

#[derive(Default)]
struct Acc {
    abs: f64,
    rel: f64,
}

impl Acc {
    fn rel(&mut self, r: C64, scale: f64) {
        if scale > TINY {
            self.rel = self.rel.max(r.norm() / scale);
        }
    }
    fn done(self, name: &'static str) -> EquationResidual {
        EquationResidual { name, abs: self.abs, rel: self.rel }
    }
}

fn data_for<'a>(data: &'a ResolventData, k: &[i64]) -> Option<&'a ModeData> {
    data.modes.iter().find(|m| m.k == k)
}

/// Interior momentum residual per component from values and derivatives at one height.
fn momentum(
    mf: &ModeField,
    rho_lam: C64,
    mu: f64,
    u: &[C64],
    d2u: &[C64],
    theta: C64,
    dtheta: C64,
    f: &[C64],
) -> Vec<(C64, f64)> {
    let n = mf.n();
    let a2: f64 = mf.xi.iter().map(|x| x * x).sum();
    (0..n)
        .map(|j| {
            let grad = if j + 1 < n { I * mf.xi[j] * theta } else { dtheta };
            let terms = [rho_lam * u[j], mu * a2 * u[j], -mu * d2u[j], grad, -f[j]];
            (terms.iter().sum(), terms.iter().map(|z| z.norm()).sum())
        })
        .collect()
}

fn divergence(mf: &ModeField, u: &[C64], dun: C64) -> (C64, f64) {
    let n = mf.n();
    let mut terms: Vec<C64> = (0..n - 1).map(|j| I * mf.xi[j] * u[j]).collect();
    terms.push(dun);
    (terms.iter().sum(), terms.iter().map(|z| z.norm()).sum())
}

/// Residuals of every equation of the solved problem. `data` is what was solved (for
/// `boundary_solve` pass `interface.as_bulk()`).
pub fn residual_report(field: &TwoPhaseField, data: &ResolventData, grid: &GridSpec) -> Result<ResidualReport> {
    if field.n != data.n || field.n != grid.n {
        return Err(Error::Dimension("field, data and grid dimensions differ".into()));
    }
    let n = field.n;
    let fp = &field.fluid;
    let nodes = grid.vertical_nodes();
    let mut mom = Acc::default();
    let mut div = Acc::default();
    let (mut st_t, mut st_n, mut vj, mut kin) = (Acc::default(), Acc::default(), Acc::default(), Acc::default());
    let mut node_mom = vec![vec![0.0f64; nodes.len()]; 2];
    let mut node_div = vec![vec![0.0f64; nodes.len()]; 2];
    let (mut sq_st_t, mut sq_st_n, mut sq_vj, mut sq_kin) = (0.0, 0.0, 0.0, 0.0);
    for mf in &field.modes {
        let fallback = ModeData::zero(mf.k.clone(), n);
        let md = data_for(data, &mf.k).unwrap_or(&fallback);
        for side in Side::BOTH {
            let s = side.index();
            let rho_lam = fp.rho(side) * field.lambda;
            let mu = fp.mu(side);
            for (i, &x) in nodes.iter().enumerate() {
                let xs = side.sign() * x;
                let u = mf.velocity(side, xs, 0)?;
                let du = mf.velocity(side, xs, 1)?;
                let d2u = mf.velocity(side, xs, 2)?;
                let th = mf.pressure(side, xs, 0)?;
                let dth = mf.pressure(side, xs, 1)?;
                let f = md.force_at(xs, grid.x_max, n);
                for (r, sc) in momentum(mf, rho_lam, mu, &u, &d2u, th, dth, &f) {
                    mom.rel(r, sc);
                    node_mom[s][i] += r.norm_sqr();
                }
                let (r, sc) = divergence(mf, &u, du[n - 1]);
                div.rel(r, sc);
                node_div[s][i] += r.norm_sqr();
            }
        }
        // interface rows
        let up = mf.velocity(Side::Plus, 0.0, 0)?;
        let um = mf.velocity(Side::Minus, 0.0, 0)?;
        let dup = mf.velocity(Side::Plus, 0.0, 1)?;
        let dum = mf.velocity(Side::Minus, 0.0, 1)?;
        let thp = mf.pressure(Side::Plus, 0.0, 0)?;
        let thm = mf.pressure(Side::Minus, 0.0, 0)?;
        let (mp, mm) = (fp.mu_plus, fp.mu_minus);
        let gj = md.g_jump();
        let hj = md.h_jump();
        let eta = mf.interface_eta();
        for j in 0..n - 1 {
            let terms = [mp * (I * mf.xi[j] * up[n - 1] + dup[j]), -mm * (I * mf.xi[j] * um[n - 1] + dum[j]), gj[j]];
            let r: C64 = terms.iter().sum();
            st_t.rel(r, terms.iter().map(|z| z.norm()).sum());
            sq_st_t += r.norm_sqr();
        }
        let a = C64::new(mf.xi.iter().map(|x| x * x).sum::<f64>().sqrt(), 0.0);
        let surf = if field.with_surface { -surface_factor(fp, a) * eta } else { ZERO };
        let terms = [2.0 * mp * dup[n - 1], -thp, -2.0 * mm * dum[n - 1], thm, gj[n - 1], surf];
        let r: C64 = terms.iter().sum();
        st_n.rel(r, terms.iter().map(|z| z.norm()).sum());
        sq_st_n += r.norm_sqr();
        for j in 0..n {
            let terms = [up[j], -um[j], -hj[j]];
            let r: C64 = terms.iter().sum();
            vj.rel(r, terms.iter().map(|z| z.norm()).sum());
            sq_vj += r.norm_sqr();
        }
        if field.with_surface {
            let terms = [field.lambda * eta, up[n - 1], -md.d];
            let r: C64 = terms.iter().sum();
            kin.rel(r, terms.iter().map(|z| z.norm()).sum());
            sq_kin += r.norm_sqr();
        }
    }
    // zero tangential mode: only a constant pressure offset can live there
    let off = field.pressure_offset[0] - field.pressure_offset[1];
    sq_st_n += off * off;
    mom.abs = node_mom.iter().flatten().fold(0.0f64, |m, v| m.max(v.sqrt()));
    div.abs = node_div.iter().flatten().fold(0.0f64, |m, v| m.max(v.sqrt()));
    st_t.abs = sq_st_t.sqrt();
    st_n.abs = sq_st_n.sqrt();
    vj.abs = sq_vj.sqrt();
    kin.abs = sq_kin.sqrt();
    let mut spectral =
        vec![mom.done("momentum"), div.done("divergence"), st_t.done("stress_jump_tangential"), st_n.done("stress_jump_normal"), vj.done("velocity_jump")];
    if field.with_surface {
        spectral.push(kin.done("kinematic"));
    }
    let (fd_momentum, fd_divergence) = fd_residual(field, data, grid)?;
    Ok(ResidualReport { spectral, fd_momentum, fd_divergence })
}

/// Three-point weights `(w₋, w₀, w₊)` for the first and second derivative on a nonuniform stencil.
fn stencil(xm: f64, x0: f64, xp: f64) -> ([f64; 3], [f64; 3]) {
    let h1 = x0 - xm;
    let h2 = xp - x0;
    let s = h1 + h2;
    let d1 = [-h2 / (h1 * s), (h2 - h1) / (h1 * h2), h1 / (h2 * s)];
    let d2 = [2.0 / (h1 * s), -2.0 / (h1 * h2), 2.0 / (h2 * s)];
    (d1, d2)
}

/// Momentum and divergence residuals with `∂_n`, `∂_n²` replaced by central differences on the
/// graded nodes (x′-derivatives stay spectral); uses only point values of the solution.
pub fn fd_residual(field: &TwoPhaseField, data: &ResolventData, grid: &GridSpec) -> Result<(f64, f64)> {
    let n = field.n;
    let fp = &field.fluid;
    let nodes = grid.vertical_nodes();
    let nn = nodes.len();
    let mut mom = vec![vec![0.0f64; nn]; 2];
    let mut div = vec![vec![0.0f64; nn]; 2];
    for mf in &field.modes {
        let md = data_for(data, &mf.k);
        for side in Side::BOTH {
            let s = side.index();
            let xs: Vec<f64> = nodes.iter().map(|x| side.sign() * x).collect();
            let u: Vec<Vec<C64>> = xs.iter().map(|&x| mf.velocity(side, x, 0)).collect::<Result<_>>()?;
            let th: Vec<C64> = xs.iter().map(|&x| mf.pressure(side, x, 0)).collect::<Result<_>>()?;
            for i in 1..nn - 1 {
                let (d1, d2) = stencil(xs[i - 1], xs[i], xs[i + 1]);
                let apply = |w: &[f64; 3], v: [C64; 3]| w[0] * v[0] + w[1] * v[1] + w[2] * v[2];
                let d2u: Vec<C64> = (0..n).map(|j| apply(&d2, [u[i - 1][j], u[i][j], u[i + 1][j]])).collect();
                let dth = apply(&d1, [th[i - 1], th[i], th[i + 1]]);
                let dun = apply(&d1, [u[i - 1][n - 1], u[i][n - 1], u[i + 1][n - 1]]);
                let f = md.map(|m| m.force_at(xs[i], grid.x_max, n)).unwrap_or_else(|| vec![ZERO; n]);
                for (r, _) in momentum(mf, fp.rho(side) * field.lambda, fp.mu(side), &u[i], &d2u, th[i], dth, &f) {
                    mom[s][i] += r.norm_sqr();
                }
                div[s][i] += divergence(mf, &u[i], dun).0.norm_sqr();
            }
        }
    }
    let max = |v: &Vec<Vec<f64>>| v.iter().flatten().fold(0.0f64, |m, x| m.max(x.sqrt()));
    Ok((max(&mom), max(&div)))
}

/// FD momentum residual on `levels` successively doubled vertical grids, and the observed
/// orders `log2(r_k / r_{k+1})`.
pub fn fd_convergence(field: &TwoPhaseField, data: &ResolventData, grid: &GridSpec, levels: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut g = grid.clone();
    let mut res = Vec::with_capacity(levels);
    for _ in 0..levels {
        res.push(fd_residual(field, data, &g)?.0);
        g = g.refined();
    }
    let orders = res.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    Ok((res, orders))
}

/// `∂_n^m` of the bulk data on one side at one height: `(g, h, d)` coefficient × profile.
pub fn data_jet(md: &ModeData, kappa: f64, side: Side, x_n: f64, order: u32) -> (Vec<C64>, Vec<C64>, C64) {
    let p = profile(kappa, side, x_n, order);
    let s = side.index();
    (md.g[s].iter().map(|z| z * p).collect(), md.h[s].iter().map(|z| z * p).collect(), md.d * p)
}
