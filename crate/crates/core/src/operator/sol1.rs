//! The y_n-integral representation of the interface-driven solution, checked against
//! the trace-form solver.
//!
//! With `G(y) = g₊(y) − g₋(−y)` (so `G(0) = ⟦g⟧`) and `φ±` any solution symbol,
//! `φ₊(x)G(0) = −∫₀^∞ [∂_nφ₊(x+y)G(y) + φ₊(x+y)G′(y)] dy` and
//! `φ₋(x)G(0) = −∫₀^∞ [−∂_nφ₋(x−y)G(y) + φ₋(x−y)G′(y)] dy` — both are the fundamental
//! theorem of calculus applied to `φ(x ± y)G(y)`.
//!
//! The `Literal` route instead pairs `∂_nφ` with `G` on both sides using the same sign
//! and replaces `G′` by `∂g₊(y) − (∂g₋)(−y)`; it disagrees as soon as `g₋ ≠ 0`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};
use crate::resolvent::residual::data_jet;
use crate::resolvent::solve::mode_table;
use crate::resolvent::{solve_rswithout, GridSpec, ResolventData};
use crate::symbols::{exp_kernel, pressure_coeff, velocity_profile, SymbolTable};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sol1Route {
    /// `G′ = d/dy G` and the mirrored sign on the lower side.
    Consistent,
    Literal,
}

/// Max relative disagreement, normalized by the largest trace-form value.
#[derive(Debug, Clone, PartialEq)]
pub struct Sol1Report {
    pub route: Sol1Route,
    pub velocity: f64,
    pub pressure: f64,
}

impl Sol1Report {
    pub fn max(&self) -> f64 {
        self.velocity.max(self.pressure)
    }
}

/// Composite Simpson in `s ∈ [0, 1]` pulled back through the graded map onto `[0, Y]`.
pub fn graded_simpson(x_max: f64, grading: f64, panels: usize) -> (Vec<f64>, Vec<f64>) {
    let panels = panels + panels % 2;
    let h = 1.0 / panels as f64;
    (0..=panels)
        .map(|i| {
            let s = i as f64 * h;
            let c = if i == 0 || i == panels { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            let (y, dy) = if grading == 0.0 {
                (x_max * s, x_max)
            } else {
                let e = grading.exp_m1();
                (x_max * (grading * s).exp_m1() / e, x_max * grading * (grading * s).exp() / e)
            };
            (y, c * h / 3.0 * dy)
        })
        .unzip()
}

/// `(G, G′)` per data column at `y`, for the chosen route.
fn extension(md_jets: [(&[C64], &[C64]); 2], d_jets: [(&[C64], &[C64]); 2], route: Sol1Route) -> (Vec<C64>, Vec<C64>) {
    // md_jets[order] = (g₊, g₋(−y)) values of ∂^order; same for h in d_jets
    let mut g = Vec::new();
    let mut dg = Vec::new();
    for jets in [md_jets, d_jets] {
        let (p0, m0) = jets[0];
        let (p1, m1) = jets[1];
        for i in 0..p0.len() {
            g.push(p0[i] - m0[i]);
            dg.push(match route {
                Sol1Route::Consistent => p1[i] + m1[i],
                Sol1Route::Literal => p1[i] - m1[i],
            });
        }
    }
    (g, dg)
}

struct ModeSymbols {
    n: usize,
    vel: [Vec<Vec<crate::symbols::Profile>>; 2],
    press: [Vec<C64>; 2],
}

fn mode_symbols(t: &SymbolTable) -> Result<ModeSymbols> {
    let n = t.dim();
    let vel = Side::BOTH.map(|side| (1..=n).map(|j| (0..2 * n).map(|c| velocity_profile(t, side, j, c)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>());
    let press = Side::BOTH.map(|side| (0..2 * n).map(|c| pressure_coeff(t, side, c)).collect::<Result<Vec<_>>>());
    let [vp, vm] = vel;
    let [pp, pm] = press;
    Ok(ModeSymbols { n, vel: [vp?, vm?], press: [pp?, pm?] })
}

/// `(u, θ)` at `side.sign()·x` from the integral representation.
fn integral_value(
    t: &SymbolTable,
    ms: &ModeSymbols,
    md: &crate::resolvent::ModeData,
    kappa: f64,
    side: Side,
    x: f64,
    quad: &(Vec<f64>, Vec<f64>),
    route: Sol1Route,
) -> Result<(Vec<C64>, C64)> {
    let n = ms.n;
    let s = side.index();
    let mut u = vec![ZERO; n];
    let mut th = ZERO;
    for (&y, &w) in quad.0.iter().zip(&quad.1) {
        let (gp0, hp0, _) = data_jet(md, kappa, Side::Plus, y, 0);
        let (gp1, hp1, _) = data_jet(md, kappa, Side::Plus, y, 1);
        let (gm0, hm0, _) = data_jet(md, kappa, Side::Minus, -y, 0);
        let (gm1, hm1, _) = data_jet(md, kappa, Side::Minus, -y, 1);
        let (gg, dg) = extension([(&gp0, &gm0), (&gp1, &gm1)], [(&hp0, &hm0), (&hp1, &hm1)], route);
        // evaluation point of the symbol and the sign in front of ∂_nφ
        let (at, dsign) = match (side, route) {
            (Side::Plus, _) => (x + y, 1.0),
            (Side::Minus, Sol1Route::Consistent) => (-(x + y), -1.0),
            (Side::Minus, Sol1Route::Literal) => (-(x + y), 1.0),
        };
        for c in 0..2 * n {
            if gg[c] == ZERO && dg[c] == ZERO {
                continue;
            }
            for j in 0..n {
                let p = &ms.vel[s][j][c];
                let v0 = p.eval(t, side, at, 0)?;
                let v1 = p.eval(t, side, at, 1)?;
                u[j] -= w * (dsign * v1 * gg[c] + v0 * dg[c]);
            }
            let e0 = exp_kernel(t.a, at, side, 0)?;
            let e1 = exp_kernel(t.a, at, side, 1)?;
            th -= w * ms.press[s][c] * (dsign * e1 * gg[c] + e0 * dg[c]);
        }
    }
    Ok((u, th))
}

/// Integral route vs trace-form solve at `heights` on both sides, for force-free data.
pub fn sol1_check(data: &ResolventData, lambda: C64, fp: &FluidParams, grid: &GridSpec, heights: &[f64], panels: usize, route: Sol1Route) -> Result<Sol1Report> {
    if data.modes.iter().any(|m| !m.f.is_empty()) {
        return Err(Error::InvalidParameter("the integral route covers the interface-driven part only; drop the force".into()));
    }
    let field = solve_rswithout(data, lambda, fp, grid)?;
    let quad = graded_simpson(grid.x_max, grid.grading, panels);
    let (mut du, mut dp, mut su, mut sp) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for md in &data.modes {
        let Some(mf) = field.mode(&md.k) else { continue };
        let xi = grid.xi(&md.k);
        let t = mode_table(&xi, lambda, fp)?;
        let ms = mode_symbols(&t)?;
        let kappa = data.decay.rate(lambda, xi.iter().map(|x| x * x).sum::<f64>().sqrt());
        for side in Side::BOTH {
            for &x in heights {
                let (u, th) = integral_value(&t, &ms, md, kappa, side, x, &quad, route)?;
                let xs = side.sign() * x;
                let ur = mf.boundary_velocity(side, xs, 0)?;
                let pr = mf.pressure(side, xs, 0)?;
                for (a, b) in u.iter().zip(&ur) {
                    du = du.max((a - b).norm());
                    su = su.max(b.norm());
                }
                dp = dp.max((th - pr).norm());
                sp = sp.max(pr.norm());
            }
        }
    }
    let rel = |d: f64, s: f64| if s > 0.0 { d / s } else { d };
    Ok(Sol1Report { route, velocity: rel(du, su), pressure: rel(dp, sp) })
}
