//! Discrete L_q norms of the solution and data bundles, and the resolvent-estimate ratio.
//!
//! Tuples are normed componentwise and summed. In x′ the norm is exact for q = 2 (Parseval)
//! and sampled on the tangential grid otherwise; in x_n it is the trapezoid rule on the graded
//! nodes of each phase, truncated at `|x_n| ≤ X`.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::data::{ModeData, ResolventData};
use super::field::TwoPhaseField;
use super::grid::GridSpec;
use super::residual::data_jet;
use crate::error::{Error, Result};
use crate::params::Side;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// What a scalar component is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    U(usize),
    Theta,
    Eta,
    F(usize),
    G(usize),
    H(usize),
    /// `|∇′|⁻¹ ∂_n h_n`.
    HnLift,
    D,
}

/// `∂^α` of a source, α given as an ordered tuple of axes (`n − 1` is the normal axis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub source: Source,
    pub axes: Vec<usize>,
}

fn tuples(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out.into_iter().flat_map(|t| (0..n).map(move |a| [t.clone(), vec![a]].concat())).collect();
    }
    out
}

/// Every component needed by the estimates, in a fixed order.
pub fn layout(n: usize) -> Vec<Component> {
    let mut out = Vec::new();
    let mut push = |source: Source, orders: &[usize]| {
        for &r in orders {
            for axes in tuples(n, r) {
                out.push(Component { source, axes });
            }
        }
    };
    for j in 0..n {
        push(Source::U(j), &[0, 1, 2]);
    }
    push(Source::Theta, &[1]);
    push(Source::Eta, &[0, 1, 2, 3]);
    for j in 0..n {
        push(Source::F(j), &[0]);
        push(Source::G(j), &[0, 1]);
        push(Source::H(j), &[0, 2]);
    }
    push(Source::HnLift, &[0]);
    push(Source::D, &[0, 1, 2]);
    out
}

/// Per-mode values of every layout component at one height: `∂_n^m` jets in, tangential
/// factors `iξ_a` applied per axis.
pub struct ModeJets<'a> {
    pub xi: &'a [f64],
    /// `u[j][m]`, `theta[m]`, `eta[m]`, `g[j][m]`, `h[j][m]`, `d[m]`, `f[j]`, all `m ≤ 3`.
    pub u: Vec<[C64; 4]>,
    pub theta: [C64; 4],
    pub eta: [C64; 4],
    pub g: Vec<[C64; 4]>,
    pub h: Vec<[C64; 4]>,
    pub d: [C64; 4],
    pub f: Vec<C64>,
}

impl ModeJets<'_> {
    pub fn component(&self, c: &Component) -> C64 {
        let n = self.xi.len() + 1;
        let m = c.axes.iter().filter(|&&a| a == n - 1).count();
        let tang: C64 = c.axes.iter().filter(|&&a| a < n - 1).map(|&a| I * self.xi[a]).product();
        let base = match c.source {
            Source::U(j) => self.u[j][m],
            Source::Theta => self.theta[m],
            Source::Eta => self.eta[m],
            Source::F(j) => {
                if m == 0 {
                    self.f[j]
                } else {
                    ZERO
                }
            }
            Source::G(j) => self.g[j][m],
            Source::H(j) => self.h[j][m],
            Source::HnLift => {
                let a = self.xi.iter().map(|x| x * x).sum::<f64>().sqrt();
                self.h[n - 1][m + 1] / a
            }
            Source::D => self.d[m],
        };
        tang * base
    }
}

pub(crate) fn mode_jets<'a>(mf: &'a super::field::ModeField, md: Option<&ModeData>, kappa: f64, side: Side, x: f64, x_max: f64) -> Result<ModeJets<'a>> {
    let n = mf.n();
    let jet = mf.jet(side, x)?;
    let mut g = vec![[ZERO; 4]; n];
    let mut h = vec![[ZERO; 4]; n];
    let mut d = [ZERO; 4];
    let mut f = vec![ZERO; n];
    if let Some(md) = md {
        for m in 0..4u32 {
            let (gv, hv, dv) = data_jet(md, kappa, side, x, m);
            for j in 0..n {
                g[j][m as usize] = gv[j];
                h[j][m as usize] = hv[j];
            }
            d[m as usize] = dv;
        }
        f = md.force_at(x, x_max, n);
    }
    Ok(ModeJets { xi: &mf.xi, u: jet.u, theta: jet.theta, eta: jet.eta, g, h, d, f })
}

/// How the x′ integral is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadrature {
    /// Parseval (q = 2 only).
    Parseval,
    /// Point values on the tangential grid.
    Sampled,
}

impl Quadrature {
    pub fn for_q(q: f64) -> Self {
        if q == 2.0 {
            Quadrature::Parseval
        } else {
            Quadrature::Sampled
        }
    }
}

/// `∫|c|^q` per layout component over both phases; `values(mode, side, x_n)` gives the
/// per-mode layout values.
pub fn integrate_components<F>(
    grid: &GridSpec,
    q: f64,
    quad: Quadrature,
    n_modes: usize,
    modes_k: &[Vec<i64>],
    values: F,
) -> Result<Vec<f64>>
where
    F: Fn(usize, Side, f64) -> Result<Vec<C64>> + Sync,
{
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("q = {q} (need 1 < q < ∞)")));
    }
    if quad == Quadrature::Parseval && q != 2.0 {
        return Err(Error::InvalidParameter("Parseval quadrature needs q = 2".into()));
    }
    let nodes = grid.vertical_nodes();
    let w = grid.vertical_weights();
    let vol = grid.torus_volume();
    let width = layout(grid.n).len();
    let torus = grid.torus();
    let np = grid.tangential_points();
    let per_node: Vec<Vec<f64>> = Side::BOTH
        .iter()
        .flat_map(|&s| nodes.iter().enumerate().map(move |(i, &x)| (s, i, x)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(side, i, x)| -> Result<Vec<f64>> {
            let xs = side.sign() * x;
            let vals: Vec<Vec<C64>> = (0..n_modes).map(|m| values(m, side, xs)).collect::<Result<_>>()?;
            let mut acc = vec![0.0; width];
            if quad == Quadrature::Parseval {
                for v in &vals {
                    for (a, z) in acc.iter_mut().zip(v) {
                        *a += z.norm_sqr() * vol;
                    }
                }
            } else {
                let mut arr = vec![ZERO; np];
                for (c, a) in acc.iter_mut().enumerate() {
                    arr.iter_mut().for_each(|z| *z = ZERO);
                    for (m, v) in vals.iter().enumerate() {
                        arr[torus.index(&modes_k[m])] += v[c];
                    }
                    torus.to_physical(&mut arr);
                    *a = arr.iter().map(|z| z.norm().powf(q)).sum::<f64>() * vol / np as f64;
                }
            }
            acc.iter_mut().for_each(|a| *a *= w[i]);
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![0.0; width];
    for row in &per_node {
        for (t, v) in total.iter_mut().zip(row) {
            *t += v;
        }
    }
    Ok(total)
}

/// Left- and right-hand sides of the resolvent estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub lambda: C64,
    pub q: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// `|λ|^{3/2}‖η‖_{W¹}` against its right-hand side (surface problem only).
    pub eta_w1: Option<(f64, f64)>,
    /// `|λ|²‖η‖_{L_q}` against its right-hand side.
    pub eta_l: Option<(f64, f64)>,
    pub inconsistent: bool,
}

/// Sums of component norms per bundle, before the λ weights.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bundle {
    pub u: f64,
    pub grad_u: f64,
    pub hess_u: f64,
    pub grad_theta: f64,
    /// `eta_w[k] = Σ_{|α| = k} ‖∂^α η‖`.
    pub eta: [f64; 4],
    pub f: f64,
    pub g: f64,
    pub grad_g: f64,
    pub h: f64,
    pub hess_h: f64,
    pub hn_lift: f64,
    pub d: [f64; 3],
}

impl Bundle {
    pub fn from_integrals(n: usize, q: f64, integrals: &[f64]) -> Self {
        let mut b = Bundle::default();
        for (c, &s) in layout(n).iter().zip(integrals) {
            let v = s.powf(1.0 / q);
            let r = c.axes.len();
            match c.source {
                Source::U(_) => match r {
                    0 => b.u += v,
                    1 => b.grad_u += v,
                    _ => b.hess_u += v,
                },
                Source::Theta => b.grad_theta += v,
                Source::Eta => b.eta[r] += v,
                Source::F(_) => b.f += v,
                Source::G(_) => {
                    if r == 0 {
                        b.g += v
                    } else {
                        b.grad_g += v
                    }
                }
                Source::H(_) => {
                    if r == 0 {
                        b.h += v
                    } else {
                        b.hess_h += v
                    }
                }
                Source::HnLift => b.hn_lift += v,
                Source::D => b.d[r] += v,
            }
        }
        b
    }

    fn eta_w(&self, k: usize) -> f64 {
        self.eta[..=k].iter().sum()
    }

    fn d_w(&self, k: usize) -> f64 {
        self.d[..=k].iter().sum()
    }

    /// Weighted sides of the estimates at `|λ|`.
    pub fn ratio(&self, lambda: C64, q: f64, surface: bool) -> RatioReport {
        let l = lambda.norm();
        let ls = l.sqrt();
        let mut lhs = l * self.u + ls * self.grad_u + self.hess_u + self.grad_theta;
        let base = self.f + ls * self.g + self.grad_g + l * self.h + self.hess_h + l * self.hn_lift;
        let mut rhs = base;
        let (mut eta_w1, mut eta_l) = (None, None);
        if surface {
            lhs += l * self.eta_w(2) + self.eta_w(3);
            rhs += self.d_w(2);
            eta_w1 = Some((l * ls * self.eta_w(1), base + self.d_w(2) + ls * self.d_w(1)));
            eta_l = Some((l * l * self.eta_w(0), base + self.d_w(2) + l * self.d_w(0)));
        }
        let (ratio, inconsistent) = if rhs > 0.0 {
            (lhs / rhs, false)
        } else if lhs == 0.0 {
            (0.0, false)
        } else {
            (f64::INFINITY, true)
        };
        RatioReport { lambda, q, lhs, rhs, ratio, eta_w1, eta_l, inconsistent }
    }
}

/// The solution and data norms of one solve, and LHS/RHS of the resolvent estimate.
pub fn norms_and_ratio(field: &TwoPhaseField, data: &ResolventData, grid: &GridSpec, q: f64) -> Result<(Bundle, RatioReport)> {
    if field.n != data.n || field.n != grid.n {
        return Err(Error::Dimension("field, data and grid dimensions differ".into()));
    }
    let lay = layout(field.n);
    let md: Vec<Option<&ModeData>> = field.modes.iter().map(|m| data.modes.iter().find(|d| d.k == m.k)).collect();
    let kappa: Vec<f64> = field
        .modes
        .iter()
        .map(|m| data.decay.rate(field.lambda, m.xi.iter().map(|x| x * x).sum::<f64>().sqrt()))
        .collect();
    let ks: Vec<Vec<i64>> = field.modes.iter().map(|m| m.k.clone()).collect();
    let integrals = integrate_components(grid, q, Quadrature::for_q(q), field.modes.len(), &ks, |i, side, x| {
        let j = mode_jets(&field.modes[i], md[i], kappa[i], side, x, grid.x_max)?;
        Ok(lay.iter().map(|c| j.component(c)).collect())
    })?;
    let b = Bundle::from_integrals(field.n, q, &integrals);
    let r = b.ratio(field.lambda, q, field.with_surface);
    Ok((b, r))
}

/// Least-squares slope of `log ratio` against `log |λ|`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = points.iter().fold((0.0, 0.0), |(n, d), (x, y)| {
        let dx = x.ln() - mx;
        (n + dx * (y.ln() - my), d + dx * dx)
    });
    num / den
}
