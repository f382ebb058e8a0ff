//! Maximal-regularity ratios: `L_p`-in-time of damped `L_q`-in-space norms.
//!
//! `∂_t` is multiplication by `λ` on the contour, `Λ_γ^s` by `|λ|^s`; both are applied before
//! the inverse transform.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::solve::EvolutionSolution;
use crate::error::{Error, Result};
use crate::params::Side;
use crate::resolvent::norms::{integrate_components, layout, mode_jets, Component, Quadrature, Source};
use crate::resolvent::ModeData;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    One,
    Gamma,
    /// `∂_t`.
    Lambda,
    /// `Λ_γ^s`.
    Abs(f64),
}

impl Weight {
    fn factor(self, lambda: C64, gamma: f64) -> C64 {
        match self {
            Weight::One => C64::new(1.0, 0.0),
            Weight::Gamma => C64::new(gamma, 0.0),
            Weight::Lambda => lambda,
            Weight::Abs(s) => C64::new(lambda.norm().powf(s), 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    U,
    Theta,
    Eta,
    G,
    H,
    HnLift,
    D,
}

fn kind(s: Source) -> Option<Kind> {
    Some(match s {
        Source::U(_) => Kind::U,
        Source::Theta => Kind::Theta,
        Source::Eta => Kind::Eta,
        Source::G(_) => Kind::G,
        Source::H(_) => Kind::H,
        Source::HnLift => Kind::HnLift,
        Source::D => Kind::D,
        Source::F(_) => return None,
    })
}

struct Term {
    label: &'static str,
    kind: Kind,
    orders: &'static [usize],
    weight: Weight,
}

const TERMS: &[Term] = &[
    Term { label: "dt_u", kind: Kind::U, orders: &[0], weight: Weight::Lambda },
    Term { label: "gamma_u", kind: Kind::U, orders: &[0], weight: Weight::Gamma },
    Term { label: "half_grad_u", kind: Kind::U, orders: &[1], weight: Weight::Abs(0.5) },
    Term { label: "hess_u", kind: Kind::U, orders: &[2], weight: Weight::One },
    Term { label: "grad_theta", kind: Kind::Theta, orders: &[1], weight: Weight::One },
    Term { label: "half_g", kind: Kind::G, orders: &[0], weight: Weight::Abs(0.5) },
    Term { label: "grad_g", kind: Kind::G, orders: &[1], weight: Weight::One },
    Term { label: "dt_h", kind: Kind::H, orders: &[0], weight: Weight::Lambda },
    Term { label: "hess_h", kind: Kind::H, orders: &[2], weight: Weight::One },
    Term { label: "dt_hn_lift", kind: Kind::HnLift, orders: &[0], weight: Weight::Lambda },
    // surface problem
    Term { label: "dt_y_w2", kind: Kind::Eta, orders: &[0, 1, 2], weight: Weight::Lambda },
    Term { label: "y_w3", kind: Kind::Eta, orders: &[0, 1, 2, 3], weight: Weight::One },
    Term { label: "d_w2", kind: Kind::D, orders: &[0, 1, 2], weight: Weight::One },
    Term { label: "three_half_y_w1", kind: Kind::Eta, orders: &[0, 1], weight: Weight::Abs(1.5) },
    Term { label: "half_d_w1", kind: Kind::D, orders: &[0, 1], weight: Weight::Abs(0.5) },
    Term { label: "two_y", kind: Kind::Eta, orders: &[0], weight: Weight::Abs(2.0) },
    Term { label: "one_d", kind: Kind::D, orders: &[0], weight: Weight::Abs(1.0) },
];

const PLAIN_TERMS: usize = 10;

/// One weighted layout component.
struct Channel {
    term: usize,
    comp: usize,
    weight: Weight,
}

fn channels(lay: &[Component], surface: bool) -> Vec<Channel> {
    let terms = if surface { TERMS.len() } else { PLAIN_TERMS };
    let mut out = Vec::new();
    for (t, term) in TERMS[..terms].iter().enumerate() {
        for (c, comp) in lay.iter().enumerate() {
            if kind(comp.source) == Some(term.kind) && term.orders.contains(&comp.axes.len()) {
                out.push(Channel { term: t, comp: c, weight: term.weight });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxRegReport {
    pub gamma: f64,
    pub p: f64,
    pub q: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    /// `‖Λ^{3/2}Y‖_{W¹}` against its right-hand side.
    pub y_w1: Option<(f64, f64)>,
    /// `‖Λ²Y‖` against its right-hand side.
    pub y_l: Option<(f64, f64)>,
    pub terms: Vec<(&'static str, f64)>,
}

fn quotient(lhs: f64, rhs: f64) -> f64 {
    if rhs > 0.0 {
        lhs / rhs
    } else if lhs == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

fn assemble_report(gamma: f64, p: f64, q: f64, surface: bool, term_norms: Vec<f64>) -> MaxRegReport {
    let get = |l: &str| TERMS.iter().position(|t| t.label == l).and_then(|i| term_norms.get(i).copied()).unwrap_or(0.0);
    let mut lhs: f64 = ["dt_u", "gamma_u", "half_grad_u", "hess_u", "grad_theta"].iter().map(|l| get(l)).sum();
    let base: f64 = ["half_g", "grad_g", "dt_h", "hess_h", "dt_hn_lift"].iter().map(|l| get(l)).sum();
    let mut rhs = base;
    let (mut y_w1, mut y_l) = (None, None);
    if surface {
        lhs += get("dt_y_w2") + get("y_w3");
        rhs += get("d_w2");
        y_w1 = Some((get("three_half_y_w1"), base + get("d_w2") + get("half_d_w1")));
        y_l = Some((get("two_y"), base + get("d_w2") + get("one_d")));
    }
    let terms = TERMS.iter().zip(&term_norms).map(|(t, &v)| (t.label, v)).collect();
    MaxRegReport { gamma, p, q, lhs, rhs, ratio: quotient(lhs, rhs), y_w1, y_l, terms }
}

/// Layout values of one mode at one height for contour node `m`, profile factor included.
#[allow(clippy::too_many_arguments)]
fn mode_values(sol: &EvolutionSolution, lay: &[Component], md: Option<&ModeData>, kappa: f64, m: usize, mode: usize, side: Side, x: f64) -> Result<Vec<C64>> {
    let j = mode_jets(&sol.fields[m].modes[mode], md, kappa, side, x, sol.grid.x_max)?;
    Ok(lay.iter().map(|c| j.component(c) * sol.scale[m]).collect())
}

fn node_values(sol: &EvolutionSolution, lay: &[Component], md: &[Option<&ModeData>], kappa: &[f64], m: usize, side: Side, x: f64) -> Result<Vec<Vec<C64>>> {
    (0..md.len()).map(|i| mode_values(sol, lay, md[i], kappa[i], m, i, side, x)).collect()
}

fn mode_setup(sol: &EvolutionSolution) -> (Vec<Option<&ModeData>>, Vec<f64>) {
    let Some(f0) = sol.fields.first() else { return (Vec::new(), Vec::new()) };
    let md = f0.modes.iter().map(|m| sol.data.spatial.modes.iter().find(|d| d.k == m.k)).collect();
    let kappa = f0
        .modes
        .iter()
        .map(|m| sol.data.spatial.decay.rate(sol.lambdas[0], m.xi.iter().map(|x| x * x).sum::<f64>().sqrt()))
        .collect();
    (md, kappa)
}

/// Heights processed per deterministic reduction step (independent of the thread count).
const CHUNK: usize = 8;

/// Time-domain evaluation: FFT-assembled damped series, `L_q` in space per time node,
/// `L_p` over one period of the discrete inverse.
pub fn maxreg_ratio(sol: &EvolutionSolution, p: f64, q: f64) -> Result<MaxRegReport> {
    if !(p > 1.0 && p.is_finite() && q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("need 1 < p, q < ∞ (p = {p}, q = {q})")));
    }
    let grid = &sol.grid;
    let lay = layout(grid.n);
    let chans = channels(&lay, sol.with_surface);
    let (md, kappa) = mode_setup(sol);
    let modes_k: Vec<Vec<i64>> = sol.fields.first().map(|f| f.modes.iter().map(|m| m.k.clone()).collect()).unwrap_or_default();
    let asm = sol.contour.assembler();
    let mt = sol.contour.time_points();
    let nodes = grid.vertical_nodes();
    let wv = grid.vertical_weights();
    let vol = grid.torus_volume();
    let torus = grid.torus();
    let np = grid.tangential_points();
    let quad = Quadrature::for_q(q);
    let items: Vec<(Side, usize)> = Side::BOTH.iter().flat_map(|&s| (0..nodes.len()).map(move |i| (s, i))).collect();
    // space[ch][k] = ∫ |e^{−γt}U_ch(t_k)|^q dx
    let mut space = vec![vec![0.0f64; mt]; chans.len()];
    for chunk in items.chunks(CHUNK) {
        let parts: Vec<Vec<Vec<f64>>> = chunk
            .par_iter()
            .map(|&(side, i)| -> Result<Vec<Vec<f64>>> {
                let x = side.sign() * nodes[i];
                let vals: Vec<Vec<Vec<C64>>> =
                    (0..sol.fields.len()).map(|m| node_values(sol, &lay, &md, &kappa, m, side, x)).collect::<Result<_>>()?;
                let mut out = Vec::with_capacity(chans.len());
                for ch in &chans {
                    let series: Vec<Vec<C64>> = (0..modes_k.len())
                        .map(|mode| {
                            let col: Vec<C64> =
                                (0..vals.len()).map(|m| ch.weight.factor(sol.lambdas[m], sol.contour.gamma) * vals[m][mode][ch.comp]).collect();
                            asm.damped(&col)
                        })
                        .collect();
                    let mut acc = vec![0.0; mt];
                    if quad == Quadrature::Parseval {
                        for s in &series {
                            for (a, z) in acc.iter_mut().zip(s) {
                                *a += z.norm_sqr() * vol * wv[i];
                            }
                        }
                    } else {
                        let mut arr = vec![C64::new(0.0, 0.0); np];
                        for (k, a) in acc.iter_mut().enumerate() {
                            arr.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                            for (mode, s) in series.iter().enumerate() {
                                arr[torus.index(&modes_k[mode])] += s[k];
                            }
                            torus.to_physical(&mut arr);
                            *a = arr.iter().map(|z| z.norm().powf(q)).sum::<f64>() * vol / np as f64 * wv[i];
                        }
                    }
                    out.push(acc);
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        for part in parts {
            for (s, a) in space.iter_mut().zip(part) {
                for (x, y) in s.iter_mut().zip(a) {
                    *x += y;
                }
            }
        }
    }
    let dt = sol.contour.period() / mt as f64;
    let mut term_norms = vec![0.0; TERMS.len()];
    for (ch, s) in chans.iter().zip(&space) {
        let integral: f64 = s.iter().map(|v| v.powf(p / q)).sum::<f64>() * dt;
        term_norms[ch.term] += integral.powf(1.0 / p);
    }
    Ok(assemble_report(sol.contour.gamma, p, q, sol.with_surface, term_norms))
}

/// Independent `p = q = 2` evaluation: Plancherel in time, `(1/2π)∫‖F(γ + iτ)‖²dτ` by the
/// contour rule, with the spatial integral per contour node.
pub fn maxreg_plancherel(sol: &EvolutionSolution) -> Result<MaxRegReport> {
    let grid = &sol.grid;
    let lay = layout(grid.n);
    let chans = channels(&lay, sol.with_surface);
    let (md, kappa) = mode_setup(sol);
    let modes_k: Vec<Vec<i64>> = sol.fields.first().map(|f| f.modes.iter().map(|m| m.k.clone()).collect()).unwrap_or_default();
    let per_node: Vec<Vec<f64>> = (0..sol.fields.len())
        .into_par_iter()
        .map(|m| {
            integrate_components(grid, 2.0, Quadrature::Parseval, modes_k.len(), &modes_k, |mode, side, x| {
                mode_values(sol, &lay, md[mode], kappa[mode], m, mode, side, x)
            })
        })
        .collect::<Result<_>>()?;
    let h = sol.contour.step();
    let mut term_norms = vec![0.0; TERMS.len()];
    for ch in &chans {
        let s: f64 =
            per_node.iter().enumerate().map(|(m, v)| ch.weight.factor(sol.lambdas[m], sol.contour.gamma).norm_sqr() * v[ch.comp]).sum();
        term_norms[ch.term] += (s * h / (2.0 * std::f64::consts::PI)).sqrt();
    }
    Ok(assemble_report(sol.contour.gamma, 2.0, 2.0, sol.with_surface, term_norms))
}
