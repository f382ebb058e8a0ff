//! Solutions held per tangential mode in closed form: kernel coefficients for the
//! interface-driven part, trig-series coefficients for the whole-space part.

use num_complex::Complex64 as C64;

use super::data::profile;
use super::grid::GridSpec;
use crate::error::Result;
use crate::params::{FluidParams, Side};
use crate::symbols::{exp_kernel, m_kernel};

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// `û_j = c_m[j]·ℳ± + c_e[j]·e^{∓B± x_n}`, `θ̂ = p·e^{∓A x_n}` on one side.
#[derive(Debug, Clone, PartialEq)]
pub struct SideCoef {
    pub c_m: Vec<C64>,
    pub c_e: Vec<C64>,
    pub p: C64,
}

impl SideCoef {
    pub fn zero(n: usize) -> Self {
        SideCoef { c_m: vec![ZERO; n], c_e: vec![ZERO; n], p: ZERO }
    }

    pub fn axpy(&mut self, s: C64, other: &SideCoef) {
        for (a, b) in self.c_m.iter_mut().zip(&other.c_m) {
            *a += s * b;
        }
        for (a, b) in self.c_e.iter_mut().zip(&other.c_e) {
            *a += s * b;
        }
        self.p += s * other.p;
    }
}

/// `ψ̂ e^{iξ_n x_n}`, `φ̂ e^{iξ_n x_n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WholeMode {
    pub xi_n: f64,
    pub vel: Vec<C64>,
    pub press: C64,
}

/// Height function extended into the bulk: `η̂(x_n) = gain·(d̂ e^{−κ|x_n|} − v̂_n(x_n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaBulk {
    pub gain: C64,
    pub d: C64,
    pub kappa: f64,
    /// Interface-driven part of `v` (the solution without surface terms).
    pub v: [SideCoef; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeField {
    pub k: Vec<i64>,
    pub xi: Vec<f64>,
    pub a: C64,
    pub b: [C64; 2],
    pub bdry: [SideCoef; 2],
    pub whole: [Vec<WholeMode>; 2],
    pub eta: Option<EtaBulk>,
}

/// `∂_n^m` of every unknown at one height: `u[j][m]`, `theta[m]`, `eta[m]` for m ≤ 3.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub u: Vec<[C64; 4]>,
    pub theta: [C64; 4],
    pub eta: [C64; 4],
}

fn whole_factor(w: &WholeMode, x_n: f64, order: u32) -> C64 {
    (I * w.xi_n).powu(order) * (I * w.xi_n * x_n).exp()
}

impl ModeField {
    pub fn n(&self) -> usize {
        self.xi.len() + 1
    }

    fn bdry_velocity(&self, c: &SideCoef, side: Side, x_n: f64, order: u32) -> Result<Vec<C64>> {
        let b = self.b[side.index()];
        let mk = m_kernel(self.a, b, x_n, side, order)?;
        let eb = exp_kernel(b, x_n, side, order)?;
        Ok(c.c_m.iter().zip(&c.c_e).map(|(cm, ce)| cm * mk + ce * eb).collect())
    }

    fn whole_velocity(&self, side: Side, x_n: f64, order: u32, out: &mut [C64]) {
        for w in &self.whole[side.index()] {
            let f = whole_factor(w, x_n, order);
            for (o, v) in out.iter_mut().zip(&w.vel) {
                *o += v * f;
            }
        }
    }

    pub fn velocity(&self, side: Side, x_n: f64, order: u32) -> Result<Vec<C64>> {
        let mut u = self.bdry_velocity(&self.bdry[side.index()], side, x_n, order)?;
        self.whole_velocity(side, x_n, order, &mut u);
        Ok(u)
    }

    pub fn pressure(&self, side: Side, x_n: f64, order: u32) -> Result<C64> {
        let mut t = self.bdry[side.index()].p * exp_kernel(self.a, x_n, side, order)?;
        for w in &self.whole[side.index()] {
            t += w.press * whole_factor(w, x_n, order);
        }
        Ok(t)
    }

    /// Velocity of the interface-driven part only.
    pub fn boundary_velocity(&self, side: Side, x_n: f64, order: u32) -> Result<Vec<C64>> {
        self.bdry_velocity(&self.bdry[side.index()], side, x_n, order)
    }

    pub fn eta(&self, side: Side, x_n: f64, order: u32) -> Result<C64> {
        let Some(e) = &self.eta else { return Ok(ZERO) };
        let n = self.n();
        let mut v = self.bdry_velocity(&e.v[side.index()], side, x_n, order)?;
        self.whole_velocity(side, x_n, order, &mut v);
        Ok(e.gain * (e.d * profile(e.kappa, side, x_n, order) - v[n - 1]))
    }

    /// The interface height: upper-phase trace of the bulk extension.
    pub fn interface_eta(&self) -> C64 {
        self.eta(Side::Plus, 0.0, 0).unwrap_or(ZERO)
    }

    pub fn jet(&self, side: Side, x_n: f64) -> Result<Jet> {
        let n = self.n();
        let mut u = vec![[ZERO; 4]; n];
        let mut theta = [ZERO; 4];
        let mut eta = [ZERO; 4];
        for m in 0..4u32 {
            let v = self.velocity(side, x_n, m)?;
            for j in 0..n {
                u[j][m as usize] = v[j];
            }
            theta[m as usize] = self.pressure(side, x_n, m)?;
            eta[m as usize] = self.eta(side, x_n, m)?;
        }
        Ok(Jet { u, theta, eta })
    }

    /// Largest coefficient difference; `|x_n|`-independent so it bounds field differences pointwise
    /// up to the kernel sizes.
    pub fn coef_distance(&self, other: &ModeField) -> f64 {
        let mut d = 0.0f64;
        for s in 0..2 {
            let (a, b) = (&self.bdry[s], &other.bdry[s]);
            for (x, y) in a.c_m.iter().zip(&b.c_m).chain(a.c_e.iter().zip(&b.c_e)) {
                d = d.max((x - y).norm());
            }
            d = d.max((a.p - b.p).norm());
            for (x, y) in self.whole[s].iter().zip(&other.whole[s]) {
                for (p, q) in x.vel.iter().zip(&y.vel) {
                    d = d.max((p - q).norm());
                }
                d = d.max((x.press - y.press).norm());
            }
        }
        d.max((self.interface_eta() - other.interface_eta()).norm())
    }
}

/// All modes of one solve at one λ.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhaseField {
    pub n: usize,
    pub lambda: C64,
    pub fluid: FluidParams,
    pub modes: Vec<ModeField>,
    /// Constant pressure per phase (the filtered zero mode; zero unless set by hand).
    pub pressure_offset: [f64; 2],
    pub with_surface: bool,
}

/// Point values on the full grid: `side[s][node]` holds `u_1..u_n, θ` as tangential arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    pub nodes: Vec<f64>,
    pub dims: Vec<usize>,
    pub side: [Vec<Vec<Vec<C64>>>; 2],
    pub eta: Option<Vec<C64>>,
}

impl TwoPhaseField {
    pub fn mode(&self, k: &[i64]) -> Option<&ModeField> {
        self.modes.iter().find(|m| m.k == k)
    }

    /// Traces `û(0±)` per mode, slot 0 upper.
    pub fn traces(&self) -> Result<Vec<[Vec<C64>; 2]>> {
        self.modes.iter().map(|m| Ok([m.velocity(Side::Plus, 0.0, 0)?, m.velocity(Side::Minus, 0.0, 0)?])).collect()
    }

    /// Max over modes and sides of `|ŵ(±X)| / |ŵ(0±)|` against `e^{−Re min(A,B) X/2}`
    /// for the interface-driven part; returns `(worst excess, ok)`.
    pub fn decay_envelope(&self, x_max: f64) -> Result<(f64, bool)> {
        let mut worst = 0.0f64;
        for m in &self.modes {
            for side in Side::BOTH {
                let s = side.sign();
                let at0: f64 = m.boundary_velocity(side, 0.0, 0)?.iter().map(|z| z.norm()).sum();
                let atx: f64 = m.boundary_velocity(side, s * x_max, 0)?.iter().map(|z| z.norm()).sum();
                let rate = m.a.re.min(m.b[side.index()].re);
                let env = (-rate * x_max / 2.0).exp() * at0;
                if atx > 0.0 {
                    worst = worst.max(atx / env.max(f64::MIN_POSITIVE));
                }
            }
        }
        Ok((worst, worst <= 1.0))
    }

    /// Inverse tangential transform at every vertical node.
    pub fn to_physical(&self, grid: &GridSpec) -> Result<PhysicalField> {
        let torus = grid.torus();
        let np = grid.tangential_points();
        let nodes = grid.vertical_nodes();
        let mut side: [Vec<Vec<Vec<C64>>>; 2] = [Vec::new(), Vec::new()];
        for s in Side::BOTH {
            for &x in &nodes {
                let xs = s.sign() * x;
                let mut comps = vec![vec![ZERO; np]; self.n + 1];
                for m in &self.modes {
                    let i = torus.index(&m.k);
                    for (j, v) in m.velocity(s, xs, 0)?.into_iter().enumerate() {
                        comps[j][i] += v;
                    }
                    comps[self.n][i] += m.pressure(s, xs, 0)?;
                }
                comps[self.n][0] += self.pressure_offset[s.index()];
                for c in &mut comps {
                    torus.to_physical(c);
                }
                side[s.index()].push(comps);
            }
        }
        let eta = if self.with_surface {
            let mut e = vec![ZERO; np];
            for m in &self.modes {
                e[torus.index(&m.k)] += m.interface_eta();
            }
            torus.to_physical(&mut e);
            Some(e)
        } else {
            None
        };
        Ok(PhysicalField { nodes, dims: grid.n_tan.clone(), side, eta })
    }
}
