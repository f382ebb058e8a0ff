//! Velocity, pressure and weighted composite symbols evaluated from a [`SymbolTable`].

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::kernel::{exp_kernel, m_kernel};
use super::table::SymbolTable;
use crate::error::{Error, Result};
use crate::params::Side;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// Velocity composites built on φ (variants 1–3) and ψ (4–6).
    U,
    /// Pressure composites built on χ (variants 1–3) and ω (4–6).
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymbolKind {
    PhiVel,
    PsiVel,
    ChiPress,
    OmegaPress,
    MKernel,
    ExpA,
    ExpB,
    SFamily(Family, u8),
    LopatinskiiEta,
}

/// Which symbol to evaluate where. Indices are 1-based: `j` is the velocity component,
/// `k` the data component, `m` the tangential multiplier index of composite variants 2 and 6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolRequest {
    pub kind: SymbolKind,
    pub side: Side,
    pub j: usize,
    pub k: usize,
    pub m: usize,
    pub order: u32,
    pub x_n: f64,
}

impl SymbolRequest {
    pub fn new(kind: SymbolKind, side: Side, x_n: f64) -> Self {
        SymbolRequest { kind, side, j: 1, k: 1, m: 1, order: 0, x_n }
    }
    pub fn jk(mut self, j: usize, k: usize) -> Self {
        self.j = j;
        self.k = k;
        self
    }
    pub fn order(mut self, order: u32) -> Self {
        self.order = order;
        self
    }
    pub fn tangential(mut self, m: usize) -> Self {
        self.m = m;
        self
    }
}

/// A velocity symbol as `c_m·ℳ± + c_e·e^{∓B± x_n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub c_m: C64,
    pub c_e: C64,
}

impl Profile {
    pub fn eval(&self, t: &SymbolTable, side: Side, x_n: f64, order: u32) -> Result<C64> {
        let b = t.b(side);
        Ok(self.c_m * m_kernel(t.a, b, x_n, side, order)? + self.c_e * exp_kernel(b, x_n, side, order)?)
    }
}

fn check_index(t: &SymbolTable, name: &str, v: usize, max: usize) -> Result<()> {
    if v == 0 || v > max {
        return Err(Error::Dimension(format!("{name} = {v} outside 1..={max} (n = {})", t.dim())));
    }
    Ok(())
}

/// Coefficients of the j-th velocity component's response to data column `col`
/// (0-based; `col < n` is ⟦g_{col+1}⟧, otherwise ⟦h_{col−n+1}⟧).
pub fn velocity_profile(t: &SymbolTable, side: Side, j: usize, col: usize) -> Result<Profile> {
    let n = t.dim();
    check_index(t, "j", j, n)?;
    if col >= 2 * n {
        return Err(Error::Dimension(format!("data column {col} outside 0..{}", 2 * n)));
    }
    let a = t.column(col);
    if j == n {
        return Ok(match side {
            Side::Plus => Profile { c_m: a[0], c_e: a[1] },
            Side::Minus => Profile { c_m: a[2], c_e: a[3] },
        });
    }
    if t.a == C64::new(0.0, 0.0) {
        return Err(Error::ZeroFrequency);
    }
    let z = I * t.xi[j - 1] / t.a;
    let c_m = match side {
        Side::Plus => -z * a[0],
        Side::Minus => z * a[2],
    };
    let d = t.viscous_sum();
    let coupled = z * t.coupling(col);
    let c_e = if col < n {
        let delta = if col + 1 == j { 1.0 } else { 0.0 };
        (delta + coupled) / d
    } else {
        let delta = if col - n + 1 == j { 1.0 } else { 0.0 };
        let own = match side {
            Side::Plus => t.fluid.mu_minus * t.b_minus,
            Side::Minus => -t.fluid.mu_plus * t.b_plus,
        };
        (own * delta + coupled) / d
    };
    Ok(Profile { c_m, c_e })
}

/// Coefficient of `e^{∓A x_n}` in the pressure response to data column `col`.
pub fn pressure_coeff(t: &SymbolTable, side: Side, col: usize) -> Result<C64> {
    if col >= 2 * t.dim() {
        return Err(Error::Dimension(format!("data column {col} outside 0..{}", 2 * t.dim())));
    }
    if t.a == C64::new(0.0, 0.0) {
        return Err(Error::ZeroFrequency);
    }
    let a = t.column(col);
    Ok(match side {
        Side::Plus => -t.fluid.mu_plus * (t.b_plus + t.a) / t.a * a[0],
        Side::Minus => t.fluid.mu_minus * (t.b_minus + t.a) / t.a * a[2],
    })
}

fn data_column(t: &SymbolTable, kind: SymbolKind, k: usize) -> Result<usize> {
    check_index(t, "k", k, t.dim())?;
    Ok(match kind {
        SymbolKind::PhiVel | SymbolKind::ChiPress => k - 1,
        _ => t.dim() + k - 1,
    })
}

/// φ_{k,±j} or ψ_{k,±j} and their x_n-derivatives.
pub fn velocity_symbol(req: &SymbolRequest, t: &SymbolTable) -> Result<C64> {
    if !matches!(req.kind, SymbolKind::PhiVel | SymbolKind::PsiVel) {
        return Err(Error::InvalidParameter(format!("{:?} is not a velocity symbol", req.kind)));
    }
    let col = data_column(t, req.kind, req.k)?;
    velocity_profile(t, req.side, req.j, col)?.eval(t, req.side, req.x_n, req.order)
}

/// χ_{k,±} or ω_{k,±} and their x_n-derivatives.
pub fn pressure_symbol(req: &SymbolRequest, t: &SymbolTable) -> Result<C64> {
    if !matches!(req.kind, SymbolKind::ChiPress | SymbolKind::OmegaPress) {
        return Err(Error::InvalidParameter(format!("{:?} is not a pressure symbol", req.kind)));
    }
    let col = data_column(t, req.kind, req.k)?;
    Ok(pressure_coeff(t, req.side, col)? * exp_kernel(t.a, req.x_n, req.side, req.order)?)
}

fn base_symbol(family: Family, psi_like: bool, req: &SymbolRequest, t: &SymbolTable, order: u32) -> Result<C64> {
    let kind = match (family, psi_like) {
        (Family::U, false) => SymbolKind::PhiVel,
        (Family::U, true) => SymbolKind::PsiVel,
        (Family::Theta, false) => SymbolKind::ChiPress,
        (Family::Theta, true) => SymbolKind::OmegaPress,
    };
    let r = SymbolRequest { kind, order, ..*req };
    match family {
        Family::U => velocity_symbol(&r, t),
        Family::Theta => pressure_symbol(&r, t),
    }
}

/// `ρ±/μ± · λ^{1/2} · B±⁻²`.
fn time_weight(t: &SymbolTable, side: Side) -> C64 {
    let b = t.b(side);
    t.fluid.rho(side) / t.fluid.mu(side) * t.lambda.sqrt() / (b * b)
}

fn composite(family: Family, variant: u8, req: &SymbolRequest, t: &SymbolTable, allow_excluded: bool) -> Result<C64> {
    let b = t.b(req.side);
    let binv2 = 1.0 / (b * b);
    let tang = || -> Result<C64> {
        check_index(t, "m", req.m, t.dim() - 1)?;
        Ok(I * t.xi[req.m - 1])
    };
    let o = req.order;
    match variant {
        1 => Ok(time_weight(t, req.side) * base_symbol(family, false, req, t, o + 1)?),
        2 => Ok(tang()? * binv2 * base_symbol(family, false, req, t, o + 1)?),
        3 => base_symbol(family, false, req, t, o),
        4 => Ok(binv2 * base_symbol(family, true, req, t, o + 1)?),
        5 => {
            if family == Family::Theta && req.k == t.dim() && !allow_excluded {
                return Err(Error::ExcludedTerm);
            }
            Ok(time_weight(t, req.side) * base_symbol(family, true, req, t, o)?)
        }
        6 => Ok(tang()? * binv2 * base_symbol(family, true, req, t, o)?),
        v => Err(Error::InvalidParameter(format!("composite variant {v} outside 1..=6"))),
    }
}

/// The six weighted velocity or pressure composites; `req.order` differentiates the whole composite.
pub fn s_family_symbol(family: Family, variant: u8, req: &SymbolRequest, t: &SymbolTable) -> Result<C64> {
    composite(family, variant, req, t, false)
}

/// Pressure variant 5 with k = n, bypassing the exclusion (negative control only).
pub fn omega_n_unweighted(req: &SymbolRequest, t: &SymbolTable) -> Result<C64> {
    let r = SymbolRequest { k: t.dim(), ..*req };
    composite(Family::Theta, 5, &r, t, true)
}

/// The replacement weighting `ρ±/μ± · A · B±⁻² · ω_{n,±}` of the excluded term.
pub fn omega_n_weighted(side: Side, x_n: f64, order: u32, t: &SymbolTable) -> Result<C64> {
    let b = t.b(side);
    let w = t.fluid.rho(side) / t.fluid.mu(side) * t.a / (b * b);
    let r = SymbolRequest::new(SymbolKind::OmegaPress, side, x_n).jk(1, t.dim()).order(order);
    Ok(w * pressure_symbol(&r, t)?)
}

/// Dispatches every table-based symbol kind.
pub fn evaluate(req: &SymbolRequest, t: &SymbolTable) -> Result<C64> {
    match req.kind {
        SymbolKind::PhiVel | SymbolKind::PsiVel => velocity_symbol(req, t),
        SymbolKind::ChiPress | SymbolKind::OmegaPress => pressure_symbol(req, t),
        SymbolKind::MKernel => m_kernel(t.a, t.b(req.side), req.x_n, req.side, req.order),
        SymbolKind::ExpA => exp_kernel(t.a, req.x_n, req.side, req.order),
        SymbolKind::ExpB => exp_kernel(t.b(req.side), req.x_n, req.side, req.order),
        SymbolKind::SFamily(f, v) => s_family_symbol(f, v, req, t),
        SymbolKind::LopatinskiiEta => t.height_gain(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::FluidParams;
    use crate::symbols::roots::SpectralPoint;
    use crate::symbols::table::build_symbol_table;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn table(lambda: C64, xi: Vec<C64>, fp: FluidParams) -> SymbolTable {
        build_symbol_table(&SpectralPoint::new(lambda, xi).unwrap(), &fp).unwrap()
    }

    #[test]
    fn symmetric_trace_value() {
        let t = table(c(3.0, 0.0), vec![c(1.0, 0.0)], FluidParams::symmetric(1.0, 1.0).unwrap());
        for side in Side::BOTH {
            let r = SymbolRequest::new(SymbolKind::PhiVel, side, 0.0).jk(2, 2);
            assert!((velocity_symbol(&r, &t).unwrap() - c(1.0 / 12.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn decays_far_away() {
        let t = table(c(1.0, 1.0), vec![c(0.5, 0.1), c(-1.0, 0.05)], FluidParams::default());
        for side in Side::BOTH {
            let r = SymbolRequest::new(SymbolKind::PsiVel, side, side.sign() * 200.0).jk(1, 3);
            assert!(velocity_symbol(&r, &t).unwrap().norm() < 1e-30);
        }
    }

    #[test]
    fn variant3_is_plain_phi_and_exclusion_fires() {
        let t = table(c(2.0, -1.0), vec![c(0.7, 0.0), c(0.2, 0.0)], FluidParams::default());
        let r = SymbolRequest::new(SymbolKind::PhiVel, Side::Plus, 0.3).jk(1, 2);
        let s = s_family_symbol(Family::U, 3, &r, &t).unwrap();
        assert_eq!(s, velocity_symbol(&r, &t).unwrap());
        let r = SymbolRequest::new(SymbolKind::OmegaPress, Side::Minus, -0.3).jk(1, 3);
        assert_eq!(s_family_symbol(Family::Theta, 5, &r, &t), Err(Error::ExcludedTerm));
        assert!(s_family_symbol(Family::Theta, 5, &SymbolRequest { k: 2, ..r }, &t).is_ok());
        assert!(omega_n_unweighted(&r, &t).is_ok());
    }

    #[test]
    fn pressure_vanishes_with_its_coefficient() {
        // k = n: a_{1,n} is −A·adj₁₂/det; nothing forces it to zero, but column scaling is linear
        let t = table(c(1.0, 0.0), vec![c(1.0, 0.0)], FluidParams::default());
        let p = pressure_coeff(&t, Side::Plus, 0).unwrap();
        let a1 = t.a(1, 1);
        assert!((p + t.fluid.mu_plus * (t.b_plus + t.a) / t.a * a1).norm() < 1e-15);
    }

    #[test]
    fn bad_indices() {
        let t = table(c(1.0, 0.0), vec![c(1.0, 0.0)], FluidParams::default());
        let r = SymbolRequest::new(SymbolKind::PhiVel, Side::Plus, 1.0).jk(3, 1);
        assert!(matches!(velocity_symbol(&r, &t), Err(Error::Dimension(_))));
        let r = SymbolRequest::new(SymbolKind::PhiVel, Side::Plus, -1.0);
        assert!(matches!(velocity_symbol(&r, &t), Err(Error::WrongSide { .. })));
    }
}
