//! Symbols `m(ξ′, s)` of the y_n-integral operators, evaluated at `s = x_n + y_n > 0`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};
use crate::symbols::{
    build_symbol_table, evaluate, omega_n_weighted, s_family_symbol, Family, SpectralPoint, SymbolKind, SymbolRequest,
    SymbolTable,
};

pub trait Multiplier: Sync {
    fn label(&self) -> String;
    /// `m(ξ′, s)` for every `s` (all positive).
    fn eval(&self, xi: &[f64], s: &[f64]) -> Result<Vec<C64>>;
}

/// `m ≡ 0`.
pub struct ZeroSymbol;

impl Multiplier for ZeroSymbol {
    fn label(&self) -> String {
        "zero".into()
    }
    fn eval(&self, _: &[f64], s: &[f64]) -> Result<Vec<C64>> {
        Ok(vec![C64::new(0.0, 0.0); s.len()])
    }
}

/// `e^{−|ξ′| s}`.
pub struct ExpA;

impl Multiplier for ExpA {
    fn label(&self) -> String {
        "exp_a".into()
    }
    fn eval(&self, xi: &[f64], s: &[f64]) -> Result<Vec<C64>> {
        let a = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
        Ok(s.iter().map(|&s| C64::new((-a * s).exp(), 0.0)).collect())
    }
}

/// `s^{−p}` with no tangential decay: `p = 1` is the Carleman kernel, `p = 2` is not
/// integrable against smooth data at the interface.
pub struct InversePower(pub f64);

impl Multiplier for InversePower {
    fn label(&self) -> String {
        format!("inverse_power_{}", self.0)
    }
    fn eval(&self, _: &[f64], s: &[f64]) -> Result<Vec<C64>> {
        Ok(s.iter().map(|&s| C64::new(s.powf(-self.0), 0.0)).collect())
    }
}

/// Any `Fn(ξ′, s) -> m`.
pub struct FnSymbol<F>(pub String, pub F);

impl<F: Fn(&[f64], f64) -> C64 + Sync> Multiplier for FnSymbol<F> {
    fn label(&self) -> String {
        self.0.clone()
    }
    fn eval(&self, xi: &[f64], s: &[f64]) -> Result<Vec<C64>> {
        Ok(s.iter().map(|&s| (self.1)(xi, s)).collect())
    }
}

/// Which closed-form symbol a [`CertifiedSymbol`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertifiedKind {
    /// `∂_n^order` of a composite, with `(j, k, m)` as in [`SymbolRequest`].
    Composite { family: Family, variant: u8, j: usize, k: usize, m: usize },
    /// The reweighted `ω_{n,±}`.
    OmegaNWeighted,
}

/// A composite symbol at fixed `λ`; the lower phase is mirrored: `m(ξ′, s)` is the
/// symbol at `x_n = −s` on the minus side.
#[derive(Debug, Clone)]
pub struct CertifiedSymbol {
    pub kind: CertifiedKind,
    pub side: Side,
    pub order: u32,
    pub lambda: C64,
    pub fluid: FluidParams,
}

impl CertifiedSymbol {
    pub fn id(&self) -> String {
        let side = match self.side {
            Side::Plus => "plus",
            Side::Minus => "minus",
        };
        match self.kind {
            CertifiedKind::Composite { family, variant, j, k, m } => {
                let f = match family {
                    Family::U => "su",
                    Family::Theta => "stheta",
                };
                format!("{f}.v{variant}.j{j}k{k}m{m}.d{}.{side}", self.order)
            }
            CertifiedKind::OmegaNWeighted => format!("omega_n_weighted.d{}.{side}", self.order),
        }
    }

    pub fn with_lambda(&self, lambda: C64) -> Self {
        CertifiedSymbol { lambda, ..self.clone() }
    }

    fn table(&self, xi: &[f64]) -> Result<SymbolTable> {
        let p = SpectralPoint::new(self.lambda, xi.iter().map(|&x| C64::new(x, 0.0)).collect())?;
        build_symbol_table(&p, &self.fluid)
    }

    fn at(&self, t: &SymbolTable, s: f64) -> Result<C64> {
        let x = self.side.sign() * s;
        match self.kind {
            CertifiedKind::Composite { family, variant, j, k, m } => {
                let req = SymbolRequest::new(SymbolKind::SFamily(family, variant), self.side, x).jk(j, k).tangential(m).order(self.order);
                s_family_symbol(family, variant, &req, t)
            }
            CertifiedKind::OmegaNWeighted => omega_n_weighted(self.side, x, self.order, t),
        }
    }
}

impl Multiplier for CertifiedSymbol {
    fn label(&self) -> String {
        self.id()
    }
    fn eval(&self, xi: &[f64], s: &[f64]) -> Result<Vec<C64>> {
        let t = self.table(xi)?;
        s.iter().map(|&s| self.at(&t, s)).collect()
    }
}

/// A plain table symbol (φ, ψ, χ, ω, ℳ, exponentials) mirrored the same way.
#[derive(Debug, Clone)]
pub struct TableSymbol {
    pub request: SymbolRequest,
    pub lambda: C64,
    pub fluid: FluidParams,
}

impl Multiplier for TableSymbol {
    fn label(&self) -> String {
        format!("{:?}", self.request.kind)
    }
    fn eval(&self, xi: &[f64], s: &[f64]) -> Result<Vec<C64>> {
        let p = SpectralPoint::new(self.lambda, xi.iter().map(|&x| C64::new(x, 0.0)).collect())?;
        let t = build_symbol_table(&p, &self.fluid)?;
        let side = self.request.side;
        s.iter().map(|&s| evaluate(&SymbolRequest { x_n: side.sign() * s, ..self.request }, &t)).collect()
    }
}

/// Every certified symbol at the derivative order that enters the top-order estimate:
/// `∂_n²` of the velocity composites (∇²u), `∂_n` of the pressure composites and of the
/// reweighted `ω_{n,±}` (∇θ). Pressure variant 5 with `k = n` is excluded by construction.
/// `(j, k)` run over `{1, n}`, the tangential index `m` over `1..n`.
pub fn certified_symbols(n: usize, lambda: C64, fp: &FluidParams) -> Result<Vec<CertifiedSymbol>> {
    if !(2..=3).contains(&n) {
        return Err(Error::Dimension(format!("n = {n} (expected 2 or 3)")));
    }
    let ends = [1, n];
    let mut out = Vec::new();
    for side in Side::BOTH {
        let mut push = |kind, order| out.push(CertifiedSymbol { kind, side, order, lambda, fluid: *fp });
        for (family, order) in [(Family::U, 2), (Family::Theta, 1)] {
            for variant in 1..=6u8 {
                let js: &[usize] = if family == Family::U { &ends } else { &[1] };
                let ms: Vec<usize> = if variant == 2 || variant == 6 { (1..n).collect() } else { vec![1] };
                for &j in js {
                    for &k in &ends {
                        if family == Family::Theta && variant == 5 && k == n {
                            continue;
                        }
                        for &m in &ms {
                            push(CertifiedKind::Composite { family, variant, j, k, m }, order);
                        }
                    }
                }
            }
        }
        push(CertifiedKind::OmegaNWeighted, 1);
    }
    Ok(out)
}
