//! The interface matrix `L`, its determinant and cofactors, the coefficient matrix
//! `a = L⁻¹R`, and the surface-tension symbol ℒ.

use num_complex::Complex64 as C64;

use super::roots::{compute_roots, Roots, SpectralPoint};
use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};

pub type Mat4 = [[C64; 4]; 4];

pub const DEFAULT_DET_FLOOR: f64 = 1e-300;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Every symbol value that depends on (λ, ξ′) only.
#[derive(Debug, Clone)]
pub struct SymbolTable {
    pub fluid: FluidParams,
    pub lambda: C64,
    pub xi: Vec<C64>,
    pub a: C64,
    pub b_plus: C64,
    pub b_minus: C64,
    pub a_tilde: f64,
    pub l: Mat4,
    pub det_closed: C64,
    /// Standard cofactors `C_ij = (−1)^{i+j} M_ij`, so `L·Cᵀ = det L · I`.
    pub cofactor: Mat4,
    /// `a[c][i]` is the (i+1, c+1) entry of `L⁻¹R`; columns 0..n are ⟦g⟧, n..2n are ⟦h⟧.
    coef: Vec<[C64; 4]>,
    /// `μ₊(a₁c + A a₂c) − μ₋(a₃c + A a₄c)`: tangential-stress coupling per data column.
    coupling: Vec<C64>,
    pub lopatinskii: C64,
}

pub fn build_symbol_table(p: &SpectralPoint, fp: &FluidParams) -> Result<SymbolTable> {
    build_symbol_table_with_floor(p, fp, DEFAULT_DET_FLOOR)
}

pub fn build_symbol_table_with_floor(p: &SpectralPoint, fp: &FluidParams, floor: f64) -> Result<SymbolTable> {
    let roots = compute_roots(p, fp)?;
    if roots.a_tilde == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let Roots { a, b_plus: bp, b_minus: bm, a_tilde } = roots;
    let (mp, mm) = (fp.mu_plus, fp.mu_minus);
    let l: Mat4 = [
        [mp * (bp + a), mp * (bp * bp + a * a), -mm * (bm + a), -mm * (bm * bm + a * a)],
        [mp * (bp - a), -2.0 * mp * a * bp, mm * (bm - a), -2.0 * mm * a * bm],
        [ONE, bp, ONE, bm],
        [ZERO, ONE, ZERO, -ONE],
    ];
    let det_closed = det_l_closed(a, bp, bm, mp, mm);
    if !(det_closed.norm() > floor) {
        return Err(Error::Degenerate(det_closed.norm()));
    }
    let cofactor = cofactors(&l);
    let n = p.dim();
    let r = rhs_matrix(&p.xi, a);
    let inv_det = 1.0 / det_closed;
    let coef: Vec<[C64; 4]> = (0..2 * n)
        .map(|c| {
            let mut col = [ZERO; 4];
            for (i, v) in col.iter_mut().enumerate() {
                // adj(L)_{is} = C_{si}
                *v = (0..4).map(|s| cofactor[s][i] * r[s][c]).sum::<C64>() * inv_det;
            }
            col
        })
        .collect();
    let coupling = coef
        .iter()
        .map(|x| mp * (x[0] + a * x[1]) - mm * (x[2] + a * x[3]))
        .collect();
    let s_sum = mp * (bp + a) + mm * (bm + a);
    let k = surface_factor(fp, a);
    let lopatinskii = p.lambda * det_closed - a * s_sum * k;
    Ok(SymbolTable {
        fluid: *fp,
        lambda: p.lambda,
        xi: p.xi.clone(),
        a,
        b_plus: bp,
        b_minus: bm,
        a_tilde,
        l,
        det_closed,
        cofactor,
        coef,
        coupling,
        lopatinskii,
    })
}

/// `⟦ρ⟧c_g − c_σA²`: the normal-stress weight of the interface height.
pub fn surface_factor(fp: &FluidParams, a: C64) -> C64 {
    fp.rho_jump() * fp.c_g - fp.c_sigma * a * a
}

/// Closed-form determinant of `L` (expanded by hand, sign fixed against direct evaluation).
pub fn det_l_closed(a: C64, bp: C64, bm: C64, mp: f64, mm: f64) -> C64 {
    let a2 = a * a;
    let s = mp * bp + mm * bm;
    -(mp - mm) * (mp - mm) * a2 * a
        + ((3.0 * mp - mm) * mp * bp + (3.0 * mm - mp) * mm * bm) * a2
        + (s * s + mp * mm * (bp + bm) * (bp + bm)) * a
        + s * (mp * bp * bp + mm * bm * bm)
}

/// The 4×2n data matrix: rows `iξ′ᵀ`, `−A`, `iξ′ᵀ`, `1` in block position.
pub fn rhs_matrix(xi: &[C64], a: C64) -> Vec<Vec<C64>> {
    let n = xi.len() + 1;
    let mut r = vec![vec![ZERO; 2 * n]; 4];
    for (c, z) in xi.iter().enumerate() {
        r[0][c] = I * z;
        r[2][n + c] = I * z;
    }
    r[1][n - 1] = -a;
    r[3][2 * n - 1] = ONE;
    r
}

fn det3(m: [[C64; 3]; 3]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cofactor matrix from explicit 3×3 minors.
pub fn cofactors(l: &Mat4) -> Mat4 {
    let mut c = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut m = [[ZERO; 3]; 3];
            for (ri, r) in (0..4).filter(|&r| r != i).enumerate() {
                for (ci, col) in (0..4).filter(|&col| col != j).enumerate() {
                    m[ri][ci] = l[r][col];
                }
            }
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            c[i][j] = sign * det3(m);
        }
    }
    c
}

/// Determinant by Gaussian elimination with partial pivoting (independent of the closed form).
pub fn det_by_elimination(m: &Mat4) -> C64 {
    let mut a = *m;
    let mut det = ONE;
    for k in 0..4 {
        let p = (k..4).max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm())).unwrap();
        if a[p][k] == ZERO {
            return ZERO;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for r in k + 1..4 {
            let f = a[r][k] / a[k][k];
            for c in k..4 {
                let t = a[k][c];
                a[r][c] -= f * t;
            }
        }
    }
    det
}

impl SymbolTable {
    /// Spatial dimension n.
    pub fn dim(&self) -> usize {
        self.xi.len() + 1
    }

    pub fn roots(&self) -> Roots {
        Roots { a: self.a, b_plus: self.b_plus, b_minus: self.b_minus, a_tilde: self.a_tilde }
    }

    pub fn b(&self, side: Side) -> C64 {
        match side {
            Side::Plus => self.b_plus,
            Side::Minus => self.b_minus,
        }
    }

    /// `a_{i,j}` with 1-based indices (i ∈ 1..=4, j ∈ 1..=2n).
    pub fn a(&self, i: usize, j: usize) -> C64 {
        self.coef[j - 1][i - 1]
    }

    /// Column `c` (0-based) of `a`.
    pub fn column(&self, c: usize) -> [C64; 4] {
        self.coef[c]
    }

    pub fn coupling(&self, c: usize) -> C64 {
        self.coupling[c]
    }

    /// Transposed cofactor matrix: `adj[i][s]` multiplies `r_{s·}` in `a = adj·R / det`.
    pub fn adjugate(&self) -> Mat4 {
        let mut t = [[ZERO; 4]; 4];
        for (i, row) in t.iter_mut().enumerate() {
            for (s, v) in row.iter_mut().enumerate() {
                *v = self.cofactor[s][i];
            }
        }
        t
    }

    pub fn det_direct(&self) -> C64 {
        det_by_elimination(&self.l)
    }

    /// `Σ_s adj_{is} r_{sj}` for 1-based (i, j): the numerator of `a_{i,j}`.
    pub fn adj_r(&self, i: usize, j: usize) -> C64 {
        self.a(i, j) * self.det_closed
    }

    /// `μ₊B₊ + μ₋B₋`.
    pub fn viscous_sum(&self) -> C64 {
        self.fluid.mu_plus * self.b_plus + self.fluid.mu_minus * self.b_minus
    }

    /// `μ₊(B₊+A) + μ₋(B₋+A)`; `a_{2,2n}·det L = A` times this.
    pub fn trace_sum(&self) -> C64 {
        self.fluid.mu_plus * (self.b_plus + self.a) + self.fluid.mu_minus * (self.b_minus + self.a)
    }

    pub fn surface_factor(&self) -> C64 {
        surface_factor(&self.fluid, self.a)
    }

    /// `η̂ / d̃̂ = det L / ℒ`.
    pub fn height_gain(&self) -> Result<C64> {
        if !(self.lopatinskii.norm() > DEFAULT_DET_FLOOR) {
            return Err(Error::SurfaceDegenerate(self.lopatinskii.norm()));
        }
        Ok(self.det_closed / self.lopatinskii)
    }

    /// `|λ|^{1/2} + Ã`.
    pub fn scale(&self) -> f64 {
        self.lambda.norm().sqrt() + self.a_tilde
    }
}
