//! Empirical versions of every quantitative symbol bound.

use num_complex::Complex64 as C64;

use super::report::{finish, sweep, BoundKind, BoundReport, Tolerances};
use super::sampling::Sample;
use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};
use crate::symbols::{
    appendix_a_symbol, build_symbol_table, exp_kernel, m_kernel, omega_n_unweighted, omega_n_weighted, s_family_symbol,
    Family, SpectralPoint, SymbolKind, SymbolRequest, SymbolTable,
};

type Cell = Option<(f64, f64)>;

/// Running maximum over the inner loops of one sample; a non-finite value sticks.
#[derive(Clone, Copy)]
struct Extreme(Option<(f64, f64)>);

impl Extreme {
    fn max() -> Self {
        Extreme(None)
    }
    fn push(&mut self, v: f64, x: f64) {
        let take = match self.0 {
            None => true,
            Some((w, _)) => w.is_finite() && (!v.is_finite() || v > w),
        };
        if take {
            self.0 = Some((v, x));
        }
    }
    fn cell(self) -> Cell {
        self.0
    }
}

fn table(s: &Sample, fp: &FluidParams) -> Option<SymbolTable> {
    build_symbol_table(&s.point, fp).ok()
}

fn nan_row(len: usize, x: f64) -> Vec<Cell> {
    vec![Some((f64::NAN, x)); len]
}

fn dim_of(samples: &[Sample]) -> Result<usize> {
    let n = samples.first().ok_or_else(|| Error::InvalidParameter("no samples".into()))?.point.dim();
    if samples.iter().any(|s| s.point.dim() != n) {
        return Err(Error::Dimension("mixed dimensions in one sample set".into()));
    }
    Ok(n)
}

/// Root comparisons and the weighted decay of `e^{∓Ax_n}`, ℳ±, `e^{∓B±x_n}` (orders 0..3).
pub fn check_root_bounds(samples: &[Sample], fp: &FluidParams, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    let n = dim_of(samples)?;
    let mut ids = vec![
        ("lemma52.re_a_over_a_tilde".to_string(), tol.floor()),
        ("lemma52.re_b_plus_lower".to_string(), tol.floor()),
        ("lemma52.re_b_minus_lower".to_string(), tol.floor()),
        ("lemma52.abs_b_plus_upper".to_string(), tol.ceiling()),
        ("lemma52.abs_b_minus_upper".to_string(), tol.ceiling()),
        ("lemma52.viscous_sum_lower".to_string(), tol.floor()),
    ];
    for name in ["exp_a", "m_kernel", "exp_b"] {
        for m in 0..=3 {
            ids.push((format!("lemma52.{name}.m{m}"), tol.ceiling()));
        }
    }
    let width = ids.len();
    Ok(sweep(samples, n, &ids, |s| {
        let Some(t) = table(s, fp) else { return nan_row(width, s.x_n) };
        let lam = t.scale();
        let x = s.x_n;
        let mut row: Vec<Cell> = vec![
            Some((t.a.re / t.a_tilde, x)),
            Some((t.b_plus.re / lam, x)),
            Some((t.b_minus.re / lam, x)),
            Some((t.b_plus.norm() / lam, x)),
            Some((t.b_minus.norm() / lam, x)),
            Some((t.viscous_sum().norm() / lam, x)),
        ];
        for kernel in 0..3 {
            for m in 0..=3u32 {
                let mut e = Extreme::max();
                for side in Side::BOTH {
                    let xs = side.sign() * x;
                    let b = t.b(side);
                    let (v, w) = match kernel {
                        0 => (exp_kernel(t.a, xs, side, m), t.a_tilde.powi(1 - m as i32)),
                        1 => (m_kernel(t.a, b, xs, side, m), lam.powi(2 - m as i32)),
                        _ => (exp_kernel(b, xs, side, m), lam.powi(1 - m as i32)),
                    };
                    e.push(v.map(|v| v.norm() * x * w).unwrap_or(f64::NAN), xs);
                }
                row.push(e.cell());
            }
        }
        row
    }))
}

/// Cofactor growth exponent `p(i, s)` (1-based) of the adjugate entry multiplying row `s` of R.
pub fn cofactor_exponent(i: usize, s: usize) -> i32 {
    match (i, s) {
        (2, 1) | (2, 2) | (4, 1) | (4, 2) => 1,
        (1, 1) | (1, 2) | (2, 3) | (3, 1) | (3, 2) | (4, 3) => 2,
        (1, 3) | (2, 4) | (3, 3) | (4, 4) => 3,
        (1, 4) | (3, 4) => 4,
        _ => unreachable!("cofactor index out of range"),
    }
}

/// Powers `(p_Ã, p_Λ)` bounding `|Σ_s adj_{is} r_{sj}|` by `Ã^{p_Ã} Λ^{p_Λ}` (1-based i, j).
pub fn adj_r_weight(i: usize, j: usize, n: usize) -> (i32, i32) {
    let odd = i == 1 || i == 3;
    if j <= n {
        (1, if odd { 2 } else { 1 })
    } else if j < 2 * n {
        (1, if odd { 3 } else { 2 })
    } else {
        (0, if odd { 4 } else { 3 })
    }
}

pub fn check_cofactor_growth(samples: &[Sample], fp: &FluidParams, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    let n = dim_of(samples)?;
    let mut ids = Vec::new();
    for i in 1..=4 {
        for s in 1..=4 {
            ids.push((format!("cofactor.adj{i}{s}"), tol.ceiling()));
        }
    }
    for i in 1..=4 {
        for j in 1..=2 * n {
            ids.push((format!("cofactor.adj_r.{i}.{j}"), tol.ceiling()));
        }
    }
    let width = ids.len();
    Ok(sweep(samples, n, &ids, |smp| {
        let Some(t) = table(smp, fp) else { return nan_row(width, smp.x_n) };
        let lam = t.scale();
        let adj = t.adjugate();
        let mut row = Vec::with_capacity(width);
        for i in 1..=4 {
            for s in 1..=4 {
                row.push(Some((adj[i - 1][s - 1].norm() / lam.powi(cofactor_exponent(i, s)), smp.x_n)));
            }
        }
        for i in 1..=4 {
            for j in 1..=2 * n {
                let (pa, pl) = adj_r_weight(i, j, n);
                let w = t.a_tilde.powi(pa) * lam.powi(pl);
                row.push(Some((t.adj_r(i, j).norm() / w, smp.x_n)));
            }
        }
        row
    }))
}

pub fn check_det_lower(samples: &[Sample], fp: &FluidParams, tol: &Tolerances) -> Result<BoundReport> {
    let n = dim_of(samples)?;
    let ids = [("lemma53.det_lower".to_string(), tol.floor())];
    Ok(sweep(samples, n, &ids, |s| match table(s, fp) {
        Some(t) => vec![Some((t.det_closed.norm() / t.scale().powi(3), s.x_n))],
        None => nan_row(1, s.x_n),
    })
    .remove(0))
}

fn max_xi(t: &SymbolTable) -> f64 {
    t.xi.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn s_value(f: Family, v: u8, side: Side, j: usize, k: usize, m: usize, x: f64, order: u32, t: &SymbolTable) -> Result<f64> {
    let kind = match f {
        Family::U => SymbolKind::PhiVel,
        Family::Theta => SymbolKind::ChiPress,
    };
    let req = SymbolRequest { kind, side, j, k, m, order, x_n: x };
    Ok(s_family_symbol(f, v, &req, t)?.norm())
}

/// The weighted composite estimate, per family and variant, plus the replacement for the excluded term.
pub fn check_symbol_estimate(samples: &[Sample], fp: &FluidParams, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    let n = dim_of(samples)?;
    let mut ids = Vec::new();
    for v in 1..=6 {
        ids.push((format!("symbol.su.v{v}"), tol.ceiling()));
    }
    for v in 1..=6 {
        ids.push((format!("symbol.stheta.v{v}"), tol.ceiling()));
    }
    ids.push(("symbol.omega_n_weighted".to_string(), tol.ceiling()));
    let width = ids.len();
    Ok(sweep(samples, n, &ids, |smp| {
        let Some(t) = table(smp, fp) else { return nan_row(width, smp.x_n) };
        let lam_abs = t.lambda.norm();
        let xi = max_xi(&t);
        let w0 = lam_abs + lam_abs.sqrt() * xi + xi * xi;
        let w1 = lam_abs.sqrt() + xi;
        let mut row = Vec::with_capacity(width);
        for family in [Family::U, Family::Theta] {
            for v in 1..=6u8 {
                let mut e = Extreme::max();
                let m_range = if v == 2 || v == 6 { 1..n } else { 1..2 };
                for side in Side::BOTH {
                    let x = side.sign() * smp.x_n;
                    let js = if family == Family::U { 1..n + 1 } else { 1..2 };
                    for j in js {
                        for k in 1..=n {
                            if family == Family::Theta && v == 5 && k == n {
                                continue;
                            }
                            for m in m_range.clone() {
                                let val = (|| -> Result<f64> {
                                    let s0 = s_value(family, v, side, j, k, m, x, 0, &t)?;
                                    let s1 = s_value(family, v, side, j, k, m, x, 1, &t)?;
                                    Ok(match family {
                                        Family::U => {
                                            let s2 = s_value(family, v, side, j, k, m, x, 2, &t)?;
                                            (w0 * s0 + w1 * s1 + s2) * smp.x_n
                                        }
                                        Family::Theta => (xi * s0 + s1) * smp.x_n,
                                    })
                                })();
                                e.push(val.unwrap_or(f64::NAN), x);
                            }
                        }
                    }
                }
                row.push(e.cell());
            }
        }
        let mut e = Extreme::max();
        for side in Side::BOTH {
            let x = side.sign() * smp.x_n;
            let val = (|| -> Result<f64> {
                Ok((xi * omega_n_weighted(side, x, 0, &t)?.norm() + omega_n_weighted(side, x, 1, &t)?.norm()) * smp.x_n)
            })();
            e.push(val.unwrap_or(f64::NAN), x);
        }
        row.push(e.cell());
        row
    }))
}

/// `min |ℒ| / ((|λ|+Ã)(|λ|^{1/2}+Ã)³)` over samples with `|λ| ≥ gamma0`, and the height-gain sup.
pub fn check_lopatinskii_lower(samples: &[Sample], fp: &FluidParams, gamma0: f64, tol: &Tolerances) -> Result<Vec<BoundReport>> {
    if !(fp.c_sigma > 0.0 && fp.c_g > 0.0) {
        return Err(Error::InvalidParameter("surface checks need c_sigma > 0 and c_g > 0".into()));
    }
    if gamma0 < 1.0 {
        return Err(Error::InvalidParameter(format!("surface checks need gamma0 >= 1, got {gamma0}")));
    }
    let n = dim_of(samples)?;
    let ids = [
        ("surface.lopatinskii_lower".to_string(), tol.floor()),
        ("surface.height_gain".to_string(), tol.ceiling()),
    ];
    Ok(sweep(samples, n, &ids, |s| {
        if s.point.lambda.norm() < gamma0 {
            return vec![None, None];
        }
        let Some(t) = table(s, fp) else { return nan_row(2, s.x_n) };
        let lam = t.scale();
        let floor = t.lopatinskii.norm() / ((t.lambda.norm() + t.a_tilde) * lam.powi(3));
        let gain = t.height_gain().map(|g| (t.lambda.norm() + max_xi(&t)) * g.norm()).unwrap_or(f64::NAN);
        vec![Some((floor, s.x_n)), Some((gain, s.x_n))]
    }))
}

pub fn check_appendix_a(samples: &[Sample], fp: &FluidParams, tol: &Tolerances) -> Result<BoundReport> {
    let n = dim_of(samples)?;
    let ids = [("appendix_a.sup".to_string(), tol.ceiling())];
    Ok(sweep(samples, n, &ids, |s| {
        let xi = s.full_xi();
        let mut e = Extreme::max();
        for side in Side::BOTH {
            for k in 1..=n {
                let v = appendix_a_symbol(&xi, s.point.lambda, fp, k, side).map(|z| z.norm()).unwrap_or(f64::NAN);
                e.push(v, s.x_n);
            }
        }
        vec![e.cell()]
    })
    .remove(0))
}

/// Sup over x_n of the excluded pressure composite versus its replacement, along Ã → 0.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeControl {
    pub lambda: C64,
    pub a_tilde: Vec<f64>,
    pub unweighted: Vec<f64>,
    pub weighted: Vec<f64>,
    /// `unweighted.last / unweighted.first`.
    pub growth: f64,
    pub weighted_growth: f64,
    pub diverges: bool,
}

pub fn omega_negative_control(fp: &FluidParams, lambda: C64, n: usize, levels: usize) -> Result<NegativeControl> {
    if levels < 2 {
        return Err(Error::InvalidParameter("negative control needs at least two levels".into()));
    }
    let mut a_tilde = Vec::new();
    let mut unweighted = Vec::new();
    let mut weighted = Vec::new();
    for level in 0..levels {
        let at = 10f64.powi(-(level as i32));
        let comp = at / ((n - 1) as f64).sqrt();
        let p = SpectralPoint::new(lambda, vec![C64::new(comp, 0.0); n - 1])?;
        let t = build_symbol_table(&p, fp)?;
        let xi = max_xi(&t);
        let (mut su, mut sw) = (0.0f64, 0.0f64);
        for i in 0..=60 {
            let y = 10f64.powf(-3.0 + 5.0 * i as f64 / 60.0) / at;
            for side in Side::BOTH {
                let x = side.sign() * y;
                let req = SymbolRequest::new(SymbolKind::OmegaPress, side, x);
                let u = (xi * omega_n_unweighted(&req, &t)?.norm() + omega_n_unweighted(&req.order(1), &t)?.norm()) * y;
                let w = (xi * omega_n_weighted(side, x, 0, &t)?.norm() + omega_n_weighted(side, x, 1, &t)?.norm()) * y;
                su = su.max(u);
                sw = sw.max(w);
            }
        }
        a_tilde.push(at);
        unweighted.push(su);
        weighted.push(sw);
    }
    let growth = unweighted[levels - 1] / unweighted[0];
    let weighted_growth = weighted[levels - 1] / weighted[0];
    let monotone = unweighted.windows(2).all(|w| w[1] > w[0]);
    let diverges = monotone && growth >= 10f64.powi(levels as i32 - 2) && weighted_growth < 10.0;
    Ok(NegativeControl { lambda, a_tilde, unweighted, weighted, growth, weighted_growth, diverges })
}

impl NegativeControl {
    /// Two report rows: the growth factor of the excluded term (pass = diverged as expected)
    /// and of the replacement (pass = stayed bounded).
    pub fn reports(&self, n: usize) -> Vec<BoundReport> {
        let smp = |at: f64| Sample {
            point: SpectralPoint { lambda: self.lambda, xi: vec![C64::new(at / ((n - 1) as f64).sqrt(), 0.0); n - 1] },
            x_n: f64::NAN,
            xi_normal: C64::new(0.0, 0.0),
        };
        let last = smp(*self.a_tilde.last().unwrap());
        let mut a = finish("control.omega_n_unweighted.growth".into(), n, self.a_tilde.len(), BoundKind::Floor(1.0), Some((self.growth, &last, f64::NAN)));
        a.pass = self.diverges;
        let b = finish(
            "control.omega_n_weighted.growth".into(),
            n,
            self.a_tilde.len(),
            BoundKind::Ceiling(10.0),
            Some((self.weighted_growth, &last, f64::NAN)),
        );
        vec![a, b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::sampling::{sample_sectors, SectorSampling};

    fn small(dim: usize) -> Vec<Sample> {
        let cfg = SectorSampling { dim, n_radii: 5, n_angles: 5, n_xn: 4, ..Default::default() };
        sample_sectors(&cfg, 3).unwrap()
    }

    #[test]
    fn real_slice_exponential_bound_is_one_over_e() {
        // real ξ′, m = 0: |e^{−Ax}|·x·Ã = s e^{−s} ≤ 1/e
        let fp = FluidParams::default();
        let mut best = 0.0f64;
        for i in 0..200 {
            let s = Sample {
                point: SpectralPoint::real(1.0, &[0.01 * (i + 1) as f64, 0.5]).unwrap(),
                x_n: 1.3,
                xi_normal: C64::new(1.0, 0.0),
            };
            let r = check_root_bounds(&[s], &fp, &Tolerances::default()).unwrap();
            let v = r.iter().find(|b| b.bound_id == "lemma52.exp_a.m0").unwrap().worst_ratio;
            assert!(v <= (-1f64).exp() + 1e-15);
            best = best.max(v);
        }
        assert!(best > 0.36);
    }

    #[test]
    fn real_lobe_re_a_floor() {
        let fp = FluidParams::default();
        let r = check_root_bounds(&small(3), &fp, &Tolerances::default()).unwrap();
        let v = r.iter().find(|b| b.bound_id == "lemma52.re_a_over_a_tilde").unwrap();
        let eta = std::f64::consts::PI / 16.0;
        // arg A² ≤ 2η and |A²| ≥ cos(2η)Ã²
        assert!(v.worst_ratio >= eta.cos() * (2.0 * eta).cos().sqrt() * (1.0 - 1e-12));
        assert!(r.iter().all(|b| b.pass), "{r:#?}");
    }

    #[test]
    fn symmetric_point_cofactor() {
        let fp = FluidParams::symmetric(1.0, 1.0).unwrap();
        let s = Sample { point: SpectralPoint::real(3.0, &[1.0]).unwrap(), x_n: 1.0, xi_normal: C64::new(1.0, 0.0) };
        let r = check_cofactor_growth(&[s.clone()], &fp, &Tolerances::default()).unwrap();
        let l22 = r.iter().find(|b| b.bound_id == "cofactor.adj22").unwrap();
        let lam = 3f64.sqrt() + 1.0;
        assert!((l22.worst_ratio - 6.0 / lam).abs() < 1e-12);
        assert_eq!(r.len(), 16 + 4 * 4);
        let d = check_det_lower(&[s], &fp, &Tolerances::default()).unwrap();
        assert!((d.worst_ratio - 72.0 / lam.powi(3)).abs() < 1e-12);
        assert!((d.worst_ratio - 3.53).abs() < 0.01);
    }

    #[test]
    fn lopatinskii_requires_surface_and_gamma() {
        let fp = FluidParams::default();
        let s = small(2);
        assert!(check_lopatinskii_lower(&s, &fp, 0.5, &Tolerances::default()).is_err());
        let bare = FluidParams::new(1.0, 2.0, 1.0, 3.0).unwrap();
        assert!(check_lopatinskii_lower(&s, &bare, 1.0, &Tolerances::default()).is_err());
        let r = check_lopatinskii_lower(&s, &fp, 1.0, &Tolerances::default()).unwrap();
        assert!(r.iter().all(|b| b.pass));
    }

    #[test]
    fn symbol_estimates_finite_on_small_grid() {
        let fp = FluidParams::default();
        for dim in [2, 3] {
            let r = check_symbol_estimate(&small(dim), &fp, &Tolerances::default()).unwrap();
            assert_eq!(r.len(), 13);
            assert!(r.iter().all(|b| b.pass && b.worst_ratio.is_finite()), "{r:#?}");
        }
    }

    #[test]
    fn negative_control_diverges() {
        let c = omega_negative_control(&FluidParams::default(), C64::new(1.0, 0.0), 3, 5).unwrap();
        assert!(c.diverges, "{c:?}");
        assert!(c.growth > 1e3);
    }

    #[test]
    fn appendix_zero_normal_slice() {
        let fp = FluidParams::default();
        let s = Sample { point: SpectralPoint::real(2.0, &[1.0, 0.5]).unwrap(), x_n: 1.0, xi_normal: C64::new(0.0, 0.0) };
        assert_eq!(check_appendix_a(&[s], &fp, &Tolerances::default()).unwrap().worst_ratio, 0.0);
    }
}
