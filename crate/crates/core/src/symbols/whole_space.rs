//! Whole-space multipliers: the Helmholtz projection used for the force reduction, and
//! the multipliers controlling `|λ||∇′|⁻¹∂_n ψ_n`.

use num_complex::Complex64 as C64;

use super::roots::sqrt_positive_real;
use crate::error::{Error, Result};
use crate::params::{FluidParams, Side};

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn norm2(xi: &[C64]) -> Result<C64> {
    let s: C64 = xi.iter().map(|z| z * z).sum();
    if s.norm() == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    Ok(s)
}

/// `(P(ξ)/(ρλ + μ|ξ|²), −iξ/|ξ|²)` with `P = I − ξξᵀ/|ξ|²`; `|ξ|²` is the analytic `Σξ_j²`.
pub fn helmholtz_symbol(xi: &[C64], lambda: C64, fp: &FluidParams, side: Side) -> Result<(Vec<Vec<C64>>, Vec<C64>)> {
    let s = norm2(xi)?;
    let denom = fp.rho(side) * lambda + fp.mu(side) * s;
    if denom.norm() == 0.0 {
        return Err(Error::Degenerate(0.0));
    }
    let n = xi.len();
    let vel = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let delta = if j == k { 1.0 } else { 0.0 };
                    (delta - xi[j] * xi[k] / s) / denom
                })
                .collect()
        })
        .collect();
    let press = xi.iter().map(|z| -I * z / s).collect();
    Ok((vel, press))
}

/// The k-th multiplier (1-based) of `λ(iξ_n/A)(ρλ + μ|ξ|²)⁻¹·m_k`, with
/// `m_k = −ξ_nξ_k/|ξ|²` for k < n and `A²/|ξ|²` for k = n.
pub fn appendix_a_symbol(xi: &[C64], lambda: C64, fp: &FluidParams, k: usize, side: Side) -> Result<C64> {
    let n = xi.len();
    if n < 2 || k == 0 || k > n {
        return Err(Error::Dimension(format!("k = {k} with {n} frequencies")));
    }
    let a2: C64 = xi[..n - 1].iter().map(|z| z * z).sum();
    if a2.norm() == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let a = sqrt_positive_real(a2)?;
    let s = norm2(xi)?;
    let xn = xi[n - 1];
    let m = if k < n { -xn * xi[k - 1] / s } else { a2 / s };
    Ok(lambda * (I * xn / a) / (fp.rho(side) * lambda + fp.mu(side) * s) * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn projector_properties() {
        let fp = FluidParams::default();
        let xi = vec![c(0.3, 0.05), c(-1.2, 0.0), c(0.7, -0.1)];
        let lambda = c(2.0, 1.0);
        let (vel, _) = helmholtz_symbol(&xi, lambda, &fp, Side::Plus).unwrap();
        let denom = fp.rho_plus * lambda + fp.mu_plus * xi.iter().map(|z| z * z).sum::<C64>();
        let p: Vec<Vec<C64>> = vel.iter().map(|r| r.iter().map(|v| v * denom).collect()).collect();
        for j in 0..3 {
            let pxi: C64 = (0..3).map(|k| p[j][k] * xi[k]).sum();
            assert!(pxi.norm() < 1e-14);
            for k in 0..3 {
                let pp: C64 = (0..3).map(|m| p[j][m] * p[m][k]).sum();
                assert!((pp - p[j][k]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn hand_values() {
        let fp = FluidParams::symmetric(1.0, 1.0).unwrap();
        let (vel, press) = helmholtz_symbol(&[c(1.0, 0.0), c(0.0, 0.0)], c(1.0, 0.0), &fp, Side::Plus).unwrap();
        assert!((vel[0][0]).norm() < 1e-16 && (vel[1][1] - c(0.5, 0.0)).norm() < 1e-16);
        assert!((vel[0][1]).norm() < 1e-16);
        assert!((press[0] - c(0.0, -1.0)).norm() < 1e-16);
        let v = appendix_a_symbol(&[c(1.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0), &fp, 2, Side::Plus).unwrap();
        assert!((v - c(0.0, 1.0 / 6.0)).norm() < 1e-16);
        for k in 1..=2 {
            let z = appendix_a_symbol(&[c(1.0, 0.0), c(0.0, 0.0)], c(1.0, 0.0), &fp, k, Side::Minus).unwrap();
            assert_eq!(z, c(0.0, 0.0));
        }
        assert!(helmholtz_symbol(&[c(0.0, 0.0), c(0.0, 0.0)], c(1.0, 0.0), &fp, Side::Plus).is_err());
        assert_eq!(appendix_a_symbol(&[c(0.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0), &fp, 1, Side::Plus), Err(Error::ZeroFrequency));
    }
}
