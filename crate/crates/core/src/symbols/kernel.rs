//! The decaying profiles `e^{∓A x_n}`, `e^{∓B x_n}` and the difference quotient ℳ±,
//! with exact x_n-derivatives.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::params::Side;

pub const MAX_ORDER: u32 = 3;

/// `e^z − 1` without cancellation for small |z|.
pub fn expm1c(z: C64) -> C64 {
    if z.norm() < 1e-5 {
        // z + z²/2 + z³/6 is exact to ~1e-20 relative here
        return z * (1.0 + z * (0.5 + z / 6.0));
    }
    let s = (0.5 * z.im).sin();
    C64::new(z.re.exp_m1() * z.im.cos() - 2.0 * s * s, z.re.exp() * z.im.sin())
}

/// `φ₁(z) = (e^z − 1)/z`, continuous through z = 0.
pub fn phi1(z: C64) -> C64 {
    if z.norm() < 1e-3 {
        // Taylor to z⁵: truncation < 1e-21
        let mut acc = C64::new(0.0, 0.0);
        let mut fact = 1.0;
        let mut terms = [C64::new(0.0, 0.0); 7];
        for (k, t) in terms.iter_mut().enumerate() {
            fact *= (k + 1) as f64;
            *t = z.powu(k as u32) / fact;
        }
        for t in terms.iter().rev() {
            acc += t;
        }
        return acc;
    }
    expm1c(z) / z
}

fn vertical(x_n: f64, side: Side) -> Result<f64> {
    if !x_n.is_finite() || !side.admits(x_n) {
        return Err(Error::WrongSide { x_n });
    }
    Ok(side.sign() * x_n)
}

fn check_order(order: u32) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::DerivativeOrder(order));
    }
    Ok(())
}

/// `∂_n^m e^{∓root·x_n}` on the given side.
pub fn exp_kernel(root: C64, x_n: f64, side: Side, order: u32) -> Result<C64> {
    check_order(order)?;
    let y = vertical(x_n, side)?;
    Ok((-root * side.sign()).powu(order) * (-root * y).exp())
}

/// `c_m` in `∂_y^m ℳ = (−A)^m ℳ + c_m e^{−By}`, with y = ±x_n ≥ 0.
fn m_tail(a: C64, b: C64, order: u32) -> C64 {
    let mut c = C64::new(0.0, 0.0);
    for i in 0..order {
        c -= (-b).powu(i) * (-a).powu(order - 1 - i);
    }
    c
}

/// ℳ± and its x_n-derivatives up to order 3.
pub fn m_kernel(a: C64, b: C64, x_n: f64, side: Side, order: u32) -> Result<C64> {
    check_order(order)?;
    let y = vertical(x_n, side)?;
    let ea = (-a * y).exp();
    let z = -(b - a) * y;
    // φ₁ form near coincident roots; plain difference quotient otherwise (no e^{z} overflow)
    let m0 = if z.norm() < 1.0 { -y * ea * phi1(z) } else { ((-b * y).exp() - ea) / (b - a) };
    if order == 0 {
        return Ok(m0);
    }
    let s = side.sign().powi(order as i32);
    Ok(s * ((-a).powu(order) * m0 + m_tail(a, b, order) * (-b * y).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn m_kernel_examples() {
        let v = m_kernel(c(1.0, 0.0), c(2.0, 0.0), 2f64.ln(), Side::Plus, 0).unwrap();
        assert!((v - c(-0.25, 0.0)).norm() < 1e-15);
        let a = c(1.3, 0.2);
        let v = m_kernel(a, a, 0.7, Side::Plus, 0).unwrap();
        assert!((v - (-0.7 * (-a * 0.7).exp())).norm() < 1e-15);
        let d = m_kernel(c(1.0, 0.0), c(2.0, 0.0), 0.0, Side::Plus, 1).unwrap();
        assert!((d - c(-1.0, 0.0)).norm() < 1e-15);
        // lower side: ∂_n ℳ₋ = +e^{B x_n} + A ℳ₋
        let d = m_kernel(c(1.0, 0.0), c(2.0, 0.0), 0.0, Side::Minus, 1).unwrap();
        assert!((d - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wrong_side_and_order() {
        assert_eq!(m_kernel(c(1.0, 0.0), c(2.0, 0.0), -1.0, Side::Plus, 0), Err(Error::WrongSide { x_n: -1.0 }));
        assert!(exp_kernel(c(1.0, 0.0), 1.0, Side::Minus, 0).is_err());
        assert_eq!(m_kernel(c(1.0, 0.0), c(2.0, 0.0), 1.0, Side::Plus, 4), Err(Error::DerivativeOrder(4)));
    }

    #[test]
    fn near_coincident_roots_keep_digits() {
        // naive quotient loses everything at B − A = 1e-13
        let a = c(1.0, 0.0);
        let b = c(1.0 + 1e-13, 0.0);
        let x = 1.0;
        let v = m_kernel(a, b, x, Side::Plus, 0).unwrap();
        let exact = -x * (-x).exp() * (1.0 - 0.5e-13);
        assert!((v.re - exact).abs() < 1e-15);
    }

    #[test]
    fn tail_coefficients_match_closed_forms() {
        let (a, b) = (c(0.7, 0.1), c(2.0, -0.4));
        assert!((m_tail(a, b, 1) + 1.0).norm() < 1e-15);
        assert!((m_tail(a, b, 2) - (a + b)).norm() < 1e-15);
        assert!((m_tail(a, b, 3) + (a * a + a * b + b * b)).norm() < 1e-14);
    }

    #[test]
    fn phi1_is_continuous_across_switch() {
        for &r in &[0.999e-3, 1.001e-3] {
            let z = C64::from_polar(r, 0.7);
            let series = {
                let mut s = C64::new(1.0, 0.0);
                let mut t = C64::new(1.0, 0.0);
                for k in 2..12 {
                    t = t * z / k as f64;
                    s += t;
                }
                s
            };
            assert!((phi1(z) - series).norm() < 1e-15);
        }
    }

    fn fd_error(a: C64, b: C64, x: f64, side: Side, order: u32, h: f64) -> f64 {
        let f = |t: f64| m_kernel(a, b, t, side, order - 1).unwrap();
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        (fd - m_kernel(a, b, x, side, order).unwrap()).norm()
    }

    proptest! {
        #[test]
        fn derivatives_converge_at_order_two(
            ar in 0.3f64..3.0, ai in -0.5f64..0.5, br in 0.3f64..3.0, bi in -2.0f64..2.0,
            x in 0.2f64..2.0, order in 1u32..=3, plus in any::<bool>(),
        ) {
            let (a, b) = (c(ar, ai), c(br, bi));
            let side = if plus { Side::Plus } else { Side::Minus };
            let x = side.sign() * x;
            let e1 = fd_error(a, b, x, side, order, 1e-2);
            let e2 = fd_error(a, b, x, side, order, 5e-3);
            prop_assume!(e1 > 1e-9);
            let rate = (e1 / e2).log2();
            prop_assert!((rate - 2.0).abs() < 0.2, "rate {rate}");
            // exponential profile too
            let g = |t: f64| exp_kernel(b, t, side, order - 1).unwrap();
            let h = 1e-2;
            let d1 = ((g(x + h) - g(x - h)) / (2.0 * h) - exp_kernel(b, x, side, order).unwrap()).norm();
            let d2 = ((g(x + h / 2.0) - g(x - h / 2.0)) / h - exp_kernel(b, x, side, order).unwrap()).norm();
            if d1 > 1e-9 {
                prop_assert!(((d1 / d2).log2() - 2.0).abs() < 0.2);
            }
        }
    }
}
