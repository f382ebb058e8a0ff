//! Time profiles of the data and their Laplace transforms.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resolvent::{Decay, ResolventData};

/// Scalar time factor multiplying a fixed spatial data set; all profiles vanish for `t < 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TimeProfile {
    Step {},
    /// `e^{rate·t}`.
    StepExp { rate: f64 },
    /// `1 − e^{−rate·t}`.
    Ramp { rate: f64 },
    /// Smooth compactly supported bump on `[start, start + width]`, peak 1.
    Bump { start: f64, width: f64 },
    /// Samples at `t = i·dt`, zero after the last one.
    Sampled { dt: f64, values: Vec<f64> },
}

const BUMP_PANELS: usize = 4096;

impl TimeProfile {
    pub fn validated(self) -> Result<Self> {
        let ok = match &self {
            TimeProfile::Step {} => true,
            TimeProfile::StepExp { rate } => rate.is_finite(),
            TimeProfile::Ramp { rate } => *rate > 0.0 && rate.is_finite(),
            TimeProfile::Bump { start, width } => *start >= 0.0 && *width > 0.0 && (start + width).is_finite(),
            TimeProfile::Sampled { dt, values } => *dt > 0.0 && values.len() >= 2 && values.iter().all(|v| v.is_finite()),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::InvalidParameter(format!("bad time profile {self:?}")))
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        match self {
            TimeProfile::Step {} => 1.0,
            TimeProfile::StepExp { rate } => (rate * t).exp(),
            TimeProfile::Ramp { rate } => -(-rate * t).exp_m1(),
            TimeProfile::Bump { start, width } => {
                let s = 2.0 * (t - start) / width - 1.0;
                if s.abs() < 1.0 {
                    (1.0 - 1.0 / (1.0 - s * s)).exp()
                } else {
                    0.0
                }
            }
            TimeProfile::Sampled { dt, values } => {
                let x = t / dt;
                let i = x.floor() as usize;
                if i + 1 >= values.len() {
                    if i + 1 == values.len() && x == i as f64 {
                        values[i]
                    } else {
                        0.0
                    }
                } else {
                    let f = x - i as f64;
                    values[i] * (1.0 - f) + values[i + 1] * f
                }
            }
        }
    }

    /// Exponential growth rate; the transform needs `Re λ` above it.
    pub fn growth_rate(&self) -> f64 {
        match self {
            TimeProfile::StepExp { rate } => *rate,
            TimeProfile::Bump { .. } | TimeProfile::Sampled { .. } => f64::NEG_INFINITY,
            _ => 0.0,
        }
    }

    fn support_end(&self) -> Option<f64> {
        match self {
            TimeProfile::Bump { start, width } => Some(start + width),
            TimeProfile::Sampled { dt, values } => Some(dt * (values.len() - 1) as f64),
            _ => None,
        }
    }

    /// Closed form where one exists, Simpson quadrature over the support otherwise.
    pub fn laplace(&self, lambda: C64) -> Result<C64> {
        let rate = self.growth_rate();
        if lambda.re <= rate {
            return Err(Error::Growth { rate, gamma: lambda.re });
        }
        Ok(match self {
            TimeProfile::Step {} => 1.0 / lambda,
            TimeProfile::StepExp { rate } => 1.0 / (lambda - rate),
            TimeProfile::Ramp { rate } => *rate / (lambda * (lambda + rate)),
            TimeProfile::Bump { start, width } => simpson(|t| self.value(t) * (-lambda * t).exp(), *start, start + width, BUMP_PANELS),
            TimeProfile::Sampled { dt, values } => {
                // exact for the piecewise-linear interpolant
                let mut acc = C64::new(0.0, 0.0);
                for (i, w) in values.windows(2).enumerate() {
                    acc += linear_piece(w[0], w[1], i as f64 * dt, *dt, lambda);
                }
                acc
            }
        })
    }

    /// `∫_0^{t_max} e^{−λt} p(t) dt` by composite Simpson with `panels` (even) intervals.
    pub fn laplace_quadrature(&self, lambda: C64, t_max: f64, panels: usize) -> Result<C64> {
        let rate = self.growth_rate();
        if lambda.re <= rate {
            return Err(Error::Growth { rate, gamma: lambda.re });
        }
        let end = self.support_end().map_or(t_max, |e| e.min(t_max));
        Ok(simpson(|t| self.value(t) * (-lambda * t).exp(), 0.0, end, panels))
    }
}

/// `∫_{t0}^{t0+dt} e^{−λt}(a + (b − a)(t − t0)/dt) dt`.
fn linear_piece(a: f64, b: f64, t0: f64, dt: f64, lambda: C64) -> C64 {
    let z = lambda * dt;
    let e0 = (-lambda * t0).exp();
    if z.norm() < 1e-4 {
        // series to O(z²)
        return e0 * dt * (a * (0.5 - z / 6.0 + z * z / 24.0) + b * (0.5 - z / 3.0 + z * z / 8.0));
    }
    let e1 = (-z).exp();
    let one_minus = 1.0 - e1;
    // ∫_0^1 e^{−zs} ds and ∫_0^1 s e^{−zs} ds
    let i0 = one_minus / z;
    let i1 = (one_minus - z * e1) / (z * z);
    e0 * dt * (a * (i0 - i1) + b * i1)
}

pub fn simpson<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, panels: usize) -> C64 {
    let n = panels.max(2) + panels % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Fixed spatial data times a time profile.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeData {
    pub spatial: ResolventData,
    pub profile: TimeProfile,
}

impl TimeData {
    pub fn validated(self) -> Result<Self> {
        if let Decay::Adapted(_) = self.spatial.decay {
            return Err(Error::InvalidParameter("time-dependent data needs a λ-independent (fixed) decay".into()));
        }
        Ok(TimeData { profile: self.profile.validated()?, ..self })
    }
}

/// Laplace transform of the data at `λ`.
pub fn laplace_of_data(data: &TimeData, lambda: C64) -> Result<ResolventData> {
    Ok(data.spatial.scaled(data.profile.laplace(lambda)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let l = c(2.0, 0.7);
        for p in [TimeProfile::StepExp { rate: 0.5 }, TimeProfile::Step {}, TimeProfile::Ramp { rate: 1.0 }] {
            let exact = p.laplace(l).unwrap();
            let quad = p.laplace_quadrature(l, 40.0, 20000).unwrap();
            assert!((exact - quad).norm() < 1e-6 * exact.norm(), "{p:?}");
        }
    }

    #[test]
    fn growth_rate_is_enforced() {
        let p = TimeProfile::StepExp { rate: 0.5 };
        assert!(matches!(p.laplace(c(0.4, 0.0)), Err(Error::Growth { .. })));
        assert!(TimeProfile::Step {}.laplace(c(0.0, 1.0)).is_err());
    }

    #[test]
    fn sampled_transform_is_exact_for_linear_data() {
        // ramp up then hold: piecewise linear, so the transform is exact
        let p = TimeProfile::Sampled { dt: 0.5, values: vec![0.0, 0.5, 1.0, 1.0] };
        let l = c(1.3, -2.0);
        let q = simpson(|t| p.value(t) * (-l * t).exp(), 0.0, 1.5, 60000);
        assert!((p.laplace(l).unwrap() - q).norm() < 1e-12);
        assert_eq!(p.value(0.25), 0.25);
        assert_eq!(p.value(2.0), 0.0);
    }

    #[test]
    fn bump_is_smooth_and_supported() {
        let p = TimeProfile::Bump { start: 1.0, width: 2.0 };
        assert_eq!(p.value(0.5), 0.0);
        assert!((p.value(2.0) - 1.0).abs() < 1e-15);
        let l = c(1.0, 3.0);
        let a = p.laplace(l).unwrap();
        let b = p.laplace_quadrature(l, 10.0, 16384).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn adapted_decay_rejected() {
        let mut spatial = ResolventData::zero(2);
        spatial.decay = Decay::Adapted(1.0);
        assert!(TimeData { spatial, profile: TimeProfile::Step {} }.validated().is_err());
    }
}
