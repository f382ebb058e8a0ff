use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::params::FluidParams;
use crate::resolvent::{Decay, GridSpec, ResolventData};

fn grid(n_v: usize) -> GridSpec {
    GridSpec::cube(2, 8, n_v, 30.0).unwrap()
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn cells_cover_the_interval() {
    let g = grid(32);
    let (y, w) = cell_nodes(&g);
    assert!(y[0] > 0.0 && y.windows(2).all(|p| p[1] > p[0]));
    assert!((w.iter().sum::<f64>() - g.x_max).abs() < 1e-12);
}

#[test]
fn jjump_of_even_and_sign() {
    let g = grid(32);
    let modes = vec![vec![1]];
    let even = TwoPhaseFunction::from_fn(&g, modes.clone(), |_, x| c((-x * x).exp(), 0.0)).unwrap();
    assert!(jjump_extend(&even).unwrap().norm(2.0).unwrap() < 1e-15);
    let sign = TwoPhaseFunction::from_fn(&g, modes, |_, x| c(x.signum(), 0.0)).unwrap();
    let j = jjump_extend(&sign).unwrap();
    assert!(j.values[0].iter().all(|v| (v - c(2.0, 0.0)).norm() < 1e-15));
}

#[test]
fn jjump_norm_constant() {
    // ‖⟦f⟧‖_q ≤ 2^{1−1/q}‖f‖_q, attained by sign(x_n); the constant-1 version fails there
    let g = grid(32);
    let members = ensemble(&EnsembleSpec::new(4, 9), 2).unwrap();
    for q in [1.5, 2.0, 3.0] {
        let k = 2f64.powf(1.0 - 1.0 / q);
        let sign = TwoPhaseFunction::from_fn(&g, vec![vec![1]], |_, x| c(x.signum(), 0.0)).unwrap();
        let r = jjump_extend(&sign).unwrap().norm(q).unwrap() / sign.norm(q).unwrap();
        assert!((r - k).abs() < 1e-12, "q={q}: {r}");
        assert!(r > 1.0);
        for m in &members {
            let up = m.sample(&g).unwrap();
            let mut lo = up.clone();
            lo.values.iter_mut().flatten().for_each(|z| *z = z.conj() * c(0.0, 1.0));
            let f = TwoPhaseFunction { upper: up, lower: lo };
            assert!(jjump_extend(&f).unwrap().norm(q).unwrap() <= k * f.norm(q).unwrap() * (1.0 + 1e-12));
        }
    }
}

#[test]
fn exp_a_closed_forms() {
    let g = grid(256);
    let (x, w) = cell_nodes(&g);
    // smooth input: ∫ e^{−|k|(x+y)} e^{−y} dy = e^{−|k|x}/(|k|+1)
    let f = HalfSpaceFunction::from_fn(&g, vec![vec![2]], |_, y| c((-y).exp(), 0.0)).unwrap();
    let tf = apply_t(&ExpA, &f).unwrap();
    for (i, &xi) in x.iter().enumerate() {
        let exact = (-2.0 * xi).exp() / 3.0;
        assert!((tf.values[0][i].re - exact).abs() < 2e-4, "{i}: {} vs {exact}", tf.values[0][i].re);
    }
    // indicator of [0, 1]: e^{−|k|x}(1 − e^{−|k|})/|k|, up to the cell straddling y = 1
    let f = HalfSpaceFunction::from_fn(&g, vec![vec![1]], |_, y| c(if y <= 1.0 { 1.0 } else { 0.0 }, 0.0)).unwrap();
    let tf = apply_t(&ExpA, &f).unwrap();
    let straddle = x.iter().zip(&w).find(|(y, w)| (**y - 1.0).abs() <= **w).map(|p| *p.1).unwrap();
    for (i, &xi) in x.iter().enumerate() {
        let exact = (-xi).exp() * (1.0 - (-1.0f64).exp());
        assert!((tf.values[0][i].re - exact).abs() < straddle, "{i}");
    }
}

#[test]
fn zero_maps_to_zero_and_linearity() {
    let g = grid(48);
    let members = ensemble(&EnsembleSpec::new(2, 5), 2).unwrap();
    let f = members[0].sample(&g).unwrap();
    let h = members[1].sample(&g).unwrap();
    assert!(apply_t(&ZeroSymbol, &f).unwrap().norm(2.0).unwrap() == 0.0);
    let zero = HalfSpaceFunction::zero(&g, f.modes.clone());
    let fp = FluidParams::default();
    let sym = &certified_symbols(2, c(1.0, 0.0), &fp).unwrap()[0];
    assert_eq!(apply_t(sym, &zero).unwrap().norm(2.0).unwrap(), 0.0);
    let (a, b) = (c(0.3, -1.2), c(-2.0, 0.5));
    let mut comb = f.clone();
    comb.values.iter_mut().flatten().for_each(|z| *z *= a);
    comb.axpy(b, &h).unwrap();
    let lhs = apply_t(sym, &comb).unwrap();
    let mut rhs = apply_t(sym, &f).unwrap();
    rhs.values.iter_mut().flatten().for_each(|z| *z *= a);
    rhs.axpy(b, &apply_t(sym, &h).unwrap()).unwrap();
    let scale = lhs.norm(2.0).unwrap();
    rhs.axpy(c(-1.0, 0.0), &lhs).unwrap();
    assert!(rhs.norm(2.0).unwrap() <= 1e-12 * scale);
}

#[test]
fn parseval_matches_sampling() {
    let g = GridSpec::cube(3, 8, 32, 20.0).unwrap();
    let members = ensemble(&EnsembleSpec::new(1, 1), 3).unwrap();
    let f = members[0].sample(&g).unwrap();
    let a = f.norm(2.0).unwrap();
    let b = f.norm(2.0 + 1e-9).unwrap();
    assert!(((a - b) / a).abs() < 1e-7, "{a} vs {b}");
}

#[test]
fn ensemble_is_deterministic() {
    let a = ensemble(&EnsembleSpec::new(3, 17), 3).unwrap();
    let b = ensemble(&EnsembleSpec::new(3, 17), 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a[0].modes.len(), 24);
    assert_ne!(a, ensemble(&EnsembleSpec::new(3, 18), 3).unwrap());
}

#[test]
fn refinement_stable_for_smooth_symbols() {
    let members = ensemble(&EnsembleSpec::new(4, 11), 2).unwrap();
    let fp = FluidParams::default();
    let syms = certified_symbols(2, c(1.0, 0.0), &fp).unwrap();
    let r = refinement_study(&ExpA, &grid(64), 2.0, &members, 3).unwrap();
    assert!(r.drift() < 0.1, "{r:?}");
    for s in syms.iter().step_by(9) {
        let r = refinement_study(s, &grid(64), 2.0, &members, 3).unwrap();
        assert!(r.drift() < 0.1 && r.norms.iter().all(|v| v.is_finite() && *v > 0.0), "{r:?}");
    }
}

#[test]
fn controls() {
    let members = ensemble(&EnsembleSpec::new(4, 11), 2).unwrap();
    // (x+y)^{-2}: the interface trace of smooth data is not integrable against it
    let r = refinement_study(&InversePower(2.0), &grid(64), 2.0, &members, 3).unwrap();
    assert!(r.norms.windows(2).all(|w| w[1] > 1.3 * w[0]), "{r:?}");
    assert!(r.singular_indicator >= SINGULAR_WARN);
    // (x+y)^{-1} is bounded on L_2 (Hilbert's inequality): it converges, slowly
    let r = refinement_study(&InversePower(1.0), &grid(64), 2.0, &members, 3).unwrap();
    assert!(r.norms.iter().all(|v| *v < std::f64::consts::PI), "{r:?}");
}

fn single_mode_data(seed: u64) -> ResolventData {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = ResolventData::random_single_mode(2, vec![1], &mut rng, false, false);
    d.decay = Decay::Fixed(1.5);
    d
}

#[test]
fn sol1_route_matches_trace_form() {
    let fp = FluidParams::default();
    let g = grid(64);
    let heights = [0.0, 0.05, 0.3, 1.0, 2.5];
    for (seed, lambda) in [(1, c(1.0, 0.0)), (2, c(0.5, 3.0)), (3, c(10.0, -4.0))] {
        let d = single_mode_data(seed);
        let r = sol1_check(&d, lambda, &fp, &g, &heights, 512, Sol1Route::Consistent).unwrap();
        assert!(r.max() < 1e-4, "{lambda}: {r:?}");
        let lit = sol1_check(&d, lambda, &fp, &g, &heights, 512, Sol1Route::Literal).unwrap();
        assert!(lit.max() > 1e-2, "{lambda}: {lit:?}");
    }
}

#[test]
fn t_tilde_of_lambda_free_symbol_acts_slicewise() {
    let g = grid(32);
    let members = ensemble(&EnsembleSpec::new(1, 2), 2).unwrap();
    let f = members[0].sample(&g).unwrap();
    let dt = 0.25;
    let slices: Vec<HalfSpaceFunction> = (0..8)
        .map(|k| {
            let mut s = f.clone();
            let b = (k as f64 * 0.7).sin();
            s.values.iter_mut().flatten().for_each(|z| *z *= b);
            s
        })
        .collect();
    let ts = TimeSlices { dt, slices };
    let out = apply_t_tilde(|_| Ok(Box::new(ExpA) as Box<dyn Multiplier>), 1.5, &ts).unwrap();
    let scale = apply_t(&ExpA, &f).unwrap().norm(2.0).unwrap();
    for (a, b) in out.slices.iter().zip(&ts.slices) {
        let mut d = apply_t(&ExpA, b).unwrap();
        d.axpy(c(-1.0, 0.0), a).unwrap();
        assert!(d.norm(2.0).unwrap() <= 1e-12 * scale);
    }
}

#[test]
fn t_tilde_bound_is_finite_for_certified_symbol() {
    let g = grid(32);
    let members = ensemble(&EnsembleSpec::new(2, 4), 2).unwrap();
    let fp = FluidParams::default();
    let base = certified_symbols(2, c(1.0, 0.0), &fp).unwrap().remove(0);
    let r = empirical_bound_tilde(|l| Ok(Box::new(base.with_lambda(l)) as Box<dyn Multiplier>), 1.0, &g, 2.0, 2.0, &members, 4.0, 16).unwrap();
    assert!(r.is_finite() && r > 0.0);
}
