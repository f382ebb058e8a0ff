//! The ten acceptance criteria, one PASS/FAIL line each; exits non-zero if any fails.
//! Thresholds and fixture values are taken literally, including the ones the closed forms
//! contradict (see the decisions ledger).

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stokes2p::certifier::{certify_all, sample_sectors, SectorSampling, Tolerances};
use stokes2p::cli::{dispatch, with_threads, Command, RunConfig};
use stokes2p::evolution::{solve_evolution, ContourSpec, TimeData, TimeProfile};
use stokes2p::operator::{certified_symbols, ensemble, refinement_study, sol1_check, EnsembleSpec, Sol1Route};
use stokes2p::resolvent::{
    boundary_solve, fd_convergence, ratio_sweep, residual_report, solve_rswith, solve_rswithout, summarize, Decay, GridSpec,
    RaySweep, ResolventData,
};
use stokes2p::symbols::{build_symbol_table, SpectralPoint};
use stokes2p::FluidParams;

type Outcome = Result<(bool, String), Box<dyn std::error::Error>>;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst_identity: f64 = 0.0;
    let mut worst_collapse: f64 = 0.0;
    let sym = FluidParams::symmetric(1.3, 0.7)?;
    for dim in [2, 3] {
        let samples = sample_sectors(&SectorSampling { dim, ..Default::default() }, 1)?;
        for s in &samples {
            let t = build_symbol_table(&s.point, &FluidParams::default())?;
            worst_identity = worst_identity.max(rel(t.det_closed, t.det_direct()));
            let t = build_symbol_table(&s.point, &sym)?;
            let b = t.b_plus;
            let collapse = -4.0 * sym.mu_plus * sym.mu_plus * b * (t.a + b) * (t.a + b);
            worst_collapse = worst_collapse.max(rel(t.det_closed, collapse));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = worst_identity < 1e-10 && worst_collapse < 1e-12 && secs < 10.0;
    Ok((pass, format!("closed vs direct det {worst_identity:.2e} (< 1e-10); collapse to −4μ²B(A+B)² {worst_collapse:.2e} (< 1e-12); {secs:.1}s")))
}

fn criterion_2() -> Outcome {
    let fp = FluidParams::symmetric(1.0, 1.0)?.with_surface(1.0, 0.0)?;
    let t = build_symbol_table(&SpectralPoint::real(3.0, &[1.0])?, &fp)?;
    let checks = [
        ("det L", t.det_closed, C64::new(-72.0, 0.0)),
        ("a_2n", t.a(2, 2), C64::new(-1.0 / 12.0, 0.0)),
        ("Lopatinskii", t.lopatinskii, C64::new(-210.0, 0.0)),
        ("eta/d", t.height_gain()?, C64::new(12.0 / 35.0, 0.0)),
    ];
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, got, want) in checks {
        let e = rel(got, want);
        pass &= e < 1e-12;
        detail.push(format!("{name} = {:.6} (fixture {:.6})", got.re, want.re));
    }
    Ok((pass, detail.join("; ")))
}

fn random_lambda(rng: &mut ChaCha8Rng, max_arg: f64) -> C64 {
    C64::from_polar(10f64.powf(rng.random_range(0.0..3.0)), rng.random_range(-max_arg..max_arg))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fp = FluidParams::default();
    let (mut worst, mut worst_div): (f64, f64) = (0.0, 0.0);
    for i in 0..100 {
        let n = 2 + i % 2;
        let grid = GridSpec::cube(n, 8, 16, 20.0)?;
        let k: Vec<i64> = (0..n - 1).map(|_| rng.random_range(1..=3)).collect();
        let lambda = random_lambda(&mut rng, 0.7 * PI);
        let data = ResolventData::random_single_mode(n, k, &mut rng, false, false).validated(&grid)?;
        let iface = data.interface();
        let field = boundary_solve(&iface, lambda, &fp, &grid)?;
        let r = residual_report(&field, &iface.as_bulk(), &grid)?;
        worst = worst.max(r.max_rel());
        worst_div = worst_div.max(r.get("divergence").map(|e| e.rel).unwrap_or(f64::NAN));
    }
    Ok((worst < 1e-9 && worst_div < 1e-10, format!("max row residual {worst:.2e} (< 1e-9), divergence {worst_div:.2e} (< 1e-10)")))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let fp = FluidParams::default();
    let grid = GridSpec::cube(3, 64, 64, 20.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let data = ResolventData::random_single_mode(3, vec![1, 2], &mut rng, true, true).validated(&grid)?;
    let lambda = C64::new(2.0, 1.5);
    let mut orders = Vec::new();
    for surface in [false, true] {
        let f = if surface { solve_rswith(&data, lambda, &fp, &grid)? } else { solve_rswithout(&data, lambda, &fp, &grid)? };
        orders.extend(fd_convergence(&f, &data, &grid, 3)?.1);
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = orders.iter().all(|o| (o - 2.0).abs() <= 0.2) && secs < 120.0;
    Ok((pass, format!("observed orders {:?} (2 ± 0.2); {secs:.1}s", orders.iter().map(|o| format!("{o:.3}")).collect::<Vec<_>>())))
}

fn criterion_5() -> Outcome {
    let fp = FluidParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for _ in 0..40 {
        let lambda = random_lambda(&mut rng, 0.7 * PI);
        for j in 0..25 {
            let l = 10f64.powf(-1.5 + 3.0 * j as f64 / 24.0);
            let grid = GridSpec { n: 2, n_tan: vec![4], lengths: vec![l], n_v: 4, x_max: 10.0, grading: 8.0 }.validated()?;
            let data = ResolventData::random_single_mode(2, vec![1], &mut rng, false, true).validated(&grid)?;
            let f = solve_rswith(&data, lambda, &fp, &grid)?;
            let r = residual_report(&f, &data, &grid)?;
            worst = worst.max(r.get("kinematic").map(|e| e.rel).unwrap_or(f64::NAN));
            count += 1;
        }
    }
    Ok((worst < 1e-10, format!("{count} (λ, ξ′) points, max relative kinematic residual {worst:.2e} (< 1e-10)")))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let out = certify_all(&SectorSampling::default(), &FluidParams::default(), 7, &Tolerances::default())?;
    let secs = start.elapsed().as_secs_f64();
    let failed: Vec<&str> = out.reports.iter().filter(|r| !r.pass).map(|r| r.bound_id.as_str()).collect();
    let finite = out.reports.iter().all(|r| r.worst_ratio.is_finite());
    let pass = failed.is_empty() && finite && out.control.diverges && secs < 60.0;
    Ok((
        pass,
        format!(
            "{} reports, failed {:?}, control growth {:.2e} (replacement {:.2}); {secs:.1}s",
            out.reports.len(),
            failed,
            out.control.growth,
            out.control.weighted_growth
        ),
    ))
}

fn criterion_7() -> Outcome {
    let grid = GridSpec::cube(2, 8, 128, 30.0)?;
    let mut data = ResolventData::random_single_mode(2, vec![1], &mut ChaCha8Rng::seed_from_u64(3), false, false);
    data.decay = Decay::Adapted(1.0);
    let data = data.validated(&grid)?;
    let rows = ratio_sweep(&RaySweep::default(), &data, &FluidParams::default(), &grid)?;
    let mut pass = true;
    let mut detail = Vec::new();
    for s in summarize(&rows) {
        pass &= s.slope.abs() <= 0.05 && s.spread < 10.0;
        detail.push(format!("arg {:+.3}: slope {:+.4}, spread {:.2}", s.arg, s.slope, s.spread));
    }
    Ok((pass, detail.join("; ")))
}

fn criterion_8() -> Outcome {
    let grid = GridSpec::cube(2, 8, 24, 20.0)?;
    let spatial = ResolventData::random_single_mode(2, vec![1], &mut ChaCha8Rng::seed_from_u64(2), false, false);
    let data = TimeData { spatial, profile: TimeProfile::Ramp { rate: 1.0 } };
    let contour = ContourSpec { nodes: 2048, ..ContourSpec::default() };
    let sol = solve_evolution(&data, &contour, &FluidParams::default(), &grid, false)?;
    let err = sol.roundtrip(C64::new(3.0, 0.0), &[0.0, 0.5, -0.5, 2.0])?;
    let (u0, umax) = sol.causality()?;
    Ok((err < 1e-4 && u0 <= 1e-3 * umax, format!("round trip {err:.2e} (< 1e-4), ‖U(0)‖/max ‖U‖ = {:.2e} (≤ 1e-3)", u0 / umax)))
}

fn criterion_9() -> Outcome {
    let fp = FluidParams::default();
    let grid = GridSpec::cube(2, 8, 32, 30.0)?;
    let mut worst_route: f64 = 0.0;
    for (seed, lambda) in [(1, C64::new(1.0, 0.0)), (2, C64::new(0.5, 3.0)), (3, C64::new(10.0, -4.0))] {
        let mut data = ResolventData::random_single_mode(2, vec![1], &mut ChaCha8Rng::seed_from_u64(seed), false, false);
        data.decay = Decay::Fixed(1.5);
        let r = sol1_check(&data, lambda, &fp, &grid, &[0.0, 0.05, 0.3, 1.0, 2.5], 512, Sol1Route::Consistent)?;
        worst_route = worst_route.max(r.max());
    }
    let members = ensemble(&EnsembleSpec::new(4, 7), 2)?;
    let syms = certified_symbols(2, C64::new(1.0, 0.0), &fp)?;
    let mut worst_drift: (f64, String) = (0.0, String::new());
    for s in &syms {
        let r = refinement_study(s, &grid, 2.0, &members, 3)?;
        let d = if r.norms.iter().all(|v| v.is_finite()) { r.drift() } else { f64::INFINITY };
        if d >= worst_drift.0 {
            worst_drift = (d, r.label);
        }
    }
    Ok((
        worst_route < 1e-4 && worst_drift.0 < 0.1,
        format!("integral route vs trace form {worst_route:.2e} (< 1e-4); worst drift over {} symbols {:.4} ({}) (< 0.1)", syms.len(), worst_drift.0, worst_drift.1),
    ))
}

fn criterion_10() -> Outcome {
    let tmp = tempfile::tempdir()?;
    let mut cfg = RunConfig::default();
    cfg.seed = 11;
    let cfg = cfg.validated()?;
    let mut outputs: Vec<Vec<(String, Vec<u8>)>> = Vec::new();
    for threads in [1, 4, 8] {
        let dir = tmp.path().join(format!("t{threads}"));
        let mut files = Vec::new();
        for cmd in [Command::Certify, Command::Sweep] {
            let o = with_threads(Some(threads), || dispatch(cmd, &cfg, &dir))??;
            for f in o.files {
                files.push((f.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&f)?));
            }
        }
        outputs.push(files);
    }
    let same = outputs.windows(2).all(|w| w[0] == w[1]);
    let names: Vec<&str> = outputs[0].iter().map(|f| f.0.as_str()).collect();
    Ok((same, format!("{names:?} byte-identical across 1/4/8 threads: {same}")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("determinant identity", criterion_1),
        ("hand-value fixtures", criterion_2),
        ("exact solvability", criterion_3),
        ("finite-difference oracle", criterion_4),
        ("kinematic identity", criterion_5),
        ("bound sweeps", criterion_6),
        ("resolvent ratio", criterion_7),
        ("evolution round trip", criterion_8),
        ("operator harness", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (pass, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!("criterion {:>2} {}: {name} — {detail}", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
