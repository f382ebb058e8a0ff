//! Whole-space problem from a sampled force: recovered modes, then the composed two-phase
//! solve and its residuals. Optional arg: λ magnitude on the positive axis.

use std::f64::consts::PI;

use stokes2p::resolvent::{helmholtz_solve, residual_report, solve_rswithout, FullSpaceForce, GridSpec, ResolventData};
use stokes2p::{FluidParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mag: f64 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2.0);
    let lambda = C64::new(mag, 0.0);
    let grid = GridSpec::cube(2, 8, 64, 10.0)?;
    let fp = FluidParams::new(1.0, 2.0, 1.0, 3.0)?;
    let n_z = 32;
    let mut comps = vec![vec![C64::new(0.0, 0.0); 8 * n_z]; 2];
    for i in 0..8 {
        for l in 0..n_z {
            let x = 2.0 * PI * i as f64 / 8.0;
            let z = -grid.x_max + 2.0 * grid.x_max * l as f64 / n_z as f64;
            let wave = |k: f64, m: f64| (C64::i() * (k * x + PI * m * z / grid.x_max)).exp();
            comps[0][i * n_z + l] = wave(1.0, 2.0) + 0.3 * wave(-2.0, 5.0);
            comps[1][i * n_z + l] = C64::new(0.0, 0.5) * wave(1.0, -1.0);
        }
    }
    let whole = helmholtz_solve(&FullSpaceForce { n_z, comps }, lambda, &fp, &grid)?;
    println!("force modes (k, m, |c|):");
    for (k, fm) in &whole.force {
        let c: f64 = fm.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        println!("  {:?} {:+} {:.6}", k, fm.m, c);
    }
    let mut data = ResolventData::zero(2);
    whole.attach_to(&mut data);
    let data = data.validated(&grid)?;
    let field = solve_rswithout(&data, lambda, &fp, &grid)?;
    let rep = residual_report(&field, &data, &grid)?;
    for e in &rep.spectral {
        println!("{:<24} abs {:.3e} rel {:.3e}", e.name, e.abs, e.rel);
    }
    println!("fd momentum {:.3e}, fd divergence {:.3e}", rep.fd_momentum, rep.fd_divergence);
    Ok(())
}
