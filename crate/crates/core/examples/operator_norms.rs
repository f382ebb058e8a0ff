//! Empirical `T[m]` norms over a seeded ensemble on three refinements for every certified
//! symbol and the controls, the integral-route check, and one `T̃_γ` bound.
//! Optional args: base N_v, q.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stokes2p::operator::{
    certified_symbols, empirical_bound_tilde, ensemble, refinement_study, sol1_check, EnsembleSpec, ExpA, InversePower, Multiplier,
    Sol1Route,
};
use stokes2p::resolvent::{Decay, GridSpec, ResolventData};
use stokes2p::{FluidParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let nv: usize = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(64);
    let q: f64 = args.get(2).map(|a| a.parse()).transpose()?.unwrap_or(2.0);
    let fp = FluidParams::default();
    let grid = GridSpec::cube(2, 8, nv, 30.0)?;
    let members = ensemble(&EnsembleSpec::new(8, 7), 2)?;
    let lambda = C64::new(1.0, 0.0);
    let mut worst: (f64, String) = (0.0, String::new());
    let syms = certified_symbols(2, lambda, &fp)?;
    for s in &syms {
        let r = refinement_study(s, &grid, q, &members, 3)?;
        println!("{:<32} {:?} drift {:.4}", r.label, r.norms.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>(), r.drift());
        if r.drift() > worst.0 {
            worst = (r.drift(), r.label.clone());
        }
    }
    println!("worst drift over {} certified symbols: {:.4} ({})", syms.len(), worst.0, worst.1);
    let controls: [&dyn Multiplier; 3] = [&ExpA, &InversePower(1.0), &InversePower(2.0)];
    for m in controls {
        let r = refinement_study(m, &grid, q, &members, 3)?;
        println!("control {:<20} {:?} growth {:.3} indicator {:.3}", r.label, r.norms, r.growth(), r.singular_indicator);
    }
    let mut data = ResolventData::random_single_mode(2, vec![1], &mut ChaCha8Rng::seed_from_u64(1), false, false);
    data.decay = Decay::Fixed(1.5);
    for route in [Sol1Route::Consistent, Sol1Route::Literal] {
        let r = sol1_check(&data, lambda, &fp, &grid, &[0.0, 0.1, 0.5, 2.0], 512, route)?;
        println!("integral route {route:?}: velocity {:.3e}, pressure {:.3e}", r.velocity, r.pressure);
    }
    let base = syms[0].clone();
    for gamma in [1.0, 4.0] {
        let r = empirical_bound_tilde(|l| Ok(Box::new(base.with_lambda(l)) as Box<dyn Multiplier>), gamma, &grid, 2.0, q, &members[..2], 4.0, 32)?;
        println!("T~_gamma {} gamma {gamma}: {r:.5}", base.id());
    }
    Ok(())
}
