//! Laplace round trip of an evolution solve at λ* = 3, and the causality check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stokes2p::evolution::{maxreg_plancherel, maxreg_ratio, solve_evolution, ContourSpec, TimeData, TimeProfile};
use stokes2p::resolvent::{GridSpec, ResolventData};
use stokes2p::{FluidParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let nodes: usize = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(2048);
    let oversample: usize = args.get(2).map(|a| a.parse()).transpose()?.unwrap_or(1);
    let grid = GridSpec::cube(2, 8, 24, 20.0)?;
    let spatial = ResolventData::random_single_mode(2, vec![1], &mut ChaCha8Rng::seed_from_u64(2), false, true);
    let data = TimeData { spatial, profile: TimeProfile::Ramp { rate: 1.0 } };
    let contour = ContourSpec { nodes, tau_max: 0.2 * nodes as f64, oversample, ..ContourSpec::default() };
    let fp = FluidParams::default();
    for surface in [false, true] {
        let sol = solve_evolution(&data, &contour, &fp, &grid, surface)?;
        let err = sol.roundtrip(C64::new(3.0, 0.0), &[0.0, 0.5, -0.5, 2.0])?;
        let (u0, umax) = sol.causality()?;
        println!("surface {surface}: round trip {err:.3e}, |U(0)|/max {:.3e}, tail {:.2e}", u0 / umax, sol.tail);
    }
    // maximal-regularity ratio across γ for a smooth pulse
    let pulse = TimeData { profile: TimeProfile::Bump { start: 0.0, width: 2.0 }, ..data };
    for gamma in [1.0, 2.0, 4.0] {
        let c = ContourSpec { gamma, nodes: 1024, tau_max: 204.8, oversample: 1 };
        let sol = solve_evolution(&pulse, &c, &fp, &grid, true)?;
        let t = maxreg_ratio(&sol, 2.0, 2.0)?;
        let f = maxreg_plancherel(&sol)?;
        let t3 = maxreg_ratio(&sol, 3.0, 2.0)?;
        println!(
            "γ = {gamma}: ratio (p=q=2) {:.5} [Plancherel {:.5}], p=3 {:.5}, Y ratios {:.4?} {:.4?}",
            t.ratio,
            f.ratio,
            t3.ratio,
            t.y_w1.map(|(a, b)| a / b),
            t.y_l.map(|(a, b)| a / b)
        );
    }
    Ok(())
}
