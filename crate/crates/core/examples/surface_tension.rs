//! Surface problem: height gain and interface height per mode as surface tension and
//! gravity vary, then a full solve with a kinematic datum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stokes2p::resolvent::{residual_report, solve_rswith, surface_solve, GridSpec, ResolventData};
use stokes2p::{FluidParams, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::cube(2, 8, 64, 20.0)?;
    let lambda = C64::new(3.0, 1.0);
    let d: Vec<(Vec<i64>, C64)> = (1..=3).map(|k| (vec![k], C64::new(1.0, 0.0))).collect();
    println!("c_sigma   c_g   k   |gain|      |eta|");
    for (sigma, g) in [(0.1, 0.0), (1.0, 0.0), (10.0, 0.0), (1.0, 1.0)] {
        let fp = FluidParams::new(1.0, 2.0, 1.0, 1.0)?.with_surface(sigma, g)?;
        for s in surface_solve(&d, lambda, &fp, &grid)? {
            println!("{:>7.2} {:>5.2} {:>3} {:>10.4e} {:>10.4e}", sigma, g, s.k[0], s.gain.norm(), s.eta.norm());
        }
    }
    let fp = FluidParams::default().with_surface(1.0, 0.5)?;
    let data = ResolventData::random_single_mode(2, vec![2], &mut ChaCha8Rng::seed_from_u64(11), true, true).validated(&grid)?;
    let field = solve_rswith(&data, lambda, &fp, &grid)?;
    let rep = residual_report(&field, &data, &grid)?;
    println!("full solve: eta = {:.6}, max rel residual {:.3e}", field.modes[0].interface_eta(), rep.max_rel());
    Ok(())
}
