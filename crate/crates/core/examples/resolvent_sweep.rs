//! Resolvent-estimate ratio along the three default rays; optional args: decay scale, N_v.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stokes2p::resolvent::{ratio_sweep, summarize, Decay, GridSpec, RaySweep, ResolventData};
use stokes2p::FluidParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().collect();
    let s: f64 = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(1.0);
    let nv: usize = args.get(2).map(|a| a.parse()).transpose()?.unwrap_or(128);
    let grid = GridSpec::cube(2, 8, nv, 30.0)?;
    let mut data = ResolventData::random_single_mode(2, vec![1], &mut ChaCha8Rng::seed_from_u64(3), false, false);
    data.decay = Decay::Adapted(s);
    let data = data.validated(&grid)?;
    let rows = ratio_sweep(&RaySweep::default(), &data, &FluidParams::default(), &grid)?;
    for r in &rows {
        println!("{:+.3} {:>10.3e} {:>12.5e} {:>12.5e} {:>10.4}", r.arg, r.mag, r.report.lhs, r.report.rhs, r.report.ratio);
    }
    for s in summarize(&rows) {
        println!("arg {:+.3}: slope {:+.4}, spread {:.3}", s.arg, s.slope, s.spread);
    }
    Ok(())
}
