//! Sweep the default sector grid and print every bound's worst ratio.

use stokes2p::certifier::{certify_all, SectorSampling, Tolerances};
use stokes2p::FluidParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dim = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let cfg = SectorSampling { dim, ..Default::default() };
    let out = certify_all(&cfg, &FluidParams::default(), 7, &Tolerances::default())?;
    for r in &out.reports {
        println!("{:<34} {:>12.4e} {}", r.bound_id, r.worst_ratio, if r.pass { "ok" } else { "FAIL" });
    }
    let c = &out.control;
    println!("excluded term along Ã → 0: {:?}", c.unweighted);
    println!("replacement:              {:?}", c.weighted);
    Ok(())
}
