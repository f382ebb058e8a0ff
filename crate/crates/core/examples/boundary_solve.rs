//! Interface-driven problem from point values of the jumps; reports residuals and the
//! interface traces of the recovered velocity.

use std::f64::consts::PI;

use stokes2p::resolvent::{boundary_solve, residual_report, GridSpec, InterfaceData};
use stokes2p::{FluidParams, Side, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::cube(2, 16, 64, 20.0)?;
    let fp = FluidParams::new(1.0, 0.5, 2.0, 0.25)?;
    let lambda = C64::new(1.0, 2.0);
    let np = grid.tangential_points();
    let xs: Vec<f64> = (0..np).map(|i| 2.0 * PI * i as f64 / np as f64).collect();
    let g = vec![xs.iter().map(|x| C64::new(x.sin(), 0.0)).collect(), xs.iter().map(|x| C64::new((2.0 * x).cos(), 0.0)).collect()];
    let h = vec![vec![C64::new(0.0, 0.0); np], xs.iter().map(|x| C64::new(0.2 * (3.0 * x).sin(), 0.0)).collect()];
    let d = vec![C64::new(0.0, 0.0); np];
    let data = InterfaceData::from_physical(&grid, &g, &h, &d)?;
    println!("{} interface modes", data.modes.len());
    let field = boundary_solve(&data, lambda, &fp, &grid)?;
    let rep = residual_report(&field, &data.as_bulk(), &grid)?;
    for e in &rep.spectral {
        println!("{:<24} abs {:.3e} rel {:.3e}", e.name, e.abs, e.rel);
    }
    for mf in &field.modes {
        let up = mf.velocity(Side::Plus, 0.0, 0)?;
        let um = mf.velocity(Side::Minus, 0.0, 0)?;
        let jump: Vec<String> = up.iter().zip(&um).map(|(a, b)| format!("{:+.4}", a - b)).collect();
        println!("k {:?}: [[u]] = {}", mf.k, jump.join(", "));
    }
    Ok(())
}
