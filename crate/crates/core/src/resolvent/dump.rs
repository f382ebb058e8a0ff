//! Binary field dump.
//!
//! Layout, all little-endian: `b"S2PF"`, `u32` version (1), `u32` n, `u32` N_v,
//! `u32` N_j (n − 1 of them), `f64` X, `f64` L_j (n − 1), `f64` Re λ, `f64` Im λ,
//! `u32` has_eta, `f64` vertical nodes (N_v + 1); then for the upper and then the lower
//! phase, for each node, for `u_1..u_n, θ`: the tangential array row-major as `(re, im)`
//! pairs; finally the interface height array if present.

use std::io::Write;

use num_complex::Complex64 as C64;

use super::field::TwoPhaseField;
use super::grid::GridSpec;
use crate::error::Result;

pub const MAGIC: &[u8; 4] = b"S2PF";
pub const VERSION: u32 = 1;

fn put_c(w: &mut impl Write, v: &[C64]) -> std::io::Result<()> {
    for z in v {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn write_dump(w: &mut impl Write, field: &TwoPhaseField, grid: &GridSpec) -> Result<()> {
    let phys = field.to_physical(grid)?;
    w.write_all(MAGIC)?;
    for v in [VERSION, grid.n as u32, grid.n_v as u32] {
        w.write_all(&v.to_le_bytes())?;
    }
    for &m in &grid.n_tan {
        w.write_all(&(m as u32).to_le_bytes())?;
    }
    w.write_all(&grid.x_max.to_le_bytes())?;
    for l in &grid.lengths {
        w.write_all(&l.to_le_bytes())?;
    }
    w.write_all(&field.lambda.re.to_le_bytes())?;
    w.write_all(&field.lambda.im.to_le_bytes())?;
    w.write_all(&(phys.eta.is_some() as u32).to_le_bytes())?;
    for x in &phys.nodes {
        w.write_all(&x.to_le_bytes())?;
    }
    for side in &phys.side {
        for node in side {
            for comp in node {
                put_c(w, comp)?;
            }
        }
    }
    if let Some(e) = &phys.eta {
        put_c(w, e)?;
    }
    Ok(())
}

/// Size in bytes of a dump for `grid`.
pub fn dump_len(grid: &GridSpec, with_eta: bool) -> usize {
    let np = grid.tangential_points();
    let header = 4 + 12 + 4 * (grid.n - 1) + 8 + 8 * (grid.n - 1) + 16 + 4 + 8 * (grid.n_v + 1);
    header + 2 * (grid.n_v + 1) * (grid.n + 1) * np * 16 + if with_eta { np * 16 } else { 0 }
}
