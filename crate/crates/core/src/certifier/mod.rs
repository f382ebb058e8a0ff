//! Sector sweeps that measure the worst-case constant of every symbol bound.

pub mod checks;
pub mod report;
pub mod sampling;

pub use checks::{
    check_appendix_a, check_cofactor_growth, check_det_lower, check_lopatinskii_lower, check_root_bounds,
    check_symbol_estimate, omega_negative_control, NegativeControl,
};
pub use report::{BoundKind, BoundReport, Tolerances, Witness};
pub use sampling::{sample_sectors, Sample, SectorSampling};

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::params::FluidParams;

#[derive(Debug, Clone)]
pub struct CertifyOutcome {
    pub reports: Vec<BoundReport>,
    pub control: NegativeControl,
}

impl CertifyOutcome {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// Every check on one seeded sample set, followed by the excluded-term control.
pub fn certify_all(cfg: &SectorSampling, fp: &FluidParams, seed: u64, tol: &Tolerances) -> Result<CertifyOutcome> {
    let samples = sample_sectors(cfg, seed)?;
    let mut reports = check_root_bounds(&samples, fp, tol)?;
    reports.extend(check_cofactor_growth(&samples, fp, tol)?);
    reports.push(check_det_lower(&samples, fp, tol)?);
    reports.extend(check_symbol_estimate(&samples, fp, tol)?);
    reports.extend(check_lopatinskii_lower(&samples, fp, cfg.gamma0.max(1.0), tol)?);
    reports.push(check_appendix_a(&samples, fp, tol)?);
    let control = omega_negative_control(fp, C64::new(1.0, 0.0), cfg.dim, 7)?;
    reports.extend(control.reports(cfg.dim));
    Ok(CertifyOutcome { reports, control })
}

/// Worst ratios per bound for successively doubled grids (each count ×2 per level, cube-rooted).
pub fn refinement_sups(cfg: &SectorSampling, fp: &FluidParams, seed: u64, levels: usize) -> Result<Vec<Vec<(String, f64)>>> {
    let tol = Tolerances::default();
    (0..levels)
        .map(|l| {
            let f = 1usize << l;
            let c = SectorSampling { n_radii: cfg.n_radii * f, n_angles: cfg.n_angles * f, ..cfg.clone() };
            let s = sample_sectors(&c, seed)?;
            let mut r = check_root_bounds(&s, fp, &tol)?;
            r.push(check_det_lower(&s, fp, &tol)?);
            Ok(r.into_iter().map(|b| (b.bound_id, b.worst_ratio)).collect())
        })
        .collect()
}
