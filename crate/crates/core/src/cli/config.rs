//! Strict TOML run configuration; every section is optional and falls back to defaults.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::certifier::{SectorSampling, Tolerances};
use crate::error::{Error, Result};
use crate::evolution::{ContourSpec, TimeProfile};
use crate::params::FluidParams;
use crate::resolvent::{Decay, GridSpec, RaySweep};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub fluid: FluidParams,
    pub grid: GridSpec,
    pub sector: SectorSampling,
    pub tolerances: Tolerances,
    pub data: DataConfig,
    pub solve: SolveConfig,
    pub contour: ContourSpec,
    pub evolve: EvolveConfig,
    pub sweep: SweepConfig,
    /// Directory relative paths in the config resolve against (not serialized).
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 7,
            fluid: FluidParams::default(),
            grid: GridSpec { n: 2, n_tan: vec![8], lengths: vec![1.0], n_v: 64, x_max: 30.0, grading: 8.0 },
            sector: SectorSampling::default(),
            tolerances: Tolerances::default(),
            data: DataConfig::default(),
            solve: SolveConfig::default(),
            contour: ContourSpec::default(),
            evolve: EvolveConfig::default(),
            sweep: SweepConfig::default(),
            base_dir: PathBuf::new(),
        }
    }
}

/// Where the bulk data comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DataSource {
    Zero {},
    /// Uniform random coefficients on one tangential mode, drawn from the run seed.
    RandomSingleMode {
        k: Vec<i64>,
        #[serde(default)]
        force: bool,
        #[serde(default)]
        d: bool,
    },
    /// Mode-coefficient CSV: columns `k1[,k2],field,re,im`.
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DataConfig {
    pub source: DataSource,
    pub decay: Decay,
}

impl Default for DataConfig {
    fn default() -> Self {
        DataConfig { source: DataSource::RandomSingleMode { k: vec![1], force: false, d: false }, decay: Decay::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolveConfig {
    /// `[re, im]` pairs.
    pub lambda: Vec<[f64; 2]>,
    pub surface: bool,
    pub q: f64,
    /// Pass iff every spectral relative residual is below this.
    pub residual_tol: f64,
    /// Write one binary field dump per λ.
    pub dump: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { lambda: vec![[1.0, 0.0], [3.0, 4.0]], surface: false, q: 2.0, residual_tol: 1e-8, dump: false }
    }
}

impl SolveConfig {
    pub fn lambdas(&self) -> Vec<C64> {
        self.lambda.iter().map(|&[re, im]| C64::new(re, im)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveConfig {
    pub profile: TimeProfile,
    pub surface: bool,
    /// Re-transform point `[re, im]` for the round trip.
    pub lambda_star: [f64; 2],
    /// Heights (signed) where the round trip compares velocities.
    pub heights: Vec<f64>,
    pub p: f64,
    pub q: f64,
    pub roundtrip_tol: f64,
    pub causality_tol: f64,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            profile: TimeProfile::Ramp { rate: 2.0 },
            surface: false,
            lambda_star: [3.0, 0.0],
            heights: vec![0.0, 0.5, -0.5, 2.0, -2.0],
            p: 2.0,
            q: 2.0,
            roundtrip_tol: 1e-4,
            causality_tol: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub rays: RaySweep,
    pub slope_tol: f64,
    pub spread_max: f64,
    /// Contour abscissae for a maximal-regularity γ sweep (uses `[contour]`, `[evolve]`).
    pub gammas: Vec<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { rays: RaySweep::default(), slope_tol: 0.05, spread_max: 10.0, gammas: Vec::new() }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    /// Checks every section against its module's invariants.
    pub fn validated(self) -> Result<Self> {
        let fluid = self.fluid.validated()?;
        let grid = self.grid.clone().validated()?;
        let sector = self.sector.clone().validated()?;
        let contour = self.contour.clone().validated()?;
        let profile = self.evolve.profile.clone().validated()?;
        let rays = self.sweep.rays.clone().validated()?;
        if self.solve.lambda.iter().any(|l| !(l[0].is_finite() && l[1].is_finite())) {
            return Err(Error::Config("solve.lambda entries must be finite".into()));
        }
        for (name, q) in [("solve.q", self.solve.q), ("evolve.q", self.evolve.q), ("evolve.p", self.evolve.p)] {
            if !(q > 1.0 && q.is_finite()) {
                return Err(Error::Config(format!("{name} = {q} must lie in (1, ∞)")));
            }
        }
        if self.sweep.gammas.iter().any(|g| !(*g > 0.0 && g.is_finite())) {
            return Err(Error::Config("sweep.gammas must be positive".into()));
        }
        Ok(RunConfig {
            fluid,
            grid,
            sector,
            contour,
            evolve: EvolveConfig { profile, ..self.evolve },
            sweep: SweepConfig { rays, ..self.sweep },
            ..self
        })
    }

    /// Canonical serialization (resolved seed included) — the input of the report hash.
    pub fn canonical(&self) -> String {
        toml::to_string(self).unwrap_or_default()
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}
