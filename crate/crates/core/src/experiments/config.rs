use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{ExpKernel, Method, DEFAULT_DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::hamiltonians::{DeviceMapping, ScheduleDirection, UnitConvention};
use crate::operators::{square_lattice_with_boundary, Boundary, LatticeGraph, DEFAULT_QUBIT_CAP};

/// Per-site coefficients of the random transverse field, by 1-based site label.
pub const TABLE1_COEFFS: [f64; 6] = [
    -0.9052919617126958,
    0.2500243810835503,
    -1.931378367720707,
    -0.007622719480759765,
    -1.259154537693434,
    -1.261510983981174,
];

/// Half-width of the seeded random driver distribution, GHz.
pub const RANDOM_DRIVER_RANGE: f64 = 2.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frame {
    #[default]
    Lab,
    RotatingRwa,
    Both,
}

impl Frame {
    pub fn name(self) -> &'static str {
        match self {
            Frame::Lab => "lab",
            Frame::RotatingRwa => "rotating-rwa",
            Frame::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DriverMode {
    #[default]
    Uniform,
    RandomTable,
    RandomSeeded,
}

/// How 1-based site labels sit on the row-major lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Labelling {
    /// Labels run down each column first.
    #[default]
    ColumnMajor,
    RowMajor,
}

/// Row-major site index of a 1-based site label.
pub fn label_to_site(
    label: usize,
    rows: usize,
    cols: usize,
    labelling: Labelling,
) -> Result<usize> {
    let n = rows * cols;
    if label == 0 || label > n {
        return Err(Error::SiteOutOfRange {
            site: label,
            n_sites: n,
        });
    }
    let p = label - 1;
    Ok(match labelling {
        Labelling::RowMajor => p,
        Labelling::ColumnMajor => (p % rows) * cols + p / rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub rows: usize,
    pub cols: usize,
    #[serde(default)]
    pub boundary: Boundary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub j: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceConfig {
    pub omega: Vec<f64>,
    pub lambda0: f64,
    #[serde(default)]
    pub mapping: DeviceMapping,
    #[serde(default)]
    pub unit_convention: UnitConvention,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealConfig {
    pub total_time: f64,
    #[serde(default)]
    pub schedule_direction: ScheduleDirection,
    #[serde(default)]
    pub frame: Frame,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriverConfig {
    #[serde(default)]
    pub mode: DriverMode,
    /// Paper-label order; required for `random-table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
    #[serde(default)]
    pub labelling: Labelling,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub method: Method,
    pub kernel: ExpKernel,
    /// Lab-frame steps per drive period, a lower bound.
    pub steps_per_period: usize,
    /// Rotating-frame steps over the whole anneal.
    pub rotating_steps: usize,
    /// Fixed step for every frame; overrides both policies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    pub samples: usize,
    pub degeneracy_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Magnus4,
            kernel: ExpKernel::Taylor,
            steps_per_period: 40,
            rotating_steps: 2000,
            dt: None,
            samples: 200,
            degeneracy_tol: DEFAULT_DEGENERACY_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub svg: bool,
    pub workers: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            dir: PathBuf::from("out"),
            svg: true,
            workers: 1,
        }
    }
}

/// One (J, Δ) case swept over the drive frequencies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub lattice: LatticeConfig,
    pub problem: ProblemConfig,
    pub device: DeviceConfig,
    pub anneal: AnnealConfig,
    #[serde(default)]
    pub driver: DriverConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
        {
            return Err(Error::Config(format!(
                "name {:?} must be a non-empty file-name-safe token",
                self.name
            )));
        }
        let n = self.lattice.rows * self.lattice.cols;
        if n == 0 || n > DEFAULT_QUBIT_CAP {
            return Err(Error::Config(format!(
                "lattice has {n} sites, allowed 1..={DEFAULT_QUBIT_CAP}"
            )));
        }
        finite("problem.j", self.problem.j)?;
        finite("problem.delta", self.problem.delta)?;
        if self.device.omega.is_empty() {
            return Err(Error::Config(
                "device.omega must list at least one frequency".into(),
            ));
        }
        for &w in &self.device.omega {
            finite("device.omega", w)?;
            if w <= 0.0 {
                return Err(Error::Config(format!(
                    "device.omega entries must be positive, got {w}"
                )));
            }
        }
        finite("device.lambda0", self.device.lambda0)?;
        finite("anneal.total_time", self.anneal.total_time)?;
        if self.anneal.total_time <= 0.0 {
            return Err(Error::Config("anneal.total_time must be positive".into()));
        }
        if self.driver.mode == DriverMode::RandomTable {
            match &self.driver.coefficients {
                Some(c) if c.len() == n => c
                    .iter()
                    .try_for_each(|&v| finite("driver.coefficients", v))?,
                Some(c) => {
                    return Err(Error::Config(format!(
                        "driver.coefficients has {} entries for {n} sites",
                        c.len()
                    )))
                }
                None => {
                    return Err(Error::Config(
                        "driver.mode = \"random-table\" needs driver.coefficients".into(),
                    ))
                }
            }
        }
        let s = &self.solver;
        if s.steps_per_period == 0 || s.rotating_steps == 0 || s.samples < 2 {
            return Err(Error::Config(
                "solver.steps_per_period and solver.rotating_steps must be positive, solver.samples at least 2".into(),
            ));
        }
        if let Some(dt) = s.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(Error::Config(format!(
                    "solver.dt must be positive, got {dt}"
                )));
            }
        }
        if !(s.degeneracy_tol.is_finite() && s.degeneracy_tol >= 0.0) {
            return Err(Error::Config(
                "solver.degeneracy_tol must be non-negative".into(),
            ));
        }
        if self.output.workers == 0 {
            return Err(Error::Config("output.workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn n_sites(&self) -> usize {
        self.lattice.rows * self.lattice.cols
    }

    pub fn graph(&self) -> Result<LatticeGraph> {
        square_lattice_with_boundary(self.lattice.rows, self.lattice.cols, self.lattice.boundary)
    }

    /// Per-site drive scales in row-major site order.
    pub fn drive_coefficients(&self) -> Result<Vec<f64>> {
        let n = self.n_sites();
        match self.driver.mode {
            DriverMode::Uniform => Ok(vec![1.0; n]),
            DriverMode::RandomTable => {
                let table = self.driver.coefficients.as_ref().ok_or_else(|| {
                    Error::Config("random-table driver without coefficients".into())
                })?;
                let mut out = vec![0.0; n];
                for (p, &c) in table.iter().enumerate() {
                    let site = label_to_site(
                        p + 1,
                        self.lattice.rows,
                        self.lattice.cols,
                        self.driver.labelling,
                    )?;
                    out[site] = c;
                }
                Ok(out)
            }
            DriverMode::RandomSeeded => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.driver.seed);
                Ok((0..n)
                    .map(|_| rng.random_range(-RANDOM_DRIVER_RANGE..=RANDOM_DRIVER_RANGE))
                    .collect())
            }
        }
    }
}

/// The four (J, Δ) cases of the uniform-driver figure.
pub fn preset_fig3() -> Vec<ExperimentConfig> {
    [
        (-1.0, 0.7, "ferro-d0.7"),
        (-1.0, 1.7, "ferro-d1.7"),
        (1.0, 0.7, "af-d0.7"),
        (1.0, 1.7, "af-d1.7"),
    ]
    .into_iter()
    .map(|(j, delta, name)| base_config(name, j, delta, 1.0))
    .collect()
}

/// The anti-ferromagnetic cases with the random transverse field.
pub fn preset_fig4() -> Vec<ExperimentConfig> {
    [(0.7, "af-d0.7-random"), (1.7, "af-d1.7-random")]
        .into_iter()
        .map(|(delta, name)| {
            // (λ0/2)·c_j then equals the tabulated field in GHz
            let mut cfg = base_config(name, 1.0, delta, 2.0);
            cfg.driver = DriverConfig {
                mode: DriverMode::RandomTable,
                coefficients: Some(TABLE1_COEFFS.to_vec()),
                labelling: Labelling::ColumnMajor,
                seed: 0,
            };
            cfg
        })
        .collect()
}

pub fn preset(name: &str) -> Result<Vec<ExperimentConfig>> {
    match name {
        "fig3" => Ok(preset_fig3()),
        "fig4" => Ok(preset_fig4()),
        other => Err(Error::Config(format!(
            "unknown preset {other:?}, expected fig3 or fig4"
        ))),
    }
}

fn base_config(name: &str, j: f64, delta: f64, lambda0: f64) -> ExperimentConfig {
    ExperimentConfig {
        name: name.to_string(),
        lattice: LatticeConfig {
            rows: 2,
            cols: 3,
            boundary: Boundary::Open,
        },
        problem: ProblemConfig { j, delta },
        device: DeviceConfig {
            omega: vec![2.0, 5.0, 10.0, 20.0],
            lambda0,
            mapping: DeviceMapping::Exact,
            unit_convention: UnitConvention::Angular,
        },
        anneal: AnnealConfig {
            total_time: 1000.0,
            schedule_direction: ScheduleDirection::DriveOff,
            frame: Frame::Lab,
        },
        driver: DriverConfig::default(),
        solver: SolverConfig::default(),
        output: OutputConfig::default(),
    }
}
