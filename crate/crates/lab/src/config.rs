//! Declarative experiment configuration, parsed from JSON.

use num_complex::Complex64;
use quadlab_core::{
    CoreError, ExclusionAxis, FlowPair, RadiusRule, Result, TrigPolynomial,
};
use quadlab_core::numerics::grid::Grid2D;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

fn default_kappa() -> f64 {
    2.0
}

fn default_tolerance() -> f64 {
    1e-6
}

/// A pair of commuting translation flows given by their direction vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub s_dir: Vec<f64>,
    pub t_dir: Vec<f64>,
}

impl SystemSpec {
    pub fn build(&self) -> Result<FlowPair> {
        FlowPair::new(self.s_dir.clone(), self.t_dir.clone())
    }
}

/// One Fourier mode of a trigonometric polynomial observable.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub k: Vec<i64>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// A trigonometric polynomial given mode by mode.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObservableSpec {
    pub modes: Vec<ModeSpec>,
}

impl ObservableSpec {
    pub fn build(&self, dimension: usize) -> Result<TrigPolynomial> {
        let terms = self
            .modes
            .iter()
            .map(|m| (m.k.clone(), Complex64::new(m.re, m.im)))
            .collect();
        TrigPolynomial::from_terms(dimension, terms)
    }
}

/// Periodic sampling grid for the planar operators.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub period_u: f64,
    pub period_v: f64,
    pub n_u: usize,
    pub n_v: usize,
}

impl GridSpec {
    pub fn build(&self) -> Result<Grid2D> {
        Grid2D::new(self.period_u, self.period_v, self.n_u, self.n_v)
    }
}

/// One Fourier mode of a planar grid function.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridModeSpec {
    pub k1: i64,
    pub k2: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl GridModeSpec {
    pub fn term(&self) -> (i64, i64, Complex64) {
        (self.k1, self.k2, Complex64::new(self.re, self.im))
    }
}

/// The experiment payload: one variant per supported kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ExperimentKind {
    AverageTrajectory {
        system: SystemSpec,
        f1: ObservableSpec,
        f2: ObservableSpec,
        x: Vec<f64>,
        alpha: f64,
        n_max: usize,
        #[serde(default = "default_kappa")]
        kappa: f64,
    },
    Sandwich {
        system: SystemSpec,
        cases: usize,
        n_list: Vec<f64>,
        alpha: f64,
        max_frequency: i64,
        #[serde(default = "default_kappa")]
        kappa: f64,
    },
    MaximalChain {
        system: SystemSpec,
        f1: ObservableSpec,
        f2: ObservableSpec,
        points: usize,
        p: f64,
        q: f64,
        n: f64,
        m_max: usize,
        #[serde(default = "default_kappa")]
        kappa: f64,
    },
    SingleQuadratic {
        system: SystemSpec,
        f2: ObservableSpec,
        x: Vec<f64>,
        n_list: Vec<f64>,
        #[serde(default = "default_kappa")]
        kappa: f64,
    },
    DeltaDecay {
        grid: GridSpec,
        family_size: usize,
        modes_per_input: usize,
        max_k1: i64,
        max_k2: i64,
        deltas: Vec<f64>,
        radius: RadiusRule,
        #[serde(default = "default_kappa")]
        kappa: f64,
    },
    LambdaProbe {
        grid: GridSpec,
        families: usize,
        lambdas: Vec<f64>,
        axis: ExclusionAxis,
        partner: Vec<GridModeSpec>,
        delta: f64,
    },
    Transference {
        system: SystemSpec,
        f1: ObservableSpec,
        f2: ObservableSpec,
        samples: usize,
        n_list: Vec<f64>,
        delta: f64,
        grid: GridSpec,
    },
    OracleXcheck {
        system: SystemSpec,
        grid: GridSpec,
        instances: usize,
        modes_per_input: usize,
        max_k1: i64,
        max_k2: i64,
        #[serde(default = "default_tolerance")]
        tolerance: f64,
        #[serde(default = "default_kappa")]
        kappa: f64,
    },
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::AverageTrajectory { .. } => "average-trajectory",
            ExperimentKind::Sandwich { .. } => "sandwich",
            ExperimentKind::MaximalChain { .. } => "maximal-chain",
            ExperimentKind::SingleQuadratic { .. } => "single-quadratic",
            ExperimentKind::DeltaDecay { .. } => "delta-decay",
            ExperimentKind::LambdaProbe { .. } => "lambda-probe",
            ExperimentKind::Transference { .. } => "transference",
            ExperimentKind::OracleXcheck { .. } => "oracle-xcheck",
        }
    }
}

/// Top-level config: seed, output path, and the experiment payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub output: PathBuf,
    pub experiment: ExperimentKind,
}

impl ExperimentConfig {
    /// Loads and parses a config file, also returning the raw bytes so
    /// the manifest can hash exactly what was read.
    pub fn load(path: &Path) -> Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path)
            .map_err(|e| CoreError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: ExperimentConfig = serde_json::from_slice(&bytes)
            .map_err(|e| CoreError::Config(format!("cannot parse {}: {e}", path.display())))?;
        Ok((config, bytes))
    }
}
