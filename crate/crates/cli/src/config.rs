use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use gafzeros_core::spectral::ClosedForm;
use gafzeros_core::{CoefficientSampler, CovarianceEvaluator, SpectralMeasure};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Which coefficient sampler an experiment uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerTag {
    /// The cheapest exact sampler for the measure.
    #[default]
    Auto,
    Iid,
    Periodic,
    ToeplitzSqrt,
}

/// Which files an experiment writes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Formats {
    #[serde(default = "yes")]
    pub csv: bool,
    #[serde(default = "yes")]
    pub json: bool,
    #[serde(default = "yes")]
    pub svg: bool,
    /// Half-width of the square shown in zero scatter plots.
    #[serde(default = "default_extent")]
    pub svg_extent: f64,
}

impl Default for Formats {
    fn default() -> Self {
        Self {
            csv: true,
            json: true,
            svg: true,
            svg_extent: default_extent(),
        }
    }
}

/// Angles for intensity curves: a point count spread evenly over
/// `[-π, π]`, or explicit values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThetaGrid {
    Count(usize),
    Values(Vec<f64>),
}

impl ThetaGrid {
    pub fn angles(&self) -> Vec<f64> {
        match self {
            Self::Count(1) => vec![0.0],
            Self::Count(n) => (0..*n).map(|k| -PI + 2.0 * PI * k as f64 / (*n - 1) as f64).collect(),
            Self::Values(v) => v.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelChoice {
    /// The full kernel `K_F`.
    #[default]
    Exact,
    /// The degree-`N` truncation.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IntensityOptions {
    #[serde(default = "default_theta_grid")]
    pub theta_grid: ThetaGrid,
    #[serde(default = "default_r_list")]
    pub r_list: Vec<f64>,
    #[serde(default)]
    pub kernel: KernelChoice,
}

impl Default for IntensityOptions {
    fn default() -> Self {
        Self {
            theta_grid: default_theta_grid(),
            r_list: default_r_list(),
            kernel: KernelChoice::Exact,
        }
    }
}

/// One seeded experiment, read from a JSON file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub measure: SpectralMeasure,
    #[serde(default)]
    pub sampler: SamplerTag,
    #[serde(rename = "N")]
    pub degree: usize,
    #[serde(default = "one")]
    pub runs: u64,
    #[serde(default)]
    pub seed_base: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub formats: Formats,
    #[serde(default)]
    pub intensity: IntensityOptions,
    /// Suite run by `verify` when no `--suite` is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
}

fn yes() -> bool {
    true
}

fn one() -> u64 {
    1
}

fn default_extent() -> f64 {
    1.5
}

fn default_theta_grid() -> ThetaGrid {
    ThetaGrid::Count(361)
}

fn default_r_list() -> Vec<f64> {
    vec![0.25, 0.5, 0.75]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(s).map_err(|e| CliError::Config(format!("bad config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.runs < 1 {
            return Err(CliError::Config("runs must be at least 1".into()));
        }
        if self.degree < 1 {
            return Err(CliError::Config("N must be at least 1".into()));
        }
        if !(self.formats.svg_extent > 0.0 && self.formats.svg_extent.is_finite()) {
            return Err(CliError::Config("svgExtent must be positive".into()));
        }
        if let ThetaGrid::Count(0) = self.intensity.theta_grid {
            return Err(CliError::Config("thetaGrid needs at least one point".into()));
        }
        if let Some(&r) = self.intensity.r_list.iter().find(|r| !(0.0..1.0).contains(*r)) {
            return Err(CliError::Config(format!("rList entries must lie in [0, 1), got {r}")));
        }
        Ok(())
    }

    pub fn evaluator(&self) -> CliResult<CovarianceEvaluator> {
        CovarianceEvaluator::new(self.measure.clone()).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Builds the sampler named by `sampler`, refusing combinations that
    /// would not realise `measure`.
    pub fn build_sampler(&self, ev: &CovarianceEvaluator) -> CliResult<CoefficientSampler> {
        let mismatch = |what: &str| CliError::Config(format!("sampler {what} does not match the measure"));
        match self.sampler {
            SamplerTag::Auto => {
                CoefficientSampler::for_evaluator(ev, self.degree).map_err(|e| CliError::Numeric(e.to_string()))
            }
            SamplerTag::Iid => match ev.closed_form() {
                Some(ClosedForm::Hyperbolic) => Ok(CoefficientSampler::Iid),
                _ => Err(mismatch("iid")),
            },
            SamplerTag::Periodic => match self.measure.periodic_order() {
                Some(n) => CoefficientSampler::periodic(n).map_err(|e| CliError::Config(e.to_string())),
                None => Err(mismatch("periodic")),
            },
            SamplerTag::ToeplitzSqrt => CoefficientSampler::toeplitz_sqrt(ev, self.degree)
                .map_err(|e| CliError::Numeric(e.to_string())),
        }
    }
}

/// Creates `dir` and proves it writable with a throwaway file.
pub fn ensure_writable(dir: &Path) -> CliResult<()> {
    let fail = |e: std::io::Error| CliError::Config(format!("output directory {} is not writable: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(fail)?;
    let probe = dir.join(".gafzeros-probe");
    fs::write(&probe, b"").map_err(fail)?;
    fs::remove_file(&probe).map_err(fail)
}

/// The `suite` field of a config file; every other field is ignored so a
/// full experiment config can be reused.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyConfig {
    pub suite: Option<String>,
    pub output_dir: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("bad config: {e}")))
    }
}
