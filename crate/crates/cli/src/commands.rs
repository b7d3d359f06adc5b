use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use gafzeros_core::corr::rho1_ek;
use gafzeros_core::spectral::{ClosedForm, TruncatedKernel};
use gafzeros_core::verify::{all_passed, format_table, run_suite, Suite};
use gafzeros_core::zeros::{
    census, expected_count_in_disk, write_histogram_csv, write_zeros_csv, zeros_svg, Census, CountHistogram,
};
use gafzeros_core::{CoefficientSampler, Complex64, CountSummary, CovarianceKernel};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{ensure_writable, ExperimentConfig, KernelChoice, VerifyConfig};
use crate::error::{CliError, CliResult};
use crate::plot::intensity_svg;

/// Runs whose root finder fails are dropped; above this fraction the
/// experiment is abandoned.
pub const MAX_FAILURE_RATE: f64 = 0.01;

/// Command-line values that take precedence over the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, mut cfg: ExperimentConfig) -> ExperimentConfig {
        if let Some(s) = self.seed {
            cfg.seed_base = s;
        }
        if let Some(o) = &self.out {
            cfg.output_dir = o.clone();
        }
        cfg
    }
}

fn write(dir: &Path, name: &str, contents: impl AsRef<[u8]>, written: &mut Vec<PathBuf>) -> CliResult<()> {
    let path = dir.join(name);
    fs::write(&path, contents)?;
    written.push(path);
    Ok(())
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("summary serialises");
    s.push('\n');
    s
}

fn failure_gate<T>(c: &Census<T>) -> CliResult<()> {
    let rate = c.failure_rate();
    if rate > MAX_FAILURE_RATE {
        let mut msg = format!(
            "root finder failed on {} of {} runs ({:.2}%)",
            c.failures.len(),
            c.runs(),
            100.0 * rate
        );
        for f in &c.failures {
            msg.push_str(&format!("\n  run {} (seed {}): {}", f.run, f.seed, f.message));
        }
        return Err(CliError::Numeric(msg));
    }
    for f in &c.failures {
        eprintln!("warning: run {} (seed {}) dropped: {}", f.run, f.seed, f.message);
    }
    Ok(())
}

fn header(cfg: &ExperimentConfig, command: &str, sampler: &CoefficientSampler) -> Value {
    json!({
        "command": command,
        "measure": cfg.measure,
        "sampler": sampler.tag(),
        "N": cfg.degree,
        "runs": cfg.runs,
        "seedBase": cfg.seed_base,
    })
}

fn prepare(cfg: &ExperimentConfig) -> CliResult<CoefficientSampler> {
    cfg.validate()?;
    ensure_writable(&cfg.output_dir)?;
    let ev = cfg.evaluator()?;
    cfg.build_sampler(&ev)
}

/// Samples `runs` truncations and writes their zeros as CSV and SVG.
pub fn sample_zeros(cfg: &ExperimentConfig) -> CliResult<Vec<PathBuf>> {
    let sampler = prepare(cfg)?;
    let c = census(&sampler, cfg.degree, cfg.runs, cfg.seed_base, |z| z.clone())
        .map_err(|e| CliError::Config(e.to_string()))?;
    failure_gate(&c)?;

    let mut totals = CountSummary {
        radius: 1.0,
        ..Default::default()
    };
    for (_, _, zs) in &c.outcomes {
        let s = zs.classify(1.0).expect("unit radius");
        totals.inside += s.inside;
        totals.outside += s.outside;
        totals.boundary += s.boundary;
        totals.inside_left += s.inside_left;
        totals.inside_right += s.inside_right;
    }

    let dir = &cfg.output_dir;
    let mut written = Vec::new();
    if cfg.formats.csv {
        let mut buf = Vec::new();
        write_zeros_csv(&mut buf, c.outcomes.iter().map(|(run, _, zs)| (*run, zs)))?;
        write(dir, "zeros.csv", buf, &mut written)?;
    }
    if cfg.formats.svg {
        let svg = zeros_svg(c.outcomes.iter().map(|o| &o.2), cfg.formats.svg_extent);
        write(dir, "zeros.svg", svg, &mut written)?;
    }
    if cfg.formats.json {
        let mut summary = header(cfg, "sample-zeros", &sampler);
        summary["counts"] = json!(totals);
        summary["failures"] = json!(c.failures);
        write(dir, "summary.json", to_json(&summary), &mut written)?;
    }
    Ok(written)
}

fn stats(h: &CountHistogram) -> Value {
    json!({
        "samples": h.samples(),
        "mean": h.mean(),
        "variance": h.variance(),
        "stdError": h.std_error(),
    })
}

/// Inside-disk counts split by half plane, as histograms and a summary.
pub fn mc_counts(cfg: &ExperimentConfig) -> CliResult<Vec<PathBuf>> {
    let sampler = prepare(cfg)?;
    let c = census(&sampler, cfg.degree, cfg.runs, cfg.seed_base, |z| {
        z.classify(1.0).expect("unit radius")
    })
    .map_err(|e| CliError::Config(e.to_string()))?;
    failure_gate(&c)?;

    let hist = |f: fn(&CountSummary) -> usize| CountHistogram::from_counts(c.outcomes.iter().map(|o| f(&o.2)));
    let inside = hist(|s| s.inside);
    let left = hist(|s| s.inside_left);
    let right = hist(|s| s.inside_right);

    let dir = &cfg.output_dir;
    let mut written = Vec::new();
    if cfg.formats.csv {
        for (name, h) in [("counts_inside.csv", &inside), ("counts_left.csv", &left), ("counts_right.csv", &right)] {
            let mut buf = Vec::new();
            write_histogram_csv(&mut buf, h)?;
            write(dir, name, buf, &mut written)?;
        }
    }
    if cfg.formats.json {
        let mut summary = header(cfg, "mc-counts", &sampler);
        summary["inside"] = stats(&inside);
        summary["left"] = stats(&left);
        summary["right"] = stats(&right);
        // NaN and infinity serialise as null
        summary["varianceRatioLeftRight"] = json!(left.variance() / right.variance());
        summary["failures"] = json!(c.failures);
        summary["failureRate"] = json!(c.failure_rate());
        let ev = cfg.evaluator()?;
        if ev.closed_form() == Some(ClosedForm::Hyperbolic) {
            let expected = expected_count_in_disk(cfg.degree, 1.0).map_err(|e| CliError::Numeric(e.to_string()))?;
            summary["expectedInside"] = json!(expected);
        }
        write(dir, "summary.json", to_json(&summary), &mut written)?;
    }
    Ok(written)
}

/// One radius and its `(θ, g)` samples.
pub type Curve = (f64, Vec<(f64, f64)>);

/// `g_r(θ) = π (1 - r²)² ρ₁(r e^{iθ})` for every `r` in `rList` and `θ` on
/// the grid.
pub fn intensity_curves(cfg: &ExperimentConfig) -> CliResult<Vec<Curve>> {
    cfg.validate()?;
    let ev = cfg.evaluator()?;
    let truncated;
    let kernel: &(dyn CovarianceKernel + Sync) = match cfg.intensity.kernel {
        KernelChoice::Exact => &ev,
        KernelChoice::Truncated => {
            truncated = TruncatedKernel::new(&ev, cfg.degree);
            &truncated
        }
    };
    let thetas = cfg.intensity.theta_grid.angles();
    cfg.intensity
        .r_list
        .iter()
        .map(|&r| {
            let pts = thetas
                .par_iter()
                .map(|&t| {
                    let rho = rho1_ek(kernel, Complex64::from_polar(r, t))
                        .map_err(|e| CliError::Numeric(format!("r = {r}, θ = {t}: {e}")))?;
                    Ok((t, PI * (1.0 - r * r).powi(2) * rho))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok((r, pts))
        })
        .collect()
}

pub fn intensity(cfg: &ExperimentConfig) -> CliResult<Vec<PathBuf>> {
    cfg.validate()?;
    ensure_writable(&cfg.output_dir)?;
    let curves = intensity_curves(cfg)?;
    let dir = &cfg.output_dir;
    let mut written = Vec::new();
    if cfg.formats.csv {
        let mut s = String::from("theta,r,g\n");
        for (r, pts) in &curves {
            for (t, g) in pts {
                s.push_str(&format!("{t},{r},{g}\n"));
            }
        }
        write(dir, "intensity.csv", s, &mut written)?;
    }
    if cfg.formats.svg {
        write(dir, "intensity.svg", intensity_svg(&curves), &mut written)?;
    }
    Ok(written)
}

/// Picks the suite: the flag, then the config file, then `all`.
pub fn resolve_suite(flag: Option<&str>, config: Option<&VerifyConfig>) -> CliResult<Suite> {
    let name = flag.or_else(|| config.and_then(|c| c.suite.as_deref())).unwrap_or("all");
    name.parse().map_err(|e: gafzeros_core::GafError| CliError::Config(e.to_string()))
}

/// Runs a residual suite, prints its table and optionally writes
/// `verify.json` to `out`.
pub fn verify(suite: Suite, out: Option<&Path>) -> CliResult<Vec<PathBuf>> {
    if let Some(dir) = out {
        ensure_writable(dir)?;
    }
    let checks = run_suite(suite);
    print!("{}", format_table(&checks));
    let mut written = Vec::new();
    if let Some(dir) = out {
        let v = json!({ "passed": all_passed(&checks), "checks": checks });
        write(dir, "verify.json", to_json(&v), &mut written)?;
    }
    if !all_passed(&checks) {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        return Err(CliError::Verification(failed.join(", ")));
    }
    Ok(written)
}
