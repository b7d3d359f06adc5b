use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gauss::{sample_coefficients, CoefficientSampler, ComplexNormalSource};

use super::roots::{find_roots, ZeroSet};

/// Position of a root relative to the circle `|z| = r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootClass {
    Inside,
    Boundary,
    Outside,
}

impl RootClass {
    pub fn of(z: Complex64, r: f64, tol: f64) -> Self {
        let a = z.norm();
        if (a - r).abs() <= tol {
            Self::Boundary
        } else if a < r {
            Self::Inside
        } else {
            Self::Outside
        }
    }

    /// Short code used in CSV output.
    pub fn code(self) -> &'static str {
        match self {
            Self::Inside => "in",
            Self::Boundary => "bd",
            Self::Outside => "out",
        }
    }
}

/// Disk and half-plane counts for one zero set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CountSummary {
    pub radius: f64,
    pub inside: usize,
    pub outside: usize,
    pub boundary: usize,
    /// Inside points with `Re z < 0`.
    pub inside_left: usize,
    /// Inside points with `Re z >= 0`.
    pub inside_right: usize,
}

impl CountSummary {
    pub fn total(&self) -> usize {
        self.inside + self.outside + self.boundary
    }
}

impl ZeroSet {
    /// Counts roots inside, on and outside `|z| = r`, splitting the inside
    /// ones by half-plane. Points on the imaginary axis go to the right.
    pub fn classify(&self, r: f64) -> Result<CountSummary> {
        if !(r > 0.0 && r.is_finite()) {
            return invalid(format!("radius must be positive, got {r}"));
        }
        let mut s = CountSummary {
            radius: r,
            ..Default::default()
        };
        for &z in &self.roots {
            match RootClass::of(z, r, self.boundary_tol) {
                RootClass::Inside => {
                    s.inside += 1;
                    if z.re < 0.0 {
                        s.inside_left += 1;
                    } else {
                        s.inside_right += 1;
                    }
                }
                RootClass::Boundary => s.boundary += 1,
                RootClass::Outside => s.outside += 1,
            }
        }
        Ok(s)
    }
}

/// Expected number of zeros of the degree-`n` hyperbolic truncation in the
/// disk of radius `r`, `r²/(1-r²) - (n+1) r^{2(n+1)}/(1-r^{2(n+1)})`.
///
/// Evaluated as `x K'(x)/K(x)` with `K(x) = sum_{k<=n} x^k`, `x = r²`, which
/// is the same function without the cancellation near `r = 1` and gives
/// exactly `n/2` there.
pub fn expected_count_in_disk(n: usize, r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return invalid(format!("radius must lie in (0, 1], got {r}"));
    }
    if r == 1.0 {
        return Ok(n as f64 / 2.0);
    }
    let x = r * r;
    let (mut num, mut den, mut pow) = (0.0, 0.0, 1.0);
    for k in 0..=n {
        num += k as f64 * pow;
        den += pow;
        pow *= x;
    }
    Ok(num / den)
}

/// A run that produced no zero set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunFailure {
    pub run: u64,
    pub seed: u64,
    pub message: String,
}

/// Per-run results of a Monte Carlo experiment, in run order.
#[derive(Clone, Debug)]
pub struct Census<T> {
    /// `(run, seed, value)` for every successful run.
    pub outcomes: Vec<(u64, u64, T)>,
    pub failures: Vec<RunFailure>,
}

impl<T> Census<T> {
    pub fn runs(&self) -> usize {
        self.outcomes.len() + self.failures.len()
    }

    pub fn failure_rate(&self) -> f64 {
        self.failures.len() as f64 / self.runs().max(1) as f64
    }
}

/// Samples `runs` polynomials with seeds `seed_base + run`, finds their
/// roots in parallel and maps each zero set through `f`. Failed runs are
/// reported and left out; nothing is retried.
pub fn census<T, F>(
    sampler: &CoefficientSampler,
    degree: usize,
    runs: u64,
    seed_base: u64,
    f: F,
) -> Result<Census<T>>
where
    T: Send,
    F: Fn(&ZeroSet) -> T + Sync,
{
    if runs == 0 {
        return invalid("runs must be at least 1");
    }
    if degree == 0 {
        return invalid("degree must be at least 1");
    }
    let results: Vec<(u64, u64, Result<T>)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let seed = seed_base.wrapping_add(run);
            let mut src = ComplexNormalSource::new(seed);
            let out = sample_coefficients(sampler, degree, &mut src).and_then(|p| find_roots(&p)).map(|z| f(&z));
            (run, seed, out)
        })
        .collect();
    let mut census = Census {
        outcomes: Vec::with_capacity(results.len()),
        failures: Vec::new(),
    };
    for (run, seed, out) in results {
        match out {
            Ok(v) => census.outcomes.push((run, seed, v)),
            Err(e) => census.failures.push(RunFailure {
                run,
                seed,
                message: e.to_string(),
            }),
        }
    }
    Ok(census)
}

/// Which roots a histogram counts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CountRegion {
    Disk { r: f64 },
    LeftHalfInside,
    RightHalfInside,
}

impl CountRegion {
    pub fn count(self, s: &CountSummary) -> usize {
        match self {
            Self::Disk { .. } => s.inside,
            Self::LeftHalfInside => s.inside_left,
            Self::RightHalfInside => s.inside_right,
        }
    }

    fn radius(self) -> f64 {
        match self {
            Self::Disk { r } => r,
            _ => 1.0,
        }
    }
}

/// Integer-valued histogram with its sample statistics.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CountHistogram {
    pub frequencies: BTreeMap<usize, u64>,
}

impl CountHistogram {
    pub fn from_counts(counts: impl IntoIterator<Item = usize>) -> Self {
        let mut frequencies = BTreeMap::new();
        for c in counts {
            *frequencies.entry(c).or_insert(0) += 1;
        }
        Self { frequencies }
    }

    pub fn samples(&self) -> u64 {
        self.frequencies.values().sum()
    }

    pub fn mean(&self) -> f64 {
        let n = self.samples() as f64;
        self.frequencies.iter().map(|(&k, &f)| k as f64 * f as f64).sum::<f64>() / n
    }

    /// Unbiased sample variance; zero for a single sample.
    pub fn variance(&self) -> f64 {
        let n = self.samples() as f64;
        if n < 2.0 {
            return 0.0;
        }
        let m = self.mean();
        self.frequencies
            .iter()
            .map(|(&k, &f)| f as f64 * (k as f64 - m).powi(2))
            .sum::<f64>()
            / (n - 1.0)
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.samples() as f64).sqrt()
    }
}

/// Histogram of per-run counts in `region` plus the runs that failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McCounts {
    pub region: CountRegion,
    pub histogram: CountHistogram,
    pub failures: Vec<RunFailure>,
}

pub fn mc_count_histogram(
    sampler: &CoefficientSampler,
    degree: usize,
    runs: u64,
    seed_base: u64,
    region: CountRegion,
) -> Result<McCounts> {
    let r = region.radius();
    if !(r > 0.0 && r.is_finite()) {
        return invalid(format!("radius must be positive, got {r}"));
    }
    let c = census(sampler, degree, runs, seed_base, |z| {
        z.classify(r).map(|s| region.count(&s)).expect("radius validated")
    })?;
    Ok(McCounts {
        region,
        histogram: CountHistogram::from_counts(c.outcomes.iter().map(|o| o.2)),
        failures: c.failures,
    })
}
