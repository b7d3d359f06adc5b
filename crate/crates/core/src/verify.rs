//! Fixed-seed residual suites over the identities, correlation routes and
//! kernel properties. Each check reports its residual and tolerance.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corr::{
    default_order, permanent, rho1_ek, rho1_spectral, rho_n_direct, rho_n_spectral, verify_borchardt,
    verify_cauchy, verify_reproducing, verify_volume_formula, PointConfig, ReproducingVariant,
};
use crate::error::{invalid, GafError, Result};
use crate::gauss::hermitian_eig;
use crate::linalg::CMatrix;
use crate::spectral::{poisson, CovarianceEvaluator, CovarianceKernel, SpectralMeasure, TruncatedKernel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Correlations,
    Kernels,
    All,
}

impl FromStr for Suite {
    type Err = GafError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Self::Identities),
            "correlations" => Ok(Self::Correlations),
            "kernels" => Ok(Self::Kernels),
            "all" => Ok(Self::All),
            other => invalid(format!("unknown suite {other:?}")),
        }
    }
}

/// One line of a residual table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// A symmetric polynomial in the reproducing-formula checks.
type SymmetricPoly = dyn Fn(&[Complex64]) -> Complex64 + Sync;

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Self {
            suite,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, tolerance: f64, residual: Result<f64>) {
        let (residual, error) = match residual {
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            error,
        });
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Identities => identities(),
        Suite::Correlations => correlations(),
        Suite::Kernels => kernels(),
        Suite::All => {
            let mut all = identities();
            all.extend(correlations());
            all.extend(kernels());
            all
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Plain-text table with one row per check.
pub fn format_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
    let mut s = String::new();
    let _ = writeln!(s, "{:<13} {:<width$} {:>11} {:>9}  status", "suite", "check", "residual", "tol");
    for c in checks {
        let _ = write!(
            s,
            "{:<13} {:<width$} {:>11.3e} {:>9.1e}  {}",
            c.suite,
            c.name,
            c.residual,
            c.tolerance,
            if c.passed { "ok" } else { "FAIL" }
        );
        if let Some(e) = &c.error {
            let _ = write!(s, " ({e})");
        }
        s.push('\n');
    }
    s
}

fn disk_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(radius * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>())
}

fn disk_points(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| disk_point(rng, radius)).collect()
}

fn separated(rng: &mut ChaCha8Rng, n: usize, radius: f64, sep: f64) -> Vec<Complex64> {
    loop {
        let a = disk_points(rng, n, radius);
        if (1..n).all(|k| (0..k).all(|j| (a[k] - a[j]).norm() >= sep)) {
            return a;
        }
    }
}

fn brute_force_permanent(a: &CMatrix) -> Complex64 {
    fn go(a: &CMatrix, row: usize, used: &mut [bool]) -> Complex64 {
        if row == a.dim() {
            return Complex64::new(1.0, 0.0);
        }
        let mut total = Complex64::new(0.0, 0.0);
        for col in 0..a.dim() {
            if !used[col] {
                used[col] = true;
                total += a[(row, col)] * go(a, row + 1, used);
                used[col] = false;
            }
        }
        total
    }
    go(a, 0, &mut vec![false; a.dim()])
}

fn identities() -> Vec<Check> {
    let mut r = Recorder::new("identities");
    let mut rng = ChaCha8Rng::seed_from_u64(0x1de7);
    for n in 1..=6 {
        let (a, b) = (separated(&mut rng, n, 0.5, 0.15), separated(&mut rng, n, 0.5, 0.15));
        match verify_cauchy(&a, &b) {
            Ok(x) => {
                r.check(format!("cauchy determinant n={n}"), 1e-10, Ok(x.cauchy));
                r.check(format!("ordered product n={n}"), 1e-12, Ok(x.ordered_product));
                r.check(format!("inverse vandermonde n={n}"), 1e-12, Ok(x.inverse_vandermonde.unwrap_or(0.0)));
            }
            Err(e) => r.check(format!("cauchy determinant n={n}"), 1e-10, Err(e)),
        }
        r.check(format!("borchardt n={n}"), 1e-9, verify_borchardt(&a, &b));
    }
    let one = |_: &[Complex64]| Complex64::new(1.0, 0.0);
    let e1 = |z: &[Complex64]| z.iter().sum::<Complex64>();
    let w = Complex64::new(0.2, 0.3);
    let szego = move |z: &[Complex64]| z.iter().map(|zk| (1.0 - zk * w.conj()).inv()).product::<Complex64>();
    let configs = [
        vec![Complex64::new(0.3, -0.2)],
        vec![Complex64::new(0.3, 0.0), Complex64::new(0.0, -0.2)],
        vec![Complex64::new(0.5, 0.0), Complex64::new(0.25, 0.0)],
    ];
    let family: [(&str, &SymmetricPoly); 3] =
        [("1", &one), ("e1", &e1), ("szego", &szego)];
    for a in &configs {
        let pc = PointConfig::new(a.clone()).expect("fixed distinct points");
        for (qname, q) in family {
            for (vname, variant) in [("plain", ReproducingVariant::Plain), ("over_z", ReproducingVariant::OverZ)] {
                r.check(
                    format!("reproducing {vname} Q={qname} n={}", a.len()),
                    1e-10,
                    verify_reproducing(q, &pc, variant),
                );
            }
        }
    }
    let leb = CovarianceEvaluator::new(SpectralMeasure::Lebesgue).expect("lebesgue evaluator");
    for a in [
        vec![Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.5, 0.0)],
        vec![Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.4)],
    ] {
        let n = a.len();
        let res = PointConfig::new(a).and_then(|pc| verify_volume_formula(&leb, &pc, 64));
        r.check(format!("volume formula n={n}"), 1e-10, res.map(|v| v.worst()));
    }
    for n in 1..=6 {
        let m = CMatrix::from_fn(n, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let slow = brute_force_permanent(&m);
        r.check(
            format!("ryser vs brute force n={n}"),
            1e-12,
            permanent(&m).map(|p| (p - slow).norm() / slow.norm().max(1e-300)),
        );
    }
    r.checks
}

fn correlations() -> Vec<Check> {
    let mut r = Recorder::new("correlations");
    let leb = CovarianceEvaluator::new(SpectralMeasure::Lebesgue).expect("lebesgue evaluator");
    let arc = CovarianceEvaluator::new(SpectralMeasure::arc_half()).expect("arc evaluator");
    let atoms =
        CovarianceEvaluator::new(SpectralMeasure::roots_of_unity(4).expect("atoms")).expect("atom evaluator");
    let zero = Complex64::new(0.0, 0.0);

    r.check("rho1 lebesgue at 0", 1e-14, rho1_ek(&leb, zero).map(|v| (v - 1.0 / PI).abs()));
    for n in [1usize, 7, 100] {
        let tk = TruncatedKernel::new(&leb, n);
        let z = Complex64::new(0.5, 0.0);
        let x: f64 = 0.25;
        let m = (n + 1) as f64;
        let exact =
            (1.0 / (1.0 - x).powi(2) - m * m * x.powi(n as i32) / (1.0 - x.powi(n as i32 + 1)).powi(2)) / PI;
        r.check(format!("rho1 truncated N={n}"), 1e-10, rho1_ek(&tk, z).map(|v| (v - exact).abs()));
    }
    let target = 1.0 - 4.0 / (PI * PI);
    for rad in [0.25, 0.5, 0.75] {
        let z = Complex64::from_polar(rad, PI / 2.0);
        r.check(
            format!("arc constant r={rad}"),
            1e-8,
            rho1_ek(&arc, z).map(|v| (PI * (1.0 - rad * rad).powi(2) * v - target).abs()),
        );
    }
    for (name, ev) in [("lebesgue", &leb), ("arc", &arc), ("atoms4", &atoms)] {
        let mut worst: Result<f64> = Ok(0.0);
        for i in 1..=5 {
            let rad = 0.9 * i as f64 / 5.0;
            for j in 0..8 {
                let z = Complex64::from_polar(rad, -PI + 2.0 * PI * (j as f64 + 0.25) / 8.0);
                worst = worst.and_then(|w| {
                    let d = (rho1_ek(ev, z)? - rho1_spectral(ev, z)?).abs();
                    Ok(w.max(d))
                });
            }
        }
        r.check(format!("rho1 routes {name}"), 1e-8, worst);
    }
    let spot = PointConfig::new(vec![zero, Complex64::new(0.5, 0.0)]).expect("distinct points");
    let pv = 7.0 / (9.0 * PI * PI);
    r.check("rho2 direct (0, 0.5)", 1e-12, rho_n_direct(&leb, &spot).map(|v| (v.value - pv).abs()));
    r.check(
        "rho2 spectral (0, 0.5)",
        1e-4,
        rho_n_spectral(&leb, &spot, default_order(2)).map(|v| (v.value - pv).abs()),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    for k in 0..5 {
        let a = separated(&mut rng, 2, 0.6, 0.1);
        let bergman = CMatrix::from_fn(2, |p, q| (1.0 - a[p] * a[q].conj()).powi(-2)).det().re / (PI * PI);
        let pc = PointConfig::new(a).expect("separated points");
        r.check(
            format!("rho2 bergman pair {k}"),
            1e-4,
            rho_n_direct(&leb, &pc).and_then(|d| {
                let s = rho_n_spectral(&leb, &pc, default_order(2))?;
                Ok((d.value - bergman).abs().max((s.value - bergman).abs()))
            }),
        );
    }
    let pair = PointConfig::new(vec![Complex64::new(0.2, 0.0), Complex64::new(-0.3, 0.0)]).expect("points");
    let res = rho_n_direct(&arc, &pair).and_then(|d| {
        let s = rho_n_spectral(&arc, &pair, default_order(2))?;
        Ok(((d.value - s.value).abs(), s.error_estimate))
    });
    let tol = res.as_ref().map(|(_, e)| f64::max(1e-4, 3.0 * e)).unwrap_or(1e-4);
    r.check("rho2 routes arc", tol, res.map(|(d, _)| d));
    r.checks
}

fn kernels() -> Vec<Check> {
    let mut r = Recorder::new("kernels");
    let evaluators = [
        ("lebesgue", CovarianceEvaluator::new(SpectralMeasure::Lebesgue)),
        ("arc", CovarianceEvaluator::new(SpectralMeasure::arc_half())),
        ("atoms4", SpectralMeasure::roots_of_unity(4).and_then(CovarianceEvaluator::new)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e11);
    let points = disk_points(&mut rng, 12, 0.9);
    for (name, ev) in &evaluators {
        let ev = match ev {
            Ok(ev) => ev,
            Err(e) => {
                let e = GafError::InvalidArgument(e.to_string());
                r.check(format!("{name} evaluator"), 0.0, Err(e));
                continue;
            }
        };
        let mut sym: Result<f64> = Ok(0.0);
        for &z in &points {
            for &w in &points {
                sym = sym.and_then(|s| Ok(s.max((ev.kernel(z, w)? - ev.kernel(w, z)?.conj()).norm())));
            }
        }
        r.check(format!("{name} hermitian symmetry"), 1e-14, sym);

        let gram = (|| {
            let mut g = CMatrix::zeros(points.len());
            for (i, &z) in points.iter().enumerate() {
                for (j, &w) in points.iter().enumerate() {
                    g[(i, j)] = ev.kernel(z, w)?;
                }
            }
            let (eig, _) = hermitian_eig(&g)?;
            // negative part of the smallest eigenvalue, relative to the largest
            Ok((-eig[0]).max(0.0) / eig[eig.len() - 1])
        })();
        r.check(format!("{name} gram psd"), 1e-12, gram);

        let rule = ev.rule();
        let mut pois: Result<f64> = Ok(0.0);
        for &z in &points {
            pois = pois.and_then(|w| {
                let (rad, th) = z.to_polar();
                let mut integral = 0.0;
                for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
                    integral += wt * poisson(rad, th - t)?;
                }
                let k = ev.kernel(z, z)?.re;
                Ok(w.max((k * (1.0 - rad * rad) - integral).abs() / integral))
            });
        }
        // the rule's own error at |z| = 0.9 dominates for the midpoint rule
        r.check(format!("{name} poisson form"), 1e-9, pois);
    }
    if let Ok(q) = CovarianceEvaluator::quadrature_only(SpectralMeasure::Lebesgue, 256) {
        let mut worst: Result<f64> = Ok(0.0);
        for &z in &points {
            for &w in &points {
                worst = worst.and_then(|m| {
                    Ok(m.max((q.kernel(z, w)? - (1.0 - z * w.conj()).inv()).norm()))
                });
            }
        }
        r.check("lebesgue quadrature vs 1/(1-zw̄)", 1e-10, worst);
    }
    if let Ok(q) = CovarianceEvaluator::quadrature_only(SpectralMeasure::arc_half(), 256) {
        let worst = (1..=50)
            .map(|k| {
                let exact = 2.0 / PI * (k as f64 * PI / 2.0).sin() / k as f64;
                (q.gamma(k) - exact).norm()
            })
            .fold(0.0, f64::max);
        r.check("arc gamma(k) k<=50", 1e-12, Ok(worst));
    }
    r.checks
}
