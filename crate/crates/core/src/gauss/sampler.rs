use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::linalg::CMatrix;
use crate::spectral::{ClosedForm, CovarianceEvaluator, SpectralMeasure};

use super::eig::psd_sqrt;
use super::source::ComplexNormalSource;

/// How the coefficient sequence `ξ_0, ξ_1, ...` is produced from i.i.d.
/// standard complex normals `ζ_k`.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefficientSampler {
    /// `ξ_k = ζ_k` (Lebesgue spectral measure).
    Iid,
    /// `ξ_{pn+k} = ξ_k` with independent `ξ_0..ξ_{n-1}` (uniform atoms on
    /// the `n`-th roots of unity).
    Periodic { period: usize },
    /// `ξ = A ζ` with `A² = (γ(j-k))` truncated to size `N + 1`.
    ToeplitzSqrt { sqrt: CMatrix, measure: SpectralMeasure },
}

impl CoefficientSampler {
    pub fn periodic(period: usize) -> Result<Self> {
        if period == 0 {
            return invalid("period must be at least 1");
        }
        Ok(Self::Periodic { period })
    }

    /// Square-root sampler for the degree-`degree` truncation of `ev`'s
    /// coefficient process.
    pub fn toeplitz_sqrt(ev: &CovarianceEvaluator, degree: usize) -> Result<Self> {
        let toeplitz = CMatrix::toeplitz(degree + 1, |k| ev.gamma(k));
        Ok(Self::ToeplitzSqrt {
            sqrt: psd_sqrt(&toeplitz)?,
            measure: ev.measure().clone(),
        })
    }

    /// The cheapest exact sampler for the measure behind `ev`.
    pub fn for_evaluator(ev: &CovarianceEvaluator, degree: usize) -> Result<Self> {
        match ev.closed_form() {
            Some(ClosedForm::Hyperbolic) => Ok(Self::Iid),
            Some(ClosedForm::Periodic(n)) => Self::periodic(n),
            _ => Self::toeplitz_sqrt(ev, degree),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Self::Iid => "iid".into(),
            Self::Periodic { period } => format!("periodic({period})"),
            Self::ToeplitzSqrt { .. } => "toeplitz-sqrt".into(),
        }
    }

    /// Spectral measure whose coefficient process this sampler realises.
    pub fn measure(&self) -> SpectralMeasure {
        match self {
            Self::Iid => SpectralMeasure::Lebesgue,
            Self::Periodic { period } => {
                SpectralMeasure::roots_of_unity(*period).expect("period validated on construction")
            }
            Self::ToeplitzSqrt { measure, .. } => measure.clone(),
        }
    }
}

/// Where a sampled polynomial came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub measure: SpectralMeasure,
    pub sampler: String,
    pub seed: u64,
}

/// One sampled truncation `ξ_0 + ξ_1 z + ... + ξ_N z^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GafPolynomial {
    pub coefficients: Vec<Complex64>,
    pub provenance: Provenance,
}

impl GafPolynomial {
    pub fn new(coefficients: Vec<Complex64>, provenance: Provenance) -> Result<Self> {
        if coefficients.is_empty() {
            return invalid("a polynomial needs at least one coefficient");
        }
        if coefficients.iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
            return invalid("all coefficients are zero");
        }
        Ok(Self {
            coefficients,
            provenance,
        })
    }

    /// Polynomial with explicit coefficients and no sampling history.
    pub fn from_coefficients(coefficients: Vec<Complex64>) -> Result<Self> {
        Self::new(
            coefficients,
            Provenance {
                measure: SpectralMeasure::Lebesgue,
                sampler: "explicit".into(),
                seed: 0,
            },
        )
    }

    /// Degree bound `N` (length minus one).
    pub fn degree_bound(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    n: usize,
    re: Vec<f64>,
    im: Vec<f64>,
    provenance: Provenance,
}

impl Serialize for GafPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialRepr {
            n: self.degree_bound(),
            re: self.coefficients.iter().map(|c| c.re).collect(),
            im: self.coefficients.iter().map(|c| c.im).collect(),
            provenance: self.provenance.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GafPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let r = PolynomialRepr::deserialize(d)?;
        if r.re.len() != r.n + 1 || r.im.len() != r.n + 1 {
            return Err(D::Error::custom("coefficient arrays must have length n + 1"));
        }
        let coefficients = r.re.iter().zip(&r.im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        GafPolynomial::new(coefficients, r.provenance).map_err(D::Error::custom)
    }
}

/// Draws the coefficients `ξ_0..ξ_N` of one truncated GAF.
pub fn sample_coefficients(
    sampler: &CoefficientSampler,
    degree: usize,
    src: &mut ComplexNormalSource,
) -> Result<GafPolynomial> {
    if let CoefficientSampler::ToeplitzSqrt { sqrt, .. } = sampler {
        if sqrt.dim() < degree + 1 {
            return invalid(format!(
                "square-root matrix has size {} but degree {degree} needs {}",
                sqrt.dim(),
                degree + 1
            ));
        }
    }
    let provenance = Provenance {
        measure: sampler.measure(),
        sampler: sampler.tag(),
        seed: src.seed(),
    };
    loop {
        let coefficients = match sampler {
            CoefficientSampler::Iid => src.draw(degree + 1),
            CoefficientSampler::Periodic { period } => {
                let base = src.draw(*period);
                (0..=degree).map(|k| base[k % period]).collect()
            }
            CoefficientSampler::ToeplitzSqrt { sqrt, .. } => {
                let zeta = src.draw(degree + 1);
                (0..=degree)
                    .map(|i| sqrt.row(i)[..=degree].iter().zip(&zeta).map(|(a, z)| a * z).sum())
                    .collect()
            }
        };
        // the all-zero event has probability zero; draw again if it happens
        if coefficients.iter().any(|c| *c != Complex64::new(0.0, 0.0)) {
            return GafPolynomial::new(coefficients, provenance);
        }
    }
}

/// Sample autocovariance at one lag with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalCovariance {
    pub value: Complex64,
    /// Standard error of the complex mean across samples.
    pub std_error: f64,
}

/// Averages `ξ_{j+lag} conj(ξ_j)` over positions and samples. Each sample's
/// positional average counts as one observation for the standard error.
pub fn empirical_covariance(samples: &[GafPolynomial], lag: usize) -> Result<EmpiricalCovariance> {
    if samples.len() < 2 {
        return invalid("need at least two samples");
    }
    let n = samples[0].degree_bound();
    if samples.iter().any(|p| p.degree_bound() != n) || lag > n {
        return invalid("samples must share a degree bound of at least the lag");
    }
    let per_sample: Vec<Complex64> = samples
        .iter()
        .map(|p| {
            let c = &p.coefficients;
            (0..=n - lag).map(|j| c[j + lag] * c[j].conj()).sum::<Complex64>() / (n - lag + 1) as f64
        })
        .collect();
    let m = per_sample.len() as f64;
    let value = per_sample.iter().sum::<Complex64>() / m;
    let var = per_sample.iter().map(|x| (x - value).norm_sqr()).sum::<f64>() / (m - 1.0);
    Ok(EmpiricalCovariance {
        value,
        std_error: (var / m).sqrt(),
    })
}
