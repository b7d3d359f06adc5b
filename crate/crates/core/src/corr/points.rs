use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Smallest pairwise distance accepted between correlation points.
pub const MIN_SEPARATION: f64 = 1e-8;

/// Pairwise distinct points of the open unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig {
    points: Vec<Complex64>,
    min_separation: f64,
}

impl PointConfig {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return invalid("a point configuration needs at least one point");
        }
        if let Some(z) = points.iter().find(|z| !(z.norm() < 1.0)) {
            return invalid(format!("point {z} is not inside the unit disk"));
        }
        let mut min_separation = f64::INFINITY;
        for k in 1..points.len() {
            for j in 0..k {
                min_separation = min_separation.min((points[k] - points[j]).norm());
            }
        }
        if min_separation < MIN_SEPARATION {
            return invalid(format!("points closer than {MIN_SEPARATION:e}: {min_separation:e}"));
        }
        Ok(Self { points, min_separation })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest pairwise distance, infinite for a single point.
    pub fn min_separation(&self) -> f64 {
        self.min_separation
    }
}

/// Route by which a correlation value was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    EdelmanKostlan,
    SpectralRho1,
    DirectPermanent,
    SpectralPermanent,
}

/// A correlation value `ρ_n(a)` with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationResult {
    pub points: Vec<Complex64>,
    pub value: f64,
    pub method: Method,
    /// Quadrature refinement difference, or zero for closed-form routes.
    pub error_estimate: f64,
    pub diagnostics: BTreeMap<String, f64>,
    /// Set when the error estimate exceeds `1e-3 * value`.
    pub warning: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ResultRepr {
    n: usize,
    points: Vec<[f64; 2]>,
    method: Method,
    value: f64,
    error: f64,
    diagnostics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

impl CorrelationResult {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ResultRepr {
            n: self.n(),
            points: self.points.iter().map(|z| [z.re, z.im]).collect(),
            method: self.method,
            value: self.value,
            error: self.error_estimate,
            diagnostics: self.diagnostics.clone(),
            warning: self.warning.clone(),
        })
        .expect("result serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: ResultRepr = serde_json::from_str(s)?;
        if r.points.len() != r.n {
            return invalid("point count does not match n");
        }
        Ok(Self {
            points: r.points.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            value: r.value,
            method: r.method,
            error_estimate: r.error,
            diagnostics: r.diagnostics,
            warning: r.warning,
        })
    }
}
