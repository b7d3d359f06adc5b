use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, GafError, Result};

/// Tolerance for deciding that two normalised angles coincide.
pub const ANGLE_EPS: f64 = 1e-12;

/// Wraps an angle into `(-pi, pi]`.
pub fn normalize_angle(t: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let x = t - two_pi * ((t - PI) / two_pi).ceil();
    // (t - pi)/2pi can land an ulp above an integer
    if x <= -PI {
        x + two_pi
    } else {
        x
    }
}

/// A probability measure on the circle `(-pi, pi]`.
///
/// Construct through the validating constructors or from JSON; the JSON
/// form is tagged by `"type"`: `lebesgue`, `atoms`, `arc`, `density`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", try_from = "RawMeasure")]
pub enum SpectralMeasure {
    /// Normalised Lebesgue measure `dt / 2pi`.
    Lebesgue,
    /// Finitely many atoms with positive weights summing to one.
    Atoms { angles: Vec<f64>, weights: Vec<f64> },
    /// Normalised Lebesgue measure on the arc `[lo, hi]`.
    Arc { lo: f64, hi: f64 },
    /// Piecewise-linear density with respect to `dt`.
    Density { nodes: Vec<f64>, values: Vec<f64> },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum RawMeasure {
    Lebesgue,
    Atoms { angles: Vec<f64>, weights: Vec<f64> },
    Arc { lo: f64, hi: f64 },
    Density { nodes: Vec<f64>, values: Vec<f64> },
}

impl TryFrom<RawMeasure> for SpectralMeasure {
    type Error = GafError;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        match raw {
            RawMeasure::Lebesgue => Ok(Self::Lebesgue),
            RawMeasure::Atoms { angles, weights } => Self::atoms(angles, weights),
            RawMeasure::Arc { lo, hi } => Self::arc(lo, hi),
            RawMeasure::Density { nodes, values } => Self::density(nodes, values),
        }
    }
}

impl SpectralMeasure {
    pub fn lebesgue() -> Self {
        Self::Lebesgue
    }

    pub fn atoms(angles: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if angles.is_empty() || angles.len() != weights.len() {
            return invalid("atoms need matching, non-empty angle and weight lists");
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return invalid("atom weights must be positive");
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return invalid(format!("atom weights sum to {total}, expected 1"));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return invalid("atom angles must be finite");
        }
        let angles: Vec<f64> = angles.into_iter().map(normalize_angle).collect();
        for i in 0..angles.len() {
            for j in 0..i {
                let d = normalize_angle(angles[i] - angles[j]).abs();
                if d <= ANGLE_EPS {
                    return invalid(format!("atoms {j} and {i} coincide"));
                }
            }
        }
        Ok(Self::Atoms { angles, weights })
    }

    /// Uniform atoms at the `n`-th roots of unity, angles `2 pi k / n`.
    pub fn roots_of_unity(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("need at least one atom");
        }
        let angles = (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect();
        Self::atoms(angles, vec![1.0 / n as f64; n])
    }

    pub fn arc(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return invalid(format!("arc needs lo < hi, got [{lo}, {hi}]"));
        }
        if hi - lo > 2.0 * PI + ANGLE_EPS {
            return invalid("arc longer than the circle");
        }
        Ok(Self::Arc { lo, hi })
    }

    /// The half-circle arc `[-pi/2, pi/2]`.
    pub fn arc_half() -> Self {
        Self::Arc {
            lo: -PI / 2.0,
            hi: PI / 2.0,
        }
    }

    pub fn density(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != values.len() {
            return invalid("density needs at least two nodes with matching values");
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("density nodes must be strictly increasing");
        }
        if (nodes[0] + PI).abs() > 1e-9 || (nodes[nodes.len() - 1] - PI).abs() > 1e-9 {
            return invalid("density nodes must span [-pi, pi]");
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return invalid("density values must be nonnegative");
        }
        let mass: f64 = nodes
            .windows(2)
            .zip(values.windows(2))
            .map(|(t, v)| 0.5 * (v[0] + v[1]) * (t[1] - t[0]))
            .sum();
        if (mass - 1.0).abs() > 1e-8 {
            return invalid(format!("density integrates to {mass}, expected 1"));
        }
        Ok(Self::Density { nodes, values })
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Self::Atoms { .. })
    }

    /// Period `n` when the measure is the uniform measure on the `n`-th
    /// roots of unity.
    pub fn periodic_order(&self) -> Option<usize> {
        let Self::Atoms { angles, weights } = self else {
            return None;
        };
        let n = angles.len();
        let w = 1.0 / n as f64;
        if weights.iter().any(|x| (x - w).abs() > 1e-12) {
            return None;
        }
        let mut seen = vec![false; n];
        for &a in angles {
            let k = a * n as f64 / (2.0 * PI);
            let r = k.round();
            if (k - r).abs() > 1e-9 {
                return None;
            }
            let idx = (r as i64).rem_euclid(n as i64) as usize;
            if std::mem::replace(&mut seen[idx], true) {
                return None;
            }
        }
        Some(n)
    }

    /// Density with respect to `dt` at angle `t` (continuous measures only).
    pub fn density_at(&self, t: f64) -> Option<f64> {
        match self {
            Self::Lebesgue => Some(1.0 / (2.0 * PI)),
            Self::Atoms { .. } => None,
            Self::Arc { lo, hi } => {
                // arcs may extend past pi, so test the shifted copies too
                let inside = [-2.0 * PI, 0.0, 2.0 * PI]
                    .iter()
                    .any(|s| t + s >= *lo && t + s <= *hi);
                Some(if inside { 1.0 / (hi - lo) } else { 0.0 })
            }
            Self::Density { nodes, values } => {
                let t = normalize_angle(t);
                let i = nodes.partition_point(|&x| x <= t).clamp(1, nodes.len() - 1);
                let (t0, t1) = (nodes[i - 1], nodes[i]);
                let s = ((t - t0) / (t1 - t0)).clamp(0.0, 1.0);
                Some(values[i - 1] * (1.0 - s) + values[i] * s)
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
