use std::f64::consts::PI;

use crate::error::{invalid, Result};

use super::measure::SpectralMeasure;

/// Nodes and weights integrating against a spectral measure.
///
/// Weights sum to one, so the rule integrates constants exactly against the
/// probability measure.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<T>(&self, mut f: impl FnMut(f64) -> T) -> T
    where
        T: std::ops::Mul<f64, Output = T> + std::iter::Sum,
    {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| f(t) * w)
            .sum()
    }
}

/// Builds the quadrature rule of order `m` for `measure`.
///
/// Lebesgue uses the periodic midpoint rule, arcs use Gauss-Legendre on the
/// arc itself, atoms are exact and tabulated densities use a composite
/// midpoint rule on the refined mesh.
pub fn build_rule(measure: &SpectralMeasure, m: usize) -> Result<QuadratureRule> {
    if !measure.is_atomic() && m < 2 {
        return invalid(format!("quadrature order {m} < 2 for a continuous measure"));
    }
    let (nodes, weights) = match measure {
        SpectralMeasure::Lebesgue => {
            let nodes = (0..m)
                .map(|j| -PI + 2.0 * PI * (j as f64 + 0.5) / m as f64)
                .collect();
            (nodes, vec![1.0 / m as f64; m])
        }
        SpectralMeasure::Atoms { angles, weights } => (angles.clone(), weights.clone()),
        SpectralMeasure::Arc { lo, hi } => {
            let (x, w) = gauss_legendre(m);
            let half = 0.5 * (hi - lo);
            let mid = 0.5 * (hi + lo);
            let nodes = x.iter().map(|xi| mid + half * xi).collect();
            // reference weights sum to 2
            let weights = normalized(w.iter().map(|wi| 0.5 * wi).collect());
            (nodes, weights)
        }
        SpectralMeasure::Density { nodes: mesh, .. } => {
            let cells = mesh.len() - 1;
            let per_cell = m.div_ceil(cells).max(1);
            let mut nodes = Vec::with_capacity(cells * per_cell);
            let mut weights = Vec::with_capacity(cells * per_cell);
            for c in 0..cells {
                let h = (mesh[c + 1] - mesh[c]) / per_cell as f64;
                for s in 0..per_cell {
                    let t = mesh[c] + (s as f64 + 0.5) * h;
                    let f = measure.density_at(t).expect("density is continuous");
                    if f > 0.0 {
                        nodes.push(t);
                        weights.push(f * h);
                    }
                }
            }
            if nodes.is_empty() {
                return invalid("density vanishes on every quadrature cell");
            }
            (nodes, normalized(weights))
        }
    };
    Ok(QuadratureRule {
        nodes,
        weights,
        order: m,
    })
}

fn normalized(mut w: Vec<f64>) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    w
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` (weights sum to 2).
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let half = m.div_ceil(2);
    for i in 0..half {
        let mut z = (PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(m, z);
                dp = d;
                break;
            }
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;

    #[test]
    fn lebesgue_midpoint_nodes() {
        let r = build_rule(&SpectralMeasure::Lebesgue, 4).unwrap();
        let expected = [-0.75 * PI, -0.25 * PI, 0.25 * PI, 0.75 * PI];
        for (a, b) in r.nodes.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(r.weights, vec![0.25; 4]);
    }

    #[test]
    fn atomic_rule_is_exact() {
        let m = SpectralMeasure::atoms(vec![0.0, PI], vec![0.5, 0.5]).unwrap();
        for order in [0, 1, 7] {
            let r = build_rule(&m, order).unwrap();
            assert_eq!(r.nodes, vec![0.0, PI]);
            assert_eq!(r.weights, vec![0.5, 0.5]);
        }
    }

    #[test]
    fn low_order_rejected_for_continuous_measures() {
        assert!(build_rule(&SpectralMeasure::Lebesgue, 1).is_err());
        assert!(build_rule(&SpectralMeasure::arc_half(), 0).is_err());
    }

    #[test]
    fn weights_sum_to_one() {
        let flat = vec![1.0 / (2.0 * PI); 5];
        let nodes = vec![-PI, -1.0, 0.0, 2.0, PI];
        let measures = [
            SpectralMeasure::Lebesgue,
            SpectralMeasure::arc_half(),
            SpectralMeasure::arc(0.3, 2.9).unwrap(),
            SpectralMeasure::density(nodes, flat).unwrap(),
        ];
        for m in &measures {
            for order in [2, 17, 64, 256] {
                let r = build_rule(m, order).unwrap();
                let s: f64 = r.weights.iter().sum();
                assert!((s - 1.0).abs() < 1e-12, "{m:?} {order}: {s}");
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        // exact up to degree 19
        for deg in 0..20u32 {
            let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "degree {deg}: {q} vs {exact}");
        }
    }

    #[test]
    fn arc_rule_reproduces_first_autocovariance() {
        let r = build_rule(&SpectralMeasure::arc_half(), 64).unwrap();
        let g1: Complex64 = r.integrate(|t| Complex64::from_polar(1.0, -t));
        assert!((g1 - Complex64::new(2.0 / PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tabulated_flat_density_matches_lebesgue_moments() {
        let nodes: Vec<f64> = (0..=8).map(|k| -PI + k as f64 * PI / 4.0).collect();
        let m = SpectralMeasure::density(nodes, vec![1.0 / (2.0 * PI); 9]).unwrap();
        let r = build_rule(&m, 256).unwrap();
        assert!(r.len() >= 256);
        for k in 1..5 {
            let g: Complex64 = r.integrate(|t| Complex64::from_polar(1.0, -(k as f64) * t));
            assert!(g.norm() < 1e-12);
        }
    }
}
