use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{GafError, Result};
use crate::linalg::{factorial, vandermonde_sq_abs, CMatrix};
use crate::spectral::{build_rule, CovarianceEvaluator, QuadratureRule};

use super::permanent::permanent;
use super::points::{CorrelationResult, Method, PointConfig};

/// Largest tensor dimension evaluated by quadrature.
pub const MAX_TENSOR_DIM: usize = 4;

/// Default orders per dimension for `T^{n+1}` in [`rho_n_spectral`].
pub fn default_order(n: usize) -> usize {
    match n {
        0 | 1 => 128,
        2 => 64,
        _ => 48,
    }
}

/// Sums `f(index, acc)` over every multi-index in `[0, m)^dims`.
///
/// The outermost index is split across threads; the per-slice partial sums
/// are added in index order, so the result does not depend on the thread
/// count.
pub(crate) fn tensor_accumulate<F>(m: usize, dims: usize, width: usize, f: F) -> Vec<Complex64>
where
    F: Fn(&[usize], &mut [Complex64]) + Sync,
{
    assert!(dims >= 1);
    let slices: Vec<Vec<Complex64>> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![Complex64::new(0.0, 0.0); width];
            let mut idx = vec![0usize; dims];
            idx[0] = first;
            loop {
                f(&idx, &mut acc);
                // odometer over the trailing indices
                let mut d = dims - 1;
                loop {
                    if d == 0 {
                        return acc;
                    }
                    idx[d] += 1;
                    if idx[d] < m {
                        break;
                    }
                    idx[d] = 0;
                    d -= 1;
                }
            }
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); width];
    for s in slices {
        for (t, v) in total.iter_mut().zip(s) {
            *t += v;
        }
    }
    total
}

/// Per-node data shared by the tensor integrands.
struct Nodes {
    phases: Vec<Complex64>,
    /// `w_i * prod_j |s(a_j, t_i)|^2`
    weighted: Vec<f64>,
    /// `s(a_p, t_i)` stored as `[p][i]`
    szego: Vec<Vec<Complex64>>,
}

impl Nodes {
    fn new(rule: &QuadratureRule, a: &[Complex64]) -> Self {
        let phases: Vec<Complex64> = rule.nodes.iter().map(|&t| Complex64::from_polar(1.0, -t)).collect();
        let szego: Vec<Vec<Complex64>> = a
            .iter()
            .map(|&ap| phases.iter().map(|e| (Complex64::new(1.0, 0.0) - ap * e).inv()).collect())
            .collect();
        let weighted = (0..phases.len())
            .map(|i| rule.weights[i] * szego.iter().map(|s| s[i].norm_sqr()).product::<f64>())
            .collect();
        Self {
            phases,
            weighted,
            szego,
        }
    }

    /// `|V(e^{-it})|^2 prod_k w_k |S(a, t_k)|^2` at one multi-index.
    fn density(&self, idx: &[usize]) -> f64 {
        let mut v = 1.0;
        for k in 1..idx.len() {
            for j in 0..k {
                v *= (self.phases[idx[k]] - self.phases[idx[j]]).norm_sqr();
            }
        }
        v * idx.iter().map(|&i| self.weighted[i]).product::<f64>()
    }
}

fn check_dim(dims: usize) -> Result<()> {
    if dims > MAX_TENSOR_DIM {
        return Err(GafError::SizeLimit {
            n: dims,
            max: MAX_TENSOR_DIM,
        });
    }
    Ok(())
}

/// `μ_a(Tⁿ) = (1/n!) ∫ |V(e^{-it})|² |S(a,t)|² F^{⊗n}(dt)` by tensor quadrature
/// of order `m`.
pub fn mu_mass(ev: &CovarianceEvaluator, a: &PointConfig, m: usize) -> Result<f64> {
    let n = a.len();
    if n > 3 {
        return Err(GafError::SizeLimit { n, max: 3 });
    }
    let rule = build_rule(ev.measure(), m)?;
    Ok(mu_on_rule(&rule, a.points()))
}

fn mu_on_rule(rule: &QuadratureRule, a: &[Complex64]) -> f64 {
    let nodes = Nodes::new(rule, a);
    let n = a.len();
    let sum = tensor_accumulate(rule.len(), n, 1, |idx, acc| {
        acc[0] += nodes.density(idx);
    });
    sum[0].re / factorial(n)
}

/// Integrals over `T^{n+1}` against `μ̃_a`: the mass and the matrix
/// `J_pq = ∫ S(a_p,t̃) conj(S(a_q,t̃)) μ̃_a(dt̃)`.
fn palm_moments(rule: &QuadratureRule, a: &[Complex64]) -> (f64, CMatrix) {
    let nodes = Nodes::new(rule, a);
    let n = a.len();
    let dims = n + 1;
    let sum = tensor_accumulate(rule.len(), dims, 1 + n * n, |idx, acc| {
        let dens = nodes.density(idx);
        if dens == 0.0 {
            return;
        }
        acc[0] += dens;
        let mut s = [Complex64::new(0.0, 0.0); MAX_TENSOR_DIM];
        for (sp, out) in nodes.szego.iter().zip(&mut s) {
            *out = idx.iter().map(|&i| sp[i]).product();
        }
        for p in 0..n {
            let sp = s[p] * dens;
            for q in 0..n {
                acc[1 + p * n + q] += sp * s[q].conj();
            }
        }
    });
    let norm = factorial(dims);
    let j = CMatrix::from_fn(n, |p, q| sum[1 + p * n + q] / norm);
    (sum[0].re / norm, j)
}

struct SpectralParts {
    value: f64,
    mu: f64,
    mu_tilde: f64,
    per_ka: Complex64,
}

fn spectral_value(rule: &QuadratureRule, a: &[Complex64]) -> Result<SpectralParts> {
    let n = a.len();
    let mu = mu_on_rule(rule, a);
    let (mu_tilde, j) = palm_moments(rule, a);
    let ka = CMatrix::from_fn(n, |p, q| j[(p, q)] / mu_tilde);
    let per_ka = permanent(&ka)?;
    let value = vandermonde_sq_abs(a) * mu_tilde.powi(n as i32) / mu.powi(n as i32 + 1) * per_ka.re
        / PI.powi(n as i32);
    Ok(SpectralParts {
        value,
        mu,
        mu_tilde,
        per_ka,
    })
}

/// `ρ_n(a) = |V(a)|² μ̃_a(T^{n+1})ⁿ / μ_a(Tⁿ)^{n+1} · per(K_a(a_p, a_q)) / πⁿ`
/// with every integral on an order-`m` tensor grid. The error estimate is
/// the change from the order-`m/2` grid.
pub fn rho_n_spectral(ev: &CovarianceEvaluator, a: &PointConfig, m: usize) -> Result<CorrelationResult> {
    let n = a.len();
    check_dim(n + 1)?;
    let measure = ev.measure();
    let fine = spectral_value(&build_rule(measure, m)?, a.points())?;
    let coarse = spectral_value(&build_rule(measure, (m / 2).max(2))?, a.points())?;
    let error_estimate = (fine.value - coarse.value).abs();
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("mu".into(), fine.mu);
    diagnostics.insert("mu_tilde".into(), fine.mu_tilde);
    diagnostics.insert("per_ka_re".into(), fine.per_ka.re);
    diagnostics.insert("per_ka_im".into(), fine.per_ka.im);
    diagnostics.insert("vandermonde_sq".into(), vandermonde_sq_abs(a.points()));
    diagnostics.insert("order".into(), m as f64);
    let warning = (error_estimate > 1e-3 * fine.value.abs())
        .then(|| format!("quadrature not converged: estimate {error_estimate:e} at order {m}"));
    Ok(CorrelationResult {
        points: a.points().to_vec(),
        value: fine.value,
        method: Method::SpectralPermanent,
        error_estimate,
        diagnostics,
        warning,
    })
}

/// Order used by [`rho1_spectral`] at radius `r`: enough nodes for the
/// periodic rule's aliasing term `r^m` to fall below rounding.
pub fn rho1_spectral_order(r: f64) -> usize {
    let m = if r <= 0.0 { 128.0 } else { (-40.0 / r.ln()).ceil() };
    (m.clamp(128.0, 4096.0) as usize).next_multiple_of(2)
}

/// First intensity from the double integral
/// `(2π K²)⁻¹ ∬ |e^{-it} - e^{-iu}|² |s(z,t) s(z,u)|⁴ F(dt) F(du)`, with
/// `K(z,z)` integrated on the same rule.
pub fn rho1_spectral(ev: &CovarianceEvaluator, z: Complex64) -> Result<f64> {
    rho1_spectral_with_order(ev, z, rho1_spectral_order(z.norm()))
}

pub fn rho1_spectral_with_order(ev: &CovarianceEvaluator, z: Complex64, m: usize) -> Result<f64> {
    let a = PointConfig::new(vec![z])?;
    let rule = build_rule(ev.measure(), m)?;
    let k = mu_on_rule(&rule, a.points());
    if !(k > 0.0) {
        return Err(GafError::DegenerateKernel { value: k });
    }
    let (_, j) = palm_moments(&rule, a.points());
    Ok(j[(0, 0)].re / (PI * k * k))
}

/// `μ̃_a(T^{n+1})` and `∫ S(z,t̃) conj(S(w,t̃)) μ̃_a(dt̃)` on one tensor grid.
pub(crate) fn palm_pair(rule: &QuadratureRule, a: &[Complex64], z: Complex64, w: Complex64) -> (f64, Complex64) {
    let nodes = Nodes::new(rule, a);
    let cross: Vec<Complex64> = nodes
        .phases
        .iter()
        .map(|e| ((Complex64::new(1.0, 0.0) - z * e) * (Complex64::new(1.0, 0.0) - w * e).conj()).inv())
        .collect();
    let dims = a.len() + 1;
    let sum = tensor_accumulate(rule.len(), dims, 2, |idx, acc| {
        let dens = nodes.density(idx);
        acc[0] += dens;
        acc[1] += dens * idx.iter().map(|&i| cross[i]).product::<Complex64>();
    });
    let norm = factorial(dims);
    (sum[0].re / norm, sum[1] / norm)
}
