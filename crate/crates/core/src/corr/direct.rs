use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{GafError, Result};
use crate::linalg::CMatrix;
use crate::spectral::CovarianceKernel;

use super::permanent::permanent;
use super::points::{CorrelationResult, Method, PointConfig};

/// Gram determinants at or below this are treated as singular.
pub const GRAM_DET_MIN: f64 = 1e-12;
pub const MAX_DIRECT_ORDER: usize = 4;

/// First intensity `(K ∂z∂w̄K - ∂zK ∂w̄K) / (π K²)` at `w = z`.
pub fn rho1_ek<K: CovarianceKernel + ?Sized>(kernel: &K, z: Complex64) -> Result<f64> {
    let d = kernel.derivatives(z, z)?;
    let k = d.k.re;
    if !(k > 0.0) {
        return Err(GafError::DegenerateKernel { value: k });
    }
    Ok(((d.k * d.dz_dwbar - d.dz * d.dwbar) / (PI * k * k)).re)
}

/// `det(K(a_j, a_k))`, rejecting near-singular configurations.
fn gram<K: CovarianceKernel + ?Sized>(kernel: &K, a: &[Complex64]) -> Result<(CMatrix, f64)> {
    let n = a.len();
    let mut g = CMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            g[(j, k)] = kernel.kernel(a[j], a[k])?;
        }
    }
    let det = g.det().re;
    if !(det > GRAM_DET_MIN) {
        return Err(GafError::IllConditioned { det });
    }
    Ok((g, det))
}

/// Bordered matrix with `a_0 = z` in the row slot and `a_0 = w` in the column slot.
fn bordered(g: &CMatrix, corner: Complex64, row: &[Complex64], col: &[Complex64]) -> CMatrix {
    let n = g.dim();
    CMatrix::from_fn(n + 1, |i, j| match (i, j) {
        (0, 0) => corner,
        (0, k) => row[k - 1],
        (j, 0) => col[j - 1],
        (j, k) => g[(j - 1, k - 1)],
    })
}

/// Kernel of the GAF conditioned to vanish at `a`, as a ratio of the
/// bordered Gram determinant to the Gram determinant.
pub fn conditional_kernel<K: CovarianceKernel + ?Sized>(
    kernel: &K,
    a: &PointConfig,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    let a = a.points();
    let (g, det) = gram(kernel, a)?;
    let row = a.iter().map(|&ak| kernel.kernel(z, ak)).collect::<Result<Vec<_>>>()?;
    let col = a.iter().map(|&aj| kernel.kernel(aj, w)).collect::<Result<Vec<_>>>()?;
    Ok(bordered(&g, kernel.kernel(z, w)?, &row, &col).det() / det)
}

/// The same kernel built one point at a time,
/// `K^{a_1..a_n} = (K^{a_1..a_{n-1}})^{a_n}`.
pub fn conditional_kernel_inductive<K: CovarianceKernel + ?Sized>(
    kernel: &K,
    a: &PointConfig,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    fn step<K: CovarianceKernel + ?Sized>(
        kernel: &K,
        a: &[Complex64],
        z: Complex64,
        w: Complex64,
    ) -> Result<Complex64> {
        let Some((&last, rest)) = a.split_last() else {
            return kernel.kernel(z, w);
        };
        let kaa = step(kernel, rest, last, last)?;
        if !(kaa.re > GRAM_DET_MIN) {
            return Err(GafError::IllConditioned { det: kaa.re });
        }
        Ok(step(kernel, rest, z, w)? - step(kernel, rest, z, last)? * step(kernel, rest, last, w)? / kaa)
    }
    step(kernel, a.points(), z, w)
}

/// `ρ_n(a) = per(∂z∂w̄ K^a(a_p, a_q)) / (πⁿ det K(a_j, a_k))`.
///
/// `∂z∂w̄` of the bordered determinant only touches its first row and
/// column, so it is the determinant of the bordered matrix with
/// `∂z∂w̄K`, `∂zK` and `∂w̄K` in the border.
pub fn rho_n_direct<K: CovarianceKernel + ?Sized>(kernel: &K, a: &PointConfig) -> Result<CorrelationResult> {
    let n = a.len();
    if n > MAX_DIRECT_ORDER {
        return Err(GafError::SizeLimit {
            n,
            max: MAX_DIRECT_ORDER,
        });
    }
    let pts = a.points();
    let (g, det) = gram(kernel, pts)?;
    let mut d = Vec::with_capacity(n * n);
    for &ap in pts {
        for &aq in pts {
            d.push(kernel.derivatives(ap, aq)?);
        }
    }
    let at = |p: usize, q: usize| &d[p * n + q];
    let mixed = CMatrix::from_fn(n, |p, q| {
        let row: Vec<Complex64> = (0..n).map(|k| at(p, k).dz).collect();
        let col: Vec<Complex64> = (0..n).map(|j| at(j, q).dwbar).collect();
        bordered(&g, at(p, q).dz_dwbar, &row, &col).det() / det
    });
    let per = permanent(&mixed)?;
    let value = per / (PI.powi(n as i32) * det);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("det_gram".into(), det);
    diagnostics.insert("per_re".into(), per.re);
    diagnostics.insert("per_im".into(), per.im);
    Ok(CorrelationResult {
        points: pts.to_vec(),
        value: value.re,
        method: Method::DirectPermanent,
        error_estimate: 0.0,
        diagnostics,
        warning: None,
    })
}
