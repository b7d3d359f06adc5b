use num_complex::Complex64;

use crate::error::{invalid, GafError, Result};
use crate::linalg::CMatrix;

const MAX_SWEEPS: usize = 64;
const OFF_TOL: f64 = 1e-12;
/// Smallest eigenvalue tolerated (and clamped to zero) by [`psd_sqrt`].
pub const PSD_CLAMP: f64 = -1e-8;

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and a unitary matrix whose columns
/// are the matching eigenvectors, so that `H = V diag(λ) V*`.
pub fn hermitian_eig(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = h.dim();
    let norm = h.frobenius_norm();
    if h.hermitian_defect() > 1e-10 * norm.max(1.0) {
        return invalid("matrix is not Hermitian");
    }
    let mut a: Vec<Complex64> = CMatrix::from_fn(n, |i, j| 0.5 * (h[(i, j)] + h[(j, i)].conj()))
        .as_slice()
        .to_vec();
    for i in 0..n {
        a[i * n + i].im = 0.0;
    }
    let mut v = CMatrix::identity(n).as_slice().to_vec();

    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let target = OFF_TOL * norm;
    let mut achieved = off(&a);
    let mut sweeps = 0;
    while achieved > target {
        if sweeps == MAX_SWEEPS {
            return Err(GafError::NumericFailure {
                what: format!("Jacobi did not converge in {MAX_SWEEPS} sweeps"),
                achieved,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        achieved = off(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = CMatrix::from_fn(n, |r, c| v[r * n + order[c]]);
    Ok((values, vectors))
}

/// Annihilates `a[p][q]` with the unitary rotation
/// `J = [[c, s e], [-s ē, c]]` on the `(p, q)` plane, `A <- J* A J`, `V <- V J`.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let e = apq / mag;
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let se = e * s;
    let sec = se.conj();

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - sec * akq;
        a[k * n + q] = se * akp + akq * c;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - se * aqk;
        a[q * n + k] = sec * apk + aqk * c;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * c - sec * vkq;
        v[k * n + q] = se * vkp + vkq * c;
    }
}

/// The unique Hermitian PSD square root `A` with `A² = H`.
///
/// Eigenvalues down to `-1e-8` are clamped to zero; anything more negative
/// is reported as [`GafError::NotPsd`].
pub fn psd_sqrt(h: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = hermitian_eig(h)?;
    if let Some(&min) = values.first() {
        if min < PSD_CLAMP {
            return Err(GafError::NotPsd { eigenvalue: min });
        }
    }
    let roots: Vec<f64> = values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    Ok(reassemble(&vectors, &roots))
}

/// `V diag(d) V*`.
pub fn reassemble(vectors: &CMatrix, d: &[f64]) -> CMatrix {
    let n = vectors.dim();
    let mut scaled = vectors.clone();
    for i in 0..n {
        for j in 0..n {
            scaled[(i, j)] *= d[j];
        }
    }
    &scaled * &vectors.adjoint()
}
