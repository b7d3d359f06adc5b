use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, GafError, Result};
use crate::gauss::{GafPolynomial, Provenance};

/// Boundary tolerance used by [`ZeroSet::classify`] unless overridden.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;
/// Relative backward-error gate every accepted root must pass.
pub const RESIDUAL_BOUND: f64 = 1e-8;

const MAX_ITERATIONS: usize = 200;
const STEP_TOL: f64 = 1e-13;

/// Roots of one sampled polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    /// One entry per root, with multiplicity. Exact zero roots coming from
    /// vanishing low-order coefficients are stored as `0`.
    pub roots: Vec<Complex64>,
    pub boundary_tol: f64,
    pub provenance: Provenance,
    /// Worst `|p(root)| / (max|ξ| max(1,|root|)^deg)` over all roots.
    pub backward_error: f64,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn with_boundary_tol(mut self, tol: f64) -> Self {
        self.boundary_tol = tol;
        self
    }
}

/// Backward error of `root` relative to the coefficient scale.
pub fn backward_error(coefficients: &[Complex64], root: Complex64) -> f64 {
    let deg = coefficients.len() as i32 - 1;
    let scale = coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max) * root.norm().max(1.0).powi(deg);
    horner(coefficients, root).norm() / scale
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// `p(z) / p'(z)`, evaluated through the reversed polynomial when `|z| > 1`
/// so that Horner never multiplies by large powers.
fn newton_ratio(c: &[Complex64], z: Complex64) -> Complex64 {
    let d = c.len() - 1;
    let zero = Complex64::new(0.0, 0.0);
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (zero, zero);
        for a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        if p == zero {
            return zero;
        }
        p / dp
    } else {
        // p(z) = z^d q(y), y = 1/z, q(y) = sum c_{d-k} y^k
        let y = z.inv();
        let (mut q, mut dq) = (zero, zero);
        for a in c {
            dq = dq * y + q;
            q = q * y + a;
        }
        if q == zero {
            return zero;
        }
        (y * (d as f64 - y * dq / q)).inv()
    }
}

/// All roots of `p`. Aberth–Ehrlich iteration with a companion-matrix
/// fallback; every root must pass the backward-error gate.
pub fn find_roots(p: &GafPolynomial) -> Result<ZeroSet> {
    let c = &p.coefficients;
    let Some(top) = c.iter().rposition(|a| a.norm() != 0.0) else {
        return invalid("all coefficients are zero");
    };
    if top == 0 {
        return invalid("effective degree is zero");
    }
    let low = c.iter().position(|a| a.norm() != 0.0).unwrap_or(0);
    let reduced = &c[low..=top];
    let lead = reduced[reduced.len() - 1];
    let monic: Vec<Complex64> = reduced.iter().map(|a| a / lead).collect();

    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let polished = |mut zs: Vec<Complex64>| {
        for z in &mut zs {
            polish(&monic, z);
        }
        let worst = zs.iter().map(|&z| backward_error(&c[..=top], z)).fold(0.0, f64::max);
        (zs, worst)
    };
    let (mut found, mut worst) = if monic.len() == 2 {
        polished(vec![-monic[0]])
    } else {
        match aberth(&monic) {
            Some(r) => polished(r),
            None => (Vec::new(), f64::INFINITY),
        }
    };
    // NaN compares false, so this also catches non-finite residuals
    if !(worst <= RESIDUAL_BOUND) && monic.len() > 2 {
        (found, worst) = polished(companion_roots(&monic)?);
    }
    if !(worst <= RESIDUAL_BOUND) {
        return Err(GafError::NumericFailure {
            what: "root backward error".into(),
            achieved: worst,
        });
    }
    roots.extend(found);
    Ok(ZeroSet {
        roots,
        boundary_tol: DEFAULT_BOUNDARY_TOL,
        provenance: p.provenance.clone(),
        backward_error: worst,
    })
}

fn aberth(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let d = c.len() - 1;
    let radius = (c[0].norm()).powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, (2.0 * std::f64::consts::PI * k as f64 + 1.1) / d as f64))
        .collect();
    for _ in 0..MAX_ITERATIONS {
        let mut converged = true;
        for i in 0..d {
            let n = newton_ratio(c, z[i]);
            if n.norm() == 0.0 {
                continue;
            }
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = n / (1.0 - n * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            z[i] -= step;
            if step.norm() >= STEP_TOL * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            return Some(z);
        }
    }
    None
}

fn polish(c: &[Complex64], z: &mut Complex64) {
    for _ in 0..3 {
        let n = newton_ratio(c, *z);
        let candidate = *z - n;
        if !candidate.re.is_finite() || !candidate.im.is_finite() {
            return;
        }
        if backward_error(c, candidate) >= backward_error(c, *z) {
            return;
        }
        *z = candidate;
    }
}

pub(super) fn companion_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i];
    }
    let failure = || GafError::NumericFailure {
        what: "companion-matrix eigenvalues did not converge".into(),
        achieved: f64::NAN,
    };
    let schur = m.try_schur(1e-15, 10_000).ok_or_else(failure)?;
    let ev = schur.eigenvalues().ok_or_else(failure)?;
    Ok(ev.iter().copied().collect())
}
