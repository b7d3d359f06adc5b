use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::linalg::{binomial_sign, factorial, vandermonde, CMatrix};
use crate::spectral::{build_rule, CovarianceEvaluator, SpectralMeasure};

use super::permanent::permanent;
use super::points::PointConfig;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn relative(lhs: Complex64, rhs: Complex64) -> f64 {
    let d = (lhs - rhs).norm();
    if d == 0.0 {
        0.0
    } else {
        d / rhs.norm()
    }
}

/// `k_n(θ, φ) = sin(n(θ-φ)/2) / sin((θ-φ)/2)`, continued through its
/// removable singularities.
pub fn cue_kernel(n: usize, theta: f64, phi: f64) -> f64 {
    let half = 0.5 * (theta - phi);
    let n = n as f64;
    if half.sin().abs() < 1e-12 {
        n * (n * half).cos() / half.cos()
    } else {
        (n * half).sin() / half.sin()
    }
}

fn cauchy_matrix(a: &[Complex64], b: &[Complex64]) -> CMatrix {
    CMatrix::from_fn(a.len(), |j, k| (ONE - a[j] * b[k]).inv())
}

fn check_pair(a: &[Complex64], b: &[Complex64]) -> Result<()> {
    if a.len() != b.len() || a.is_empty() {
        return invalid("point sequences must be nonempty and of equal length");
    }
    for x in a {
        for y in b {
            if !((x * y).norm() < 1.0) {
                return invalid("need |a_j b_k| < 1 for all j, k");
            }
        }
    }
    Ok(())
}

/// Relative residuals of the Cauchy determinant and the Vandermonde
/// reflection identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CauchyResiduals {
    /// `det(1/(1-a_j b_k))` against `V(a) V(b) prod (1-a_j b_k)^{-1}`.
    pub cauchy: f64,
    /// `prod_{k≠j} (a_k - a_j)` against `(-1)^{n choose 2} V(a)²`.
    pub ordered_product: f64,
    /// `V(1/a)` against `(-1)^{n choose 2} V(a) / (a_1⋯a_n)^{n-1}`;
    /// absent when some `a_j = 0`.
    pub inverse_vandermonde: Option<f64>,
}

impl CauchyResiduals {
    pub fn worst(&self) -> f64 {
        self.cauchy
            .max(self.ordered_product)
            .max(self.inverse_vandermonde.unwrap_or(0.0))
    }
}

pub fn verify_cauchy(a: &[Complex64], b: &[Complex64]) -> Result<CauchyResiduals> {
    check_pair(a, b)?;
    let n = a.len();
    let lhs = cauchy_matrix(a, b).det();
    let mut rhs = vandermonde(a) * vandermonde(b);
    for x in a {
        for y in b {
            rhs *= (ONE - x * y).inv();
        }
    }
    let mut ordered = ONE;
    for j in 0..n {
        for k in (0..n).filter(|&k| k != j) {
            ordered *= a[k] - a[j];
        }
    }
    let va = vandermonde(a);
    let sign = binomial_sign(n);
    let inverse_vandermonde = a.iter().all(|x| x.norm() > 0.0).then(|| {
        let inv: Vec<Complex64> = a.iter().map(|x| x.inv()).collect();
        let prod: Complex64 = a.iter().product();
        relative(vandermonde(&inv), sign * va / prod.powu(n as u32 - 1))
    });
    Ok(CauchyResiduals {
        cauchy: relative(lhs, rhs),
        ordered_product: relative(ordered, sign * va * va),
        inverse_vandermonde,
    })
}

pub const MAX_BORCHARDT_DIM: usize = 10;

/// Relative residual of `det(C) per(C) = det(C∘C)` for the Cauchy matrix
/// `C = (1/(1-a_p b_q))`.
pub fn verify_borchardt(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_pair(a, b)?;
    if a.len() > MAX_BORCHARDT_DIM {
        return invalid(format!("Borchardt check limited to n <= {MAX_BORCHARDT_DIM}"));
    }
    let c = cauchy_matrix(a, b);
    let sq = CMatrix::from_fn(a.len(), |p, q| c[(p, q)] * c[(p, q)]);
    Ok(relative(c.det() * permanent(&c)?, sq.det()))
}

/// Contour measure in the reproducing formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReproducingVariant {
    /// `prod dz_k`
    Plain,
    /// `prod dz_k / z_k`
    OverZ,
}

pub const REPRODUCING_ORDER: usize = 256;
pub const MAX_REPRODUCING_DIM: usize = 3;

/// Exact value of the reproducing integral for symmetric `q`.
pub fn reproducing_rhs(
    q: &(dyn Fn(&[Complex64]) -> Complex64 + Sync),
    a: &[Complex64],
    variant: ReproducingVariant,
) -> Result<Complex64> {
    let n = a.len();
    let scale = binomial_sign(n) * factorial(n);
    match variant {
        ReproducingVariant::Plain => Ok(scale * q(a)),
        ReproducingVariant::OverZ => {
            if a.iter().any(|x| x.norm() == 0.0) {
                return invalid("the z^{-1} variant needs every a_j nonzero");
            }
            let mut bracket = q(a);
            for p in 0..n {
                let mut coef = ONE;
                for k in (0..n).filter(|&k| k != p) {
                    coef *= a[k] / (a[k] - a[p]);
                }
                let mut args = Vec::with_capacity(n);
                args.push(Complex64::new(0.0, 0.0));
                args.extend((0..n).filter(|&k| k != p).map(|k| a[k]));
                bracket -= coef * q(&args);
            }
            let prod: Complex64 = a.iter().product();
            Ok(scale * bracket / prod)
        }
    }
}

/// `(2πi)^{-n} ∮_{Cⁿ} V(z)² prod_{k,j} (z_k - a_j)^{-1} Q(z) dz` (times
/// `prod 1/z_k` for [`ReproducingVariant::OverZ`]) by the periodic
/// midpoint rule with `REPRODUCING_ORDER` nodes per circle.
pub fn reproducing_integral(
    q: &(dyn Fn(&[Complex64]) -> Complex64 + Sync),
    a: &PointConfig,
    variant: ReproducingVariant,
) -> Result<Complex64> {
    let a = a.points();
    let n = a.len();
    if n > MAX_REPRODUCING_DIM {
        return invalid(format!("reproducing integrals limited to n <= {MAX_REPRODUCING_DIM}"));
    }
    let m = REPRODUCING_ORDER;
    let circle: Vec<Complex64> = (0..m)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * (j as f64 + 0.5) / m as f64))
        .collect();
    // dz / (2πi) = z dθ / 2π
    let sum = super::spectral::tensor_accumulate(m, n, 1, |idx, acc| {
        let mut z = [Complex64::new(0.0, 0.0); MAX_REPRODUCING_DIM];
        for (zk, &i) in z.iter_mut().zip(idx) {
            *zk = circle[i];
        }
        let z = &z[..n];
        let mut f = vandermonde(z).powu(2) * q(z);
        for &zk in z {
            for &aj in a {
                f /= zk - aj;
            }
            if variant == ReproducingVariant::Plain {
                f *= zk;
            }
        }
        acc[0] += f;
    });
    Ok(sum[0] / (m as f64).powi(n as i32))
}

/// Residual `|integral - exact| / max(1, |exact|)`; the `z^{-1}` variant
/// can vanish exactly, hence the floor.
pub fn verify_reproducing(
    q: &(dyn Fn(&[Complex64]) -> Complex64 + Sync),
    a: &PointConfig,
    variant: ReproducingVariant,
) -> Result<f64> {
    let rhs = reproducing_rhs(q, a.points(), variant)?;
    let lhs = reproducing_integral(q, a, variant)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
}

/// Worst relative residuals of the Lebesgue volume formulas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeResiduals {
    /// `μ_a(Tⁿ)` against `S(a,a)`.
    pub mass: f64,
    /// `μ̃_a(T^{n+1})` against `S(a,a)`.
    pub tilde_mass: f64,
    /// `K_a(z,w)` against `s(z,w) S(z,a) conj(S(w,a))` at random `(z, w)`
    /// and at `z = w = 0`.
    pub kernel: f64,
}

impl VolumeResiduals {
    pub fn worst(&self) -> f64 {
        self.mass.max(self.tilde_mass).max(self.kernel)
    }
}

fn szego_pair(z: Complex64, w: Complex64) -> Complex64 {
    (ONE - z * w.conj()).inv()
}

/// Checks `μ_a(Tⁿ) = μ̃_a(T^{n+1}) = S(a,a)` and
/// `K_a(z,w) = s(z,w) S(z,a) conj(S(w,a))` for the Lebesgue measure.
pub fn verify_volume_formula(ev: &CovarianceEvaluator, a: &PointConfig, m: usize) -> Result<VolumeResiduals> {
    if *ev.measure() != SpectralMeasure::Lebesgue {
        return invalid("the volume formula holds for the Lebesgue measure only");
    }
    let pts = a.points();
    let n = pts.len();
    if n > 2 {
        return invalid("volume formula check limited to n <= 2");
    }
    let mut s_aa = ONE;
    for &x in pts {
        for &y in pts {
            s_aa *= szego_pair(x, y);
        }
    }
    let mu = super::spectral::mu_mass(ev, a, m)?;
    let rule = build_rule(ev.measure(), m)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut probes = vec![(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))];
    for _ in 0..5 {
        let mut draw = || Complex64::from_polar(0.5 * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>());
        probes.push((draw(), draw()));
    }
    // integrate S(z,t̃) conj(S(w,t̃)) against μ̃_a by extending a with z and w
    let mut tilde = f64::NAN;
    let mut kernel: f64 = 0.0;
    for (z, w) in probes {
        let (mass, value) = super::spectral::palm_pair(&rule, pts, z, w);
        tilde = mass;
        let mut expect = szego_pair(z, w);
        for &x in pts {
            expect *= szego_pair(z, x) * szego_pair(w, x).conj();
        }
        kernel = kernel.max(relative(value / mass, expect));
    }
    Ok(VolumeResiduals {
        mass: relative(Complex64::new(mu, 0.0), s_aa),
        tilde_mass: relative(Complex64::new(tilde, 0.0), s_aa),
        kernel,
    })
}
