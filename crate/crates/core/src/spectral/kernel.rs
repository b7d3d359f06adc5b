use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;

use crate::error::{GafError, Result};

use super::measure::SpectralMeasure;
use super::quadrature::{build_rule, QuadratureRule};

/// Default quadrature order for kernel evaluation.
pub const DEFAULT_ORDER: usize = 256;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Szegő kernel `s(z, t) = 1 / (1 - z e^{-it})` for `|z| < 1`.
pub fn szego(z: Complex64, t: f64) -> Result<Complex64> {
    check_disk(z)?;
    Ok(ONE / (ONE - z * Complex64::from_polar(1.0, -t)))
}

/// Poisson kernel `(1 - r^2) / (1 - 2 r cos(theta) + r^2)` for `0 <= r < 1`.
pub fn poisson(r: f64, theta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(GafError::Domain(format!("Poisson kernel needs 0 <= r < 1, got {r}")));
    }
    Ok((1.0 - r * r) / (1.0 - 2.0 * r * theta.cos() + r * r))
}

fn check_disk(z: Complex64) -> Result<()> {
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(GafError::Domain(format!("point {z} is not inside the unit disk")))
    }
}

/// `K(z,w)` together with `dK/dz`, `dK/dw̄` and `d²K/dz dw̄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelDerivatives {
    pub k: Complex64,
    pub dz: Complex64,
    pub dwbar: Complex64,
    pub dz_dwbar: Complex64,
}

/// A covariance kernel holomorphic in `z` and antiholomorphic in `w`.
pub trait CovarianceKernel: Sync {
    fn kernel(&self, z: Complex64, w: Complex64) -> Result<Complex64>;
    fn derivatives(&self, z: Complex64, w: Complex64) -> Result<KernelDerivatives>;
}

/// Measures whose covariance has an exact closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClosedForm {
    /// Lebesgue measure: `K = 1 / (1 - z w̄)`.
    Hyperbolic,
    /// Uniform atoms on the `n`-th roots of unity.
    Periodic(usize),
    /// Normalised arc `[lo, hi]`, integrated through complex logarithms.
    Arc { lo: f64, hi: f64 },
}

impl ClosedForm {
    pub fn detect(measure: &SpectralMeasure) -> Option<Self> {
        match measure {
            SpectralMeasure::Lebesgue => Some(Self::Hyperbolic),
            SpectralMeasure::Arc { lo, hi } => Some(Self::Arc { lo: *lo, hi: *hi }),
            m => m.periodic_order().map(Self::Periodic),
        }
    }
}

/// Evaluates autocovariances `gamma(k)` and the kernel
/// `K_F(z,w) = ∫ s(z,t) conj(s(w,t)) F(dt)`.
///
/// Concurrent calls are safe; the autocovariance cache sits behind a lock
/// and every cached value equals what a fresh computation returns.
#[derive(Debug)]
pub struct CovarianceEvaluator {
    measure: SpectralMeasure,
    rule: QuadratureRule,
    phases: Vec<Complex64>,
    closed_form: Option<ClosedForm>,
    gamma_cache: RwLock<HashMap<i64, Complex64>>,
    cache_cap: Option<usize>,
}

impl Clone for CovarianceEvaluator {
    fn clone(&self) -> Self {
        Self {
            measure: self.measure.clone(),
            rule: self.rule.clone(),
            phases: self.phases.clone(),
            closed_form: self.closed_form,
            gamma_cache: RwLock::new(self.gamma_cache.read().unwrap().clone()),
            cache_cap: self.cache_cap,
        }
    }
}

impl CovarianceEvaluator {
    pub fn new(measure: SpectralMeasure) -> Result<Self> {
        Self::with_order(measure, DEFAULT_ORDER)
    }

    pub fn with_order(measure: SpectralMeasure, order: usize) -> Result<Self> {
        let closed_form = ClosedForm::detect(&measure);
        Self::build(measure, order, closed_form)
    }

    /// Evaluator that ignores closed forms and always integrates with the rule.
    pub fn quadrature_only(measure: SpectralMeasure, order: usize) -> Result<Self> {
        Self::build(measure, order, None)
    }

    fn build(measure: SpectralMeasure, order: usize, closed_form: Option<ClosedForm>) -> Result<Self> {
        let rule = build_rule(&measure, order)?;
        let phases = rule.nodes.iter().map(|&t| Complex64::from_polar(1.0, -t)).collect();
        Ok(Self {
            measure,
            rule,
            phases,
            closed_form,
            gamma_cache: RwLock::new(HashMap::new()),
            cache_cap: None,
        })
    }

    /// Caps the number of cached autocovariances.
    pub fn with_cache_cap(mut self, cap: usize) -> Self {
        self.cache_cap = Some(cap);
        self
    }

    pub fn measure(&self) -> &SpectralMeasure {
        &self.measure
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        self.closed_form
    }

    pub fn cached_len(&self) -> usize {
        self.gamma_cache.read().unwrap().len()
    }

    /// `gamma(k) = ∫ e^{-ikt} F(dt)`, with `gamma(-k) = conj(gamma(k))`.
    pub fn gamma(&self, k: i64) -> Complex64 {
        if k < 0 {
            return self.gamma(-k).conj();
        }
        if k == 0 {
            return ONE;
        }
        if let Some(g) = self.gamma_cache.read().unwrap().get(&k) {
            return *g;
        }
        let g = self.gamma_uncached(k);
        let mut cache = self.gamma_cache.write().unwrap();
        if self.cache_cap.is_none_or(|cap| cache.len() < cap) {
            cache.insert(k, g);
        }
        g
    }

    fn gamma_uncached(&self, k: i64) -> Complex64 {
        match self.closed_form {
            Some(ClosedForm::Hyperbolic) => ZERO,
            Some(ClosedForm::Periodic(n)) => {
                if k % n as i64 == 0 {
                    ONE
                } else {
                    ZERO
                }
            }
            Some(ClosedForm::Arc { lo, hi }) => {
                let kf = k as f64;
                (Complex64::from_polar(1.0, -kf * lo) - Complex64::from_polar(1.0, -kf * hi))
                    / (I * kf * (hi - lo))
            }
            None => self.rule.integrate(|t| Complex64::from_polar(1.0, -(k as f64) * t)),
        }
    }

    /// `gamma(0..=n)`.
    pub fn gammas(&self, n: usize) -> Vec<Complex64> {
        (0..=n as i64).map(|k| self.gamma(k)).collect()
    }

    fn quadrature_kernel(&self, z: Complex64, w: Complex64) -> Complex64 {
        let wc = w.conj();
        self.phases
            .iter()
            .zip(&self.rule.weights)
            .map(|(e, &wt)| wt / ((ONE - z * e) * (ONE - wc * e.conj())))
            .sum()
    }

    fn quadrature_derivatives(&self, z: Complex64, w: Complex64) -> KernelDerivatives {
        let mut out = KernelDerivatives {
            k: ZERO,
            dz: ZERO,
            dwbar: ZERO,
            dz_dwbar: ZERO,
        };
        for (e, &wt) in self.phases.iter().zip(&self.rule.weights) {
            let sz = ONE / (ONE - z * e);
            let sw = (ONE / (ONE - w * e)).conj();
            let dsz = e * sz * sz;
            let dsw = e.conj() * sw * sw;
            out.k += sz * sw * wt;
            out.dz += dsz * sw * wt;
            out.dwbar += sz * dsw * wt;
            out.dz_dwbar += dsz * dsw * wt;
        }
        out
    }
}

/// Closed-form kernel for the normalised arc measure on `[lo, hi]`:
/// `K = (1/L) / (1 - z w̄) * [t - i Log(1 - z e^{-it}) + i Log(1 - w̄ e^{it})]_lo^hi`.
fn arc_derivatives(lo: f64, hi: f64, z: Complex64, w: Complex64) -> KernelDerivatives {
    let len = hi - lo;
    let u_hi = Complex64::from_polar(1.0, -hi);
    let u_lo = Complex64::from_polar(1.0, -lo);
    let wc = w.conj();
    let a = (ONE - z * u_hi).ln() - (ONE - z * u_lo).ln();
    let da = -u_hi / (ONE - z * u_hi) + u_lo / (ONE - z * u_lo);
    let c = (ONE - wc * u_hi.conj()).ln() - (ONE - wc * u_lo.conj()).ln();
    let dc = -u_hi.conj() / (ONE - wc * u_hi.conj()) + u_lo.conj() / (ONE - wc * u_lo.conj());
    let b = Complex64::new(len, 0.0) - I * a + I * c;
    let p = ONE / (ONE - z * wc);
    let p2 = p * p;
    KernelDerivatives {
        k: p * b / len,
        dz: (wc * p2 * b - I * p * da) / len,
        dwbar: (z * p2 * b + I * p * dc) / len,
        dz_dwbar: ((p2 + 2.0 * z * wc * p2 * p) * b + I * wc * p2 * dc - I * z * p2 * da) / len,
    }
}

impl CovarianceKernel for CovarianceEvaluator {
    fn kernel(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        check_disk(z)?;
        check_disk(w)?;
        Ok(match self.closed_form {
            Some(ClosedForm::Hyperbolic) => ONE / (ONE - z * w.conj()),
            Some(ClosedForm::Periodic(n)) => {
                let n = n as u32;
                let wc = w.conj();
                let zw = z * wc;
                // (1 - (z w̄)^n) / (1 - z w̄) summed directly to avoid cancellation
                let mut geom = ZERO;
                let mut p = ONE;
                for _ in 0..n {
                    geom += p;
                    p *= zw;
                }
                geom / ((ONE - z.powu(n)) * (ONE - wc.powu(n)))
            }
            Some(ClosedForm::Arc { lo, hi }) => arc_derivatives(lo, hi, z, w).k,
            None => self.quadrature_kernel(z, w),
        })
    }

    fn derivatives(&self, z: Complex64, w: Complex64) -> Result<KernelDerivatives> {
        check_disk(z)?;
        check_disk(w)?;
        Ok(match self.closed_form {
            Some(ClosedForm::Hyperbolic) => {
                let wc = w.conj();
                let p = ONE / (ONE - z * wc);
                KernelDerivatives {
                    k: p,
                    dz: wc * p * p,
                    dwbar: z * p * p,
                    dz_dwbar: (ONE + z * wc) * p * p * p,
                }
            }
            Some(ClosedForm::Arc { lo, hi }) => arc_derivatives(lo, hi, z, w),
            // atomic rules are exact
            Some(ClosedForm::Periodic(_)) | None => self.quadrature_derivatives(z, w),
        })
    }
}

/// `K_F^{(N)}(z,w) = sum_{j,k <= N} gamma(j - k) z^j w̄^k`, the covariance of
/// the degree-`N` truncation. Defined for all complex `z`, `w`.
#[derive(Clone, Debug)]
pub struct TruncatedKernel {
    degree: usize,
    gammas: Vec<Complex64>,
    diagonal: bool,
}

impl TruncatedKernel {
    pub fn new(ev: &CovarianceEvaluator, degree: usize) -> Self {
        Self {
            degree,
            gammas: ev.gammas(degree),
            diagonal: ev.closed_form() == Some(ClosedForm::Hyperbolic),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn gamma(&self, d: i64) -> Complex64 {
        if d >= 0 {
            self.gammas[d as usize]
        } else {
            self.gammas[(-d) as usize].conj()
        }
    }

    /// Returns `(x^j, j x^{j-1})` for `j = 0..=N`.
    fn powers(&self, x: Complex64) -> (Vec<Complex64>, Vec<Complex64>) {
        let n = self.degree;
        let mut p = Vec::with_capacity(n + 1);
        let mut d = Vec::with_capacity(n + 1);
        let mut cur = ONE;
        let mut prev = ZERO;
        for j in 0..=n {
            p.push(cur);
            d.push(prev * j as f64);
            prev = cur;
            cur *= x;
        }
        (p, d)
    }

    fn toeplitz_apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        if self.diagonal {
            return v.to_vec();
        }
        let n = self.degree;
        (0..=n)
            .map(|j| (0..=n).map(|k| self.gamma(j as i64 - k as i64) * v[k]).sum())
            .collect()
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl CovarianceKernel for TruncatedKernel {
    fn kernel(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        let (zp, _) = self.powers(z);
        let (wp, _) = self.powers(w.conj());
        Ok(dot(&zp, &self.toeplitz_apply(&wp)))
    }

    fn derivatives(&self, z: Complex64, w: Complex64) -> Result<KernelDerivatives> {
        let (zp, dzp) = self.powers(z);
        let (wp, dwp) = self.powers(w.conj());
        let gw = self.toeplitz_apply(&wp);
        let gdw = self.toeplitz_apply(&dwp);
        Ok(KernelDerivatives {
            k: dot(&zp, &gw),
            dz: dot(&dzp, &gw),
            dwbar: dot(&zp, &gdw),
            dz_dwbar: dot(&dzp, &gdw),
        })
    }
}

/// Convenience wrapper for a single truncated-kernel value.
pub fn truncated_kernel(ev: &CovarianceEvaluator, degree: usize, z: Complex64, w: Complex64) -> Complex64 {
    TruncatedKernel::new(ev, degree)
        .kernel(z, w)
        .expect("truncated kernel is entire")
}
