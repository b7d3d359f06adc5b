//! Spectral measures on the circle, their autocovariances and the GAF
//! covariance kernel `K_F(z,w) = ∫ s(z,t) conj(s(w,t)) F(dt)`.

mod kernel;
mod measure;
mod quadrature;

pub use kernel::{
    poisson, szego, truncated_kernel, ClosedForm, CovarianceEvaluator, CovarianceKernel,
    KernelDerivatives, TruncatedKernel, DEFAULT_ORDER,
};
pub use measure::{normalize_angle, SpectralMeasure, ANGLE_EPS};
pub use quadrature::{build_rule, gauss_legendre, QuadratureRule};
