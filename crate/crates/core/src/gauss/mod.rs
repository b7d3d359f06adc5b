//! Sampling the stationary complex Gaussian coefficient process, including
//! the Hermitian eigensolver behind the Toeplitz square-root sampler.

mod eig;
mod sampler;
mod source;

pub use eig::{hermitian_eig, psd_sqrt, reassemble, PSD_CLAMP};
pub use sampler::{
    empirical_covariance, sample_coefficients, CoefficientSampler, EmpiricalCovariance, GafPolynomial,
    Provenance,
};
pub use source::ComplexNormalSource;
