//! Numerical laboratory for Gaussian analytic functions whose power-series
//! coefficients form a stationary complex Gaussian process.
//!
//! A [`SpectralMeasure`] on the circle determines everything: its
//! autocovariances, the covariance kernel `K_F`, the coefficient samplers,
//! the zero sets of sampled truncations and the correlation functions of
//! the zeros.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corr;
pub mod error;
pub mod gauss;
pub mod linalg;
pub mod spectral;
pub mod verify;
pub mod zeros;

pub use error::{GafError, Result};
pub use gauss::{CoefficientSampler, ComplexNormalSource, GafPolynomial};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
pub use spectral::{CovarianceEvaluator, CovarianceKernel, SpectralMeasure};
pub use zeros::{CountSummary, ZeroSet};
