//! Correlation functions of GAF zeros by several independent routes, and
//! the determinant, permanent and contour identities behind them.

mod direct;
mod identities;
mod permanent;
mod points;
mod spectral;

pub use direct::{
    conditional_kernel, conditional_kernel_inductive, rho1_ek, rho_n_direct, GRAM_DET_MIN, MAX_DIRECT_ORDER,
};
pub use identities::{
    cue_kernel, reproducing_integral, reproducing_rhs, verify_borchardt, verify_cauchy, verify_reproducing,
    verify_volume_formula, CauchyResiduals, ReproducingVariant, VolumeResiduals, MAX_BORCHARDT_DIM,
    MAX_REPRODUCING_DIM, REPRODUCING_ORDER,
};
pub use permanent::{permanent, MAX_PERMANENT_DIM};
pub use points::{CorrelationResult, Method, PointConfig, MIN_SEPARATION};
pub use spectral::{
    default_order, mu_mass, rho1_spectral, rho1_spectral_order, rho1_spectral_with_order, rho_n_spectral,
    MAX_TENSOR_DIM,
};

#[cfg(test)]
mod tests;
