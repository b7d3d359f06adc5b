//! Roots of sampled truncations, their classification against the unit
//! circle and Monte Carlo count statistics.

mod count;
mod export;
mod roots;

pub use count::{
    census, expected_count_in_disk, mc_count_histogram, Census, CountHistogram, CountRegion, CountSummary,
    McCounts, RootClass, RunFailure,
};
pub use export::{write_histogram_csv, write_zeros_csv, zeros_svg};
pub use roots::{backward_error, find_roots, ZeroSet, DEFAULT_BOUNDARY_TOL, RESIDUAL_BOUND};
