use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic stream of standard complex normals `(g1 + i g2) / sqrt(2)`.
///
/// The stream is ChaCha8 keyed by `seed_from_u64(seed)` on stream 0. Every
/// complex draw consumes exactly two 53-bit uniforms and maps them through
/// Box-Muller, so the `k`-th draw depends only on the seed and `k`.
#[derive(Clone, Debug)]
pub struct ComplexNormalSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl ComplexNormalSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_complex(&mut self) -> Complex64 {
        // 1 - U lies in (0, 1], keeping the logarithm finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2: f64 = self.rng.random();
        let radius = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        Complex64::new(radius * c, radius * s) * FRAC_1_SQRT_2
    }

    pub fn draw(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| self.next_complex()).collect()
    }
}
