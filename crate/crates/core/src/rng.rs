//! Seeded randomness. All stochastic code in the crate draws from here so
//! that a `(seed)` pair pins the whole run.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform vector in `[-1, 1]^n`.
pub fn unit_cube_vec(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// Uniform vector on the l-infinity sphere of radius 1 (at least one
/// coordinate has |x_i| = 1).
pub fn linf_sphere_vec(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    let mut x = unit_cube_vec(rng, n);
    let pin = rng.gen_range(0..n);
    x[pin] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    x
}

/// Nonnegative vector in `[0, 1]^n`.
pub fn nonneg_cube_vec(rng: &mut SeededRng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..=1.0)).collect()
}

pub fn gaussian_vec(rng: &mut SeededRng, n: usize, sigma: f64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            // Box-Muller; two uniforms per draw keeps it dependency-free.
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            sigma * (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        })
        .collect()
}
