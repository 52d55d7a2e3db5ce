//! Seeded pseudo-random numbers with a fixed, documented algorithm.
//!
//! Every stochastic path in the crate draws from `SplitMix64` so that a
//! seed fully determines all outputs, bit for bit, across platforms and
//! runs. The generator is the 64-bit split-mix finalizer; normals come
//! from the Box-Muller transform.

use num_complex::Complex64;

/// 64-bit split-mix generator. State advances by the golden-ratio
/// increment; output is the murmur-style finalizer of the new state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream derived from a base seed and a stream index.
    pub fn stream(seed: u64, stream: u64) -> Self {
        // Decorrelate streams by running the base generator forward.
        let mut base = SplitMix64::new(seed);
        let mut s = seed;
        for _ in 0..=(stream % 64) {
            s = base.next_u64();
        }
        SplitMix64::new(s ^ stream.wrapping_mul(0x9E3779B97F4A7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in the half-open interval (0, 1]; never returns 0 so the
    /// Box-Muller logarithm is always finite.
    pub fn next_unit(&mut self) -> f64 {
        (((self.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
    }

    /// Standard normal via Box-Muller.
    pub fn next_normal(&mut self) -> f64 {
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Complex Gaussian with independent standard normal parts, using
    /// both Box-Muller outputs of one draw pair.
    pub fn next_complex_normal(&mut self) -> Complex64 {
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let phi = 2.0 * core::f64::consts::PI * u2;
        Complex64::new(r * libm::cos(phi), r * libm::sin(phi))
    }
}
