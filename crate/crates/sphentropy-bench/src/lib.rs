//! Shared input builders for the criterion benchmarks.

use sphentropy::shapes::SplitMix64;
use sphentropy::SphericalPoint;

/// Reproducible quasi-uniform points on the sphere.
pub fn sample_points(count: usize, seed: u64) -> Vec<SphericalPoint> {
    let mut rng = SplitMix64::new(seed);
    (0..count)
        .map(|_| {
            // uniform in cos(theta) gives area-uniform samples
            let theta = (1.0 - 2.0 * rng.next_f64()).clamp(-1.0, 1.0).acos();
            let phi = 2.0 * std::f64::consts::PI * rng.next_f64();
            SphericalPoint::new(theta, phi).expect("valid sample point")
        })
        .collect()
}
