//! Forward analysis, inverse synthesis, truncated reconstruction.
//!
//! Analysis projects a sampled field onto the basis by quadrature,
//! `S_{l,m} = sum_nodes w f conj(Y_{l,m})`, which on a Gauss grid of
//! parameter `>= l_max` equals the exact integral for band-limited fields
//! (no least-squares solve involved). Synthesis sums the truncated series
//! `sum_{l<=J} sum_{|m|<=l} S_{l,m} Y_{l,m}` and returns the real part;
//! for pyramids with the real-field symmetry the imaginary residue is at
//! rounding level.
//!
//! Multi-channel fields (surfaces sampled as X, Y, Z) are handled channel
//! by channel with the same complex basis. Real cosine/sine pairs
//! `(a_l^m, b_l^m)` for interoperability come from
//! [`real_ab_coefficients`].

use num_complex::Complex64;

use crate::basis::{ladder_into, normalization_constant};
use crate::error::{Error, Result};
use crate::grid::{GridKind, SphereGrid};
use crate::legendre::DegreeOrder;

/// Number of coefficients per channel of a band-limit-`l_max` pyramid:
/// `(l_max + 1)^2`.
pub fn coefficient_count(l_max: u32) -> usize {
    ((l_max + 1) * (l_max + 1)) as usize
}

/// Real samples on a sphere grid, 1 channel (scalar field) or 3 channels
/// (surface coordinates). Values are node-major: `values[node * channels + c]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSphericalField {
    grid: SphereGrid,
    channels: usize,
    values: Vec<f64>,
}

impl SampledSphericalField {
    pub fn new(grid: SphereGrid, channels: usize, values: Vec<f64>) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::Validation(format!(
                "field must have 1 or 3 channels, got {channels}"
            )));
        }
        if values.len() != grid.n_nodes() * channels {
            return Err(Error::ShapeMismatch(format!(
                "{} values for {} nodes x {} channels",
                values.len(),
                grid.n_nodes(),
                channels
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Validation(format!("non-finite sample value {bad}")));
        }
        Ok(SampledSphericalField {
            grid,
            channels,
            values,
        })
    }

    pub fn grid(&self) -> &SphereGrid {
        &self.grid
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, node: usize, channel: usize) -> f64 {
        self.values[node * self.channels + channel]
    }

    /// Quadrature-weighted L2 norm over all channels.
    pub fn norm(&self) -> f64 {
        let mut acc = 0.0;
        for (node, &w) in self.grid.weights().iter().enumerate() {
            for c in 0..self.channels {
                let v = self.value(node, c);
                acc += w * v * v;
            }
        }
        acc.sqrt()
    }
}

/// Triangular array of complex coefficients `S_{l,m}` per channel,
/// channel-major, each channel in canonical l-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientPyramid {
    l_max: u32,
    channels: usize,
    coeffs: Vec<Complex64>,
}

impl CoefficientPyramid {
    pub fn zeros(l_max: u32, channels: usize) -> Result<Self> {
        if channels != 1 && channels != 3 {
            return Err(Error::Validation(format!(
                "pyramid must have 1 or 3 channels, got {channels}"
            )));
        }
        Ok(CoefficientPyramid {
            l_max,
            channels,
            coeffs: vec![Complex64::new(0.0, 0.0); channels * coefficient_count(l_max)],
        })
    }

    pub fn from_coeffs(l_max: u32, channels: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let mut p = Self::zeros(l_max, channels)?;
        if coeffs.len() != p.coeffs.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for {} channels x {} entries",
                coeffs.len(),
                channels,
                coefficient_count(l_max)
            )));
        }
        p.coeffs = coeffs;
        Ok(p)
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// All coefficients, channel-major.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// One channel's coefficients in canonical order.
    pub fn channel(&self, c: usize) -> &[Complex64] {
        let n = coefficient_count(self.l_max);
        &self.coeffs[c * n..(c + 1) * n]
    }

    pub fn coeff(&self, channel: usize, l: u32, m: i32) -> Complex64 {
        let lm = DegreeOrder::new(l, m).expect("|m| <= l");
        self.channel(channel)[lm.canonical_index()]
    }

    pub fn set_coeff(&mut self, channel: usize, l: u32, m: i32, value: Complex64) {
        let lm = DegreeOrder::new(l, m).expect("|m| <= l");
        let n = coefficient_count(self.l_max);
        self.coeffs[channel * n + lm.canonical_index()] = value;
    }

    /// Total energy `sum |S_{l,m}|^2` over all channels.
    pub fn total_energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Pyramid with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        CoefficientPyramid {
            l_max: self.l_max,
            channels: self.channels,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Whether `S_{l,-m} = (-1)^m conj(S_{l,m})` holds within `tol`
    /// (the coefficient signature of a real-valued source field).
    pub fn is_real_symmetric(&self, tol: f64) -> bool {
        for c in 0..self.channels {
            for l in 0..=self.l_max {
                for m in 0..=l as i32 {
                    let s = self.coeff(c, l, m);
                    let s_neg = self.coeff(c, l, -m);
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    if (s_neg - sign * s.conj()).norm() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn check_band_limit(grid: &SphereGrid, l_max: u32) -> Result<()> {
    // Gauss grids are hard-checked; equiangular grids are allowed through
    // (aliasing risk is the caller's, see SphereGrid::supports_band_limit).
    if let GridKind::GaussLegendre { parameter } = grid.kind() {
        if l_max > parameter {
            return Err(Error::BandLimit {
                requested: l_max,
                supported: parameter,
            });
        }
    }
    Ok(())
}

/// Quadrature projection of a sampled field onto the basis up to `l_max`.
pub fn analyze(field: &SampledSphericalField, l_max: u32) -> Result<CoefficientPyramid> {
    check_band_limit(field.grid(), l_max)?;
    let n = coefficient_count(l_max);
    let channels = field.channels();
    let mut pyramid = CoefficientPyramid::zeros(l_max, channels)?;
    let mut basis_row = vec![Complex64::new(0.0, 0.0); n];
    for (node, (point, &w)) in field.grid().nodes().zip(field.grid().weights()).enumerate() {
        ladder_into(l_max, &point, &mut basis_row)?;
        for c in 0..channels {
            let fw = w * field.value(node, c);
            let block = &mut pyramid.coeffs[c * n..(c + 1) * n];
            for (s, y) in block.iter_mut().zip(&basis_row) {
                *s += fw * y.conj();
            }
        }
    }
    Ok(pyramid)
}

/// Truncated series evaluation on a grid: real part of
/// `sum_{l<=order} sum_m S_{l,m} Y_{l,m}` per channel.
pub fn synthesize(
    pyramid: &CoefficientPyramid,
    grid: &SphereGrid,
    order: u32,
) -> Result<SampledSphericalField> {
    if order > pyramid.l_max() {
        return Err(Error::OrderExceedsBandLimit {
            order,
            band_limit: pyramid.l_max(),
        });
    }
    let n_trunc = coefficient_count(order);
    let n_full = coefficient_count(pyramid.l_max());
    let channels = pyramid.channels();
    let mut values = vec![0.0f64; grid.n_nodes() * channels];
    let mut basis_row = vec![Complex64::new(0.0, 0.0); n_trunc];
    for (node, point) in grid.nodes().enumerate() {
        ladder_into(order, &point, &mut basis_row)?;
        for c in 0..channels {
            let block = &pyramid.coeffs[c * n_full..c * n_full + n_trunc];
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, y) in block.iter().zip(&basis_row) {
                acc += s * y;
            }
            values[node * channels + c] = acc.re;
        }
    }
    SampledSphericalField::new(grid.clone(), channels, values)
}

/// Truncated reconstruction of a 3-channel surface: analyze each coordinate
/// channel at band limit `order` and synthesize back on the same grid.
pub fn reconstruct_surface(
    field: &SampledSphericalField,
    order: u32,
) -> Result<SampledSphericalField> {
    if field.channels() != 3 {
        return Err(Error::Validation(format!(
            "surface reconstruction needs a 3-channel field, got {}",
            field.channels()
        )));
    }
    let pyramid = analyze(field, order)?;
    synthesize(&pyramid, field.grid(), order)
}

/// Quadrature-weighted L2 norm of the difference of two fields on the
/// same grid and channel layout.
pub fn residual_norm(
    original: &SampledSphericalField,
    reconstructed: &SampledSphericalField,
) -> Result<f64> {
    if original.grid() != reconstructed.grid() {
        return Err(Error::ShapeMismatch("fields on different grids".into()));
    }
    if original.channels() != reconstructed.channels() {
        return Err(Error::ShapeMismatch(format!(
            "channel mismatch: {} vs {}",
            original.channels(),
            reconstructed.channels()
        )));
    }
    let channels = original.channels();
    let mut acc = 0.0;
    for (node, &w) in original.grid().weights().iter().enumerate() {
        for c in 0..channels {
            let d = original.value(node, c) - reconstructed.value(node, c);
            acc += w * d * d;
        }
    }
    Ok(acc.sqrt())
}

/// One real cosine/sine coefficient pair of the expansion
/// `f = sum_l sum_{m=0}^{l} (a_l^m cos(m phi) + b_l^m sin(m phi)) P_{l,m}(cos theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealCoefficient {
    pub l: u32,
    pub m: u32,
    pub channel: usize,
    pub a: f64,
    pub b: f64,
}

/// Convert a (real-symmetric) complex pyramid to real cosine/sine pairs:
/// `a_l^m = 2 K_{l,m} Re S_{l,m}`, `b_l^m = -2 K_{l,m} Im S_{l,m}` for
/// `m >= 1` and `a_l^0 = K_{l,0} Re S_{l,0}`. The associated `P_{l,m}`
/// carries the Condon-Shortley phase, matching the rest of the crate.
pub fn real_ab_coefficients(pyramid: &CoefficientPyramid) -> Vec<RealCoefficient> {
    let mut out = Vec::new();
    for channel in 0..pyramid.channels() {
        for l in 0..=pyramid.l_max() {
            for m in 0..=l {
                let k = normalization_constant(l, m as i32).expect("valid (l, m)");
                let s = pyramid.coeff(channel, l, m as i32);
                let (a, b) = if m == 0 {
                    (k * s.re, 0.0)
                } else {
                    (2.0 * k * s.re, -2.0 * k * s.im)
                };
                out.push(RealCoefficient { l, m, channel, a, b });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::sh_direct;
    use crate::grid::gauss_grid;
    use crate::legendre::assoc_legendre_direct;

    fn constant_field(l_grid: u32, value: f64) -> SampledSphericalField {
        let grid = gauss_grid(l_grid);
        let n = grid.n_nodes();
        SampledSphericalField::new(grid, 1, vec![value; n]).unwrap()
    }

    #[test]
    fn analyze_constant_field() {
        let pyramid = analyze(&constant_field(2, 1.0), 2).unwrap();
        let s00 = pyramid.coeff(0, 0, 0);
        let sqrt_4pi = (4.0 * std::f64::consts::PI).sqrt();
        assert!((s00.re - sqrt_4pi).abs() < 1e-12);
        assert!(s00.im.abs() < 1e-14);
        for l in 1..=2u32 {
            for m in -(l as i32)..=(l as i32) {
                assert!(pyramid.coeff(0, l, m).norm() < 1e-12, "S_{l},{m} nonzero");
            }
        }
    }

    #[test]
    fn analyze_zero_field_is_zero() {
        let pyramid = analyze(&constant_field(3, 0.0), 3).unwrap();
        assert_eq!(pyramid.total_energy(), 0.0);
    }

    #[test]
    fn analyze_real_part_of_harmonic() {
        // f = Re Y_{3,2} => S_{3,2} = 0.5, S_{3,-2} = 0.5, others ~ 0
        let grid = gauss_grid(4);
        let values: Vec<f64> = grid
            .nodes()
            .map(|p| sh_direct(3, 2, &p).unwrap().re)
            .collect();
        let field = SampledSphericalField::new(grid, 1, values).unwrap();
        let pyramid = analyze(&field, 4).unwrap();
        assert!((pyramid.coeff(0, 3, 2) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        assert!((pyramid.coeff(0, 3, -2) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        let stray: f64 = pyramid.total_energy()
            - pyramid.coeff(0, 3, 2).norm_sqr()
            - pyramid.coeff(0, 3, -2).norm_sqr();
        assert!(stray.abs() < 1e-12);
    }

    #[test]
    fn analyze_rejects_band_limit_above_gauss_parameter() {
        let err = analyze(&constant_field(2, 1.0), 3).unwrap_err();
        assert!(matches!(err, Error::BandLimit { requested: 3, supported: 2 }));
    }

    #[test]
    fn synthesize_constant_pyramid() {
        let mut pyramid = CoefficientPyramid::zeros(2, 1).unwrap();
        pyramid.set_coeff(0, 0, 0, Complex64::new((4.0 * std::f64::consts::PI).sqrt(), 0.0));
        let grid = gauss_grid(2);
        let field = synthesize(&pyramid, &grid, 2).unwrap();
        for node in 0..field.grid().n_nodes() {
            assert!((field.value(node, 0) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn synthesize_rejects_order_above_band_limit() {
        let pyramid = CoefficientPyramid::zeros(2, 1).unwrap();
        let err = synthesize(&pyramid, &gauss_grid(2), 3).unwrap_err();
        assert!(matches!(err, Error::OrderExceedsBandLimit { order: 3, band_limit: 2 }));
    }

    #[test]
    fn degree_zero_truncation_is_spherical_mean() {
        // f = 1 + Re Y_{2,1}: mean over the sphere is 1
        let grid = gauss_grid(3);
        let values: Vec<f64> = grid
            .nodes()
            .map(|p| 1.0 + sh_direct(2, 1, &p).unwrap().re)
            .collect();
        let field = SampledSphericalField::new(grid.clone(), 1, values).unwrap();
        let pyramid = analyze(&field, 3).unwrap();
        let trunc = synthesize(&pyramid, &grid, 0).unwrap();
        for node in 0..trunc.grid().n_nodes() {
            assert!((trunc.value(node, 0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn round_trip_recovers_band_limited_pyramid() {
        let l_max = 8u32;
        let mut pyramid = CoefficientPyramid::zeros(l_max, 1).unwrap();
        // deterministic real-symmetric filling
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for l in 0..=l_max {
            pyramid.set_coeff(0, l, 0, Complex64::new(next(), 0.0));
            for m in 1..=l as i32 {
                let s = Complex64::new(next(), next());
                pyramid.set_coeff(0, l, m, s);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                pyramid.set_coeff(0, l, -m, sign * s.conj());
            }
        }
        let grid = gauss_grid(l_max);
        let field = synthesize(&pyramid, &grid, l_max).unwrap();
        let recovered = analyze(&field, l_max).unwrap();
        let scale = pyramid
            .coeffs()
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
        let worst = pyramid
            .coeffs()
            .iter()
            .zip(recovered.coeffs())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(worst / scale < 1e-10, "coefficient error {}", worst / scale);

        // Parseval: sum |S|^2 = ||f||^2 on the exact grid
        let energy = pyramid.total_energy();
        let norm2 = field.norm().powi(2);
        assert!((energy - norm2).abs() < 1e-8 * energy.max(norm2));
    }

    #[test]
    fn analyze_is_linear() {
        let grid = gauss_grid(4);
        let f: Vec<f64> = grid
            .nodes()
            .map(|p| sh_direct(2, 1, &p).unwrap().re + 0.3)
            .collect();
        let g: Vec<f64> = grid
            .nodes()
            .map(|p| sh_direct(4, -3, &p).unwrap().im - 1.1)
            .collect();
        let (alpha, beta) = (2.5, -0.75);
        let combo: Vec<f64> = f.iter().zip(&g).map(|(a, b)| alpha * a + beta * b).collect();
        let pf = analyze(&SampledSphericalField::new(grid.clone(), 1, f).unwrap(), 4).unwrap();
        let pg = analyze(&SampledSphericalField::new(grid.clone(), 1, g).unwrap(), 4).unwrap();
        let pc = analyze(&SampledSphericalField::new(grid, 1, combo).unwrap(), 4).unwrap();
        for (c, (a, b)) in pc.coeffs().iter().zip(pf.coeffs().iter().zip(pg.coeffs())) {
            assert!((c - (alpha * a + beta * b)).norm() < 1e-12);
        }
    }

    #[test]
    fn unit_sphere_coordinates_are_degree_one() {
        let grid = gauss_grid(4);
        let mut values = Vec::with_capacity(grid.n_nodes() * 3);
        for p in grid.nodes() {
            let (st, ct) = (p.theta().sin(), p.theta().cos());
            values.push(st * p.phi().cos());
            values.push(st * p.phi().sin());
            values.push(ct);
        }
        let surface = SampledSphericalField::new(grid, 3, values).unwrap();
        let recon = reconstruct_surface(&surface, 1).unwrap();
        assert!(residual_norm(&surface, &recon).unwrap() < 1e-9);
    }

    #[test]
    fn surface_order_zero_is_the_centroid() {
        // an off-center bumpy surface truncated at J = 0 collapses to its
        // quadrature centroid in each coordinate
        let grid = gauss_grid(4);
        let mut values = Vec::with_capacity(grid.n_nodes() * 3);
        for p in grid.nodes() {
            let r = 1.0 + 0.2 * sh_direct(3, 1, &p).unwrap().re;
            let (st, ct) = (p.theta().sin(), p.theta().cos());
            values.push(r * st * p.phi().cos() + 0.5);
            values.push(r * st * p.phi().sin() - 0.25);
            values.push(r * ct);
        }
        let surface = SampledSphericalField::new(grid.clone(), 3, values).unwrap();
        let pyramid = analyze(&surface, 4).unwrap();
        let collapsed = synthesize(&pyramid, &grid, 0).unwrap();
        let four_pi = 4.0 * std::f64::consts::PI;
        for c in 0..3 {
            let centroid: f64 = grid
                .weights()
                .iter()
                .enumerate()
                .map(|(node, &w)| w * surface.value(node, c))
                .sum::<f64>()
                / four_pi;
            for node in 0..grid.n_nodes() {
                assert!(
                    (collapsed.value(node, c) - centroid).abs() < 1e-12,
                    "channel {c}: {} vs centroid {centroid}",
                    collapsed.value(node, c)
                );
            }
        }
    }

    #[test]
    fn residual_norm_basics() {
        let f = constant_field(2, 1.5);
        assert_eq!(residual_norm(&f, &f).unwrap(), 0.0);
        let g = constant_field(2, 0.5);
        // ||1.0 constant|| = sqrt(4 pi)
        let want = (4.0 * std::f64::consts::PI).sqrt();
        assert!((residual_norm(&f, &g).unwrap() - want).abs() < 1e-12);
        let h = constant_field(3, 0.5);
        assert!(residual_norm(&f, &h).is_err());
    }

    #[test]
    fn residual_of_orthogonal_truncation_is_full_norm() {
        // f = Re Y_{5,0}; truncation at J = 4 leaves the whole norm
        let grid = gauss_grid(5);
        let values: Vec<f64> = grid
            .nodes()
            .map(|p| sh_direct(5, 0, &p).unwrap().re)
            .collect();
        let field = SampledSphericalField::new(grid.clone(), 1, values).unwrap();
        let pyramid = analyze(&field, 5).unwrap();
        let trunc = synthesize(&pyramid, &grid, 4).unwrap();
        let res = residual_norm(&field, &trunc).unwrap();
        assert!((res - field.norm()).abs() < 1e-10 * field.norm().max(1.0));
    }

    #[test]
    fn truncation_residual_is_monotone() {
        let grid = gauss_grid(6);
        let values: Vec<f64> = grid
            .nodes()
            .map(|p| {
                1.0 + 0.4 * sh_direct(2, 1, &p).unwrap().re
                    + 0.2 * sh_direct(5, -3, &p).unwrap().re
                    + 0.1 * sh_direct(6, 0, &p).unwrap().re
            })
            .collect();
        let field = SampledSphericalField::new(grid.clone(), 1, values).unwrap();
        let pyramid = analyze(&field, 6).unwrap();
        let mut prev = f64::INFINITY;
        for order in 0..=6 {
            let r = residual_norm(&field, &synthesize(&pyramid, &grid, order).unwrap()).unwrap();
            assert!(r <= prev + 1e-12, "residual rose at J={order}: {r} > {prev}");
            prev = r;
        }
        assert!(prev < 1e-10);
    }

    #[test]
    fn synthesis_imaginary_residue_is_negligible() {
        // complex series sum of a real-symmetric pyramid, before taking Re
        let grid = gauss_grid(5);
        let values: Vec<f64> = grid
            .nodes()
            .map(|p| 1.0 + 0.3 * sh_direct(4, 2, &p).unwrap().re - 0.2 * sh_direct(5, -1, &p).unwrap().re)
            .collect();
        let pyramid = analyze(&SampledSphericalField::new(grid.clone(), 1, values).unwrap(), 5).unwrap();
        assert!(pyramid.is_real_symmetric(1e-12));
        for point in grid.nodes().take(7) {
            let basis = crate::basis::sh_recursive_ladder(5, &point).unwrap();
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..=5u32 {
                for m in -(l as i32)..=(l as i32) {
                    acc += pyramid.coeff(0, l, m) * basis.value(l, m);
                }
            }
            assert!(acc.im.abs() < 1e-9, "imaginary residue {}", acc.im);
        }
    }

    #[test]
    fn real_ab_pairs_reproduce_the_field() {
        // evaluate the cosine/sine expansion directly and compare
        let grid = gauss_grid(3);
        let values: Vec<f64> = grid
            .nodes()
            .map(|p| 0.7 + sh_direct(3, 2, &p).unwrap().re - 0.5 * sh_direct(2, 0, &p).unwrap().re)
            .collect();
        let field = SampledSphericalField::new(grid.clone(), 1, values.clone()).unwrap();
        let pyramid = analyze(&field, 3).unwrap();
        let pairs = real_ab_coefficients(&pyramid);
        for (node, point) in grid.nodes().enumerate() {
            let x = point.theta().cos();
            let mut acc = 0.0;
            for rc in pairs.iter().filter(|rc| rc.channel == 0) {
                let p = assoc_legendre_direct(rc.l, rc.m, x).unwrap();
                let mphi = rc.m as f64 * point.phi();
                acc += (rc.a * mphi.cos() + rc.b * mphi.sin()) * p;
            }
            assert!(
                (acc - values[node]).abs() < 1e-11,
                "node {node}: {acc} vs {}",
                values[node]
            );
        }
    }

    #[test]
    fn coefficient_counts() {
        assert_eq!(coefficient_count(4), 25);
        assert_eq!(coefficient_count(7), 64);
        assert_eq!(coefficient_count(17), 324);
    }
}
