//! Sampling grids on the sphere with quadrature weights.
//!
//! A grid turns the analysis integral over `sin(theta) dtheta dphi` into a
//! weighted sum over nodes. Two kinds are provided:
//!
//! * [`gauss_grid`] — Gauss-Legendre nodes in `cos(theta)` crossed with a
//!   uniform longitude rule. The parameter-`L` grid integrates every product
//!   `Y_{l,m} conj(Y_{l',m'})` with `l, l' <= L` exactly, which makes
//!   analysis/synthesis round trips exact for band-limited fields.
//! * [`equiangular_grid`] — uniform colatitude/longitude product grid with
//!   midpoint weights `sin(theta) dtheta dphi`, for ingesting externally
//!   sampled data. Midpoint placement keeps pole rows off `sin(theta) = 0`.

use serde::{Deserialize, Serialize};

use crate::basis::SphericalPoint;
use crate::error::{Error, Result};

/// Grid family, with the parameters needed to rebuild it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GridKind {
    /// Gauss-Legendre in colatitude; exact through basis degree `parameter`.
    GaussLegendre { parameter: u32 },
    /// Uniform midpoint rule in both angles.
    Equiangular { n_theta: usize, n_phi: usize },
}

/// Structured product grid: colatitudes x longitudes, one quadrature weight
/// per node (steradians). Node index is theta-major: `i * n_phi + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    weights: Vec<f64>,
    kind: GridKind,
}

impl SphereGrid {
    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    /// Per-node weights, theta-major.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_nodes(&self) -> usize {
        self.thetas.len() * self.phis.len()
    }

    /// Nodes in weight order (theta-major).
    pub fn nodes(&self) -> impl Iterator<Item = SphericalPoint> + '_ {
        self.thetas.iter().flat_map(move |&theta| {
            self.phis
                .iter()
                .map(move |&phi| SphericalPoint::new(theta, phi).expect("valid grid node"))
        })
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Largest basis degree whose analysis this grid supports exactly
    /// (Gauss), or without aliasing by the half-resolution rule (equiangular).
    pub fn max_exact_degree(&self) -> u32 {
        match self.kind {
            GridKind::GaussLegendre { parameter } => parameter,
            GridKind::Equiangular { n_theta, n_phi } => {
                ((n_theta.min(n_phi) as u32).saturating_sub(1)) / 2
            }
        }
    }

    /// Whether analysis at degree `l_max` is exact on this grid.
    pub fn supports_band_limit(&self, l_max: u32) -> bool {
        match self.kind {
            GridKind::GaussLegendre { parameter } => l_max <= parameter,
            GridKind::Equiangular { .. } => l_max <= self.max_exact_degree(),
        }
    }

    /// Rebuild a grid from parts read back from disk; validates the weight
    /// sum against the 4*pi invariant at the kind's tolerance.
    pub(crate) fn from_parts(
        thetas: Vec<f64>,
        phis: Vec<f64>,
        weights: Vec<f64>,
        kind: GridKind,
    ) -> Result<Self> {
        if thetas.len() * phis.len() != weights.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} x {} nodes but {} weights",
                thetas.len(),
                phis.len(),
                weights.len()
            )));
        }
        let grid = SphereGrid {
            thetas,
            phis,
            weights,
            kind,
        };
        grid.validate_weight_sum()?;
        Ok(grid)
    }

    pub(crate) fn validate_weight_sum(&self) -> Result<()> {
        let four_pi = 4.0 * std::f64::consts::PI;
        // midpoint-rule weight sums deviate by ~pi^2/(24 n^2); allow 4x that
        // on coarse grids, tightening to 1e-3 from ~51 nodes per angle up
        let tol = match self.kind {
            GridKind::GaussLegendre { .. } => 1e-12,
            GridKind::Equiangular { n_theta, .. } => {
                let n = n_theta as f64;
                (std::f64::consts::PI.powi(2) / (6.0 * n * n)).max(1e-3)
            }
        };
        let sum = self.weight_sum();
        if ((sum - four_pi) / four_pi).abs() > tol {
            return Err(Error::Validation(format!(
                "grid weight sum {sum} deviates from 4*pi beyond {tol}"
            )));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`: Newton iteration on the
/// three-term recurrence, Chebyshev initial guesses, symmetric fill.
fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // P_n(z) and P_n'(z) by the ascending recurrence
            let mut p0 = 1.0;
            let mut p1 = z;
            for k in 1..n {
                let p2 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p0) / (k + 1) as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        // one clean-up evaluation at the converged root
        let mut p0 = 1.0;
        let mut p1 = z;
        for k in 1..n {
            let p2 = ((2 * k + 1) as f64 * z * p1 - k as f64 * p0) / (k + 1) as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

/// Grid exact for all basis products up to degree `l_max`: `l_max + 1`
/// Gauss-Legendre colatitude nodes, `2*l_max + 2` uniform longitudes.
pub fn gauss_grid(l_max: u32) -> SphereGrid {
    let n_theta = l_max as usize + 1;
    let n_phi = 2 * l_max as usize + 2;
    let (xs, ws) = gauss_legendre_nodes(n_theta);
    // cos(theta) descending in x means theta ascending; keep theta sorted
    let mut thetas: Vec<f64> = xs.iter().rev().map(|&x| x.acos()).collect();
    let theta_weights: Vec<f64> = ws.iter().rev().copied().collect();
    // acos can drift a hair outside [0, pi] only for |x| > 1, which Gauss
    // nodes never are; clamp for the pathological rounding case anyway
    for t in &mut thetas {
        *t = t.clamp(0.0, std::f64::consts::PI);
    }
    let phi_weight = 2.0 * std::f64::consts::PI / n_phi as f64;
    let phis: Vec<f64> = (0..n_phi).map(|j| j as f64 * phi_weight).collect();
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for &tw in &theta_weights {
        for _ in 0..n_phi {
            weights.push(tw * phi_weight);
        }
    }
    SphereGrid {
        thetas,
        phis,
        weights,
        kind: GridKind::GaussLegendre { parameter: l_max },
    }
}

/// Uniform midpoint-rule grid: `n_theta` colatitudes at cell midpoints of
/// `(0, pi)`, `n_phi` longitudes from 0, weight `sin(theta) dtheta dphi`.
pub fn equiangular_grid(n_theta: usize, n_phi: usize) -> Result<SphereGrid> {
    if n_theta < 2 || n_phi < 2 {
        return Err(Error::Validation(format!(
            "equiangular grid needs at least 2 nodes per angle, got {n_theta} x {n_phi}"
        )));
    }
    let d_theta = std::f64::consts::PI / n_theta as f64;
    let d_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let thetas: Vec<f64> = (0..n_theta).map(|i| (i as f64 + 0.5) * d_theta).collect();
    let phis: Vec<f64> = (0..n_phi).map(|j| j as f64 * d_phi).collect();
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for &theta in &thetas {
        let w = theta.sin() * d_theta * d_phi;
        for _ in 0..n_phi {
            weights.push(w);
        }
    }
    Ok(SphereGrid {
        thetas,
        phis,
        weights,
        kind: GridKind::Equiangular { n_theta, n_phi },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn gauss_grid_minimal() {
        let g = gauss_grid(0);
        assert_eq!(g.n_nodes(), 2);
        assert!((g.weight_sum() - 4.0 * PI).abs() < 1e-12 * 4.0 * PI);
    }

    #[test]
    fn gauss_two_point_nodes() {
        // 2-point Gauss-Legendre nodes are cos(theta) = ±1/sqrt(3)
        let g = gauss_grid(1);
        let mut cosines: Vec<f64> = g.thetas().iter().map(|t| t.cos()).collect();
        cosines.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((cosines[0] + 0.5773502691896258).abs() < 1e-14);
        assert!((cosines[1] - 0.5773502691896258).abs() < 1e-14);
    }

    #[test]
    fn gauss_weight_sum_across_sizes() {
        for l in [0u32, 1, 2, 5, 16, 33, 64] {
            let g = gauss_grid(l);
            assert_eq!(g.n_nodes(), (l as usize + 1) * (2 * l as usize + 2));
            let rel = (g.weight_sum() - 4.0 * PI).abs() / (4.0 * PI);
            assert!(rel < 1e-12, "L={l}: weight-sum relative error {rel}");
            assert!(g.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn equiangular_counts_and_weight_sum() {
        for (n, nodes) in [(51usize, 2601usize), (61, 3721), (91, 8281)] {
            let g = equiangular_grid(n, n).unwrap();
            assert_eq!(g.n_nodes(), nodes);
            let rel = (g.weight_sum() - 4.0 * PI).abs() / (4.0 * PI);
            assert!(rel < 1e-3, "{n}x{n}: weight-sum relative error {rel}");
        }
        assert!(equiangular_grid(1, 10).is_err());
    }

    #[test]
    fn equiangular_interior_thetas() {
        let g = equiangular_grid(10, 10).unwrap();
        for &t in g.thetas() {
            assert!(t > 0.0 && t < PI);
        }
    }

    #[test]
    fn gauss_grid_orthonormality_spot_check() {
        // <Y_{2,1}, Y_{2,1}> = 1 and a couple of cross terms vanish
        let g = gauss_grid(2);
        let pairs = [((2, 1), (2, 1), 1.0), ((2, 1), (1, 1), 0.0), ((2, 0), (0, 0), 0.0)];
        for ((l1, m1), (l2, m2), want) in pairs {
            let mut acc = Complex64::new(0.0, 0.0);
            for (point, &w) in g.nodes().zip(g.weights()) {
                let y1 = crate::basis::sh_direct(l1, m1, &point).unwrap();
                let y2 = crate::basis::sh_direct(l2, m2, &point).unwrap();
                acc += w * y1 * y2.conj();
            }
            assert!(
                (acc - Complex64::new(want, 0.0)).norm() < 1e-12,
                "<Y_{l1}{m1}, Y_{l2}{m2}> = {acc}"
            );
        }
    }

    #[test]
    fn band_limit_support() {
        assert!(gauss_grid(8).supports_band_limit(8));
        assert!(!gauss_grid(8).supports_band_limit(9));
        let eq = equiangular_grid(51, 51).unwrap();
        assert_eq!(eq.max_exact_degree(), 25);
        assert!(eq.supports_band_limit(25));
        assert!(!eq.supports_band_limit(26));
    }
}
