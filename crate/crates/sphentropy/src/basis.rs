//! Complex spherical harmonics `Y_{l,m}(theta, phi)`.
//!
//! Two evaluation strategies:
//!
//! * [`sh_direct`] applies the closed formula
//!   `Y_{l,m} = K_{l,m} P_{l,m}(cos theta) e^{i m phi}` entry by entry, with
//!   `P_{l,m}` from the direct Rodrigues route.
//! * [`sh_recursive_ladder`] fills all `(l_max+1)^2` values of a point at
//!   constant cost per entry, climbing degrees with the rule
//!
//!   ```text
//!   Y_{l,m} = a_{l-1} alpha_{l,m} cos(theta) Y_{l-1,m}
//!           - m a_{l-1} beta_{l,m} sin(theta) e^{i phi} Y_{l-1,m-1}
//!           - b_{l-1} gamma_{l,m} Y_{l-2,m}
//!   ```
//!
//!   where `alpha/beta/gamma` are the normalization-constant ratios from
//!   [`crate::legendre::recurrence_coefficients`] (`beta < 0`, so the middle
//!   term adds). Diagonal entries come from the running product
//!   `Y_{l,l} = sqrt((2l+1)/(2l)) sin(theta) e^{i phi} Y_{l-1,l-1}`, which is
//!   algebraically what the middle term reduces to at `m = l` but cheaper and
//!   free of the `Y_{l-1,l}` reachability question. Negative orders are
//!   filled from `Y_{l,-m} = (-1)^m conj(Y_{l,m})`, which halves the work and
//!   makes the conjugate symmetry exact by construction.
//!
//! Both strategies use the phase convention in which `K_{l,m}` and `P_{l,m}`
//! each carry the Condon-Shortley factor `(-1)^m`, so their product is
//! sign-free for `m >= 0`; the conjugate-symmetry relation above is the same
//! as for the standard physics basis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::legendre::{
    assoc_legendre_direct_counted, bi_filter, recurrence_coefficients, DegreeOrder,
};

/// A point on the unit sphere: colatitude `theta` in `[0, pi]`, longitude
/// `phi` normalized into `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    theta: f64,
    phi: f64,
}

impl SphericalPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain(format!(
                "colatitude theta = {theta} outside [0, pi]"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::Domain(format!("longitude phi = {phi} not finite")));
        }
        let tau = 2.0 * std::f64::consts::PI;
        let mut phi = phi.rem_euclid(tau);
        if phi >= tau {
            phi = 0.0;
        }
        Ok(SphericalPoint { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Basis evaluation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Entry-by-entry closed formula (Rodrigues-derived `P_{l,m}`).
    Direct,
    /// Degree-recurrence ladder over the whole pyramid.
    Recursive,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Direct => write!(f, "direct"),
            Strategy::Recursive => write!(f, "recursive"),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "recursive" => Ok(Strategy::Recursive),
            other => Err(Error::Validation(format!(
                "unknown strategy '{other}' (expected 'direct' or 'recursive')"
            ))),
        }
    }
}

/// All `(l_max+1)^2` harmonics of one point, in canonical l-major order.
#[derive(Debug, Clone)]
pub struct BasisEvaluation {
    l_max: u32,
    strategy: Strategy,
    values: Vec<Complex64>,
    ops: u64,
}

impl BasisEvaluation {
    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// `Y_{l,m}` for `|m| <= l <= l_max`. Panics outside that range.
    pub fn value(&self, l: u32, m: i32) -> Complex64 {
        let lm = DegreeOrder::new(l, m).expect("|m| <= l");
        assert!(l <= self.l_max, "degree {l} beyond band limit {}", self.l_max);
        self.values[lm.canonical_index()]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Abstract work units spent producing this evaluation. Units are
    /// strategy-specific (scalar flops for the ladder, weighted double-double
    /// primitives for the direct route); meaningful for scaling comparisons
    /// within one strategy.
    pub fn ops(&self) -> u64 {
        self.ops
    }
}

/// Normalization constant `K_{l,m} = (-1)^m sqrt((2l+1)(l-|m|)! / (4 pi (l+|m|)!))`.
///
/// The factorial ratio is accumulated as a running product of the integers
/// `l-|m|+1 ..= l+|m|`, never as a quotient of two factorials.
pub fn normalization_constant(l: u32, m: i32) -> Result<f64> {
    let m_abs = m.unsigned_abs();
    if m_abs > l {
        return Err(Error::Domain(format!(
            "|m| = {m_abs} exceeds l = {l} in normalization constant"
        )));
    }
    let mut ratio = 1.0;
    for j in (l - m_abs + 1)..=(l + m_abs) {
        ratio *= f64::from(j);
    }
    let k = ((2.0 * f64::from(l) + 1.0) / (4.0 * std::f64::consts::PI * ratio)).sqrt();
    Ok(if m_abs.is_multiple_of(2) { k } else { -k })
}

fn sh_direct_counted(l: u32, m: i32, point: &SphericalPoint) -> Result<(Complex64, u64)> {
    let m_abs = m.unsigned_abs();
    if m_abs > l {
        return Err(Error::Domain(format!("|m| = {m_abs} exceeds l = {l}")));
    }
    let (p, p_ops) = assoc_legendre_direct_counted(l, m_abs, point.theta.cos())?;
    let k = normalization_constant(l, m_abs as i32)?;
    let phase = Complex64::from_polar(1.0, f64::from(m_abs) * point.phi);
    let y = k * p * phase;
    let ops = p_ops + 2 * u64::from(m_abs) + 10;
    if m >= 0 {
        Ok((y, ops))
    } else if m_abs.is_multiple_of(2) {
        Ok((y.conj(), ops))
    } else {
        Ok((-y.conj(), ops))
    }
}

/// Single harmonic by the closed formula. Negative orders use
/// `Y_{l,-m} = (-1)^m conj(Y_{l,m})`.
pub fn sh_direct(l: u32, m: i32, point: &SphericalPoint) -> Result<Complex64> {
    sh_direct_counted(l, m, point).map(|(y, _)| y)
}

/// Fill one point's pyramid into `out` (length `(l_max+1)^2`, canonical
/// order) with the recurrence ladder; returns the work-unit tally.
pub(crate) fn ladder_into(l_max: u32, point: &SphericalPoint, out: &mut [Complex64]) -> Result<u64> {
    debug_assert_eq!(out.len(), ((l_max + 1) * (l_max + 1)) as usize);
    let mut ops: u64 = 0;

    out[0] = sh_direct(0, 0, point)?;
    if l_max == 0 {
        return Ok(1);
    }
    for m in -1..=1 {
        out[DegreeOrder::new(1, m)?.canonical_index()] = sh_direct(1, m, point)?;
    }
    ops += 4;

    let x = point.theta.cos();
    let s = point.theta.sin();
    let phase = Complex64::from_polar(1.0, point.phi);
    let filter = bi_filter(l_max.saturating_sub(1));

    let idx = |l: u32, m: i32| -> usize {
        (l as usize) * (l as usize) + (m + l as i32) as usize
    };

    for l in 2..=l_max {
        let a = filter.a(l - 1);
        let b = filter.b(l - 1);
        for m in 0..l {
            let coeff = recurrence_coefficients(l, m)?;
            let mut y = a * coeff.alpha * x * out[idx(l - 1, m as i32)];
            ops += 5;
            if m >= 1 {
                let mid = f64::from(m) * a * coeff.beta * s;
                y -= mid * (phase * out[idx(l - 1, m as i32 - 1)]);
                ops += 13;
            }
            if m + 2 <= l {
                y -= b * coeff.gamma * out[idx(l - 2, m as i32)];
                ops += 4;
            }
            out[idx(l, m as i32)] = y;
        }
        // diagonal running product
        let d = ((2.0 * f64::from(l) + 1.0) / (2.0 * f64::from(l))).sqrt();
        out[idx(l, l as i32)] = d * s * (phase * out[idx(l - 1, l as i32 - 1)]);
        ops += 10;
        // negative orders by conjugate symmetry
        for m in 1..=l {
            let y = out[idx(l, m as i32)].conj();
            out[idx(l, -(m as i32))] = if m % 2 == 0 { y } else { -y };
            ops += 1;
        }
    }
    Ok(ops)
}

/// Evaluate the whole pyramid of one point with the recurrence ladder,
/// seeded at degrees 0 and 1 from [`sh_direct`].
pub fn sh_recursive_ladder(l_max: u32, point: &SphericalPoint) -> Result<BasisEvaluation> {
    let n = ((l_max + 1) * (l_max + 1)) as usize;
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let ops = ladder_into(l_max, point, &mut values)?;
    Ok(BasisEvaluation {
        l_max,
        strategy: Strategy::Recursive,
        values,
        ops,
    })
}

fn direct_into(l_max: u32, point: &SphericalPoint, out: &mut [Complex64]) -> Result<u64> {
    let mut ops = 0u64;
    let idx = |l: u32, m: i32| -> usize {
        (l as usize) * (l as usize) + (m + l as i32) as usize
    };
    for l in 0..=l_max {
        for m in 0..=l {
            let (y, o) = sh_direct_counted(l, m as i32, point)?;
            out[idx(l, m as i32)] = y;
            ops += o;
            if m > 0 {
                let yc = y.conj();
                out[idx(l, -(m as i32))] = if m % 2 == 0 { yc } else { -yc };
                ops += 1;
            }
        }
    }
    Ok(ops)
}

/// Evaluate the whole pyramid of one point with the requested strategy.
pub fn evaluate_basis(
    l_max: u32,
    point: &SphericalPoint,
    strategy: Strategy,
) -> Result<BasisEvaluation> {
    match strategy {
        Strategy::Recursive => sh_recursive_ladder(l_max, point),
        Strategy::Direct => {
            let n = ((l_max + 1) * (l_max + 1)) as usize;
            let mut values = vec![Complex64::new(0.0, 0.0); n];
            let ops = direct_into(l_max, point, &mut values)?;
            Ok(BasisEvaluation {
                l_max,
                strategy: Strategy::Direct,
                values,
                ops,
            })
        }
    }
}

/// Default cap on a basis matrix allocation.
pub const DEFAULT_MATRIX_BUDGET_BYTES: usize = 512 << 20;

/// Dense matrix of basis values: row per grid node, column per `(l, m)` in
/// canonical l-major order (m ascending from `-l` to `l`).
#[derive(Debug, Clone)]
pub struct BasisMatrix {
    l_max: u32,
    n_nodes: usize,
    strategy: Strategy,
    data: Vec<Complex64>,
    ops: u64,
}

impl BasisMatrix {
    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_columns(&self) -> usize {
        ((self.l_max + 1) * (self.l_max + 1)) as usize
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Basis values of node `i`, canonical column order.
    pub fn row(&self, i: usize) -> &[Complex64] {
        let w = self.n_columns();
        &self.data[i * w..(i + 1) * w]
    }

    pub fn value(&self, node: usize, l: u32, m: i32) -> Complex64 {
        self.row(node)[DegreeOrder::new(l, m).expect("|m| <= l").canonical_index()]
    }

    /// Total work units spent filling the matrix (see [`BasisEvaluation::ops`]).
    pub fn ops(&self) -> u64 {
        self.ops
    }
}

/// Evaluate `Y_{l,m}` for every grid node and every `(l, m)` with
/// `l <= l_max`, within the default memory budget.
pub fn basis_matrix(
    l_max: u32,
    grid: &crate::grid::SphereGrid,
    strategy: Strategy,
) -> Result<BasisMatrix> {
    basis_matrix_with_budget(l_max, grid, strategy, DEFAULT_MATRIX_BUDGET_BYTES)
}

/// As [`basis_matrix`] with an explicit allocation budget in bytes.
pub fn basis_matrix_with_budget(
    l_max: u32,
    grid: &crate::grid::SphereGrid,
    strategy: Strategy,
    budget_bytes: usize,
) -> Result<BasisMatrix> {
    let n_nodes = grid.n_nodes();
    if n_nodes == 0 {
        return Err(Error::Validation("basis matrix over an empty grid".into()));
    }
    let n_cols = ((l_max + 1) * (l_max + 1)) as usize;
    let requested = n_nodes
        .checked_mul(n_cols)
        .and_then(|n| n.checked_mul(std::mem::size_of::<Complex64>()))
        .ok_or(Error::ResourceBudget {
            requested_bytes: usize::MAX,
            budget_bytes,
        })?;
    if requested > budget_bytes {
        return Err(Error::ResourceBudget {
            requested_bytes: requested,
            budget_bytes,
        });
    }
    let mut data = vec![Complex64::new(0.0, 0.0); n_nodes * n_cols];
    let mut ops = 0u64;
    for (i, point) in grid.nodes().enumerate() {
        let row = &mut data[i * n_cols..(i + 1) * n_cols];
        ops += match strategy {
            Strategy::Recursive => ladder_into(l_max, &point, row)?,
            Strategy::Direct => direct_into(l_max, &point, row)?,
        };
    }
    Ok(BasisMatrix {
        l_max,
        n_nodes,
        strategy,
        data,
        ops,
    })
}
