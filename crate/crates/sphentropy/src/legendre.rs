//! Legendre polynomials and associated Legendre functions.
//!
//! Two independent evaluation routes are provided:
//!
//! * **direct** — `P_{l,m}(x) = (-1)^m (1-x^2)^{m/2} d^m P_l / dx^m`, with the
//!   derivative taken symbolically on the exact monomial expansion of
//!   `P_l(x) = 2^{-l} d^l/dx^l (x^2-1)^l`. Coefficients are built by exact
//!   integer running products and the polynomial is evaluated in
//!   double-double arithmetic, because the monomial form is ill-conditioned
//!   near `x = ±1` for large `l` (condition number ~1e10 at `l = 30`).
//! * **recursive** — the degree recurrence seeded from directly computed
//!   low-degree values.
//!
//! The degree recurrence follows from differentiating the three-term rule
//! `P_l = a_{l-1} x P_{l-1} - b_{l-1} P_{l-2}` `m` times (Leibniz) and
//! restoring the `(-1)^m (1-x^2)^{m/2}` weight:
//!
//! ```text
//! P_{l,m}(x) = a_{l-1} x P_{l-1,m}(x)
//!            - m a_{l-1} sqrt(1-x^2) P_{l-1,m-1}(x)
//!            - b_{l-1} P_{l-2,m}(x)
//! ```
//!
//! Note the order-lowering middle term: carrying the weight through the
//! derivative produces a `sqrt(1-x^2)` factor and a minus sign there. A
//! term-by-term transcription that keeps the weight outside the Leibniz step
//! drops both; the form above is the one that agrees with the direct route
//! to full precision (see the agreement tests). With the convention
//! `P_{l',m'} = 0` for `m' > l'`, the rule reaches every `(l, m)` with
//! `m <= l` from the three seeds `P_{0,0}`, `P_{1,0}`, `P_{1,1}`.

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Largest degree accepted by the direct (monomial-coefficient) route.
///
/// Beyond this the exact coefficient products approach the `f64` exponent
/// range. The recurrence routes carry no such cap.
pub const MAX_DIRECT_DEGREE: u32 = 64;

/// A degree/order pair with `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeOrder {
    l: u32,
    m: i32,
}

impl DegreeOrder {
    pub fn new(l: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > l {
            return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
        }
        Ok(DegreeOrder { l, m })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Position in the canonical l-major, m-ascending ordering:
    /// `(0,0), (1,-1), (1,0), (1,1), (2,-2), ...`
    pub fn canonical_index(&self) -> usize {
        let l = self.l as usize;
        l * l + (self.m + self.l as i32) as usize
    }
}

/// The pair of sequences `a_l = (2l+1)/(l+1)`, `b_l = l/(l+1)` driving the
/// degree recurrences, tabulated up to a band limit.
#[derive(Debug, Clone)]
pub struct BiFilter {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl BiFilter {
    pub fn l_max(&self) -> u32 {
        self.a.len() as u32 - 1
    }

    /// `a_l = (2l+1)/(l+1)`. Panics if `l` is beyond the tabulated range.
    pub fn a(&self, l: u32) -> f64 {
        self.a[l as usize]
    }

    /// `b_l = l/(l+1)`. Panics if `l` is beyond the tabulated range.
    pub fn b(&self, l: u32) -> f64 {
        self.b[l as usize]
    }
}

/// Tabulate the recurrence filter for degrees `0..=l_max`.
pub fn bi_filter(l_max: u32) -> BiFilter {
    let mut a = Vec::with_capacity(l_max as usize + 1);
    let mut b = Vec::with_capacity(l_max as usize + 1);
    for l in 0..=l_max as u64 {
        a.push((2 * l + 1) as f64 / (l + 1) as f64);
        b.push(l as f64 / (l + 1) as f64);
    }
    BiFilter { a, b }
}

/// The per-(l,m) scalars coupling normalized harmonics across degrees.
///
/// Each is a ratio of normalization constants:
/// `alpha = K_{l,m}/K_{l-1,m}`, `beta = K_{l,m}/K_{l-1,m-1}`,
/// `gamma = K_{l,m}/K_{l-2,m}`. In closed form:
///
/// ```text
/// alpha = sqrt( (2l+1)(l-m) / ((2l-1)(l+m)) )
/// beta  = -sqrt( (2l+1) / ((2l-1)(l+m)(l+m-1)) )        (m >= 1)
/// gamma = sqrt( (2l+1)(l-m)(l-m-1) / ((2l-3)(l+m)(l+m-1)) )
/// ```
///
/// `beta` is negative: the normalization constants of adjacent orders carry
/// opposite Condon-Shortley signs, so the ratio flips sign. A positive-`beta`
/// variant paired with a `+` middle term in the ladder is equivalent. A
/// frequently printed form of `gamma` has `(l-1)` in place of the first
/// `(l-m)` factor; the normalization-ratio derivation gives `(l-m)`, and only
/// that form matches the direct-evaluation oracle (for `m = 0` it must reduce
/// the ladder to the plain three-term rule, which `(l-1)` does not).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Compute the degree-coupling scalars for `(l, m)`, `l >= 1`, `0 <= m <= l`.
pub fn recurrence_coefficients(l: u32, m: u32) -> Result<RecurrenceCoefficients> {
    if l < 1 {
        return Err(Error::Domain("recurrence coefficients need l >= 1".into()));
    }
    if m > l {
        return Err(Error::Domain(format!("order m = {m} exceeds degree l = {l}")));
    }
    let (lf, mf) = (l as f64, m as f64);

    let alpha = ((2.0 * lf + 1.0) * (lf - mf) / ((2.0 * lf - 1.0) * (lf + mf))).sqrt();

    // The middle ladder term carries a factor m, so beta is never used at
    // m = 0 (where K_{l-1,m-1} does not exist); define it as 0 there.
    let beta = if m == 0 {
        0.0
    } else {
        -((2.0 * lf + 1.0) / ((2.0 * lf - 1.0) * (lf + mf) * (lf + mf - 1.0))).sqrt()
    };

    // gamma's numerator vanishes for m >= l-1 (where the two-degrees-down
    // neighbor does not exist); short-circuit so l = 1 never divides by the
    // negative (2l-3).
    let gamma_num = (2.0 * lf + 1.0) * (lf - mf) * (lf - mf - 1.0);
    let gamma = if gamma_num == 0.0 || m + 1 >= l {
        0.0
    } else {
        (gamma_num / ((2.0 * lf - 3.0) * (lf + mf) * (lf + mf - 1.0))).sqrt()
    };

    Ok(RecurrenceCoefficients { alpha, beta, gamma })
}

/// Evaluate the Legendre polynomial `P_n(x)` by the ascending three-term
/// recurrence `P_{n+1} = a_n x P_n - b_n P_{n-1}`, `P_0 = 1`, `P_1 = x`.
pub fn legendre(n: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut curr = x;
    for k in 1..n as u64 {
        let next = ((2 * k + 1) as f64 * x * curr - k as f64 * prev) / (k + 1) as f64;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

fn check_x(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("argument x = {x} outside [-1, 1]")));
    }
    Ok(())
}

/// Work-unit weight of one double-double primitive, in rough f64-flop terms.
pub(crate) const DD_OP: u64 = 10;

/// Monomial coefficients of `d^m P_l / dx^m`, highest power first.
///
/// From the Rodrigues form, `d^m P_l/dx^m = 2^{-l}/l! * d^{l+m}/dx^{l+m}
/// (x^2-1)^l`, the coefficient of `x^{l-m-2k}` is
/// `(-1)^k C(l,k) (2l-2k)(2l-2k-1)...(l-m-2k+1) / (2^l l!)`.
/// Every factor enters through an exact running product in double-double.
/// `ops` accrues one unit per double-double primitive.
fn derivative_coefficients(l: u32, m: u32, ops: &mut u64) -> Vec<Dd> {
    let (l, m) = (l as u64, m as u64);
    let n_terms = (l - m) / 2 + 1;
    let mut coeffs = Vec::with_capacity(n_terms as usize);
    for k in 0..n_terms {
        let mut c = Dd::ONE;
        // binomial C(l, k) as prod (l-k+i)/i
        for i in 1..=k {
            c = c.mul_f64((l - k + i) as f64).div_f64(i as f64);
            *ops += 2;
        }
        // falling factorial (2l-2k)(2l-2k-1)...(2l-2k-(l+m)+1), interleaved
        // with the division by l! to keep intermediates mid-range
        for i in 0..(l + m) {
            c = c.mul_f64((2 * l - 2 * k - i) as f64);
            *ops += 1;
            if i < l {
                c = c.div_f64((i + 1) as f64);
                *ops += 1;
            }
        }
        c = c.scale_pow2(2f64.powi(-(l as i32)));
        *ops += 1;
        if k % 2 == 1 {
            c = c.neg();
        }
        coeffs.push(c);
    }
    coeffs
}

/// Evaluate `sum_k coeffs[k] x^{top-2k}` where `top = l - m`, in
/// double-double. The polynomial is even or odd in x, so Horner steps over
/// `x^2` and a final factor of `x` handles odd parity.
fn horner_even_odd(coeffs: &[Dd], top: u32, x: f64, ops: &mut u64) -> Dd {
    let x2 = x * x; // one rounding; compensated below
    let x2_err = x.mul_add(x, -x2);
    let x2dd = Dd { hi: x2, lo: x2_err };
    let mut acc = Dd::ZERO;
    for &c in coeffs {
        acc = acc.mul(x2dd).add(c);
        *ops += 2;
    }
    if top % 2 == 1 {
        acc = acc.mul_f64(x);
        *ops += 1;
    }
    acc
}

/// Direct route with its operation tally (one unit per `DD_OP`-weighted
/// double-double primitive), for the scaling benchmarks.
pub(crate) fn assoc_legendre_direct_counted(l: u32, m: u32, x: f64) -> Result<(f64, u64)> {
    check_x(x)?;
    if m > l {
        return Err(Error::Domain(format!("order m = {m} exceeds degree l = {l}")));
    }
    if l > MAX_DIRECT_DEGREE {
        return Err(Error::Domain(format!(
            "direct route supports l <= {MAX_DIRECT_DEGREE}, got {l}"
        )));
    }
    if x.abs() == 1.0 {
        let v = if m > 0 {
            0.0
        } else if x > 0.0 || l.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        return Ok((v, 1));
    }
    let mut dd_ops = 0u64;
    let coeffs = derivative_coefficients(l, m, &mut dd_ops);
    let poly = horner_even_odd(&coeffs, l - m, x, &mut dd_ops);
    // (1-x^2)^{m/2} via (1-x)(1+x): both factors are exact-ish, avoiding the
    // cancellation of 1 - x*x near the endpoints
    let s2 = (1.0 - x) * (1.0 + x);
    let weight = if m.is_multiple_of(2) {
        s2.powi((m / 2) as i32)
    } else {
        s2.powi((m / 2) as i32) * s2.sqrt()
    };
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((sign * weight * poly.to_f64(), dd_ops * DD_OP + 6))
}

/// Associated Legendre function by the direct Rodrigues-derived route,
/// `P_{l,m}(x) = (-1)^m (1-x^2)^{m/2} d^m P_l/dx^m`, Condon-Shortley phase
/// included. Requires `0 <= m <= l <= MAX_DIRECT_DEGREE`.
pub fn assoc_legendre_direct(l: u32, m: u32, x: f64) -> Result<f64> {
    assoc_legendre_direct_counted(l, m, x).map(|(v, _)| v)
}

/// Associated Legendre function by the degree recurrence (module docs),
/// seeded with the degree-0/1 direct values carried in working precision.
///
/// The whole ladder runs in double-double. The order-coupling middle term
/// makes entries near zeros of `P_{l,m}` the difference of neighbors many
/// orders larger (15 orders at `(14, 11)`, `x = -1/3`), so seed and
/// `sqrt(1-x^2)` rounding at f64 width would surface as ~1e-5 absolute
/// error there.
pub fn assoc_legendre_recursive(l: u32, m: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    if m > l {
        return Err(Error::Domain(format!("order m = {m} exceeds degree l = {l}")));
    }
    if l == 0 {
        return assoc_legendre_direct(0, 0, x);
    }
    // (1-x)(1+x) is exact in double-double; its sqrt is the P_{1,1} seed
    let s = Dd::ONE
        .add(Dd::from_f64(-x))
        .mul(Dd::ONE.add(Dd::from_f64(x)))
        .sqrt();
    let mut prev2 = vec![Dd::ONE]; // P_{0,0} = 1
    let mut prev = vec![Dd::from_f64(x), s.neg()]; // P_{1,0}, P_{1,1}
    if l == 1 {
        return Ok(prev[m as usize].to_f64());
    }
    for deg in 2..=l as u64 {
        let a = Dd::from_f64((2 * deg - 1) as f64).div_f64(deg as f64); // a_{deg-1}
        let b = Dd::from_f64((deg - 1) as f64).div_f64(deg as f64); // b_{deg-1}
        let mut row = Vec::with_capacity(deg as usize + 1);
        for mm in 0..=deg as usize {
            let mut v = Dd::ZERO;
            if mm < deg as usize {
                v = v.add(prev[mm].mul(a).mul_f64(x));
            }
            if mm >= 1 {
                v = v.add(prev[mm - 1].mul_f64(mm as f64).mul(a).mul(s).neg());
            }
            if mm + 2 <= deg as usize {
                v = v.add(prev2[mm].mul(b).neg());
            }
            row.push(v);
        }
        prev2 = std::mem::replace(&mut prev, row);
    }
    Ok(prev[m as usize].to_f64())
}
