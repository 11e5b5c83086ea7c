//! Minimal double-double arithmetic.
//!
//! A value is stored as an unevaluated sum `hi + lo` of two `f64`, giving
//! roughly 106 bits of significand. Only the handful of operations needed by
//! the polynomial-coefficient evaluation path are implemented: addition,
//! multiplication by another double-double or by an `f64`, division by an
//! `f64`, and exact scaling by powers of two.
//!
//! Products are split with the Dekker/Veltkamp scheme rather than `mul_add`
//! so the kernel stays branch-free and fast on targets without hardware FMA.

/// Double-double number: `hi` carries the leading bits, `lo` the residue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two arbitrary doubles (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Error-free sum assuming `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Veltkamp splitting constant: 2^27 + 1.
const SPLITTER: f64 = 134_217_729.0;

/// Split a double into two 26-bit halves with `a = hi + lo` exactly.
#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    let lo = a - hi;
    (hi, lo)
}

/// Error-free product of two doubles (Dekker two-product).
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (a_hi, a_lo) = split(a);
    let (b_hi, b_lo) = split(b);
    let err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Quotient by a double, refined with one error-correction step.
    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q1 = self.hi / x;
        let (p, e) = two_prod(q1, x);
        let r = ((self.hi - p) - e) + self.lo;
        let q2 = r / x;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    /// Exact multiplication by a power of two.
    #[inline]
    pub fn scale_pow2(self, factor: f64) -> Dd {
        debug_assert!(factor.abs().log2().fract() == 0.0);
        Dd {
            hi: self.hi * factor,
            lo: self.lo * factor,
        }
    }

    /// Square root, one Newton refinement over the f64 estimate.
    #[inline]
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let y0 = self.hi.sqrt();
        let y0dd = Dd::from_f64(y0);
        let residual = self.add(y0dd.mul(y0dd).neg());
        y0dd.add(residual.div_f64(2.0 * y0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_sum_recovers_lost_bits() {
        let (s, e) = two_sum(1.0, 1e-30);
        assert_eq!(s, 1.0);
        assert_eq!(e, 1e-30);
    }

    #[test]
    fn two_prod_is_error_free() {
        // 1 + 2^-30 squared: cross term 2^-29 is representable, square 2^-60 is not.
        let a = 1.0 + 2f64.powi(-30);
        let (p, e) = two_prod(a, a);
        assert_eq!(p + e, p); // p absorbs everything representable
        assert_eq!(e, 2f64.powi(-60));
    }

    #[test]
    fn dd_accumulates_beyond_f64() {
        // (1 + 2^-80) - 1 survives in double-double.
        let tiny = Dd::from_f64(2f64.powi(-80));
        let x = Dd::ONE.add(tiny);
        let diff = x.add(Dd::ONE.neg());
        assert_eq!(diff.to_f64(), 2f64.powi(-80));
    }

    #[test]
    fn div_round_trips() {
        let x = Dd::from_f64(1.0).div_f64(3.0);
        let back = x.mul_f64(3.0);
        assert!((back.to_f64() - 1.0).abs() < 1e-31);
    }

    #[test]
    fn scale_pow2_is_exact() {
        let x = Dd::from_f64(1.0).div_f64(3.0);
        let y = x.scale_pow2(0.25).scale_pow2(4.0);
        assert_eq!(x, y);
    }
}
