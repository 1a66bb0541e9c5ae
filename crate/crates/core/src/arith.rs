//! Exact integer/rational arithmetic plus error-tracked real approximations.
//!
//! Exact values use [`BigInt`] and [`Rational`] (always reduced, positive
//! denominator). Approximate reals are carried by [`ApproxReal`], a
//! double-double value paired with a conservative absolute error bound.
//! The double-double carrier matters: natural logs of integers with 10^5+
//! digits exceed what a single f64 can resolve to the 2^-40 absolute
//! precision promised by [`log_of_bigint`].

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rational = num_rational::BigRational;

/// ln(2) split into a double-double pair (hi + lo carries ~107 bits).
const LN2_HI: f64 = 0.693_147_180_559_945_3;
const LN2_LO: f64 = 2.319_046_813_846_3e-17;

/// Absolute error claimed by [`log_of_bigint`]; the actual error is below
/// 2^-46 (f64 `ln` on the 63-bit leading window plus the truncated tail),
/// so 2^-44 leaves margin while staying far below the 2^-40 contract.
pub const LOG_ABS_ERROR: f64 = 5.684_341_886_080_802e-14; // 2^-44

// ---------------------------------------------------------------------------
// Double-double building blocks (Dekker/Knuth error-free transforms).
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub(crate) fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub(crate) fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub(crate) fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Multiply by an exact power of two (no rounding).
    pub(crate) fn scale_pow2(self, exp: i32) -> Dd {
        let f = 2f64.powi(exp);
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub(crate) fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact conversion: a double-double is a sum of two binary fractions.
    pub(crate) fn to_rational(self) -> Rational {
        let hi = Rational::from_float(self.hi).unwrap_or_else(Rational::zero);
        let lo = Rational::from_float(self.lo).unwrap_or_else(Rational::zero);
        hi + lo
    }
}

// ---------------------------------------------------------------------------
// ApproxReal
// ---------------------------------------------------------------------------

/// A high-precision real together with a conservative absolute error bound.
///
/// Arithmetic propagates error bounds interval-style; a small slack term
/// covers the double-double rounding of each operation.
#[derive(Clone, Copy, Debug)]
pub struct ApproxReal {
    value: Dd,
    abs_error: f64,
}

/// Rounding slack for one double-double operation on `v`.
#[inline]
fn op_slack(v: Dd) -> f64 {
    v.to_f64().abs() * 1e-30 + 1e-300
}

impl ApproxReal {
    pub fn zero() -> ApproxReal {
        ApproxReal {
            value: Dd::ZERO,
            abs_error: 0.0,
        }
    }

    /// An exactly-known value (error bound zero).
    pub fn exact(x: f64) -> ApproxReal {
        ApproxReal {
            value: Dd::from_f64(x),
            abs_error: 0.0,
        }
    }

    pub fn with_error(x: f64, abs_error: f64) -> ApproxReal {
        assert!(abs_error >= 0.0, "error bound must be non-negative");
        ApproxReal {
            value: Dd::from_f64(x),
            abs_error,
        }
    }

    pub(crate) fn from_parts(value: Dd, abs_error: f64) -> ApproxReal {
        debug_assert!(abs_error >= 0.0);
        ApproxReal { value, abs_error }
    }

    pub fn value(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs_error(&self) -> f64 {
        self.abs_error
    }

    pub(crate) fn value_dd(&self) -> Dd {
        self.value
    }

    /// Exact rational representation of the carried value (not the error).
    pub fn value_as_rational(&self) -> Rational {
        self.value.to_rational()
    }

    pub fn add(&self, other: &ApproxReal) -> ApproxReal {
        let value = self.value.add(other.value);
        ApproxReal {
            value,
            abs_error: self.abs_error + other.abs_error + op_slack(value),
        }
    }

    pub fn sub(&self, other: &ApproxReal) -> ApproxReal {
        let value = self.value.sub(other.value);
        ApproxReal {
            value,
            abs_error: self.abs_error + other.abs_error + op_slack(value),
        }
    }

    pub fn neg(&self) -> ApproxReal {
        ApproxReal {
            value: self.value.neg(),
            abs_error: self.abs_error,
        }
    }

    pub fn mul(&self, other: &ApproxReal) -> ApproxReal {
        let value = self.value.mul(other.value);
        let a = self.value.to_f64().abs();
        let b = other.value.to_f64().abs();
        ApproxReal {
            value,
            abs_error: a * other.abs_error
                + b * self.abs_error
                + self.abs_error * other.abs_error
                + op_slack(value),
        }
    }

    /// Divide by 4^k exactly (both value and error scale by a power of two).
    pub fn div_pow4(&self, k: u32) -> ApproxReal {
        let exp = -2 * k as i32;
        ApproxReal {
            value: self.value.scale_pow2(exp),
            abs_error: self.abs_error * 2f64.powi(exp),
        }
    }

    /// Halve exactly.
    pub fn halve(&self) -> ApproxReal {
        ApproxReal {
            value: self.value.scale_pow2(-1),
            abs_error: self.abs_error * 0.5,
        }
    }

    /// Widen the error bound by `extra`.
    pub fn widen(&self, extra: f64) -> ApproxReal {
        assert!(extra >= 0.0);
        ApproxReal {
            value: self.value,
            abs_error: self.abs_error + extra,
        }
    }

    /// True when the interval `value +- abs_error` excludes zero.
    pub fn certainly_nonzero(&self) -> bool {
        self.value().abs() > self.abs_error
    }
}

impl std::fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} +- {:.3e}", self.value(), self.abs_error)
    }
}

// ---------------------------------------------------------------------------
// Logarithm of a big integer
// ---------------------------------------------------------------------------

/// Natural logarithm of a positive integer of arbitrary size.
///
/// The value is assembled as `ln(top) + shift * ln 2` from the leading 63
/// bits, so the input is never squeezed through a bounded float. The
/// returned bound is [`LOG_ABS_ERROR`] (2^-44); `ln(1)` is exact.
pub fn log_of_bigint(n: &BigInt) -> Result<ApproxReal> {
    if !n.is_positive() {
        return Err(Error::NonPositiveLog(n.clone()));
    }
    if n.is_one() {
        return Ok(ApproxReal::zero());
    }
    let bits = n.bits();
    let (top, shift) = if bits <= 63 {
        (n.to_u64().expect("fits in 63 bits"), 0u64)
    } else {
        let shift = bits - 63;
        ((n >> shift).to_u64().expect("63-bit window"), shift)
    };
    // ln(top): |ln| <= 44, f64 ln is within ~2^-46 absolute here.
    let ln_top = Dd::from_f64((top as f64).ln());
    // shift * ln2 in double-double; shift < 2^53 so the product is exact.
    let s = shift as f64;
    let (p, e) = two_prod(s, LN2_HI);
    let tail = s.mul_add(LN2_LO, e);
    let (hi, lo) = quick_two_sum(p, tail);
    let value = ln_top.add(Dd { hi, lo });
    // The discarded low bits of n contribute ln(1 + theta/top) < 2^-62,
    // absorbed by the claimed bound.
    Ok(ApproxReal::from_parts(value, LOG_ABS_ERROR))
}

// ---------------------------------------------------------------------------
// Rational reconstruction
// ---------------------------------------------------------------------------

/// Recover the unique rational with denominator at most `den_bound` lying
/// within `x`'s error bound, if one exists.
///
/// Uses the continued-fraction expansion of the exact double-double value;
/// when `abs_error < 1/(2*den_bound^2)` any qualifying rational is a
/// convergent, so the scan is complete.
pub fn rational_reconstruct(x: &ApproxReal, den_bound: &BigInt) -> Option<Rational> {
    let target = x.value_as_rational();
    let tol = Rational::from_float(x.abs_error)?;
    reconstruct_from_rational(&target, &tol, den_bound)
}

/// Continued-fraction search over an exact rational target.
pub(crate) fn reconstruct_from_rational(
    target: &Rational,
    tol: &Rational,
    den_bound: &BigInt,
) -> Option<Rational> {
    if den_bound < &BigInt::one() {
        return None;
    }
    // Convergent recurrence h_k = a_k h_{k-1} + h_{k-2}, same for k.
    let (mut h_prev, mut k_prev) = (BigInt::one(), BigInt::zero());
    let mut x = target.clone();
    let (mut h, mut k) = {
        let a0 = x.floor().to_integer();
        (a0, BigInt::one())
    };
    loop {
        if k <= *den_bound {
            let cand = Rational::new(h.clone(), k.clone());
            if (target - &cand).abs() <= *tol {
                return Some(cand);
            }
        } else {
            return None;
        }
        let a = x.floor();
        let frac = &x - &a;
        if frac.is_zero() {
            return None; // expansion exhausted
        }
        x = frac.recip();
        let an = x.floor().to_integer();
        let h_next = &an * &h + &h_prev;
        let k_next = &an * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}
