//! Short Weierstrass curves `y^2 = x^3 + ax + b` over Q with integer
//! coefficients, and the exact chord-tangent group law on their rational
//! points.

use num_traits::{Signed, Zero};

use crate::arith::{log_of_bigint, ApproxReal, BigInt, Rational};
use crate::{Error, Result};

/// A nonsingular short Weierstrass curve with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    a: BigInt,
    b: BigInt,
}

/// A rational point: affine coordinates or the identity at infinity.
///
/// Points are plain values and do not remember their curve; every group
/// operation takes the curve explicitly, which keeps cross-curve misuse a
/// checkable precondition instead of a type hole.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl Curve {
    /// Build a curve, rejecting singular (zero-discriminant) coefficients.
    pub fn new(a: BigInt, b: BigInt) -> Result<Curve> {
        let c = Curve { a, b };
        if c.discriminant().is_zero() {
            let Curve { a, b } = c;
            return Err(Error::SingularCurve { a, b });
        }
        Ok(c)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `-16(4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> BigInt {
        let four_a3 = 4 * self.a.pow(3);
        let b2 = &self.b * &self.b;
        -16 * (four_a3 + 27 * b2)
    }

    /// Evaluate `x^3 + ax + b` over the rationals.
    pub fn rhs(&self, x: &Rational) -> Rational {
        let a = Rational::from(self.a.clone());
        let b = Rational::from(self.b.clone());
        x * x * x + a * x + b
    }

    /// Exact membership test; the point at infinity is always on the curve.
    pub fn on_curve(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    /// Chord-tangent inverse: reflect across the x-axis.
    pub fn negate(&self, p: &Point) -> Point {
        debug_assert!(self.on_curve(p));
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: -y.clone(),
            },
        }
    }

    /// Tangent-line doubling: `x(2P) = lambda^2 - 2x` with
    /// `lambda = (3x^2 + a) / (2y)`; points with `y = 0` double to infinity.
    pub fn double(&self, p: &Point) -> Point {
        debug_assert!(self.on_curve(p));
        let (x, y) = match p {
            Point::Infinity => return Point::Infinity,
            Point::Affine { x, y } => (x, y),
        };
        if y.is_zero() {
            return Point::Infinity;
        }
        let a = Rational::from(self.a.clone());
        let three = Rational::from(BigInt::from(3));
        let two = Rational::from(BigInt::from(2));
        let lambda = (three * x * x + a) / (two * y);
        let x2 = &lambda * &lambda - x - x;
        let y2 = lambda * (x - &x2) - y;
        Point::Affine { x: x2, y: y2 }
    }

    /// Full group law: identity, inverse pairs, tangent and chord cases.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        debug_assert!(self.on_curve(p) && self.on_curve(q));
        let (x1, y1) = match p {
            Point::Infinity => return q.clone(),
            Point::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            Point::Infinity => return p.clone(),
            Point::Affine { x, y } => (x, y),
        };
        if x1 == x2 {
            if *y1 == -y2.clone() {
                return Point::Infinity;
            }
            return self.double(p);
        }
        let lambda = (y2 - y1) / (x2 - x1);
        let x3 = &lambda * &lambda - x1 - x2;
        let y3 = lambda * (x1 - &x3) - y1;
        Point::Affine { x: x3, y: y3 }
    }

    /// `n * P` by double-and-add; negative `n` goes through the inverse.
    pub fn scalar_mul(&self, n: &BigInt, p: &Point) -> Point {
        if n.is_negative() {
            return self.negate(&self.scalar_mul(&-n, p));
        }
        if n.is_zero() || p.is_infinity() {
            return Point::Infinity;
        }
        let mut acc = Point::Infinity;
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add(&acc, p);
            }
        }
        acc
    }
}

impl std::fmt::Display for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

impl Point {
    pub fn affine(x: Rational, y: Rational) -> Point {
        Point::Affine { x, y }
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::Affine {
            x: Rational::from(BigInt::from(x)),
            y: Rational::from(BigInt::from(y)),
        }
    }

    pub fn infinity() -> Point {
        Point::Infinity
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Naive height of a rational: `ln(max(|num|, den))` of the reduced form.
pub fn naive_height(x: &Rational) -> ApproxReal {
    let num = x.numer().abs();
    let den = x.denom().clone();
    let m = if num > den { num } else { den };
    // m >= den >= 1, so the log cannot fail.
    log_of_bigint(&m).expect("max(|num|, den) >= 1")
}
