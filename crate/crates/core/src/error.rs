//! Error type shared across the crate.

use crate::arith::{BigInt, Rational};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("logarithm requires a positive integer, got {0}")]
    NonPositiveLog(BigInt),

    #[error("curve y^2 = x^3 + ({a})x + ({b}) is singular (discriminant is zero)")]
    SingularCurve { a: BigInt, b: BigInt },

    #[error("{p} is not an odd prime")]
    InvalidPrime { p: u64 },

    #[error("prime {p} divides the discriminant: bad reduction")]
    BadReduction { p: u64 },

    #[error("no primes supplied")]
    EmptyPrimes,

    #[error("point {label} = ({x}, {y}) is not on the curve")]
    PointOffCurve {
        label: String,
        x: Rational,
        y: Rational,
    },

    #[error("rank bound refused: torsion subgroup is not certified trivial")]
    TorsionNotCertified,

    #[error("torsion certificate was issued for a different curve")]
    CertificateCurveMismatch,

    #[error("congruence enumeration of {size} tuples exceeds the cap of {limit}")]
    EnumerationTooLarge { size: u128, limit: u128 },

    #[error("modulus {0} is unsupported: must be >= 2 and fit in 64 bits")]
    BadModulus(BigInt),

    #[error("congruence polynomial references variable index {index}, but only {count} variables are declared")]
    UnknownVariable { index: usize, count: usize },

    #[error("height matrix needs at least one point")]
    EmptyPoints,

    #[error("the point at infinity cannot appear in a height matrix")]
    InfinitePoint,

    #[error(
        "cannot certify {label}: canonical height {value} with error bound {error} is not separated from zero"
    )]
    HeightStraddlesZero {
        label: String,
        value: f64,
        error: f64,
    },

    #[error("invalid height configuration: {0}")]
    BadHeightConfig(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
