//! Certified lower bounds on the Mordell-Weil rank of elliptic curves over Q.
//!
//! Two independent proof routes are implemented for curves in short
//! Weierstrass form `y^2 = x^3 + ax + b` with integer coefficients:
//!
//! * an **elementary route** that certifies a set of rational points as
//!   independent by showing, with exact arithmetic, that none of their
//!   mod-2 combinations is the double of a rational point
//!   ([`descent::elementary_rank_lower_bound`]), and
//! * a **height route** that certifies independence through the
//!   determinant of a Néron-Tate height pairing matrix with tracked error
//!   bounds ([`height::heights_rank_lower_bound`]).
//!
//! Both routes require the torsion subgroup to be certified trivial first
//! ([`torsion::certify_trivial_torsion`]). The [`family`] module provides
//! the two built-in curve families `y^2 = x^3 - x + m^6` and
//! `y^2 = x^3 + x - m^6` together with their standard rational points, and
//! [`cert`] assembles everything into serializable rank certificates for
//! the `rankbound` command-line tool.

pub mod arith;
pub mod cert;
pub mod congruence;
pub mod curve;
pub mod descent;
pub mod error;
pub mod factor;
pub mod family;
pub mod height;
pub mod torsion;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
