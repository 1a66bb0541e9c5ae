//! The two built-in curve families and their standard rational points.
//!
//! `Em` is `y^2 = x^3 - x + m^6` with points P = (0, m^3), Q = (-1, m^3),
//! R = (-m^2, m); `Epm` is `y^2 = x^3 + x - m^6` with P' = (m^2, m),
//! Q' = (m^6, m^9). For m in {0, 1, -1} some of these points collide;
//! constructors report that as degeneracy metadata instead of failing so a
//! range scan over m needs no special cases.

use num_traits::Zero;

use crate::arith::{BigInt, Rational};
use crate::curve::{Curve, Point};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyId {
    /// `y^2 = x^3 - x + m^6`
    Em,
    /// `y^2 = x^3 + x - m^6`
    Epm,
}

impl FamilyId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::Em => "em",
            FamilyId::Epm => "epm",
        }
    }
}

impl std::str::FromStr for FamilyId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "em" => Ok(FamilyId::Em),
            "epm" => Ok(FamilyId::Epm),
            other => Err(format!("unknown family '{other}' (expected em or epm)")),
        }
    }
}

impl std::fmt::Display for FamilyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The labelled points a family contributes, plus a degeneracy note when
/// any two coincide or one is the identity.
#[derive(Clone, Debug)]
pub struct NamedPoints {
    pub points: Vec<(String, Point)>,
    pub degeneracy: Option<String>,
}

/// Family curve at parameter `m`. The discriminants `-16(27m^12 - 4)` and
/// `-16(27m^12 + 4)` never vanish for integer `m`, so this succeeds for
/// every m including 0; the theorem-level hypotheses on m are checked by
/// the certification layer, not here.
pub fn build_curve(f: FamilyId, m: &BigInt) -> Result<Curve> {
    let m6 = m.pow(6);
    match f {
        FamilyId::Em => Curve::new(BigInt::from(-1), m6),
        FamilyId::Epm => Curve::new(BigInt::from(1), -m6),
    }
}

/// The family's standard points, validated on-curve, with degeneracy
/// detection (reported, never thrown).
pub fn family_points(f: FamilyId, m: &BigInt) -> NamedPoints {
    let int = |v: BigInt| Rational::from(v);
    let points: Vec<(String, Point)> = match f {
        FamilyId::Em => vec![
            ("P".into(), Point::affine(int(BigInt::zero()), int(m.pow(3)))),
            ("Q".into(), Point::affine(int(BigInt::from(-1)), int(m.pow(3)))),
            ("R".into(), Point::affine(int(-m.pow(2)), int(m.clone()))),
        ],
        FamilyId::Epm => vec![
            ("P'".into(), Point::affine(int(m.pow(2)), int(m.clone()))),
            ("Q'".into(), Point::affine(int(m.pow(6)), int(m.pow(9)))),
        ],
    };
    debug_assert!({
        let curve = build_curve(f, m).expect("family curves are nonsingular");
        points.iter().all(|(_, p)| curve.on_curve(p))
    });
    let mut degeneracy = None;
    for i in 0..points.len() {
        if points[i].1.is_infinity() {
            degeneracy = Some(format!("{} is the point at infinity", points[i].0));
            break;
        }
        for j in (i + 1)..points.len() {
            if points[i].1 == points[j].1 {
                degeneracy = Some(format!("{} = {}", points[i].0, points[j].0));
                break;
            }
        }
        if degeneracy.is_some() {
            break;
        }
    }
    NamedPoints { points, degeneracy }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn build_curve_examples() {
        let e3 = build_curve(FamilyId::Em, &big(3)).unwrap();
        assert_eq!(e3.a(), &big(-1));
        assert_eq!(e3.b(), &big(729));

        let ep2 = build_curve(FamilyId::Epm, &big(2)).unwrap();
        assert_eq!(ep2.a(), &big(1));
        assert_eq!(ep2.b(), &big(-64));

        // m = 0 still yields a valid curve (y^2 = x^3 - x)
        let e0 = build_curve(FamilyId::Em, &big(0)).unwrap();
        assert_eq!(e0.b(), &big(0));
        assert!(!e0.discriminant().is_zero());
    }

    #[test]
    fn named_points_at_m3() {
        let np = family_points(FamilyId::Em, &big(3));
        assert!(np.degeneracy.is_none());
        let pts: Vec<_> = np.points.iter().map(|(l, p)| (l.as_str(), p)).collect();
        assert_eq!(pts[0], ("P", &Point::from_ints(0, 27)));
        assert_eq!(pts[1], ("Q", &Point::from_ints(-1, 27)));
        assert_eq!(pts[2], ("R", &Point::from_ints(-9, 3)));
    }

    #[test]
    fn named_points_at_m2_epm() {
        let np = family_points(FamilyId::Epm, &big(2));
        assert!(np.degeneracy.is_none());
        assert_eq!(np.points[0].1, Point::from_ints(4, 2));
        assert_eq!(np.points[1].1, Point::from_ints(64, 512));
    }

    #[test]
    fn m_equal_one_collides() {
        let np = family_points(FamilyId::Em, &big(1));
        assert_eq!(np.points[0].1, Point::from_ints(0, 1));
        assert_eq!(np.points[1].1, Point::from_ints(-1, 1));
        assert_eq!(np.points[2].1, Point::from_ints(-1, 1));
        assert_eq!(np.degeneracy.as_deref(), Some("Q = R"));

        let np = family_points(FamilyId::Epm, &big(1));
        assert_eq!(np.degeneracy.as_deref(), Some("P' = Q'"));
    }

    #[test]
    fn all_points_on_curve_up_to_m50() {
        for m in 2i64..=50 {
            for f in [FamilyId::Em, FamilyId::Epm] {
                let c = build_curve(f, &big(m)).unwrap();
                let np = family_points(f, &big(m));
                assert!(np.degeneracy.is_none(), "m = {m}");
                for (label, p) in &np.points {
                    assert!(c.on_curve(p), "{label} off curve at m = {m}");
                }
            }
        }
    }
}
