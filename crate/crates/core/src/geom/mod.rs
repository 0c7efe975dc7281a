//! Exact rational geometry: points, simplex intersection, embedding
//! validation, ray parity, and mesh export.
//!
//! Every decision is made with arbitrary-precision rationals. Floating point
//! appears only when rendering OFF output.

mod intersect;
mod linsys;
mod off;
mod ray;
mod validate;

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GeomError;

pub use intersect::{classify_intersection, IntersectionKind, IntersectionVerdict};
pub use linsys::{segment_meets_triangle, simplex_intersection, point_in_triangle};
pub use off::{export_off, export_off_with_comment, project_r4, LinearMap};
pub use ray::{ray_parity, ray_parity_any, RayProbe};
pub use validate::{validate_embedding, ValidationReport, Violation};

pub type Rational = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational, GeomError> {
    let bad = || GeomError::BadRational(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders in lowest terms, `p` for integers and `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point of `Q^D` in canonical (reduced) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn coord(&self, k: usize) -> &Rational {
        &self.0[k]
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn dot(&self, other: &Self) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Largest absolute coordinate.
    pub fn max_norm(&self) -> Rational {
        self.0
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Convex combination `sum w_i p_i`; weights are not checked.
    pub fn combination(points: &[&RationalPoint], weights: &[Rational]) -> Self {
        let dim = points[0].dim();
        let mut out = vec![Rational::zero(); dim];
        for (p, w) in points.iter().zip(weights) {
            for (o, c) in out.iter_mut().zip(&p.0) {
                *o += c * w;
            }
        }
        Self(out)
    }

    pub fn centroid(points: &[&RationalPoint]) -> Self {
        let w = Rational::new(BigInt::one(), BigInt::from(points.len()));
        Self::combination(points, &vec![w; points.len()])
    }
}

impl Add<&RationalPoint> for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&RationalPoint> for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: &RationalPoint) -> RationalPoint {
        RationalPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(c))?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalPoint {
    type Err = GeomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(RationalPoint)
    }
}

/// 3x3 determinant of the rows `a`, `b`, `c` (first three coordinates).
pub fn det3(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Rational {
    let (a, b, c) = (&a.0, &b.0, &c.0);
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Cross product in `Q^3`.
pub fn cross(a: &RationalPoint, b: &RationalPoint) -> RationalPoint {
    let (a, b) = (&a.0, &b.0);
    RationalPoint(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Whether the points are affinely independent.
pub fn affinely_independent(points: &[&RationalPoint]) -> bool {
    let base = points[0];
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| (*p - base).0).collect();
    linsys::matrix_rank(rows) == points.len() - 1
}
