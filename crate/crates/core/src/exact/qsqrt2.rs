//! The quadratic field ℚ(√2).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::ser::SerializeStruct;

use super::Rational;

/// A number a + b√2 with rational a, b.
///
/// √2 is irrational, so a + b√2 = 0 iff a = b = 0 and equality is
/// component-wise. The norm a² − 2b² vanishes only at zero, which makes the
/// type a field: every nonzero element has an inverse (a − b√2)/(a² − 2b²).
///
/// This is the smallest field closed under the coefficient recursions for h
/// and h⁻¹: the b-coefficients are pure √2-multiples while the final targets
/// (ξ-derivatives, expansion coefficients) are pure rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    rat: Rational,
    sqrt2: Rational,
}

impl QSqrt2 {
    pub fn new(rat: Rational, sqrt2: Rational) -> Self {
        QSqrt2 { rat, sqrt2 }
    }

    pub fn from_rational(r: Rational) -> Self {
        QSqrt2 {
            rat: r,
            sqrt2: Rational::zero(),
        }
    }

    /// r·√2.
    pub fn sqrt2_multiple(r: Rational) -> Self {
        QSqrt2 {
            rat: Rational::zero(),
            sqrt2: r,
        }
    }

    pub fn zero() -> Self {
        QSqrt2::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        QSqrt2::from_rational(Rational::one())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn sqrt2_part(&self) -> &Rational {
        &self.sqrt2
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.sqrt2.is_zero()
    }

    /// True when the √2-part vanishes.
    pub fn is_rational(&self) -> bool {
        self.sqrt2.is_zero()
    }

    /// True when the rational part vanishes.
    pub fn is_sqrt2_multiple(&self) -> bool {
        self.rat.is_zero()
    }

    /// The rational part, provided the √2-part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    /// (a + b√2)⁻¹ = (a − b√2)/(a² − 2b²); `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &(&self.rat * &self.rat) - &(Rational::from_int(2) * (&self.sqrt2 * &self.sqrt2));
        Some(QSqrt2 {
            rat: &self.rat / &norm,
            sqrt2: -&self.sqrt2 / norm,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt2 {
            rat: &self.rat * r,
            sqrt2: &self.sqrt2 * r,
        }
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt2", self.rat, self.sqrt2)
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Serializes as `{"rat": "p/q", "sqrt2": "r/s"}`.
impl serde::Serialize for QSqrt2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QSqrt2", 2)?;
        s.serialize_field("rat", &self.rat)?;
        s.serialize_field("sqrt2", &self.sqrt2)?;
        s.end()
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            rat: &self.rat + &rhs.rat,
            sqrt2: &self.sqrt2 + &rhs.sqrt2,
        }
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 {
            rat: &self.rat - &rhs.rat,
            sqrt2: &self.sqrt2 - &rhs.sqrt2,
        }
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        // (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
        QSqrt2 {
            rat: &(&self.rat * &rhs.rat) + &(Rational::from_int(2) * (&self.sqrt2 * &rhs.sqrt2)),
            sqrt2: &(&self.rat * &rhs.sqrt2) + &(&self.sqrt2 * &rhs.rat),
        }
    }
}

impl Div for &QSqrt2 {
    type Output = QSqrt2;
    fn div(self, rhs: &QSqrt2) -> QSqrt2 {
        let inv = rhs.inverse().expect("division by zero in QSqrt2");
        self * &inv
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 {
            rat: -&self.rat,
            sqrt2: -&self.sqrt2,
        }
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: QSqrt2) -> QSqrt2 {
        &self + &rhs
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: QSqrt2) -> QSqrt2 {
        &self - &rhs
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: QSqrt2) -> QSqrt2 {
        &self * &rhs
    }
}

impl AddAssign for QSqrt2 {
    fn add_assign(&mut self, rhs: QSqrt2) {
        self.rat += rhs.rat;
        self.sqrt2 += rhs.sqrt2;
    }
}

impl SubAssign for QSqrt2 {
    fn sub_assign(&mut self, rhs: QSqrt2) {
        self.rat -= rhs.rat;
        self.sqrt2 -= rhs.sqrt2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn multiplication_expands_sqrt2_square() {
        // (1 + √2)(3 − √2) = 3 − √2 + 3√2 − 2 = 1 + 2√2
        let a = QSqrt2::new(q(1, 1), q(1, 1));
        let b = QSqrt2::new(q(3, 1), q(-1, 1));
        assert_eq!(&a * &b, QSqrt2::new(q(1, 1), q(2, 1)));
    }

    #[test]
    fn inverse_of_sqrt2() {
        // (√2)⁻¹ = √2/2
        let s = QSqrt2::sqrt2_multiple(q(1, 1));
        let inv = s.inverse().unwrap();
        assert_eq!(inv, QSqrt2::sqrt2_multiple(q(1, 2)));
        assert_eq!(&s * &inv, QSqrt2::one());
    }

    #[test]
    fn inverse_generic_and_zero() {
        let a = QSqrt2::new(q(2, 3), q(-5, 7));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, QSqrt2::one());
        assert!(QSqrt2::zero().inverse().is_none());
    }

    #[test]
    fn zero_iff_both_components_zero() {
        assert!(QSqrt2::zero().is_zero());
        assert!(!QSqrt2::new(q(0, 1), q(1, 1000000)).is_zero());
    }

    #[test]
    fn serde_shape() {
        let a = QSqrt2::new(q(0, 1), q(1, 2));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"rat":"0/1","sqrt2":"1/2"}"#
        );
    }
}
