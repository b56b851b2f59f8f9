//! Exact scalar coefficients: arbitrary-precision rationals that stay in
//! lowest terms with a positive denominator. Rings carry a coefficient mode;
//! in integer mode no operation ever introduces a non-unit denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

/// Coefficient mode of a ring. Integer mode is the default; the Todd genus
/// needs rationals because the exponential series divides by factorials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMode {
    Integer,
    Rational,
}

/// An exact scalar: a big rational kept in canonical form (lowest terms,
/// positive denominator). `BigRational` maintains both invariants for us.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True for +1 and -1, the invertible integers.
    pub fn is_unit_integer(&self) -> bool {
        self.0.is_integer() && self.0.numer().abs().is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The underlying integer, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.0.is_integer() {
            Some(self.0.numer().clone())
        } else {
            None
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

// Ratio renormalizes (gcd) on every operation even when both operands are
// integers. The ring arithmetic is overwhelmingly integral, so integers get
// a raw fast path; new_raw is sound because n/1 is already canonical.
fn both_integral(a: &Scalar, b: &Scalar) -> bool {
    a.0.denom().is_one() && b.0.denom().is_one()
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                if both_integral(&self, &rhs) {
                    return Scalar(BigRational::new_raw(
                        self.0.numer().$method(rhs.0.numer()),
                        BigInt::from(1),
                    ));
                }
                Scalar(self.0.$method(rhs.0))
            }
        }

        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                if both_integral(self, rhs) {
                    return Scalar(BigRational::new_raw(
                        self.0.numer().$method(rhs.0.numer()),
                        BigInt::from(1),
                    ));
                }
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if both_integral(self, rhs) {
            *self = Scalar(BigRational::new_raw(
                self.0.numer() + rhs.0.numer(),
                BigInt::from(1),
            ));
            return;
        }
        self.0 += &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        if both_integral(self, rhs) {
            *self = Scalar(BigRational::new_raw(
                self.0.numer() * rhs.0.numer(),
                BigInt::from(1),
            ));
            return;
        }
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}
