use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bigfloat::{parse_decimal, BigFloat};

/// A coefficient in one of two domains: an exact normalized rational or a
/// binary float with explicit precision.
///
/// Exact-with-exact arithmetic stays exact. Any operation touching a float
/// promotes to a float at the larger precision of the operands.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(BigFloat),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(v.into()))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Scalar::Exact(BigRational::from_integer(v))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(num.into(), den.into()))
    }

    /// Parses an exact value from `p/q`, an integer, or a decimal with optional
    /// exponent. Decimals are read exactly (`0.3` is `3/10`).
    pub fn parse(s: &str) -> Option<Self> {
        parse_decimal(s).map(Scalar::Exact)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Working precision of a float value, `None` for exact values.
    pub fn precision(&self) -> Option<u32> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Float(f) => Some(f.precision()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => f.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_negative(),
            Scalar::Float(f) => f.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Float(f) => f.is_positive(),
        }
    }

    pub fn abs(&self) -> Self {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    /// The integer value, if this scalar is an integer (in either domain).
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Exact(r) if r.is_integer() => Some(r.to_integer()),
            Scalar::Float(f) if f.is_integer() => Some(f.to_rational().to_integer()),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Float(f) => f.to_rational(),
        }
    }

    pub fn to_float(&self, prec: u32) -> BigFloat {
        match self {
            Scalar::Exact(r) => BigFloat::from_rational(r, prec),
            Scalar::Float(f) => f.with_precision(prec),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or_else(|| {
                BigFloat::from_rational(r, 64).to_f64()
            }),
            Scalar::Float(f) => f.to_f64(),
        }
    }

    /// Demotes to a float at `prec` bits; exact values are converted.
    pub fn into_float(self, prec: u32) -> Self {
        Scalar::Float(self.to_float(prec))
    }

    /// Smallest integer not below this value.
    pub fn ceil(&self) -> BigInt {
        self.to_rational().ceil().to_integer()
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(&BigFloat, &BigFloat, u32) -> BigFloat,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            (Scalar::Float(a), Scalar::Float(b)) => {
                Scalar::Float(float(a, b, a.precision().max(b.precision())))
            }
            (Scalar::Float(a), Scalar::Exact(b)) => {
                let p = a.precision();
                Scalar::Float(float(a, &BigFloat::from_rational(b, p), p))
            }
            (Scalar::Exact(a), Scalar::Float(b)) => {
                let p = b.precision();
                Scalar::Float(float(&BigFloat::from_rational(a, p), b, p))
            }
        }
    }

    /// Division that reports a zero divisor instead of panicking.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(num_traits::pow(r.clone(), k as usize)),
            Scalar::Float(f) => Scalar::Float(f.powi(k)),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            (a, b) => a.to_rational() == b.to_rational(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            (Scalar::Float(a), Scalar::Float(b)) => a.cmp(b),
            (a, b) => a.to_rational().cmp(&b.to_rational()),
        })
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<BigFloat> for Scalar {
    fn from(f: BigFloat) -> Self {
        Scalar::Float(f)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from_bigint(v)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

/// Rationals print as `p/q` (or `p` when integral); floats print the
/// shortest decimal that round-trips at their precision.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(v) => fmt::Display::fmt(v, f),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt, $float:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, |a, b| a $op b, |a, b, p| a.$float(b, p))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, add_prec);
scalar_binop!(Sub, sub, -, sub_prec);
scalar_binop!(Mul, mul, *, mul_prec);
scalar_binop!(Div, div, /, div_prec);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}
