use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::numeric::{bits_for_digits, Real};
use crate::regularization::RegValue;

/// A coefficient ring, passed around as a value so that numeric rings can carry a precision.
pub trait Ring: Clone + Debug {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// How far an element is from zero: `0.0` exactly when it is known to vanish up to the
    /// ring's own rounding, a positive number otherwise.
    fn deviation(&self, a: &Self::Elem) -> f64;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn scale(&self, a: &Self::Elem, q: &BigRational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.deviation(a) == 0.0
    }
}

/// Exact rational coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalRing;

impl Ring for RationalRing {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::from_integer(1.into())
    }

    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn deviation(&self, a: &BigRational) -> f64 {
        if a.is_zero() {
            0.0
        } else {
            a.abs().to_f64().unwrap_or(f64::INFINITY).max(f64::MIN_POSITIVE)
        }
    }
}

/// Real ball coefficients at a fixed binary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealBallRing {
    pub prec: u32,
}

impl RealBallRing {
    pub fn with_digits(digits: u32) -> Self {
        RealBallRing { prec: bits_for_digits(digits) }
    }
}

impl Ring for RealBallRing {
    type Elem = Real;

    fn zero(&self) -> Real {
        Real::zero(self.prec)
    }

    fn one(&self) -> Real {
        Real::one(self.prec)
    }

    fn from_rational(&self, q: &BigRational) -> Real {
        Real::from_rational(q, self.prec)
    }

    fn add(&self, a: &Real, b: &Real) -> Real {
        a.add(b)
    }

    fn sub(&self, a: &Real, b: &Real) -> Real {
        a.sub(b)
    }

    fn mul(&self, a: &Real, b: &Real) -> Real {
        a.mul(b)
    }

    /// Upper bound on `|a|`.
    fn deviation(&self, a: &Real) -> f64 {
        a.abs_upper_f64()
    }
}

/// Polynomials in `T` and symbolic multiple zeta values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SymbolRing;

impl Ring for SymbolRing {
    type Elem = RegValue;

    fn zero(&self) -> RegValue {
        RegValue::zero()
    }

    fn one(&self) -> RegValue {
        RegValue::one()
    }

    fn from_rational(&self, q: &BigRational) -> RegValue {
        RegValue::constant(q.clone())
    }

    fn add(&self, a: &RegValue, b: &RegValue) -> RegValue {
        a.add(b)
    }

    fn sub(&self, a: &RegValue, b: &RegValue) -> RegValue {
        a.sub(b)
    }

    fn mul(&self, a: &RegValue, b: &RegValue) -> RegValue {
        a.mul(b)
    }

    fn deviation(&self, a: &RegValue) -> f64 {
        if a.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn scale(&self, a: &RegValue, q: &BigRational) -> RegValue {
        a.scale(q)
    }
}
