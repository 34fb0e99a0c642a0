use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Bits of working precision for a number of decimal digits, including 15 guard digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64 + 15.0) * std::f64::consts::LOG2_10).ceil() as u32
}

/// A real ball `[(mid - rad) 2^-prec, (mid + rad) 2^-prec]`.
///
/// Every operation returns a ball containing every result of applying the exact operation
/// to points of the input balls. Binary operations require equal precisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Real {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

/// `round(x / 2^s)`, ties away from zero.
fn round_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (s - 1);
    if x.is_negative() {
        -((-x + half) >> s)
    } else {
        (x + half) >> s
    }
}

/// `ceil(x / 2^s)` for `x >= 0`.
fn ceil_shift(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let m = (BigInt::one() << s) - 1;
    (x + m) >> s
}

/// `round(n / d)` for `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if (r * 2) >= *d {
        q + 1
    } else {
        q
    }
}

/// Approximates `m * 2^e` as an `f64` without intermediate overflow.
fn scaled_to_f64(m: &BigInt, e: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    let shift = (bits - 60).max(0);
    let head = (m >> shift as usize).to_f64().unwrap_or(0.0);
    let total = e + shift;
    head * 2f64.powi(total.clamp(-1100, 1100) as i32)
}

impl Real {
    pub fn zero(prec: u32) -> Self {
        Real { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Real { mid: n << prec, rad: BigInt::zero(), prec }
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let n = q.numer() << prec;
        let d = q.denom();
        let exact = (&n % d).is_zero();
        Real { mid: round_div(&n, d), rad: if exact { BigInt::zero() } else { BigInt::one() }, prec }
    }

    /// A ball from raw parts; `rad` is made nonnegative.
    pub fn from_parts(mid: BigInt, rad: BigInt, prec: u32) -> Self {
        Real { mid, rad: rad.abs(), prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_raw(&self) -> &BigInt {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Changes the precision, rounding outward when bits are dropped.
    pub fn with_prec(&self, prec: u32) -> Real {
        if prec >= self.prec {
            let s = prec - self.prec;
            Real { mid: &self.mid << s, rad: &self.rad << s, prec }
        } else {
            let s = self.prec - prec;
            let mid = round_shift(&self.mid, s);
            let exact = self.rad.is_zero() && (&mid << s) == self.mid;
            let rad = if exact { BigInt::zero() } else { ceil_shift(&self.rad, s) + 1 };
            Real { mid, rad, prec }
        }
    }

    fn check(&self, other: &Real) {
        assert_eq!(self.prec, other.prec, "precision mismatch");
    }

    pub fn add(&self, other: &Real) -> Real {
        self.check(other);
        Real { mid: &self.mid + &other.mid, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn sub(&self, other: &Real) -> Real {
        self.check(other);
        Real { mid: &self.mid - &other.mid, rad: &self.rad + &other.rad, prec: self.prec }
    }

    pub fn neg(&self) -> Real {
        Real { mid: -&self.mid, rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, other: &Real) -> Real {
        self.check(other);
        let p = self.prec;
        let product = &self.mid * &other.mid;
        let mid = round_shift(&product, p);
        let exact_product = self.rad.is_zero() && other.rad.is_zero();
        let spread = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let rounding_exact = (&mid << p) == product;
        let rad = if exact_product && rounding_exact { BigInt::zero() } else { ceil_shift(&spread, p) + 1 };
        Real { mid, rad, prec: p }
    }

    pub fn mul_int(&self, n: &BigInt) -> Real {
        Real { mid: &self.mid * n, rad: &self.rad * n.abs(), prec: self.prec }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, n: &BigInt) -> Real {
        assert!(!n.is_zero(), "division by zero");
        let (n_abs, neg) = (n.abs(), n.is_negative());
        let mid = round_div(&self.mid, &n_abs);
        let exact = self.rad.is_zero() && &mid * &n_abs == self.mid;
        let rad = if exact { BigInt::zero() } else { self.rad.div_ceil(&n_abs) + 1 };
        let mid = if neg { -mid } else { mid };
        Real { mid, rad, prec: self.prec }
    }

    pub fn div(&self, other: &Real) -> Result<Real> {
        self.check(other);
        let p = self.prec;
        let m2 = other.mid.abs();
        if m2 <= other.rad {
            return Err(Error::DivisionByZero);
        }
        let mid = round_div(&(&self.mid << p), &other.mid.abs()) * other.mid.signum();
        let num = (&self.rad * &m2 + self.mid.abs() * &other.rad) << p;
        let den = &m2 * (&m2 - &other.rad);
        let rad = num.div_ceil(&den) + 1;
        Ok(Real { mid, rad, prec: p })
    }

    pub fn pow(&self, e: u32) -> Real {
        let mut out = Real::one(self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        out
    }

    /// Widens the radius by an absolute amount given as a float (rounded up).
    pub fn add_error(&self, err: f64) -> Real {
        if !(err > 0.0) {
            return self.clone();
        }
        let q = BigRational::from_float(err).expect("finite error bound");
        self.add_error_rational(&q).add_ulps(1)
    }

    fn add_ulps(&self, n: u32) -> Real {
        Real { mid: self.mid.clone(), rad: &self.rad + n, prec: self.prec }
    }

    /// Widens the radius by an exact nonnegative rational amount.
    pub fn add_error_rational(&self, err: &BigRational) -> Real {
        let scaled = err.abs() * BigRational::from_integer(BigInt::one() << self.prec);
        let extra = scaled.ceil().to_integer();
        Real { mid: self.mid.clone(), rad: &self.rad + extra, prec: self.prec }
    }

    pub fn mid_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, -(self.prec as i64))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid_f64()
    }

    /// Upper bound (approximately, as an `f64`) on the radius.
    pub fn radius_f64(&self) -> f64 {
        scaled_to_f64(&self.rad, -(self.prec as i64)) * (1.0 + 1e-12)
    }

    /// Upper bound on `|x|` over the ball, as an `f64`.
    pub fn abs_upper_f64(&self) -> f64 {
        scaled_to_f64(&(self.mid.abs() + &self.rad), -(self.prec as i64)) * (1.0 + 1e-12)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Whether `q` lies in the ball.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        // |q 2^p - mid| <= rad
        let scaled = q * BigRational::from_integer(BigInt::one() << self.prec);
        (scaled - BigRational::from_integer(self.mid.clone())).abs() <= BigRational::from_integer(self.rad.clone())
    }

    /// Whether the two balls intersect.
    pub fn overlaps(&self, other: &Real) -> bool {
        self.sub(other).contains_zero()
    }

    /// `log10` of an upper bound on the radius; `-inf` for exact values.
    pub fn error_exponent(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        (self.rad.bits() as f64 - self.prec as f64) * std::f64::consts::LOG10_2
    }

    /// The midpoint rounded to `digits` decimals after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let ten = BigInt::from(10).pow(digits);
        let scaled = round_shift(&(&self.mid * &ten), self.prec);
        let neg = scaled.sign() == Sign::Minus;
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits as usize { format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s) } else { s };
        let (int, frac) = s.split_at(s.len() - digits as usize);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as u32;
        write!(f, "{} +/- {:.1e}", self.to_decimal(digits.min(60)), self.radius_f64())
    }
}
