use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ball::Real;
use crate::error::Result;

/// A complex number as a rectangular pair of real balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        assert_eq!(re.prec(), im.prec(), "precision mismatch");
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex { re: Real::zero(prec), im: Real::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Complex { re: Real::one(prec), im: Real::zero(prec) }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Complex { re, im: Real::zero(prec) }
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational, prec: u32) -> Self {
        Complex { re: Real::from_rational(re, prec), im: Real::from_rational(im, prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Complex {
        Complex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_exact_one(&self) -> bool {
        self.re.is_exact() && self.im.is_exact() && self.im.mid_raw() == &BigInt::from(0)
            && self.re.mid_raw() == &(BigInt::from(1) << self.re.prec())
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Complex {
        Complex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Complex) -> Complex {
        Complex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_real(&self, r: &Real) -> Complex {
        Complex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn div_int(&self, n: &BigInt) -> Complex {
        Complex { re: self.re.div_int(n), im: self.im.div_int(n) }
    }

    pub fn div(&self, o: &Complex) -> Result<Complex> {
        let norm = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let conj = Complex { re: o.re.clone(), im: o.im.neg() };
        let num = self.mul(&conj);
        Ok(Complex { re: num.re.div(&norm)?, im: num.im.div(&norm)? })
    }

    pub fn pow(&self, e: u32) -> Complex {
        let mut out = Complex::one(self.prec());
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

    /// Widens both parts by `err`, so the ball contains the disc of radius `err`.
    pub fn add_error(&self, err: f64) -> Complex {
        Complex { re: self.re.add_error(err), im: self.im.add_error(err) }
    }

    /// Upper bound on `|z|` over the rectangle.
    pub fn abs_upper_f64(&self) -> f64 {
        self.re.abs_upper_f64().hypot(self.im.abs_upper_f64()) * (1.0 + 1e-12)
    }

    /// Approximate modulus of the midpoint.
    pub fn abs_mid_f64(&self) -> f64 {
        self.re.mid_f64().hypot(self.im.mid_f64())
    }

    /// Upper bound on the distance from the midpoint to any point of the rectangle.
    pub fn radius_f64(&self) -> f64 {
        self.re.radius_f64().hypot(self.im.radius_f64()) * (1.0 + 1e-12)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &Complex) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}
