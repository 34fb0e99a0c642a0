use std::fmt;
use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A polynomial in `t` with rational coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(c.into()))
    }

    /// `c t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `t`.
    pub fn t() -> Self {
        Poly::monomial(BigRational::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let b = other.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn times(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder of division by `t - root`.
    pub fn div_linear(&self, root: &BigRational) -> (Poly, BigRational) {
        if self.is_zero() {
            return (Poly::zero(), BigRational::zero());
        }
        let n = self.0.len();
        let mut q = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (0..n).rev() {
            let v = &self.0[i] + &carry * root;
            if i == 0 {
                return (Poly::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Multiplicity of `root` and the cofactor. The polynomial must be nonzero.
    pub fn split_root(&self, root: &BigRational) -> (usize, Poly) {
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_linear(root);
            if !r.is_zero() {
                return (k, p);
            }
            p = q;
            k += 1;
        }
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        self.times(&rhs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A rational function `num / den` in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFn {
    pub num: Poly,
    pub den: Poly,
}

/// A value in `Q` or infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(BigRational),
    Infinity,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::SingularPoint("zero denominator".into()));
        }
        Ok(RatFn { num, den })
    }

    pub fn poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::from_int(1) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        RatFn { num: self.num.times(&other.den).sub(&other.num.times(&self.den)), den: self.den.times(&other.den) }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn { num: self.num.times(&other.num), den: self.den.times(&other.den) }
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        if other.is_zero() {
            return Err(Error::SingularPoint("division by the zero function".into()));
        }
        Ok(RatFn { num: self.num.times(&other.den), den: self.den.times(&other.num) })
    }

    /// Limit as `t` approaches `root`.
    pub fn limit(&self, root: &BigRational) -> Limit {
        if self.num.is_zero() {
            return Limit::Finite(BigRational::zero());
        }
        let (kn, n) = self.num.split_root(root);
        let (kd, d) = self.den.split_root(root);
        match kn.cmp(&kd) {
            std::cmp::Ordering::Greater => Limit::Finite(BigRational::zero()),
            std::cmp::Ordering::Less => Limit::Infinity,
            std::cmp::Ordering::Equal => Limit::Finite(n.eval(root) / d.eval(root)),
        }
    }
}
