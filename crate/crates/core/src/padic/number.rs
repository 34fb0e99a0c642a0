use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Absolute precision of an exact zero.
pub const EXACT: i64 = i64::MAX;

/// Prime, working precision and branch of the logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicContext {
    p: u64,
    precision: u32,
    branch: PAdic,
}

impl PAdicContext {
    /// `branch` is the value assigned to `log p`.
    pub fn new(p: u64, precision: u32, branch: &BigRational) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be at least 1".into()));
        }
        let branch = PAdic::from_rational(branch, p, precision);
        Ok(PAdicContext { p, precision, branch })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn branch(&self) -> &PAdic {
        &self.branch
    }

    /// A rational number with the context's relative precision.
    pub fn from_rational(&self, q: &BigRational) -> PAdic {
        PAdic::from_rational(q, self.p, self.precision)
    }

    pub fn from_integer(&self, n: i64) -> PAdic {
        self.from_rational(&BigRational::from_integer(n.into()))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Known to be divisible by `p^abs_prec`; [`EXACT`] for a true zero.
    Zero { abs_prec: i64 },
    /// `p^val * unit` with `unit` a residue mod `p^rel` prime to `p`.
    Unit { val: i64, unit: BigInt, rel: u32 },
}

/// An element of `Q_p` known to a finite number of digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdic {
    p: u64,
    repr: Repr,
}

pub(crate) fn pow_p(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `(v, m)` with `n = p^v m`, `p` not dividing `m`. `n` must be nonzero.
pub(crate) fn split_p(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn inverse_mod(a: &BigInt, modulus: &BigInt) -> BigInt {
    a.mod_floor(modulus).modinv(modulus).expect("unit residue is invertible")
}

fn to_u32(n: i64) -> u32 {
    n.clamp(0, u32::MAX as i64) as u32
}

impl PAdic {
    pub fn exact_zero(p: u64) -> Self {
        PAdic { p, repr: Repr::Zero { abs_prec: EXACT } }
    }

    /// Zero modulo `p^abs_prec`.
    pub fn zero_mod(p: u64, abs_prec: i64) -> Self {
        PAdic { p, repr: Repr::Zero { abs_prec } }
    }

    pub fn one(p: u64, rel: u32) -> Self {
        PAdic { p, repr: Repr::Unit { val: 0, unit: BigInt::one(), rel } }
    }

    /// `q` with `rel` significant digits; zero is exact.
    pub fn from_rational(q: &BigRational, p: u64, rel: u32) -> Self {
        if q.is_zero() {
            return Self::exact_zero(p);
        }
        let (vn, un) = split_p(q.numer(), p);
        let (vd, ud) = split_p(q.denom(), p);
        let val = vn as i64 - vd as i64;
        if rel == 0 {
            return Self::zero_mod(p, val);
        }
        let m = pow_p(p, rel);
        let unit = (un * inverse_mod(&ud, &m)).mod_floor(&m);
        PAdic { p, repr: Repr::Unit { val, unit, rel } }
    }

    /// `q` known modulo `p^abs_prec`.
    pub fn from_rational_abs(q: &BigRational, p: u64, abs_prec: i64) -> Self {
        if q.is_zero() {
            return Self::zero_mod(p, abs_prec);
        }
        let (vn, _) = split_p(q.numer(), p);
        let (vd, _) = split_p(q.denom(), p);
        let val = vn as i64 - vd as i64;
        if val >= abs_prec {
            return Self::zero_mod(p, abs_prec);
        }
        Self::from_rational(q, p, to_u32(abs_prec - val))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Indistinguishable from zero at the known precision.
    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        self.repr == Repr::Zero { abs_prec: EXACT }
    }

    /// The valuation, or for a zero the precision below which it is known to vanish.
    pub fn valuation(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs_prec } => *abs_prec,
            Repr::Unit { val, .. } => *val,
        }
    }

    /// The value is known modulo `p^abs_prec`.
    pub fn abs_prec(&self) -> i64 {
        match &self.repr {
            Repr::Zero { abs_prec } => *abs_prec,
            Repr::Unit { val, rel, .. } => val + *rel as i64,
        }
    }

    /// Number of known digits of the unit part; 0 for a zero.
    pub fn rel_prec(&self) -> u32 {
        match &self.repr {
            Repr::Zero { .. } => 0,
            Repr::Unit { rel, .. } => *rel,
        }
    }

    /// Residue of the unit part modulo `p^rel_prec`.
    pub fn unit(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Zero { .. } => None,
            Repr::Unit { unit, .. } => Some(unit),
        }
    }

    /// Base-`p` digits of the unit part, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let Repr::Unit { unit, rel, .. } = &self.repr else {
            return Vec::new();
        };
        let pb = BigInt::from(self.p);
        let mut n = unit.clone();
        (0..*rel)
            .map(|_| {
                let (q, r) = n.div_rem(&pb);
                n = q;
                r.to_u64().expect("digit below p")
            })
            .collect()
    }

    /// The rational number `p^val * unit` with the chosen residue.
    pub fn lift(&self) -> BigRational {
        match &self.repr {
            Repr::Zero { .. } => BigRational::zero(),
            Repr::Unit { val, unit, .. } => {
                let pv = pow_p(self.p, val.unsigned_abs() as u32);
                if *val >= 0 {
                    BigRational::from_integer(unit * pv)
                } else {
                    BigRational::new(unit.clone(), pv)
                }
            }
        }
    }

    /// `s p^v` with `s` known modulo `p^(abs - v)`.
    fn normalize(p: u64, s: BigInt, v: i64, abs: i64) -> Self {
        if abs <= v {
            return Self::zero_mod(p, abs);
        }
        let m = pow_p(p, to_u32(abs - v));
        let s = s.mod_floor(&m);
        if s.is_zero() {
            return Self::zero_mod(p, abs);
        }
        let (e, unit) = split_p(&s, p);
        let val = v + e as i64;
        PAdic { p, repr: Repr::Unit { val, unit, rel: to_u32(abs - val) } }
    }

    fn check_prime(&self, other: &PAdic) {
        assert_eq!(self.p, other.p, "p-adic values over different primes");
    }

    pub fn add(&self, other: &PAdic) -> PAdic {
        self.check_prime(other);
        let abs = self.abs_prec().min(other.abs_prec());
        let v = match (&self.repr, &other.repr) {
            (Repr::Zero { .. }, Repr::Zero { .. }) => return Self::zero_mod(self.p, abs),
            (Repr::Unit { val, .. }, Repr::Zero { .. }) | (Repr::Zero { .. }, Repr::Unit { val, .. }) => *val,
            (Repr::Unit { val: a, .. }, Repr::Unit { val: b, .. }) => (*a).min(*b),
        };
        if abs <= v {
            return Self::zero_mod(self.p, abs);
        }
        let scaled = |x: &PAdic| match &x.repr {
            Repr::Zero { .. } => BigInt::zero(),
            Repr::Unit { val, unit, .. } => unit * pow_p(x.p, to_u32(val - v)),
        };
        Self::normalize(self.p, scaled(self) + scaled(other), v, abs)
    }

    pub fn neg(&self) -> PAdic {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, unit, rel } => {
                let m = pow_p(self.p, *rel);
                PAdic { p: self.p, repr: Repr::Unit { val: *val, unit: (-unit).mod_floor(&m), rel: *rel } }
            }
        }
    }

    pub fn sub(&self, other: &PAdic) -> PAdic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdic) -> PAdic {
        self.check_prime(other);
        match (&self.repr, &other.repr) {
            (Repr::Zero { abs_prec: a }, Repr::Zero { abs_prec: b }) => Self::zero_mod(self.p, a.saturating_add(*b)),
            (Repr::Zero { abs_prec }, Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::Zero { abs_prec }) => {
                let abs = if *abs_prec == EXACT { EXACT } else { abs_prec + val };
                Self::zero_mod(self.p, abs)
            }
            (Repr::Unit { val: va, unit: ua, rel: ra }, Repr::Unit { val: vb, unit: ub, rel: rb }) => {
                let rel = (*ra).min(*rb);
                let m = pow_p(self.p, rel);
                PAdic { p: self.p, repr: Repr::Unit { val: va + vb, unit: (ua * ub).mod_floor(&m), rel } }
            }
        }
    }

    pub fn inv(&self) -> Result<PAdic> {
        match &self.repr {
            Repr::Zero { .. } => Err(Error::DivisionByZero),
            Repr::Unit { val, unit, rel } => {
                let m = pow_p(self.p, *rel);
                Ok(PAdic { p: self.p, repr: Repr::Unit { val: -val, unit: inverse_mod(unit, &m), rel: *rel } })
            }
        }
    }

    pub fn div(&self, other: &PAdic) -> Result<PAdic> {
        Ok(self.mul(&other.inv()?))
    }

    /// Multiplication by an exact rational number.
    pub fn scale(&self, q: &BigRational) -> PAdic {
        if q.is_zero() {
            return Self::exact_zero(self.p);
        }
        let (vn, un) = split_p(q.numer(), self.p);
        let (vd, ud) = split_p(q.denom(), self.p);
        let shift = vn as i64 - vd as i64;
        match &self.repr {
            Repr::Zero { abs_prec } if *abs_prec == EXACT => self.clone(),
            Repr::Zero { abs_prec } => Self::zero_mod(self.p, abs_prec + shift),
            Repr::Unit { val, unit, rel } => {
                let m = pow_p(self.p, *rel);
                let unit = (unit * un * inverse_mod(&ud, &m)).mod_floor(&m);
                PAdic { p: self.p, repr: Repr::Unit { val: val + shift, unit, rel: *rel } }
            }
        }
    }

    /// `x^e`; `x^0` is one with the relative precision of `x` (at least one digit).
    pub fn pow(&self, e: u32) -> PAdic {
        if e == 0 {
            return PAdic::one(self.p, self.rel_prec().max(1));
        }
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        match &self.repr {
            Repr::Zero { abs_prec } if *abs_prec == EXACT => write!(f, "0"),
            Repr::Zero { abs_prec } => write!(f, "0 + O({p}^{abs_prec})"),
            Repr::Unit { val, .. } => {
                let terms: Vec<String> = self
                    .digits()
                    .iter()
                    .enumerate()
                    .map(|(i, d)| match i {
                        0 => d.to_string(),
                        1 => format!("{d}*{p}"),
                        _ => format!("{d}*{p}^{i}"),
                    })
                    .collect();
                write!(f, "{p}^{val} * ({}) + O({p}^{})", terms.join(" + "), self.abs_prec())
            }
        }
    }
}
