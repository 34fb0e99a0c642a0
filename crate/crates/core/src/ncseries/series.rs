use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Display};

use num_rational::BigRational;
use serde::Serialize;

use super::ring::Ring;
use crate::error::{Error, Result};
use crate::word_algebra::{Index, Word};

/// Monomials of a free monoid graded by a weight.
pub trait Monomial: Clone + Ord + Display {
    fn unit() -> Self;
    fn weight(&self) -> usize;
    fn concat(&self, other: &Self) -> Self;
}

impl Monomial for Word {
    fn unit() -> Self {
        Word::empty()
    }

    fn weight(&self) -> usize {
        self.len()
    }

    fn concat(&self, other: &Self) -> Self {
        Word::concat(self, other)
    }
}

/// `y_n1 ... y_nm` is stored as the sequence `(n1, ..., nm)` of weight `n1 + ... + nm`.
impl Monomial for Index {
    fn unit() -> Self {
        Index::empty()
    }

    fn weight(&self) -> usize {
        Index::weight(self) as usize
    }

    fn concat(&self, other: &Self) -> Self {
        Index::concat(self, other)
    }
}

/// A power series in noncommuting variables truncated above a weight.
#[derive(Debug, Clone)]
pub struct Series<K: Monomial, R: Ring> {
    ring: R,
    degree: usize,
    coeffs: BTreeMap<K, R::Elem>,
}

/// Series in `A` and `B`.
pub type NCSeries<R> = Series<Word, R>;
/// Series in `y_1, y_2, ...` with `y_n` of weight `n`.
pub type YSeries<R> = Series<Index, R>;

impl<K: Monomial, R: Ring> Series<K, R> {
    pub fn zero(ring: R, degree: usize) -> Self {
        Series { ring, degree, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: R, degree: usize) -> Self {
        let mut s = Self::zero(ring, degree);
        s.set(K::unit(), s.ring.one());
        s
    }

    pub fn monomial(ring: R, degree: usize, key: K, c: R::Elem) -> Self {
        let mut s = Self::zero(ring, degree);
        s.set(key, c);
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, key: &K) -> R::Elem {
        self.coeffs.get(key).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coefficient(&K::unit())
    }

    /// Sets a coefficient; monomials above the truncation degree are dropped.
    pub fn set(&mut self, key: K, c: R::Elem) {
        if key.weight() <= self.degree {
            self.coeffs.insert(key, c);
        }
    }

    pub fn add_to(&mut self, key: K, c: &R::Elem) {
        if key.weight() > self.degree {
            return;
        }
        let entry = self.coeffs.entry(key).or_insert_with(|| self.ring.zero());
        *entry = self.ring.add(entry, c);
    }

    /// Stored monomials and coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &R::Elem)> {
        self.coeffs.iter()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::TruncationMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_to(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.map_coefficients(|_, c| self.ring.scale(c, q))
    }

    pub fn map_coefficients<F: FnMut(&K, &R::Elem) -> R::Elem>(&self, mut f: F) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, c)| (k.clone(), f(k, c))).collect();
        Series { ring: self.ring.clone(), degree: self.degree, coeffs }
    }

    /// Concatenation product truncated at the common degree.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = Self::zero(self.ring.clone(), self.degree);
        for (u, cu) in &self.coeffs {
            for (v, cv) in &other.coeffs {
                if u.weight() + v.weight() <= self.degree {
                    out.add_to(u.concat(v), &self.ring.mul(cu, cv));
                }
            }
        }
        Ok(out)
    }

    fn require_constant(&self, expected: &R::Elem) -> Result<()> {
        let d = self.ring.deviation(&self.ring.sub(&self.constant_term(), expected));
        if d != 0.0 {
            return Err(Error::BadConstantTerm(format!("constant term is off by {d:e}")));
        }
        Ok(())
    }

    /// `sum_k f^k / k!`; requires a vanishing constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant(&self.ring.zero())?;
        let mut out = Self::one(self.ring.clone(), self.degree);
        let mut power = Self::one(self.ring.clone(), self.degree);
        for k in 1..=self.degree {
            power = power.mul(self)?.scale(&BigRational::new(1.into(), (k as i64).into()));
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// `sum_k (-1)^(k+1) (g - 1)^k / k`; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.require_constant(&self.ring.one())?;
        let x = self.sub(&Self::one(self.ring.clone(), self.degree))?;
        let mut out = Self::zero(self.ring.clone(), self.degree);
        let mut power = Self::one(self.ring.clone(), self.degree);
        for k in 1..=self.degree {
            power = power.mul(&x)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&BigRational::new(sign.into(), (k as i64).into())))?;
        }
        Ok(out)
    }

    /// Largest deviation between the two series and the first monomial where it exceeds
    /// `tolerance`.
    pub fn compare(&self, other: &Self, tolerance: f64) -> Result<Comparison> {
        self.check_degree(other)?;
        let keys: BTreeSet<&K> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        let mut cmp = Comparison::passing();
        for k in keys {
            let d = self.ring.deviation(&self.ring.sub(&self.coefficient(k), &other.coefficient(k)));
            cmp.record(d, tolerance, || k.to_string());
        }
        Ok(cmp)
    }

    /// `g (x) g` truncated at total weight `degree`.
    pub fn tensor_square(&self) -> Tensor<K, R> {
        let mut t = Tensor::zero(self.ring.clone(), self.degree);
        for (u, cu) in &self.coeffs {
            for (v, cv) in &self.coeffs {
                t.add_to(u.clone(), v.clone(), &self.ring.mul(cu, cv));
            }
        }
        t
    }

    /// `f (x) 1 + 1 (x) f` for the primitive check.
    pub fn primitive_tensor(&self) -> Tensor<K, R> {
        let mut t = Tensor::zero(self.ring.clone(), self.degree);
        for (u, c) in &self.coeffs {
            t.add_to(u.clone(), K::unit(), c);
            t.add_to(K::unit(), u.clone(), c);
        }
        t
    }
}

impl<K: Monomial, R: Ring> Display for Series<K, R>
where
    R::Elem: Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(k, c)| format!("({c})*{k}"))
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// An element of the truncated tensor square, stored sparsely by monomial pairs.
#[derive(Debug, Clone)]
pub struct Tensor<K: Monomial, R: Ring> {
    ring: R,
    degree: usize,
    coeffs: BTreeMap<(K, K), R::Elem>,
}

impl<K: Monomial, R: Ring> Tensor<K, R> {
    pub fn zero(ring: R, degree: usize) -> Self {
        Tensor { ring, degree, coeffs: BTreeMap::new() }
    }

    pub fn coefficient(&self, left: &K, right: &K) -> R::Elem {
        self.coeffs.get(&(left.clone(), right.clone())).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `c` to the coefficient of `left (x) right` unless the total weight is too large.
    pub fn add_to(&mut self, left: K, right: K, c: &R::Elem) {
        if left.weight() + right.weight() > self.degree {
            return;
        }
        let entry = self.coeffs.entry((left, right)).or_insert_with(|| self.ring.zero());
        *entry = self.ring.add(entry, c);
    }

    /// Pairs with a coefficient that is not known to vanish.
    pub fn support(&self) -> Vec<(K, K)> {
        self.coeffs.iter().filter(|(_, c)| !self.ring.is_zero(c)).map(|(k, _)| k.clone()).collect()
    }

    pub fn compare(&self, other: &Self, tolerance: f64) -> Comparison {
        let keys: BTreeSet<&(K, K)> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        let mut cmp = Comparison::passing();
        for (l, r) in keys {
            let d = self.ring.deviation(&self.ring.sub(&self.coefficient(l, r), &other.coefficient(l, r)));
            cmp.record(d, tolerance, || format!("{l} (x) {r}"));
        }
        cmp
    }
}

/// Result of a coefficientwise comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub holds: bool,
    pub worst_residual: f64,
    pub first_failure: Option<String>,
}

impl Comparison {
    pub(crate) fn passing() -> Self {
        Comparison { holds: true, worst_residual: 0.0, first_failure: None }
    }

    pub(crate) fn failing(reason: String) -> Self {
        Comparison { holds: false, worst_residual: f64::INFINITY, first_failure: Some(reason) }
    }

    pub(crate) fn record<F: FnOnce() -> String>(&mut self, deviation: f64, tolerance: f64, label: F) {
        self.worst_residual = self.worst_residual.max(deviation);
        if deviation > tolerance && self.holds {
            self.holds = false;
            self.first_failure = Some(label());
        }
    }
}
