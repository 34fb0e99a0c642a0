use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word_algebra::{parse_rational, Combination, Index};

/// A monomial of the symbol ring: a product of formal generators `z(a)` for admissible,
/// nonempty indices `a`, each with a positive exponent. The empty product is `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Index, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The generator attached to an admissible nonempty index.
    pub fn generator(index: Index) -> Result<Self> {
        if index.is_empty() || !index.is_admissible() {
            return Err(Error::NonAdmissible(index.to_string()));
        }
        Ok(Monomial(vec![(index, 1)]))
    }

    /// Builds a monomial from `(generator, exponent)` pairs, merging repeats.
    pub fn from_factors(factors: impl IntoIterator<Item = (Index, u32)>) -> Result<Self> {
        let mut m = Monomial::one();
        for (index, e) in factors {
            if e == 0 {
                continue;
            }
            m = m.mul(&Monomial::generator(index)?.pow(e));
        }
        Ok(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Index, u32)] {
        &self.0
    }

    /// Sum of the weights of the generators, with multiplicity.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(i, e)| i.weight() * e).sum()
    }

    /// Number of generators, with multiplicity.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|(i, k)| (i.clone(), k * e)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (i, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "z{i}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `T^t_power` times a symbol monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegMonomial {
    pub t_power: u32,
    pub monomial: Monomial,
}

impl RegMonomial {
    pub fn new(t_power: u32, monomial: Monomial) -> Self {
        RegMonomial { t_power, monomial }
    }

    /// Weight with `T` counted as weight 1.
    pub fn weight(&self) -> u32 {
        self.t_power + self.monomial.weight()
    }

    pub fn mul(&self, other: &RegMonomial) -> RegMonomial {
        RegMonomial { t_power: self.t_power + other.t_power, monomial: self.monomial.mul(&other.monomial) }
    }
}

impl fmt::Display for RegMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.t_power, self.monomial.is_one()) {
            (0, _) => write!(f, "{}", self.monomial),
            (1, true) => write!(f, "T"),
            (t, true) => write!(f, "T^{t}"),
            (1, false) => write!(f, "T*{}", self.monomial),
            (t, false) => write!(f, "T^{t}*{}", self.monomial),
        }
    }
}

/// A polynomial in `T` whose coefficients lie in the commutative ring of formal zeta symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegValue(Combination<RegMonomial>);

impl RegValue {
    pub fn zero() -> Self {
        RegValue(Combination::zero())
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RegValue(Combination::monomial(RegMonomial::default(), c))
    }

    /// `T`.
    pub fn t() -> Self {
        Self::term(1, Monomial::one(), BigRational::one())
    }

    pub fn term(t_power: u32, monomial: Monomial, coeff: BigRational) -> Self {
        RegValue(Combination::monomial(RegMonomial::new(t_power, monomial), coeff))
    }

    /// The formal symbol `z(index)`; the empty index gives `1`.
    pub fn generator(index: &Index) -> Result<Self> {
        if index.is_empty() {
            return Ok(Self::one());
        }
        Ok(Self::term(0, Monomial::generator(index.clone())?, BigRational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RegMonomial, &BigRational)> {
        self.0.iter()
    }

    pub fn coefficient(&self, m: &RegMonomial) -> BigRational {
        self.0.coefficient(m)
    }

    pub fn add_term(&mut self, m: RegMonomial, c: BigRational) {
        self.0.add_term(m, c);
    }

    pub fn add(&self, other: &RegValue) -> RegValue {
        RegValue(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &RegValue) -> RegValue {
        RegValue(self.0.sub(&other.0))
    }

    pub fn add_assign_scaled(&mut self, other: &RegValue, c: &BigRational) {
        self.0.add_assign_scaled(&other.0, c);
    }

    pub fn scale(&self, c: &BigRational) -> RegValue {
        RegValue(self.0.scale(c))
    }

    pub fn neg(&self) -> RegValue {
        self.scale(&-BigRational::one())
    }

    pub fn mul(&self, other: &RegValue) -> RegValue {
        RegValue(self.0.bilinear(&other.0, |a, b| Combination::single(a.mul(b))))
    }

    pub fn pow(&self, e: u32) -> RegValue {
        (0..e).fold(RegValue::one(), |acc, _| acc.mul(self))
    }

    /// Highest power of `T` present; `None` for the zero value.
    pub fn t_degree(&self) -> Option<u32> {
        self.0.terms().map(|m| m.t_power).max()
    }

    /// The coefficient of `T^k`, a `T`-free value.
    pub fn t_coefficient(&self, k: u32) -> RegValue {
        RegValue(
            self.0
                .iter()
                .filter(|(m, _)| m.t_power == k)
                .map(|(m, c)| (RegMonomial::new(0, m.monomial.clone()), c.clone()))
                .collect(),
        )
    }

    /// Splits the value into `(k, coefficient of T^k)` for every occurring `k`.
    pub fn t_coefficients(&self) -> Vec<(u32, RegValue)> {
        let mut powers: Vec<u32> = self.0.terms().map(|m| m.t_power).collect();
        powers.dedup();
        powers.sort_unstable();
        powers.dedup();
        powers.into_iter().map(|k| (k, self.t_coefficient(k))).collect()
    }

    pub fn at_t_zero(&self) -> RegValue {
        self.t_coefficient(0)
    }

    pub fn is_t_free(&self) -> bool {
        self.t_degree().is_none_or(|d| d == 0)
    }

    /// The common weight of all terms (`T` has weight 1), or `None` when the value is zero
    /// or not homogeneous.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.0.terms().map(|m| m.weight());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Every symbol generator that occurs.
    pub fn generators(&self) -> Vec<Index> {
        let mut out: Vec<Index> = self
            .0
            .terms()
            .flat_map(|m| m.monomial.factors().iter().map(|(i, _)| i.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Applies a map that is linear over the symbol ring and determined by its values on
    /// the powers of `T`.
    pub fn map_t_powers<F: FnMut(u32) -> RegValue>(&self, mut f: F) -> RegValue {
        let mut out = RegValue::zero();
        for (m, c) in self.0.iter() {
            let image = f(m.t_power);
            let factor = RegValue::term(0, m.monomial.clone(), c.clone());
            out.add_assign_scaled(&image.mul(&factor), &BigRational::one());
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<RegTermJson> {
        self.0
            .iter()
            .map(|(m, c)| RegTermJson {
                t_power: m.t_power,
                monomial: m
                    .monomial
                    .factors()
                    .iter()
                    .map(|(i, e)| FactorJson { index: i.to_string(), exponent: *e })
                    .collect(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[RegTermJson]) -> Result<Self> {
        let mut out = RegValue::zero();
        for t in terms {
            let factors = t
                .monomial
                .iter()
                .map(|f| Ok((f.index.parse::<Index>()?, f.exponent)))
                .collect::<Result<Vec<_>>>()?;
            out.add_term(
                RegMonomial::new(t.t_power, Monomial::from_factors(factors)?),
                parse_rational(&t.coefficient)?,
            );
        }
        Ok(out)
    }
}

/// One generator factor in the JSON form of a [`RegValue`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub index: String,
    pub exponent: u32,
}

/// One term in the JSON form of a [`RegValue`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegTermJson {
    pub t_power: u32,
    pub monomial: Vec<FactorJson>,
    pub coefficient: String,
}

impl Serialize for RegValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RegValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<RegTermJson>::deserialize(deserializer)?;
        Self::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RegValue {
    /// Terms from the highest power of `T` down, e.g. `1/2*T^2 - 1/2*z(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by(|a, b| b.0.t_power.cmp(&a.0.t_power).then_with(|| a.0.monomial.cmp(&b.0.monomial)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_unit = m.t_power == 0 && m.monomial.is_one();
            if abs.is_one() && !is_unit {
                write!(f, "{m}")?;
            } else if is_unit {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<BigRational> for RegValue {
    fn from(c: BigRational) -> Self {
        RegValue::constant(c)
    }
}

impl Zero for RegValue {
    fn zero() -> Self {
        RegValue::zero()
    }

    fn is_zero(&self) -> bool {
        RegValue::is_zero(self)
    }
}

impl std::ops::Add for RegValue {
    type Output = RegValue;

    fn add(self, rhs: RegValue) -> RegValue {
        RegValue::add(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn monomial_products_merge_exponents() {
        let a = Monomial::generator(idx("(2)")).unwrap();
        let b = Monomial::generator(idx("(3)")).unwrap();
        let ab = a.mul(&b).mul(&a);
        assert_eq!(ab.factors(), &[(idx("(2)"), 2), (idx("(3)"), 1)]);
        assert_eq!(ab.weight(), 7);
        assert_eq!(ab.degree(), 3);
        assert!(Monomial::generator(idx("(2,1)")).is_err());
    }

    #[test]
    fn display_and_json() {
        let z2 = RegValue::generator(&idx("(2)")).unwrap();
        let v = RegValue::t().pow(2).sub(&z2).scale(&q(1, 2));
        assert_eq!(v.to_string(), "1/2*T^2 - 1/2*z(2)");
        let json = serde_json::to_string(&v).unwrap();
        let back: RegValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert_eq!(v.homogeneous_weight(), Some(2));
        assert_eq!(v.t_degree(), Some(2));
        assert_eq!(v.at_t_zero(), z2.scale(&q(-1, 2)));
    }

    #[test]
    fn t_power_map_is_symbol_linear() {
        let z2 = RegValue::generator(&idx("(2)")).unwrap();
        let v = RegValue::t().mul(&z2);
        let doubled = v.map_t_powers(|k| RegValue::t().pow(k).scale(&q(2, 1)));
        assert_eq!(doubled, v.scale(&q(2, 1)));
    }
}
