use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::index::Index;
use super::word::Word;
use crate::error::{Error, Result};

/// A finite rational linear combination of terms. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

pub type WordCombination = Combination<Word>;
pub type IndexCombination = Combination<Index>;

impl<K: Ord + Clone> Default for Combination<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero() -> Self {
        Combination { terms: BTreeMap::new() }
    }

    pub fn single(term: K) -> Self {
        Self::monomial(term, BigRational::one())
    }

    pub fn monomial(term: K, coeff: BigRational) -> Self {
        let mut c = Self::zero();
        c.add_term(term, coeff);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, term: &K) -> BigRational {
        self.terms.get(term).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, term: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(term) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, scale: &BigRational) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &BigRational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-BigRational::one());
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_assign_scaled(self, factor);
        out
    }

    /// Sum of all coefficients.
    pub fn total_mass(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Bilinear extension of a product defined on terms.
    pub fn bilinear<F>(&self, other: &Self, mut product: F) -> Self
    where
        F: FnMut(&K, &K) -> Self,
    {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_assign_scaled(&product(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Linear extension of a map on terms.
    pub fn map_linear<L: Ord + Clone, F>(&self, mut f: F) -> Combination<L>
    where
        F: FnMut(&K) -> Combination<L>,
    {
        let mut out = Combination::zero();
        for (k, c) in &self.terms {
            out.add_assign_scaled(&f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigRational)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigRational)>>(iter: I) -> Self {
        let mut c = Self::zero();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{k}")?;
        }
        Ok(())
    }
}

/// One serialized term: `{ "coefficient": "p/q", "term": "..." }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub term: String,
}

impl<K: Ord + Clone + fmt::Display + FromStr<Err = Error>> Combination<K> {
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(k, c)| TermJson { coefficient: c.to_string(), term: k.to_string() })
            .collect()
    }

    pub fn from_json_terms(terms: &[TermJson]) -> Result<Self> {
        terms
            .iter()
            .map(|t| Ok((t.term.parse::<K>()?, parse_rational(&t.coefficient)?)))
            .collect()
    }
}

impl<K: Ord + Clone + fmt::Display + FromStr<Err = Error>> Serialize for Combination<K> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

impl<'de, K: Ord + Clone + fmt::Display + FromStr<Err = Error>> Deserialize<'de> for Combination<K> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(deserializer)?;
        Self::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: num_bigint::BigInt = match int.trim() {
            "" | "-" | "+" => num_bigint::BigInt::zero(),
            t => t.parse().map_err(|_| bad())?,
        };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac_val: num_bigint::BigInt = if frac.is_empty() {
            num_bigint::BigInt::zero()
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let den = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
        let frac_q = BigRational::new(frac_val, den);
        let int_q = BigRational::from_integer(int_part);
        return Ok(if negative { int_q - frac_q } else { int_q + frac_q });
    }
    let n: num_bigint::BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}
