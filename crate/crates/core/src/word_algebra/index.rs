use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// A multiple zeta index `(n_1, ..., n_m)` of positive integers.
///
/// The summation convention is `0 < k_1 < ... < k_m` with exponent `n_i` on `k_i`,
/// so the index is admissible (the defining series converges) iff `n_m >= 2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// Builds an index, rejecting zero entries.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::Parse("index entries must be positive".into()));
        }
        Ok(Index(entries))
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(!entries.contains(&0));
        Index(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.last().is_none_or(|&n| n >= 2)
    }

    /// Number of trailing entries equal to 1.
    pub fn trailing_ones(&self) -> usize {
        self.0.iter().rev().take_while(|&&n| n == 1).count()
    }

    pub fn push(&mut self, n: u32) {
        assert!(n > 0);
        self.0.push(n);
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Index(v)
    }

    /// The word `A^{n_m-1} B A^{n_{m-1}-1} B ... A^{n_1-1} B`: blocks appear in reversed
    /// index order, the leftmost letter being the outermost integration.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &n in self.0.iter().rev() {
            letters.extend(std::iter::repeat_n(Letter::A, n as usize - 1));
            letters.push(Letter::B);
        }
        Word::new(letters)
    }

    /// Inverse of [`Index::to_word`].
    pub fn from_word(word: &Word) -> Result<Index> {
        if word.last() == Some(Letter::A) {
            return Err(Error::WordEndsInA(word.to_string()));
        }
        let mut blocks = Vec::with_capacity(word.depth());
        let mut run = 1;
        for &l in word.letters() {
            match l {
                Letter::A => run += 1,
                Letter::B => {
                    blocks.push(run);
                    run = 1;
                }
            }
        }
        blocks.reverse();
        Ok(Index(blocks))
    }

    /// Every index of the given weight (all compositions), in lexicographic order.
    pub fn all_of_weight(weight: u32) -> Vec<Index> {
        fn rec(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
            if rest == 0 {
                out.push(Index(prefix.clone()));
                return;
            }
            for first in 1..=rest {
                prefix.push(first);
                rec(rest - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if weight == 0 {
            out.push(Index::empty());
        } else {
            rec(weight, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Every admissible index of the given weight.
    pub fn admissible_of_weight(weight: u32) -> Vec<Index> {
        Index::all_of_weight(weight)
            .into_iter()
            .filter(|i| i.is_admissible() && !i.is_empty())
            .collect()
    }
}

/// `W_a`: the word attached to an index.
pub fn index_to_word(index: &Index) -> Word {
    index.to_word()
}

/// The index attached to a word that is empty or ends with `B`.
pub fn word_to_index(word: &Word) -> Result<Index> {
    Index::from_word(word)
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Parses `"(1,2)"`, `"1,2"` or `"()"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() {
            return Ok(Index::empty());
        }
        let entries = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad index entry `{}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(entries)
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
