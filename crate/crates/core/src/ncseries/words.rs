use num_rational::BigRational;

use super::ring::Ring;
use super::series::{Comparison, NCSeries, Tensor, YSeries};
use crate::error::{Error, Result};
use crate::word_algebra::{shuffle, Index, Letter, Word};

/// `Delta w = sum over subsets S of positions of w|_S (x) w|_(complement of S)`, the
/// algebra-morphism extension of `Delta A = A (x) 1 + 1 (x) A` and likewise for `B`.
pub fn coproduct_word(word: &Word) -> Vec<(Word, Word)> {
    let n = word.len();
    (0u64..1 << n)
        .map(|mask| {
            let mut left = Word::empty();
            let mut right = Word::empty();
            for (i, &l) in word.letters().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(l);
                } else {
                    right.push(l);
                }
            }
            (left, right)
        })
        .collect()
}

impl<R: Ring> NCSeries<R> {
    /// The series consisting of a single letter.
    pub fn letter(ring: R, degree: usize, letter: Letter) -> Self {
        let one = ring.one();
        Self::monomial(ring, degree, Word::new(vec![letter]), one)
    }

    /// `g(A, -B)`: each coefficient multiplied by `(-1)^(number of B)`.
    pub fn flip_b_sign(&self) -> Self {
        self.map_coefficients(|w, c| if w.depth() % 2 == 1 { self.ring().neg(c) } else { c.clone() })
    }

    /// The shuffle coproduct of the series.
    pub fn coproduct_sh(&self) -> Tensor<Word, R> {
        let mut t = Tensor::zero(self.ring().clone(), self.degree());
        for (w, c) in self.iter() {
            for (l, r) in coproduct_word(w) {
                t.add_to(l, r, c);
            }
        }
        t
    }

    /// Checks `Delta g = g (x) g` coefficientwise.
    pub fn is_grouplike(&self, tolerance: f64) -> Result<Comparison> {
        self.check_unit_constant(tolerance)?;
        Ok(self.coproduct_sh().compare(&self.tensor_square(), tolerance))
    }

    /// Checks `c_u c_v = sum_{w in u sh v} c_w` for all nonempty `u <= v` with
    /// `|u| + |v| <= degree`.
    pub fn is_grouplike_shuffle(&self, tolerance: f64) -> Result<Comparison> {
        self.check_unit_constant(tolerance)?;
        let ring = self.ring();
        let words = Word::all_up_to(self.degree());
        let mut cmp = Comparison::passing();
        for u in words.iter().filter(|w| !w.is_empty()) {
            for v in words.iter().filter(|v| !v.is_empty() && *v >= u && u.len() + v.len() <= self.degree()) {
                let lhs = ring.mul(&self.coefficient(u), &self.coefficient(v));
                let mut rhs = ring.zero();
                for (w, m) in shuffle(u, v).iter() {
                    rhs = ring.add(&rhs, &ring.scale(&self.coefficient(w), m));
                }
                cmp.record(ring.deviation(&ring.sub(&lhs, &rhs)), tolerance, || format!("{u} sh {v}"));
            }
        }
        Ok(cmp)
    }

    /// Checks `Delta f = f (x) 1 + 1 (x) f`.
    pub fn is_primitive(&self, tolerance: f64) -> Comparison {
        self.coproduct_sh().compare(&self.primitive_tensor(), tolerance)
    }

    fn check_unit_constant(&self, tolerance: f64) -> Result<()> {
        let ring = self.ring();
        let d = ring.deviation(&ring.sub(&self.constant_term(), &ring.one()));
        if d > tolerance {
            return Err(Error::BadConstantTerm(format!("constant term differs from 1 by {d:e}")));
        }
        Ok(())
    }

    /// Sends words ending in `A` to zero and `A^(n1-1) B ... A^(nm-1) B` to `y_n1 ... y_nm`.
    pub fn pi_y(&self) -> YSeries<R> {
        let mut out = YSeries::zero(self.ring().clone(), self.degree());
        for (w, c) in self.iter() {
            if let Some(key) = y_monomial(w) {
                out.add_to(key, c);
            }
        }
        out
    }
}

/// Exponents `(n1, ..., nm)` of `A^(n1-1) B ... A^(nm-1) B`, read left to right; `None` for a
/// word ending in `A`.
pub fn y_monomial(word: &Word) -> Option<Index> {
    if !word.is_empty() && !word.ends_with_b() {
        return None;
    }
    let mut out = Vec::new();
    let mut run = 1;
    for &l in word.letters() {
        match l {
            Letter::A => run += 1,
            Letter::B => {
                out.push(run);
                run = 1;
            }
        }
    }
    Some(Index::new(out).expect("entries are positive"))
}

/// `exp(alpha A + beta B)` truncated at `degree`.
pub fn exp_primitive<R: Ring>(ring: R, degree: usize, alpha: &R::Elem, beta: &R::Elem) -> Result<NCSeries<R>> {
    let a = NCSeries::monomial(ring.clone(), degree, Word::new(vec![Letter::A]), alpha.clone());
    let b = NCSeries::monomial(ring, degree, Word::new(vec![Letter::B]), beta.clone());
    a.add(&b)?.exp()
}

/// Group-like completion: given coefficients on the empty word and on words ending in `B`,
/// fills the words ending in `A` so that the shuffle identity holds with `c_A = 0`.
pub(crate) fn complete_grouplike<R: Ring>(g: &mut NCSeries<R>) {
    let ring = g.ring().clone();
    for len in 1..=g.degree() {
        let mut pending: Vec<Word> = Word::all_of_length(len).into_iter().filter(|w| !w.ends_with_b()).collect();
        pending.sort_by_key(|w| w.trailing_a());
        for w in pending {
            let j = w.trailing_a();
            let head = w.slice(0, len - j);
            if head.is_empty() {
                g.set(w, ring.zero());
                continue;
            }
            // c(v) c(A) = 0 for v = head A^(j-1), and v sh A contains w with multiplicity j
            let v = w.slice(0, len - 1);
            let mut others = ring.zero();
            for (x, m) in shuffle(&v, &Word::new(vec![Letter::A])).iter() {
                if *x != w {
                    others = ring.add(&others, &ring.scale(&g.coefficient(x), m));
                }
            }
            let c = ring.scale(&others, &BigRational::new((-1).into(), (j as i64).into()));
            g.set(w, c);
        }
    }
}
