use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::symbol::RegValue;
use crate::error::{Error, Result};
use crate::word_algebra::{shuffle, Index, Letter, Word, WordCombination};

/// Integral regularization: the shuffle-algebra morphism on words ending in `B` that sends
/// an admissible word to its symbol and `B` to `-T`.
pub fn reg_integral(word: &Word) -> Result<RegValue> {
    if !word.is_empty() && !word.ends_with_b() {
        return Err(Error::WordEndsInA(word.to_string()));
    }
    Ok(IntegralRegularizer::default().eval(word))
}

/// Linear extension of [`reg_integral`].
pub fn reg_integral_combination(c: &WordCombination) -> Result<RegValue> {
    let mut reg = IntegralRegularizer::default();
    let mut out = RegValue::zero();
    for (w, coeff) in c.iter() {
        if !w.is_empty() && !w.ends_with_b() {
            return Err(Error::WordEndsInA(w.to_string()));
        }
        out.add_assign_scaled(&reg.eval(w), coeff);
    }
    Ok(out)
}

/// Memoizing evaluator for [`reg_integral`], reusable across many words.
#[derive(Debug, Default)]
pub struct IntegralRegularizer {
    cache: HashMap<Word, RegValue>,
}

impl IntegralRegularizer {
    /// The word must be empty or end with `B`.
    pub fn eval(&mut self, word: &Word) -> RegValue {
        if let Some(v) = self.cache.get(word) {
            return v.clone();
        }
        let value = self.compute(word);
        self.cache.insert(word.clone(), value.clone());
        value
    }

    fn compute(&mut self, word: &Word) -> RegValue {
        let a = word.leading_b();
        if a == 0 {
            let index = Index::from_word(word).expect("word ends with B");
            return RegValue::generator(&index).expect("a word starting with A is admissible");
        }
        if a == word.len() {
            // (-T)^a / a!
            let fact: BigInt = (1..=a).map(BigInt::from).product();
            return RegValue::t().neg().pow(a as u32).scale(&BigRational::new(BigInt::one(), fact));
        }
        // w = B^a v with v starting with A. In B ⧢ B^{a-1} v the word w appears with
        // coefficient a; every other term has exactly a-1 leading B's.
        let rest = word.slice(1, word.len());
        let product = shuffle(&Word::new(vec![Letter::B]), &rest);
        let mut value = RegValue::t().neg().mul(&self.eval(&rest));
        for (term, coeff) in product.iter() {
            if term != word {
                value.add_assign_scaled(&self.eval(term), &-coeff.clone());
            }
        }
        let multiplicity = product.coefficient(word);
        debug_assert_eq!(multiplicity, BigRational::from_integer(BigInt::from(a)));
        value.scale(&multiplicity.recip())
    }
}
