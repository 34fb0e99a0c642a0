use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::symbol::RegValue;
use crate::word_algebra::{stuffle, Index, IndexCombination};

/// Series regularization: the stuffle-algebra morphism sending an admissible index to its
/// symbol and `(1)` to `-T`.
pub fn reg_series(index: &Index) -> RegValue {
    SeriesRegularizer::default().eval(index)
}

/// Linear extension of [`reg_series`].
pub fn reg_series_combination(c: &IndexCombination) -> RegValue {
    let mut reg = SeriesRegularizer::default();
    let mut out = RegValue::zero();
    for (i, coeff) in c.iter() {
        out.add_assign_scaled(&reg.eval(i), coeff);
    }
    out
}

/// Memoizing evaluator for [`reg_series`].
#[derive(Debug, Default)]
pub struct SeriesRegularizer {
    cache: HashMap<Index, RegValue>,
}

impl SeriesRegularizer {
    pub fn eval(&mut self, index: &Index) -> RegValue {
        if let Some(v) = self.cache.get(index) {
            return v.clone();
        }
        let value = self.compute(index);
        self.cache.insert(index.clone(), value.clone());
        value
    }

    fn compute(&mut self, index: &Index) -> RegValue {
        if index.is_admissible() {
            return RegValue::generator(index).expect("admissible");
        }
        // index = (n.., 1^l). In (1) * (n.., 1^{l-1}) the index itself appears with
        // coefficient l and every other term has fewer than l trailing ones.
        let l = index.trailing_ones();
        let shorter = Index::new(index.entries()[..index.depth() - 1].to_vec()).expect("positive entries");
        let one = Index::new(vec![1]).expect("positive entries");
        let product = stuffle(&one, &shorter);
        let mut value = RegValue::t().neg().mul(&self.eval(&shorter));
        for (term, coeff) in product.iter() {
            if term != index {
                value.add_assign_scaled(&self.eval(term), &-coeff.clone());
            }
        }
        let multiplicity = product.coefficient(index);
        debug_assert_eq!(multiplicity, BigRational::from_integer(BigInt::from(l)));
        value.scale(&multiplicity.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn z(s: &str) -> RegValue {
        RegValue::generator(&idx(s)).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn base_cases() {
        assert_eq!(reg_series(&Index::empty()), RegValue::one());
        assert_eq!(reg_series(&idx("(1)")), RegValue::t().neg());
        assert_eq!(reg_series(&idx("(1,2)")), z("(1,2)"));
    }

    #[test]
    fn two_ones() {
        let expected = RegValue::t().pow(2).sub(&z("(2)")).scale(&q(1, 2));
        assert_eq!(reg_series(&idx("(1,1)")), expected);
    }

    #[test]
    fn admissible_then_one() {
        // (1)*(2) = (1,2) + (2,1) + (3)
        let expected = RegValue::t().neg().mul(&z("(2)")).sub(&z("(1,2)")).sub(&z("(3)"));
        assert_eq!(reg_series(&idx("(2,1)")), expected);
    }

    #[test]
    fn three_ones_matches_power_sum_formula() {
        // With p_k = sum over power k, e_3 = (p1^3 - 3 p1 p2 + 2 p3)/6 and p1 = -T.
        let t = RegValue::t();
        let expected = t
            .neg()
            .pow(3)
            .sub(&t.neg().mul(&z("(2)")).scale(&q(3, 1)))
            .add(&z("(3)").scale(&q(2, 1)))
            .scale(&q(1, 6));
        assert_eq!(reg_series(&idx("(1,1,1)")), expected);
    }
}
