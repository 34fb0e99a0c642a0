use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::symbol::{Monomial, RegValue};
use crate::linalg::{EchelonForm, RationalMatrix};
use crate::word_algebra::{shuffle, stuffle, Index};

/// Every monomial of the symbol ring of the given weight, in increasing order.
pub fn monomials_of_weight(weight: u32) -> Vec<Monomial> {
    // Multisets of admissible generators, chosen in nondecreasing generator order.
    let mut generators: Vec<Index> = (2..=weight).flat_map(Index::admissible_of_weight).collect();
    generators.sort();
    fn rec(
        generators: &[Index],
        start: usize,
        rest: u32,
        current: &mut Vec<Index>,
        out: &mut Vec<Monomial>,
    ) {
        if rest == 0 {
            let m = Monomial::from_factors(current.iter().map(|i| (i.clone(), 1))).expect("admissible");
            out.push(m);
            return;
        }
        for k in start..generators.len() {
            let w = generators[k].weight();
            if w <= rest {
                current.push(generators[k].clone());
                rec(generators, k, rest - w, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&generators, 0, weight, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The linear relations `sum_i z(.., n_i + 1, ..) = sum_i sum_j z(.., n_i - j, j + 1, ..)`
/// attached to an admissible index, written in the increasing summation convention
/// (so the derivation acts on the reversed index).
pub fn hoffman_relation(index: &Index) -> RegValue {
    let standard: Vec<u32> = index.entries().iter().rev().copied().collect();
    let mut out = RegValue::zero();
    let from_standard = |v: Vec<u32>| {
        let mut v = v;
        v.reverse();
        Index::new(v).expect("positive entries")
    };
    for i in 0..standard.len() {
        let mut raised = standard.clone();
        raised[i] += 1;
        out.add_assign_scaled(&RegValue::generator(&from_standard(raised)).expect("admissible"), &BigRational::one());
        for j in 0..standard[i].saturating_sub(1) {
            let mut split = standard[..i].to_vec();
            split.push(standard[i] - j);
            split.push(j + 1);
            split.extend_from_slice(&standard[i + 1..]);
            out.add_assign_scaled(
                &RegValue::generator(&from_standard(split)).expect("admissible"),
                &-BigRational::one(),
            );
        }
    }
    out
}

/// Relations of weight `weight` that are linear in the generators and hold by the finite
/// double shuffle structure: `z(a) z(b)` equals both the shuffle and the stuffle expansion
/// when `a` and `b` are admissible, plus the derivation relations of [`hoffman_relation`].
pub fn finite_double_shuffle_relations(weight: u32) -> Vec<RegValue> {
    let mut out = Vec::new();
    for index in Index::admissible_of_weight(weight.saturating_sub(1)) {
        if weight >= 3 {
            out.push(hoffman_relation(&index));
        }
    }
    for wa in 2..=weight.saturating_sub(2) {
        for a in Index::admissible_of_weight(wa) {
            for b in Index::admissible_of_weight(weight - wa) {
                if a > b {
                    continue;
                }
                let product = RegValue::generator(&a).unwrap().mul(&RegValue::generator(&b).unwrap());
                let mut st = product.clone();
                for (c, k) in stuffle(&a, &b).iter() {
                    st.add_assign_scaled(&RegValue::generator(c).unwrap(), &-k.clone());
                }
                let mut sh = product;
                for (w, k) in shuffle(&a.to_word(), &b.to_word()).iter() {
                    let c = Index::from_word(w).expect("admissible words shuffle to admissible words");
                    sh.add_assign_scaled(&RegValue::generator(&c).unwrap(), &-k.clone());
                }
                out.push(st);
                out.push(sh);
            }
        }
    }
    out.retain(|r| !r.is_zero());
    out
}

/// The ideal of the symbol ring generated by [`finite_double_shuffle_relations`] of all
/// weights, truncated to weights up to `max_weight`. Used to decide exactly whether a
/// `T`-free symbolic value is a consequence of the finite double shuffle relations.
#[derive(Debug, Clone)]
pub struct KnownRelations {
    max_weight: u32,
    columns: BTreeMap<u32, BTreeMap<Monomial, usize>>,
    spaces: BTreeMap<u32, EchelonForm>,
}

impl KnownRelations {
    pub fn new(max_weight: u32) -> Self {
        let mut columns = BTreeMap::new();
        let mut spaces = BTreeMap::new();
        let mut generators: BTreeMap<u32, Vec<RegValue>> = BTreeMap::new();
        for w in 2..=max_weight {
            generators.insert(w, finite_double_shuffle_relations(w));
        }
        for w in 2..=max_weight {
            let cols: BTreeMap<Monomial, usize> =
                monomials_of_weight(w).into_iter().enumerate().map(|(k, m)| (m, k)).collect();
            let mut matrix = RationalMatrix::new(cols.len());
            for (wr, rels) in &generators {
                if *wr > w {
                    continue;
                }
                let multipliers = if *wr == w { vec![Monomial::one()] } else { monomials_of_weight(w - wr) };
                for m in &multipliers {
                    let factor = RegValue::term(0, m.clone(), BigRational::one());
                    for r in rels {
                        matrix.push_row(to_row(&r.mul(&factor), &cols));
                    }
                }
            }
            spaces.insert(w, matrix.row_reduce());
            columns.insert(w, cols);
        }
        KnownRelations { max_weight, columns, spaces }
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    /// Dimension of the weight-`w` part of the quotient ring.
    pub fn quotient_dimension(&self, weight: u32) -> Option<usize> {
        let space = self.spaces.get(&weight)?;
        Some(space.ncols() - space.rank())
    }

    /// Whether a value (any `T`-degree, each `T`-coefficient homogeneous) lies in the ideal
    /// coefficientwise in `T`. Returns `None` when a weight exceeds the prepared range.
    pub fn contains(&self, value: &RegValue) -> Option<bool> {
        for (_, coeff) in value.t_coefficients() {
            let mut by_weight: BTreeMap<u32, RegValue> = BTreeMap::new();
            for (m, c) in coeff.iter() {
                by_weight.entry(m.weight()).or_default().add_term(m.clone(), c.clone());
            }
            for (w, part) in by_weight {
                if w == 0 {
                    if !part.is_zero() {
                        return Some(false);
                    }
                    continue;
                }
                if w == 1 || w > self.max_weight {
                    return if w == 1 { Some(part.is_zero()) } else { None };
                }
                if !self.spaces[&w].contains(&to_row(&part, &self.columns[&w])) {
                    return Some(false);
                }
            }
        }
        Some(true)
    }
}

fn to_row(value: &RegValue, cols: &BTreeMap<Monomial, usize>) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); cols.len()];
    for (m, c) in value.iter() {
        debug_assert_eq!(m.t_power, 0);
        let k = cols[&m.monomial];
        row[k] += c;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn z(s: &str) -> RegValue {
        RegValue::generator(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_weight(2).len(), 1);
        assert_eq!(monomials_of_weight(3).len(), 2);
        // 4 generators plus z(2)^2
        assert_eq!(monomials_of_weight(4).len(), 5);
        // 8 generators, z(2) z(3), z(2) z(1,2)
        assert_eq!(monomials_of_weight(5).len(), 10);
    }

    #[test]
    fn hoffman_low_weights() {
        assert_eq!(hoffman_relation(&"(2)".parse().unwrap()), z("(3)").sub(&z("(1,2)")));
        let r = hoffman_relation(&"(3)".parse().unwrap());
        assert_eq!(r, z("(4)").sub(&z("(1,3)")).sub(&z("(2,2)")));
    }

    #[test]
    fn euler_relation_is_known() {
        let ideal = KnownRelations::new(4);
        assert_eq!(ideal.contains(&z("(1,2)").sub(&z("(3)"))), Some(true));
        assert_eq!(ideal.contains(&z("(3)")), Some(false));
        let four = z("(1,3)").scale(&rational(4)).sub(&z("(4)"));
        assert_eq!(ideal.contains(&four), Some(true));
    }

    #[test]
    fn quotient_dimensions_match_expected_small_weights() {
        // Polynomial quotient dimensions 1, 1, 1, 2, 2 in weights 2..6.
        let ideal = KnownRelations::new(6);
        let dims: Vec<usize> = (2..=6).map(|w| ideal.quotient_dimension(w).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 1, 2, 2]);
    }
}
