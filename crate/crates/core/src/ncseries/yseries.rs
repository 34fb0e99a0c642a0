use super::ring::Ring;
use super::series::{Comparison, Tensor, YSeries};
use crate::word_algebra::Index;

/// `Delta_* (y_n1 ... y_nm) = prod_j sum_{i=0}^{n_j} y_i (x) y_(n_j - i)` with `y_0 = 1`.
pub fn coproduct_star_monomial(mono: &Index) -> Vec<(Index, Index)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &n in mono.entries() {
        let mut next = Vec::with_capacity(out.len() * (n as usize + 1));
        for (l, r) in &out {
            for i in 0..=n {
                let (mut l, mut r): (Vec<u32>, Vec<u32>) = (l.clone(), r.clone());
                if i > 0 {
                    l.push(i);
                }
                if i < n {
                    r.push(n - i);
                }
                next.push((l, r));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(l, r)| (Index::new(l).expect("positive"), Index::new(r).expect("positive")))
        .collect()
}

impl<R: Ring> YSeries<R> {
    pub fn coproduct_star(&self) -> Tensor<Index, R> {
        let mut t = Tensor::zero(self.ring().clone(), self.degree());
        for (m, c) in self.iter() {
            for (l, r) in coproduct_star_monomial(m) {
                t.add_to(l, r, c);
            }
        }
        t
    }

    /// Checks `Delta_* h = h (x) h` coefficientwise.
    pub fn is_grouplike_star(&self, tolerance: f64) -> Comparison {
        self.coproduct_star().compare(&self.tensor_square(), tolerance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::RationalRing;
    use num_rational::BigRational;

    fn i(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn coproduct_of_generators() {
        let mut d = coproduct_star_monomial(&i("(1)"));
        d.sort();
        assert_eq!(d, vec![(i("()"), i("(1)")), (i("(1)"), i("()"))]);
        let mut d = coproduct_star_monomial(&i("(2)"));
        d.sort();
        assert_eq!(d, vec![(i("()"), i("(2)")), (i("(1)"), i("(1)")), (i("(2)"), i("()"))]);
    }

    #[test]
    fn one_is_grouplike() {
        assert!(YSeries::one(RationalRing, 5).is_grouplike_star(0.0).holds);
        let y1 = YSeries::monomial(RationalRing, 5, i("(1)"), BigRational::from_integer(1.into()));
        assert!(!YSeries::one(RationalRing, 5).add(&y1).unwrap().is_grouplike_star(0.0).holds);
    }

    #[test]
    fn exp_of_y1_is_grouplike() {
        let y1 = YSeries::monomial(RationalRing, 5, i("(1)"), BigRational::new(2.into(), 3.into()));
        assert!(y1.exp().unwrap().is_grouplike_star(0.0).holds);
    }
}
