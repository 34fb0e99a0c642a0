use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{Poly, RatFn};
use crate::error::{Error, Result};

/// Field operations needed by the cross ratio.
pub trait CrossRatioField: Clone {
    fn unit() -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl CrossRatioField for BigRational {
    fn unit() -> Self {
        One::one()
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl CrossRatioField for RatFn {
    fn unit() -> Self {
        RatFn::poly(Poly::from_int(1))
    }

    fn sub(&self, other: &Self) -> Self {
        RatFn::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        RatFn::mul(self, other)
    }

    fn div(&self, other: &Self) -> Self {
        RatFn::div(self, other).expect("nonzero divisor checked by the caller")
    }

    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

/// A point of the projective line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Proj<F> {
    Finite(F),
    Infinity,
}

impl<F: CrossRatioField> Proj<F> {
    fn same(&self, other: &Self) -> bool {
        match (self, other) {
            (Proj::Infinity, Proj::Infinity) => true,
            (Proj::Finite(a), Proj::Finite(b)) => a.sub(b).is_zero(),
            _ => false,
        }
    }
}

/// `[u, v] = u - v`, with `None` standing for a factor containing infinity, which cancels
/// against the matching factor on the other side of the fraction.
fn bracket<F: CrossRatioField>(u: &Proj<F>, v: &Proj<F>) -> Option<F> {
    match (u, v) {
        (Proj::Finite(a), Proj::Finite(b)) => Some(a.sub(b)),
        (Proj::Infinity, Proj::Infinity) => Some(F::unit().sub(&F::unit())),
        _ => None,
    }
}

/// `r(a, b, c, d) = [a, d][b, c] / ([a, c][b, d])`, normalized so that `r(0, inf, 1, x) = x`.
pub fn cross_ratio<F: CrossRatioField>(points: [&Proj<F>; 4]) -> Result<Proj<F>> {
    let mut distinct: Vec<&Proj<F>> = Vec::new();
    for p in points {
        if !distinct.iter().any(|q| q.same(p)) {
            distinct.push(p);
        }
    }
    if distinct.len() < 3 {
        return Err(Error::DegenerateQuadruple);
    }
    let [a, b, c, d] = points;
    let product = |x: Option<F>, y: Option<F>| match (x, y) {
        (Some(x), Some(y)) => x.mul(&y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => F::unit(),
    };
    let num = product(bracket(a, d), bracket(b, c));
    let den = product(bracket(a, c), bracket(b, d));
    if den.is_zero() {
        return Ok(Proj::Infinity);
    }
    Ok(Proj::Finite(num.div(&den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::poly::Limit;

    fn f(n: i64, d: i64) -> Proj<BigRational> {
        Proj::Finite(BigRational::new(n.into(), d.into()))
    }

    fn val(p: Proj<BigRational>) -> BigRational {
        match p {
            Proj::Finite(x) => x,
            Proj::Infinity => panic!("infinite"),
        }
    }

    #[test]
    fn normalization() {
        let x = f(7, 3);
        assert_eq!(cross_ratio([&f(0, 1), &Proj::Infinity, &f(1, 1), &x]).unwrap(), x);
    }

    #[test]
    fn defining_relations_on_rational_points() {
        let pts = [f(2, 1), f(-1, 3), f(5, 7), f(11, 2), f(-4, 1)];
        let r = |i: usize, j: usize, k: usize, l: usize| val(cross_ratio([&pts[i], &pts[j], &pts[k], &pts[l]]).unwrap());
        let one = BigRational::one();
        assert_eq!(r(0, 1, 2, 3) * r(1, 0, 2, 3), one);
        assert_eq!(r(0, 1, 2, 3), &one - r(1, 2, 3, 0));
        assert_eq!(r(0, 1, 3, 4) * r(0, 1, 2, 3), r(0, 1, 2, 4));
    }

    #[test]
    fn degenerate_and_boundary_values() {
        assert_eq!(cross_ratio([&f(1, 1), &f(1, 1), &f(1, 1), &f(2, 1)]), Err(Error::DegenerateQuadruple));
        assert_eq!(cross_ratio([&f(0, 1), &f(1, 1), &f(2, 1), &f(0, 1)]).unwrap(), f(0, 1));
        assert_eq!(cross_ratio([&f(0, 1), &f(1, 1), &f(0, 1), &f(2, 1)]).unwrap(), Proj::Infinity);
    }

    #[test]
    fn limit_along_powers_of_t() {
        // Oracle: r(0, t^k, t^l, t^i) = t^(i-l) (t^k - t^l)/(t^k - t^i); by l'Hopital the limit
        // at t = 1 is (k - l)/(k - i).
        let tp = |k: usize| Proj::Finite(RatFn::poly(Poly::monomial(BigRational::one(), k)));
        let zero = Proj::Finite(RatFn::poly(Poly::zero()));
        for (k, l, i) in [(1, 2, 3), (3, 1, 2), (2, 5, 4), (4, 1, 6)] {
            let Proj::Finite(r) = cross_ratio([&zero, &tp(k), &tp(l), &tp(i)]).unwrap() else {
                panic!("finite");
            };
            let expected = BigRational::new((k as i64 - l as i64).into(), (k as i64 - i as i64).into());
            assert_eq!(r.limit(&BigRational::one()), Limit::Finite(expected));
        }
    }
}
