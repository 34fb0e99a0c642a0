use num_rational::BigRational;
use serde::Serialize;

use super::ring::{RealBallRing, Ring, SymbolRing};
use super::series::{Comparison, NCSeries, YSeries};
use super::words::complete_grouplike;
use crate::error::{Error, Result};
use crate::numeric::MzvEvaluator;
use crate::regularization::{IntegralRegularizer, RegValue};
use crate::relations::evaluate_t_free;
use crate::word_algebra::{Index, Word};

/// Largest truncation degree accepted by [`kz_associator`].
pub const MAX_KZ_DEGREE: usize = 10;

/// `g_* = exp(-sum_n (-1)^n / n c_(A^(n-1) B) y_1^n) pi_y(g)`.
pub fn g_star<R: Ring>(g: &NCSeries<R>) -> Result<YSeries<R>> {
    let ring = g.ring().clone();
    let d = ring.deviation(&ring.sub(&g.constant_term(), &ring.one()));
    if d != 0.0 {
        return Err(Error::BadConstantTerm(format!("constant term differs from 1 by {d:e}")));
    }
    let degree = g.degree();
    let mut exponent = YSeries::zero(ring.clone(), degree);
    for n in 1..=degree {
        let word = Word::a_power(n - 1).concat(&Word::b_power(1));
        let sign = if n % 2 == 0 { -1 } else { 1 };
        let c = ring.scale(&g.coefficient(&word), &BigRational::new(sign.into(), (n as i64).into()));
        exponent.set(Index::new(vec![1; n]).expect("positive"), c);
    }
    exponent.exp()?.mul(&g.pi_y())
}

/// The three membership conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dmr0Report {
    /// `c_1 = 1` and `c_A = c_B = 0`.
    pub condition1: bool,
    /// Group-like for the shuffle coproduct.
    pub condition2: bool,
    /// `g_*` group-like for the quasi-shuffle coproduct.
    pub condition3: bool,
    pub worst_residual: f64,
    pub first_failure: Option<String>,
    pub degree: usize,
}

impl Dmr0Report {
    pub fn passes(&self) -> bool {
        self.condition1 && self.condition2 && self.condition3
    }
}

/// Evaluates the three conditions up to the truncation degree of `g`.
pub fn check_dmr0<R: Ring>(g: &NCSeries<R>, tolerance: f64) -> Dmr0Report {
    let ring = g.ring();
    let mut c1 = Comparison::passing();
    c1.record(ring.deviation(&ring.sub(&g.constant_term(), &ring.one())), tolerance, || "constant term".into());
    for w in ["A", "B"] {
        let word: Word = w.parse().expect("letter");
        c1.record(ring.deviation(&g.coefficient(&word)), tolerance, || format!("coefficient of {w}"));
    }
    let c2 = g.is_grouplike(tolerance).unwrap_or_else(|e| Comparison::failing(e.to_string()));
    // g_* needs an exact unit constant term; a constant within tolerance is normalized first
    let normalized = if c1.holds {
        let mut h = g.clone();
        h.set(Word::empty(), ring.one());
        h
    } else {
        g.clone()
    };
    let c3 = match g_star(&normalized) {
        Ok(h) => h.is_grouplike_star(tolerance),
        Err(e) => Comparison::failing(e.to_string()),
    };
    let first_failure = [&c1, &c2, &c3].iter().find_map(|c| c.first_failure.clone());
    let worst = [&c1, &c2, &c3].iter().map(|c| c.worst_residual).fold(0.0, f64::max);
    Dmr0Report {
        condition1: c1.holds,
        condition2: c2.holds,
        condition3: c3.holds,
        worst_residual: worst,
        first_failure,
        degree: g.degree(),
    }
}

/// The associator truncated at `degree`: the coefficient of the word of `(n_1, ..., n_m)` is
/// `(-1)^m` times its integral regularization at `T = 0`, mapped into the ring by `value`;
/// words ending in `A` are filled by group-like completion.
pub fn kz_associator_with<R, F>(ring: R, degree: usize, mut value: F) -> Result<NCSeries<R>>
where
    R: Ring,
    F: FnMut(&RegValue) -> Result<R::Elem>,
{
    if degree == 0 || degree > MAX_KZ_DEGREE {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut reg = IntegralRegularizer::default();
    let mut g = NCSeries::one(ring.clone(), degree);
    for w in Word::all_up_to(degree).into_iter().filter(|w| w.ends_with_b()) {
        let r = reg.eval(&w).at_t_zero();
        let r = if w.depth() % 2 == 1 { r.neg() } else { r };
        g.set(w, value(&r)?);
    }
    complete_grouplike(&mut g);
    Ok(g)
}

/// The associator with symbolic coefficients.
pub fn kz_associator_symbolic(degree: usize) -> Result<NCSeries<SymbolRing>> {
    kz_associator_with(SymbolRing, degree, |r| Ok(r.clone()))
}

/// The associator with numeric coefficients at `digits` decimal digits.
pub fn kz_associator(degree: usize, digits: u32) -> Result<NCSeries<RealBallRing>> {
    let ring = RealBallRing::with_digits(digits);
    let mut evaluator = MzvEvaluator::with_bits(ring.prec);
    kz_associator_with(ring, degree, |r| evaluate_t_free(r, &mut evaluator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncseries::{exp_primitive, RationalRing};
    use crate::numeric::constants::pi;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn g_star_of_one_and_of_exp_b() {
        let one = NCSeries::one(RationalRing, 3);
        assert!(g_star(&one).unwrap().compare(&YSeries::one(RationalRing, 3), 0.0).unwrap().holds);

        // exp(B) = 1 + B + B^2/2 + B^3/6, prefactor exp(y_1), so
        // g_* = (1 + y1 + y1^2/2 + y1^3/6)(1 + y1 + y1^2/2 + y1^3/6)
        let g = exp_primitive(RationalRing, 3, &q(0, 1), &q(1, 1)).unwrap();
        let h = g_star(&g).unwrap();
        let ones = |n: usize| Index::new(vec![1; n]).unwrap();
        assert_eq!(h.coefficient(&ones(0)), q(1, 1));
        assert_eq!(h.coefficient(&ones(1)), q(2, 1));
        assert_eq!(h.coefficient(&ones(2)), q(2, 1));
        assert_eq!(h.coefficient(&ones(3)), q(4, 3));
        assert_eq!(h.coefficient(&"(2)".parse().unwrap()), q(0, 1));
    }

    #[test]
    fn g_star_without_prefactor() {
        let mut g = NCSeries::one(RationalRing, 4);
        g.set(w("BAB"), q(3, 1));
        g.set(w("ABA"), q(5, 1));
        let h = g_star(&g).unwrap();
        assert!(h.compare(&g.pi_y(), 0.0).unwrap().holds);
    }

    #[test]
    fn dmr0_trivial_cases() {
        let r = check_dmr0(&NCSeries::one(RationalRing, 4), 0.0);
        assert!(r.passes());
        let e = exp_primitive(RationalRing, 4, &q(1, 1), &q(0, 1)).unwrap();
        let r = check_dmr0(&e, 0.0);
        assert!(!r.condition1);
        assert!(r.condition2);
    }

    #[test]
    fn associator_coefficients() {
        let g = kz_associator(4, 25).unwrap();
        assert!(g.coefficient(&w("B")).abs_upper_f64() < 1e-40);
        assert!(g.coefficient(&Word::empty()).sub(&crate::numeric::Real::one(g.ring().prec)).abs_upper_f64() == 0.0);
        let zeta2 = pi(g.ring().prec).pow(2).div_int(&BigInt::from(6));
        assert!(g.coefficient(&w("AB")).add(&zeta2).abs_upper_f64() < 1e-25);
        assert_eq!(kz_associator(0, 10).unwrap_err(), Error::UnsupportedDegree(0));
    }

    #[test]
    fn associator_is_grouplike_and_in_dmr0() {
        let g = kz_associator(5, 25).unwrap();
        assert!(g.is_grouplike(1e-20).unwrap().holds);
        let report = check_dmr0(&g.flip_b_sign(), 1e-15);
        assert!(report.passes(), "{report:?}");
    }

    #[test]
    fn symbolic_associator_coefficients() {
        let g = kz_associator_symbolic(3).unwrap();
        let z2 = RegValue::generator(&"(2)".parse().unwrap()).unwrap();
        assert_eq!(g.coefficient(&w("AB")), z2.neg());
        assert_eq!(g.coefficient(&w("BB")), RegValue::zero());
    }
}
