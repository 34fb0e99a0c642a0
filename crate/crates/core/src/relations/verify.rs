use serde::Serialize;

use super::generation::Relation;
use crate::error::{Error, Result};
use crate::numeric::{MzvEvaluator, Real};
use crate::regularization::RegValue;

/// Largest numeric residual over a list of relations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericVerification {
    pub digits: u32,
    /// Rigorous upper bound on `|value|` for each relation, in input order.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
}

/// Substitutes numeric multiple zeta values for the symbols of a `T`-free value.
pub fn evaluate_t_free(value: &RegValue, evaluator: &mut MzvEvaluator) -> Result<Real> {
    let prec = evaluator.prec();
    let mut sum = Real::zero(prec);
    for (m, c) in value.iter() {
        if m.t_power != 0 {
            return Err(Error::UnevaluatableT);
        }
        let mut term = Real::from_rational(c, prec);
        for (index, e) in m.monomial.factors() {
            let z = evaluator.eval(index)?;
            term = term.mul(&z.pow(*e));
        }
        sum = sum.add(&term);
    }
    Ok(sum)
}

/// Evaluates every relation numerically at `digits` decimal digits.
pub fn verify_relations_numeric(relations: &[Relation], digits: u32) -> Result<NumericVerification> {
    let mut evaluator = MzvEvaluator::new(digits);
    let residuals = relations
        .iter()
        .map(|r| Ok(evaluate_t_free(&r.combination, &mut evaluator)?.abs_upper_f64()))
        .collect::<Result<Vec<f64>>>()?;
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    Ok(NumericVerification { digits, residuals, max_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::generation::{generate_double_shuffle, Provenance};
    use num_rational::BigRational;

    fn z(s: &str) -> RegValue {
        RegValue::generator(&s.parse().unwrap()).unwrap()
    }

    fn rel(v: RegValue) -> Relation {
        Relation { weight: v.homogeneous_weight().unwrap_or(0), combination: v, provenance: Provenance::Reduced { row: 0 } }
    }

    #[test]
    fn known_relation_and_empty_list() {
        let four = z("(1,3)").scale(&BigRational::from_integer(4.into())).sub(&z("(4)"));
        let r = verify_relations_numeric(&[rel(four)], 30).unwrap();
        assert!(r.max_residual < 1e-25);
        assert_eq!(verify_relations_numeric(&[], 30).unwrap().max_residual, 0.0);
    }

    #[test]
    fn t_is_rejected() {
        let r = verify_relations_numeric(&[rel(RegValue::t().mul(&z("(2)")))], 20);
        assert_eq!(r, Err(Error::UnevaluatableT));
    }

    #[test]
    fn false_relation_is_detected() {
        let r = verify_relations_numeric(&[rel(z("(3)").sub(&z("(2,2)")))], 20).unwrap();
        assert!(r.max_residual > 0.1);
    }

    #[test]
    fn generated_up_to_weight_five() {
        for w in 2..=5 {
            let rels = generate_double_shuffle(w);
            let r = verify_relations_numeric(&rels, 30).unwrap();
            assert!(r.max_residual < 1e-20, "weight {w}: {}", r.max_residual);
        }
    }
}
