use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::symbol::RegValue;
use crate::word_algebra::Index;

/// The images `L(T^n)` for `n = 0..=max_power`, read off from
/// `sum_n L(T^n) u^n / n! = exp(T u - sum_{n>=2} z(n) u^n / n)`.
pub fn l_map_powers(max_power: u32) -> Vec<RegValue> {
    let d = max_power as usize;
    // exponent coefficients e_n of u^n
    let mut exponent = vec![RegValue::zero(); d + 1];
    if d >= 1 {
        exponent[1] = RegValue::t();
    }
    for (n, e) in exponent.iter_mut().enumerate().skip(2) {
        let zn = RegValue::generator(&Index::new(vec![n as u32]).expect("positive")).expect("admissible");
        *e = zn.scale(&BigRational::new(BigInt::from(-1), BigInt::from(n)));
    }
    // exp of a series with zero constant term: E' = e' E, i.e. n E_n = sum_k k e_k E_{n-k}.
    let mut series = vec![RegValue::zero(); d + 1];
    series[0] = RegValue::one();
    for n in 1..=d {
        let mut acc = RegValue::zero();
        for k in 1..=n {
            acc.add_assign_scaled(&exponent[k].mul(&series[n - k]), &BigRational::from_integer(BigInt::from(k)));
        }
        series[n] = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(n)));
    }
    let mut fact = BigInt::one();
    series
        .into_iter()
        .enumerate()
        .map(|(n, s)| {
            if n > 0 {
                fact *= n;
            }
            s.scale(&BigRational::from_integer(fact.clone()))
        })
        .collect()
}

/// The comparison map: linear over the symbol ring, determined on powers of `T` by
/// [`l_map_powers`].
pub fn l_map(value: &RegValue) -> RegValue {
    let Some(d) = value.t_degree() else {
        return RegValue::zero();
    };
    let images = l_map_powers(d);
    value.map_t_powers(|k| images[k as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> RegValue {
        RegValue::generator(&s.parse().unwrap()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn low_powers() {
        assert_eq!(l_map(&RegValue::one()), RegValue::one());
        assert_eq!(l_map(&RegValue::t()), RegValue::t());
        assert_eq!(l_map(&RegValue::t().pow(2)), RegValue::t().pow(2).sub(&z("(2)")));
        // T^3 - 3 z(2) T - 2 z(3)
        let expected = RegValue::t()
            .pow(3)
            .sub(&RegValue::t().mul(&z("(2)")).scale(&q(3)))
            .sub(&z("(3)").scale(&q(2)));
        assert_eq!(l_map(&RegValue::t().pow(3)), expected);
    }

    #[test]
    fn identity_on_t_free_values() {
        let v = z("(2)").mul(&z("(3)")).add(&z("(1,4)").scale(&q(-7)));
        assert_eq!(l_map(&v), v);
        assert_eq!(l_map(&RegValue::zero()), RegValue::zero());
    }

    #[test]
    fn homogeneous_images() {
        for (n, v) in l_map_powers(7).iter().enumerate() {
            assert_eq!(v.homogeneous_weight(), Some(n as u32));
        }
    }
}
