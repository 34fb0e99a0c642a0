use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::number::{inverse_mod, pow_p, split_p, PAdic, PAdicContext};
use crate::error::{Error, Result};

/// `log(1 + y)` modulo `p^target` for an integer `y` divisible by `p`.
fn log_one_plus(y: &BigInt, p: u64, target: u32) -> BigInt {
    let (vy, _) = split_p(y, p);
    let vy = vy as i64;
    // k vy - floor(log_p k) is nondecreasing, so stop at the first term beyond the target
    let mut last = 1u64;
    while last as i64 * vy - (last.ilog(p) as i64) < target as i64 + 2 {
        last += 1;
    }
    let modulus_bits = target + last.ilog(p) + 1;
    let big = pow_p(p, modulus_bits);
    let out_mod = pow_p(p, target);
    let mut sum = BigInt::from(0);
    let mut power = BigInt::from(1);
    for k in 1..last {
        power = (&power * y).mod_floor(&big);
        let (e, rest) = split_p(&BigInt::from(k), p);
        let term = (&power / pow_p(p, e)) * inverse_mod(&rest, &big);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum.mod_floor(&out_mod)
}

/// The logarithm on `Q_p^*` with `log p` equal to the context's branch value.
///
/// Writes `x = p^v u` and returns `v a + log(u^(p-1)) / (p-1)`. The result is known modulo
/// `p^r` where `r` is the smaller of the relative precision of `x` and the absolute precision
/// of `v a`; its valuation is at least 1 away from the branch term, so it carries at least
/// one fewer significant digit than `x`.
pub fn padic_log(x: &PAdic, ctx: &PAdicContext) -> Result<PAdic> {
    let p = ctx.p();
    assert_eq!(x.p(), p, "value and context use different primes");
    let Some(unit) = x.unit() else {
        return Err(Error::ZeroArgument);
    };
    let v = x.valuation();
    let rel = x.rel_prec();
    let m = pow_p(p, rel);
    let w = unit.modpow(&BigInt::from(p - 1), &m);
    let y = (w - 1u32).mod_floor(&m);
    let log_unit = if y == BigInt::from(0) {
        PAdic::zero_mod(p, rel as i64)
    } else {
        let l = log_one_plus(&y, p, rel);
        PAdic::from_rational_abs(&BigRational::from_integer(l), p, rel as i64)
            .scale(&BigRational::new(1.into(), BigInt::from(p - 1)))
    };
    let branch_term = ctx.branch().scale(&BigRational::from_integer(v.into()));
    Ok(branch_term.add(&log_unit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn log_of_p_is_the_branch() {
        for a in [q(0, 1), q(1, 1), q(7, 1), q(3, 5)] {
            let ctx = PAdicContext::new(7, 15, &a).unwrap();
            let l = padic_log(&ctx.from_integer(7), &ctx).unwrap();
            assert!(l.sub(ctx.branch()).is_zero());
        }
    }

    #[test]
    fn log_of_one_vanishes() {
        let ctx = PAdicContext::new(5, 12, &q(1, 1)).unwrap();
        let l = padic_log(&ctx.from_integer(1), &ctx).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.abs_prec(), 12);
    }

    #[test]
    fn log_one_plus_p_matches_series() {
        // Oracle: the series summed in exact rationals far past the precision.
        for p in [3u64, 5, 7, 11] {
            let ctx = PAdicContext::new(p, 15, &q(0, 1)).unwrap();
            let l = padic_log(&ctx.from_integer(1 + p as i64), &ctx).unwrap();
            let mut exact = BigRational::zero();
            let pr = q(p as i64, 1);
            for k in 1..=40i64 {
                let t = num_traits::pow(pr.clone(), k as usize) / q(k, 1);
                exact += if k % 2 == 1 { t } else { -t };
            }
            let diff = l.sub(&PAdic::from_rational(&exact, p, 40));
            assert!(diff.is_zero(), "p = {p}: {l}");
            assert!(diff.abs_prec() >= 15);
        }
    }

    #[test]
    fn log_is_additive() {
        let ctx = PAdicContext::new(5, 20, &q(2, 1)).unwrap();
        let (x, y) = (ctx.from_rational(&q(50, 3)), ctx.from_rational(&q(7, 125)));
        let lhs = padic_log(&x.mul(&y), &ctx).unwrap();
        let rhs = padic_log(&x, &ctx).unwrap().add(&padic_log(&y, &ctx).unwrap());
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn log_of_zero_is_an_error() {
        let ctx = PAdicContext::new(5, 10, &q(0, 1)).unwrap();
        assert_eq!(padic_log(&PAdic::exact_zero(5), &ctx), Err(Error::ZeroArgument));
    }

    #[test]
    fn two_adic_log() {
        // log(-1) = 0 and log(5) matches -log(1 - 4/5 ...) through additivity with 1/5
        let ctx = PAdicContext::new(2, 20, &q(0, 1)).unwrap();
        assert!(padic_log(&ctx.from_integer(-1), &ctx).unwrap().is_zero());
        let a = padic_log(&ctx.from_integer(5), &ctx).unwrap();
        let b = padic_log(&ctx.from_rational(&q(1, 5)), &ctx).unwrap();
        assert!(a.add(&b).is_zero());
    }
}
