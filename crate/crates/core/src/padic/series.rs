use num_rational::BigRational;
use num_traits::{One, Zero};

use super::number::{PAdic, PAdicContext, EXACT};
use crate::error::{Error, Result};
use crate::word_algebra::{enumerate_ordered_surjections, shuffle, stuffle_contract, Index};

/// Lower bound on the valuation of a term with outer summation index `k` (`k >= depth`):
/// `sum_i w_i + (k - m) w_min - n floor(log_p k)`.
fn term_bound(k: u64, p: u64, tails: &[i64], weight: u32) -> i64 {
    let m = tails.len() as i64;
    let w_min = *tails.iter().min().expect("nonempty");
    let total = tails.iter().fold(0i64, |a, b| a.saturating_add(*b));
    total
        .saturating_add((k as i64 - m).saturating_mul(w_min))
        .saturating_sub(weight as i64 * k.ilog(p) as i64)
}

/// Largest outer summation index needed so that every omitted term has valuation at least
/// `target + 2`.
fn truncation(p: u64, tails: &[i64], weight: u32, target: i64) -> u64 {
    let m = tails.len() as u64;
    let w_min = *tails.iter().min().expect("nonempty") as f64;
    let total: f64 = tails.iter().map(|&t| t as f64).sum();
    let ln_p = (p as f64).ln();
    // the continuous bound decreases only up to k = weight / (w_min ln p)
    let mut k = m.max((weight as f64 / (w_min * ln_p)).ceil() as u64);
    let bound = |k: u64| total + (k as f64 - m as f64) * w_min - weight as f64 * (k as f64).ln() / ln_p;
    while bound(k + 1) < (target + 2) as f64 {
        k += 1;
    }
    k
}

/// `Li_n(x_1, ..., x_m) = sum_{0<k_1<...<k_m} x_1^k_1 ... x_m^k_m / (k_1^n_1 ... k_m^n_m)`
/// modulo `p^N`, for points whose tail products `x_i ... x_m` all lie in `pZ_p`.
///
/// The result is known modulo `p^r` with `r` the smaller of `N` and the least term valuation
/// plus the least relative precision among the coordinates.
pub fn eval_mpl_padic(index: &Index, point: &[PAdic], ctx: &PAdicContext) -> Result<PAdic> {
    let p = ctx.p();
    let target = ctx.precision() as i64;
    let m = index.depth();
    if point.len() != m {
        return Err(Error::InvalidArgument(format!("index has depth {m} but the point has {} coordinates", point.len())));
    }
    if m == 0 {
        return Ok(PAdic::one(p, ctx.precision()));
    }
    let mut tails = vec![0i64; m];
    let mut acc = 0i64;
    for i in (0..m).rev() {
        acc = acc.saturating_add(point[i].valuation());
        tails[i] = acc;
    }
    if let Some(i) = tails.iter().position(|&t| t <= 0) {
        return Err(Error::NotInDisc(format!("the tail product from coordinate {} has valuation {}", i + 1, tails[i])));
    }
    let weight = index.weight();
    let last = truncation(p, &tails, weight, target);
    let least_term = (m as u64..=last.max(m as u64)).map(|k| term_bound(k, p, &tails, weight)).min().expect("nonempty");

    if point.iter().any(|x| x.is_zero()) {
        let abs = if least_term == EXACT { target } else { target.min(least_term) };
        return Ok(PAdic::zero_mod(p, abs));
    }
    let rel_min = point.iter().map(|x| x.rel_prec() as i64).min().expect("nonempty");
    let abs = target.min(least_term + rel_min);

    let xs: Vec<BigRational> = point.iter().map(|x| x.lift()).collect();
    let entries = index.entries();
    let mut partial = vec![BigRational::zero(); m + 1];
    partial[0] = BigRational::one();
    let mut powers = vec![BigRational::one(); m];
    for k in 1..=last {
        for (power, x) in powers.iter_mut().zip(&xs) {
            *power *= x;
        }
        let kr = BigRational::from_integer(k.into());
        for j in (1..=m.min(k as usize)).rev() {
            let term = &partial[j - 1] * &powers[j - 1] / num_traits::pow(kr.clone(), entries[j - 1] as usize);
            partial[j] += term;
        }
    }
    Ok(PAdic::from_rational_abs(&partial[m], p, abs))
}

/// `(1, ..., 1, z)` with one coordinate per index entry.
pub fn one_variable_point(depth: usize, z: &PAdic, ctx: &PAdicContext) -> Vec<PAdic> {
    let mut point = vec![PAdic::one(ctx.p(), ctx.precision()); depth];
    if let Some(last) = point.last_mut() {
        *last = z.clone();
    }
    point
}

/// One-variable `Li_n(z) = Li_n(1, ..., 1, z)`.
pub fn eval_li_padic(index: &Index, z: &PAdic, ctx: &PAdicContext) -> Result<PAdic> {
    eval_mpl_padic(index, &one_variable_point(index.depth(), z, ctx), ctx)
}

/// Valuation of `Li_k(z) Li_k'(z) - sum over shuffles of the words of k and k'` of the
/// corresponding `Li(z)`. A residual indistinguishable from zero reports its known precision.
pub fn verify_integral_shuffle_padic(k: &Index, k2: &Index, z: &PAdic, ctx: &PAdicContext) -> Result<i64> {
    if z.valuation() <= 0 {
        return Err(Error::NotInDisc(format!("|z|_p must be below 1, got valuation {}", z.valuation())));
    }
    let lhs = eval_li_padic(k, z, ctx)?.mul(&eval_li_padic(k2, z, ctx)?);
    let mut rhs = PAdic::exact_zero(ctx.p());
    for (word, c) in shuffle(&k.to_word(), &k2.to_word()).iter() {
        let index = Index::from_word(word)?;
        rhs = rhs.add(&eval_li_padic(&index, z, ctx)?.scale(c));
    }
    Ok(lhs.sub(&rhs).valuation())
}

/// Valuation of `Li_a(x) Li_b(y) - sum_sigma Li_{sigma(a,b)}(sigma(x,y))`, where `sigma` runs
/// over ordered surjections and merged coordinates multiply.
pub fn verify_series_shuffle_padic(a: &Index, x: &[PAdic], b: &Index, y: &[PAdic], ctx: &PAdicContext) -> Result<i64> {
    let lhs = eval_mpl_padic(a, x, ctx)?.mul(&eval_mpl_padic(b, y, ctx)?);
    let rhs = if a.is_empty() || b.is_empty() {
        let point: Vec<PAdic> = x.iter().chain(y).cloned().collect();
        eval_mpl_padic(&a.concat(b), &point, ctx)?
    } else {
        let mut rhs = PAdic::exact_zero(ctx.p());
        for sigma in enumerate_ordered_surjections(a.depth(), b.depth()) {
            let index = stuffle_contract(&sigma, a, b)?;
            let point = sigma.contract_with(x, y, |u, v| u.mul(v))?;
            rhs = rhs.add(&eval_mpl_padic(&index, &point, ctx)?);
        }
        rhs
    };
    Ok(lhs.sub(&rhs).valuation())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::padic_log;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn li1_is_minus_log_one_minus() {
        for p in [5u64, 7] {
            for a in [q(0, 1), q(1, 1)] {
                let ctx = PAdicContext::new(p, 15, &a).unwrap();
                let z = ctx.from_integer(p as i64);
                let li = eval_li_padic(&idx("(1)"), &z, &ctx).unwrap();
                let log = padic_log(&ctx.from_integer(1 - p as i64), &ctx).unwrap();
                let diff = li.add(&log);
                assert!(diff.is_zero());
                assert!(diff.abs_prec() >= 15, "{}", diff.abs_prec());
            }
        }
    }

    #[test]
    fn li_at_zero() {
        let ctx = PAdicContext::new(7, 10, &q(0, 1)).unwrap();
        let v = eval_li_padic(&idx("(3)"), &PAdic::exact_zero(7), &ctx).unwrap();
        assert!(v.is_zero());
        assert!(v.abs_prec() >= 10);
    }

    #[test]
    fn matches_exact_truncated_sum() {
        // Oracle: brute-force double loop in exact rationals, far beyond the precision.
        let p = 5u64;
        let ctx = PAdicContext::new(p, 12, &q(0, 1)).unwrap();
        let (x, y) = (q(3, 1), q(10, 1));
        let mut exact = BigRational::zero();
        for k2 in 1..=60i64 {
            for k1 in 1..k2 {
                exact += num_traits::pow(x.clone(), k1 as usize) * num_traits::pow(y.clone(), k2 as usize) / q(k1 * k2 * k2, 1);
            }
        }
        let v = eval_mpl_padic(&idx("(1,2)"), &[ctx.from_rational(&x), ctx.from_rational(&y)], &ctx).unwrap();
        assert!(v.sub(&PAdic::from_rational(&exact, p, 40)).abs_prec() >= 12);
    }

    #[test]
    fn depth_two_series_shuffle() {
        let ctx = PAdicContext::new(7, 15, &q(0, 1)).unwrap();
        let (x, y) = (ctx.from_integer(7), ctx.from_integer(14));
        let r = verify_series_shuffle_padic(&idx("(1)"), &[x], &idx("(1)"), &[y], &ctx).unwrap();
        assert!(r >= 15, "{r}");
    }

    #[test]
    fn integral_shuffle_small_cases() {
        let ctx = PAdicContext::new(7, 15, &q(0, 1)).unwrap();
        let z = ctx.from_integer(7);
        assert!(verify_integral_shuffle_padic(&idx("(1)"), &idx("(1)"), &z, &ctx).unwrap() >= 13);
        let ctx5 = PAdicContext::new(5, 12, &q(0, 1)).unwrap();
        let z5 = ctx5.from_integer(5);
        assert!(verify_integral_shuffle_padic(&idx("(1)"), &idx("(2)"), &z5, &ctx5).unwrap() >= 10);
        assert!(verify_integral_shuffle_padic(&idx("(2)"), &Index::empty(), &z, &ctx).unwrap() >= 15);
    }

    #[test]
    fn outside_the_disc() {
        let ctx = PAdicContext::new(7, 10, &q(0, 1)).unwrap();
        let r = eval_mpl_padic(&idx("(1,1)"), &[ctx.from_integer(1), ctx.from_integer(3)], &ctx);
        assert!(matches!(r, Err(Error::NotInDisc(_))));
        // a unit first coordinate is fine when the tail products are small
        assert!(eval_mpl_padic(&idx("(1,1)"), &[ctx.from_rational(&q(1, 7)), ctx.from_integer(49)], &ctx).is_ok());
    }
}
