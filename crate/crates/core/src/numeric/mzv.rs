use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::ball::{bits_for_digits, Real};
use super::constants::bernoulli_numbers;
use super::mpl::{eval_mpl_one_bits, half, real_point};
use crate::error::{Error, Result};
use crate::word_algebra::{Index, Word};

/// How a multiple zeta value is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MzvStrategy {
    /// Splitting the iterated integral at `1/2`; every term is a one-variable polylogarithm
    /// at `1/2` with a rigorous tail bound.
    Holder,
    /// Nested partial sums plus an Euler-Maclaurin expansion of the tail. The error bound is
    /// an estimate from the first omitted asymptotic terms.
    Direct,
}

/// A multiple zeta value with its error information.
#[derive(Debug, Clone, PartialEq)]
pub struct MzvValue {
    pub value: Real,
    pub error_bound: f64,
    pub rigorous: bool,
    pub strategy: MzvStrategy,
}

/// `zeta(n_1, ..., n_m) = sum_{0<k_1<...<k_m} k_1^-n_1 ... k_m^-n_m` to within `10^-digits`,
/// by the rigorous splitting strategy.
pub fn eval_mzv(index: &Index, digits: u32) -> Result<Real> {
    Ok(eval_mzv_with(index, digits, MzvStrategy::Holder)?.value)
}

pub fn eval_mzv_with(index: &Index, digits: u32, strategy: MzvStrategy) -> Result<MzvValue> {
    eval_mzv_bits(index, bits_for_digits(digits), strategy)
}

/// As [`eval_mzv_with`] with the precision given in bits.
pub fn eval_mzv_bits(index: &Index, prec: u32, strategy: MzvStrategy) -> Result<MzvValue> {
    if !index.is_admissible() {
        return Err(Error::NonAdmissible(index.to_string()));
    }
    if index.is_empty() {
        return Ok(MzvValue { value: Real::one(prec), error_bound: 0.0, rigorous: true, strategy });
    }
    match strategy {
        MzvStrategy::Holder => holder(index, prec),
        MzvStrategy::Direct => direct(index, prec),
    }
}

/// Evaluates many multiple zeta values at once, sharing the polylogarithm values at `1/2`.
#[derive(Debug)]
pub struct MzvEvaluator {
    prec: u32,
    work: u32,
    at_half: HashMap<Index, Real>,
    values: HashMap<Index, Real>,
}

impl MzvEvaluator {
    pub fn new(digits: u32) -> Self {
        Self::with_bits(bits_for_digits(digits))
    }

    pub fn with_bits(prec: u32) -> Self {
        MzvEvaluator { prec, work: prec + 24, at_half: HashMap::new(), values: HashMap::new() }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn li_half(&mut self, word: &Word) -> Result<Real> {
        let index = Index::from_word(word)?;
        if let Some(v) = self.at_half.get(&index) {
            return Ok(v.clone());
        }
        let v = eval_mpl_one_bits(&index, &real_point(&half(), self.work), self.work)?.value.re;
        self.at_half.insert(index, v.clone());
        Ok(v)
    }

    pub fn eval(&mut self, index: &Index) -> Result<Real> {
        if !index.is_admissible() {
            return Err(Error::NonAdmissible(index.to_string()));
        }
        if let Some(v) = self.values.get(index) {
            return Ok(v.clone());
        }
        // I(0; w; 1) = sum_k I(1/2; w[..k]; 1) I(0; w[k..]; 1/2) and
        // I(1/2; u; 1) = I(0; dual(u); 1/2).
        let w = index.to_word();
        let mut sum = Real::zero(self.work);
        for k in 0..=w.len() {
            let left = w.slice(0, k).dual();
            let right = w.slice(k, w.len());
            let a = self.li_half(&left)?;
            let b = self.li_half(&right)?;
            sum = sum.add(&a.mul(&b));
        }
        let v = sum.with_prec(self.prec);
        self.values.insert(index.clone(), v.clone());
        Ok(v)
    }
}

fn holder(index: &Index, prec: u32) -> Result<MzvValue> {
    let value = MzvEvaluator::with_bits(prec).eval(index)?;
    Ok(MzvValue { error_bound: value.radius_f64(), value, rigorous: true, strategy: MzvStrategy::Holder })
}

/// A truncated expansion `sum_e c_e x^-e`.
type Asymptotic = Vec<BigRational>;

/// `sum_{k >= x} k^-s` for integer `x`, as a series in `1/x` up to `x^-max_power`.
fn hurwitz_tail(s: u32, max_power: usize, bernoulli: &[BigRational]) -> Asymptotic {
    assert!(s >= 2);
    let mut c = vec![BigRational::zero(); max_power + 1];
    let s_us = s as usize;
    if s_us - 1 <= max_power {
        c[s_us - 1] += BigRational::new(BigInt::one(), BigInt::from(s - 1));
    }
    if s_us <= max_power {
        c[s_us] += BigRational::new(BigInt::one(), BigInt::from(2));
    }
    let mut j = 1;
    while s_us + 2 * j - 1 <= max_power {
        // B_{2j}/(2j)! * s (s+1) ... (s+2j-2)
        let mut rising = BigInt::one();
        for t in 0..(2 * j - 1) {
            rising *= BigInt::from(s as usize + t);
        }
        let fact: BigInt = (1..=2 * j).map(BigInt::from).product();
        c[s_us + 2 * j - 1] += &bernoulli[2 * j] * BigRational::new(rising, fact);
        j += 1;
    }
    c
}

/// `sum_{x <= k_1 < ... < k_r} k_1^-b_1 ... k_r^-b_r` for every suffix `b` of `entries`,
/// as series in `1/x`. Entry `i` of the result is the series of `entries[i..]`.
fn tail_series(entries: &[u32], max_power: usize, bernoulli: &[BigRational]) -> Vec<Asymptotic> {
    let r = entries.len();
    let mut out = vec![Vec::new(); r + 1];
    let mut one = vec![BigRational::zero(); max_power + 1];
    one[0] = BigRational::one();
    out[r] = one;
    for i in (0..r).rev() {
        let inner = &out[i + 1];
        // inner evaluated at k + 1, expanded in 1/k
        let mut shifted = vec![BigRational::zero(); max_power + 1];
        for (e, ce) in inner.iter().enumerate() {
            if ce.is_zero() {
                continue;
            }
            if e == 0 {
                shifted[0] += ce;
                continue;
            }
            for t in 0..=(max_power - e) {
                // binom(-e, t) = (-1)^t binom(e + t - 1, t)
                let b = binomial(BigInt::from(e + t - 1), BigInt::from(t));
                let b = if t % 2 == 1 { -b } else { b };
                shifted[e + t] += ce * BigRational::from_integer(b);
            }
        }
        let mut series = vec![BigRational::zero(); max_power + 1];
        for (f, gf) in shifted.iter().enumerate() {
            if gf.is_zero() {
                continue;
            }
            let s = entries[i] + f as u32;
            if s as usize > max_power + 1 {
                continue;
            }
            for (e, h) in hurwitz_tail(s, max_power, bernoulli).into_iter().enumerate() {
                if !h.is_zero() {
                    series[e] += gf * h;
                }
            }
        }
        out[i] = series;
    }
    out
}

fn direct(index: &Index, prec: u32) -> Result<MzvValue> {
    let work = prec + 24;
    let cutoff: u64 = (prec as u64 / 2).max(64);
    let log2_cut = (cutoff as f64).log2();
    let kept = ((work as f64 + 8.0) / log2_cut).ceil() as usize + 1;
    let max_power = kept + 2;
    let bernoulli = bernoulli_numbers(max_power + 2);
    let entries = index.entries();
    let m = entries.len();
    let tails = tail_series(entries, max_power, &bernoulli);

    // H[j] = sum_{0<k_1<...<k_j<cutoff} of the first j entries
    let mut partial = vec![Real::zero(work); m + 1];
    partial[0] = Real::one(work);
    for k in 1..cutoff {
        let kb = BigInt::from(k);
        for j in (1..=m.min(k as usize)).rev() {
            let term = partial[j - 1].div_int(&kb.pow(entries[j - 1]));
            partial[j] = partial[j].add(&term);
        }
    }

    let cut = BigRational::from_integer(BigInt::from(cutoff));
    let eval_series = |c: &Asymptotic, upto: usize| -> BigRational {
        let mut acc = BigRational::zero();
        let mut power = BigRational::one();
        for ce in c.iter().take(upto + 1) {
            acc += ce * &power;
            power /= &cut;
        }
        acc
    };
    let mut sum = Real::zero(work);
    let mut estimate = 0.0f64;
    for j in 0..=m {
        let series = &tails[j];
        let tail_value = eval_series(series, kept);
        let omitted: f64 = (kept + 1..=max_power)
            .map(|e| {
                let c = series[e].abs().to_f64().unwrap_or(f64::INFINITY);
                c * (cutoff as f64).powi(-(e as i32))
            })
            .sum();
        let h = &partial[j];
        estimate += 10.0 * omitted * h.abs_upper_f64();
        sum = sum.add(&h.mul(&Real::from_rational(&tail_value, work)));
    }
    let value = sum.with_prec(prec).add_error(estimate);
    Ok(MzvValue { error_bound: value.radius_f64(), value, rigorous: false, strategy: MzvStrategy::Direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::constants::{pi, zeta3};

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn zeta2_is_pi_squared_over_six() {
        let prec = bits_for_digits(30);
        let expected = pi(prec).pow(2).div_int(&BigInt::from(6));
        for strategy in [MzvStrategy::Holder, MzvStrategy::Direct] {
            let v = eval_mzv_bits(&idx("(2)"), prec, strategy).unwrap();
            assert!(v.value.overlaps(&expected), "{strategy:?}");
            assert!(v.value.sub(&expected).abs_upper_f64() < 1e-28);
        }
    }

    #[test]
    fn zeta3_and_euler() {
        let prec = bits_for_digits(30);
        let z3 = zeta3(prec);
        let a = eval_mzv_bits(&idx("(3)"), prec, MzvStrategy::Holder).unwrap().value;
        let b = eval_mzv_bits(&idx("(1,2)"), prec, MzvStrategy::Holder).unwrap().value;
        assert!(a.overlaps(&z3));
        assert!(b.overlaps(&z3));
        let d = eval_mzv_bits(&idx("(1,2)"), prec, MzvStrategy::Direct).unwrap().value;
        assert!(d.sub(&z3).abs_upper_f64() < 1e-28);
    }

    #[test]
    fn non_admissible_rejected() {
        assert_eq!(eval_mzv(&idx("(2,1)"), 20), Err(Error::NonAdmissible("(2,1)".into())));
    }

    #[test]
    fn hurwitz_expansion_matches_exact_tail_difference() {
        // sum_{k>=x} k^-2 - sum_{k>=x+1} k^-2 = x^-2, checked on the series at x = 50
        let b = bernoulli_numbers(30);
        let s = hurwitz_tail(2, 20, &b);
        let eval = |x: i64| {
            let xr = BigRational::from_integer(x.into());
            s.iter().enumerate().fold(BigRational::zero(), |acc, (e, c)| acc + c / num_traits::pow(xr.clone(), e))
        };
        let diff = eval(50) - eval(51) - BigRational::new(1.into(), 2500.into());
        assert!(diff.abs().to_f64().unwrap() < 1e-25);
    }
}
