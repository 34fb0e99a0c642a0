//! Independently computed constants and exact Bernoulli numbers.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ball::Real;

/// `atan(1/n)` by its alternating series; the tail is bounded by the first omitted term.
fn atan_inv(n: u64, prec: u32) -> Real {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut power = BigInt::from(n); // n^(2k+1)
    let mut sum = Real::zero(prec);
    let mut k = 0u64;
    loop {
        let denom = &power * BigInt::from(2 * k + 1);
        if denom.bits() as u32 > prec + 4 {
            return sum.add_error_rational(&BigRational::new(BigInt::one(), denom));
        }
        let term = Real::one(prec).div_int(&denom);
        sum = if k.is_multiple_of(2) { sum.add(&term) } else { sum.sub(&term) };
        power *= &n2;
        k += 1;
    }
}

/// `pi` from Machin's formula.
pub fn pi(prec: u32) -> Real {
    let work = prec + 16;
    let a = atan_inv(5, work).mul_int(&BigInt::from(16));
    let b = atan_inv(239, work).mul_int(&BigInt::from(4));
    a.sub(&b).with_prec(prec)
}

/// `log 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> Real {
    let work = prec + 16;
    let mut sum = Real::zero(work);
    let mut power = BigInt::from(3);
    let mut k = 0u64;
    loop {
        let denom = &power * BigInt::from(2 * k + 1);
        if denom.bits() as u32 > work + 4 {
            // geometric tail with ratio 1/9
            let tail = BigRational::new(BigInt::from(9), denom * 8);
            return sum.add_error_rational(&tail).mul_int(&BigInt::from(2)).with_prec(prec);
        }
        sum = sum.add(&Real::one(work).div_int(&denom));
        power *= 9;
        k += 1;
    }
}

/// `zeta(3) = (5/2) sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k, k))`.
pub fn zeta3(prec: u32) -> Real {
    let work = prec + 16;
    let mut sum = Real::zero(work);
    let mut k = 1u64;
    loop {
        let denom = BigInt::from(k).pow(3) * binomial(BigInt::from(2 * k), BigInt::from(k));
        if denom.bits() as u32 > work + 4 {
            let tail = BigRational::new(BigInt::one(), denom);
            return sum
                .add_error_rational(&tail)
                .mul_int(&BigInt::from(5))
                .div_int(&BigInt::from(2))
                .with_prec(prec);
        }
        let term = Real::one(work).div_int(&denom);
        sum = if k % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
        k += 1;
    }
}

/// `B_0, ..., B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        // sum_{k=0}^{m} binom(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(k))) * bk;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}
