use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ball::bits_for_digits;
use super::complex::Complex;
use crate::error::{Error, Result};
use crate::word_algebra::Index;

/// Largest allowed modulus of a tail product `x_i ... x_m` for several-variable evaluation.
pub const TAIL_PRODUCT_MARGIN: f64 = 0.95;

/// Largest allowed `|z|` for one-variable evaluation.
pub const ONE_VARIABLE_RADIUS: f64 = 0.5;

/// A point `(x_1, ..., x_m)` for several-variable evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MplPoint(pub Vec<Complex>);

impl MplPoint {
    pub fn from_rationals(coords: &[BigRational], prec: u32) -> Self {
        MplPoint(coords.iter().map(|c| Complex::from_rationals(c, &BigRational::zero(), prec)).collect())
    }

    /// Upper bounds on `|x_i ... x_m|` for each `i`.
    pub fn tail_products(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.0.len()];
        let mut acc = 1.0;
        for (i, x) in self.0.iter().enumerate().rev() {
            acc *= x.abs_upper_f64();
            out[i] = acc;
        }
        out
    }
}

/// A multiple polylogarithm value with its truncation data.
#[derive(Debug, Clone, PartialEq)]
pub struct MplValue {
    pub value: Complex,
    /// Number of outer summation steps taken.
    pub truncation: usize,
    /// Upper bound on the omitted tail.
    pub tail_bound: f64,
    /// Upper bound on the total error (tail plus rounding).
    pub error_bound: f64,
}

/// Summary for printing.
#[derive(Debug, Clone, Serialize)]
pub struct MplReport {
    pub re: String,
    pub im: String,
    pub error_exponent: f64,
    pub truncation: usize,
}

impl MplValue {
    pub fn report(&self, digits: u32) -> MplReport {
        MplReport {
            re: self.value.re.to_decimal(digits),
            im: self.value.im.to_decimal(digits),
            error_exponent: self.error_bound.log10(),
            truncation: self.truncation,
        }
    }
}

/// `log2` of the tail bound after `k` steps: terms with `k_m = n > k` are bounded by
/// `n^(m-1-n_m) rho^n`, a series with ratio at most `q`.
fn log2_tail_bound(k: usize, depth: usize, last: u32, rho: f64) -> f64 {
    if rho == 0.0 {
        return f64::NEG_INFINITY;
    }
    let n = (k + 1) as f64;
    let growth = (depth as f64 - 1.0 - last as f64).max(0.0);
    let q = (1.0 + 1.0 / n).powf(growth) * rho;
    if q >= 1.0 {
        return f64::INFINITY;
    }
    (depth as f64 - 1.0 - last as f64) * n.log2() + n * rho.log2() - (1.0 - q).log2()
}

/// Smallest truncation whose tail bound is below `2^-target_bits`.
fn choose_truncation(depth: usize, last: u32, rho: f64, target_bits: u32) -> usize {
    if rho == 0.0 {
        return 0;
    }
    let mut k = depth.max(1);
    while log2_tail_bound(k, depth, last, rho) > -(target_bits as f64) {
        k = if k < 64 { k + 1 } else { k + k / 8 };
    }
    k
}

/// Evaluates the nested sum up to `k_m <= truncation`, at `prec` bits for the returned ball,
/// including the rigorous tail bound.
pub fn eval_mpl_truncated(index: &Index, point: &MplPoint, truncation: usize, prec: u32) -> Result<MplValue> {
    let m = index.depth();
    if point.0.len() != m {
        return Err(Error::InvalidArgument(format!("index has depth {m} but the point has {} coordinates", point.0.len())));
    }
    if m == 0 {
        return Ok(MplValue { value: Complex::one(prec), truncation: 0, tail_bound: 0.0, error_bound: 0.0 });
    }
    let tails = point.tail_products();
    let rho = tails.iter().cloned().fold(0.0, f64::max);
    if rho >= 1.0 {
        return Err(Error::OutOfRegion(format!("tail product bound {rho} is not below 1")));
    }
    let guard = (usize::BITS - (truncation * m + 1).leading_zeros()) + 16;
    let work = prec + guard;
    let xs: Vec<Complex> = point.0.iter().map(|x| x.with_prec(work)).collect();
    let skip_mul: Vec<bool> = xs.iter().map(|x| x.is_exact_one()).collect();
    let entries = index.entries();
    let mut partial = vec![Complex::zero(work); m + 1];
    partial[0] = Complex::one(work);
    let mut powers: Vec<Complex> = vec![Complex::one(work); m];
    for k in 1..=truncation {
        for (j, x) in xs.iter().enumerate() {
            if !skip_mul[j] {
                powers[j] = powers[j].mul(x);
            }
        }
        let kb = BigInt::from(k);
        for j in (1..=m.min(k)).rev() {
            let mut term = partial[j - 1].clone();
            if !skip_mul[j - 1] {
                term = term.mul(&powers[j - 1]);
            }
            term = term.div_int(&kb.pow(entries[j - 1]));
            partial[j] = partial[j].add(&term);
        }
    }
    let last = entries[m - 1];
    let tail_bound = 2f64.powf(log2_tail_bound(truncation, m, last, rho)) * 1.01;
    if !tail_bound.is_finite() {
        return Err(Error::OutOfRegion("tail bound does not converge for this truncation".into()));
    }
    let value = partial[m].with_prec(prec).add_error(tail_bound);
    let error_bound = value.radius_f64();
    Ok(MplValue { value, truncation, tail_bound, error_bound })
}

/// Several-variable multiple polylogarithm
/// `sum_{0<k_1<...<k_m} x_1^k_1 ... x_m^k_m / (k_1^n_1 ... k_m^n_m)` at a working precision
/// in bits. Every tail product must be at most [`TAIL_PRODUCT_MARGIN`] in modulus.
pub fn eval_mpl_bits(index: &Index, point: &MplPoint, prec: u32) -> Result<MplValue> {
    let m = index.depth();
    if point.0.len() != m {
        return Err(Error::InvalidArgument(format!("index has depth {m} but the point has {} coordinates", point.0.len())));
    }
    if m == 0 {
        return eval_mpl_truncated(index, point, 0, prec);
    }
    let tails = point.tail_products();
    let rho = tails.iter().cloned().fold(0.0, f64::max);
    if rho > TAIL_PRODUCT_MARGIN {
        return Err(Error::OutOfRegion(format!(
            "tail product bound {rho:.6} exceeds the margin {TAIL_PRODUCT_MARGIN}"
        )));
    }
    let truncation = choose_truncation(m, index.entries()[m - 1], rho, prec + 2);
    eval_mpl_truncated(index, point, truncation, prec)
}

/// Several-variable multiple polylogarithm to `digits` decimal digits.
pub fn eval_mpl_multi(index: &Index, point: &MplPoint, digits: u32) -> Result<MplValue> {
    let prec = bits_for_digits(digits);
    let point = MplPoint(point.0.iter().map(|x| x.with_prec(prec)).collect());
    eval_mpl_bits(index, &point, prec)
}

/// One-variable multiple polylogarithm `sum z^k_m / (k_1^n_1 ... k_m^n_m)` at a precision in
/// bits, for `|z| <= 1/2`.
pub fn eval_mpl_one_bits(index: &Index, z: &Complex, prec: u32) -> Result<MplValue> {
    if z.abs_upper_f64() > ONE_VARIABLE_RADIUS * (1.0 + 1e-9) {
        return Err(Error::OutOfRegion(format!("|z| = {:.6} exceeds 1/2", z.abs_mid_f64())));
    }
    let z = z.with_prec(prec);
    let mut coords = vec![Complex::one(prec); index.depth()];
    if let Some(last) = coords.last_mut() {
        *last = z;
    }
    eval_mpl_bits(index, &MplPoint(coords), prec)
}

/// One-variable multiple polylogarithm to `digits` decimal digits, for `|z| <= 1/2`.
pub fn eval_mpl_one(index: &Index, z: &Complex, digits: u32) -> Result<MplValue> {
    eval_mpl_one_bits(index, z, bits_for_digits(digits))
}

/// Rational point helper: `x` as an exact complex number with zero imaginary part.
pub fn real_point(x: &BigRational, prec: u32) -> Complex {
    Complex::from_rationals(x, &BigRational::zero(), prec)
}

/// `1/2`.
pub fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::constants::ln2;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn li1_half_is_log2() {
        let prec = bits_for_digits(30);
        let v = eval_mpl_one_bits(&idx("(1)"), &real_point(&half(), prec), prec).unwrap();
        assert!(v.value.re.overlaps(&ln2(prec)));
        assert!(v.error_bound < 1e-40);
    }

    #[test]
    fn li11_half_is_half_log2_squared() {
        let prec = bits_for_digits(30);
        let v = eval_mpl_one_bits(&idx("(1,1)"), &real_point(&half(), prec), prec).unwrap();
        let l = ln2(prec);
        let expected = l.mul(&l).div_int(&BigInt::from(2));
        assert!(v.value.re.overlaps(&expected));
    }

    #[test]
    fn zero_argument() {
        let prec = 100;
        let v = eval_mpl_one_bits(&idx("(3)"), &Complex::zero(prec), prec).unwrap();
        assert!(v.value.contains_zero());
        let p = MplPoint::from_rationals(&[q(1, 3), q(0, 1)], prec);
        assert!(eval_mpl_bits(&idx("(1,2)"), &p, prec).unwrap().value.contains_zero());
    }

    #[test]
    fn region_is_enforced() {
        let prec = 100;
        assert!(matches!(
            eval_mpl_one_bits(&idx("(2)"), &real_point(&q(3, 5), prec), prec),
            Err(Error::OutOfRegion(_))
        ));
        let p = MplPoint::from_rationals(&[q(1, 2), q(99, 100)], prec);
        assert!(matches!(eval_mpl_bits(&idx("(1,1)"), &p, prec), Err(Error::OutOfRegion(_))));
    }

    #[test]
    fn brute_force_truncated_sum() {
        // Oracle: exact rational nested sum to a fixed bound compared with the truncated path.
        let prec = 120;
        let (x, y) = (q(1, 3), q(-2, 5));
        let mut exact = BigRational::zero();
        for k2 in 1..=30i64 {
            for k1 in 1..k2 {
                let term = num_traits::pow(x.clone(), k1 as usize) * num_traits::pow(y.clone(), k2 as usize)
                    / BigRational::from_integer(BigInt::from(k1 * k2 * k2));
                exact += term;
            }
        }
        let p = MplPoint::from_rationals(&[x, y], prec);
        let v = eval_mpl_truncated(&idx("(1,2)"), &p, 30, prec).unwrap();
        // the tail bound is added, so the exact partial sum lies inside
        assert!(v.value.re.contains_rational(&exact));
    }

    #[test]
    fn doubling_truncation_never_increases_error_bound() {
        let prec = 160;
        let p = MplPoint::from_rationals(&[q(3, 10), q(2, 5)], prec);
        for k in [10, 20, 40, 80] {
            let a = eval_mpl_truncated(&idx("(1,1)"), &p, k, prec).unwrap();
            let b = eval_mpl_truncated(&idx("(1,1)"), &p, 2 * k, prec).unwrap();
            assert!(b.error_bound <= a.error_bound, "{k}: {} > {}", b.error_bound, a.error_bound);
            assert!(b.tail_bound <= a.tail_bound);
        }
    }
}
