use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::ball::{bits_for_digits, Real};
use super::complex::Complex;
use super::mpl::{eval_mpl_bits, MplPoint};
use crate::error::{Error, Result};
use crate::word_algebra::Index;

/// Outcome of comparing finite differences with the differential system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PdeReport {
    /// `|central difference - right-hand side|` for each coordinate.
    pub per_coordinate: Vec<f64>,
    pub max_deviation: f64,
}

/// The right-hand side of `d/dx_i Li_n(x)`:
///
/// * `n_i > 1`: `Li_{.., n_i - 1, ..}(x) / x_i`;
/// * `n_i = 1`: `Li_{n without i}(.., x_{i-1} x_i, x_{i+1}, ..) / (1 - x_i)
///   - Li_{n without i}(.., x_{i-1}, x_i x_{i+1}, ..) / (x_i (1 - x_i))`, where for `i = 1` the
///   first argument list simply drops `x_1` and for `i = m` the second term is absent.
pub fn mpl_partial_derivative(index: &Index, point: &MplPoint, i: usize, prec: u32) -> Result<Complex> {
    let entries = index.entries();
    let m = entries.len();
    let x = &point.0;
    if entries[i] > 1 {
        let mut lowered = entries.to_vec();
        lowered[i] -= 1;
        let v = eval_mpl_bits(&Index::new(lowered)?, point, prec)?.value;
        return v.div(&x[i]);
    }
    let mut reduced = entries.to_vec();
    reduced.remove(i);
    let reduced = Index::new(reduced)?;
    let one = Complex::one(prec);
    let one_minus = one.sub(&x[i]);

    let mut left_point: Vec<Complex> = x.clone();
    if i > 0 {
        left_point[i - 1] = x[i - 1].mul(&x[i]);
    }
    left_point.remove(i);
    let left = eval_mpl_bits(&reduced, &MplPoint(left_point), prec)?.value;
    let mut out = left.div(&one_minus)?;

    if i + 1 < m {
        let mut right_point: Vec<Complex> = x.clone();
        right_point[i + 1] = x[i].mul(&x[i + 1]);
        right_point.remove(i);
        let right = eval_mpl_bits(&reduced, &MplPoint(right_point), prec)?.value;
        out = out.sub(&right.div(&x[i].mul(&one_minus))?);
    }
    Ok(out)
}

/// Compares central differences `(Li(x + h e_i) - Li(x - h e_i)) / 2h` with
/// [`mpl_partial_derivative`] in every coordinate. The deviation is `O(h^2)`.
pub fn verify_mpl_pde(index: &Index, point: &[BigRational], step: &BigRational, digits: u32) -> Result<PdeReport> {
    let m = index.depth();
    if m == 0 || point.len() != m {
        return Err(Error::InvalidArgument("the point must have one coordinate per index entry".into()));
    }
    let h = step.abs();
    for x in point {
        if x.abs() <= h || (BigRational::one() - x).abs() <= h {
            return Err(Error::OutOfRegion(format!("coordinate {x} is within the step of a singular value")));
        }
    }
    let prec = bits_for_digits(digits);
    let to_point = |coords: &[BigRational]| MplPoint::from_rationals(coords, prec);
    let mut per_coordinate = Vec::with_capacity(m);
    for i in 0..m {
        let mut plus = point.to_vec();
        plus[i] += &h;
        let mut minus = point.to_vec();
        minus[i] -= &h;
        // the shifted points must stay inside the evaluation region
        let fp = eval_mpl_bits(index, &to_point(&plus), prec)?.value;
        let fm = eval_mpl_bits(index, &to_point(&minus), prec)?.value;
        let two_h = Real::from_rational(&(&h * BigRational::from_integer(2.into())), prec);
        let diff = fp.sub(&fm);
        let fd = Complex::new(diff.re.div(&two_h)?, diff.im.div(&two_h)?);
        let rhs = mpl_partial_derivative(index, &to_point(point), i, prec)?;
        per_coordinate.push(fd.sub(&rhs).abs_mid_f64());
    }
    let max_deviation = per_coordinate.iter().cloned().fold(0.0, f64::max);
    Ok(PdeReport { per_coordinate, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn dilogarithm_derivative() {
        let r = verify_mpl_pde(&idx("(2)"), &[q(3, 10)], &q(1, 10000), 25).unwrap();
        assert!(r.max_deviation < 1e-6, "{}", r.max_deviation);
    }

    #[test]
    fn depth_two_ones() {
        let r = verify_mpl_pde(&idx("(1,1)"), &[q(1, 5), q(3, 10)], &q(1, 10000), 25).unwrap();
        assert!(r.max_deviation < 1e-6, "{:?}", r.per_coordinate);
    }

    #[test]
    fn wrong_sign_would_be_detected() {
        // Oracle: independent derivative of Li_1 = -log(1 - x) is 1/(1 - x).
        let prec = bits_for_digits(25);
        let p = MplPoint::from_rationals(&[q(2, 5)], prec);
        let d = mpl_partial_derivative(&idx("(1)"), &p, 0, prec).unwrap();
        assert!((d.re.to_f64() - 1.0 / 0.6).abs() < 1e-15);
    }

    #[test]
    fn singular_point_rejected() {
        assert!(matches!(
            verify_mpl_pde(&idx("(2)"), &[q(0, 1)], &q(1, 10000), 20),
            Err(Error::OutOfRegion(_))
        ));
    }

    #[test]
    fn second_order_scaling() {
        let pt = [q(1, 4), q(2, 5)];
        let a = verify_mpl_pde(&idx("(2,1)"), &pt, &q(1, 1000), 25).unwrap().max_deviation;
        let b = verify_mpl_pde(&idx("(2,1)"), &pt, &q(1, 2000), 25).unwrap().max_deviation;
        assert!(a / b >= 3.0, "{a} {b}");
    }
}
