use std::ops::Mul;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cross_ratio::{cross_ratio, Proj};
use super::poly::{Limit, Poly, RatFn};
use crate::error::{Error, Result};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `z_i = (1 - x_1...x_i) / (1 - x_1...x_(i+1))` with `x_(N+1) = 0`.
pub fn x_to_z(x: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = x.len();
    let mut prefix = vec![BigRational::one(); n + 2];
    for i in 1..=n {
        prefix[i] = &prefix[i - 1] * &x[i - 1];
    }
    prefix[n + 1] = BigRational::zero();
    (1..=n)
        .map(|i| {
            let den = BigRational::one() - &prefix[i + 1];
            if den.is_zero() {
                return Err(Error::SingularPoint(format!("x_1...x_{} = 1", i + 1)));
            }
            Ok((BigRational::one() - &prefix[i]) / den)
        })
        .collect()
}

/// `x_i = (1 - z_i...z_N) / (1 - z_(i-1)...z_N)` with `z_0 = 0`.
pub fn z_to_x(z: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = z.len();
    let mut suffix = vec![BigRational::one(); n + 2];
    for i in (1..=n).rev() {
        suffix[i] = &suffix[i + 1] * &z[i - 1];
    }
    suffix[0] = BigRational::zero();
    (1..=n)
        .map(|i| {
            let den = BigRational::one() - &suffix[i - 1];
            if den.is_zero() {
                return Err(Error::SingularPoint(format!("z_{}...z_N = 1", i - 1)));
            }
            Ok((BigRational::one() - &suffix[i]) / den)
        })
        .collect()
}

/// `(1/2, 2/3, ..., (N-1)/N, 0)`.
pub fn point_r(n: usize) -> Vec<BigRational> {
    let mut z: Vec<BigRational> = (1..n as i64).map(|i| ratio(i, i + 1)).collect();
    z.push(BigRational::zero());
    z
}

/// `t -> (1/2, ..., (N-1)/N, N t)` with `t` symbolic.
pub fn iota(n: usize) -> Vec<Poly> {
    let mut z: Vec<Poly> = (1..n as i64).map(|i| Poly::constant(ratio(i, i + 1))).collect();
    z.push(Poly::monomial(ratio(n as i64, 1), 1));
    z
}

/// `iota` at a rational value of `t`.
pub fn iota_at(n: usize, t: &BigRational) -> Vec<BigRational> {
    iota(n).iter().map(|p| p.eval(t)).collect()
}

/// `(z_1, ..., z_N) -> (z_1, ..., z_(N-2), z_(N-1) z_N)`, forgetting the `(N+2)`-nd point.
pub fn project<T: Clone + Mul<Output = T>>(z: &[T]) -> Result<Vec<T>> {
    let n = z.len();
    if n < 2 {
        return Err(Error::InvalidArgument("projection needs N >= 2".into()));
    }
    let mut out = z[..n - 2].to_vec();
    out.push(z[n - 2].clone() * z[n - 1].clone());
    Ok(out)
}

/// Numerator and denominator, as polynomials in `z_N`, of
/// `1 - prod_(i in I) (1 - z_i...z_N) / (1 - z_(i-1)...z_N)` after substituting
/// `z_i = i/(i+1)` for `i < N`.
pub fn zdiv_on_special_line(n: usize, subset: &[usize]) -> Result<(Poly, Poly)> {
    if subset.is_empty() || subset.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::InvalidArgument(format!("subset must be a nonempty part of 1..={n}")));
    }
    let mut z: Vec<Poly> = (1..n as i64).map(|i| Poly::constant(ratio(i, i + 1))).collect();
    z.push(Poly::t());
    // tail[i] = z_i ... z_N, tail[0] = 0 (z_0 = 0)
    let mut tail = vec![Poly::from_int(1); n + 2];
    for i in (1..=n).rev() {
        tail[i] = tail[i + 1].times(&z[i - 1]);
    }
    tail[0] = Poly::zero();
    let one = Poly::from_int(1);
    let mut num = Poly::from_int(1);
    let mut den = Poly::from_int(1);
    for &i in subset {
        num = num.times(&one.sub(&tail[i]));
        den = den.times(&one.sub(&tail[i - 1]));
    }
    Ok((den.sub(&num), den))
}

/// Divides the special-line expression by `z_N` and sets `z_N = 0`.
pub fn zdiv_residue(n: usize, subset: &[usize]) -> Result<BigRational> {
    let (num, den) = zdiv_on_special_line(n, subset)?;
    let (q, r) = num.div_linear(&BigRational::zero());
    if !r.is_zero() {
        return Err(Error::SingularPoint("the expression does not vanish on z_N = 0".into()));
    }
    Ok(q.eval(&BigRational::zero()) / den.eval(&BigRational::zero()))
}

/// The `z` coordinates `lambda_(2, 1, i+3, i+2)` of `(0, t^N, ..., t, 1, inf)` as rational
/// functions of `t`.
pub fn z_along_power_curve(n: usize) -> Result<Vec<RatFn>> {
    let t_pow = |k: usize| Proj::Finite(RatFn::poly(Poly::monomial(BigRational::one(), k)));
    // label j in 1..=N+3
    let point = |j: usize| match j {
        1 => Proj::Finite(RatFn::poly(Poly::zero())),
        j if j == n + 3 => Proj::Infinity,
        j => t_pow(n + 2 - j),
    };
    (1..=n)
        .map(|i| match cross_ratio([&point(2), &point(1), &point(i + 3), &point(i + 2)])? {
            Proj::Finite(r) => Ok(r),
            Proj::Infinity => Err(Error::SingularPoint("coordinate is identically infinite".into())),
        })
        .collect()
}

/// Coordinatewise limit of [`z_along_power_curve`] as `t -> 1`.
pub fn limit_of_power_curve(n: usize) -> Result<Vec<Limit>> {
    Ok(z_along_power_curve(n)?.iter().map(|r| r.limit(&BigRational::one())).collect())
}
