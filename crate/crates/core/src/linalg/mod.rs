//! Exact linear algebra over the rationals: fraction-free (Bareiss) echelon reduction,
//! reduced row echelon form, rank and row-space membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    ncols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(ncols: usize) -> Self {
        RationalMatrix { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "row length mismatch");
        RationalMatrix { ncols, rows }
    }

    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// Rank and reduced row echelon basis of the row space.
    pub fn row_reduce(&self) -> EchelonForm {
        let integer_rows: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| clear_denominators(r))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let (echelon, pivots) = bareiss_echelon(integer_rows, self.ncols);
        EchelonForm::from_integer_echelon(echelon, pivots, self.ncols)
    }
}

/// Reduced row echelon form: row `k` has a leading 1 in column `pivots[k]`, and every
/// other row is zero in that column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonForm {
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<BigRational>>,
}

impl EchelonForm {
    fn from_integer_echelon(rows: Vec<Vec<BigInt>>, pivots: Vec<usize>, ncols: usize) -> Self {
        let mut rows: Vec<Vec<BigRational>> = rows
            .into_iter()
            .zip(&pivots)
            .map(|(r, &p)| {
                let lead = BigRational::from_integer(r[p].clone());
                r.into_iter().map(|x| BigRational::from_integer(x) / &lead).collect()
            })
            .collect();
        for k in (0..rows.len()).rev() {
            let p = pivots[k];
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        EchelonForm { ncols, pivots, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigRational>> {
        self.rows
    }

    /// The remainder of `v` after subtracting its projection onto the pivot columns.
    /// Zero exactly when `v` lies in the row space.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// True iff both forms span the same space.
    pub fn same_space(&self, other: &EchelonForm) -> bool {
        self.ncols == other.ncols
            && self.rank() == other.rank()
            && other.rows.iter().all(|r| self.contains(r))
    }
}

/// Scales a rational row by the lcm of its denominators.
fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()
}

/// Fraction-free Gaussian elimination. Every division is exact; entries stay bounded by
/// minors of the input. Returns the nonzero echelon rows and their pivot columns.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..ncols {
        if k == nrows {
            break;
        }
        // The smallest nonzero pivot keeps entries small in practice.
        let Some(pr) = (k..nrows)
            .filter(|&r| !m[r][c].is_zero())
            .min_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()))
        else {
            continue;
        };
        m.swap(k, pr);
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c..ncols {
                let v = &pivot * &row[j] - &f * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            for x in row[..c].iter_mut() {
                *x = BigInt::zero();
            }
        }
        prev = pivot;
        pivots.push(c);
        k += 1;
    }
    m.truncate(k);
    (m, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Oracle: plain Gauss-Jordan elimination over the rationals.
    fn naive_rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
        let mut m = rows.to_vec();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    let pr = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn zero_matrix() {
        let m = RationalMatrix::from_rows(3, vec![vec![q(0), q(0), q(0)]; 2]);
        let e = m.row_reduce();
        assert_eq!(e.rank(), 0);
        assert!(e.rows().is_empty());
        assert!(e.contains(&[q(0), q(0), q(0)]));
        assert!(!e.contains(&[q(1), q(0), q(0)]));
    }

    #[test]
    fn small_example() {
        let m = RationalMatrix::from_rows(
            3,
            vec![
                vec![q(2), q(4), q(6)],
                vec![qr(1, 2), q(1), qr(3, 2)],
                vec![q(0), q(1), q(1)],
            ],
        );
        let e = m.row_reduce();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.rows()[0], vec![q(1), q(0), q(1)]);
        assert_eq!(e.rows()[1], vec![q(0), q(1), q(1)]);
        assert!(e.contains(&[q(3), q(5), q(8)]));
        assert!(!e.contains(&[q(0), q(0), q(1)]));
    }

    #[test]
    fn random_matrices_match_naive_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let nrows = rng.gen_range(1..7);
            let ncols = rng.gen_range(1..7);
            let rank_cap = rng.gen_range(1..=nrows.min(ncols));
            // Products of random factors give controlled rank deficiency.
            let left: Vec<Vec<BigRational>> = (0..nrows)
                .map(|_| (0..rank_cap).map(|_| qr(rng.gen_range(-4..5), rng.gen_range(1..4))).collect())
                .collect();
            let right: Vec<Vec<BigRational>> = (0..rank_cap)
                .map(|_| (0..ncols).map(|_| qr(rng.gen_range(-4..5), rng.gen_range(1..4))).collect())
                .collect();
            let rows: Vec<Vec<BigRational>> = left
                .iter()
                .map(|l| {
                    (0..ncols)
                        .map(|j| l.iter().zip(&right).fold(q(0), |acc, (a, r)| acc + a * &r[j]))
                        .collect()
                })
                .collect();
            let e = RationalMatrix::from_rows(ncols, rows.clone()).row_reduce();
            assert_eq!(e.rank(), naive_rank(&rows, ncols));
            for r in &rows {
                assert!(e.contains(r));
            }
            for (k, &p) in e.pivots().iter().enumerate() {
                for (k2, row) in e.rows().iter().enumerate() {
                    assert_eq!(row[p], if k == k2 { q(1) } else { q(0) });
                }
            }
        }
    }
}
