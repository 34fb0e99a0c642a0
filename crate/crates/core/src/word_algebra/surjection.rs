use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::combination::IndexCombination;
use super::index::Index;
use crate::error::{Error, Result};

/// An element of `Sh^<=(r, s)`: a surjection `{1..r+s} -> {1..N}` that is strictly
/// increasing on `{1..r}` and on `{r+1..r+s}`.
///
/// `assignment[i]` holds the (0-based) image of the (0-based) element `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSurjection {
    r: usize,
    s: usize,
    target_size: usize,
    assignment: Vec<usize>,
}

impl OrderedSurjection {
    /// Builds a surjection from 0-based images, checking every invariant.
    pub fn new(r: usize, s: usize, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != r + s {
            return Err(Error::InvalidArgument("assignment length must be r + s".into()));
        }
        let target_size = assignment.iter().map(|&a| a + 1).max().unwrap_or(0);
        let mut hit = vec![0usize; target_size];
        for &a in &assignment {
            hit[a] += 1;
        }
        if hit.contains(&0) {
            return Err(Error::InvalidArgument("assignment is not onto".into()));
        }
        if !assignment[..r].windows(2).all(|p| p[0] < p[1])
            || !assignment[r..].windows(2).all(|p| p[0] < p[1])
        {
            return Err(Error::InvalidArgument("assignment is not increasing on both blocks".into()));
        }
        Ok(OrderedSurjection { r, s, target_size, assignment })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Preimages of each target point, as 0-based source elements in increasing order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::with_capacity(2); self.target_size];
        for (src, &dst) in self.assignment.iter().enumerate() {
            fibers[dst].push(src);
        }
        fibers
    }

    /// Contracts the concatenated sequence `left ++ right` along the fibers of the surjection,
    /// merging the two elements of a size-2 fiber with `merge`.
    pub fn contract_with<T: Clone, F>(&self, left: &[T], right: &[T], mut merge: F) -> Result<Vec<T>>
    where
        F: FnMut(&T, &T) -> T,
    {
        if left.len() != self.r || right.len() != self.s {
            return Err(Error::ArityMismatch {
                expected_left: self.r,
                expected_right: self.s,
                left: left.len(),
                right: right.len(),
            });
        }
        let get = |i: usize| if i < self.r { &left[i] } else { &right[i - self.r] };
        Ok(self
            .fibers()
            .into_iter()
            .map(|fiber| match fiber.as_slice() {
                [one] => get(*one).clone(),
                [a, b] => merge(get(*a), get(*b)),
                _ => unreachable!("fibers of an ordered surjection have size 1 or 2"),
            })
            .collect())
    }
}

impl fmt::Display for OrderedSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignment.iter().map(|a| (a + 1).to_string()).collect();
        write!(f, "[{}|{}]", parts[..self.r].join(","), parts[self.r..].join(","))
    }
}

/// Enumerates `Sh^<=(r, s)` without duplicates.
///
/// Each surjection is built by walking both chains from the bottom: the next target point
/// receives the next left element, the next right element, or both.
pub fn enumerate_ordered_surjections(r: usize, s: usize) -> Vec<OrderedSurjection> {
    fn rec(
        r: usize,
        s: usize,
        i: usize,
        j: usize,
        next: usize,
        assignment: &mut Vec<usize>,
        out: &mut Vec<OrderedSurjection>,
    ) {
        if i == r && j == s {
            out.push(OrderedSurjection { r, s, target_size: next, assignment: assignment.clone() });
            return;
        }
        if i < r {
            assignment[i] = next;
            rec(r, s, i + 1, j, next + 1, assignment, out);
        }
        if j < s {
            assignment[r + j] = next;
            rec(r, s, i, j + 1, next + 1, assignment, out);
        }
        if i < r && j < s {
            assignment[i] = next;
            assignment[r + j] = next;
            rec(r, s, i + 1, j + 1, next + 1, assignment, out);
        }
    }
    let mut out = Vec::new();
    rec(r, s, 0, 0, 0, &mut vec![0; r + s], &mut out);
    out
}

/// `c_i = n_m + n_l` when the fiber over `i` is `{m, l}`, `c_i = n_m` when it is `{m}`.
pub fn stuffle_contract(sigma: &OrderedSurjection, left: &Index, right: &Index) -> Result<Index> {
    let entries = sigma.contract_with(left.entries(), right.entries(), |a, b| a + b)?;
    Ok(Index::from_vec_unchecked(entries))
}

/// The stuffle (quasi-shuffle) product of two indices.
pub fn stuffle(left: &Index, right: &Index) -> IndexCombination {
    let mut out = IndexCombination::zero();
    if left.is_empty() || right.is_empty() {
        out.add_term(left.concat(right), BigRational::one());
        return out;
    }
    for sigma in enumerate_ordered_surjections(left.depth(), right.depth()) {
        let c = stuffle_contract(&sigma, left, right).expect("arity matches by construction");
        out.add_term(c, BigRational::one());
    }
    out
}

/// Bilinear extension of [`stuffle`].
pub fn stuffle_combinations(a: &IndexCombination, b: &IndexCombination) -> IndexCombination {
    a.bilinear(b, stuffle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// Brute force: every map {0..r+s} -> {0..N} for every N, filtered by the invariants.
    fn brute_force(r: usize, s: usize) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for n in 1..=(r + s) {
            let total = n.pow((r + s) as u32);
            for code in 0..total {
                let mut a = Vec::with_capacity(r + s);
                let mut c = code;
                for _ in 0..r + s {
                    a.push(c % n);
                    c /= n;
                }
                if OrderedSurjection::new(r, s, a.clone()).is_ok() {
                    out.insert(a);
                }
            }
        }
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_ordered_surjections(1, 1).len(), 3);
        assert_eq!(enumerate_ordered_surjections(2, 1).len(), 5);
        assert_eq!(enumerate_ordered_surjections(1, 2).len(), 5);
    }

    #[test]
    fn matches_brute_force_and_delannoy() {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        for r in 1..=4 {
            for s in 1..=4 {
                let listed = enumerate_ordered_surjections(r, s);
                let as_set: BTreeSet<Vec<usize>> = listed.iter().map(|x| x.assignment.clone()).collect();
                assert_eq!(as_set.len(), listed.len(), "duplicates for ({r},{s})");
                if r + s <= 6 {
                    assert_eq!(as_set, brute_force(r, s));
                }
                let formula: u128 = (0..=r.min(s))
                    .map(|k| fact(r + s - k) / (fact(r - k) * fact(s - k) * fact(k)))
                    .sum();
                assert_eq!(listed.len() as u128, formula);
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let identity = OrderedSurjection::new(1, 1, vec![0, 1]).unwrap();
        assert_eq!(stuffle_contract(&identity, &idx("(4)"), &idx("(7)")).unwrap(), idx("(4,7)"));
        let merged = OrderedSurjection::new(1, 1, vec![0, 0]).unwrap();
        assert_eq!(stuffle_contract(&merged, &idx("(2)"), &idx("(3)")).unwrap(), idx("(5)"));
        let reversed = OrderedSurjection::new(1, 1, vec![1, 0]).unwrap();
        assert_eq!(stuffle_contract(&reversed, &idx("(1)"), &idx("(2)")).unwrap(), idx("(2,1)"));
        assert!(matches!(
            stuffle_contract(&identity, &idx("(1,1)"), &idx("(2)")),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn stuffle_examples() {
        let p = stuffle(&idx("(1)"), &idx("(2)"));
        assert_eq!(p.coefficient(&idx("(1,2)")), int(1));
        assert_eq!(p.coefficient(&idx("(2,1)")), int(1));
        assert_eq!(p.coefficient(&idx("(3)")), int(1));
        assert_eq!(p.len(), 3);

        assert_eq!(stuffle(&idx("(1)"), &Index::empty()), IndexCombination::single(idx("(1)")));

        let sq = stuffle(&idx("(1)"), &idx("(1)"));
        assert_eq!(sq.coefficient(&idx("(1,1)")), int(2));
        assert_eq!(sq.coefficient(&idx("(2)")), int(1));
        assert_eq!(sq.len(), 2);
    }

    #[test]
    fn invalid_surjections_rejected() {
        assert!(OrderedSurjection::new(2, 1, vec![1, 0, 2]).is_err());
        assert!(OrderedSurjection::new(1, 1, vec![0, 2]).is_err());
        assert!(OrderedSurjection::new(1, 1, vec![0]).is_err());
    }
}
