use serde::Serialize;

use super::tree::{Quadruple, StableTree};
use crate::error::{Error, Result};

/// How two cross-ratio coordinates are related as functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// The same function.
    Direct,
    /// `lambda_a = 1 - lambda_b`.
    Complement,
}

/// The four orderings naming the same cross ratio:
/// `lambda_abcd = lambda_badc = lambda_cdab = lambda_dcba`.
fn same_function(q: &Quadruple) -> [Quadruple; 4] {
    let [a, b, c, d] = q.0;
    [Quadruple([a, b, c, d]), Quadruple([b, a, d, c]), Quadruple([c, d, a, b]), Quadruple([d, c, b, a])]
}

fn canonical(q: &Quadruple) -> Quadruple {
    *same_function(q).iter().min().expect("four entries")
}

/// Whether `lambda_a` equals `lambda_b` or `1 - lambda_b`, using
/// `lambda_(v1 v2 v3 v4) = 1 - lambda_(v2 v3 v4 v1)`.
pub fn relate(a: &Quadruple, b: &Quadruple) -> Option<Form> {
    let [b1, b2, b3, b4] = b.0;
    if canonical(a) == canonical(b) {
        Some(Form::Direct)
    } else if canonical(a) == canonical(&Quadruple([b2, b3, b4, b1])) {
        Some(Form::Complement)
    } else {
        None
    }
}

/// Coordinates on the chart of `tree` with labels taken in increasing order.
pub fn chart_coordinates(tree: &StableTree) -> Result<Vec<Quadruple>> {
    chart_coordinates_ranked(tree, &tree.label_list())
}

/// Coordinates on the chart of `tree`, built by removing one label at a time.
///
/// At each step the removed label `i` is the first eligible one in `ranking` (its vertex has
/// valency at least 4 or carries another tail). The appended coordinate is
/// `lambda_(d1 d2 d3 i)` where the triple has the prescribed median (and `d3` is the other
/// tail at the vertex of `i` when that vertex has valency 3); among valid triples `d1` is
/// the earliest in `ranking`, then `d2` the latest, then `d3` the earliest.
pub fn chart_coordinates_ranked(tree: &StableTree, ranking: &[u32]) -> Result<Vec<Quadruple>> {
    let mut sorted = ranking.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted != tree.label_list() || sorted.len() != ranking.len() {
        return Err(Error::InvalidArgument("ranking must list every label of the tree once".into()));
    }
    let rank = |l: u32| ranking.iter().position(|&x| x == l).expect("label present");
    chart_rec(tree, ranking, &rank)
}

fn chart_rec<F: Fn(u32) -> usize>(tree: &StableTree, ranking: &[u32], rank: &F) -> Result<Vec<Quadruple>> {
    let labels = tree.label_list();
    if labels.len() == 3 {
        return Ok(Vec::new());
    }
    let topo = tree.topology()?;
    let eligible = |l: u32| {
        let v = topo.vertex_of[&l];
        topo.valency(v) >= 4 || topo.tails_at(v).len() >= 2
    };
    let i = *ranking
        .iter()
        .find(|&&l| labels.contains(&l) && eligible(l))
        .ok_or_else(|| Error::UnstableTree(format!("no eligible label in {tree}")))?;
    let vi = topo.vertex_of[&i];
    let (target, forced) = if topo.valency(vi) >= 4 {
        (vi, None)
    } else {
        let other = *topo.tails_at(vi).iter().find(|&&l| l != i).expect("two tails at the vertex");
        let neighbor = *topo.adjacent[vi].first().ok_or_else(|| Error::UnstableTree(format!("{tree}")))?;
        (neighbor, Some(other))
    };
    let rest: Vec<u32> = labels.iter().copied().filter(|&l| l != i).collect();
    let mut valid = Vec::new();
    for &d1 in &rest {
        for &d2 in &rest {
            for &d3 in &rest {
                if d1 == d2 || d2 == d3 || d1 == d3 || forced.is_some_and(|f| f != d3) {
                    continue;
                }
                if topo.median(d1, d2, d3) == Some(target) {
                    valid.push([d1, d2, d3]);
                }
            }
        }
    }
    let best = valid
        .into_iter()
        .min_by_key(|[d1, d2, d3]| (rank(*d1), std::cmp::Reverse(rank(*d2)), rank(*d3)))
        .ok_or_else(|| Error::UnstableTree(format!("no triple with the required median in {tree}")))?;
    let smaller: Vec<u32> = ranking.iter().copied().filter(|&l| l != i).collect();
    let mut out = chart_rec(&tree.remove_label(i)?, &smaller, rank)?;
    out.push(Quadruple([best[0], best[1], best[2], i]));
    Ok(out)
}

/// `(2, 3, ..., N + 3, 1)`, the ranking that reproduces the coordinates
/// `lambda_(1, N+3, i+2, i+1)` on the chain (in complement form).
pub fn chain_ranking(n: u32) -> Vec<u32> {
    (2..=n + 3).chain([1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::tree::{full_set, Partition2};

    #[test]
    fn chain_chart_matches_reference_coordinates() {
        for n in 1..=6u32 {
            let t = StableTree::binary_chain(n);
            let chart = chart_coordinates_ranked(&t, &chain_ranking(n)).unwrap();
            assert_eq!(chart.len(), n as usize);
            let reference: Vec<Quadruple> = (1..=n).map(|i| Quadruple([1, n + 3, i + 2, i + 1])).collect();
            for r in &reference {
                let hits: Vec<Form> = chart.iter().filter_map(|c| relate(c, r)).collect();
                assert_eq!(hits, vec![Form::Complement], "n = {n}, {r}: {chart:?}");
            }
        }
    }

    #[test]
    fn rotated_chain_chart() {
        for n in 1..=5u32 {
            let m = n + 3;
            let rot = |l: u32| l % m + 1;
            let t = StableTree::binary_chain(n).relabel(rot).unwrap();
            let ranking: Vec<u32> = chain_ranking(n).into_iter().map(rot).collect();
            let chart = chart_coordinates_ranked(&t, &ranking).unwrap();
            for i in 1..=n {
                let r = Quadruple([2, 1, i + 3, i + 2]);
                assert!(chart.iter().any(|c| relate(c, &r).is_some()), "n = {n}, {r}: {chart:?}");
            }
        }
    }

    #[test]
    fn smallest_chart_is_the_cross_ratio_coordinate() {
        let t = StableTree::one_edge(Partition2::new(0b0011, 0b1100).unwrap());
        let chart = chart_coordinates_ranked(&t, &chain_ranking(1)).unwrap();
        assert_eq!(relate(&chart[0], &Quadruple([1, 4, 3, 2])), Some(Form::Complement));
        let star = StableTree::one_vertex(full_set(4)).unwrap();
        assert_eq!(chart_coordinates(&star).unwrap().len(), 1);
    }

    #[test]
    fn chart_sizes_and_determinism() {
        let t: StableTree = "1,2|3,4,5,6,7;1,2,3|4,5,6,7;1,2,3,4,5|6,7".parse().unwrap();
        let a = chart_coordinates(&t).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a, chart_coordinates(&t).unwrap());
        for c in &a {
            assert!(Quadruple::new(c.0).is_ok());
        }
    }

    #[test]
    fn relate_uses_both_identities() {
        let q = Quadruple([1, 2, 3, 4]);
        assert_eq!(relate(&q, &Quadruple([2, 1, 4, 3])), Some(Form::Direct));
        assert_eq!(relate(&q, &Quadruple([4, 1, 2, 3])), Some(Form::Complement));
        assert_eq!(relate(&q, &Quadruple([2, 1, 3, 4])), None);
    }
}
