use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of labels from `1..=64` as a bitmask.
pub type LabelSet = u64;

pub fn label_bit(label: u32) -> LabelSet {
    1u64 << (label - 1)
}

pub fn labels_of(set: LabelSet) -> Vec<u32> {
    (0..64).filter(|b| set >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn full_set(n: u32) -> LabelSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn parse_block(s: &str) -> Result<LabelSet> {
    let mut set = 0;
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let l: u32 = part.parse().map_err(|_| Error::Parse(format!("bad label `{part}`")))?;
        if l == 0 || l > 64 {
            return Err(Error::Parse(format!("label {l} out of range 1..=64")));
        }
        set |= label_bit(l);
    }
    Ok(set)
}

fn format_block(set: LabelSet) -> String {
    labels_of(set).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// An unordered partition of the label set into two blocks of size at least 2; the first
/// block is the one containing the smallest label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition2 {
    first: LabelSet,
    second: LabelSet,
}

impl Partition2 {
    pub fn new(a: LabelSet, b: LabelSet) -> Result<Self> {
        if a & b != 0 {
            return Err(Error::InvalidArgument("blocks overlap".into()));
        }
        if a.count_ones() < 2 || b.count_ones() < 2 {
            return Err(Error::InvalidArgument("each block needs at least two labels".into()));
        }
        let (first, second) = if a.trailing_zeros() < b.trailing_zeros() { (a, b) } else { (b, a) };
        Ok(Partition2 { first, second })
    }

    pub fn blocks(&self) -> (LabelSet, LabelSet) {
        (self.first, self.second)
    }

    pub fn labels(&self) -> LabelSet {
        self.first | self.second
    }

    /// All partitions of `{1, ..., n}`.
    pub fn all(n: u32) -> Vec<Partition2> {
        let full = full_set(n);
        let mut out = Vec::new();
        // blocks containing label 1, excluding the full set
        let rest = full & !1;
        let mut sub = rest;
        loop {
            let a = sub | 1;
            let b = full & !a;
            if a.count_ones() >= 2 && b.count_ones() >= 2 {
                out.push(Partition2 { first: a, second: b });
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        out.sort();
        out
    }
}

impl fmt::Display for Partition2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", format_block(self.first), format_block(self.second))
    }
}

impl FromStr for Partition2 {
    type Err = Error;

    /// `"1,2|3,4,5"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('|').ok_or_else(|| Error::Parse(format!("expected `A|B`, got `{s}`")))?;
        Partition2::new(parse_block(a)?, parse_block(b)?)
    }
}

/// Whether the boundary divisors of two partitions meet: some block of one is contained in
/// some block of the other.
pub fn divisors_intersect(p: &Partition2, q: &Partition2) -> Result<bool> {
    if p.labels() != q.labels() {
        return Err(Error::LabelMismatch);
    }
    let (a1, a2) = p.blocks();
    let (b1, b2) = q.blocks();
    let sub = |x: LabelSet, y: LabelSet| x & !y == 0;
    Ok([a1, a2].iter().any(|&a| sub(a, b1) || sub(a, b2)) || [b1, b2].iter().any(|&b| sub(b, a1) || sub(b, a2)))
}

/// Number of boundary divisors for `n` labels, `2^(n-1) - n - 1`.
pub fn boundary_divisor_count(n: u32) -> u64 {
    (1u64 << (n - 1)) - n as u64 - 1
}

/// An ordered quadruple of distinct labels, naming the cross ratio `lambda_(v1 v2 v3 v4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Quadruple(pub [u32; 4]);

impl Quadruple {
    pub fn new(v: [u32; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..i {
                if v[i] == v[j] {
                    return Err(Error::InvalidArgument(format!("repeated label {} in quadruple", v[i])));
                }
            }
        }
        Ok(Quadruple(v))
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// A stable labeled tree, stored canonically by the label splits of its internal edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableTree {
    labels: LabelSet,
    splits: BTreeSet<Partition2>,
}

/// Explicit vertices of a tree.
#[derive(Debug, Clone)]
pub struct Topology {
    /// Vertex carrying each label's tail.
    pub vertex_of: BTreeMap<u32, usize>,
    /// Internal neighbors of each vertex.
    pub adjacent: Vec<Vec<usize>>,
}

impl Topology {
    pub fn vertex_count(&self) -> usize {
        self.adjacent.len()
    }

    pub fn tails_at(&self, v: usize) -> Vec<u32> {
        self.vertex_of.iter().filter(|(_, &w)| w == v).map(|(&l, _)| l).collect()
    }

    pub fn valency(&self, v: usize) -> usize {
        self.tails_at(v).len() + self.adjacent[v].len()
    }

    /// Component of each vertex in the tree with `removed` deleted (`usize::MAX` for `removed`).
    pub fn components_without(&self, removed: usize) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if start == removed || comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for &w in &self.adjacent[v] {
                    if w != removed && comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Class of each label under the relation at `t`: tails at `t` are alone, the others are
    /// grouped by the component of `T - t` they hang from.
    pub fn classes_at(&self, t: usize) -> BTreeMap<u32, usize> {
        let comp = self.components_without(t);
        let offset = self.vertex_count();
        self.vertex_of
            .iter()
            .map(|(&l, &v)| (l, if v == t { offset + l as usize } else { comp[v] }))
            .collect()
    }

    /// The vertex whose removal separates the three labels, if any.
    pub fn median(&self, a: u32, b: u32, c: u32) -> Option<usize> {
        (0..self.vertex_count()).find(|&t| {
            let cls = self.classes_at(t);
            let (x, y, z) = (cls[&a], cls[&b], cls[&c]);
            x != y && y != z && x != z
        })
    }
}

impl StableTree {
    /// The tree with a single vertex carrying every label.
    pub fn one_vertex(labels: LabelSet) -> Result<Self> {
        if labels.count_ones() < 3 {
            return Err(Error::UnstableTree("a vertex needs valency at least 3".into()));
        }
        Ok(StableTree { labels, splits: BTreeSet::new() })
    }

    /// The tree with one internal edge separating the two blocks.
    pub fn one_edge(p: Partition2) -> Self {
        StableTree { labels: p.labels(), splits: [p].into_iter().collect() }
    }

    /// The tree whose internal edges induce the given splits; the splits must be distinct and
    /// pairwise compatible.
    pub fn from_splits(labels: LabelSet, splits: &[Partition2]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in splits {
            if p.labels() != labels {
                return Err(Error::LabelMismatch);
            }
            if !set.insert(*p) {
                return Err(Error::UnstableTree(format!("split {p} appears twice")));
            }
        }
        let tree = StableTree { labels, splits: set };
        tree.topology()?;
        Ok(tree)
    }

    /// The chain with vertices `v_0, ..., v_N`, tails `{1, 2}` at `v_0`, tail `i + 2` at `v_i`
    /// for `0 < i < N`, and tails `{N + 2, N + 3}` at `v_N`.
    pub fn binary_chain(n: u32) -> Self {
        let labels = full_set(n + 3);
        let splits = (1..=n)
            .map(|i| Partition2::new(full_set(i + 1), labels & !full_set(i + 1)).expect("blocks of size >= 2"))
            .collect();
        StableTree { labels, splits }
    }

    /// Relabels by `label -> map(label)`.
    pub fn relabel<F: Fn(u32) -> u32>(&self, map: F) -> Result<Self> {
        let image = |set: LabelSet| labels_of(set).into_iter().fold(0, |acc, l| acc | label_bit(map(l)));
        let labels = image(self.labels);
        if labels.count_ones() != self.labels.count_ones() {
            return Err(Error::InvalidArgument("relabeling is not injective".into()));
        }
        let splits: Vec<Partition2> = self
            .splits
            .iter()
            .map(|p| {
                let (a, b) = p.blocks();
                Partition2::new(image(a), image(b))
            })
            .collect::<Result<_>>()?;
        StableTree::from_splits(labels, &splits)
    }

    pub fn labels(&self) -> LabelSet {
        self.labels
    }

    pub fn label_list(&self) -> Vec<u32> {
        labels_of(self.labels)
    }

    pub fn splits(&self) -> &BTreeSet<Partition2> {
        &self.splits
    }

    /// Number of internal edges, the codimension of the stratum.
    pub fn codim(&self) -> usize {
        self.splits.len()
    }

    /// Builds explicit vertices by refining the one-vertex tree one split at a time.
    pub fn topology(&self) -> Result<Topology> {
        let mut vertex_of: BTreeMap<u32, usize> = self.label_list().into_iter().map(|l| (l, 0)).collect();
        let mut adjacent: Vec<Vec<usize>> = vec![Vec::new()];
        for p in &self.splits {
            let (side, _) = p.blocks();
            let topo = Topology { vertex_of: vertex_of.clone(), adjacent: adjacent.clone() };
            let mut found = None;
            for v in 0..topo.vertex_count() {
                let branches = branch_sets(&topo, v);
                let inside: Vec<&(Option<usize>, LabelSet)> = branches.iter().filter(|(_, s)| s & !side == 0).collect();
                let outside = branches.iter().filter(|(_, s)| s & side == 0).count();
                if inside.len() + outside == branches.len() && inside.len() >= 2 && outside >= 2 {
                    found = Some((v, inside.into_iter().cloned().collect::<Vec<_>>()));
                    break;
                }
            }
            let Some((v, moved)) = found else {
                return Err(Error::UnstableTree(format!("split {p} is incompatible with the others")));
            };
            let u = adjacent.len();
            adjacent.push(vec![v]);
            adjacent[v].push(u);
            for (neighbor, set) in moved {
                match neighbor {
                    Some(w) => {
                        adjacent[v].retain(|&x| x != w);
                        adjacent[w].retain(|&x| x != v);
                        adjacent[w].push(u);
                        adjacent[u].push(w);
                    }
                    None => {
                        let l = labels_of(set)[0];
                        vertex_of.insert(l, u);
                    }
                }
            }
        }
        Ok(Topology { vertex_of, adjacent })
    }

    /// The relation at vertex `t` between labels `i` and `j`.
    pub fn sim_t(&self, t: usize, i: u32, j: u32) -> Result<bool> {
        let topo = self.topology()?;
        if t >= topo.vertex_count() {
            return Err(Error::InvalidArgument(format!("no vertex {t}")));
        }
        let cls = topo.classes_at(t);
        let (ci, cj) = (
            cls.get(&i).ok_or_else(|| Error::InvalidArgument(format!("no label {i}")))?,
            cls.get(&j).ok_or_else(|| Error::InvalidArgument(format!("no label {j}")))?,
        );
        Ok(i == j || ci == cj)
    }

    /// Quadruples `(v1, v2, v3, v4)` such that at some vertex `t`, `v1 ~ v4` while `v2` and
    /// `v3` are not related to `v4`.
    pub fn v_of(&self) -> BTreeSet<Quadruple> {
        let topo = self.topology().expect("stored trees are valid");
        let labels = self.label_list();
        let classes: Vec<BTreeMap<u32, usize>> = (0..topo.vertex_count()).map(|t| topo.classes_at(t)).collect();
        let mut out = BTreeSet::new();
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        let Ok(q) = Quadruple::new([a, b, c, d]) else { continue };
                        if classes.iter().any(|cls| cls[&a] == cls[&d] && cls[&b] != cls[&d] && cls[&c] != cls[&d]) {
                            out.insert(q);
                        }
                    }
                }
            }
        }
        out
    }

    /// Whether contracting some internal edges of `self` gives `coarse`.
    pub fn contracts_to(&self, coarse: &StableTree) -> Result<bool> {
        if self.labels != coarse.labels {
            return Err(Error::LabelMismatch);
        }
        Ok(coarse.splits.is_subset(&self.splits))
    }

    /// Removes the tail of `label`, contracting the edge next to it if its vertex becomes
    /// unstable.
    pub fn remove_label(&self, label: u32) -> Result<StableTree> {
        let bit = label_bit(label);
        if self.labels & bit == 0 {
            return Err(Error::InvalidArgument(format!("no label {label}")));
        }
        let labels = self.labels & !bit;
        if labels.count_ones() < 3 {
            return Err(Error::UnstableTree("fewer than three labels would remain".into()));
        }
        let splits: BTreeSet<Partition2> = self
            .splits
            .iter()
            .filter_map(|p| {
                let (a, b) = p.blocks();
                Partition2::new(a & !bit, b & !bit).ok()
            })
            .collect();
        Ok(StableTree { labels, splits })
    }

    /// Serializable form: the label partition of every internal edge.
    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            labels: self.label_list(),
            edges: self.splits.iter().map(|p| {
                let (a, b) = p.blocks();
                [labels_of(a), labels_of(b)]
            }).collect(),
        }
    }

    /// Inverse of [`StableTree::to_json`].
    pub fn from_json(json: &TreeJson) -> Result<Self> {
        let set = |v: &[u32]| -> Result<LabelSet> {
            v.iter().try_fold(0, |acc, &l| {
                if l == 0 || l > 63 {
                    return Err(Error::Parse(format!("label {l} out of range 1..=63")));
                }
                Ok(acc | label_bit(l))
            })
        };
        let labels = set(&json.labels)?;
        if json.edges.is_empty() {
            return StableTree::one_vertex(labels);
        }
        let splits: Vec<Partition2> =
            json.edges.iter().map(|[a, b]| Partition2::new(set(a)?, set(b)?)).collect::<Result<_>>()?;
        StableTree::from_splits(labels, &splits)
    }
}

/// The branches at `v`: `(Some(neighbor), labels beyond it)` for internal edges, `(None, {l})`
/// for each tail.
fn branch_sets(topo: &Topology, v: usize) -> Vec<(Option<usize>, LabelSet)> {
    let comp = topo.components_without(v);
    let mut out: Vec<(Option<usize>, LabelSet)> = topo.adjacent[v]
        .iter()
        .map(|&w| {
            let set = topo
                .vertex_of
                .iter()
                .filter(|(_, &x)| x != v && comp[x] == comp[w])
                .fold(0, |acc, (&l, _)| acc | label_bit(l));
            (Some(w), set)
        })
        .collect();
    for l in topo.tails_at(v) {
        out.push((None, label_bit(l)));
    }
    out
}

/// Label sets and the two blocks of each internal edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub labels: Vec<u32>,
    pub edges: Vec<[Vec<u32>; 2]>,
}

impl fmt::Display for StableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.splits.is_empty() {
            return write!(f, "star({})", format_block(self.labels));
        }
        let parts: Vec<String> = self.splits.iter().map(Partition2::to_string).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for StableTree {
    type Err = Error;

    /// Either `star(1,2,3,4)` or internal edges as partitions separated by `;`, e.g.
    /// `1,2|3,4,5;1,2,3|4,5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("star(").and_then(|r| r.strip_suffix(')')) {
            return StableTree::one_vertex(parse_block(inner)?);
        }
        let splits: Vec<Partition2> = s.split(';').map(str::parse).collect::<Result<_>>()?;
        let labels = splits.first().ok_or_else(|| Error::Parse("empty tree".into()))?.labels();
        StableTree::from_splits(labels, &splits)
    }
}
