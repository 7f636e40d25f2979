//! Simple undirected graphs stored as fixed-width adjacency bit rows.

mod cliques;
mod generators;
mod graph6;
mod structure;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Rational, Result};

pub use cliques::{clique_check, triangle_stats, TriangleStats};
pub(crate) use cliques::{find_k4, find_triangle};
pub use generators::{generate, turan_part_sizes, BlowUp, GeneratorKind};
pub use graph6::{parse_graph6, parse_graph6_lines, parse_graph6_with_cap, to_graph6, GRAPH6_HEADER};
pub use structure::{
    independent_set_search, is_maximal_k4free, join_candidates, join_decompose, maximalize_k4free, JoinSplit,
    DEFAULT_EXACT_INDEPENDENCE_THRESHOLD,
};

/// Largest vertex count accepted by [`Graph::new`].
pub const DEFAULT_VERTEX_CAP: usize = 4096;

/// Immutable simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    degrees: Vec<usize>,
    edge_count: usize,
    density: Rational,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate pairs collapse.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_cap(n, edges, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::TooManyVertices { n, cap });
        }
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_rows(vec![FixedBitSet::with_capacity(n); n])
    }

    /// Assembles the cached fields from symmetric, irreflexive rows.
    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let n = rows.len();
        let degrees: Vec<usize> = rows.iter().map(|r| r.count_ones(..)).collect();
        let edge_count = degrees.iter().sum::<usize>() / 2;
        let density = if n == 0 {
            Rational::from_integer(0.into())
        } else {
            Rational::new(edge_count.into(), (n * n).into())
        };
        Graph {
            n,
            rows,
            degrees,
            edge_count,
            density,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `c = e(G)/n²` as an exact rational (zero for the null graph).
    pub fn density(&self) -> &Rational {
        &self.density
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Adjacency row of `v`.
    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbor_ids(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> FixedBitSet {
        self.rows[u].intersection(&self.rows[v]).collect_bits(self.n)
    }

    /// `d(uv) = |N(u) ∩ N(v)|`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.rows[u].intersection_count(&self.rows[v])
    }

    pub fn complement(&self) -> Graph {
        let rows = (0..self.n)
            .map(|v| {
                let mut r = self.rows[v].clone();
                r.toggle_range(..);
                r.set(v, false);
                r
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Subgraph induced on `subset`, relabelled to `0..|subset|` in increasing
    /// id order, together with the map from new ids back to old ids.
    pub fn induced(&self, subset: &VertexSubset) -> (Graph, Vec<usize>) {
        let ids = subset.ids();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let m = ids.len();
        let rows = ids
            .iter()
            .map(|&v| {
                let mut r = FixedBitSet::with_capacity(m);
                for w in self.rows[v].intersection(&subset.members) {
                    r.insert(pos[w]);
                }
                r
            })
            .collect();
        (Graph::from_rows(rows), ids)
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &VertexSubset) -> usize {
        s.members
            .ones()
            .map(|v| self.rows[v].intersection_count(&s.members))
            .sum::<usize>()
            / 2
    }

    /// Number of edges with one end in each of the disjoint sets `s`, `t`.
    pub fn edges_between(&self, s: &VertexSubset, t: &VertexSubset) -> Result<usize> {
        self.check_universe(s)?;
        self.check_universe(t)?;
        if !s.members.is_disjoint(&t.members) {
            return Err(Error::OverlappingSubsets);
        }
        Ok(self.edges_between_unchecked(&s.members, &t.members))
    }

    pub(crate) fn edges_between_unchecked(&self, s: &FixedBitSet, t: &FixedBitSet) -> usize {
        s.ones().map(|v| self.rows[v].intersection_count(t)).sum()
    }

    pub(crate) fn check_universe(&self, s: &VertexSubset) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::SubsetUniverse {
                got: s.universe(),
                expected: self.n,
            });
        }
        Ok(())
    }

    pub fn is_independent(&self, s: &VertexSubset) -> bool {
        s.members.ones().all(|v| self.rows[v].is_disjoint(&s.members))
    }

    /// Vertex set of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.rows[v].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }
}

trait CollectBits {
    fn collect_bits(self, n: usize) -> FixedBitSet;
}

impl<I: Iterator<Item = usize>> CollectBits for I {
    fn collect_bits(self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        b.extend(self);
        b
    }
}

/// `(e(S), e(S,T))` for `S` and an optional disjoint `T`.
pub fn edge_counts(graph: &Graph, s: &VertexSubset, t: Option<&VertexSubset>) -> Result<(usize, Option<usize>)> {
    graph.check_universe(s)?;
    let within = graph.edges_within(s);
    let between = t.map(|t| graph.edges_between(s, t)).transpose()?;
    Ok((within, between))
}

/// A set of vertex ids drawn from `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    members: FixedBitSet,
    size: usize,
}

impl VertexSubset {
    pub fn empty(universe: usize) -> Self {
        VertexSubset {
            members: FixedBitSet::with_capacity(universe),
            size: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut members = FixedBitSet::with_capacity(universe);
        members.insert_range(..);
        VertexSubset {
            members,
            size: universe,
        }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in ids {
            if v >= universe {
                return Err(Error::VertexOutOfRange { vertex: v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_bits(members: FixedBitSet) -> Self {
        let size = members.count_ones(..);
        VertexSubset { members, size }
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.members.put(v);
        if fresh {
            self.size += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.members.contains(v);
        if present {
            self.members.set(v, false);
            self.size -= 1;
        }
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    /// Members in increasing order.
    pub fn ids(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn complement(&self) -> Self {
        let mut members = self.members.clone();
        members.toggle_range(..);
        Self::from_bits(members)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        Self::from_bits(members)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Self::from_bits(members)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut members = self.members.clone();
        members.difference_with(&other.members);
        Self::from_bits(members)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.members.is_disjoint(&other.members)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Lexicographic order on the sorted member lists.
    pub fn lex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.ones().cmp(other.members.ones())
    }
}

impl Serialize for VertexSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members.ones())
    }
}

#[derive(Deserialize)]
struct SubsetRepr {
    universe: usize,
    members: Vec<usize>,
}

impl<'de> Deserialize<'de> for VertexSubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SubsetRepr::deserialize(deserializer)?;
        VertexSubset::from_ids(repr.universe, repr.members).map_err(serde::de::Error::custom)
    }
}
