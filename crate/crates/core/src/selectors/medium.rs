//! Medium range: three independent common neighbourhoods of a heavy triangle
//! and the four-part selection schemes built on them.

use std::fmt;

use rayon::prelude::*;

use super::derandomize::{select, Pool};
use super::{best_outcome, rat, Route, SelectionOutcome};
use crate::graph::{find_k4, Graph, VertexSubset};
use crate::{ratio, Error, Rational, Result};

/// Density `c = e/n²` up to which the route is guaranteed (regular inputs).
pub const MEDIUM_MAX_DENSITY: (i64, i64) = (297, 1000);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeaviestTriangle {
    /// `u < v < w`.
    pub triangle: [usize; 3],
    /// `d(uv) + d(vw) + d(uw)`.
    pub weight: usize,
    /// `N(uv)`, `N(vw)`, `N(uw)`.
    pub parts: [VertexSubset; 3],
    /// Number of triangles in the graph.
    pub triangle_count: usize,
}

/// Triangle maximizing the sum of its three codegrees (lexicographically
/// smallest on ties) and its pairwise common neighbourhoods.
pub fn heaviest_triangle(graph: &Graph) -> Result<HeaviestTriangle> {
    let mut best: Option<([usize; 3], usize)> = None;
    let mut count = 0;
    for (u, v) in graph.edges() {
        let uv = graph.codegree(u, v);
        for w in graph.neighbors(u).intersection(graph.neighbors(v)).filter(|&w| w > v) {
            count += 1;
            let weight = uv + graph.codegree(v, w) + graph.codegree(u, w);
            if best.is_none_or(|(_, b)| weight > b) {
                best = Some(([u, v, w], weight));
            }
        }
    }
    let ([u, v, w], weight) = best.ok_or(Error::TriangleFree)?;
    let part = |a: usize, b: usize| VertexSubset::from_bits(graph.common_neighbors(a, b));
    Ok(HeaviestTriangle {
        triangle: [u, v, w],
        weight,
        parts: [part(u, v), part(v, w), part(u, w)],
        triangle_count: count,
    })
}

/// `V1, V2, V3` independent with `|V1| ≥ |V2| ≥ |V3|`, `V4` the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourPartition {
    pub parts: [VertexSubset; 4],
}

impl FourPartition {
    /// Sorts the three sets by decreasing size (stable) and adds the rest.
    pub fn new(graph: &Graph, independent: [VertexSubset; 3]) -> Result<Self> {
        for (i, s) in independent.iter().enumerate() {
            graph.check_universe(s)?;
            if !graph.is_independent(s) {
                return Err(Error::Precondition(format!("part {} is not independent", i + 1)));
            }
            for t in &independent[i + 1..] {
                if !s.is_disjoint(t) {
                    return Err(Error::OverlappingSubsets);
                }
            }
        }
        let mut three = independent.to_vec();
        three.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let rest = three[0].union(&three[1]).union(&three[2]).complement();
        let [a, b, c]: [VertexSubset; 3] = three.try_into().expect("three parts");
        Ok(FourPartition { parts: [a, b, c, rest] })
    }

    pub fn from_triangle(graph: &Graph, t: &HeaviestTriangle) -> Result<Self> {
        Self::new(graph, t.parts.clone())
    }

    pub fn sizes(&self) -> [usize; 4] {
        std::array::from_fn(|i| self.parts[i].len())
    }

    /// `x_i = |V_i|/n`.
    pub fn fractions(&self) -> [Rational; 4] {
        let n = self.parts[0].universe().max(1);
        std::array::from_fn(|i| Rational::new(self.parts[i].len().into(), n.into()))
    }

    /// `e(V_i, V_j)` off the diagonal, `e(V_i)` on it.
    pub fn edge_matrix(&self, graph: &Graph) -> [[usize; 4]; 4] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    graph.edges_within(&self.parts[i])
                } else {
                    graph.edges_between_unchecked(self.parts[i].bits(), self.parts[j].bits())
                }
            })
        })
    }
}

/// `g(c) = 1/(3(1 − 2c))`.
pub(crate) fn g_of(c: &Rational) -> Rational {
    ratio(1, 1) / (ratio(3, 1) * (ratio(1, 1) - ratio(2, 1) * c))
}

/// Share of a half taken from one part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quota {
    Zero,
    /// The whole part, `x_i`.
    Whole,
    /// `1/2 − Σ x_j` over the listed parts (0-based).
    HalfMinus(&'static [usize]),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeRow {
    pub table: u8,
    pub row: u8,
    pub quotas: [Quota; 4],
}

impl SchemeRow {
    /// Vertex counts per part for a half of size `h`, `None` if infeasible.
    pub fn counts(&self, sizes: &[usize; 4], h: usize) -> Option<[usize; 4]> {
        let mut out = [0; 4];
        for (i, q) in self.quotas.iter().enumerate() {
            out[i] = match q {
                Quota::Zero => 0,
                Quota::Whole => sizes[i],
                Quota::HalfMinus(parts) => h.checked_sub(parts.iter().map(|&j| sizes[j]).sum())?,
            };
            if out[i] > sizes[i] {
                return None;
            }
        }
        Some(out)
    }
}

impl fmt::Display for SchemeRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.quotas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match q {
                Quota::Zero => f.write_str("0")?,
                Quota::Whole => write!(f, "x{}", i + 1)?,
                Quota::HalfMinus(parts) => {
                    f.write_str("1/2")?;
                    for j in parts.iter() {
                        write!(f, "-x{}", j + 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The four tables of selection schemes, in order.
pub fn scheme_tables() -> Vec<SchemeRow> {
    use Quota::{HalfMinus as H, Whole as W, Zero as Z};
    let tables: [&[[Quota; 4]]; 4] = [
        &[
            [W, H(&[0]), Z, Z],
            [W, Z, H(&[0]), Z],
            [Z, W, H(&[1]), Z],
            [H(&[1]), W, Z, Z],
            [H(&[2]), Z, W, Z],
            [Z, H(&[2]), W, Z],
        ],
        &[
            [W, W, H(&[0, 1]), Z],
            [W, H(&[0, 2]), W, Z],
            [H(&[1, 2]), W, W, Z],
            [W, Z, Z, H(&[0])],
            [Z, W, Z, H(&[1])],
            [Z, Z, W, H(&[2])],
        ],
        &[
            [W, H(&[0]), Z, Z],
            [W, Z, H(&[0]), Z],
            [H(&[1, 2]), W, W, Z],
            [W, Z, Z, H(&[0])],
            [H(&[1, 3]), W, Z, W],
            [H(&[2, 3]), Z, W, W],
        ],
        &[
            [W, H(&[0]), Z, Z],
            [W, Z, H(&[0]), Z],
            [W, H(&[0, 2]), W, Z],
            [H(&[1, 2]), W, W, Z],
            [W, Z, Z, H(&[0])],
            [Z, W, Z, H(&[1])],
            [H(&[2, 3]), Z, W, W],
            [Z, H(&[2, 3]), W, W],
        ],
    ];
    tables
        .iter()
        .enumerate()
        .flat_map(|(t, rows)| {
            rows.iter().enumerate().map(move |(r, quotas)| SchemeRow {
                table: t as u8 + 1,
                row: r as u8 + 1,
                quotas: *quotas,
            })
        })
        .collect()
}

/// Applies one scheme row: whole parts are kept, partial quotas are drawn by
/// joint conditional expectation. `None` when the row is infeasible.
pub fn scheme_select(graph: &Graph, partition: &FourPartition, row: &SchemeRow) -> Result<Option<SelectionOutcome>> {
    let n = graph.n();
    let Some(counts) = row.counts(&partition.sizes(), n / 2) else {
        return Ok(None);
    };
    let mut fixed = VertexSubset::empty(n);
    let mut pools = Vec::new();
    for (part, &k) in partition.parts.iter().zip(&counts) {
        if k == part.len() {
            fixed = fixed.union(part);
        } else if k > 0 {
            pools.push(Pool::new(part.clone(), k));
        }
    }
    let route = Route::Scheme {
        table: row.table,
        row: row.row,
    };
    select(graph, &fixed, &pools, route).map(Some)
}

/// Best feasible scheme row over the partition from the heaviest triangle,
/// together with a half inside `V1` when `|V1| ≥ n/2`.
///
/// `guarantee_flag` is set when the graph is regular with
/// `1/4 ≤ c ≤ 0.297` and `|V1| + |V2| + |V3| ≥ g(c)n`.
pub fn medium_route(graph: &Graph) -> Result<SelectionOutcome> {
    if let Some(q) = find_k4(graph) {
        return Err(Error::ContainsK4(q));
    }
    let heavy = heaviest_triangle(graph)?;
    let partition = FourPartition::from_triangle(graph, &heavy)?;
    let n = graph.n();
    let h = n / 2;
    let mut outcomes: Vec<SelectionOutcome> = scheme_tables()
        .par_iter()
        .map(|row| scheme_select(graph, &partition, row))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if partition.parts[0].len() >= h {
        let half = VertexSubset::from_ids(n, partition.parts[0].iter().take(h))?;
        outcomes.push(SelectionOutcome::new(graph, half, ratio(0, 1), Route::IndependentPart));
    }
    let c = graph.density();
    let covered = n - partition.parts[3].len();
    let guaranteed = graph.is_regular()
        && *c >= ratio(1, 4)
        && *c <= ratio(MEDIUM_MAX_DENSITY.0, MEDIUM_MAX_DENSITY.1)
        && rat(covered) >= g_of(c) * rat(n);
    best_outcome(outcomes)
        .map(|o| o.with_guarantee(guaranteed))
        .ok_or_else(|| Error::NoBranch("no scheme row is feasible".into()))
}
