//! Route dispatch, blow-up rounding and balanced bipartition.

use std::fmt;

use serde::Serialize;

use super::dense::dense_route;
use super::medium::medium_route;
use super::sparse::{max_cut_search, sparse_half_from_cut, DEFAULT_EXACT_CUT_THRESHOLD};
use super::{best_outcome, rat, Route, SelectionOutcome};
use crate::graph::{find_k4, find_triangle, Graph, VertexSubset};
use crate::oracle::{min_edges_k_subset_with_cap, MAX_ORACLE_N};
use crate::{Error, Rational, Result};

/// Largest `n` for which the exact oracle joins the candidate pool.
pub const DEFAULT_ORACLE_THRESHOLD: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteFamily {
    Cut,
    Medium,
    Dense,
    Oracle,
}

impl RouteFamily {
    pub const ALL: [RouteFamily; 4] = [
        RouteFamily::Cut,
        RouteFamily::Medium,
        RouteFamily::Dense,
        RouteFamily::Oracle,
    ];
}

impl fmt::Display for RouteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RouteFamily::Cut => "cut",
            RouteFamily::Medium => "medium",
            RouteFamily::Dense => "dense",
            RouteFamily::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub oracle_threshold: usize,
    pub exact_cut_threshold: usize,
    pub routes: Vec<RouteFamily>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            oracle_threshold: DEFAULT_ORACLE_THRESHOLD,
            exact_cut_threshold: DEFAULT_EXACT_CUT_THRESHOLD,
            routes: RouteFamily::ALL.to_vec(),
        }
    }
}

/// `e(S)` against `n²/18`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfVerdict {
    Strict,
    Equality,
    /// Above `n²/18`: the instance would refute the conjectured bound.
    Exceeds,
}

impl HalfVerdict {
    pub fn classify(achieved: usize, n: usize) -> Self {
        match (18 * achieved).cmp(&(n * n)) {
            std::cmp::Ordering::Less => HalfVerdict::Strict,
            std::cmp::Ordering::Equal => HalfVerdict::Equality,
            std::cmp::Ordering::Greater => HalfVerdict::Exceeds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SparseHalfReport {
    pub n: usize,
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub density: Rational,
    pub best: SelectionOutcome,
    pub verdict: HalfVerdict,
    /// Best outcome of every route that ran.
    pub candidates: Vec<SelectionOutcome>,
    /// Routes that did not apply, with the reason.
    pub skipped: Vec<(RouteFamily, String)>,
    pub oracle_minimum: Option<usize>,
}

/// [`find_sparse_half_with`] under default options.
pub fn find_sparse_half(graph: &Graph) -> Result<SparseHalfReport> {
    find_sparse_half_with(graph, &SearchOptions::default())
}

/// Runs every enabled route that applies, plus the exact oracle for small
/// `n`, and returns the best half of size `⌊n/2⌋`.
pub fn find_sparse_half_with(graph: &Graph, options: &SearchOptions) -> Result<SparseHalfReport> {
    if let Some(q) = find_k4(graph) {
        return Err(Error::ContainsK4(q));
    }
    let n = graph.n();
    let mut candidates = Vec::new();
    let mut skipped = Vec::new();
    let mut oracle_minimum = None;
    for &family in &options.routes {
        let result = match family {
            RouteFamily::Cut => {
                let mc = max_cut_search(graph, options.exact_cut_threshold);
                sparse_half_from_cut(graph, &mc.side)
            }
            RouteFamily::Medium if find_triangle(graph).is_none() => Err(Error::TriangleFree),
            RouteFamily::Medium => medium_route(graph),
            RouteFamily::Dense => dense_route(graph),
            RouteFamily::Oracle if n > options.oracle_threshold => Err(Error::OracleCap {
                n,
                cap: options.oracle_threshold,
            }),
            RouteFamily::Oracle => {
                min_edges_k_subset_with_cap(graph, n / 2, options.oracle_threshold.min(MAX_ORACLE_N)).map(|r| {
                    oracle_minimum = Some(r.minimum);
                    SelectionOutcome::new(graph, r.witness, rat(r.minimum), Route::Oracle)
                })
            }
        };
        match result {
            Ok(o) => candidates.push(o),
            Err(e @ Error::CounterexampleCandidate { .. }) => return Err(e),
            Err(e) => skipped.push((family, e.to_string())),
        }
    }
    let best = best_outcome(candidates.iter().cloned())
        .ok_or_else(|| Error::NoBranch("every enabled route was inapplicable".into()))?;
    Ok(SparseHalfReport {
        n,
        density: graph.density().clone(),
        verdict: HalfVerdict::classify(best.achieved, n),
        best,
        candidates,
        skipped,
        oracle_minimum,
    })
}

fn validate_blocks(graph: &Graph, blocks: &[VertexSubset]) -> Result<Vec<usize>> {
    let n = graph.n();
    let mut block_of = vec![usize::MAX; n];
    for (i, b) in blocks.iter().enumerate() {
        graph.check_universe(b)?;
        if b.is_empty() {
            return Err(Error::InvalidBlowUp(format!("block {i} is empty")));
        }
        for v in b.iter() {
            if block_of[v] != usize::MAX {
                return Err(Error::InvalidBlowUp(format!("vertex {v} lies in two blocks")));
            }
            block_of[v] = i;
        }
        if !graph.is_independent(b) {
            return Err(Error::InvalidBlowUp(format!("block {i} is not independent")));
        }
        let first = b.iter().next().expect("non-empty");
        if b.iter().any(|v| graph.neighbors(v) != graph.neighbors(first)) {
            return Err(Error::InvalidBlowUp(format!("block {i} has unequal neighbourhoods")));
        }
    }
    if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::InvalidBlowUp(format!("vertex {v} lies in no block")));
    }
    Ok(block_of)
}

/// Moves `S` toward whole blocks without increasing `e(S)` or changing
/// `|S|`, until at most one block is split.
///
/// While two blocks are split, mass moves between the two lowest-indexed
/// ones. `e(S)` is concave in the amount moved, so one of the two extreme
/// shifts does not increase it; the shift toward the first block wins ties.
/// Added vertices are the smallest ids missing from a block, removed ones the
/// largest ids present.
pub fn blow_up_round(graph: &Graph, blocks: &[VertexSubset], s: &VertexSubset) -> Result<VertexSubset> {
    let block_of = validate_blocks(graph, blocks)?;
    graph.check_universe(s)?;
    let k = blocks.len();
    let reps: Vec<usize> = blocks.iter().map(|b| b.iter().next().expect("non-empty")).collect();
    let adj = |i: usize, j: usize| graph.has_edge(reps[i], reps[j]);
    let size: Vec<i64> = blocks.iter().map(|b| b.len() as i64).collect();
    let mut count = vec![0i64; k];
    for v in s.iter() {
        count[block_of[v]] += 1;
    }
    let fractional = |count: &[i64]| {
        (0..k)
            .filter(|&i| count[i] > 0 && count[i] < size[i])
            .collect::<Vec<_>>()
    };
    // e(S) change when t vertices move from block j to block i
    let delta = |count: &[i64], i: usize, j: usize, t: i64| -> i64 {
        let mut d = 0;
        for (l, &cl) in count.iter().enumerate() {
            if l == i || l == j {
                continue;
            }
            if adj(i, l) {
                d += t * cl;
            }
            if adj(j, l) {
                d -= t * cl;
            }
        }
        if adj(i, j) {
            d += (count[i] + t) * (count[j] - t) - count[i] * count[j];
        }
        d
    };
    loop {
        let f = fractional(&count);
        if f.len() < 2 {
            break;
        }
        let (i, j) = (f[0], f[1]);
        let up = (size[i] - count[i]).min(count[j]);
        let down = -(count[i].min(size[j] - count[j]));
        let t = if delta(&count, i, j, up) <= delta(&count, i, j, down) {
            up
        } else {
            down
        };
        count[i] += t;
        count[j] -= t;
    }
    let mut out = VertexSubset::empty(graph.n());
    for (b, &want) in blocks.iter().zip(&count) {
        let want = want as usize;
        let inside: Vec<usize> = b.iter().filter(|&v| s.contains(v)).collect();
        let chosen: Vec<usize> = if want <= inside.len() {
            inside[..want].to_vec()
        } else {
            let extra = b.iter().filter(|&v| !s.contains(v)).take(want - inside.len());
            inside.iter().copied().chain(extra).collect()
        };
        for v in chosen {
            out.insert(v);
        }
    }
    Ok(out)
}

/// A balanced bipartition from a sparse half and its complement.
#[derive(Clone, Debug, Serialize)]
pub struct Bipartition {
    pub a: VertexSubset,
    pub b: VertexSubset,
    /// `e(A) + e(B)`, the edges removed to make the graph bipartite.
    pub removed: usize,
    pub regular: bool,
    /// `removed ≤ n²/9`.
    pub within_bound: bool,
}

/// [`make_bipartite_with`] under default options.
pub fn make_bipartite(graph: &Graph) -> Result<Bipartition> {
    make_bipartite_with(graph, &SearchOptions::default())
}

/// Splits an even-order K4-free graph into two halves, the first being the
/// best sparse half.
pub fn make_bipartite_with(graph: &Graph, options: &SearchOptions) -> Result<Bipartition> {
    let n = graph.n();
    if n % 2 == 1 {
        return Err(Error::OddOrder(n));
    }
    let report = find_sparse_half_with(graph, options)?;
    let a = report.best.subset;
    let b = a.complement();
    let removed = graph.edges_within(&a) + graph.edges_within(&b);
    Ok(Bipartition {
        a,
        b,
        removed,
        regular: graph.is_regular(),
        within_bound: 9 * removed <= n * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorKind};

    fn gen(kind: GeneratorKind) -> Graph {
        generate(&kind).unwrap().graph
    }

    fn c5_blow_up() -> crate::graph::BlowUp {
        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        generate(&GeneratorKind::BlowUp {
            base: Box::new(c5),
            sizes: vec![2; 5],
        })
        .unwrap()
    }

    #[test]
    fn pipeline_examples() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 12 });
        let r = find_sparse_half(&t).unwrap();
        assert_eq!(
            (r.best.achieved, r.verdict, r.oracle_minimum),
            (8, HalfVerdict::Equality, Some(8))
        );
        let p = gen(GeneratorKind::Petersen);
        let r = find_sparse_half(&p).unwrap();
        assert_eq!((r.best.achieved, r.best.size(), r.verdict), (2, 5, HalfVerdict::Strict));
        let t2 = gen(GeneratorKind::Turan { parts: 2, n: 12 });
        assert_eq!(find_sparse_half(&t2).unwrap().best.achieved, 0);
        let k4 = gen(GeneratorKind::Complete { n: 4 });
        assert!(matches!(find_sparse_half(&k4), Err(Error::ContainsK4(_))));
    }

    #[test]
    fn route_filter() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 12 });
        let options = SearchOptions {
            routes: vec![RouteFamily::Medium],
            ..SearchOptions::default()
        };
        let r = find_sparse_half_with(&t, &options).unwrap();
        assert_eq!(r.candidates.len(), 1);
        assert!(matches!(r.best.route, Route::Scheme { .. } | Route::IndependentPart));
        let b = c5_blow_up().graph;
        assert!(find_sparse_half_with(&b, &options).is_err());
    }

    #[test]
    fn rounding_examples() {
        let bu = c5_blow_up();
        let aligned = bu.blocks[0].union(&bu.blocks[2]);
        assert_eq!(blow_up_round(&bu.graph, &bu.blocks, &aligned).unwrap(), aligned);
        let one_each = VertexSubset::from_ids(10, bu.blocks.iter().map(|b| b.iter().next().unwrap())).unwrap();
        let r = blow_up_round(&bu.graph, &bu.blocks, &one_each).unwrap();
        assert_eq!(r.len(), 5);
        assert!(bu.graph.edges_within(&r) <= bu.graph.edges_within(&one_each));
        let split = bu
            .blocks
            .iter()
            .filter(|b| !b.is_subset(&r) && !b.is_disjoint(&r))
            .count();
        assert!(split <= 1);
        let bad = vec![VertexSubset::full(10)];
        assert!(matches!(
            blow_up_round(&bu.graph, &bad, &one_each),
            Err(Error::InvalidBlowUp(_))
        ));
    }

    #[test]
    fn rounding_turan_blocks() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 12 });
        let blocks: Vec<VertexSubset> = (0..6)
            .map(|i| VertexSubset::from_ids(12, [2 * i, 2 * i + 1]).unwrap())
            .collect();
        let s = VertexSubset::from_ids(12, [0, 1, 2, 3, 4, 6]).unwrap();
        let r = blow_up_round(&t, &blocks, &s).unwrap();
        assert_eq!(r.len(), 6);
        assert!(t.edges_within(&r) <= t.edges_within(&s));
        assert_eq!(r.ids(), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn bipartition_examples() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 12 });
        let bp = make_bipartite(&t).unwrap();
        assert_eq!((bp.removed, bp.a.len(), bp.b.len()), (16, 6, 6));
        assert!(bp.within_bound && bp.regular);
        let t2 = gen(GeneratorKind::Turan { parts: 2, n: 10 });
        assert_eq!(make_bipartite(&t2).unwrap().removed, 0);
        let b = make_bipartite(&c5_blow_up().graph).unwrap();
        assert_eq!(b.removed, 4);
        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        assert!(matches!(make_bipartite(&c5), Err(Error::OddOrder(5))));
    }
}
