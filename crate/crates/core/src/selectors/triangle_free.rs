//! Local density selections in triangle-free graphs.

use petgraph::graph::UnGraph;
use rayon::prelude::*;

use super::derandomize::{select, Pool};
use super::{best_outcome, floor_fraction, rat, Route, SelectionOutcome};
use crate::graph::{find_triangle, independent_set_search, Graph, VertexSubset, DEFAULT_EXACT_INDEPENDENCE_THRESHOLD};
use crate::oracle::min_edges_k_subset_with_cap;
use crate::{ratio, Error, Rational, Result};

fn require_triangle_free(graph: &Graph) -> Result<()> {
    match find_triangle(graph) {
        Some(t) => Err(Error::ContainsTriangle(t)),
        None => Ok(()),
    }
}

fn require_fraction(alpha: &Rational) -> Result<()> {
    if *alpha < ratio(0, 1) || *alpha > ratio(1, 1) {
        return Err(Error::Precondition(format!("α = {alpha} outside [0, 1]")));
    }
    Ok(())
}

/// Best neighbourhood extension over the vertices of `rest`: for each `v`,
/// everything outside `N(v) ∩ rest` is kept and the remaining quota is drawn
/// from `N(v) ∩ rest`. Needs `d_rest(v) ≥ n − k` for every `v ∈ rest`.
fn neighborhood_scan(graph: &Graph, rest: &VertexSubset, k: usize, route: Route) -> Result<SelectionOutcome> {
    let outcomes: Vec<SelectionOutcome> = rest
        .ids()
        .into_par_iter()
        .map(|v| {
            let nbhd = VertexSubset::from_bits(graph.neighbors(v).clone()).intersection(rest);
            let fixed = nbhd.complement();
            let take = k - fixed.len();
            select(graph, &fixed, &[Pool::new(nbhd, take)], route.clone())
        })
        .collect::<Result<_>>()?;
    let bound = outcomes
        .iter()
        .map(|o| o.analytic_bound.clone())
        .min()
        .expect("rest is non-empty");
    let mut best = best_outcome(outcomes).expect("rest is non-empty");
    best.analytic_bound = bound;
    best.trace.clear();
    Ok(best)
}

/// A `⌊αn⌋`-set spanning at most `(2α − 1)e(G)` edges in a triangle-free
/// graph with `α + e(G)/n² ≥ 1`.
///
/// If `δ(G) ≥ n − ⌊αn⌋` every vertex is tried as the centre of a
/// neighbourhood extension; otherwise minimum-degree vertices are peeled
/// until the rest satisfies that degree condition, and the peeled set is kept
/// in the result.
pub fn triangle_free_local_density(graph: &Graph, alpha: &Rational) -> Result<SelectionOutcome> {
    require_triangle_free(graph)?;
    require_fraction(alpha)?;
    if alpha + graph.density() < ratio(1, 1) {
        return Err(Error::Precondition(format!("α + c = {} < 1", alpha + graph.density())));
    }
    let n = graph.n();
    let k = floor_fraction(alpha, n);
    if n == 0 {
        return Ok(SelectionOutcome::new(
            graph,
            VertexSubset::empty(0),
            ratio(0, 1),
            Route::Neighborhood,
        ));
    }
    let need = n - k;
    let mut rest = VertexSubset::full(n);
    let mut deg: Vec<usize> = graph.degrees().to_vec();
    loop {
        let low = rest.iter().filter(|&v| deg[v] < need).min_by_key(|&v| (deg[v], v));
        let Some(v) = low else { break };
        rest.remove(v);
        for w in graph.neighbor_ids(v) {
            deg[w] -= 1;
        }
        if rest.is_empty() {
            return Err(Error::Precondition("peeling removed every vertex".into()));
        }
    }
    let route = if rest.len() == n {
        Route::Neighborhood
    } else {
        Route::PeelNeighborhood
    };
    neighborhood_scan(graph, &rest, k, route)
}

/// Whether every `αn`-set of a regular triangle-free graph spans at least
/// `(2α − 1)e(G)` edges, decided by the exact oracle.
pub fn regular_lower_bound_check(graph: &Graph, alpha: &Rational) -> Result<bool> {
    if !graph.is_regular() {
        return Err(Error::NotRegular);
    }
    require_triangle_free(graph)?;
    require_fraction(alpha)?;
    let n = graph.n();
    let size = alpha * rat(n);
    if !size.is_integer() {
        return Err(Error::Precondition(format!("α·n = {size} is not an integer")));
    }
    let k = floor_fraction(alpha, n);
    let min = min_edges_k_subset_with_cap(graph, k, crate::oracle::DEFAULT_ORACLE_CAP)?.minimum;
    Ok(rat(min) >= (ratio(2, 1) * alpha - ratio(1, 1)) * rat(graph.edge_count()))
}

/// Independent set of size `n − k` plus the vertices of a matching in the
/// rest, padded greedily to `k` vertices.
fn matching_strategy(graph: &Graph, k: usize) -> Option<SelectionOutcome> {
    let n = graph.n();
    let extra = k.checked_sub(n - k)?;
    let a = independent_set_search(graph, n - k, DEFAULT_EXACT_INDEPENDENCE_THRESHOLD)?;
    let rest = a.complement();
    let (sub, map) = graph.induced(&rest);
    let mut pg = UnGraph::<(), ()>::with_capacity(sub.n(), sub.edge_count());
    for _ in 0..sub.n() {
        pg.add_node(());
    }
    for (u, v) in sub.edges() {
        pg.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    let matching = petgraph::algo::maximum_matching(&pg);
    let mut edges: Vec<(usize, usize)> = matching
        .edges()
        .map(|(u, v)| {
            let (u, v) = (map[u.index()], map[v.index()]);
            (u.min(v), u.max(v))
        })
        .collect();
    edges.sort_unstable();

    let mut chosen = a.clone();
    let added = |chosen: &VertexSubset, v: usize| graph.neighbors(v).intersection_count(chosen.bits());
    let mut used_edges = 0;
    while used_edges < extra / 2 && !edges.is_empty() {
        let (i, _) = edges
            .iter()
            .enumerate()
            .min_by_key(|&(i, &(u, v))| (added(&chosen, u) + added(&chosen, v), i))
            .expect("non-empty");
        let (u, v) = edges.remove(i);
        chosen.insert(u);
        chosen.insert(v);
        used_edges += 1;
    }
    let mut pads = 0;
    while chosen.len() < k {
        let v = chosen
            .complement()
            .iter()
            .min_by_key(|&v| (added(&chosen, v), v))
            .expect("k <= n");
        chosen.insert(v);
        pads += 1;
    }
    // each vertex of the independent set sees at most one end of each
    // matching edge, and the chosen rest is triangle-free (Mantel)
    let c = chosen.len() - a.len();
    let bound = rat(a.len() * (used_edges + pads) + c * c / 4);
    Some(SelectionOutcome::new(graph, chosen, bound, Route::Matching))
}

/// A `⌊αn⌋`-set spanning at most `(2α − 1)n²/4` edges in a triangle-free
/// graph, `3/5 < α ≤ 1`.
///
/// Tries the local density construction (when `α + c ≥ 1`), the
/// independent-set-plus-matching construction, and for `n ≤ oracle_threshold`
/// the exact oracle; returns the best outcome meeting the bound. Failing all
/// three is reported as [`Error::CounterexampleCandidate`].
pub fn krivelevich_select(graph: &Graph, alpha: &Rational, oracle_threshold: usize) -> Result<SelectionOutcome> {
    require_triangle_free(graph)?;
    if !(*alpha > ratio(3, 5) && *alpha <= ratio(1, 1)) {
        return Err(Error::Precondition(format!("α = {alpha} outside (3/5, 1]")));
    }
    let n = graph.n();
    let k = floor_fraction(alpha, n);
    let target = (ratio(2, 1) * alpha - ratio(1, 1)) * rat(n * n) / ratio(4, 1);
    let mut candidates = Vec::new();
    if alpha + graph.density() >= ratio(1, 1) {
        candidates.push(triangle_free_local_density(graph, alpha)?);
    }
    candidates.extend(matching_strategy(graph, k));
    if n <= oracle_threshold {
        let res = min_edges_k_subset_with_cap(graph, k, oracle_threshold)?;
        candidates.push(SelectionOutcome::new(
            graph,
            res.witness,
            rat(res.minimum),
            Route::Oracle,
        ));
    }
    let best_any = candidates.iter().map(|o| o.achieved).min();
    best_outcome(candidates.into_iter().filter(|o| rat(o.achieved) <= target)).ok_or_else(|| {
        Error::CounterexampleCandidate {
            achieved: best_any.unwrap_or(usize::MAX),
            bound: target.to_string(),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorKind};

    fn gen(kind: GeneratorKind) -> Graph {
        generate(&kind).unwrap().graph
    }

    fn c5_blow_up() -> Graph {
        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        gen(GeneratorKind::BlowUp {
            base: Box::new(c5),
            sizes: vec![2; 5],
        })
    }

    #[test]
    fn local_density_examples() {
        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        assert!(matches!(
            triangle_free_local_density(&c5, &ratio(3, 5)),
            Err(Error::Precondition(_))
        ));
        // T2(10) at α = 3/5 has α + c = 17/20; the oracle still finds a
        // 6-set with (2α − 1)cn² = 5 edges
        let t2 = gen(GeneratorKind::Turan { parts: 2, n: 10 });
        assert!(matches!(
            triangle_free_local_density(&t2, &ratio(3, 5)),
            Err(Error::Precondition(_))
        ));
        assert_eq!(crate::oracle::min_edges_k_subset(&t2, 6).unwrap().minimum, 5);
        let o = triangle_free_local_density(&t2, &ratio(4, 5)).unwrap();
        assert_eq!((o.size(), o.achieved), (8, 15));
        let b = c5_blow_up();
        let o = triangle_free_local_density(&b, &ratio(4, 5)).unwrap();
        assert_eq!((o.size(), o.achieved), (8, 12));
        let k3 = gen(GeneratorKind::Complete { n: 3 });
        assert!(matches!(
            triangle_free_local_density(&k3, &ratio(1, 2)),
            Err(Error::ContainsTriangle(_))
        ));
    }

    #[test]
    fn peeling_keeps_low_degree_vertices() {
        // T2(8) plus two isolated vertices: c = 16/100, α = 9/10
        let t2 = gen(GeneratorKind::Turan { parts: 2, n: 8 });
        let edges: Vec<_> = t2.edges().collect();
        let g = Graph::new(10, &edges).unwrap();
        let o = triangle_free_local_density(&g, &ratio(9, 10)).unwrap();
        assert_eq!(o.route, Route::PeelNeighborhood);
        assert!(o.subset.contains(8) && o.subset.contains(9));
        assert!(rat(o.achieved) <= ratio(8, 10) * rat(16));
    }

    #[test]
    fn regular_lower_bound_examples() {
        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        assert!(regular_lower_bound_check(&c5, &ratio(3, 5)).unwrap());
        let p = gen(GeneratorKind::Petersen);
        assert!(regular_lower_bound_check(&p, &ratio(3, 5)).unwrap());
        let t = gen(GeneratorKind::Turan { parts: 2, n: 4 });
        assert!(regular_lower_bound_check(&t, &ratio(1, 2)).unwrap());
        assert!(regular_lower_bound_check(&c5, &ratio(1, 2)).is_err());
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            regular_lower_bound_check(&path, &ratio(1, 3)),
            Err(Error::NotRegular)
        ));
    }

    #[test]
    fn krivelevich_examples() {
        let t2 = gen(GeneratorKind::Turan { parts: 2, n: 10 });
        let o = krivelevich_select(&t2, &ratio(7, 10), 26).unwrap();
        assert_eq!((o.size(), o.achieved), (7, 10));
        // without the oracle the constructive strategies must still succeed
        let o = krivelevich_select(&t2, &ratio(7, 10), 0).unwrap();
        assert!(o.achieved <= 10 && o.route != Route::Oracle);
        let empty = Graph::empty(12);
        let o = krivelevich_select(&empty, &ratio(2, 3), 0).unwrap();
        assert_eq!(o.achieved, 0);
        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        let o = krivelevich_select(&c5, &ratio(4, 5), 26).unwrap();
        assert_eq!((o.size(), o.achieved), (4, 3));
        assert!(krivelevich_select(&c5, &ratio(3, 5), 26).is_err());
    }
}
