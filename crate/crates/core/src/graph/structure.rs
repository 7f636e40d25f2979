use fixedbitset::FixedBitSet;

use super::cliques::find_k4;
use super::{Graph, VertexSubset};
use crate::{Error, Result};

/// Largest `n` for which [`independent_set_search`] runs a complete search.
pub const DEFAULT_EXACT_INDEPENDENCE_THRESHOLD: usize = 40;

/// Adding `uv` creates a K4 iff the common neighbourhood of `u`, `v`
/// spans an edge.
fn closes_k4(rows: &[FixedBitSet], u: usize, v: usize) -> bool {
    let common: Vec<usize> = rows[u].intersection(&rows[v]).collect();
    common
        .iter()
        .enumerate()
        .any(|(i, &w)| common[i + 1..].iter().any(|&x| rows[w].contains(x)))
}

/// Adds every non-edge, in lexicographic order, that keeps the graph K4-free.
///
/// One pass suffices: a rejected pair stays rejected because edges are only
/// ever added.
pub fn maximalize_k4free(graph: &Graph) -> Result<Graph> {
    if let Some(q) = find_k4(graph) {
        return Err(Error::ContainsK4(q));
    }
    let n = graph.n();
    let mut rows: Vec<FixedBitSet> = (0..n).map(|v| graph.neighbors(v).clone()).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !rows[u].contains(v) && !closes_k4(&rows, u, v) {
                rows[u].insert(v);
                rows[v].insert(u);
            }
        }
    }
    Ok(Graph::from_rows(rows))
}

/// K4-free and every non-edge closes a K4.
pub fn is_maximal_k4free(graph: &Graph) -> bool {
    if find_k4(graph).is_some() {
        return false;
    }
    let rows: Vec<FixedBitSet> = (0..graph.n()).map(|v| graph.neighbors(v).clone()).collect();
    (0..graph.n()).all(|u| (u + 1..graph.n()).all(|v| graph.has_edge(u, v) || closes_k4(&rows, u, v)))
}

/// `V = I ∪ R` with `I` independent and completely joined to `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSplit {
    pub independent: VertexSubset,
    pub rest: VertexSubset,
}

impl JoinSplit {
    /// The graph `Γ = G[R]` with the map back to `G`'s ids.
    pub fn gamma(&self, graph: &Graph) -> (Graph, Vec<usize>) {
        graph.induced(&self.rest)
    }
}

/// All splits `I ∨ Γ` where `I` is one complement component that is
/// independent in `G` and `Γ` is non-empty.
///
/// A union of two or more complement components is never independent (its
/// parts are completely joined), so single components are the only
/// candidates. Ordered by `|I|` descending, then smallest member.
pub fn join_candidates(graph: &Graph) -> Vec<JoinSplit> {
    let n = graph.n();
    let comps = graph.complement().components();
    if comps.len() < 2 {
        return Vec::new();
    }
    let mut out: Vec<JoinSplit> = comps
        .into_iter()
        .filter_map(|c| {
            let independent = VertexSubset::from_ids(n, c).expect("component ids in range");
            graph.is_independent(&independent).then(|| JoinSplit {
                rest: independent.complement(),
                independent,
            })
        })
        .collect();
    out.sort_by(|a, b| {
        b.independent
            .len()
            .cmp(&a.independent.len())
            .then_with(|| a.independent.lex_cmp(&b.independent))
    });
    out
}

/// Preferred join split: the largest independent complement component.
pub fn join_decompose(graph: &Graph) -> Option<JoinSplit> {
    join_candidates(graph).into_iter().next()
}

/// Finds an independent set of exactly `target` vertices.
///
/// Complete branch-and-bound when `n <= exact_threshold` (so `None` is
/// definitive there); greedy plus swap-based local search otherwise.
pub fn independent_set_search(graph: &Graph, target: usize, exact_threshold: usize) -> Option<VertexSubset> {
    let n = graph.n();
    if target == 0 {
        return Some(VertexSubset::empty(n));
    }
    if target > n {
        return None;
    }
    let found = if n <= exact_threshold.min(128) {
        exact_independent(graph, target)
    } else {
        heuristic_independent(graph, target)
    }?;
    let ids = found.into_iter().take(target);
    Some(VertexSubset::from_ids(n, ids).expect("ids in range"))
}

fn exact_independent(graph: &Graph, target: usize) -> Option<Vec<usize>> {
    let n = graph.n();
    let closed: Vec<u128> = (0..n)
        .map(|v| graph.neighbor_ids(v).fold(1u128 << v, |m, w| m | (1u128 << w)))
        .collect();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut chosen = Vec::with_capacity(target);
    fn go(closed: &[u128], cands: u128, chosen: &mut Vec<usize>, target: usize) -> bool {
        if chosen.len() == target {
            return true;
        }
        if chosen.len() + (cands.count_ones() as usize) < target {
            return false;
        }
        // branch on the candidate with fewest candidate neighbours
        let mut best = usize::MAX;
        let mut best_deg = u32::MAX;
        let mut rest = cands;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (closed[v] & cands).count_ones();
            if d < best_deg {
                best_deg = d;
                best = v;
            }
        }
        chosen.push(best);
        if go(closed, cands & !closed[best], chosen, target) {
            return true;
        }
        chosen.pop();
        go(closed, cands & !(1u128 << best), chosen, target)
    }
    go(&closed, all, &mut chosen, target).then(|| {
        chosen.sort_unstable();
        chosen
    })
}

fn heuristic_independent(graph: &Graph, target: usize) -> Option<Vec<usize>> {
    let n = graph.n();
    // greedy: repeatedly take a minimum-degree vertex of the remaining graph
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut set = FixedBitSet::with_capacity(n);
    while let Some(v) = alive
        .ones()
        .min_by_key(|&v| (graph.neighbors(v).intersection_count(&alive), v))
    {
        set.insert(v);
        alive.set(v, false);
        alive.difference_with(graph.neighbors(v));
    }
    // (1,2)-swaps: drop one member, add two non-adjacent outsiders whose only
    // neighbour in the set was the dropped vertex
    let mut improved = true;
    while improved && set.count_ones(..) < target {
        improved = false;
        for x in set.ones().collect::<Vec<_>>() {
            let free: Vec<usize> = (0..n)
                .filter(|&u| !set.contains(u) && u != x)
                .filter(|&u| {
                    let hits = graph.neighbors(u).intersection_count(&set);
                    hits == 1 && graph.has_edge(u, x)
                })
                .collect();
            let pair = free
                .iter()
                .enumerate()
                .find_map(|(i, &a)| free[i + 1..].iter().find(|&&b| !graph.has_edge(a, b)).map(|&b| (a, b)));
            if let Some((a, b)) = pair {
                set.set(x, false);
                set.insert(a);
                set.insert(b);
                // absorb any vertex that became free
                for u in 0..n {
                    if !set.contains(u) && graph.neighbors(u).is_disjoint(&set) {
                        set.insert(u);
                    }
                }
                improved = true;
                break;
            }
        }
    }
    (set.count_ones(..) >= target).then(|| set.ones().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_check, generate, GeneratorKind};

    fn gen(kind: GeneratorKind) -> Graph {
        generate(&kind).unwrap().graph
    }

    #[test]
    fn turan_is_already_maximal() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 9 });
        assert!(is_maximal_k4free(&t));
        assert_eq!(maximalize_k4free(&t).unwrap(), t);
    }

    #[test]
    fn maximalize_small_graphs() {
        let e4 = Graph::empty(4);
        let m = maximalize_k4free(&e4).unwrap();
        assert!(is_maximal_k4free(&m));
        assert_eq!(m.edge_count(), 5);

        let c5 = gen(GeneratorKind::Cycle { n: 5 });
        let m = maximalize_k4free(&c5).unwrap();
        assert!(is_maximal_k4free(&m));
        assert_eq!(clique_check(&m, 4).unwrap(), None);
        assert!(c5.edges().all(|(u, v)| m.has_edge(u, v)));

        let k4 = gen(GeneratorKind::Complete { n: 4 });
        assert!(matches!(maximalize_k4free(&k4), Err(Error::ContainsK4(_))));
    }

    #[test]
    fn join_of_turan() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 9 });
        let split = join_decompose(&t).unwrap();
        assert_eq!(split.independent.ids(), vec![0, 1, 2]);
        let (gamma, _) = split.gamma(&t);
        assert_eq!(gamma.n(), 6);
        assert_eq!(gamma.edge_count(), 9);
        assert_eq!(
            t.edges_between(&split.independent, &split.rest).unwrap(),
            split.independent.len() * split.rest.len()
        );
    }

    #[test]
    fn c5_has_no_join() {
        assert_eq!(join_decompose(&gen(GeneratorKind::Cycle { n: 5 })), None);
    }

    #[test]
    fn star_join() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let all = join_candidates(&star);
        assert_eq!(all.len(), 2);
        // largest independent side first: the leaves, joined to the centre
        assert_eq!(all[0].independent.ids(), vec![1, 2, 3, 4]);
        assert_eq!(all[1].independent.ids(), vec![0]);
        let (gamma, _) = all[1].gamma(&star);
        assert_eq!((gamma.n(), gamma.edge_count()), (4, 0));
    }

    #[test]
    fn independent_sets() {
        let t = gen(GeneratorKind::Turan { parts: 3, n: 6 });
        let s = independent_set_search(&t, 2, 40).unwrap();
        assert!(t.is_independent(&s));
        assert_eq!(s.len(), 2);

        let p = gen(GeneratorKind::Petersen);
        let s = independent_set_search(&p, 4, 40).unwrap();
        assert!(p.is_independent(&s) && s.len() == 4);
        assert_eq!(independent_set_search(&p, 5, 40), None);

        let k4 = gen(GeneratorKind::Complete { n: 4 });
        assert_eq!(independent_set_search(&k4, 2, 40), None);
    }

    #[test]
    fn heuristic_regime() {
        let c = gen(GeneratorKind::Cycle { n: 60 });
        let s = independent_set_search(&c, 30, 10).unwrap();
        assert!(c.is_independent(&s));
        assert_eq!(s.len(), 30);
    }
}
