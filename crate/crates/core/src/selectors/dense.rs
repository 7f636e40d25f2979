//! Dense range: minimum degree at least `0.59n`.

use super::derandomize::{select, Pool};
use super::triangle_free::krivelevich_select;
use super::{best_outcome, rat, Route, SelectionOutcome};
use crate::graph::{
    find_k4, find_triangle, independent_set_search, join_candidates, maximalize_k4free, Graph, JoinSplit, VertexSubset,
    DEFAULT_EXACT_INDEPENDENCE_THRESHOLD,
};
use crate::{ratio, Error, Result};

/// Minimum degree fraction `δ/n` from which the route is guaranteed.
pub const DENSE_MIN_DEGREE: (i64, i64) = (59, 100);

/// Oracle threshold handed to the triangle-free selector inside a join.
const INNER_ORACLE_THRESHOLD: usize = 26;

/// Halves read off one join `I ∨ Γ` of the maximalized graph `h`.
fn join_halves(h: &Graph, split: &JoinSplit) -> Result<Vec<SelectionOutcome>> {
    let n = h.n();
    let half = n / 2;
    let (gamma, map) = split.gamma(h);
    if let Some(t) = find_triangle(&gamma) {
        return Err(Error::ContainsTriangle(t.map(|v| map[v])));
    }
    let size = gamma.n();
    let i_len = split.independent.len();
    let mut out = Vec::new();
    if i_len >= half {
        let s = VertexSubset::from_ids(n, split.independent.iter().take(half))?;
        out.push(SelectionOutcome::new(h, s, ratio(0, 1), Route::JoinIndependent));
        return Ok(out);
    }
    if 3 * size > 2 * n {
        // keep Γ small enough that the selector's fraction stays above 3/5
        let keep = (5 * half).div_ceil(3) - 1;
        let (inner, inner_map) = if size > keep {
            let mut order: Vec<usize> = (0..size).collect();
            order.sort_by_key(|&v| (gamma.degree(v), v));
            let kept = VertexSubset::from_ids(size, order.into_iter().take(keep))?;
            let (g2, m2) = gamma.induced(&kept);
            let composed: Vec<usize> = m2.iter().map(|&v| map[v]).collect();
            (g2, composed)
        } else {
            (gamma.clone(), map.clone())
        };
        let alpha = ratio(half as i64, inner.n() as i64);
        let o = krivelevich_select(&inner, &alpha, INNER_ORACLE_THRESHOLD)?;
        let route = Route::JoinTriangleFree(Box::new(o.route.clone()));
        out.push(SelectionOutcome { route, ..o }.lift(h, &inner_map));
        return Ok(out);
    }
    let rest_needed = half - i_len;
    let o = select(
        &gamma,
        &VertexSubset::empty(size),
        &[Pool::new(VertexSubset::full(size), half)],
        Route::JoinUniform,
    )?;
    out.push(o.lift(h, &map));
    let v = (0..size).max_by_key(|&v| (gamma.degree(v), std::cmp::Reverse(v)));
    if let Some(v) = v.filter(|&v| gamma.degree(v) >= rest_needed) {
        let t = gamma.neighbor_ids(v).take(rest_needed).map(|w| map[w]);
        let s = VertexSubset::from_ids(n, split.independent.iter().chain(t))?;
        let bound = rat(i_len * rest_needed);
        out.push(SelectionOutcome::new(h, s, bound, Route::JoinNeighborhood));
    }
    Ok(out)
}

/// Sparse half for K4-free graphs of large minimum degree.
///
/// The graph is first made maximal K4-free. Every join `I ∨ Γ` of the
/// maximal graph contributes halves from `I`, from `Γ`, or from `I` plus a
/// neighbourhood in `Γ`; independently a set of `⌈9n/25⌉` independent
/// vertices of the input is extended to a half. All candidates are recounted
/// in the input graph, which has no more edges than the maximal one.
///
/// `guarantee_flag` is set when `δ(G) ≥ 0.59n`.
pub fn dense_route(graph: &Graph) -> Result<SelectionOutcome> {
    if let Some(q) = find_k4(graph) {
        return Err(Error::ContainsK4(q));
    }
    let n = graph.n();
    let half = n / 2;
    let h = maximalize_k4free(graph)?;
    let identity: Vec<usize> = (0..n).collect();
    let mut candidates = Vec::new();
    for split in join_candidates(&h) {
        for o in join_halves(&h, &split)? {
            candidates.push(o.lift(graph, &identity));
        }
    }
    let target = (9 * n).div_ceil(25);
    if target <= half {
        if let Some(a) = independent_set_search(graph, target, DEFAULT_EXACT_INDEPENDENCE_THRESHOLD) {
            let b = a.complement();
            candidates.push(select(
                graph,
                &a,
                &[Pool::new(b, half - target)],
                Route::DenseExtension,
            )?);
        }
    }
    let guaranteed = 100 * graph.min_degree() as u128 >= 59 * n as u128;
    best_outcome(candidates)
        .map(|o| o.with_guarantee(guaranteed))
        .ok_or_else(|| Error::NoBranch("no join split and no independent set of size ⌈9n/25⌉".into()))
}
