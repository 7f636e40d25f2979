//! Conditional-expectation selection.
//!
//! A fixed set `D` is kept and `k_i` vertices are drawn uniformly from each
//! disjoint pool `U_i`. With `p_i = k_i/|U_i|` and
//! `q_i = k_i(k_i − 1)/(|U_i|(|U_i| − 1))` the expected edge count is
//!
//! `e(D) + Σ p_i e(D, U_i) + Σ q_i e(U_i) + Σ_{i<j} p_i p_j e(U_i, U_j)`.
//!
//! Pool vertices are decided one at a time in ascending id, each time taking
//! the branch with the smaller conditional expectation (inclusion on ties).

use fixedbitset::FixedBitSet;

use super::{rat, Route, SelectionOutcome};
use crate::graph::{Graph, VertexSubset};
use crate::{Error, Rational, Result};

/// Draw `take` vertices uniformly from `members`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pool {
    pub members: VertexSubset,
    pub take: usize,
}

impl Pool {
    pub fn new(members: VertexSubset, take: usize) -> Self {
        Pool { members, take }
    }
}

/// Edge counts between the fixed set and the shrinking pools.
struct State {
    fixed_edges: usize,
    fixed_pool: Vec<usize>,
    /// `pool_pool[i][i] = e(U_i)`, `pool_pool[i][j] = e(U_i, U_j)`.
    pool_pool: Vec<Vec<usize>>,
    remaining: Vec<usize>,
    take: Vec<usize>,
}

impl State {
    fn expectation(&self) -> Rational {
        let p: Vec<Rational> = (0..self.take.len())
            .map(|i| match self.remaining[i] {
                0 => Rational::from_integer(0.into()),
                r => Rational::new(self.take[i].into(), r.into()),
            })
            .collect();
        let mut e = rat(self.fixed_edges);
        for i in 0..p.len() {
            e += &p[i] * rat(self.fixed_pool[i]);
            let (k, r) = (self.take[i], self.remaining[i]);
            if k >= 2 && self.pool_pool[i][i] > 0 {
                e += Rational::new((k * (k - 1)).into(), (r * (r - 1)).into()) * rat(self.pool_pool[i][i]);
            }
            for j in i + 1..p.len() {
                e += &p[i] * &p[j] * rat(self.pool_pool[i][j]);
            }
        }
        e
    }
}

/// Exact expected `e(fixed ∪ S_1 ∪ … )` with each `S_i` uniform of size
/// `take` inside its pool.
pub fn hypergeometric_expectation(graph: &Graph, fixed: &VertexSubset, pools: &[Pool]) -> Result<Rational> {
    validate(graph, fixed, pools)?;
    Ok(initial_state(graph, fixed, pools).expectation())
}

fn validate(graph: &Graph, fixed: &VertexSubset, pools: &[Pool]) -> Result<()> {
    graph.check_universe(fixed)?;
    let mut seen = fixed.clone();
    for pool in pools {
        graph.check_universe(&pool.members)?;
        if !seen.is_disjoint(&pool.members) {
            return Err(Error::OverlappingSubsets);
        }
        if pool.take > pool.members.len() {
            return Err(Error::SubsetSize {
                k: pool.take,
                n: pool.members.len(),
            });
        }
        seen = seen.union(&pool.members);
    }
    Ok(())
}

fn initial_state(graph: &Graph, fixed: &VertexSubset, pools: &[Pool]) -> State {
    let count = |s: &VertexSubset, t: &VertexSubset| graph.edges_between_unchecked(s.bits(), t.bits());
    State {
        fixed_edges: graph.edges_within(fixed),
        fixed_pool: pools.iter().map(|p| count(fixed, &p.members)).collect(),
        pool_pool: pools
            .iter()
            .enumerate()
            .map(|(i, a)| {
                pools
                    .iter()
                    .enumerate()
                    .map(|(j, b)| {
                        if i == j {
                            graph.edges_within(&a.members)
                        } else {
                            count(&a.members, &b.members)
                        }
                    })
                    .collect()
            })
            .collect(),
        remaining: pools.iter().map(|p| p.members.len()).collect(),
        take: pools.iter().map(|p| p.take).collect(),
    }
}

/// Runs the conditional-expectation walk. Returns the chosen set (fixed set
/// plus the pool choices) and the expectation trace, whose first entry is the
/// unconditioned expectation and whose last entry equals `e` of the result.
pub fn conditional_expectation_select(
    graph: &Graph,
    fixed: &VertexSubset,
    pools: &[Pool],
) -> Result<(VertexSubset, Vec<Rational>)> {
    validate(graph, fixed, pools)?;
    let n = graph.n();
    let mut state = initial_state(graph, fixed, pools);
    let mut chosen: FixedBitSet = fixed.bits().clone();
    let mut open: Vec<FixedBitSet> = pools.iter().map(|p| p.members.bits().clone()).collect();
    let mut pool_of = vec![usize::MAX; n];
    for (i, p) in pools.iter().enumerate() {
        for v in p.members.iter() {
            pool_of[v] = i;
        }
    }
    let mut trace = vec![state.expectation()];
    for (v, &t) in pool_of.iter().enumerate() {
        if t == usize::MAX {
            continue;
        }
        let row = graph.neighbors(v);
        open[t].set(v, false);
        let to_fixed = row.intersection_count(&chosen);
        let to_pool: Vec<usize> = open.iter().map(|u| row.intersection_count(u)).collect();
        // v leaves its pool either way
        state.fixed_pool[t] -= to_fixed;
        for (j, &b) in to_pool.iter().enumerate() {
            if j == t {
                state.pool_pool[t][t] -= b;
            } else {
                state.pool_pool[t][j] -= b;
                state.pool_pool[j][t] -= b;
            }
        }
        let was = state.remaining[t];
        state.remaining[t] -= 1;
        let include = if state.take[t] == 0 {
            false
        } else if state.take[t] == was {
            true
        } else {
            let excluded = state.expectation();
            state.take[t] -= 1;
            state.fixed_edges += to_fixed;
            for (j, &b) in to_pool.iter().enumerate() {
                state.fixed_pool[j] += b;
            }
            let included = state.expectation();
            state.take[t] += 1;
            state.fixed_edges -= to_fixed;
            for (j, &b) in to_pool.iter().enumerate() {
                state.fixed_pool[j] -= b;
            }
            included <= excluded
        };
        if include {
            state.take[t] -= 1;
            state.fixed_edges += to_fixed;
            for (j, &b) in to_pool.iter().enumerate() {
                state.fixed_pool[j] += b;
            }
            chosen.insert(v);
        }
        trace.push(state.expectation());
    }
    let subset = VertexSubset::from_bits(chosen);
    debug_assert_eq!(trace.last(), Some(&rat(graph.edges_within(&subset))));
    Ok((subset, trace))
}

pub(crate) fn select(graph: &Graph, fixed: &VertexSubset, pools: &[Pool], route: Route) -> Result<SelectionOutcome> {
    let (subset, trace) = conditional_expectation_select(graph, fixed, pools)?;
    let mut out = SelectionOutcome::new(graph, subset, trace[0].clone(), route);
    out.trace = trace;
    Ok(out)
}

/// `k` vertices spanning at most `e(G)·k(k − 1)/(n(n − 1))` edges.
pub fn derandomized_uniform_subset(graph: &Graph, k: usize) -> Result<SelectionOutcome> {
    let n = graph.n();
    if k > n {
        return Err(Error::SubsetSize { k, n });
    }
    select(
        graph,
        &VertexSubset::empty(n),
        &[Pool::new(VertexSubset::full(n), k)],
        Route::Uniform,
    )
}

/// `A ∪ S` with `S ⊆ V ∖ A`, `|S| = k_extra`, spanning at most
/// `e(A) + ρ e(A, B) + ρ₂ e(B)`.
pub fn derandomized_extension(graph: &Graph, a: &VertexSubset, k_extra: usize) -> Result<SelectionOutcome> {
    graph.check_universe(a)?;
    let b = a.complement();
    if k_extra > b.len() {
        return Err(Error::SubsetSize { k: k_extra, n: b.len() });
    }
    select(graph, a, &[Pool::new(b, k_extra)], Route::Extension)
}
