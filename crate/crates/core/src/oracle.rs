//! Exact minimum of `e(S)` over all `k`-subsets, and the characterization
//! checks built on it.

use std::cmp::Reverse;

use serde::Serialize;

use crate::graph::{clique_check, to_graph6, Graph, VertexSubset};
use crate::{ratio, Error, Rational, Result};

/// Default largest `n` the oracle accepts.
pub const DEFAULT_ORACLE_CAP: usize = 30;

/// Hard limit of the bitmask representation.
pub const MAX_ORACLE_N: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub minimum: usize,
    /// Lexicographically smallest minimizer.
    pub witness: VertexSubset,
    /// Complete `k`-subsets scored during the minimum search.
    pub subsets_examined: u64,
    /// Search nodes cut by the lower bound.
    pub pruned: u64,
}

fn masks(graph: &Graph) -> Vec<u64> {
    (0..graph.n())
        .map(|v| graph.neighbor_ids(v).fold(0u64, |m, w| m | (1 << w)))
        .collect()
}

struct Search<'a> {
    adj: &'a [u64],
    order: Vec<usize>,
    k: usize,
    best: usize,
    examined: u64,
    pruned: u64,
    scratch: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Sum of the `r` smallest `|N(v) ∩ S|` over the candidates `order[i..]`.
    fn lower_bound(&mut self, depth: usize, i: usize, chosen: u64, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        let buf = &mut self.scratch[depth];
        buf.clear();
        buf.extend(
            self.order[i..]
                .iter()
                .map(|&v| (self.adj[v] & chosen).count_ones() as usize),
        );
        buf.select_nth_unstable(r - 1);
        buf[..r].iter().sum()
    }

    /// Looks for subsets strictly better than `self.best`.
    fn minimize(&mut self, depth: usize, i: usize, chosen: u64, size: usize, cur: usize) {
        let r = self.k - size;
        if r == 0 {
            self.examined += 1;
            self.best = self.best.min(cur);
            return;
        }
        if self.order.len() - i < r {
            return;
        }
        if cur + self.lower_bound(depth, i, chosen, r) >= self.best {
            self.pruned += 1;
            return;
        }
        let v = self.order[i];
        let add = (self.adj[v] & chosen).count_ones() as usize;
        self.minimize(depth + 1, i + 1, chosen | (1 << v), size + 1, cur + add);
        self.minimize(depth + 1, i + 1, chosen, size, cur);
    }

    /// First subset in lexicographic order (ids ascending, include first)
    /// spanning exactly `target` edges.
    fn first_with(
        &mut self,
        depth: usize,
        i: usize,
        chosen: u64,
        size: usize,
        cur: usize,
        target: usize,
    ) -> Option<u64> {
        let r = self.k - size;
        if r == 0 {
            return (cur == target).then_some(chosen);
        }
        if self.order.len() - i < r || cur + self.lower_bound(depth, i, chosen, r) > target {
            return None;
        }
        let v = self.order[i];
        let add = (self.adj[v] & chosen).count_ones() as usize;
        self.first_with(depth + 1, i + 1, chosen | (1 << v), size + 1, cur + add, target)
            .or_else(|| self.first_with(depth + 1, i + 1, chosen, size, cur, target))
    }
}

/// Greedy upper bound: repeatedly add the vertex with fewest neighbours in
/// the current set (lowest id on ties).
fn greedy_value(adj: &[u64], k: usize) -> usize {
    let mut chosen = 0u64;
    let mut total = 0;
    for _ in 0..k {
        let (v, add) = (0..adj.len())
            .filter(|&v| chosen & (1 << v) == 0)
            .map(|v| (v, (adj[v] & chosen).count_ones() as usize))
            .min_by_key(|&(v, a)| (a, v))
            .expect("k <= n");
        chosen |= 1 << v;
        total += add;
    }
    total
}

pub fn min_edges_k_subset(graph: &Graph, k: usize) -> Result<OracleResult> {
    min_edges_k_subset_with_cap(graph, k, DEFAULT_ORACLE_CAP)
}

/// As [`min_edges_k_subset`] with an explicit cap (at most [`MAX_ORACLE_N`]).
pub fn min_edges_k_subset_with_cap(graph: &Graph, k: usize, cap: usize) -> Result<OracleResult> {
    let n = graph.n();
    let cap = cap.min(MAX_ORACLE_N);
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if k > n {
        return Err(Error::SubsetSize { k, n });
    }
    let adj = masks(graph);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(graph.degree(v)), v));
    let mut search = Search {
        adj: &adj,
        order,
        k,
        best: greedy_value(&adj, k),
        examined: 0,
        pruned: 0,
        scratch: vec![Vec::with_capacity(n); n + 2],
    };
    search.minimize(0, 0, 0, 0, 0);
    let minimum = search.best;
    search.order = (0..n).collect();
    let mask = search
        .first_with(0, 0, 0, 0, 0, minimum)
        .expect("the minimum is attained");
    let witness = VertexSubset::from_ids(n, (0..n).filter(|&v| mask & (1 << v) != 0))?;
    debug_assert_eq!(graph.edges_within(&witness), minimum);
    Ok(OracleResult {
        minimum,
        witness,
        subsets_examined: search.examined,
        pruned: search.pruned,
    })
}

/// Unpruned enumeration of all `k`-subsets in lexicographic order; returns the
/// minimum and its lexicographically smallest witness.
pub fn naive_min_edges(graph: &Graph, k: usize) -> Result<(usize, VertexSubset)> {
    let n = graph.n();
    if k > n {
        return Err(Error::SubsetSize { k, n });
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let s = VertexSubset::from_ids(n, idx.iter().copied())?;
        let e = graph.edges_within(&s);
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            best = Some((e, idx.clone()));
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                let (e, ids) = best.expect("at least one subset");
                return Ok((e, VertexSubset::from_ids(n, ids)?));
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Minimum at size `k` against `(2α − 1)cn²` with `α = k/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityProfile {
    pub k: usize,
    pub minimum: usize,
    /// `(2α − 1)cn² = (2k − n)e/n`.
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub bound: Rational,
    pub meets: bool,
    /// `α + c ≥ 1`, the range where the bound is attained by some subset.
    pub alpha_plus_c_at_least_one: bool,
}

pub fn local_density_profile(graph: &Graph, k: usize) -> Result<DensityProfile> {
    let n = graph.n();
    let res = min_edges_k_subset(graph, k)?;
    let bound = if n == 0 {
        ratio(0, 1)
    } else {
        Rational::from_integer(((2 * k as i64 - n as i64) * graph.edge_count() as i64).into())
            / Rational::from_integer((n as i64).into())
    };
    let alpha_c = if n == 0 {
        true
    } else {
        Rational::new(k.into(), n.into()) + graph.density() >= ratio(1, 1)
    };
    Ok(DensityProfile {
        k,
        minimum: res.minimum,
        meets: Rational::from_integer(res.minimum.into()) >= bound,
        bound,
        alpha_plus_c_at_least_one: alpha_c,
    })
}

/// Which characterization to test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremalMode {
    /// Regular K4-free: every `⌊n/2⌋`-set spans `≥ n²/18` only for `T3(n)`
    /// with `6 | n`.
    SparseHalf,
    /// Triangle-free, `3/5 < α ≤ 1`, `αn` integral: every `αn`-set spans
    /// `≥ (2α − 1)n²/4` only for `T2(n)`.
    TriangleFree { alpha: Rational },
    /// Bipartite, `1/2 ≤ α ≤ 1`, `αn` integral: same threshold and target.
    Bipartite { alpha: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Some subset beats the threshold.
    ConformsStrict,
    /// Threshold met everywhere and the graph is the extremal one.
    ConformsExtremal,
    /// Threshold met everywhere by a graph that is not extremal.
    Violates,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub verdict: Verdict,
    pub k: usize,
    pub minimum: usize,
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub threshold: Rational,
    /// Balanced complete multipartite with the expected number of parts.
    pub extremal_structure: bool,
    /// graph6 line reproducing the instance.
    pub reproducer: String,
}

/// Part sizes if `graph` is complete multipartite (complement is a disjoint
/// union of cliques), else `None`.
pub fn multipartite_parts(graph: &Graph) -> Option<Vec<usize>> {
    let comps = graph.complement().components();
    for c in &comps {
        for (i, &u) in c.iter().enumerate() {
            if c[i + 1..].iter().any(|&v| graph.has_edge(u, v)) {
                return None;
            }
        }
    }
    // all cross pairs adjacent iff edge count matches
    let total: usize = graph.n();
    let within: usize = comps.iter().map(|c| c.len() * c.len()).sum();
    if (total * total - within) / 2 != graph.edge_count() {
        return None;
    }
    Some(comps.iter().map(|c| c.len()).collect())
}

/// Complete `r`-partite with all parts of equal size.
pub fn is_balanced_complete_multipartite(graph: &Graph, r: usize) -> bool {
    match multipartite_parts(graph) {
        Some(parts) => parts.len() == r && parts.iter().all(|&p| p == parts[0]),
        None => false,
    }
}

fn is_bipartite(graph: &Graph) -> bool {
    let n = graph.n();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = vec![s];
        while let Some(v) = queue.pop() {
            for w in graph.neighbor_ids(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

fn integral_size(alpha: &Rational, n: usize) -> Result<usize> {
    let size = alpha * Rational::from_integer(n.into());
    if !size.is_integer() {
        return Err(Error::Precondition(format!("α·n = {size} is not an integer")));
    }
    size.to_integer()
        .try_into()
        .map_err(|_| Error::Precondition("α·n out of range".into()))
}

pub fn check_extremal_characterization(graph: &Graph, mode: &ExtremalMode) -> Result<ExtremalReport> {
    let n = graph.n();
    let n_sq = Rational::from_integer((n * n).into());
    let (k, threshold, parts, extra_ok) = match mode {
        ExtremalMode::SparseHalf => {
            if !graph.is_regular() {
                return Err(Error::Precondition(
                    "sparse-half characterization needs a regular graph".into(),
                ));
            }
            if let Some(q) = clique_check(graph, 4)? {
                return Err(Error::ContainsK4([q[0], q[1], q[2], q[3]]));
            }
            (n / 2, n_sq / ratio(18, 1), 3, n % 6 == 0)
        }
        ExtremalMode::TriangleFree { alpha } => {
            if let Some(t) = clique_check(graph, 3)? {
                return Err(Error::ContainsTriangle([t[0], t[1], t[2]]));
            }
            if !(alpha > &ratio(3, 5) && alpha <= &ratio(1, 1)) {
                return Err(Error::Precondition(format!("α = {alpha} outside (3/5, 1]")));
            }
            let k = integral_size(alpha, n)?;
            (k, (ratio(2, 1) * alpha - ratio(1, 1)) * n_sq / ratio(4, 1), 2, true)
        }
        ExtremalMode::Bipartite { alpha } => {
            if !is_bipartite(graph) {
                return Err(Error::Precondition("graph is not bipartite".into()));
            }
            if !(alpha >= &ratio(1, 2) && alpha <= &ratio(1, 1)) {
                return Err(Error::Precondition(format!("α = {alpha} outside [1/2, 1]")));
            }
            let k = integral_size(alpha, n)?;
            (k, (ratio(2, 1) * alpha - ratio(1, 1)) * n_sq / ratio(4, 1), 2, true)
        }
    };
    let res = min_edges_k_subset(graph, k)?;
    let structure = is_balanced_complete_multipartite(graph, parts);
    let met = Rational::from_integer(res.minimum.into()) >= threshold;
    let verdict = if !met {
        Verdict::ConformsStrict
    } else if structure && extra_ok {
        Verdict::ConformsExtremal
    } else {
        Verdict::Violates
    };
    Ok(ExtremalReport {
        verdict,
        k,
        minimum: res.minimum,
        threshold,
        extremal_structure: structure,
        reproducer: to_graph6(graph),
    })
}
