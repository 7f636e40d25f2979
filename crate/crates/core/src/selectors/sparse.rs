//! Sparse range: a large cut yields a sparse half.

use fixedbitset::FixedBitSet;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::derandomize::{select, Pool};
use super::{best_outcome, rat, Route, SelectionOutcome};
use crate::graph::{Graph, VertexSubset};
use crate::{ratio, Error, Rational, Result};

/// Largest `n` for which the maximum cut is found by exhaustive enumeration.
pub const DEFAULT_EXACT_CUT_THRESHOLD: usize = 28;

/// Density `c = e/n²` up to which the cut route is guaranteed to give a
/// strictly sparse half.
pub const SPARSE_MAX_DENSITY: (i64, i64) = (26, 100);

const RESTARTS: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCut {
    /// Smaller side (lexicographically smaller on ties).
    pub side: VertexSubset,
    pub cut: usize,
    /// Whether `cut` is the true maximum.
    pub exact: bool,
    /// `(4/13)e + (111/104)e²/n²`, the cut every K4-free graph admits.
    pub floor: Rational,
}

fn normalized(side: FixedBitSet) -> VertexSubset {
    let a = VertexSubset::from_bits(side);
    let b = a.complement();
    if a.len().cmp(&b.len()).then_with(|| a.lex_cmp(&b)).is_le() {
        a
    } else {
        b
    }
}

fn exact_cut(graph: &Graph) -> (FixedBitSet, usize) {
    let n = graph.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| graph.neighbor_ids(v).fold(0u64, |m, w| m | (1 << w)))
        .collect();
    let mut mask = 0u64;
    let mut cut = 0usize;
    let (mut best, mut best_mask) = (0usize, 0u64);
    // Gray code over the first n − 1 vertices; vertex n − 1 stays on side 0
    for step in 1u64..(1u64 << n.saturating_sub(1)) {
        let v = step.trailing_zeros() as usize;
        let side = if mask & (1 << v) != 0 { mask } else { !mask };
        let same = (adj[v] & side).count_ones() as usize;
        let other = graph.degree(v) - same;
        cut = cut + same - other;
        mask ^= 1 << v;
        if cut > best {
            best = cut;
            best_mask = mask;
        }
    }
    let mut bits = FixedBitSet::with_capacity(n);
    for v in 0..n {
        if best_mask & (1 << v) != 0 {
            bits.insert(v);
        }
    }
    (bits, best)
}

fn local_search(graph: &Graph, seed: u64) -> (FixedBitSet, usize) {
    let n = graph.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side = FixedBitSet::with_capacity(n);
    for v in 0..n {
        if rng.random::<bool>() {
            side.insert(v);
        }
    }
    loop {
        let mut improved = false;
        for v in 0..n {
            let in_side = graph.neighbors(v).intersection_count(&side);
            let same = if side.contains(v) {
                in_side
            } else {
                graph.degree(v) - in_side
            };
            if 2 * same > graph.degree(v) {
                side.toggle(v);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let a = VertexSubset::from_bits(side.clone());
    let cut = graph.edges_between_unchecked(a.bits(), a.complement().bits());
    (side, cut)
}

/// Maximum cut: exhaustive for `n ≤ exact_threshold` (at most 64), otherwise
/// the best of several seeded single-flip local searches.
pub fn max_cut_search(graph: &Graph, exact_threshold: usize) -> MaxCut {
    let n = graph.n();
    let exact = n <= exact_threshold.min(64);
    let (side, cut) = if exact {
        let (bits, cut) = exact_cut(graph);
        (normalized(bits), cut)
    } else {
        (0..RESTARTS)
            .into_par_iter()
            .map(|seed| {
                let (bits, cut) = local_search(graph, seed);
                (normalized(bits), cut)
            })
            .min_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.lex_cmp(&b.0)))
            .expect("at least one restart")
    };
    let e = rat(graph.edge_count());
    let floor = if n == 0 {
        ratio(0, 1)
    } else {
        ratio(4, 13) * &e + ratio(111, 104) * &e * &e / rat(n * n)
    };
    MaxCut {
        side,
        cut,
        exact,
        floor,
    }
}

/// Best of a uniform half inside `B = V ∖ A` and `A` extended to a half.
///
/// When `e(A, B) > 9e²/(4n²)` a K4-free graph is guaranteed a half spanning
/// fewer than `n²/18` edges this way; `guarantee_flag` records that condition.
pub fn sparse_half_from_cut(graph: &Graph, a: &VertexSubset) -> Result<SelectionOutcome> {
    graph.check_universe(a)?;
    let n = graph.n();
    let h = n / 2;
    if a.len() > h {
        return Err(Error::Precondition(format!("|A| = {} exceeds n/2", a.len())));
    }
    let b = a.complement();
    let cut = graph.edges_between_unchecked(a.bits(), b.bits());
    let e = graph.edge_count();
    let guaranteed = 4 * n * n * cut > 9 * e * e;
    let inside = select(
        graph,
        &VertexSubset::empty(n),
        &[Pool::new(b.clone(), h)],
        Route::CutInside,
    )?;
    let extended = select(graph, a, &[Pool::new(b, h - a.len())], Route::CutExtension)?;
    Ok(best_outcome([inside, extended])
        .expect("two candidates")
        .with_guarantee(guaranteed))
}
