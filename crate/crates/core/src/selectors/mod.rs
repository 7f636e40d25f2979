//! Constructive sparse-subset selection.
//!
//! Every random-choice argument is replaced by the method of conditional
//! expectations over exact hypergeometric probabilities, so each outcome
//! carries an exact bound that its subset provably meets.

mod dense;
mod derandomize;
mod medium;
mod pipeline;
mod sparse;
mod triangle_free;

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::{Graph, VertexSubset};
use crate::{Error, Rational, Result};

pub use dense::{dense_route, DENSE_MIN_DEGREE};
pub use derandomize::{
    conditional_expectation_select, derandomized_extension, derandomized_uniform_subset, hypergeometric_expectation,
    Pool,
};
pub use medium::{
    heaviest_triangle, medium_route, scheme_select, scheme_tables, FourPartition, HeaviestTriangle, Quota, SchemeRow,
    MEDIUM_MAX_DENSITY,
};
pub use pipeline::{
    blow_up_round, find_sparse_half, find_sparse_half_with, make_bipartite, make_bipartite_with, Bipartition,
    HalfVerdict, RouteFamily, SearchOptions, SparseHalfReport, DEFAULT_ORACLE_THRESHOLD,
};
pub use sparse::{max_cut_search, sparse_half_from_cut, MaxCut, DEFAULT_EXACT_CUT_THRESHOLD, SPARSE_MAX_DENSITY};
pub use triangle_free::{krivelevich_select, regular_lower_bound_check, triangle_free_local_density};

/// Which construction produced a subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Uniform `k`-subset, derandomized.
    Uniform,
    /// Fixed set extended by a derandomized uniform choice.
    Extension,
    /// Complement of a neighbourhood extended into the neighbourhood.
    Neighborhood,
    /// Minimum-degree peeling followed by the neighbourhood scan.
    PeelNeighborhood,
    /// Independent set plus the vertices of a matching.
    Matching,
    /// Half chosen inside the larger side of a cut.
    CutInside,
    /// Smaller side of a cut extended to a half.
    CutExtension,
    /// One row of the four-part scheme tables.
    Scheme { table: u8, row: u8 },
    /// Half inside one independent part.
    IndependentPart,
    /// Half inside the independent side of a join.
    JoinIndependent,
    /// Uniform half inside the triangle-free side of a join.
    JoinUniform,
    /// Independent side plus part of a neighbourhood in the triangle-free side.
    JoinNeighborhood,
    /// Triangle-free local density selection inside the triangle-free side.
    JoinTriangleFree(Box<Route>),
    /// Large independent set extended to a half.
    DenseExtension,
    /// Exact minimum.
    Oracle,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Uniform => f.write_str("uniform"),
            Route::Extension => f.write_str("extension"),
            Route::Neighborhood => f.write_str("neighborhood"),
            Route::PeelNeighborhood => f.write_str("peel_neighborhood"),
            Route::Matching => f.write_str("matching"),
            Route::CutInside => f.write_str("cut_inside"),
            Route::CutExtension => f.write_str("cut_extension"),
            Route::Scheme { table, row } => write!(f, "scheme({table},{row})"),
            Route::IndependentPart => f.write_str("independent_part"),
            Route::JoinIndependent => f.write_str("join_independent"),
            Route::JoinUniform => f.write_str("join_uniform"),
            Route::JoinNeighborhood => f.write_str("join_neighborhood"),
            Route::JoinTriangleFree(inner) => write!(f, "join_triangle_free/{inner}"),
            Route::DenseExtension => f.write_str("dense_extension"),
            Route::Oracle => f.write_str("oracle"),
        }
    }
}

impl Serialize for Route {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A selected subset with the bound its construction guarantees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectionOutcome {
    pub subset: VertexSubset,
    /// `e(subset)`.
    pub achieved: usize,
    /// Exact upper bound guaranteed by the construction.
    pub analytic_bound: Rational,
    pub route: Route,
    /// The hypotheses of the route's density statement held on the input.
    pub guarantee_flag: bool,
    /// Conditional expectations after each decision, starting from the
    /// unconditioned value; empty for routes without derandomization.
    pub trace: Vec<Rational>,
}

impl SelectionOutcome {
    pub fn new(graph: &Graph, subset: VertexSubset, analytic_bound: Rational, route: Route) -> Self {
        SelectionOutcome {
            achieved: graph.edges_within(&subset),
            subset,
            analytic_bound,
            route,
            guarantee_flag: true,
            trace: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.subset.len()
    }

    pub fn with_guarantee(mut self, flag: bool) -> Self {
        self.guarantee_flag = flag;
        self
    }

    /// Same subset in a supergraph or relabelled universe: maps ids through
    /// `map` into a universe of `n` vertices and recounts in `graph`.
    pub(crate) fn lift(self, graph: &Graph, map: &[usize]) -> Self {
        let subset = VertexSubset::from_ids(graph.n(), self.subset.iter().map(|v| map[v])).expect("map stays in range");
        SelectionOutcome {
            achieved: graph.edges_within(&subset),
            subset,
            ..self
        }
    }

    /// Smaller `achieved` first, then the lexicographically smaller subset.
    pub fn better_than(&self, other: &Self) -> bool {
        self.cmp_quality(other) == Ordering::Less
    }

    fn cmp_quality(&self, other: &Self) -> Ordering {
        self.achieved
            .cmp(&other.achieved)
            .then_with(|| self.subset.lex_cmp(&other.subset))
    }
}

impl Serialize for SelectionOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SelectionOutcome", 6)?;
        st.serialize_field("subset", &self.subset)?;
        st.serialize_field("size", &self.subset.len())?;
        st.serialize_field("achieved", &self.achieved)?;
        st.serialize_field("analytic_bound", &crate::scalar::RationalJson(&self.analytic_bound))?;
        st.serialize_field("route", &self.route)?;
        st.serialize_field("guarantee_flag", &self.guarantee_flag)?;
        st.end()
    }
}

/// Best outcome by [`SelectionOutcome::better_than`]; order-independent, so
/// parallel reductions agree with sequential ones.
pub fn best_outcome(outcomes: impl IntoIterator<Item = SelectionOutcome>) -> Option<SelectionOutcome> {
    outcomes.into_iter().min_by(|a, b| a.cmp_quality(b))
}

/// Density parameters of a graph at subset fraction `alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityParams {
    pub alpha: Rational,
    /// `e(G)/n²`.
    pub c: Rational,
    /// `d(v)/n`.
    pub d: Vec<Rational>,
    /// `n/(2d(v))`, absent for isolated vertices.
    pub alpha_v: Vec<Option<Rational>>,
    /// `e(N(v))/d(v)²`, zero for isolated vertices.
    pub c_v: Vec<Rational>,
}

impl DensityParams {
    pub fn new(graph: &Graph, alpha: Rational) -> Result<Self> {
        if alpha < crate::ratio(0, 1) || alpha > crate::ratio(1, 1) {
            return Err(Error::Precondition(format!("α = {alpha} outside [0, 1]")));
        }
        let n = graph.n();
        let q = |a: usize, b: usize| Rational::new(a.into(), b.into());
        let mut d = Vec::with_capacity(n);
        let mut alpha_v = Vec::with_capacity(n);
        let mut c_v = Vec::with_capacity(n);
        for v in 0..n {
            let dv = graph.degree(v);
            d.push(q(dv, n));
            if dv == 0 {
                alpha_v.push(None);
                c_v.push(crate::ratio(0, 1));
            } else {
                let nbhd = VertexSubset::from_bits(graph.neighbors(v).clone());
                alpha_v.push(Some(q(n, 2 * dv)));
                c_v.push(q(graph.edges_within(&nbhd), dv * dv));
            }
        }
        Ok(DensityParams {
            alpha,
            c: graph.density().clone(),
            d,
            alpha_v,
            c_v,
        })
    }
}

/// `⌊r·n⌋` for a rational fraction `r ∈ [0, 1]`.
pub(crate) fn floor_fraction(r: &Rational, n: usize) -> usize {
    let v = (r * Rational::from_integer(n.into())).floor().to_integer();
    usize::try_from(v).expect("fraction of n is non-negative")
}

pub(crate) fn rat(a: usize) -> Rational {
    Rational::from_integer(a.into())
}
