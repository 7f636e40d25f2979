use std::collections::BTreeMap;

use super::Graph;
use crate::{Error, Result};

/// Finds a `K_r` for `r ∈ {3, 4}`; returns its vertices in increasing order.
pub fn clique_check(graph: &Graph, r: usize) -> Result<Option<Vec<usize>>> {
    match r {
        3 => Ok(find_triangle(graph).map(|t| t.to_vec())),
        4 => Ok(find_k4(graph).map(|q| q.to_vec())),
        _ => Err(Error::UnsupportedCliqueOrder(r)),
    }
}

pub(crate) fn find_triangle(graph: &Graph) -> Option<[usize; 3]> {
    for (u, v) in graph.edges() {
        let common = graph.neighbors(u).intersection(graph.neighbors(v)).find(|&w| w > v);
        if let Some(w) = common {
            return Some([u, v, w]);
        }
    }
    None
}

pub(crate) fn find_k4(graph: &Graph) -> Option<[usize; 4]> {
    for (u, v) in graph.edges() {
        let common: Vec<usize> = graph
            .neighbors(u)
            .intersection(graph.neighbors(v))
            .filter(|&w| w > v)
            .collect();
        for (i, &w) in common.iter().enumerate() {
            if let Some(&x) = common[i + 1..].iter().find(|&&x| graph.has_edge(w, x)) {
                return Some([u, v, w, x]);
            }
        }
    }
    None
}

/// Triangle count, triangle list and codegrees of adjacent pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleStats {
    pub triangle_total: usize,
    /// Triples `(u, v, w)` with `u < v < w`, lexicographically ordered.
    pub triangles: Vec<[usize; 3]>,
    /// `d(uv)` for every edge `uv`, keyed with `u < v`.
    pub codegree: BTreeMap<(usize, usize), usize>,
}

impl TriangleStats {
    /// Codegree of an adjacent pair in either order.
    pub fn codegree_of(&self, u: usize, v: usize) -> Option<usize> {
        self.codegree.get(&(u.min(v), u.max(v))).copied()
    }
}

pub fn triangle_stats(graph: &Graph) -> TriangleStats {
    let mut triangles = Vec::new();
    let mut codegree = BTreeMap::new();
    for (u, v) in graph.edges() {
        let common = graph.neighbors(u).intersection(graph.neighbors(v));
        let mut d = 0;
        for w in common {
            d += 1;
            if w > v {
                triangles.push([u, v, w]);
            }
        }
        codegree.insert((u, v), d);
    }
    TriangleStats {
        triangle_total: triangles.len(),
        triangles,
        codegree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorKind, VertexSubset};

    fn petersen() -> Graph {
        generate(&GeneratorKind::Petersen).unwrap().graph
    }

    fn turan(k: usize, n: usize) -> Graph {
        generate(&GeneratorKind::Turan { parts: k, n }).unwrap().graph
    }

    #[test]
    fn petersen_is_triangle_free() {
        assert_eq!(clique_check(&petersen(), 3).unwrap(), None);
        assert_eq!(triangle_stats(&petersen()).triangle_total, 0);
    }

    #[test]
    fn turan_three_partite_cliques() {
        let g = turan(3, 9);
        assert_eq!(clique_check(&g, 4).unwrap(), None);
        let t = clique_check(&g, 3).unwrap().unwrap();
        // parts are contiguous blocks of three
        let parts: Vec<usize> = t.iter().map(|&v| v / 3).collect();
        assert_eq!(parts, vec![0, 1, 2]);
    }

    #[test]
    fn k4_witness() {
        let k4 = generate(&GeneratorKind::Complete { n: 4 }).unwrap().graph;
        assert_eq!(clique_check(&k4, 4).unwrap(), Some(vec![0, 1, 2, 3]));
        assert!(matches!(clique_check(&k4, 5), Err(Error::UnsupportedCliqueOrder(5))));
    }

    #[test]
    fn triangle_counts() {
        let k3 = generate(&GeneratorKind::Complete { n: 3 }).unwrap().graph;
        let st = triangle_stats(&k3);
        assert_eq!(st.triangle_total, 1);
        assert!(st.codegree.values().all(|&d| d == 1));
        assert_eq!(triangle_stats(&turan(3, 6)).triangle_total, 8);
    }

    #[test]
    fn triangle_total_matches_neighbourhood_sum() {
        for g in [turan(3, 12), petersen(), turan(2, 7)] {
            let st = triangle_stats(&g);
            let sum: usize = (0..g.n())
                .map(|v| {
                    let nb = VertexSubset::from_ids(g.n(), g.neighbor_ids(v)).unwrap();
                    g.edges_within(&nb)
                })
                .sum();
            assert_eq!(sum % 3, 0);
            assert_eq!(st.triangle_total, sum / 3);
            for t in &st.triangles {
                assert!(g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2]));
            }
        }
    }
}
