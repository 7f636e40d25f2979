use super::{Graph, VertexSubset};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Balanced complete `parts`-partite graph on `n` vertices.
    Turan {
        parts: usize,
        n: usize,
    },
    /// Each vertex `i` of `base` becomes an independent block of `sizes[i]`
    /// vertices; each edge becomes a complete bipartite bundle.
    BlowUp {
        base: Box<Graph>,
        sizes: Vec<usize>,
    },
    Petersen,
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Vertex `i` adjacent to `i ± j (mod n)` for each jump `j`.
    Circulant {
        n: usize,
        jumps: Vec<usize>,
    },
}

/// A generated graph with its block structure.
///
/// Every generator output is a blow-up of something: Turán graphs carry
/// their parts, blow-ups their blocks, the rest singleton blocks.
#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: Graph,
    pub blocks: Vec<VertexSubset>,
}

impl BlowUp {
    fn singletons(graph: Graph) -> Self {
        let n = graph.n();
        let blocks = (0..n)
            .map(|v| VertexSubset::from_ids(n, [v]).expect("in range"))
            .collect();
        BlowUp { graph, blocks }
    }
}

pub fn generate(kind: &GeneratorKind) -> Result<BlowUp> {
    match kind {
        GeneratorKind::Turan { parts, n } => turan(*parts, *n),
        GeneratorKind::BlowUp { base, sizes } => blow_up(base, sizes),
        GeneratorKind::Petersen => Ok(BlowUp::singletons(petersen())),
        GeneratorKind::Cycle { n } => cycle(*n).map(BlowUp::singletons),
        GeneratorKind::Complete { n } => turan(*n, *n).map(|b| BlowUp::singletons(b.graph)),
        GeneratorKind::Circulant { n, jumps } => circulant(*n, jumps).map(BlowUp::singletons),
    }
}

/// Part sizes of `T_k(n)`: the first `n mod k` parts get the extra vertex.
pub fn turan_part_sizes(parts: usize, n: usize) -> Vec<usize> {
    (0..parts).map(|i| n / parts + usize::from(i < n % parts)).collect()
}

fn turan(parts: usize, n: usize) -> Result<BlowUp> {
    if parts == 0 {
        return Err(Error::InvalidGenerator("turan needs at least one part".into()));
    }
    let sizes = turan_part_sizes(parts, n);
    let mut base_edges = Vec::new();
    for i in 0..parts {
        for j in i + 1..parts {
            base_edges.push((i, j));
        }
    }
    let base = Graph::new(parts, &base_edges)?;
    complete_blocks(&base, &sizes)
}

fn blow_up(base: &Graph, sizes: &[usize]) -> Result<BlowUp> {
    if sizes.len() != base.n() {
        return Err(Error::InvalidGenerator(format!(
            "blow-up needs {} sizes, got {}",
            base.n(),
            sizes.len()
        )));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(Error::InvalidGenerator(format!("block {i} has size 0")));
    }
    complete_blocks(base, sizes)
}

/// Blow-up allowing empty blocks (Turán graphs with `n < parts`).
fn complete_blocks(base: &Graph, sizes: &[usize]) -> Result<BlowUp> {
    let mut offsets = Vec::with_capacity(sizes.len() + 1);
    offsets.push(0);
    for &s in sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    let n = *offsets.last().unwrap();
    let mut edges = Vec::new();
    for (i, j) in base.edges() {
        for u in offsets[i]..offsets[i + 1] {
            for v in offsets[j]..offsets[j + 1] {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::new(n, &edges)?;
    let blocks = (0..sizes.len())
        .map(|i| VertexSubset::from_ids(n, offsets[i]..offsets[i + 1]))
        .collect::<Result<_>>()?;
    Ok(BlowUp { graph, blocks })
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i`-`i+5`.
fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, i + 5));
    }
    Graph::new(10, &edges).expect("static edge list")
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGenerator(format!("cycle needs n >= 3, got {n}")));
    }
    circulant(n, &[1])
}

fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
    let mut edges = Vec::new();
    for &j in jumps {
        if j == 0 || j >= n {
            return Err(Error::InvalidGenerator(format!(
                "circulant jump {j} must lie in 1..{n}"
            )));
        }
        for i in 0..n {
            edges.push((i, (i + j) % n));
        }
    }
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::clique_check;

    #[test]
    fn turan_3_6_is_k222() {
        let b = generate(&GeneratorKind::Turan { parts: 3, n: 6 }).unwrap();
        assert_eq!(b.graph.edge_count(), 12);
        assert!(b.graph.degrees().iter().all(|&d| d == 4));
        assert_eq!(b.blocks.len(), 3);
    }

    #[test]
    fn turan_parts_differ_by_at_most_one() {
        assert_eq!(turan_part_sizes(3, 7), vec![3, 2, 2]);
        let b = generate(&GeneratorKind::Turan { parts: 3, n: 7 }).unwrap();
        let sizes: Vec<usize> = b.blocks.iter().map(|p| p.len()).collect();
        assert_eq!(sizes, vec![3, 2, 2]);
        assert_eq!(b.graph.edge_count(), 3 * 2 + 3 * 2 + 2 * 2);
    }

    #[test]
    fn c5_blow_up() {
        let c5 = generate(&GeneratorKind::Cycle { n: 5 }).unwrap().graph;
        let b = generate(&GeneratorKind::BlowUp {
            base: Box::new(c5),
            sizes: vec![2; 5],
        })
        .unwrap();
        assert_eq!(b.graph.n(), 10);
        assert_eq!(b.graph.edge_count(), 20);
        assert!(b.graph.degrees().iter().all(|&d| d == 4));
        assert_eq!(clique_check(&b.graph, 3).unwrap(), None);
    }

    #[test]
    fn identity_blow_up() {
        let p = generate(&GeneratorKind::Petersen).unwrap().graph;
        let b = generate(&GeneratorKind::BlowUp {
            base: Box::new(p.clone()),
            sizes: vec![1; 10],
        })
        .unwrap();
        assert_eq!(b.graph, p);
    }

    #[test]
    fn petersen_shape() {
        let p = generate(&GeneratorKind::Petersen).unwrap().graph;
        assert_eq!(p.edge_count(), 15);
        assert!(p.degrees().iter().all(|&d| d == 3));
    }

    #[test]
    fn invalid_parameters() {
        let c5 = generate(&GeneratorKind::Cycle { n: 5 }).unwrap().graph;
        assert!(generate(&GeneratorKind::BlowUp {
            base: Box::new(c5.clone()),
            sizes: vec![1; 4]
        })
        .is_err());
        assert!(generate(&GeneratorKind::BlowUp {
            base: Box::new(c5),
            sizes: vec![1, 1, 0, 1, 1]
        })
        .is_err());
        assert!(generate(&GeneratorKind::Turan { parts: 0, n: 3 }).is_err());
        assert!(generate(&GeneratorKind::Cycle { n: 2 }).is_err());
        assert!(generate(&GeneratorKind::Circulant { n: 5, jumps: vec![5] }).is_err());
    }
}
