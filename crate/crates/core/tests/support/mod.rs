#![allow(dead_code)]

//! Test-only oracles: isomorphism-class enumeration of small graphs,
//! brute-force minima, exact evaluation of the closed forms, and corpora.

pub mod canon;

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sparse_halves::graph::{generate, GeneratorKind};
use sparse_halves::{ratio, Graph, Rational};

pub use canon::canonical_form;

/// Adjacency rows of a graph on at most 16 vertices.
pub type Rows = Vec<u16>;

pub fn rows_of(g: &Graph) -> Rows {
    (0..g.n())
        .map(|v| g.neighbor_ids(v).fold(0u16, |m, w| m | (1 << w)))
        .collect()
}

pub fn graph_of(rows: &[u16]) -> Graph {
    let n = rows.len();
    let mut edges = Vec::new();
    for (u, &r) in rows.iter().enumerate() {
        for v in u + 1..n {
            if r & (1 << v) != 0 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn is_independent_mask(rows: &[u16], mask: u16) -> bool {
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if rows[v] & mask != 0 {
            return false;
        }
        m &= m - 1;
    }
    true
}

/// One representative per isomorphism class on `n + 1` vertices, obtained by
/// attaching a new vertex to every class on `n` vertices in every allowed way.
fn extend(level: &[Rows], allowed: impl Fn(&Rows, u16) -> bool) -> Vec<Rows> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rows in level {
        let n = rows.len();
        for mask in 0u16..(1 << n) {
            if !allowed(rows, mask) {
                continue;
            }
            let mut next = rows.clone();
            for (v, r) in next.iter_mut().enumerate() {
                if mask & (1 << v) != 0 {
                    *r |= 1 << n;
                }
            }
            next.push(mask);
            let (code, canon) = canonical_form(&next);
            if seen.insert(code) {
                out.push(canon);
            }
        }
    }
    out
}

fn levels(max_n: usize, allowed: fn(&Rows, u16) -> bool) -> Vec<Vec<Rows>> {
    let mut all = vec![vec![Vec::new()]];
    for n in 1..=max_n {
        let next = extend(&all[n - 1], allowed);
        all.push(next);
    }
    all
}

/// Isomorphism classes of all graphs on `n ≤ 9` vertices.
pub fn all_graphs(n: usize) -> &'static [Rows] {
    static CACHE: OnceLock<Vec<Vec<Rows>>> = OnceLock::new();
    assert!(n <= 9);
    &CACHE.get_or_init(|| levels(9, |_, _| true))[n]
}

/// Isomorphism classes of triangle-free graphs on `n ≤ 10` vertices.
pub fn triangle_free_graphs(n: usize) -> &'static [Rows] {
    static CACHE: OnceLock<Vec<Vec<Rows>>> = OnceLock::new();
    assert!(n <= 10);
    &CACHE.get_or_init(|| levels(10, |r, m| is_independent_mask(r, m)))[n]
}

pub fn is_connected(rows: &[u16]) -> bool {
    let n = rows.len();
    if n == 0 {
        return true;
    }
    let full: u16 = if n == 16 { u16::MAX } else { (1 << n) - 1 };
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = rows[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == full
}

pub fn edges_in(rows: &[u16], mask: u32) -> usize {
    let mut total = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        total += (u32::from(rows[v]) & mask).count_ones() as usize;
        m &= m - 1;
    }
    total / 2
}

/// Minimum of `e(S)` over all `k`-subsets by enumerating every subset of the
/// vertex set (no pruning, no shared code with the library oracle).
pub fn brute_min(g: &Graph, k: usize) -> usize {
    let n = g.n();
    assert!(n <= 24 && k <= n);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbor_ids(v).fold(0u32, |m, w| m | (1 << w)))
        .collect();
    if k == 0 {
        return 0;
    }
    let mut best = usize::MAX;
    // Gosper's hack over k-subsets
    let mut s: u32 = (1 << k) - 1;
    let limit: u64 = 1 << n;
    while u64::from(s) < limit {
        let mut e = 0;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            e += (adj[v] & s).count_ones();
            m &= m - 1;
        }
        best = best.min(e as usize / 2);
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    best
}

fn q(a: i64, b: i64) -> Rational {
    ratio(a, b)
}

/// `1/(3(1 − 2c))`, transcribed separately from the library.
pub fn exact_g(c: &Rational) -> Rational {
    q(1, 1) / (q(3, 1) - q(6, 1) * c)
}

pub fn exact_h(c: &Rational) -> Rational {
    let g = exact_g(c);
    let og = q(1, 1) - &g;
    &g / (q(9, 1) - q(6, 1) * &g) + q(2, 1) * c * &og - (c + &og * &og / q(3, 1))
}

pub fn exact_k(c: &Rational) -> Rational {
    let g = exact_g(c);
    let og = q(1, 1) - &g;
    c + &og / q(6, 1) - (&g / (q(18, 1) * &og) + &og / (q(3, 1) - q(2, 1) * &g))
}

pub fn exact_ell(c: &Rational, x: &Rational) -> Rational {
    let g = exact_g(c);
    let og = q(1, 1) - &g;
    let gx = &g - x;
    (&gx * &gx + q(2, 1) * &og * &og) / (q(18, 1) * x * (q(1, 1) - q(2, 1) * x)) - &og * &og / (q(6, 1) * x) + q(1, 6)
        - c
}

pub fn exact_m(x: &Rational, c: &Rational) -> Rational {
    let g = exact_g(c);
    let og = q(1, 1) - &g;
    let d = q(1, 1) - q(2, 1) * (&g - x);
    let ox = q(1, 1) - x;
    (q(1, 1) + q(1, 1) / &d - q(1, 1) / x) * x / &ox + q(1, 1) / &d + q(2, 1) * &og / (x * &ox) + q(1, 1)
        - q(3, 1) * &ox * &og / x
        - q(18, 1) * c
}

pub fn gen(kind: GeneratorKind) -> Graph {
    generate(&kind).unwrap().graph
}

pub fn turan(parts: usize, n: usize) -> Graph {
    gen(GeneratorKind::Turan { parts, n })
}

pub fn blow_up(base: Graph, sizes: Vec<usize>) -> sparse_halves::graph::BlowUp {
    generate(&GeneratorKind::BlowUp {
        base: Box::new(base),
        sizes,
    })
    .unwrap()
}

/// Regular K4-free graphs on at most 24 vertices: Turán graphs, cycles,
/// the Petersen graph, blow-ups and K4-free circulants.
pub fn regular_k4_free_corpus() -> Vec<(String, Graph)> {
    use sparse_halves::graph::clique_check;
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in (3..=24).step_by(3) {
        out.push((format!("T3({n})"), turan(3, n)));
    }
    for n in (2..=24).step_by(2) {
        out.push((format!("T2({n})"), turan(2, n)));
    }
    for n in 4..=24 {
        out.push((format!("C{n}"), gen(GeneratorKind::Cycle { n })));
    }
    out.push(("Petersen".into(), gen(GeneratorKind::Petersen)));
    let c5 = gen(GeneratorKind::Cycle { n: 5 });
    for s in 2..=4 {
        out.push((format!("C5[{s}]"), blow_up(c5.clone(), vec![s; 5]).graph));
    }
    out.push((
        "Petersen[2]".into(),
        blow_up(gen(GeneratorKind::Petersen), vec![2; 10]).graph,
    ));
    for s in 2..=3 {
        let c7 = gen(GeneratorKind::Cycle { n: 7 });
        out.push((format!("C7[{s}]"), blow_up(c7, vec![s; 7]).graph));
    }
    let mut seen = HashSet::new();
    for n in 6..=24usize {
        for mask in 1u32..(1 << (n / 2)) {
            let jumps: Vec<usize> = (1..=n / 2).filter(|j| mask & (1 << (j - 1)) != 0).collect();
            if jumps.len() > 3 {
                continue;
            }
            if seen.contains(&circulant_class(n, &jumps)) {
                continue;
            }
            let g = gen(GeneratorKind::Circulant {
                n,
                jumps: jumps.clone(),
            });
            if clique_check(&g, 4).unwrap().is_some() || !g.is_connected() {
                continue;
            }
            if seen.insert(circulant_class(n, &jumps)) {
                out.push((format!("Circ({n};{jumps:?})"), g));
            }
        }
    }
    out
}

/// Smallest jump set equivalent under multiplication by units mod `n`.
fn circulant_class(n: usize, jumps: &[usize]) -> Vec<usize> {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    (1..n)
        .filter(|&u| gcd(u, n) == 1)
        .map(|u| {
            let mut js: Vec<usize> = jumps.iter().map(|&j| (u * j) % n).map(|j| j.min(n - j)).collect();
            js.sort_unstable();
            js.dedup();
            js
        })
        .min()
        .expect("1 is a unit")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` with `p = num/den`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, num: u32, den: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_ratio(num, den) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}
