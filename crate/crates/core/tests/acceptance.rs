//! Acceptance gate: ten end-to-end criteria, one PASS/FAIL line each.

mod support;

use std::time::{Duration, Instant};

use rand::RngExt;
use sparse_halves::certifier::{
    certify_sign, closed_form_checks, replay, standard_problem, FunctionId, SignCertificate, DEFAULT_BUDGET,
};
use sparse_halves::graph::{generate, parse_graph6_lines, GeneratorKind};
use sparse_halves::oracle::{
    check_extremal_characterization, local_density_profile, min_edges_k_subset, ExtremalMode, Verdict,
};
use sparse_halves::selectors::{
    blow_up_round, derandomized_extension, derandomized_uniform_subset, find_sparse_half, heaviest_triangle,
    make_bipartite, regular_lower_bound_check, triangle_free_local_density, Route, SelectionOutcome,
};
use sparse_halves::{ratio, Graph, Rational, VertexSubset};
use support::{all_graphs, brute_min, exact_g, exact_h, exact_k, graph_of, rng, turan};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(elapsed: Duration, limit_secs: u64, what: &str) -> Result<(), String> {
    if elapsed > Duration::from_secs(limit_secs) {
        return Err(format!("{what} took {elapsed:.2?}, limit {limit_secs} s"));
    }
    Ok(())
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn certify_and_replay(function: FunctionId, margin: Rational) -> Result<(Duration, usize), String> {
    let problem = standard_problem(function).ok_or("no standard problem")?;
    ensure!(
        problem.margin.as_ref() == Some(&margin),
        "{function}: margin {:?}",
        problem.margin
    );
    let start = Instant::now();
    let cert = certify_sign::<f64>(&problem, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(cert.status.is_proved(), "{function}: status {}", cert.status.label());
    within(elapsed, 60, function.name())?;
    let reread = SignCertificate::from_json(&cert.to_json().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let report = replay(&reread).map_err(|e| format!("{function} replay: {e}"))?;
    ensure!(
        report.leaves_checked == cert.stats.leaves,
        "{function}: replay checked {} leaves",
        report.leaves_checked
    );
    Ok((elapsed, cert.stats.leaves))
}

fn certificate_reproduction() -> Outcome {
    let (te, le) = certify_and_replay(FunctionId::Ell, ratio(3, 1000))?;
    let (tm, lm) = certify_and_replay(FunctionId::M, ratio(99, 1000))?;
    Ok(format!(
        "ell > 0.003 ({le} leaves, {te:.2?}); m > 0.099 ({lm} leaves, {tm:.2?}); both replayed"
    ))
}

fn one_variable_signs() -> Outcome {
    for f in [FunctionId::H, FunctionId::K] {
        let problem = standard_problem(f).ok_or("no standard problem")?;
        let cert = certify_sign::<f64>(&problem, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure!(cert.status.is_proved(), "{f}: status {}", cert.status.label());
        replay(&cert).map_err(|e| e.to_string())?;
    }
    let h_problem = standard_problem(FunctionId::H).unwrap();
    let k_problem = standard_problem(FunctionId::K).unwrap();
    ensure!(h_problem.domain == vec![(ratio(1, 4), ratio(297, 1000))], "h domain");
    ensure!(k_problem.domain == vec![(ratio(1, 4), ratio(5, 18))], "k domain");
    let h_anchor = exact_h(&ratio(297, 1000));
    let k_anchor = exact_k(&ratio(1, 4));
    ensure!(
        ratio(1, 10_000) < h_anchor && h_anchor < ratio(3, 10_000),
        "h(0.297) = {h_anchor} outside (1e-4, 3e-4)"
    );
    ensure!(
        ratio(-6, 1000) < k_anchor && k_anchor < ratio(-5, 1000),
        "k(1/4) = {k_anchor} outside (-6e-3, -5e-3)"
    );
    Ok(format!(
        "h > 0 and k < 0 proved; h(0.297) = {h_anchor}, k(1/4) = {k_anchor}"
    ))
}

fn closed_forms() -> Outcome {
    let report = closed_form_checks().map_err(|e| e.to_string())?;
    ensure!(report.all_passed(), "a check failed");
    for name in [
        "quadratic_minimum",
        "cut_floor_exceeds_extension",
        "g_below_three_quarters",
    ] {
        ensure!(report.get(name).is_some_and(|c| c.passed), "{name} missing or failed");
    }
    // independent restatement in exact rationals
    let lambda = ratio(8, 13);
    let b = (ratio(2, 1) - ratio(3, 2) * &lambda) / (ratio(4, 1) * &lambda);
    let c = (ratio(1, 1) - &lambda) / (ratio(4, 1) * &lambda);
    let vertex = &c - &b * &b / ratio(4, 1);
    let formula = (ratio(88, 1) * &lambda - ratio(73, 1) * &lambda * &lambda - ratio(16, 1))
        / (ratio(256, 1) * &lambda * &lambda);
    ensure!(vertex == formula, "quadratic minimum {vertex} != {formula}");
    let gap = |c: &Rational| ratio(4, 13) * c + ratio(111, 104) * c * c - ratio(9, 4) * c * c;
    let root = ratio(32, 123);
    ensure!(gap(&root) == ratio(0, 1), "gap at 32/123 is {}", gap(&root));
    for (num, den) in [(1, 1000), (1, 4), (26, 100), (31, 123), (32, 124)] {
        ensure!(gap(&ratio(num, den)) > ratio(0, 1), "gap not positive at {num}/{den}");
    }
    for (num, den) in [(33, 123), (1, 3), (1, 2)] {
        ensure!(gap(&ratio(num, den)) < ratio(0, 1), "gap not negative at {num}/{den}");
    }
    ensure!(
        exact_g(&ratio(5, 18)) == ratio(3, 4),
        "g(5/18) = {}",
        exact_g(&ratio(5, 18))
    );
    Ok(format!(
        "{} checks passed; g(5/18) = 3/4, gap root 32/123",
        report.checks.len()
    ))
}

fn oracle_extremal_suite() -> Outcome {
    let start = Instant::now();
    for (n, expected) in [(6, 2), (12, 8), (18, 18)] {
        let g = turan(3, n);
        let min = min_edges_k_subset(&g, n / 2).map_err(|e| e.to_string())?.minimum;
        ensure!(min == expected && 18 * min == n * n, "T3({n}) minimum {min}");
        let report = check_extremal_characterization(&g, &ExtremalMode::SparseHalf).map_err(|e| e.to_string())?;
        ensure!(
            report.verdict == Verdict::ConformsExtremal,
            "T3({n}) verdict {:?}",
            report.verdict
        );
    }
    let petersen = support::gen(GeneratorKind::Petersen);
    let p = min_edges_k_subset(&petersen, 5).map_err(|e| e.to_string())?.minimum;
    ensure!(p == 2 && brute_min(&petersen, 5) == 2, "Petersen minimum {p}");
    let c5 = support::gen(GeneratorKind::Cycle { n: 5 });
    let c52 = support::blow_up(c5, vec![2; 5]).graph;
    let q = min_edges_k_subset(&c52, 5).map_err(|e| e.to_string())?.minimum;
    ensure!(q == 2 && brute_min(&c52, 5) == 2, "C5[2] minimum {q}");
    let elapsed = start.elapsed();
    within(elapsed, 10, "extremal suite")?;
    Ok(format!(
        "T3(6,12,18) -> 2, 8, 18 conforms_extremal; Petersen 2; C5[2] 2 ({elapsed:.2?})"
    ))
}

fn triangle_free_suite() -> Outcome {
    let start = Instant::now();
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/triangle_free_connected_le10.g6");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let graphs = parse_graph6_lines(&text).map_err(|e| e.to_string())?;
    ensure!(graphs.len() == 11_569, "corpus has {} graphs", graphs.len());
    let (mut pairs, mut regular_pairs) = (0usize, 0usize);
    for g in &graphs {
        ensure!(g.is_connected(), "disconnected corpus graph");
        let (n, e) = (g.n(), g.edge_count());
        for k in 0..=n {
            if k * n + e < n * n {
                continue;
            }
            pairs += 1;
            let bound = int(e) * (int(2 * k) - int(n)) / int(n);
            let alpha = Rational::new(k.into(), n.into());
            let sel = triangle_free_local_density(g, &alpha).map_err(|err| format!("{g:?} k={k}: {err}"))?;
            ensure!(sel.size() == k, "n={n} k={k}: selected {} vertices", sel.size());
            ensure!(
                int(sel.achieved) <= bound,
                "n={n} e={e} k={k}: e(S) = {} above {bound}",
                sel.achieved
            );
            // at k = n every graph meets the bound with equality
            if k == n {
                continue;
            }
            let profile = local_density_profile(g, k).map_err(|err| err.to_string())?;
            let exhaustive = brute_min(g, k);
            ensure!(
                profile.minimum == exhaustive,
                "oracle {} vs exhaustive {exhaustive}",
                profile.minimum
            );
            ensure!(
                profile.meets == g.is_regular(),
                "n={n} e={e} k={k}: min {} vs bound {bound}, regular = {}",
                profile.minimum,
                g.is_regular()
            );
            if g.is_regular() {
                regular_pairs += 1;
                ensure!(
                    regular_lower_bound_check(g, &alpha).map_err(|err| err.to_string())?,
                    "regular check"
                );
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 300, "triangle-free suite")?;
    Ok(format!(
        "{} graphs, {pairs} (graph, k) pairs, {regular_pairs} regular pairs below k = n ({elapsed:.2?})",
        graphs.len()
    ))
}

fn uniform_bound(g: &Graph, k: usize) -> Rational {
    let n = g.n();
    if n < 2 {
        return ratio(0, 1);
    }
    int(g.edge_count()) * int(k * k.saturating_sub(1)) / int(n * (n - 1))
}

fn extension_bound(g: &Graph, a: &[bool], k: usize) -> Rational {
    let (mut inside, mut across, mut outside) = (0, 0, 0);
    for (u, v) in g.edges() {
        match (a[u], a[v]) {
            (true, true) => inside += 1,
            (false, false) => outside += 1,
            _ => across += 1,
        }
    }
    let b = a.iter().filter(|&&x| !x).count();
    let mut bound = int(inside);
    if b >= 1 {
        bound += int(across) * int(k) / int(b);
    }
    if b >= 2 {
        bound += int(outside) * int(k * k.saturating_sub(1)) / int(b * (b - 1));
    }
    bound
}

fn check_trace(o: &SelectionOutcome, bound: &Rational, size: usize) -> Result<(), String> {
    ensure!(o.size() == size, "selected {} of {size}", o.size());
    ensure!(
        &o.analytic_bound == bound,
        "analytic bound {} vs {bound}",
        o.analytic_bound
    );
    ensure!(int(o.achieved) <= *bound, "achieved {} above {bound}", o.achieved);
    ensure!(o.trace.first() == Some(bound), "trace starts at {:?}", o.trace.first());
    ensure!(o.trace.windows(2).all(|w| w[1] <= w[0]), "trace increases");
    ensure!(o.trace.last() == Some(&int(o.achieved)), "trace ends off e(S)");
    Ok(())
}

fn derandomize_one(g: &Graph, k: usize, a: &[bool], extra: usize) -> Result<(), String> {
    let n = g.n();
    let o = derandomized_uniform_subset(g, k).map_err(|e| e.to_string())?;
    check_trace(&o, &uniform_bound(g, k), k).map_err(|e| format!("uniform n={n} k={k}: {e}"))?;
    let set = VertexSubset::from_ids(n, (0..n).filter(|&v| a[v])).unwrap();
    let o = derandomized_extension(g, &set, extra).map_err(|e| e.to_string())?;
    check_trace(&o, &extension_bound(g, a, extra), set.len() + extra)
        .map_err(|e| format!("extension n={n} |A|={} extra={extra}: {e}", set.len()))?;
    ensure!(set.is_subset(&o.subset), "extension dropped part of A");
    Ok(())
}

fn derandomization_suite() -> Outcome {
    let mut runs = 0usize;
    for n in 1..=8 {
        for rows in all_graphs(n) {
            let g = graph_of(rows);
            let a: Vec<bool> = (0..n).map(|v| v % 3 == 0).collect();
            let b = n - a.iter().filter(|&&x| x).count();
            for k in 0..=n {
                derandomize_one(&g, k, &a, k.min(b))?;
                runs += 1;
            }
        }
    }
    let mut r = rng(0x5eed_0006);
    for _ in 0..1000 {
        let n = r.random_range(1..=40);
        let p = r.random_range(1..=9);
        let g = support::random_graph(&mut r, n, p, 10);
        let a: Vec<bool> = (0..n).map(|_| r.random_ratio(1, 3)).collect();
        let b = n - a.iter().filter(|&&x| x).count();
        derandomize_one(&g, r.random_range(0..=n), &a, r.random_range(0..=b))?;
        runs += 1;
    }
    Ok(format!(
        "{runs} uniform/extension pairs within their exact bounds, traces non-increasing"
    ))
}

fn triangle_weight_suite() -> Outcome {
    let mut checked = 0usize;
    for n in 3..=9 {
        for rows in all_graphs(n) {
            let mut t = 0usize;
            let mut best = 0usize;
            for u in 0..n {
                for v in u + 1..n {
                    for w in v + 1..n {
                        if rows[u] >> v & 1 == 1 && rows[u] >> w & 1 == 1 && rows[v] >> w & 1 == 1 {
                            t += 1;
                            let d = |x: usize, y: usize| (rows[x] & rows[y]).count_ones() as usize;
                            best = best.max(d(u, v) + d(v, w) + d(u, w));
                        }
                    }
                }
            }
            if t == 0 {
                continue;
            }
            let e = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
            let ht = heaviest_triangle(&graph_of(rows)).map_err(|err| err.to_string())?;
            ensure!(ht.triangle_count == t, "triangle count {} vs {t}", ht.triangle_count);
            ensure!(ht.weight == best, "weight {} vs maximum {best}", ht.weight);
            ensure!(ht.weight * e >= 9 * t, "n={n}: weight {} < 9·{t}/{e}", ht.weight);
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs with a triangle, codegree sum >= 9t/e on all"))
}

/// Complement is three disjoint cliques of equal size.
fn is_balanced_three_partite(g: &Graph) -> bool {
    let comp = g.complement();
    let parts = comp.components();
    parts.len() == 3
        && parts
            .iter()
            .all(|p| p.len() * 3 == g.n() && p.iter().all(|&u| p.iter().all(|&v| u == v || comp.has_edge(u, v))))
}

fn pipeline_suite() -> Outcome {
    let corpus = support::regular_k4_free_corpus();
    let (mut equalities, mut turan_count) = (0usize, 0usize);
    for (name, g) in &corpus {
        let n = g.n();
        let report = find_sparse_half(g).map_err(|e| format!("{name}: {e}"))?;
        let best = &report.best;
        ensure!(best.size() == n / 2, "{name}: half has {} vertices", best.size());
        ensure!(
            18 * best.achieved <= n * n,
            "{name}: e(S) = {} above n²/18",
            best.achieved
        );
        if 18 * best.achieved == n * n {
            ensure!(
                is_balanced_three_partite(g),
                "{name}: equality off the balanced 3-partite graphs"
            );
            equalities += 1;
        }
        let min = brute_min(g, n / 2);
        ensure!(
            report.oracle_minimum == Some(min),
            "{name}: oracle {:?} vs exhaustive {min}",
            report.oracle_minimum
        );
        for c in &report.candidates {
            ensure!(
                c.achieved >= min,
                "{name}: {} achieved {} below the minimum {min}",
                c.route,
                c.achieved
            );
            ensure!(
                g.edges_within(&c.subset) == c.achieved,
                "{name}: {} miscounted",
                c.route
            );
        }
        if name.starts_with('T') {
            turan_count += 1;
            ensure!(
                report
                    .candidates
                    .iter()
                    .any(|c| c.route != Route::Oracle && c.achieved == min),
                "{name}: no constructive route reaches the minimum {min}"
            );
        }
    }
    Ok(format!(
        "{} instances, {equalities} equality cases (all balanced 3-partite), {turan_count} Turán instances matched",
        corpus.len()
    ))
}

fn blow_up_suite() -> Outcome {
    let mut r = rng(0x5eed_0009);
    for trial in 0..500 {
        let base_n = r.random_range(1..=8);
        let p = r.random_range(1..=9);
        let base = support::random_graph(&mut r, base_n, p, 10);
        let sizes: Vec<usize> = (0..base_n).map(|_| r.random_range(1..=5)).collect();
        let blow = generate(&GeneratorKind::BlowUp {
            base: Box::new(base),
            sizes,
        })
        .map_err(|e| e.to_string())?;
        let n = blow.graph.n();
        let s = VertexSubset::from_ids(n, (0..n).filter(|_| r.random_ratio(1, 2))).unwrap();
        let out = blow_up_round(&blow.graph, &blow.blocks, &s).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(out.len() == s.len(), "trial {trial}: size {} -> {}", s.len(), out.len());
        let (before, after) = (blow.graph.edges_within(&s), blow.graph.edges_within(&out));
        ensure!(after <= before, "trial {trial}: e(S) {before} -> {after}");
        let fractional = blow
            .blocks
            .iter()
            .filter(|b| {
                let inside = b.intersection(&out).len();
                inside > 0 && inside < b.len()
            })
            .count();
        ensure!(fractional <= 1, "trial {trial}: {fractional} fractional blocks");
    }
    Ok("500 random blow-ups: e(S) never increased, |S| kept, <= 1 fractional block".into())
}

fn bipartite_suite() -> Outcome {
    let t = make_bipartite(&turan(3, 12)).map_err(|e| e.to_string())?;
    ensure!(t.removed == 16 && 9 * t.removed == 144, "T3(12) removed {}", t.removed);
    ensure!(
        t.a.len() == 6 && t.b.len() == 6,
        "T3(12) parts {} and {}",
        t.a.len(),
        t.b.len()
    );
    let mut checked = 0;
    for (name, g) in support::regular_k4_free_corpus() {
        let n = g.n();
        if n % 2 == 1 {
            continue;
        }
        let bp = make_bipartite(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            bp.a.is_disjoint(&bp.b) && bp.a.len() + bp.b.len() == n,
            "{name}: not a partition"
        );
        ensure!(bp.a.len() == n / 2, "{name}: unbalanced");
        let removed = g.edges_within(&bp.a) + g.edges_within(&bp.b);
        ensure!(
            removed == bp.removed,
            "{name}: removed {} vs recount {removed}",
            bp.removed
        );
        ensure!(9 * removed <= n * n, "{name}: removed {removed} above n²/9");
        checked += 1;
    }
    Ok(format!(
        "T3(12) removes 16 with parts 6 and 6; {checked} even-n instances within n²/9"
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("certificate reproduction for ell and m", certificate_reproduction),
        ("sign of h and k", one_variable_signs),
        ("closed-form identities", closed_forms),
        ("oracle extremal suite", oracle_extremal_suite),
        ("triangle-free local density", triangle_free_suite),
        ("derandomization bounds", derandomization_suite),
        ("heaviest triangle weight", triangle_weight_suite),
        ("sparse-half pipeline", pipeline_suite),
        ("blow-up rounding", blow_up_suite),
        ("balanced bipartition", bipartite_suite),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
