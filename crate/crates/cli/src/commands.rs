use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use sparse_halves::certifier::{
    certify_sign, closed_form_checks, replay, standard_problem, FunctionId, SignCertificate, Status,
};
use sparse_halves::graph::{clique_check, generate, parse_graph6, to_graph6, GeneratorKind};
use sparse_halves::oracle::{
    check_extremal_characterization, is_balanced_complete_multipartite, min_edges_k_subset_with_cap, ExtremalMode,
    Verdict, MAX_ORACLE_N,
};
use sparse_halves::scalar::RationalJson;
use sparse_halves::selectors::{
    best_outcome, derandomized_uniform_subset, find_sparse_half_with, max_cut_search, sparse_half_from_cut,
    HalfVerdict, Route, RouteFamily, SearchOptions, SelectionOutcome, DEFAULT_EXACT_CUT_THRESHOLD, DENSE_MIN_DEGREE,
    MEDIUM_MAX_DENSITY, SPARSE_MAX_DENSITY,
};
use sparse_halves::{ratio, Graph, Rational};

use crate::args::{
    CertTarget, CertifyArgs, EndpointChoice, GenKind, GraphInput, ModeChoice, OracleArgs, RouteChoice, SparseHalfArgs,
    VerifyArgs,
};
use crate::error::CliError;

pub struct Output {
    inner: BufWriter<io::Stdout>,
}

impl Output {
    pub fn stdout() -> Self {
        Output {
            inner: BufWriter::new(io::stdout()),
        }
    }

    pub fn line(&mut self, v: &Value) -> Result<(), CliError> {
        writeln!(self.inner, "{v}")?;
        self.inner.flush()?;
        Ok(())
    }

    fn raw(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.inner, "{s}")?;
        self.inner.flush()?;
        Ok(())
    }
}

fn frac(r: &Rational) -> Value {
    serde_json::to_value(RationalJson(r)).expect("rational serializes")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn header(argv: &[String]) -> Value {
    json!({"tool": "sparse-halves", "version": env!("CARGO_PKG_VERSION"), "command": argv})
}

/// Decimal (`0.003`) or fraction (`3/1000`) to an exact rational.
pub fn parse_fraction(text: &str) -> Result<Rational, CliError> {
    let bad = || CliError::Usage(format!("cannot read {text:?} as a number"));
    let t = text.trim();
    if t.contains('/') {
        return Rational::from_str(t).map_err(|_| bad());
    }
    let (neg, digits) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, dec) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && dec.is_empty() || !int.chars().chain(dec.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num = format!(
        "{}{}{}",
        if neg { "-" } else { "" },
        if int.is_empty() { "0" } else { int },
        dec
    );
    let den = format!("1{}", "0".repeat(dec.len()));
    Rational::from_str(&format!("{num}/{den}")).map_err(|_| bad())
}

/// Non-blank input lines with their 1-based numbers.
fn read_lines(input: &GraphInput) -> Result<Vec<(usize, String)>, CliError> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input.file).map_err(|e| CliError::Io(format!("{}: {e}", input.file.display())))?
    };
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.trim().to_string()))
        .collect())
}

fn read_graphs(input: &GraphInput) -> Result<Vec<(usize, String, Graph)>, CliError> {
    read_lines(input)?
        .into_iter()
        .map(|(i, l)| {
            let g = parse_graph6(&l).map_err(|e| CliError::from(e).at_line(i))?;
            Ok((i, to_graph6(&g), g))
        })
        .collect()
}

/// Runs `f` on every graph in parallel and emits results in input order,
/// stopping at the first error.
fn for_each_graph<F>(out: &mut Output, graphs: &[(usize, String, Graph)], f: F) -> Result<(), CliError>
where
    F: Fn(usize, &str, &Graph) -> Result<Value, CliError> + Sync,
{
    let results: Vec<Result<Value, CliError>> = graphs
        .par_iter()
        .map(|(i, g6, g)| {
            let start = Instant::now();
            let mut v = f(*i, g6, g).map_err(|e| e.at_line(*i))?;
            v["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
            Ok(v)
        })
        .collect();
    for r in results {
        out.line(&r?)?;
    }
    Ok(())
}

pub fn explain() -> Value {
    let t = |name: &str, (num, den): (i64, i64), meaning: &str| json!({"name": name, "value": frac(&ratio(num, den)), "meaning": meaning});
    json!({"explain": {
        "thresholds": [
            t("sparse_max_density", SPARSE_MAX_DENSITY, "cut route guaranteed strict for e/n² ≤ 0.26"),
            t("dense_density", (295, 1000), "for e/n² ≥ 0.295 a regular K4-free graph has δ ≥ 0.59n"),
            t("medium_max_density", MEDIUM_MAX_DENSITY, "scheme route guaranteed for regular graphs with 1/4 ≤ e/n² ≤ 0.297"),
            t("dense_min_degree", DENSE_MIN_DEGREE, "dense route guaranteed for δ/n ≥ 0.59"),
            t("half_bound", (1, 18), "target: e(S) ≤ n²/18 for |S| = ⌊n/2⌋"),
        ],
        "oracle_threshold": sparse_halves::selectors::DEFAULT_ORACLE_THRESHOLD,
        "exact_cut_threshold": DEFAULT_EXACT_CUT_THRESHOLD,
        "exit_codes": {"ok": 0, "io": 1, "usage": 2, "parse": 3, "precondition": 4, "budget": 5, "violation": 6},
    }})
}

fn named_graph(name: &str) -> Result<Graph, CliError> {
    let kind = match name {
        "petersen" => GeneratorKind::Petersen,
        _ => {
            let num = |s: &str| s.parse::<usize>().ok();
            match (name.get(..1), name.get(1..).and_then(num)) {
                (Some("c"), Some(n)) => GeneratorKind::Cycle { n },
                (Some("k"), Some(n)) => GeneratorKind::Complete { n },
                _ => return Ok(parse_graph6(name)?),
            }
        }
    };
    Ok(generate(&kind)?.graph)
}

pub fn gen(out: &mut Output, kind: &GenKind) -> Result<(), CliError> {
    let kind = match kind {
        GenKind::Turan { parts, n } => GeneratorKind::Turan { parts: *parts, n: *n },
        GenKind::Blowup { base, sizes } => {
            let base = named_graph(base)?;
            let sizes = if sizes.len() == 1 {
                vec![sizes[0]; base.n()]
            } else {
                sizes.clone()
            };
            GeneratorKind::BlowUp {
                base: Box::new(base),
                sizes,
            }
        }
        GenKind::Petersen => GeneratorKind::Petersen,
        GenKind::C5 => GeneratorKind::Cycle { n: 5 },
        GenKind::Cycle { n } => GeneratorKind::Cycle { n: *n },
        GenKind::Complete { n } => GeneratorKind::Complete { n: *n },
        GenKind::Circulant { n, jumps } => GeneratorKind::Circulant {
            n: *n,
            jumps: jumps.clone(),
        },
    };
    out.raw(&to_graph6(&generate(&kind)?.graph))
}

fn families(route: RouteChoice) -> Vec<RouteFamily> {
    match route {
        RouteChoice::Auto => RouteFamily::ALL.to_vec(),
        RouteChoice::Sparse => vec![RouteFamily::Cut],
        RouteChoice::Medium => vec![RouteFamily::Medium],
        RouteChoice::Dense => vec![RouteFamily::Dense],
        RouteChoice::Oracle => vec![RouteFamily::Oracle],
    }
}

/// Uniform selection, the cut route when `k = ⌊n/2⌋`, and the oracle, with
/// guarantees withheld when the graph has a K4.
fn best_effort(
    g: &Graph,
    k: usize,
    routes: &[RouteFamily],
    oracle_limit: usize,
    has_k4: bool,
) -> Result<(Vec<SelectionOutcome>, Option<usize>), CliError> {
    let n = g.n();
    let mut candidates = vec![derandomized_uniform_subset(g, k)?];
    if k == n / 2 && routes.contains(&RouteFamily::Cut) {
        let mc = max_cut_search(g, DEFAULT_EXACT_CUT_THRESHOLD);
        candidates.push(sparse_half_from_cut(g, &mc.side)?);
    }
    let mut minimum = None;
    if routes.contains(&RouteFamily::Oracle) && n <= oracle_limit {
        let r = min_edges_k_subset_with_cap(g, k, oracle_limit)?;
        minimum = Some(r.minimum);
        candidates.push(SelectionOutcome::new(
            g,
            r.witness,
            ratio(r.minimum as i64, 1),
            Route::Oracle,
        ));
    }
    if has_k4 {
        candidates = candidates.into_iter().map(|o| o.with_guarantee(false)).collect();
    }
    Ok((candidates, minimum))
}

pub fn sparse_half(out: &mut Output, argv: &[String], a: &SparseHalfArgs, explain: bool) -> Result<(), CliError> {
    let graphs = read_graphs(&a.input)?;
    out.line(&header(argv))?;
    let cap = a.cap.oracle_cap.min(MAX_ORACLE_N);
    let oracle_limit = a.oracle_threshold.min(cap);
    let routes = families(a.route);
    let violations = std::sync::Mutex::new(Vec::new());
    for_each_graph(out, &graphs, |line, g6, g| {
        let n = g.n();
        let k4 = clique_check(g, 4)?;
        if let Some(q) = k4.as_ref().filter(|_| !a.allow_k4) {
            return Err(CliError::Precondition(format!(
                "graph contains a K4 on vertices {q:?} (use --allow-k4)"
            )));
        }
        let k = a.half_size.unwrap_or(n / 2);
        if k > n {
            return Err(CliError::Precondition(format!("half size {k} exceeds n = {n}")));
        }
        let mut rec = json!({
            "line": line, "graph6": g6, "n": n, "e": g.edge_count(), "c": frac(g.density()),
            "regular": g.is_regular(), "k4_free": k4.is_none(), "half_size": k,
        });
        let (best, candidates, skipped, oracle_minimum) = if k4.is_some() || k != n / 2 {
            let (candidates, minimum) = best_effort(g, k, &routes, oracle_limit, k4.is_some())?;
            (
                best_outcome(candidates.iter().cloned()),
                candidates,
                Vec::new(),
                minimum,
            )
        } else {
            let options = SearchOptions {
                oracle_threshold: oracle_limit,
                exact_cut_threshold: DEFAULT_EXACT_CUT_THRESHOLD,
                routes: routes.clone(),
            };
            match find_sparse_half_with(g, &options) {
                Ok(r) => (Some(r.best), r.candidates, r.skipped, r.oracle_minimum),
                Err(e @ sparse_halves::Error::NoBranch(_)) => {
                    rec["error"] = json!(e.to_string());
                    return Ok(rec);
                }
                Err(e) => return Err(e.into()),
            }
        };
        let best = best.ok_or_else(|| CliError::Precondition("no route produced a subset".into()))?;
        rec["best"] = to_json(&best);
        if k == n / 2 {
            let verdict = HalfVerdict::classify(best.achieved, n);
            rec["verdict"] = to_json(&verdict);
            if verdict == HalfVerdict::Equality {
                rec["extremal_structure"] = json!(is_balanced_complete_multipartite(g, 3));
            }
            if let Some(m) = oracle_minimum {
                if k4.is_none() && g.is_regular() && 18 * m > n * n {
                    violations.lock().expect("lock").push((line, g6.to_string(), m));
                }
            }
        }
        rec["oracle_minimum"] = json!(oracle_minimum);
        rec["candidates"] = to_json(&candidates);
        rec["skipped"] = json!(skipped
            .iter()
            .map(|(f, m)| json!({"route": f.to_string(), "reason": m}))
            .collect::<Vec<_>>());
        if explain {
            let c = g.density();
            rec["dispatch"] = json!({
                "c_le_sparse_max": *c <= ratio(SPARSE_MAX_DENSITY.0, SPARSE_MAX_DENSITY.1),
                "regular_and_c_le_medium_max": g.is_regular() && *c <= ratio(MEDIUM_MAX_DENSITY.0, MEDIUM_MAX_DENSITY.1),
                "min_degree_ge_dense_min": 100 * g.min_degree() >= 59 * n,
                "oracle_ran": oracle_minimum.is_some(),
            });
        }
        Ok(rec)
    })?;
    let violations = violations.into_inner().expect("lock");
    if let Some((line, g6, m)) = violations.first() {
        eprintln!("==== CONJECTURE-VIOLATION ====");
        for (line, g6, m) in &violations {
            eprintln!("line {line}: regular K4-free graph with every half spanning ≥ {m} > n²/18 edges");
            eprintln!("reproducer: {g6}");
        }
        return Err(CliError::Violation(format!(
            "line {line}: oracle minimum {m} exceeds n²/18 for {g6}"
        )));
    }
    Ok(())
}

fn function_of(t: CertTarget) -> Option<FunctionId> {
    match t {
        CertTarget::H => Some(FunctionId::H),
        CertTarget::K => Some(FunctionId::K),
        CertTarget::Ell => Some(FunctionId::Ell),
        CertTarget::M => Some(FunctionId::M),
        _ => None,
    }
}

fn cert_path(out: Option<&PathBuf>, f: FunctionId, many: bool) -> PathBuf {
    let name = format!("{f}.cert.json");
    match out {
        Some(p) if many => p.join(name),
        Some(p) => p.clone(),
        None => PathBuf::from(name),
    }
}

fn certify_one(out: &mut Output, f: FunctionId, a: &CertifyArgs, path: &Path) -> Result<Option<CliError>, CliError> {
    let mut problem = standard_problem(f).expect("certifiable function");
    if let Some(m) = &a.margin {
        problem = problem.with_margin(Some(parse_fraction(m)?));
    }
    let start = Instant::now();
    let cert = match a.endpoint {
        EndpointChoice::F64 => certify_sign::<f64>(&problem, a.budget)?,
        EndpointChoice::F32 => certify_sign::<f32>(&problem, a.budget)?,
    };
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    fs::write(path, cert.to_json()?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let undecided = match &cert.status {
        Status::Failed { undecided } | Status::BudgetExhausted { undecided } => undecided.len(),
        _ => 0,
    };
    let mut rec = json!({
        "function": f.name(), "status": cert.status.label(), "sign": to_json(&cert.sign),
        "margin": cert.margin, "leaves": cert.stats.leaves, "boxes_evaluated": cert.stats.boxes_evaluated,
        "max_depth": cert.stats.max_depth, "tightest_bound": cert.stats.tightest_bound,
        "certificate": path.display().to_string(), "elapsed_ms": elapsed,
    });
    if undecided > 0 {
        rec["undecided"] = to_json(match &cert.status {
            Status::Failed { undecided } | Status::BudgetExhausted { undecided } => undecided,
            _ => unreachable!(),
        });
    }
    if let Status::Refuted { point, bound } = &cert.status {
        rec["refuting_point"] = json!(point);
        rec["refuting_bound"] = json!(bound);
    }
    out.line(&rec)?;
    Ok(match cert.status {
        Status::Proved => None,
        Status::Refuted { .. } => Some(CliError::Violation(format!("{f}: sign claim refuted"))),
        _ => Some(CliError::Budget(format!("{f}: {undecided} undecided boxes"))),
    })
}

pub fn certify(out: &mut Output, argv: &[String], a: &CertifyArgs) -> Result<(), CliError> {
    out.line(&header(argv))?;
    if let Some(path) = &a.replay {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let cert = SignCertificate::from_json(&text)?;
        let start = Instant::now();
        let report = replay(&cert).map_err(|e| CliError::Violation(format!("replay failed: {e}")))?;
        let mut rec = to_json(&report);
        rec["status"] = json!("replayed");
        rec["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
        return out.line(&rec);
    }
    let target = a.target.expect("clap requires a target or --replay");
    let mut worst: Option<CliError> = None;
    let mut note = |e: Option<CliError>| {
        if let Some(e) = e {
            if worst.as_ref().is_none_or(|w| e.code() > w.code()) {
                worst = Some(e);
            }
        }
    };
    if matches!(target, CertTarget::ClosedForms | CertTarget::All) {
        match closed_form_checks() {
            Ok(r) => out.line(&json!({"closed_forms": to_json(&r), "status": "passed"}))?,
            Err(e) => {
                out.line(&json!({"closed_forms": e.to_string(), "status": "failed"}))?;
                note(Some(CliError::Violation(e.to_string())));
            }
        }
    }
    let functions: Vec<FunctionId> = match target {
        CertTarget::All => vec![FunctionId::H, FunctionId::K, FunctionId::Ell, FunctionId::M],
        t => function_of(t).into_iter().collect(),
    };
    let many = target == CertTarget::All;
    if many {
        if let Some(dir) = &a.out {
            fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        }
    }
    for f in functions {
        let path = cert_path(a.out.as_ref(), f, many);
        note(certify_one(out, f, a, &path)?);
    }
    worst.map_or(Ok(()), Err)
}

pub fn oracle(out: &mut Output, argv: &[String], a: &OracleArgs) -> Result<(), CliError> {
    let graphs = read_graphs(&a.input)?;
    out.line(&header(argv))?;
    let cap = if a.override_cap {
        MAX_ORACLE_N
    } else {
        a.cap.oracle_cap.min(MAX_ORACLE_N)
    };
    for_each_graph(out, &graphs, |line, g6, g| {
        let k = a.size.unwrap_or(g.n() / 2);
        let r = min_edges_k_subset_with_cap(g, k, cap).map_err(|e| match e {
            sparse_halves::Error::OracleCap { .. } => CliError::Precondition(format!("{e} (use --override-cap)")),
            e => e.into(),
        })?;
        Ok(json!({
            "line": line, "graph6": g6, "n": g.n(), "k": k, "minimum": r.minimum,
            "witness": to_json(&r.witness), "subsets_examined": r.subsets_examined, "pruned": r.pruned,
        }))
    })
}

pub fn verify_extremal(out: &mut Output, argv: &[String], a: &VerifyArgs) -> Result<(), CliError> {
    let alpha = || {
        a.alpha
            .as_deref()
            .ok_or_else(|| CliError::Usage("--alpha is required for this mode".into()))
            .and_then(parse_fraction)
    };
    let mode = match a.mode {
        ModeChoice::SparseHalf => ExtremalMode::SparseHalf,
        ModeChoice::TriangleFree => ExtremalMode::TriangleFree { alpha: alpha()? },
        ModeChoice::Bipartite => ExtremalMode::Bipartite { alpha: alpha()? },
    };
    let graphs = read_graphs(&a.input)?;
    out.line(&header(argv))?;
    let results: Vec<Result<(Value, bool), CliError>> = graphs
        .par_iter()
        .map(|(line, g6, g)| {
            let start = Instant::now();
            let r = check_extremal_characterization(g, &mode).map_err(|e| CliError::from(e).at_line(*line))?;
            let violates = r.verdict == Verdict::Violates;
            let mut rec = json!({"line": line, "graph6": g6, "n": g.n()});
            for (key, v) in to_json(&r).as_object().expect("report is an object") {
                rec[key] = v.clone();
            }
            rec["elapsed_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
            Ok((rec, violates))
        })
        .collect();
    for r in results {
        let (rec, violates) = r?;
        out.line(&rec)?;
        if violates {
            eprintln!("==== VIOLATES ====");
            eprintln!(
                "line {}: every {}-set meets the threshold but the graph is not extremal",
                rec["line"], rec["k"]
            );
            eprintln!("reproducer: {}", rec["reproducer"].as_str().unwrap_or_default());
            return Err(CliError::Violation(format!(
                "line {}: characterization violated",
                rec["line"]
            )));
        }
    }
    Ok(())
}
