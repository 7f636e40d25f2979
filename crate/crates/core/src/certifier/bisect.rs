use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::dual::Dual;
use super::functions::FunctionId;
use super::hexfloat::{from_hex, to_hex};
use super::interval::{round_down, round_up, Endpoint, Interval};
use crate::{ratio, Error, Rational, Result};

/// Default cap on evaluated boxes per certificate.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Width of the collars cut around singular edges of a domain.
pub const COLLAR_WIDTH: (i64, i64) = (1, 10_000);

/// At most this many undecided boxes are listed in a failed certificate.
const MAX_LISTED: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// Axis-aligned piece of a domain with exact rational corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub lo: Vec<Rational>,
    pub hi: Vec<Rational>,
    /// Touches a point where the function is undefined.
    pub collar: bool,
}

/// A sign claim: `function` has `sign` (clearing `margin`) on `domain`,
/// which `regions` tile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub function: FunctionId,
    pub domain: Vec<(Rational, Rational)>,
    pub regions: Vec<Region>,
    pub sign: Sign,
    /// Positive: value > margin. Negative: value < −margin. Defaults to 0.
    pub margin: Option<Rational>,
}

impl Problem {
    /// Single-region problem over the whole domain.
    pub fn simple(
        function: FunctionId,
        domain: Vec<(Rational, Rational)>,
        sign: Sign,
        margin: Option<Rational>,
    ) -> Self {
        let region = Region {
            lo: domain.iter().map(|d| d.0.clone()).collect(),
            hi: domain.iter().map(|d| d.1.clone()).collect(),
            collar: false,
        };
        Problem {
            function,
            domain,
            regions: vec![region],
            sign,
            margin,
        }
    }

    pub fn with_margin(mut self, margin: Option<Rational>) -> Self {
        self.margin = margin;
        self
    }

    fn validate(&self) -> Result<()> {
        let d = self.function.arity();
        if self.domain.len() != d {
            return Err(Error::Certificate(format!(
                "{} takes {d} variables, domain has {}",
                self.function,
                self.domain.len()
            )));
        }
        for (lo, hi) in &self.domain {
            if lo > hi {
                return Err(Error::Certificate(format!("empty domain [{lo}, {hi}]")));
            }
        }
        for r in &self.regions {
            if r.lo.len() != d || r.hi.len() != d || r.lo.iter().zip(&r.hi).any(|(a, b)| a > b) {
                return Err(Error::Certificate("malformed region".into()));
            }
        }
        check_cover(&self.domain, &self.regions)
    }
}

/// Every cell of the grid spanned by the region corners that lies in the
/// domain must lie in some region (exact rational test).
fn check_cover(domain: &[(Rational, Rational)], regions: &[Region]) -> Result<()> {
    let d = domain.len();
    let mut cuts: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (i, (lo, hi)) in domain.iter().enumerate() {
        let mut c = vec![lo.clone(), hi.clone()];
        for r in regions {
            for v in [&r.lo[i], &r.hi[i]] {
                if lo < v && v < hi {
                    c.push(v.clone());
                }
            }
        }
        c.sort();
        c.dedup();
        cuts.push(c);
    }
    // probe the centre of every cell, plus every cut point for degenerate axes
    let probes: Vec<Vec<Rational>> = cuts
        .iter()
        .map(|c| {
            let mut p = c.clone();
            p.extend(c.windows(2).map(|w| (&w[0] + &w[1]) / ratio(2, 1)));
            p
        })
        .collect();
    let mut idx = vec![0usize; d];
    loop {
        let point: Vec<&Rational> = (0..d).map(|i| &probes[i][idx[i]]).collect();
        let covered = regions
            .iter()
            .any(|r| (0..d).all(|i| &r.lo[i] <= point[i] && point[i] <= &r.hi[i]));
        if !covered {
            let pt: Vec<String> = point.iter().map(|p| p.to_string()).collect();
            return Err(Error::Certificate(format!(
                "regions do not cover the domain near ({})",
                pt.join(", ")
            )));
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(());
            }
            idx[i] += 1;
            if idx[i] < probes[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// The inequality claims consumed by the medium-density case analysis.
///
/// * `h > 0` on `c ∈ [1/4, 0.297]`;
/// * `k < 0` on `c ∈ [1/4, 5/18]`;
/// * `ℓ > 0.003` on `c ∈ [1/4, 1/3]`, `x ∈ [0, 1/2]`, with collars of width
///   `10⁻⁴` at both ends of `x`;
/// * `m > 0.099` on `x ∈ [1/2, 1]`, `c ∈ [1/4, 1/3]`, with a collar strip at
///   `x = 1` and a collar square at the corner `(1/2, 1/3)` where
///   `1 − 2(g − x)` vanishes.
///
/// Other functions have no standard claim.
pub fn standard_problem(function: FunctionId) -> Option<Problem> {
    let q = ratio(1, 4);
    let third = ratio(1, 3);
    let half = ratio(1, 2);
    let one = ratio(1, 1);
    let zero = ratio(0, 1);
    let delta = ratio(COLLAR_WIDTH.0, COLLAR_WIDTH.1);
    let region = |lo: [&Rational; 2], hi: [&Rational; 2], collar: bool| Region {
        lo: lo.iter().map(|r| (*r).clone()).collect(),
        hi: hi.iter().map(|r| (*r).clone()).collect(),
        collar,
    };
    match function {
        FunctionId::H => Some(Problem::simple(
            function,
            vec![(q, ratio(297, 1000))],
            Sign::Positive,
            None,
        )),
        FunctionId::K => Some(Problem::simple(function, vec![(q, ratio(5, 18))], Sign::Negative, None)),
        FunctionId::Ell => {
            let x_lo = delta.clone();
            let x_hi = &half - &delta;
            Some(Problem {
                function,
                domain: vec![(q.clone(), third.clone()), (zero.clone(), half.clone())],
                regions: vec![
                    region([&q, &x_lo], [&third, &x_hi], false),
                    region([&q, &zero], [&third, &x_lo], true),
                    region([&q, &x_hi], [&third, &half], true),
                ],
                sign: Sign::Positive,
                margin: Some(ratio(3, 1000)),
            })
        }
        FunctionId::M => {
            let x_a = &half + &delta;
            let x_b = &one - &delta;
            let c_a = &third - &delta;
            Some(Problem {
                function,
                domain: vec![(half.clone(), one.clone()), (q.clone(), third.clone())],
                regions: vec![
                    region([&half, &q], [&x_a, &c_a], false),
                    region([&x_a, &q], [&x_b, &third], false),
                    region([&half, &c_a], [&x_a, &third], true),
                    region([&x_b, &q], [&one, &third], true),
                ],
                sign: Sign::Positive,
                margin: Some(ratio(99, 1000)),
            })
        }
        _ => None,
    }
}

/// Enclosure of `function` over `bx`: the natural interval extension
/// intersected with the mean-value form `f(mid) + ∇f(bx)·(bx − mid)`.
pub fn interval_eval<F: Endpoint>(function: FunctionId, bx: &[Interval<F>]) -> Interval<F> {
    let natural = function.eval(bx);
    let vars: Vec<Dual<Interval<F>, 2>> = bx.iter().enumerate().map(|(i, x)| Dual::variable(*x, i)).collect();
    let grad = function.eval(&vars).grad;
    let mids: Vec<Interval<F>> = bx.iter().map(|x| Interval::point(x.mid())).collect();
    let mut mv = function.eval(&mids);
    for (i, x) in bx.iter().enumerate() {
        mv = mv + grad[i] * (*x - mids[i]);
    }
    natural.intersect(&mv).unwrap_or(natural)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxRecord {
    pub region: usize,
    pub lo: Vec<String>,
    pub hi: Vec<String>,
    pub bound: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    /// Exact corners.
    pub lo: Vec<String>,
    pub hi: Vec<String>,
    pub collar: bool,
    /// `"+inf"` / `"-inf"` when the enclosure over the collar is unbounded
    /// in the direction of the claimed sign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divergence: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    Proved,
    /// Boxes that reached float resolution without a decision.
    Failed {
        undecided: Vec<BoxRecord>,
    },
    BudgetExhausted {
        undecided: Vec<BoxRecord>,
    },
    /// A point whose enclosure lies entirely on the wrong side.
    Refuted {
        point: Vec<String>,
        bound: [String; 2],
    },
}

impl Status {
    pub fn is_proved(&self) -> bool {
        matches!(self, Status::Proved)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Failed { .. } => "failed",
            Status::BudgetExhausted { .. } => "budget_exhausted",
            Status::Refuted { .. } => "refuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertStats {
    pub boxes_evaluated: usize,
    pub leaves: usize,
    pub max_depth: usize,
    /// Weakest certified bound over non-collar leaves: the smallest lower end
    /// for a positive claim, the largest upper end for a negative one.
    pub tightest_bound: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub function: FunctionId,
    pub variables: Vec<String>,
    pub endpoint: String,
    /// Exact per-variable bounds.
    pub domain: Vec<[String; 2]>,
    pub sign: Sign,
    pub margin: Option<String>,
    pub regions: Vec<RegionRecord>,
    /// Non-collar leaves, depth-first per region.
    pub boxes: Vec<BoxRecord>,
    /// Collar leaves, depth-first per region.
    pub collars: Vec<BoxRecord>,
    pub status: Status,
    pub stats: CertStats,
}

impl SignCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the claim the certificate is about.
    pub fn problem(&self) -> Result<Problem> {
        let parse = |s: &String| Rational::from_str(s).map_err(|_| Error::Certificate(format!("bad rational {s:?}")));
        let domain = self
            .domain
            .iter()
            .map(|[a, b]| Ok((parse(a)?, parse(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let regions = self
            .regions
            .iter()
            .map(|r| {
                Ok(Region {
                    lo: r.lo.iter().map(parse).collect::<Result<_>>()?,
                    hi: r.hi.iter().map(parse).collect::<Result<_>>()?,
                    collar: r.collar,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let margin = self.margin.as_ref().map(parse).transpose()?;
        Ok(Problem {
            function: self.function,
            domain,
            regions,
            sign: self.sign,
            margin,
        })
    }
}

/// Pass/refute thresholds as endpoint values.
struct Target<F> {
    sign: Sign,
    /// Positive: pass iff `lo > pass`. Negative: pass iff `hi < pass`.
    pass: F,
    /// Positive: refuted iff `hi <= refute`. Negative: iff `lo >= refute`.
    refute: F,
}

impl<F: Endpoint> Target<F> {
    fn new(sign: Sign, margin: Option<&Rational>) -> Self {
        let m = margin.cloned().unwrap_or_else(|| ratio(0, 1));
        match sign {
            Sign::Positive => Target {
                sign,
                pass: round_up(&m),
                refute: round_down(&m),
            },
            Sign::Negative => Target {
                sign,
                pass: round_down(&-&m),
                refute: round_up(&-&m),
            },
        }
    }

    fn passes(&self, b: &Interval<F>) -> bool {
        match self.sign {
            Sign::Positive => b.lo() > self.pass,
            Sign::Negative => b.hi() < self.pass,
        }
    }

    fn refutes(&self, b: &Interval<F>) -> bool {
        match self.sign {
            Sign::Positive => b.hi() <= self.refute,
            Sign::Negative => b.lo() >= self.refute,
        }
    }

    fn weaker(&self, a: F, b: &Interval<F>) -> F {
        match self.sign {
            Sign::Positive => a.min(b.lo()),
            Sign::Negative => a.max(b.hi()),
        }
    }
}

fn root_box<F: Endpoint>(region: &Region) -> Vec<Interval<F>> {
    region
        .lo
        .iter()
        .zip(&region.hi)
        .map(|(a, b)| Interval::new(round_down(a), round_up(b)))
        .collect()
}

/// Deterministic split: widest dimension relative to the root box, lowest
/// index on ties, at the rounded midpoint. `None` at float resolution.
type Halves<F> = (Vec<Interval<F>>, Vec<Interval<F>>);

fn split<F: Endpoint>(bx: &[Interval<F>], root: &[Interval<F>]) -> Option<Halves<F>> {
    let mut best: Option<(usize, F)> = None;
    for (i, (b, r)) in bx.iter().zip(root).enumerate() {
        let rw = r.hi() - r.lo();
        if rw.is_zero() {
            continue;
        }
        let rel = (b.hi() - b.lo()) / rw;
        if best.is_none_or(|(_, w)| rel > w) {
            best = Some((i, rel));
        }
    }
    let (i, _) = best?;
    let mid = bx[i].mid();
    if !(bx[i].lo() < mid && mid < bx[i].hi()) {
        return None;
    }
    let mut left = bx.to_vec();
    let mut right = bx.to_vec();
    left[i] = Interval::new(bx[i].lo(), mid);
    right[i] = Interval::new(mid, bx[i].hi());
    Some((left, right))
}

fn record<F: Endpoint>(region: usize, bx: &[Interval<F>], bound: &Interval<F>) -> BoxRecord {
    BoxRecord {
        region,
        lo: bx.iter().map(|b| to_hex(b.lo())).collect(),
        hi: bx.iter().map(|b| to_hex(b.hi())).collect(),
        bound: [to_hex(bound.lo()), to_hex(bound.hi())],
    }
}

/// Proves `problem` by bisection, evaluating at most `budget` boxes.
///
/// Never reports `Proved` without full coverage; a refuting point stops the
/// search immediately.
pub fn certify_sign<F: Endpoint>(problem: &Problem, budget: usize) -> Result<SignCertificate> {
    problem.validate()?;
    let f = problem.function;
    let target = Target::<F>::new(problem.sign, problem.margin.as_ref());
    let mut boxes = Vec::new();
    let mut collars = Vec::new();
    let mut undecided = Vec::new();
    let mut evaluated = 0usize;
    let mut max_depth = 0usize;
    let mut tightest = match problem.sign {
        Sign::Positive => F::infinity(),
        Sign::Negative => F::neg_infinity(),
    };
    let mut regions = Vec::with_capacity(problem.regions.len());
    let mut status = None;

    'regions: for (ri, region) in problem.regions.iter().enumerate() {
        let root = root_box::<F>(region);
        let root_bound = interval_eval(f, &root);
        let divergence = match problem.sign {
            _ if !region.collar => None,
            Sign::Positive if root_bound.hi() == F::infinity() => Some("+inf".to_string()),
            Sign::Negative if root_bound.lo() == F::neg_infinity() => Some("-inf".to_string()),
            _ => None,
        };
        regions.push(RegionRecord {
            lo: region.lo.iter().map(|r| r.to_string()).collect(),
            hi: region.hi.iter().map(|r| r.to_string()).collect(),
            collar: region.collar,
            divergence,
        });
        let out = if region.collar { &mut collars } else { &mut boxes };
        let mut stack = vec![(root.clone(), 0usize)];
        while let Some((bx, depth)) = stack.pop() {
            if evaluated >= budget {
                undecided.push(record(ri, &bx, &Interval::entire()));
                undecided.extend(
                    stack
                        .iter()
                        .take(MAX_LISTED)
                        .map(|(b, _)| record(ri, b, &Interval::entire())),
                );
                status = Some(Status::BudgetExhausted {
                    undecided: std::mem::take(&mut undecided),
                });
                break 'regions;
            }
            evaluated += 1;
            max_depth = max_depth.max(depth);
            let bound = interval_eval(f, &bx);
            if target.passes(&bound) {
                if !region.collar {
                    tightest = target.weaker(tightest, &bound);
                }
                out.push(record(ri, &bx, &bound));
                continue;
            }
            let point: Vec<Interval<F>> = bx.iter().map(|b| Interval::point(b.mid())).collect();
            let at_point = interval_eval(f, &point);
            if target.refutes(&at_point) {
                status = Some(Status::Refuted {
                    point: point.iter().map(|p| to_hex(p.lo())).collect(),
                    bound: [to_hex(at_point.lo()), to_hex(at_point.hi())],
                });
                break 'regions;
            }
            match split(&bx, &root) {
                Some((left, right)) => {
                    stack.push((right, depth + 1));
                    stack.push((left, depth + 1));
                }
                None => {
                    if undecided.len() < MAX_LISTED {
                        undecided.push(record(ri, &bx, &bound));
                    }
                }
            }
        }
    }
    let status = status.unwrap_or(if undecided.is_empty() {
        Status::Proved
    } else {
        Status::Failed { undecided }
    });
    let leaves = boxes.len() + collars.len();
    Ok(SignCertificate {
        function: f,
        variables: f.variables().iter().map(|s| s.to_string()).collect(),
        endpoint: F::NAME.to_string(),
        domain: problem
            .domain
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect(),
        sign: problem.sign,
        margin: problem.margin.as_ref().map(|m| m.to_string()),
        regions,
        boxes,
        collars,
        status,
        stats: CertStats {
            boxes_evaluated: evaluated,
            leaves,
            max_depth,
            tightest_bound: to_hex(tightest),
        },
    })
}

/// Outcome of re-checking a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub function: FunctionId,
    pub leaves_checked: usize,
    /// Leaves whose recomputed enclosure differs from the stored one (the
    /// sign still holds for every checked leaf, or replay fails).
    pub bound_mismatches: usize,
}

/// Re-derives coverage and re-evaluates every leaf of a proved certificate.
pub fn replay(cert: &SignCertificate) -> Result<ReplayReport> {
    match cert.endpoint.as_str() {
        "f64" => replay_with::<f64>(cert),
        "f32" => replay_with::<f32>(cert),
        other => Err(Error::Certificate(format!("unknown endpoint type {other:?}"))),
    }
}

fn parse_box<F: Endpoint>(rec: &BoxRecord) -> Result<(Vec<Interval<F>>, Interval<F>)> {
    if rec.lo.len() != rec.hi.len() {
        return Err(Error::Certificate("box corner lengths differ".into()));
    }
    let mut bx = Vec::with_capacity(rec.lo.len());
    for (a, b) in rec.lo.iter().zip(&rec.hi) {
        let (a, b) = (from_hex::<F>(a)?, from_hex::<F>(b)?);
        if a.partial_cmp(&b).is_none_or(|o| o.is_gt()) {
            return Err(Error::Certificate("box corners out of order".into()));
        }
        bx.push(Interval::new(a, b));
    }
    let (l, h) = (from_hex::<F>(&rec.bound[0])?, from_hex::<F>(&rec.bound[1])?);
    if l.partial_cmp(&h).is_none_or(|o| o.is_gt()) {
        return Err(Error::Certificate("stored bound out of order".into()));
    }
    Ok((bx, Interval::new(l, h)))
}

fn replay_with<F: Endpoint>(cert: &SignCertificate) -> Result<ReplayReport> {
    if !cert.status.is_proved() {
        return Err(Error::Certificate(format!(
            "certificate status is {}, nothing to replay",
            cert.status.label()
        )));
    }
    let problem = cert.problem()?;
    problem.validate()?;
    let target = Target::<F>::new(problem.sign, problem.margin.as_ref());
    let mut main = cert.boxes.iter().peekable();
    let mut col = cert.collars.iter().peekable();
    let mut report = ReplayReport {
        function: cert.function,
        leaves_checked: 0,
        bound_mismatches: 0,
    };
    for (ri, region) in problem.regions.iter().enumerate() {
        let root = root_box::<F>(region);
        let leaves = if region.collar { &mut col } else { &mut main };
        let mut stack = vec![root.clone()];
        while let Some(bx) = stack.pop() {
            let rec: &BoxRecord = *leaves
                .peek()
                .ok_or_else(|| Error::Certificate(format!("region {ri}: leaves end before coverage")))?;
            let (leaf, stored) = parse_box::<F>(rec)?;
            if rec.region != ri || leaf.len() != bx.len() {
                return Err(Error::Certificate(format!("region {ri}: leaf out of place")));
            }
            if leaf == bx {
                leaves.next();
                let bound = interval_eval(problem.function, &bx);
                if !target.passes(&bound) {
                    return Err(Error::Certificate(format!(
                        "region {ri}: leaf {:?} evaluates to {bound}, sign not certified",
                        rec.lo
                    )));
                }
                if bound != stored {
                    report.bound_mismatches += 1;
                }
                report.leaves_checked += 1;
                continue;
            }
            if !leaf.iter().zip(&bx).all(|(l, b)| l.is_subset(b)) {
                return Err(Error::Certificate(format!(
                    "region {ri}: leaf {:?} is not inside the expected box",
                    rec.lo
                )));
            }
            let (left, right) = split(&bx, &root)
                .ok_or_else(|| Error::Certificate(format!("region {ri}: box cannot be split further")))?;
            stack.push(right);
            stack.push(left);
        }
    }
    if main.next().is_some() || col.next().is_some() {
        return Err(Error::Certificate("certificate has leaves beyond its regions".into()));
    }
    Ok(report)
}
