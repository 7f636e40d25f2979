//! Exact rational checks of the algebraic facts the density routes rely on.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::functions::{cut_margin, g, quad_min};
use crate::{ratio, Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormCheck {
    pub name: &'static str,
    pub statement: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub checks: Vec<ClosedFormCheck>,
}

impl ClosedFormReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ClosedFormCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Fixed sample of rationals in `(0, 1)` for identity checks.
fn samples(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let den: i64 = rng.random_range(2..10_000);
            let num: i64 = rng.random_range(1..den);
            ratio(num, den)
        })
        .collect()
}

fn q(n: i64) -> Rational {
    ratio(n, 1)
}

fn check(name: &'static str, statement: impl Into<String>, passed: bool, detail: String) -> ClosedFormCheck {
    ClosedFormCheck {
        name,
        statement: statement.into(),
        passed,
        detail,
    }
}

/// `C − B²/4` for the max-cut quadratic with parameter `λ`.
fn vertex_value(lambda: &Rational) -> Rational {
    let b = (q(2) - ratio(3, 2) * lambda) / (q(4) * lambda);
    let c = (q(1) - lambda) / (q(4) * lambda);
    c - &b * &b / q(4)
}

/// Runs every check; errors if any fails (a failure means a transcription
/// bug in the formulas, not a mathematical finding).
pub fn closed_form_checks() -> Result<ClosedFormReport> {
    let mut checks = Vec::new();
    let lambda = ratio(8, 13);

    let at = vertex_value(&lambda);
    let qm = quad_min(&lambda);
    let mut ok = at == qm && qm == ratio(111, 1024);
    for l in samples(1, 32) {
        ok &= vertex_value(&l) == quad_min(&l);
    }
    checks.push(check(
        "quadratic_minimum",
        "min_t t^2 - ((2-3λ/2)/(4λ))t + (1-λ)/(4λ) = (88λ-73λ^2-16)/(256λ^2)",
        ok,
        format!("at λ = 8/13 both sides equal {at}; identity holds at 32 sampled λ"),
    ));

    let half = &lambda / q(2);
    let coeff = (q(88) * &lambda - q(73) * &lambda * &lambda - q(16)) / (q(16) * &lambda);
    checks.push(check(
        "sparse_floor_coefficients",
        "λ/2 = 4/13 and (88λ-73λ^2-16)/(16λ) = 111/104 at λ = 8/13",
        half == ratio(4, 13) && coeff == ratio(111, 104),
        format!("λ/2 = {half}, quadratic coefficient = {coeff}"),
    ));

    let root = ratio(32, 123);
    let mut ok = cut_margin(&root) == q(0);
    for c in samples(2, 32) {
        let factored = &c * (ratio(4, 13) - ratio(123, 104) * &c);
        let v = cut_margin(&c);
        ok &= v == factored && ((v > q(0)) == (c < root));
    }
    ok &= cut_margin(&ratio(26, 100)) > q(0) && ratio(26, 100) < root;
    checks.push(check(
        "cut_floor_exceeds_extension",
        "(4/13)c + (111/104)c^2 > (9/4)c^2 iff 0 < c < 32/123, and 0.26 < 32/123",
        ok,
        "difference = c(4/13 - (123/104)c), root 32/123".into(),
    ));

    let g518 = g(&ratio(5, 18));
    let mut ok = g518 == ratio(3, 4);
    for c in samples(3, 32) {
        let c = &c / q(3);
        let lhs = g(&c) - ratio(3, 4);
        let rhs = (q(18) * &c - q(5)) / (q(12) * (q(1) - q(2) * &c));
        ok &= lhs == rhs && ((g(&c) < ratio(3, 4)) == (c < ratio(5, 18)));
    }
    checks.push(check(
        "g_below_three_quarters",
        "g(c) < 3/4 iff c < 5/18 on c < 1/2, with g(5/18) = 3/4",
        ok,
        format!("g(5/18) = {g518}; g(c) - 3/4 = (18c-5)/(12(1-2c))"),
    ));

    let ratio_u = ratio(7, 50) / ratio(16, 25);
    // ρ e(A,B) + ρ² e(B) = (ρ − ρ²) e(A,B) + ρ² (e(A,B) + e(B)), e(A,B) ≤ |A||B|, e(G) ≤ n²/3
    let rho_sq = &ratio_u * &ratio_u;
    let bound = (&ratio_u - &rho_sq) * ratio(9, 25) * ratio(16, 25) + &rho_sq * ratio(1, 3);
    let ok = ratio_u == ratio(7, 32)
        && &ratio_u - &ratio_u * &ratio_u == ratio(175, 1024)
        && bound == ratio(4249, 76800)
        && bound < ratio(1, 18);
    checks.push(check(
        "dense_independent_bound",
        "(175/1024)(9/25)(16/25) + (49/1024)/3 = 4249/76800 < 1/18",
        ok,
        format!("bound = {bound}"),
    ));

    let ok = ratio(59, 100) > ratio(4, 7)
        && q(4) * ratio(59, 100) - q(2) == ratio(9, 25)
        && q(2) * ratio(297, 1000) < ratio(9, 14)
        && q(2) * ratio(1, 4) == ratio(1, 2);
    checks.push(check(
        "threshold_chain",
        "0.59 > 4/7, 4(0.59) - 2 = 9/25, 2(0.297) < 9/14, 2(1/4) = 1/2",
        ok,
        String::new(),
    ));

    let mut ok = true;
    for c in samples(4, 16) {
        let c = ratio(2, 9) + &c / q(9);
        let a = q(1) - ratio(9, 4) * &c;
        let at_a = q(2) * (q(1) - &a) * &c - ratio(4, 9) * (q(1) - &a) * (q(1) - &a);
        ok &= at_a == ratio(9, 4) * &c * &c;
        for t in samples(5, 8) {
            let other = q(2) * (q(1) - &t) * &c - ratio(4, 9) * (q(1) - &t) * (q(1) - &t);
            ok &= other <= at_a;
        }
    }
    checks.push(check(
        "extension_cut_maximum",
        "max_a 2(1-a)c - (4/9)(1-a)^2 = (9/4)c^2 at a = 1 - 9c/4",
        ok,
        String::new(),
    ));

    let mut ok = true;
    let pts = samples(6, 24);
    for w in pts.chunks(3) {
        let (alpha, c, k) = (&w[0], &w[1], &(&w[2] * &w[0]));
        let at = (alpha - k) / (q(1) - k);
        let lhs = (q(2) * &at - q(1)) * c + q(2) * (q(1) - &at) * (q(1) - alpha) * k - (q(2) * alpha - q(1)) * c;
        let rhs = q(2) * k * (q(1) - alpha) * (alpha + c - q(1)) / (k - q(1));
        ok &= lhs == rhs;
    }
    checks.push(check(
        "peeling_identity",
        "(2ã-1)c + 2(1-ã)(1-α)k - (2α-1)c = 2k(1-α)(α+c-1)/(k-1), ã = (α-k)/(1-k)",
        ok,
        String::new(),
    ));

    let mut ok = true;
    for w in samples(7, 32).chunks(2) {
        let (x1, x2) = (&w[0] / q(2), &w[1] / q(2));
        let s = &x1 + &x2;
        let lhs = &x2 / (ratio(1, 2) - &x1) + &x1 / (ratio(1, 2) - &x2) - q(2) * &s / (q(1) - &s);
        let rhs = q(2) * (&x1 - &x2) * (&x1 - &x2) * (q(2) * &s - q(1))
            / ((q(1) - q(2) * &x1) * (q(1) - q(2) * &x2) * (q(1) - &s));
        ok &= lhs == rhs;
    }
    checks.push(check(
        "two_part_convexity_identity",
        "x2/(1/2-x1) + x1/(1/2-x2) - 2s/(1-s) = 2(x1-x2)^2(2s-1)/((1-2x1)(1-2x2)(1-s)), s = x1+x2",
        ok,
        String::new(),
    ));

    let mut ok = true;
    for c in samples(8, 16) {
        let c = ratio(1, 4) + &c / q(12);
        let g = g(&c);
        let jensen = ratio(1, 6) * (&g - &g / q(3)) / (q(1) - q(2) * &g / q(3));
        ok &= jensen == &g / (q(3) * (q(3) - q(2) * &g));
        // triangle floor: (n^2/54)·2e/(n^2 - 2e) = c n^3 / (27(1-2c)) with e = cn^2, n = 1
        ok &= ratio(1, 54) * q(2) * &c / (q(1) - q(2) * &c) == &c / (q(27) * (q(1) - q(2) * &c));
    }
    checks.push(check(
        "one_part_convexity_and_triangle_floor",
        "(1/6)(g - g/3)/(1 - 2g/3) = g/(3(3-2g)); (1/54)·2c/(1-2c) = c/(27(1-2c))",
        ok,
        String::new(),
    ));

    let x = ratio(2, 3);
    let ok = (q(1) - &x) * &x / q(4) == ratio(1, 18)
        && (ratio(1, 3) * ratio(1, 6)) == ratio(1, 18)
        && (q(2) * ratio(3, 4) - q(1)) / q(4) * ratio(4, 9) == ratio(1, 18);
    checks.push(check(
        "dense_equality_cases",
        "x(1-x)/4 = 1/18 at x = 2/3; (1/3)(1/6) = 1/18; ((2·3/4-1)/4)(2/3)^2 = 1/18",
        ok,
        String::new(),
    ));

    let report = ClosedFormReport { checks };
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(Error::Transcription(format!("{}: {}", bad.name, bad.statement)));
    }
    Ok(report)
}
