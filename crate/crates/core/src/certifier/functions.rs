//! The closed-form functions behind the medium-density case analysis and the
//! sparse-range max-cut estimate.
//!
//! Each function is written once, generically, so the same expression is
//! evaluated in floats, exact rationals and outward-rounded intervals.
//! Reciprocals use [`Scalar::recip_pos`] only where the denominator is
//! non-negative on the closed certification domain (noted per function).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::Error;

fn r<S: Scalar>(num: i64, den: i64) -> S {
    S::from_ratio(num, den)
}

/// `g(c) = 1 / (3(1 − 2c))`; `1 − 2c ≥ 1/3` for `c ≤ 1/3`.
pub fn g<S: Scalar>(c: &S) -> S {
    (r::<S>(3, 1) * (S::one() - r::<S>(2, 1) * c.clone())).recip_pos()
}

/// Medium-density slack `g/(3(3 − 2g)) + 2c(1 − g) − c − (1 − g)²/3`.
///
/// `3 − 2g ≥ 1` for `c ≤ 1/3`.
pub fn h<S: Scalar>(c: &S) -> S {
    let g = g(c);
    let one_minus_g = S::one() - g.clone();
    let first = g.clone() * (r::<S>(3, 1) * (r::<S>(3, 1) - r::<S>(2, 1) * g)).recip_pos();
    first + r::<S>(2, 1) * c.clone() * one_minus_g.clone() - c.clone() - one_minus_g.sqr() * r(1, 3)
}

/// Medium-density slack for `g(c) < 3/4`: `c + (1 − g)/6 − g/(18(1 − g)) − (1 − g)/(3 − 2g)`.
///
/// `1 − g > 0` for `c < 1/3` (the certified range stops at `5/18`).
pub fn k<S: Scalar>(c: &S) -> S {
    let g = g(c);
    let one_minus_g = S::one() - g.clone();
    c.clone() + one_minus_g.clone() * r(1, 6)
        - g.clone() * (r::<S>(18, 1) * one_minus_g.clone()).recip_pos()
        - one_minus_g * (r::<S>(3, 1) - r::<S>(2, 1) * g).recip_pos()
}

/// Slack over a small part, `ℓ(c, x) = ((g − x)² + 2(1 − g)²)/(18x(1 − 2x)) − (1 − g)²/(6x) + 1/6 − c`.
///
/// Evaluated as `[((g − x)² + 2(1 − g)²)/(18(1 − 2x)) − (1 − g)²/6] · (1/x) + 1/6 − c`
/// so that both singular edges stay bounded below: as `x → 0` the bracket
/// tends to `(2g − 1)/18 > 0`, and as `x → 1/2` it tends to `+∞`.
/// `x ≥ 0` and `1 − 2x ≥ 0` on `[0, 1/2]`.
pub fn ell<S: Scalar>(c: &S, x: &S) -> S {
    let g = g(c);
    let one_minus_g = S::one() - g.clone();
    let inner = ((g - x.clone()).sqr() + r::<S>(2, 1) * one_minus_g.sqr())
        * (r::<S>(18, 1) * (S::one() - r::<S>(2, 1) * x.clone())).recip_pos()
        - one_minus_g.sqr() * r(1, 6);
    inner * x.recip_pos() + r(1, 6) - c.clone()
}

/// `ℓ` exactly as written, without the factoring (reference form).
pub fn ell_direct<S: Scalar>(c: &S, x: &S) -> S {
    let g = g(c);
    let one_minus_g = S::one() - g.clone();
    ((g - x.clone()).sqr() + r::<S>(2, 1) * one_minus_g.sqr())
        / (r::<S>(18, 1) * x.clone() * (S::one() - r::<S>(2, 1) * x.clone()))
        - one_minus_g.sqr() / (r::<S>(6, 1) * x.clone())
        + r(1, 6)
        - c.clone()
}

/// Slack over a large part
/// `m(x, c) = (1 + 1/D − 1/x)·x/(1 − x) + 1/D + 2(1 − g)/(x(1 − x)) + 1 − 3(1 − x)(1 − g)/x − 18c`
/// with `D = 1 − 2(g − x)`.
///
/// Since `(1 + 1/D − 1/x)·x/(1 − x) = −1 + x/(D(1 − x))`, this is evaluated as
/// `[x/D + 2(1 − g)/x] · 1/(1 − x) + 1/D − 3(1 − x)(1 − g)/x − 18c`,
/// whose bracket stays positive as `x → 1`. On `x ∈ [1/2, 1]`, `c ∈ [1/4, 1/3]`
/// all of `x`, `1 − x` and `D` are non-negative; `D` vanishes only at
/// `(x, c) = (1/2, 1/3)`.
pub fn m<S: Scalar>(x: &S, c: &S) -> S {
    let g = g(c);
    let one_minus_g = S::one() - g.clone();
    let d_inv = (S::one() - r::<S>(2, 1) * (g - x.clone())).recip_pos();
    let x_inv = x.recip_pos();
    let one_minus_x = S::one() - x.clone();
    let bracket = x.clone() * d_inv.clone() + r::<S>(2, 1) * one_minus_g.clone() * x_inv.clone();
    bracket * one_minus_x.recip_pos() + d_inv
        - r::<S>(3, 1) * one_minus_x * one_minus_g * x_inv
        - r::<S>(18, 1) * c.clone()
}

/// `m` exactly as written (reference form).
pub fn m_direct<S: Scalar>(x: &S, c: &S) -> S {
    let g = g(c);
    let one_minus_g = S::one() - g.clone();
    let d = S::one() - r::<S>(2, 1) * (g - x.clone());
    let one_minus_x = S::one() - x.clone();
    (S::one() + S::one() / d.clone() - S::one() / x.clone()) * x.clone() / one_minus_x.clone()
        + S::one() / d
        + r::<S>(2, 1) * one_minus_g.clone() / (x.clone() * one_minus_x.clone())
        + S::one()
        - r::<S>(3, 1) * one_minus_x * one_minus_g / x.clone()
        - r::<S>(18, 1) * c.clone()
}

/// Global minimum `(88λ − 73λ² − 16)/(256λ²)` of
/// `t² − ((2 − 3λ/2)/(4λ))t + (1 − λ)/(4λ)`.
pub fn quad_min<S: Scalar>(lambda: &S) -> S {
    (r::<S>(88, 1) * lambda.clone() - r::<S>(73, 1) * lambda.sqr() - r(16, 1)) / (r::<S>(256, 1) * lambda.sqr())
}

/// `(4/13)c + (111/104)c² − (9/4)c²`, positive exactly on `(0, 32/123)`.
pub fn cut_margin<S: Scalar>(c: &S) -> S {
    r::<S>(4, 13) * c.clone() + (r::<S>(111, 104) - r(9, 4)) * c.sqr()
}

/// Names of the certifiable functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionId {
    G,
    H,
    K,
    Ell,
    M,
    QuadMin,
    CutMargin,
}

impl FunctionId {
    pub const ALL: [FunctionId; 7] = [
        FunctionId::G,
        FunctionId::H,
        FunctionId::K,
        FunctionId::Ell,
        FunctionId::M,
        FunctionId::QuadMin,
        FunctionId::CutMargin,
    ];

    pub fn arity(self) -> usize {
        match self {
            FunctionId::Ell | FunctionId::M => 2,
            _ => 1,
        }
    }

    /// Argument names in evaluation order.
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            FunctionId::Ell => &["c", "x"],
            FunctionId::M => &["x", "c"],
            FunctionId::QuadMin => &["lambda"],
            _ => &["c"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::G => "g",
            FunctionId::H => "h",
            FunctionId::K => "k",
            FunctionId::Ell => "ell",
            FunctionId::M => "m",
            FunctionId::QuadMin => "quad_min",
            FunctionId::CutMargin => "cut_margin",
        }
    }

    /// Panics if `args.len()` differs from [`FunctionId::arity`].
    pub fn eval<S: Scalar>(self, args: &[S]) -> S {
        assert_eq!(args.len(), self.arity(), "{} takes {} arguments", self, self.arity());
        match self {
            FunctionId::G => g(&args[0]),
            FunctionId::H => h(&args[0]),
            FunctionId::K => k(&args[0]),
            FunctionId::Ell => ell(&args[0], &args[1]),
            FunctionId::M => m(&args[0], &args[1]),
            FunctionId::QuadMin => quad_min(&args[0]),
            FunctionId::CutMargin => cut_margin(&args[0]),
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        FunctionId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Certificate(format!("unknown function {s:?}")))
    }
}
