use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, One, ToPrimitive, Zero};

use crate::scalar::Scalar;
use crate::Rational;

/// Binary floating type usable as an interval endpoint.
pub trait Endpoint: Float + Debug + Display + Send + Sync + 'static {
    /// Smallest value greater than `self` (identity on `+inf`).
    fn up(self) -> Self;
    /// Largest value less than `self` (identity on `-inf`).
    fn down(self) -> Self;
    /// Name used in certificates.
    const NAME: &'static str;
}

impl Endpoint for f64 {
    fn up(self) -> Self {
        self.next_up()
    }
    fn down(self) -> Self {
        self.next_down()
    }
    const NAME: &'static str = "f64";
}

impl Endpoint for f32 {
    fn up(self) -> Self {
        self.next_up()
    }
    fn down(self) -> Self {
        self.next_down()
    }
    const NAME: &'static str = "f32";
}

/// Exact value of a finite endpoint.
pub fn exact<F: Endpoint>(x: F) -> Option<Rational> {
    Rational::from_float(x.to_f64()?)
}

/// Largest `F` not above `r`.
pub fn round_down<F: Endpoint>(r: &Rational) -> F {
    let guess = F::from(r.to_f64().unwrap_or(f64::NAN)).unwrap_or_else(F::nan);
    let mut x = if guess.is_nan() { F::zero() } else { guess };
    while exact(x).is_some_and(|v| v > *r) || x == F::infinity() {
        x = x.down();
    }
    while exact(x.up()).is_some_and(|v| v <= *r) {
        x = x.up();
    }
    x
}

/// Smallest `F` not below `r`.
pub fn round_up<F: Endpoint>(r: &Rational) -> F {
    -round_down::<F>(&-r)
}

/// Closed interval `[lo, hi]` with outward-rounded arithmetic.
///
/// Endpoints may be infinite. Any operation whose result is undefined on some
/// point of the operands (division by an interval containing zero, `∞ − ∞`)
/// returns the whole line.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval<F> {
    lo: F,
    hi: F,
}

impl<F: Endpoint> Interval<F> {
    /// Panics unless `lo <= hi` (NaN included).
    pub fn new(lo: F, hi: F) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: F) -> Self {
        Self::new(x, x)
    }

    pub fn entire() -> Self {
        Interval {
            lo: F::neg_infinity(),
            hi: F::infinity(),
        }
    }

    /// Tightest interval containing the rational `r`.
    pub fn from_rational(r: &Rational) -> Self {
        Interval {
            lo: round_down(r),
            hi: round_up(r),
        }
    }

    pub fn lo(&self) -> F {
        self.lo
    }

    pub fn hi(&self) -> F {
        self.hi
    }

    pub fn width(&self) -> F {
        sum_bounds(self.hi, -self.lo).1
    }

    /// Round-to-nearest midpoint, clamped into the interval.
    pub fn mid(&self) -> F {
        let two = F::one() + F::one();
        let m = self.lo / two + self.hi / two;
        m.max(self.lo).min(self.hi)
    }

    pub fn contains(&self, x: F) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        let above_lo = exact(self.lo).is_none_or(|lo| lo <= *r) && self.lo != F::infinity();
        let below_hi = exact(self.hi).is_none_or(|hi| *r <= hi) && self.hi != F::neg_infinity();
        above_lo && below_hi
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= F::zero() && F::zero() <= self.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Common part, `None` when disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    fn checked(lo: F, hi: F) -> Self {
        if lo.is_nan() || hi.is_nan() {
            Self::entire()
        } else {
            Interval { lo, hi }
        }
    }

    /// `1 / self`; the whole line when zero is enclosed.
    pub fn recip(&self) -> Self {
        if self.contains_zero() {
            return Self::entire();
        }
        Self::checked(quot_bounds(F::one(), self.hi).0, quot_bounds(F::one(), self.lo).1)
    }

    /// Square with the dedicated rule (never negative, tighter than `x·x`).
    pub fn square(&self) -> Self {
        let (a, b) = (self.lo, self.hi);
        if a >= F::zero() {
            Interval::checked(prod_bounds(a, a).0.max(F::zero()), prod_bounds(b, b).1)
        } else if b <= F::zero() {
            Interval::checked(prod_bounds(b, b).0.max(F::zero()), prod_bounds(a, a).1)
        } else {
            Interval::checked(F::zero(), prod_bounds(a, a).1.max(prod_bounds(b, b).1))
        }
    }
}

/// Below this magnitude the error-free transformations may lose the residual
/// to underflow, so results are widened unconditionally.
fn tiny<F: Endpoint>() -> F {
    F::min_positive_value() / F::epsilon()
}

/// Widens `x` by one ulp in the direction(s) allowed by the sign of the
/// residual `true − x`; `None` means the residual is unknown.
fn directed<F: Endpoint>(x: F, residual: Option<F>) -> (F, F) {
    match residual {
        Some(r) if r.is_zero() => (x, x),
        Some(r) if r > F::zero() => (x, x.up()),
        Some(_) => (x.down(), x),
        None => (x.down(), x.up()),
    }
}

/// Enclosure of `a + b` (TwoSum residual).
fn sum_bounds<F: Endpoint>(a: F, b: F) -> (F, F) {
    let s = a + b;
    if !s.is_finite() || !a.is_finite() || !b.is_finite() {
        return if s.is_nan() { (s, s) } else { directed(s, None) };
    }
    let bb = s - a;
    let r = (a - (s - bb)) + (b - bb);
    directed(s, Some(r))
}

/// Enclosure of `a · b` with `0 · ∞ = 0`, the limit relevant for bounded
/// factors. An exact zero factor gives an exact zero.
fn prod_bounds<F: Endpoint>(a: F, b: F) -> (F, F) {
    if a.is_zero() || b.is_zero() {
        return (F::zero(), F::zero());
    }
    let p = a * b;
    if !p.is_finite() || p.abs() < tiny() {
        return if p.is_nan() { (p, p) } else { directed(p, None) };
    }
    directed(p, Some(a.mul_add(b, -p)))
}

/// Enclosure of `a / b` for `b ≠ 0`.
fn quot_bounds<F: Endpoint>(a: F, b: F) -> (F, F) {
    if a.is_zero() {
        return (F::zero(), F::zero());
    }
    let q = a / b;
    if !q.is_finite() || !b.is_finite() || q.abs() < tiny() || a.abs() < tiny() {
        return if q.is_nan() { (q, q) } else { directed(q, None) };
    }
    // a − q·b is exact; the true quotient exceeds q iff (a − q·b)/b > 0
    let rem = (-q).mul_add(b, a);
    let residual = if b > F::zero() { rem } else { -rem };
    directed(q, Some(residual))
}

impl<F: Endpoint> Add for Interval<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::checked(sum_bounds(self.lo, rhs.lo).0, sum_bounds(self.hi, rhs.hi).1)
    }
}

impl<F: Endpoint> Sub for Interval<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::checked(sum_bounds(self.lo, -rhs.hi).0, sum_bounds(self.hi, -rhs.lo).1)
    }
}

impl<F: Endpoint> Neg for Interval<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl<F: Endpoint> Mul for Interval<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let pairs = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let mut lo = F::infinity();
        let mut hi = F::neg_infinity();
        for (a, b) in pairs {
            let (d, u) = prod_bounds(a, b);
            if d.is_nan() || u.is_nan() {
                return Self::entire();
            }
            lo = lo.min(d);
            hi = hi.max(u);
        }
        Interval { lo, hi }
    }
}

impl<F: Endpoint> Div for Interval<F> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if rhs.contains_zero() {
            return Self::entire();
        }
        let mut lo = F::infinity();
        let mut hi = F::neg_infinity();
        for (a, b) in [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ] {
            let (d, u) = quot_bounds(a, b);
            if d.is_nan() || u.is_nan() {
                return Self::entire();
            }
            lo = lo.min(d);
            hi = hi.max(u);
        }
        Interval { lo, hi }
    }
}

impl<F: Endpoint> Zero for Interval<F> {
    fn zero() -> Self {
        Self::point(F::zero())
    }
    fn is_zero(&self) -> bool {
        self.lo.is_zero() && self.hi.is_zero()
    }
}

impl<F: Endpoint> One for Interval<F> {
    fn one() -> Self {
        Self::point(F::one())
    }
}

impl<F: Endpoint> Scalar for Interval<F> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&crate::ratio(num, den))
    }

    fn sqr(&self) -> Self {
        self.square()
    }

    /// Clamps the lower end at zero before inverting: `[0, b]` becomes
    /// `[1/b, +∞]` and `[0, 0]` becomes `[+∞, +∞]`.
    fn recip_pos(&self) -> Self {
        let lo = self.lo.max(F::zero());
        let hi = self.hi.max(F::zero());
        if hi.is_zero() {
            return Interval {
                lo: F::infinity(),
                hi: F::infinity(),
            };
        }
        let top = if lo.is_zero() {
            F::infinity()
        } else {
            quot_bounds(F::one(), lo).1
        };
        Self::checked(quot_bounds(F::one(), hi).0, top)
    }
}

impl<F: Endpoint> Debug for Interval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

impl<F: Endpoint> Display for Interval<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Debug::fmt(self, f)
    }
}
