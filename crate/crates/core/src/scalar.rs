//! Number types the closed-form functions can be evaluated in.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Rational;

/// Field-like arithmetic shared by floats, exact rationals and intervals.
pub trait Scalar:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// The value `num / den`, enclosed outward by interval types.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn sqr(&self) -> Self {
        self.clone() * self.clone()
    }

    /// `1 / self` for a quantity the caller knows to be non-negative.
    ///
    /// Interval types use the knowledge to discard the negative part of an
    /// enclosure that straddles zero only through rounding.
    fn recip_pos(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        crate::ratio(num, den)
    }
}

/// Serializes a rational as `{"num": .., "den": ..}`; parts that do not fit
/// in `i64` are written as decimal strings.
pub(crate) fn serialize_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Rational", 2)?;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => {
            st.serialize_field("num", &n)?;
            st.serialize_field("den", &d)?;
        }
        _ => {
            st.serialize_field("num", &r.numer().to_string())?;
            st.serialize_field("den", &r.denom().to_string())?;
        }
    }
    st.end()
}

/// Borrowed rational with the `{"num", "den"}` serialization.
pub struct RationalJson<'a>(pub &'a Rational);

impl serde::Serialize for RationalJson<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rational(self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly<S: Scalar>(x: &S) -> S {
        x.sqr() - S::from_ratio(1, 2) * x.clone() + S::from_ratio(1, 16)
    }

    #[test]
    fn same_expression_three_types() {
        assert_eq!(poly(&crate::ratio(1, 4)), crate::ratio(0, 1));
        assert_eq!(poly(&0.25f64), 0.0);
        assert_eq!(poly(&0.25f32), 0.0);
        assert_eq!(crate::ratio(4, 1).recip_pos(), crate::ratio(1, 4));
    }
}
