//! Forward-mode first derivatives over any [`Scalar`].
//!
//! Over intervals this yields an enclosure of the gradient on a box, which the
//! certifier uses for the mean-value form.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Dual<S, const N: usize> {
    pub value: S,
    pub grad: [S; N],
}

impl<S: Scalar, const N: usize> Dual<S, N> {
    pub fn constant(value: S) -> Self {
        Dual {
            value,
            grad: std::array::from_fn(|_| S::zero()),
        }
    }

    /// The `i`-th independent variable at `value`.
    pub fn variable(value: S, i: usize) -> Self {
        let mut d = Self::constant(value);
        d.grad[i] = S::one();
        d
    }

    fn map_grad(&self, f: impl Fn(&S) -> S) -> [S; N] {
        std::array::from_fn(|i| f(&self.grad[i]))
    }
}

impl<S: Scalar, const N: usize> Add for Dual<S, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual {
            value: self.value + rhs.value,
            grad: std::array::from_fn(|i| self.grad[i].clone() + rhs.grad[i].clone()),
        }
    }
}

impl<S: Scalar, const N: usize> Sub for Dual<S, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual {
            value: self.value - rhs.value,
            grad: std::array::from_fn(|i| self.grad[i].clone() - rhs.grad[i].clone()),
        }
    }
}

impl<S: Scalar, const N: usize> Neg for Dual<S, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            grad: self.map_grad(|g| -g.clone()),
            value: -self.value,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<S: Scalar, const N: usize> Mul for Dual<S, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Dual {
            grad: std::array::from_fn(|i| {
                self.grad[i].clone() * rhs.value.clone() + self.value.clone() * rhs.grad[i].clone()
            }),
            value: self.value * rhs.value,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<S: Scalar, const N: usize> Div for Dual<S, N> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q = self.value / rhs.value.clone();
        Dual {
            grad: std::array::from_fn(|i| (self.grad[i].clone() - q.clone() * rhs.grad[i].clone()) / rhs.value.clone()),
            value: q,
        }
    }
}

impl<S: Scalar, const N: usize> Zero for Dual<S, N> {
    fn zero() -> Self {
        Self::constant(S::zero())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.grad.iter().all(Zero::is_zero)
    }
}

impl<S: Scalar, const N: usize> One for Dual<S, N> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar, const N: usize> Scalar for Dual<S, N> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(S::from_ratio(num, den))
    }

    fn sqr(&self) -> Self {
        let twice = S::from_ratio(2, 1) * self.value.clone();
        Dual {
            value: self.value.sqr(),
            grad: self.map_grad(|g| twice.clone() * g.clone()),
        }
    }

    fn recip_pos(&self) -> Self {
        let r = self.value.recip_pos();
        let slope = -r.sqr();
        Dual {
            grad: self.map_grad(|g| slope.clone() * g.clone()),
            value: r,
        }
    }
}
