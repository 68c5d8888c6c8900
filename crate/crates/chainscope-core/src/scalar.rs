//! Scalar abstraction for the finite backend.
//!
//! Distance matrices are stored in whatever scalar the caller picks: `f64`
//! or `f32` for measured data, [`BigRational`](num_rational::BigRational)
//! for exact arithmetic. Every threshold comparison in this crate is an
//! exact comparison against stored values; there is no epsilon-fudging
//! anywhere, so critical scales are always elements of the finite set of
//! stored distances.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::Zero;

/// A scalar usable as a distance value.
///
/// Validated inputs never contain NaN, so `cmp_total` is a total order on
/// the values this crate actually stores.
pub trait Scalar:
    Clone + PartialOrd + Add<Output = Self> + Zero + fmt::Debug + fmt::Display
{
    /// False for NaN and infinite floats; always true for exact types.
    fn is_finite_scalar(&self) -> bool;

    fn cmp_total(&self, other: &Self) -> Ordering {
        self.partial_cmp(other)
            .expect("scalar values must be comparable (no NaN past validation)")
    }
}

impl Scalar for f64 {
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn is_finite_scalar(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    fn is_finite_scalar(&self) -> bool {
        true
    }
}

pub fn smax<T: Scalar>(a: T, b: T) -> T {
    if a.cmp_total(&b) == Ordering::Less {
        b
    } else {
        a
    }
}

pub fn smin<T: Scalar>(a: T, b: T) -> T {
    if a.cmp_total(&b) == Ordering::Greater {
        b
    } else {
        a
    }
}

/// A value in `[0, ∞]`, the codomain of every functional in this crate.
///
/// Arithmetic never produces NaN-like states: comparisons treat `Infinite`
/// as strictly greater than every finite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ext<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> Ext<T> {
    pub fn zero() -> Self {
        Ext::Finite(T::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Ext::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Ext::Finite(v) if v.is_zero())
    }

    pub fn as_finite(&self) -> Option<&T> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Infinite => None,
        }
    }

    pub fn cmp_total(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::Infinite, Ext::Infinite) => Ordering::Equal,
            (Ext::Infinite, Ext::Finite(_)) => Ordering::Greater,
            (Ext::Finite(_), Ext::Infinite) => Ordering::Less,
            (Ext::Finite(a), Ext::Finite(b)) => a.cmp_total(b),
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self.cmp_total(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self.cmp_total(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

impl<T: Scalar> PartialOrd for Ext<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_total(other))
    }
}

impl<T> From<T> for Ext<T> {
    fn from(v: T) -> Self {
        Ext::Finite(v)
    }
}

impl<T: fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(v) => v.fmt(f),
            Ext::Infinite => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_ordering_puts_infinity_on_top() {
        let a: Ext<f64> = Ext::Finite(3.0);
        let b: Ext<f64> = Ext::Infinite;
        assert_eq!(a.cmp_total(&b), Ordering::Less);
        assert_eq!(b.cmp_total(&Ext::Infinite), Ordering::Equal);
        assert_eq!(a.clone().max(b.clone()), Ext::Infinite);
        assert_eq!(a.clone().min(b), a);
    }

    #[test]
    fn display_uses_inf_token() {
        assert_eq!(Ext::<f64>::Infinite.to_string(), "inf");
        assert_eq!(Ext::Finite(2.5f64).to_string(), "2.5");
    }
}
