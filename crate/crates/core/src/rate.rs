//! Extended-real rates in bits per channel use.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Neg, Sub};

use serde::{Serialize, Serializer};

/// A rate that is either finite or negative infinity.
///
/// Negative infinity only arises from `f3` at |rho| = 1. It behaves like the
/// IEEE value under `min`/`max` and addition, but NaN and +inf are never
/// produced by the constructors.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct RateValue(f64);

impl RateValue {
    pub const ZERO: RateValue = RateValue(0.0);
    pub const NEG_INFINITY: RateValue = RateValue(f64::NEG_INFINITY);

    /// Wraps a finite number. Panics on NaN or infinities; use
    /// [`RateValue::NEG_INFINITY`] for the one legal non-finite value.
    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "non-finite rate {value}");
        RateValue(value)
    }

    pub(crate) fn from_raw(value: f64) -> Self {
        debug_assert!(!value.is_nan() && value != f64::INFINITY);
        RateValue(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_neg_infinity(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// The achievable rate implied by a formula value: negative or -inf
    /// formula values mean rate 0.
    pub fn clamp_nonneg(self) -> f64 {
        self.0.max(0.0)
    }

    pub fn min(self, other: RateValue) -> RateValue {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: RateValue) -> RateValue {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn total_cmp(&self, other: &RateValue) -> Ordering {
        self.0.total_cmp(&other.0)
    }

    /// Minimum over an iterator; `None` for an empty one.
    pub fn min_of<I: IntoIterator<Item = RateValue>>(iter: I) -> Option<RateValue> {
        iter.into_iter().reduce(RateValue::min)
    }

    /// Maximum over an iterator; `None` for an empty one.
    pub fn max_of<I: IntoIterator<Item = RateValue>>(iter: I) -> Option<RateValue> {
        iter.into_iter().reduce(RateValue::max)
    }
}

impl From<RateValue> for f64 {
    fn from(r: RateValue) -> f64 {
        r.0
    }
}

impl Add for RateValue {
    type Output = RateValue;
    fn add(self, rhs: RateValue) -> RateValue {
        RateValue::from_raw(self.0 + rhs.0)
    }
}

impl Sub for RateValue {
    type Output = RateValue;
    fn sub(self, rhs: RateValue) -> RateValue {
        assert!(rhs.is_finite(), "cannot subtract an infinite rate");
        RateValue::from_raw(self.0 - rhs.0)
    }
}

impl Add<f64> for RateValue {
    type Output = RateValue;
    fn add(self, rhs: f64) -> RateValue {
        RateValue::from_raw(self.0 + rhs)
    }
}

impl Sub<f64> for RateValue {
    type Output = RateValue;
    fn sub(self, rhs: f64) -> RateValue {
        RateValue::from_raw(self.0 - rhs)
    }
}

impl Div<f64> for RateValue {
    type Output = RateValue;
    fn div(self, rhs: f64) -> RateValue {
        assert!(rhs > 0.0);
        RateValue::from_raw(self.0 / rhs)
    }
}

impl Neg for RateValue {
    type Output = f64;
    fn neg(self) -> f64 {
        -self.0
    }
}

impl fmt::Debug for RateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RateValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_neg_infinity() {
            f.write_str("-inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

/// JSON has no infinities, so -inf serializes as `null`.
impl Serialize for RateValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_none()
        }
    }
}
