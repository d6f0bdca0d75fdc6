//! The seven closed-form rate functions of the diamond-wiretap channel and
//! the correlation constants derived from the relay powers.
//!
//! All logarithms are base 2. `f1`, `f2`, `f3`, `f6` and `f7` live on
//! `[-1, 1]`; `f4` and `f5` are also defined on the extended interval
//! `[-rho_bar, 1]` used by the converse bounds. Achievability callers should
//! check [`CorrelationDomain::Achievable`] themselves.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::params::{ChannelParams, RandomnessBudget};
use crate::rate::RateValue;

/// Bisection tolerance for [`ChannelParams::f5_inverse`].
pub const F5_INVERSE_TOL: f64 = 1e-12;

/// Which correlation interval an evaluation is allowed to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationDomain {
    /// `[-1, 1]`: a real correlation coefficient between relay inputs.
    Achievable,
    /// `[-rho_bar, 1]`: the entropy proxy appearing in the converse.
    Extended,
}

impl CorrelationDomain {
    pub fn bounds(self, params: &ChannelParams) -> (f64, f64) {
        match self {
            CorrelationDomain::Achievable => (-1.0, 1.0),
            CorrelationDomain::Extended => (-params.rho_bar(), 1.0),
        }
    }

    pub fn contains(self, params: &ChannelParams, rho: f64) -> bool {
        let (lo, hi) = self.bounds(params);
        rho >= lo && rho <= hi
    }
}

#[inline]
fn half_log2_1p(x: f64) -> f64 {
    0.5 * x.ln_1p() / LN_2
}

impl ChannelParams {
    /// `(P1 + P2) / (2 sqrt(P1 P2))`, at least 1 with equality iff P1 = P2.
    pub fn rho_bar(&self) -> f64 {
        (self.p1() + self.p2()) / (2.0 * (self.p1() * self.p2()).sqrt())
    }

    /// Breakpoint `sqrt(1 + 1/(4 P1 P2)) - 1/(2 sqrt(P1 P2))`, in (0, 1).
    pub fn rho_star(&self) -> f64 {
        let a = 0.5 / (self.p1() * self.p2()).sqrt();
        // rationalized form avoids cancellation for large powers
        1.0 / ((1.0 + a * a).sqrt() + a)
    }

    /// Received signal power `P1 + P2 + 2 rho sqrt(P1 P2)`; exactly zero at
    /// the lower end of the extended domain.
    pub(crate) fn mac_power(&self, rho: f64) -> f64 {
        if rho <= -self.rho_bar() {
            return 0.0;
        }
        (self.p1() + self.p2() + 2.0 * rho * (self.p1() * self.p2()).sqrt()).max(0.0)
    }

    fn check(&self, function: &'static str, domain: CorrelationDomain, rho: f64) -> Result<()> {
        if domain.contains(self, rho) {
            Ok(())
        } else {
            let (lo, hi) = domain.bounds(self);
            Err(Error::Domain {
                function,
                rho,
                lo,
                hi,
            })
        }
    }

    pub fn f1(&self, rho: f64) -> Result<RateValue> {
        self.check("f1", CorrelationDomain::Achievable, rho)?;
        Ok(self.f1_at(rho))
    }

    pub fn f2(&self, rho: f64) -> Result<RateValue> {
        self.check("f2", CorrelationDomain::Achievable, rho)?;
        Ok(self.f2_at(rho))
    }

    pub fn f3(&self, rho: f64) -> Result<RateValue> {
        self.check("f3", CorrelationDomain::Achievable, rho)?;
        Ok(self.f3_at(rho))
    }

    pub fn f4(&self, rho: f64) -> Result<RateValue> {
        self.check("f4", CorrelationDomain::Extended, rho)?;
        Ok(self.f4_at(rho))
    }

    pub fn f5(&self, rho: f64) -> Result<RateValue> {
        self.check("f5", CorrelationDomain::Extended, rho)?;
        Ok(self.f5_at(rho))
    }

    pub fn f6(&self, rho: f64) -> Result<RateValue> {
        self.check("f6", CorrelationDomain::Achievable, rho)?;
        Ok(self.f6_at(rho))
    }

    pub fn f7(&self, rho: f64) -> Result<RateValue> {
        self.check("f7", CorrelationDomain::Achievable, rho)?;
        Ok(self.f7_at(rho))
    }

    // Unchecked evaluations. Callers guarantee the domain.

    pub(crate) fn f1_at(&self, rho: f64) -> RateValue {
        RateValue::finite(self.c1() + half_log2_1p(one_minus_sq(rho) * self.p2()))
    }

    pub(crate) fn f2_at(&self, rho: f64) -> RateValue {
        RateValue::finite(self.c2() + half_log2_1p(one_minus_sq(rho) * self.p1()))
    }

    pub(crate) fn f3_at(&self, rho: f64) -> RateValue {
        let q = one_minus_sq(rho);
        if q <= 0.0 {
            RateValue::NEG_INFINITY
        } else {
            RateValue::finite(self.c1() + self.c2() + 0.5 * q.log2())
        }
    }

    pub(crate) fn f4_at(&self, rho: f64) -> RateValue {
        RateValue::finite(half_log2_1p(self.mac_power(rho)))
    }

    pub(crate) fn f5_at(&self, rho: f64) -> RateValue {
        RateValue::finite(half_log2_1p(self.g() * self.mac_power(rho)))
    }

    pub(crate) fn f6_at(&self, rho: f64) -> RateValue {
        let num = half_log2_1p(self.g() * self.mac_power(rho));
        let den = half_log2_1p(self.g() * one_minus_sq(rho) * self.p2());
        RateValue::finite((num - den).max(0.0))
    }

    pub(crate) fn f7_at(&self, rho: f64) -> RateValue {
        let num = half_log2_1p(self.g() * self.mac_power(rho));
        let den = half_log2_1p(self.g() * one_minus_sq(rho) * self.p1());
        RateValue::finite((num - den).max(0.0))
    }

    /// `f4 - f5`: the secrecy rate through the MAC cut.
    pub(crate) fn f45_at(&self, rho: f64) -> RateValue {
        self.f4_at(rho) - self.f5_at(rho)
    }

    /// Largest `rho` in `[-1, 1]` whose randomness requirement `f5(rho)`
    /// fits in the budget.
    ///
    /// `f5` is strictly increasing when `g > 0`, so the feasible set is
    /// `[-1, rho_max]`.
    pub fn f5_inverse(&self, budget: RandomnessBudget) -> Result<f64> {
        let r = match budget {
            RandomnessBudget::Unbounded => return Ok(1.0),
            RandomnessBudget::Finite(r) => r,
        };
        if self.g() == 0.0 || self.f5_at(1.0).value() <= r {
            return Ok(1.0);
        }
        let at_minus_one = self.f5_at(-1.0).value();
        if at_minus_one > r {
            return Err(Error::EmptyFeasibleSet {
                f5_at_minus_one: at_minus_one,
                budget: r,
            });
        }
        let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
        while hi - lo > F5_INVERSE_TOL {
            let mid = 0.5 * (lo + hi);
            if self.f5_at(mid).value() <= r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }
}

/// `1 - rho^2` computed as `(1 - rho)(1 + rho)`.
#[inline]
fn one_minus_sq(rho: f64) -> f64 {
    ((1.0 - rho) * (1.0 + rho)).max(0.0)
}
