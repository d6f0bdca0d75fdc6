//! Problem-instance types.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// One degraded Gaussian diamond-wiretap channel.
///
/// Powers are linear, link capacities are in bits per channel use and `g`
/// is the eavesdropper's degradation gain. Construct through
/// [`ChannelParams::new`] so the invariants hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    p1: f64,
    p2: f64,
    c1: f64,
    c2: f64,
    g: f64,
}

impl ChannelParams {
    pub fn new(p1: f64, p2: f64, c1: f64, c2: f64, g: f64) -> Result<Self> {
        positive("p1", p1)?;
        positive("p2", p2)?;
        nonneg("c1", c1)?;
        nonneg("c2", c2)?;
        if !g.is_finite() || !(0.0..1.0).contains(&g) {
            return Err(Error::InvalidParameter {
                name: "g",
                value: g,
                reason: "must lie in [0, 1)",
            });
        }
        Ok(ChannelParams { p1, p2, c1, c2, g })
    }

    /// P1 = P2 = `p`, C1 = C2 = `c`.
    pub fn symmetric(p: f64, c: f64, g: f64) -> Result<Self> {
        Self::new(p, p, c, c, g)
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }
    pub fn p2(&self) -> f64 {
        self.p2
    }
    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn c2(&self) -> f64 {
        self.c2
    }
    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn is_symmetric(&self) -> bool {
        self.p1 == self.p2 && self.c1 == self.c2
    }

    pub fn with_links(&self, c1: f64, c2: f64) -> Result<Self> {
        Self::new(self.p1, self.p2, c1, c2, self.g)
    }

    pub fn with_powers(&self, p1: f64, p2: f64) -> Result<Self> {
        Self::new(p1, p2, self.c1, self.c2, self.g)
    }

    pub fn with_gain(&self, g: f64) -> Result<Self> {
        Self::new(self.p1, self.p2, self.c1, self.c2, g)
    }

    /// The same channel without an eavesdropper (g = 0).
    pub fn without_eavesdropper(&self) -> Self {
        ChannelParams { g: 0.0, ..*self }
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be finite and > 0",
        })
    }
}

fn nonneg(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: v,
            reason: "must be finite and >= 0",
        })
    }
}

/// Rate R' of the fictitious message available for confusing the
/// eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RandomnessBudget {
    Finite(f64),
    #[default]
    Unbounded,
}

impl RandomnessBudget {
    pub fn finite(r_prime: f64) -> Result<Self> {
        nonneg("rprime", r_prime)?;
        Ok(RandomnessBudget::Finite(r_prime))
    }

    /// Whether a scheme needing `required` bits of randomness fits.
    pub fn allows(&self, required: f64) -> bool {
        match *self {
            RandomnessBudget::Finite(r) => required <= r,
            RandomnessBudget::Unbounded => true,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            RandomnessBudget::Finite(r) => r,
            RandomnessBudget::Unbounded => f64::INFINITY,
        }
    }
}

impl fmt::Display for RandomnessBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RandomnessBudget::Finite(r) => write!(f, "{r}"),
            RandomnessBudget::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for RandomnessBudget {
    type Err = Error;

    /// Accepts a nonnegative number or the token `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(RandomnessBudget::Unbounded);
        }
        let v: f64 = s.parse().map_err(|_| Error::InvalidParameter {
            name: "rprime",
            value: f64::NAN,
            reason: "expected a number or `inf`",
        })?;
        RandomnessBudget::finite(v)
    }
}

impl Serialize for RandomnessBudget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RandomnessBudget::Finite(r) => s.serialize_f64(*r),
            RandomnessBudget::Unbounded => s.serialize_str("inf"),
        }
    }
}
