//! Upper and lower bounds on the secrecy capacity of the degraded Gaussian
//! diamond-wiretap channel.
//!
//! A source feeds two relays over orthogonal links of capacity `C1`, `C2`;
//! the relays then transmit over a Gaussian MAC to the destination
//! (`Y = X1 + X2 + N`) while an eavesdropper listens through a degraded
//! copy (`Z = sqrt(g) Y + N'`). Two randomness scenarios are covered:
//!
//! * [`scenario_one`]: the fictitious message is shared by source and relays.
//! * [`scenario_two`]: only the source holds it.
//!
//! Every rate is in bits per channel use.
//!
//! ```
//! use diamond_wiretap::{ChannelParams, RandomnessBudget, scenario_two};
//!
//! let params = ChannelParams::symmetric(10.0, 1.5, 0.1).unwrap();
//! let bounds = scenario_two::best_lower_bound_s2(&params, RandomnessBudget::Unbounded);
//! assert!((bounds.upper.rate - bounds.lower).abs() < 1e-6);
//! ```

// NaN-rejecting guards are written `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod oracles;
pub mod params;
pub mod rate;
pub mod rate_functions;
pub mod report;
pub mod scalar_opt;
pub mod scenario_one;
pub mod scenario_two;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{ChannelParams, RandomnessBudget};
pub use rate::RateValue;
pub use report::BoundReport;
