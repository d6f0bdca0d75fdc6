//! Randomized cross-check of the closed-form rate functions against the
//! log-determinant oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gaussian::{gaussian_mi, GaussianSystem, MiTerm};
use crate::error::{Error, Result};
use crate::params::ChannelParams;

/// Which closed form is compared with which information combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Identity {
    /// f1 - C1 = I(X2;Y|X1)
    F1,
    /// f2 - C2 = I(X1;Y|X2)
    F2,
    /// f3 - C1 - C2 = -I(X1;X2)
    F3,
    /// f4 = I(X1,X2;Y)
    F4,
    /// f5 = I(X1,X2;Z)
    F5,
    /// f6 = I(X1;Z) = I(X1,X2;Z) - I(X2;Z|X1)
    F6,
    /// f7 = I(X2;Z) = I(X1,X2;Z) - I(X1;Z|X2)
    F7,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::F1,
        Identity::F2,
        Identity::F3,
        Identity::F4,
        Identity::F5,
        Identity::F6,
        Identity::F7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::F1 => "f1",
            Identity::F2 => "f2",
            Identity::F3 => "f3",
            Identity::F4 => "f4",
            Identity::F5 => "f5",
            Identity::F6 => "f6",
            Identity::F7 => "f7",
        }
    }

    fn closed_form(self, p: &ChannelParams, rho: f64) -> Result<f64> {
        Ok(match self {
            Identity::F1 => p.f1(rho)?.value() - p.c1(),
            Identity::F2 => p.f2(rho)?.value() - p.c2(),
            Identity::F3 => p.f3(rho)?.value() - p.c1() - p.c2(),
            Identity::F4 => p.f4(rho)?.value(),
            Identity::F5 => p.f5(rho)?.value(),
            Identity::F6 => p.f6(rho)?.value(),
            Identity::F7 => p.f7(rho)?.value(),
        })
    }

    fn oracle(self, s: &GaussianSystem) -> Result<f64> {
        let mi = |t| gaussian_mi(s, t);
        Ok(match self {
            Identity::F1 => mi(MiTerm::X2YGivenX1)?,
            Identity::F2 => mi(MiTerm::X1YGivenX2)?,
            Identity::F3 => -mi(MiTerm::X1X2)?,
            Identity::F4 => mi(MiTerm::SumY)?,
            Identity::F5 => mi(MiTerm::SumZ)?,
            Identity::F6 => mi(MiTerm::SumZ)? - mi(MiTerm::X2ZGivenX1)?,
            Identity::F7 => mi(MiTerm::SumZ)? - mi(MiTerm::X1ZGivenX2)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub trial: usize,
    pub identity: Identity,
    pub p1: f64,
    pub p2: f64,
    pub g: f64,
    pub rho: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: usize,
    pub skipped: usize,
    pub max_deviation: f64,
    pub worst: Option<Deviation>,
    pub failures: Vec<Deviation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A single draw: link capacities and correlation on top of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub params: ChannelParams,
    pub rho: f64,
}

/// Reproducible random draws. Powers are log-uniform on [1e-2, 1e2],
/// links uniform on [0, 5], and the gain uniform on [0, 0.99); about one
/// draw in twenty has g = 0 and one in fifty sits at rho = +-1.
pub fn random_draws(trials: usize, seed: u64) -> Vec<Draw> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let p1 = 10f64.powf(rng.gen_range(-2.0..=2.0));
            let p2 = 10f64.powf(rng.gen_range(-2.0..=2.0));
            let c1 = rng.gen_range(0.0..=5.0);
            let c2 = rng.gen_range(0.0..=5.0);
            let g = if rng.gen_bool(0.05) {
                0.0
            } else {
                rng.gen_range(0.0..0.99)
            };
            let rho = if rng.gen_bool(0.02) {
                if rng.gen_bool(0.5) {
                    1.0
                } else {
                    -1.0
                }
            } else {
                rng.gen_range(-1.0..=1.0)
            };
            Draw {
                params: ChannelParams::new(p1, p2, c1, c2, g).expect("draw ranges are valid"),
                rho,
            }
        })
        .collect()
}

enum Outcome {
    Checked(Deviation),
    Skipped(String),
}

fn check_draw(trial: usize, d: &Draw) -> Vec<Outcome> {
    let p = &d.params;
    let system = GaussianSystem::new(p, d.rho).expect("rho within [-1, 1]");
    Identity::ALL
        .iter()
        .map(|&id| {
            let closed = id.closed_form(p, d.rho).expect("rho within [-1, 1]");
            let oracle = match id.oracle(&system) {
                Ok(v) => v,
                Err(Error::SingularCovariance { block, .. }) => {
                    let what = if closed.is_finite() {
                        ""
                    } else {
                        " (closed form is -inf)"
                    };
                    return Outcome::Skipped(format!(
                        "trial {trial}: {} skipped at rho = {}, singular block {block}{what}",
                        id.name(),
                        d.rho
                    ));
                }
                Err(e) => return Outcome::Skipped(format!("trial {trial}: {} skipped: {e}", id.name())),
            };
            Outcome::Checked(Deviation {
                trial,
                identity: id,
                p1: p.p1(),
                p2: p.p2(),
                g: p.g(),
                rho: d.rho,
                closed_form: closed,
                oracle,
                deviation: (closed - oracle).abs(),
            })
        })
        .collect()
}

/// Compares every closed form with its information-theoretic counterpart
/// over `trials` seeded draws.
pub fn validate_closed_forms(trials: usize, seed: u64, tolerance: f64) -> Result<ValidationReport> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tolerance",
            value: tolerance,
            reason: "must be positive",
        });
    }
    let draws = random_draws(trials, seed);
    let outcomes: Vec<Vec<Outcome>> = draws
        .par_iter()
        .enumerate()
        .map(|(i, d)| check_draw(i, d))
        .collect();

    let mut report = ValidationReport {
        trials,
        seed,
        tolerance,
        checks: 0,
        skipped: 0,
        max_deviation: 0.0,
        worst: None,
        failures: Vec::new(),
        notes: Vec::new(),
    };
    for o in outcomes.into_iter().flatten() {
        match o {
            Outcome::Skipped(note) => {
                report.skipped += 1;
                report.notes.push(note);
            }
            Outcome::Checked(d) => {
                report.checks += 1;
                if d.deviation > report.max_deviation || report.worst.is_none() {
                    report.max_deviation = report.max_deviation.max(d.deviation);
                    report.worst = Some(d.clone());
                }
                // NaN deviations must fail too.
                if !(d.deviation <= tolerance) {
                    report.failures.push(d);
                }
            }
        }
    }
    Ok(report)
}
