//! One-parameter sweeps producing every bound per grid point.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ChannelParams, RandomnessBudget};
use crate::scenario_one::{self, ScenarioOneBounds};
use crate::scenario_two::{self, ScenarioTwoBounds};

/// Which scenario(s) a caller is interested in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scenario {
    One,
    Two,
    Both,
}

impl Scenario {
    pub fn includes_one(self) -> bool {
        matches!(self, Scenario::One | Scenario::Both)
    }
    pub fn includes_two(self) -> bool {
        matches!(self, Scenario::Two | Scenario::Both)
    }
}

impl FromStr for Scenario {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(Scenario::One),
            "2" => Ok(Scenario::Two),
            "both" => Ok(Scenario::Both),
            other => Err(format!("unknown scenario `{other}` (expected 1, 2 or both)")),
        }
    }
}

/// Bounds for one channel instance in both scenarios, plus the no-secrecy
/// baseline (same channel with g = 0).
#[derive(Debug, Clone, Serialize)]
pub struct FullEvaluation {
    pub params: ChannelParams,
    pub budget: RandomnessBudget,
    pub scenario_one: ScenarioOneBounds,
    pub scenario_two: ScenarioTwoBounds,
    pub no_secrecy: ScenarioOneBounds,
}

impl FullEvaluation {
    pub fn new(params: &ChannelParams, budget: RandomnessBudget) -> Self {
        let quiet = params.without_eavesdropper();
        FullEvaluation {
            params: *params,
            budget,
            scenario_one: scenario_one::best_lower_bound_s1(params, budget),
            scenario_two: scenario_two::best_lower_bound_s2(params, budget),
            no_secrecy: scenario_one::best_lower_bound_s1(&quiet, RandomnessBudget::Unbounded),
        }
    }
}

/// One line of a sweep, in [`COLUMNS`] order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub swept: f64,
    pub ub1: f64,
    pub lb1_df: f64,
    pub lb1_pdf: f64,
    pub lb1_pdfm: f64,
    pub lb1: f64,
    pub ub2: f64,
    pub lb2_df: f64,
    pub lb2_pdfdfm: f64,
    pub lb2_pdfpdfm: f64,
    pub lb2: f64,
    pub rho_ub1: f64,
    pub rho_lb1_df: f64,
    pub rho_lb1_pdfm: f64,
    pub rho_ub2: f64,
    pub rho_lb2_df: f64,
    pub rho_lb2_pdfdfm: f64,
    pub rho_lb2_pdfpdfm: f64,
    pub nosecrecy_ub: f64,
    pub nosecrecy_lb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Group {
    Key,
    One,
    Two,
    Baseline,
}

const COLUMN_GROUPS: [(&str, Group); 20] = [
    ("swept", Group::Key),
    ("ub1", Group::One),
    ("lb1_df", Group::One),
    ("lb1_pdf", Group::One),
    ("lb1_pdfm", Group::One),
    ("lb1", Group::One),
    ("ub2", Group::Two),
    ("lb2_df", Group::Two),
    ("lb2_pdfdfm", Group::Two),
    ("lb2_pdfpdfm", Group::Two),
    ("lb2", Group::Two),
    ("rho_ub1", Group::One),
    ("rho_lb1_df", Group::One),
    ("rho_lb1_pdfm", Group::One),
    ("rho_ub2", Group::Two),
    ("rho_lb2_df", Group::Two),
    ("rho_lb2_pdfdfm", Group::Two),
    ("rho_lb2_pdfpdfm", Group::Two),
    ("nosecrecy_ub", Group::Baseline),
    ("nosecrecy_lb", Group::Baseline),
];

/// Every column name, in emission order.
pub const COLUMNS: [&str; 20] = {
    let mut names = [""; 20];
    let mut i = 0;
    while i < 20 {
        names[i] = COLUMN_GROUPS[i].0;
        i += 1;
    }
    names
};

impl SweepRow {
    pub fn from_evaluation(swept: f64, e: &FullEvaluation) -> Self {
        let s1 = &e.scenario_one;
        let s2 = &e.scenario_two;
        SweepRow {
            swept,
            ub1: s1.upper.rate,
            lb1_df: s1.lower_df.rate,
            lb1_pdf: s1.lower_pdf.rate,
            lb1_pdfm: s1.lower_pdfm.rate,
            lb1: s1.lower,
            ub2: s2.upper.rate,
            lb2_df: s2.lower_df.rate,
            lb2_pdfdfm: s2.lower_pdfdfm.rate,
            lb2_pdfpdfm: s2.lower_pdfpdfm.rate,
            lb2: s2.lower,
            rho_ub1: s1.upper.rho,
            rho_lb1_df: s1.lower_df.rho,
            rho_lb1_pdfm: s1.lower_pdfm.rho,
            rho_ub2: s2.upper.rho,
            rho_lb2_df: s2.lower_df.rho,
            rho_lb2_pdfdfm: s2.lower_pdfdfm.rho,
            rho_lb2_pdfpdfm: s2.lower_pdfpdfm.rho,
            nosecrecy_ub: e.no_secrecy.upper.rate,
            nosecrecy_lb: e.no_secrecy.lower,
        }
    }

    pub fn values(&self) -> [f64; 20] {
        [
            self.swept,
            self.ub1,
            self.lb1_df,
            self.lb1_pdf,
            self.lb1_pdfm,
            self.lb1,
            self.ub2,
            self.lb2_df,
            self.lb2_pdfdfm,
            self.lb2_pdfpdfm,
            self.lb2,
            self.rho_ub1,
            self.rho_lb1_df,
            self.rho_lb1_pdfm,
            self.rho_ub2,
            self.rho_lb2_df,
            self.rho_lb2_pdfdfm,
            self.rho_lb2_pdfpdfm,
            self.nosecrecy_ub,
            self.nosecrecy_lb,
        ]
    }

    /// `(column, value)` pairs restricted to a scenario.
    pub fn columns_for(&self, scenario: Scenario) -> Vec<(&'static str, f64)> {
        COLUMN_GROUPS
            .iter()
            .zip(self.values())
            .filter(|((_, group), _)| match group {
                Group::One => scenario.includes_one(),
                Group::Two => scenario.includes_two(),
                Group::Key | Group::Baseline => true,
            })
            .map(|((name, _), v)| (*name, v))
            .collect()
    }
}

/// Column names kept by [`SweepRow::columns_for`].
pub fn columns_for(scenario: Scenario) -> Vec<&'static str> {
    COLUMN_GROUPS
        .iter()
        .filter(|(_, group)| match group {
            Group::One => scenario.includes_one(),
            Group::Two => scenario.includes_two(),
            Group::Key | Group::Baseline => true,
        })
        .map(|(name, _)| *name)
        .collect()
}

/// The parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    /// Link capacity: C1 = value, C2 = value + offset.
    C,
    /// Relay power: P1 = P2 = value.
    P,
    /// Eavesdropper gain.
    G,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::C => "c",
            SweepParam::P => "p",
            SweepParam::G => "g",
        })
    }
}

impl FromStr for SweepParam {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "c" => Ok(SweepParam::C),
            "p" => Ok(SweepParam::P),
            "g" => Ok(SweepParam::G),
            other => Err(format!("unknown sweep parameter `{other}` (expected c, p or g)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    /// Supplies every parameter that is not swept.
    pub base: ChannelParams,
    /// C2 - C1 when sweeping `c`.
    pub c2_offset: f64,
    pub budget: RandomnessBudget,
}

impl Sweep {
    /// Grid values; a single step yields just `from`.
    pub fn grid(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.from],
            n => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.to
                    } else {
                        self.from + (self.to - self.from) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }

    pub fn params_at(&self, v: f64) -> Result<ChannelParams> {
        let b = &self.base;
        match self.param {
            SweepParam::C => b.with_links(v, v + self.c2_offset),
            SweepParam::P => b.with_powers(v, v),
            SweepParam::G => b.with_gain(v),
        }
    }

    /// Evaluates every grid point. All points are validated before any
    /// bound is computed.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        if self.steps == 0 {
            return Err(Error::InvalidParameter {
                name: "steps",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        let points = self
            .grid()
            .into_iter()
            .map(|v| self.params_at(v).map(|p| (v, p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(points
            .par_iter()
            .map(|(v, p)| SweepRow::from_evaluation(*v, &FullEvaluation::new(p, self.budget)))
            .collect())
    }
}
