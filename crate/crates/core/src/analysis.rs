//! Checks built on top of the bounds: where upper and lower bounds meet,
//! how the PDF gap closes at high power, where schemes overtake each other,
//! and how much an eavesdropper costs compared with no secrecy constraint.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ChannelParams, RandomnessBudget};
use crate::rate::RateValue;
use crate::scalar_opt::bisect_root;
use crate::scenario_one::{self, ScenarioOneBounds};
use crate::scenario_two::{self, ScenarioTwoBounds};

/// Agreement required between the capacity formula and both bounds.
pub const CAPACITY_TOL: f64 = 1e-6;

// ---------------------------------------------------------------------------
// Capacity condition for scenario 2
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuxiliaryInequality {
    Neither,
    /// `f1(rho*) - f5(rho*) <= f3(rho') - f5(rho')`
    RelayCut,
    /// `f3(0) - f5(rho*) <= f3(rho') - f5(rho')`
    BroadcastCut,
    Both,
}

impl AuxiliaryInequality {
    fn from_flags(relay: bool, broadcast: bool) -> Self {
        match (relay, broadcast) {
            (false, false) => AuxiliaryInequality::Neither,
            (true, false) => AuxiliaryInequality::RelayCut,
            (false, true) => AuxiliaryInequality::BroadcastCut,
            (true, true) => AuxiliaryInequality::Both,
        }
    }

    pub fn holds(self) -> bool {
        self != AuxiliaryInequality::Neither
    }
}

/// Outcome of [`symmetric_capacity`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityVerdict {
    pub applies: bool,
    /// Crossing `f3(rho') = f4(rho')` on `[0, rho*]`, if it exists.
    pub rho_prime: Option<f64>,
    /// `f3(rho') - f5(rho')`.
    pub capacity: Option<RateValue>,
    pub condition_lower: f64,
    pub condition_upper: f64,
    pub auxiliary: AuxiliaryInequality,
    pub upper: f64,
    pub lower: f64,
    pub diagnostics: Vec<String>,
}

/// Window of link capacities `[lo, hi]` in which a symmetric channel with
/// relay power `p` has its scenario-2 capacity pinned by the crossing of
/// `f3` and `f4`. Independent of `g`.
pub fn capacity_window(p: f64) -> Result<(f64, f64)> {
    let params = ChannelParams::symmetric(p, 0.0, 0.0)?;
    let rs = params.rho_star();
    let lo = 0.25 * (1.0 + 2.0 * p).log2();
    let hi = 0.25 * (1.0 + 2.0 * (1.0 + rs) * p).log2() - 0.25 * ((1.0 - rs) * (1.0 + rs)).log2();
    Ok((lo, hi))
}

/// Decides whether the PDF-PDF-M rate equals the scenario-2 upper bound
/// and, if so, certifies the capacity `f3(rho') - f5(rho')` numerically.
///
/// Requires exactly symmetric parameters and enough randomness to make
/// every rho feasible.
pub fn symmetric_capacity(params: &ChannelParams, budget: RandomnessBudget) -> Result<CapacityVerdict> {
    if !params.is_symmetric() {
        return Err(Error::AsymmetricParams);
    }
    if params.f5_inverse(budget)? < 1.0 {
        return Err(Error::InvalidParameter {
            name: "rprime",
            value: budget.as_f64(),
            reason: "capacity condition needs R' >= f5(1)",
        });
    }
    let c = params.c1();
    let rs = params.rho_star();
    let (condition_lower, condition_upper) = capacity_window(params.p1())?;
    let in_window = condition_lower <= c && c <= condition_upper;

    let s2 = scenario_two::best_lower_bound_s2(params, budget);
    let mut verdict = CapacityVerdict {
        applies: false,
        rho_prime: None,
        capacity: None,
        condition_lower,
        condition_upper,
        auxiliary: AuxiliaryInequality::Neither,
        upper: s2.upper.rate,
        lower: s2.lower,
        diagnostics: Vec::new(),
    };
    if !in_window {
        verdict
            .diagnostics
            .push(format!("C = {c} outside [{condition_lower}, {condition_upper}]"));
    }

    let crossing = |r: f64| (params.f3_at(r) - params.f4_at(r)).value();
    let rho_prime = match bisect_root(crossing, 0.0, rs) {
        Ok(r) => r,
        Err(e) => {
            verdict
                .diagnostics
                .push(format!("no crossing of f3 and f4 on [0, rho*]: {e}"));
            return Ok(verdict);
        }
    };
    let capacity = params.f3_at(rho_prime) - params.f5_at(rho_prime);
    let relay = (params.f1_at(rs) - params.f5_at(rs)).value() <= capacity.value();
    let broadcast = (params.f3_at(0.0) - params.f5_at(rs)).value() <= capacity.value();
    verdict.rho_prime = Some(rho_prime);
    verdict.capacity = Some(capacity);
    verdict.auxiliary = AuxiliaryInequality::from_flags(relay, broadcast);
    if !verdict.auxiliary.holds() {
        verdict
            .diagnostics
            .push("neither auxiliary inequality holds".to_string());
    }
    verdict.applies = in_window && verdict.auxiliary.holds();

    if verdict.applies {
        for (what, v) in [("upper bound", verdict.upper), ("lower bound", verdict.lower)] {
            if (v - capacity.value()).abs() > CAPACITY_TOL {
                return Err(Error::NumericalMismatch {
                    what: format!("scenario-2 {what} vs f3(rho') - f5(rho')"),
                    lhs: v,
                    rhs: capacity.value(),
                });
            }
        }
    }
    Ok(verdict)
}

// ---------------------------------------------------------------------------
// High-power behaviour of the PDF scheme (scenario 1)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapPoint {
    pub power: f64,
    pub upper: f64,
    pub pdf: f64,
    pub gap: f64,
    /// `f4(0) - f5(0)`, which tends to `1/2 log2(1/g)`.
    pub mac_term: f64,
}

/// Limit of the MAC secrecy term as the relay powers grow.
pub fn asymptotic_mac_limit(g: f64) -> f64 {
    0.5 * (1.0 / g).log2()
}

/// Gap between the scenario-1 upper bound and the PDF rate for
/// P1 = P2 = P along `powers`.
pub fn pdf_gap_profile(g: f64, c1: f64, c2: f64, powers: &[f64]) -> Result<Vec<GapPoint>> {
    if !(g > 0.0) {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            reason: "asymptotic gap needs an eavesdropper (g > 0)",
        });
    }
    powers
        .iter()
        .map(|&p| {
            let params = ChannelParams::new(p, p, c1, c2, g)?;
            let upper = scenario_one::upper_bound_s1(&params).rate;
            let pdf = scenario_one::lower_bound_pdfm1(&params, RandomnessBudget::Unbounded, 0.0)?.value();
            Ok(GapPoint {
                power: p,
                upper,
                pdf,
                gap: upper - pdf,
                mac_term: params.f45_at(0.0).value(),
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Scheme crossover thresholds
// ---------------------------------------------------------------------------

/// A named rate that can be compared along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    Ub1,
    Lb1,
    Lb1Df,
    Lb1Pdf,
    Lb1Pdfm,
    Ub2,
    Lb2,
    Lb2Df,
    Lb2PdfDf,
    Lb2PdfPdf,
    Lb2PdfDfm,
    Lb2PdfPdfm,
    NoSecrecyUb,
    NoSecrecyLb,
    /// The constant 0, for activation thresholds.
    Zero,
}

impl Scheme {
    pub const ALL: [Scheme; 15] = [
        Scheme::Ub1,
        Scheme::Lb1,
        Scheme::Lb1Df,
        Scheme::Lb1Pdf,
        Scheme::Lb1Pdfm,
        Scheme::Ub2,
        Scheme::Lb2,
        Scheme::Lb2Df,
        Scheme::Lb2PdfDf,
        Scheme::Lb2PdfPdf,
        Scheme::Lb2PdfDfm,
        Scheme::Lb2PdfPdfm,
        Scheme::NoSecrecyUb,
        Scheme::NoSecrecyLb,
        Scheme::Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ub1 => "ub1",
            Scheme::Lb1 => "lb1",
            Scheme::Lb1Df => "lb1_df",
            Scheme::Lb1Pdf => "lb1_pdf",
            Scheme::Lb1Pdfm => "lb1_pdfm",
            Scheme::Ub2 => "ub2",
            Scheme::Lb2 => "lb2",
            Scheme::Lb2Df => "lb2_df",
            Scheme::Lb2PdfDf => "lb2_pdfdf",
            Scheme::Lb2PdfPdf => "lb2_pdfpdf",
            Scheme::Lb2PdfDfm => "lb2_pdfdfm",
            Scheme::Lb2PdfPdfm => "lb2_pdfpdfm",
            Scheme::NoSecrecyUb => "nosecrecy_ub",
            Scheme::NoSecrecyLb => "nosecrecy_lb",
            Scheme::Zero => "zero",
        }
    }

    fn needs_one(self) -> bool {
        matches!(
            self,
            Scheme::Ub1 | Scheme::Lb1 | Scheme::Lb1Df | Scheme::Lb1Pdf | Scheme::Lb1Pdfm
        )
    }

    fn needs_two(self) -> bool {
        matches!(
            self,
            Scheme::Ub2
                | Scheme::Lb2
                | Scheme::Lb2Df
                | Scheme::Lb2PdfDf
                | Scheme::Lb2PdfPdf
                | Scheme::Lb2PdfDfm
                | Scheme::Lb2PdfPdfm
        )
    }

    fn needs_baseline(self) -> bool {
        matches!(self, Scheme::NoSecrecyUb | Scheme::NoSecrecyLb)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown scheme `{s}`"))
    }
}

/// Rates of several schemes on one channel, computing each scenario once.
pub fn scheme_rates(schemes: &[Scheme], params: &ChannelParams, budget: RandomnessBudget) -> Vec<f64> {
    let one = schemes
        .iter()
        .any(|s| s.needs_one())
        .then(|| scenario_one::best_lower_bound_s1(params, budget));
    let two = schemes
        .iter()
        .any(|s| s.needs_two())
        .then(|| scenario_two::best_lower_bound_s2(params, budget));
    let base = schemes.iter().any(|s| s.needs_baseline()).then(|| {
        scenario_one::best_lower_bound_s1(&params.without_eavesdropper(), RandomnessBudget::Unbounded)
    });
    let s1 = |f: fn(&ScenarioOneBounds) -> f64| f(one.as_ref().expect("scenario 1 computed"));
    let s2 = |f: fn(&ScenarioTwoBounds) -> f64| f(two.as_ref().expect("scenario 2 computed"));
    let ns = |f: fn(&ScenarioOneBounds) -> f64| f(base.as_ref().expect("baseline computed"));
    schemes
        .iter()
        .map(|s| match s {
            Scheme::Ub1 => s1(|b| b.upper.rate),
            Scheme::Lb1 => s1(|b| b.lower),
            Scheme::Lb1Df => s1(|b| b.lower_df.rate),
            Scheme::Lb1Pdf => s1(|b| b.lower_pdf.rate),
            Scheme::Lb1Pdfm => s1(|b| b.lower_pdfm.rate),
            Scheme::Ub2 => s2(|b| b.upper.rate),
            Scheme::Lb2 => s2(|b| b.lower),
            Scheme::Lb2Df => s2(|b| b.lower_df.rate),
            Scheme::Lb2PdfDf => s2(|b| b.lower_pdfdf.rate),
            Scheme::Lb2PdfPdf => s2(|b| b.lower_pdfpdf.rate),
            Scheme::Lb2PdfDfm => s2(|b| b.lower_pdfdfm.rate),
            Scheme::Lb2PdfPdfm => s2(|b| b.lower_pdfpdfm.rate),
            Scheme::NoSecrecyUb => ns(|b| b.upper.rate),
            Scheme::NoSecrecyLb => ns(|b| b.lower),
            Scheme::Zero => 0.0,
        })
        .collect()
}

/// Channels indexed by the link capacity C: C1 = C, C2 = C + `c2_offset`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CapacityFamily {
    pub p1: f64,
    pub p2: f64,
    pub g: f64,
    pub c2_offset: f64,
}

impl CapacityFamily {
    pub fn symmetric(p: f64, g: f64) -> Self {
        CapacityFamily {
            p1: p,
            p2: p,
            g,
            c2_offset: 0.0,
        }
    }

    pub fn at(&self, c: f64) -> Result<ChannelParams> {
        ChannelParams::new(self.p1, self.p2, c, c + self.c2_offset, self.g)
    }
}

/// Grid and tolerances for [`detect_thresholds`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdSearch {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    /// Bisection stops once the C bracket is this narrow.
    pub c_tol: f64,
    /// Differences within this band count as ties.
    pub tie_tol: f64,
}

impl Default for ThresholdSearch {
    fn default() -> Self {
        ThresholdSearch {
            from: 0.0,
            to: 3.0,
            steps: 301,
            c_tol: 1e-6,
            tie_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ordering3 {
    Below,
    Tie,
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub c: f64,
    /// How `lhs` compares with the best of `rhs` just below and above `c`.
    pub before: Ordering3,
    pub after: Ordering3,
    /// Schemes within the tie band of each other at `c`.
    pub tied: Vec<Scheme>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub parameter: &'static str,
    pub lhs: Scheme,
    pub rhs: Vec<Scheme>,
    /// Sorted by `c`.
    pub crossings: Vec<Crossing>,
}

impl ThresholdReport {
    /// Intervals of C where `lhs` strictly beats every `rhs` scheme, with
    /// the search range closing any interval left open at its ends.
    pub fn winning_intervals(&self, search: &ThresholdSearch) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        let mut start = None;
        let initially_above = self
            .crossings
            .first()
            .map(|c| c.before == Ordering3::Above)
            .unwrap_or(false);
        if initially_above {
            start = Some(search.from);
        }
        for c in &self.crossings {
            if c.after == Ordering3::Above && c.before != Ordering3::Above {
                start = Some(c.c);
            } else if c.before == Ordering3::Above && c.after != Ordering3::Above {
                if let Some(s) = start.take() {
                    out.push((s, c.c));
                }
            }
        }
        if let Some(s) = start {
            out.push((s, search.to));
        }
        out
    }
}

/// Finds the link capacities where `lhs - max(rhs)` changes sign (ties
/// counting as their own class), bracketing each change on the grid and
/// then bisecting.
pub fn detect_thresholds(
    family: &CapacityFamily,
    budget: RandomnessBudget,
    lhs: Scheme,
    rhs: &[Scheme],
    search: &ThresholdSearch,
) -> Result<ThresholdReport> {
    if rhs.is_empty() {
        return Err(Error::InvalidParameter {
            name: "rhs",
            value: 0.0,
            reason: "need at least one scheme to compare against",
        });
    }
    if search.steps < 2 || !(search.from < search.to) {
        return Err(Error::EmptyInterval {
            lo: search.from,
            hi: search.to,
        });
    }
    let mut schemes = vec![lhs];
    schemes.extend_from_slice(rhs);

    let classify = |c: f64| -> Result<(Ordering3, Vec<f64>)> {
        let rates = scheme_rates(&schemes, &family.at(c)?, budget);
        let best = rates[1..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let d = rates[0] - best;
        let class = if d > search.tie_tol {
            Ordering3::Above
        } else if d < -search.tie_tol {
            Ordering3::Below
        } else {
            Ordering3::Tie
        };
        Ok((class, rates))
    };

    let n = search.steps;
    let grid: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                search.to
            } else {
                search.from + (search.to - search.from) * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let classes = grid
        .iter()
        .map(|&c| classify(c).map(|(k, _)| k))
        .collect::<Result<Vec<_>>>()?;

    let mut crossings = Vec::new();
    for i in 1..n {
        if classes[i] == classes[i - 1] {
            continue;
        }
        let (mut a, mut b) = (grid[i - 1], grid[i]);
        let before = classes[i - 1];
        while b - a > search.c_tol {
            let mid = 0.5 * (a + b);
            if classify(mid)?.0 == before {
                a = mid;
            } else {
                b = mid;
            }
        }
        let c = 0.5 * (a + b);
        let after = classify(b)?.0;
        let (_, rates) = classify(c)?;
        let best = rates[1..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let band = search.tie_tol.max(1e-6);
        let tied = schemes
            .iter()
            .zip(&rates)
            .filter(|(_, &r)| (r - best).abs() <= band)
            .map(|(s, _)| *s)
            .collect();
        crossings.push(Crossing {
            c,
            before,
            after,
            tied,
        });
    }

    Ok(ThresholdReport {
        parameter: "C",
        lhs,
        rhs: rhs.to_vec(),
        crossings,
    })
}

/// Multicoding versus its own special cases: PDF-M against PDF and DF in
/// scenario 1, PDF-PDF-M against PDF-PDF and DF in scenario 2.
pub fn default_comparison(scenario_two: bool) -> (Scheme, Vec<Scheme>) {
    if scenario_two {
        (Scheme::Lb2PdfPdfm, vec![Scheme::Lb2PdfPdf, Scheme::Lb2Df])
    } else {
        (Scheme::Lb1Pdfm, vec![Scheme::Lb1Pdf, Scheme::Lb1Df])
    }
}

// ---------------------------------------------------------------------------
// Cost of secrecy
// ---------------------------------------------------------------------------

/// Agreement tolerance used when flagging equal bounds.
pub const COMPARE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub c: f64,
    pub nosecrecy_ub: f64,
    pub nosecrecy_lb: f64,
    pub ub1: f64,
    pub lb1: f64,
    pub ub2: f64,
    pub lb2: f64,
    /// No-secrecy upper bound equals the scenario-1 lower bound: the
    /// eavesdropper costs nothing here.
    pub free_secrecy: bool,
    /// No-secrecy lower bound strictly exceeds the scenario-2 upper bound.
    pub secrecy_costs_scenario_two: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoSecrecyComparison {
    pub rows: Vec<ComparisonRow>,
    /// Largest grid C such that every grid point up to it has free secrecy.
    pub free_secrecy_up_to: Option<f64>,
    pub scenario_two_always_costs: bool,
}

/// Compares both scenarios with the same channel stripped of its
/// eavesdropper along a grid of link capacities.
pub fn no_secrecy_compare(
    family: &CapacityFamily,
    budget: RandomnessBudget,
    c_grid: &[f64],
) -> Result<NoSecrecyComparison> {
    let rows = c_grid
        .iter()
        .map(|&c| {
            let params = family.at(c)?;
            let r = scheme_rates(
                &[
                    Scheme::NoSecrecyUb,
                    Scheme::NoSecrecyLb,
                    Scheme::Ub1,
                    Scheme::Lb1,
                    Scheme::Ub2,
                    Scheme::Lb2,
                ],
                &params,
                budget,
            );
            Ok(ComparisonRow {
                c,
                nosecrecy_ub: r[0],
                nosecrecy_lb: r[1],
                ub1: r[2],
                lb1: r[3],
                ub2: r[4],
                lb2: r[5],
                free_secrecy: (r[0] - r[3]).abs() <= COMPARE_TOL,
                secrecy_costs_scenario_two: r[1] > r[4],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let free_secrecy_up_to = rows.iter().take_while(|r| r.free_secrecy).last().map(|r| r.c);
    let scenario_two_always_costs = rows.iter().all(|r| r.secrecy_costs_scenario_two);
    Ok(NoSecrecyComparison {
        rows,
        free_secrecy_up_to,
        scenario_two_always_costs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn window_endpoints() {
        let (lo, hi) = capacity_window(10.0).unwrap();
        assert_abs_diff_eq!(lo, 1.098_079_355_694_69, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 2.179_215_439_919_749, epsilon = 1e-12);
        let (lo, hi) = capacity_window(100.0).unwrap();
        assert_abs_diff_eq!(lo, 1.912_762_922_794_732, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 3.823_733_710_364_39, epsilon = 1e-12);
    }

    #[test]
    fn capacity_inside_window() {
        let p = ChannelParams::symmetric(10.0, 1.5, 0.1).unwrap();
        let v = symmetric_capacity(&p, RandomnessBudget::Unbounded).unwrap();
        assert!(v.applies);
        assert_abs_diff_eq!(v.rho_prime.unwrap(), 0.678_189_370_176_168, epsilon = 1e-11);
        assert_abs_diff_eq!(
            v.capacity.unwrap().value(),
            1.494_030_010_602_143_6,
            epsilon = 1e-10
        );
        assert!(v.auxiliary.holds());
    }

    #[test]
    fn capacity_outside_window() {
        let p = ChannelParams::symmetric(10.0, 0.5, 0.1).unwrap();
        let v = symmetric_capacity(&p, RandomnessBudget::Unbounded).unwrap();
        assert!(!v.applies);
        assert!(v.rho_prime.is_none());
        assert!(!v.diagnostics.is_empty());
    }

    #[test]
    fn capacity_needs_symmetry() {
        let p = ChannelParams::new(10.0, 10.0, 1.5, 1.6, 0.1).unwrap();
        assert_eq!(
            symmetric_capacity(&p, RandomnessBudget::Unbounded),
            Err(Error::AsymmetricParams)
        );
        let p = ChannelParams::new(10.0, 10.000001, 1.5, 1.5, 0.1).unwrap();
        assert_eq!(
            symmetric_capacity(&p, RandomnessBudget::Unbounded),
            Err(Error::AsymmetricParams)
        );
        let p = ChannelParams::symmetric(10.0, 1.5, 0.1).unwrap();
        assert!(symmetric_capacity(&p, RandomnessBudget::Finite(0.1)).is_err());
    }

    #[test]
    fn mac_term_limit() {
        assert_abs_diff_eq!(asymptotic_mac_limit(0.1), 1.660_964_047_443_681, epsilon = 1e-13);
        let pts = pdf_gap_profile(0.1, 1.0, 1.0, &[1e8]).unwrap();
        assert_abs_diff_eq!(pts[0].mac_term, asymptotic_mac_limit(0.1), epsilon = 1e-7);
        assert!(pdf_gap_profile(0.0, 1.0, 1.0, &[10.0]).is_err());
    }

    #[test]
    fn gap_shrinks_with_power() {
        let pts = pdf_gap_profile(0.1, 1.0, 1.0, &[10.0, 1e3]).unwrap();
        assert!(pts[1].gap < pts[0].gap);
        let far = pdf_gap_profile(0.1, 1.0, 1.0, &[1e6]).unwrap();
        assert!(far[0].gap <= 1e-3);
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert!("nope".parse::<Scheme>().is_err());
    }

    #[test]
    fn degenerate_comparison_has_no_crossings() {
        let family = CapacityFamily::symmetric(5.0, 0.0);
        let search = ThresholdSearch {
            steps: 31,
            ..ThresholdSearch::default()
        };
        let r = detect_thresholds(
            &family,
            RandomnessBudget::Unbounded,
            Scheme::Lb1Df,
            &[Scheme::Lb1Df],
            &search,
        )
        .unwrap();
        assert!(r.crossings.is_empty());
        assert!(r.winning_intervals(&search).is_empty());
    }

    #[test]
    fn lower_crossing_at_p10() {
        let family = CapacityFamily::symmetric(10.0, 0.1);
        let search = ThresholdSearch {
            from: 0.5,
            to: 0.9,
            steps: 41,
            ..ThresholdSearch::default()
        };
        let (lhs, rhs) = default_comparison(false);
        let r = detect_thresholds(&family, RandomnessBudget::Unbounded, lhs, &rhs, &search).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_abs_diff_eq!(r.crossings[0].c, 0.701_838_730_514_401, epsilon = 1e-5);
        assert_eq!(r.crossings[0].before, Ordering3::Tie);
        assert_eq!(r.crossings[0].after, Ordering3::Above);
    }

    #[test]
    fn comparison_at_zero_gain_is_self_consistent() {
        let family = CapacityFamily::symmetric(10.0, 0.0);
        let cmp = no_secrecy_compare(&family, RandomnessBudget::Unbounded, &[0.2, 0.8, 1.7]).unwrap();
        for row in &cmp.rows {
            assert_eq!(row.nosecrecy_ub, row.ub1);
            assert_eq!(row.nosecrecy_lb, row.lb1);
            assert!((row.ub2 - row.ub1).abs() < 1e-9);
            assert!((row.lb2 - row.lb1).abs() < 1e-9);
        }
    }
}
