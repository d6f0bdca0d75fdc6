//! Bounds when only the source holds the fictitious message and the relays
//! encode deterministically. The randomness has to cross the broadcast
//! links, so `f5` is charged against every term.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ChannelParams, RandomnessBudget};
use crate::rate::RateValue;
use crate::report::BoundReport;
use crate::scalar_opt::{evaluate_at, maximize_min, MinObjective, OptimizationResult, Term};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioTwoBounds {
    pub upper: BoundReport,
    pub lower_df: BoundReport,
    pub lower_pdfdfm: BoundReport,
    pub lower_pdfpdfm: BoundReport,
    /// PDF-DF-M and PDF-PDF-M without multicoding (rho = 0).
    pub lower_pdfdf: BoundReport,
    pub lower_pdfpdf: BoundReport,
    /// Best of the lower bounds, never negative.
    pub lower: f64,
    /// Whether `C1 > f6` and `C2 > f7` hold at the PDF-PDF-M optimum.
    pub indicator_satisfied: bool,
    pub diagnostics: Vec<String>,
}

pub(crate) fn df_objective(p: &ChannelParams) -> MinObjective<'_> {
    MinObjective::new(vec![
        Term::new("C1-f5", |r| RateValue::finite(p.c1()) - p.f5_at(r)),
        Term::new("C2-f5", |r| RateValue::finite(p.c2()) - p.f5_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ])
}

pub(crate) fn pdfdfm_objective(p: &ChannelParams) -> MinObjective<'_> {
    MinObjective::new(vec![
        Term::new("f1-f5", |r| p.f1_at(r) - p.f5_at(r)),
        Term::new("f2-f5", |r| p.f2_at(r) - p.f5_at(r)),
        Term::new("f3-2f5", |r| p.f3_at(r) - p.f5_at(r) - p.f5_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ])
}

pub(crate) fn pdfpdfm_objective(p: &ChannelParams) -> MinObjective<'_> {
    MinObjective::new(vec![
        Term::new("f1-f5", |r| p.f1_at(r) - p.f5_at(r)),
        Term::new("f2-f5", |r| p.f2_at(r) - p.f5_at(r)),
        Term::new("f3-f5", |r| p.f3_at(r) - p.f5_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ])
    .gated(|r| indicator_at(p, r))
}

/// The strict relay constraints `C1 > f6(rho)` and `C2 > f7(rho)` of the
/// PDF-PDF-M scheme, compared without tolerance.
pub fn pdfpdfm_indicator(p: &ChannelParams, rho: f64) -> Result<bool> {
    p.f6(rho)?;
    Ok(indicator_at(p, rho))
}

fn indicator_at(p: &ChannelParams, rho: f64) -> bool {
    p.c1() > p.f6_at(rho).value() && p.c2() > p.f7_at(rho).value()
}

fn expect_opt(obj: &MinObjective<'_>, lo: f64, hi: f64) -> OptimizationResult {
    maximize_min(obj, lo, hi).expect("interval endpoints are ordered")
}

/// The converse bound `max(T1, T2, T3)`.
///
/// T1 is searched over `[-rho_bar, 0]`, which extends below -1 when the
/// powers differ; the report notes when the optimum lands there.
pub fn upper_bound_s2(p: &ChannelParams) -> BoundReport {
    let rs = p.rho_star();
    let rb = p.rho_bar();
    let (f1_zero, f2_zero, f3_zero) = (p.f1_at(0.0), p.f2_at(0.0), p.f3_at(0.0));

    let t1 = MinObjective::new(vec![
        Term::new("f1(0)-f5", |r| f1_zero - p.f5_at(r)),
        Term::new("f2(0)-f5", |r| f2_zero - p.f5_at(r)),
        Term::new("f3(0)-f5", |r| f3_zero - p.f5_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ]);
    let t2 = MinObjective::new(vec![
        Term::new("f1-f5", |r| p.f1_at(r) - p.f5_at(r)),
        Term::new("f2-f5", |r| p.f2_at(r) - p.f5_at(r)),
        Term::new("f3-f5", |r| p.f3_at(r) - p.f5_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ]);
    let t3 = MinObjective::new(vec![
        Term::new("f1-f5", |r| p.f1_at(r) - p.f5_at(r)),
        Term::new("f2-f5", |r| p.f2_at(r) - p.f5_at(r)),
        Term::new("f3(0)-f5", |r| f3_zero - p.f5_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ]);

    let mut t1_report = BoundReport::upper("T1", expect_opt(&t1, -rb, 0.0));
    if t1_report.rho < -1.0 {
        t1_report
            .notes
            .push("optimum lies in the extended converse range below -1".to_string());
    }
    let branches = [
        t1_report,
        BoundReport::upper("T2", expect_opt(&t2, 0.0, rs)),
        BoundReport::upper("T3", expect_opt(&t3, rs, 1.0)),
    ];
    let winner = branches
        .iter()
        .reduce(|a, b| if a.value >= b.value { a } else { b })
        .expect("three branches")
        .clone();

    BoundReport {
        name: "UB2",
        value: winner.value,
        rate: winner.value.value(),
        rho: winner.rho,
        binding: winner.binding.clone(),
        branch: Some(winner.name),
        notes: winner.notes.clone(),
        components: branches.to_vec(),
    }
}

fn check_point(p: &ChannelParams, budget: RandomnessBudget, rho: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::Domain {
            function: "lower bound",
            rho,
            lo: -1.0,
            hi: 1.0,
        });
    }
    let required = p.f5_at(rho).value();
    if !budget.allows(required) {
        return Err(Error::BudgetInfeasible {
            rho,
            required,
            budget: budget.as_f64(),
        });
    }
    Ok(())
}

/// `min(C1, C2, f4) - f5`, clamped at zero.
pub fn lower_bound_df2(p: &ChannelParams, budget: RandomnessBudget, rho: f64) -> Result<RateValue> {
    check_point(p, budget, rho)?;
    Ok(RateValue::finite(df_objective(p).eval(rho).clamp_nonneg()))
}

/// `min(f1, f2, f3 - f5, f4) - f5`, clamped at zero.
pub fn lower_bound_pdfdfm2(p: &ChannelParams, budget: RandomnessBudget, rho: f64) -> Result<RateValue> {
    check_point(p, budget, rho)?;
    Ok(RateValue::finite(pdfdfm_objective(p).eval(rho).clamp_nonneg()))
}

/// `(min(f1, f2, f3, f4) - f5) * 1{C1 > f6, C2 > f7}`, clamped at zero.
pub fn lower_bound_pdfpdfm2(p: &ChannelParams, budget: RandomnessBudget, rho: f64) -> Result<RateValue> {
    check_point(p, budget, rho)?;
    Ok(RateValue::finite(pdfpdfm_objective(p).eval(rho).clamp_nonneg()))
}

/// All scenario-2 bounds, each scheme at its own best feasible rho in
/// `[-1, 1]`; negative correlation can pay off here because it lowers the
/// randomness charge `f5`.
pub fn best_lower_bound_s2(p: &ChannelParams, budget: RandomnessBudget) -> ScenarioTwoBounds {
    let upper = upper_bound_s2(p);

    let rho_max = match p.f5_inverse(budget) {
        Ok(r) => r,
        Err(e) => {
            let note = format!("no feasible correlation: {e}");
            return ScenarioTwoBounds {
                upper,
                lower_df: BoundReport::infeasible("DF", note.clone()),
                lower_pdfdfm: BoundReport::infeasible("PDF-DF-M", note.clone()),
                lower_pdfpdfm: BoundReport::infeasible("PDF-PDF-M", note.clone()),
                lower_pdfdf: BoundReport::infeasible("PDF-DF", note.clone()),
                lower_pdfpdf: BoundReport::infeasible("PDF-PDF", note.clone()),
                lower: 0.0,
                indicator_satisfied: false,
                diagnostics: vec![note],
            };
        }
    };
    let mut diagnostics = Vec::new();
    if rho_max < 1.0 {
        diagnostics.push(format!("budget limits rho to [-1, {rho_max:.6}]"));
    }

    let df = df_objective(p);
    let pdfdfm = pdfdfm_objective(p);
    let pdfpdfm = pdfpdfm_objective(p);

    let lower_df = BoundReport::lower("DF", expect_opt(&df, -1.0, rho_max));
    let lower_pdfdfm = BoundReport::lower("PDF-DF-M", expect_opt(&pdfdfm, -1.0, rho_max));
    let lower_pdfpdfm = BoundReport::lower("PDF-PDF-M", expect_opt(&pdfpdfm, -1.0, rho_max));
    let (lower_pdfdf, lower_pdfpdf) = if rho_max >= 0.0 {
        (
            BoundReport::lower("PDF-DF", evaluate_at(&pdfdfm, 0.0)),
            BoundReport::lower("PDF-PDF", evaluate_at(&pdfpdfm, 0.0)),
        )
    } else {
        let note = format!("rho = 0 needs R' >= {}", p.f5_at(0.0));
        (
            BoundReport::infeasible("PDF-DF", note.clone()),
            BoundReport::infeasible("PDF-PDF", note),
        )
    };
    let indicator_satisfied = indicator_at(p, lower_pdfpdfm.rho);

    let lower = [
        &lower_df,
        &lower_pdfdfm,
        &lower_pdfpdfm,
        &lower_pdfdf,
        &lower_pdfpdf,
    ]
    .iter()
    .map(|b| b.rate)
    .fold(0.0, f64::max);

    ScenarioTwoBounds {
        upper,
        lower_df,
        lower_pdfdfm,
        lower_pdfpdfm,
        lower_pdfdf,
        lower_pdfpdf,
        lower,
        indicator_satisfied,
        diagnostics,
    }
}
