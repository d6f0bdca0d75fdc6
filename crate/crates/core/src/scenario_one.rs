//! Bounds when the source and both relays share the fictitious message
//! (common randomness).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ChannelParams, RandomnessBudget};
use crate::rate::RateValue;
use crate::report::BoundReport;
use crate::scalar_opt::{evaluate_at, maximize_min, MinObjective, Term};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioOneBounds {
    pub upper: BoundReport,
    pub lower_df: BoundReport,
    /// PDF-M restricted to rho = 0.
    pub lower_pdf: BoundReport,
    pub lower_pdfm: BoundReport,
    /// Best of the lower bounds, never negative.
    pub lower: f64,
    pub diagnostics: Vec<String>,
}

pub(crate) fn df_objective(p: &ChannelParams) -> MinObjective<'_> {
    MinObjective::new(vec![
        Term::constant("C1", RateValue::finite(p.c1())),
        Term::constant("C2", RateValue::finite(p.c2())),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ])
}

pub(crate) fn pdfm_objective(p: &ChannelParams) -> MinObjective<'_> {
    MinObjective::new(vec![
        Term::new("f1", |r| p.f1_at(r)),
        Term::new("f2", |r| p.f2_at(r)),
        Term::new("f3", |r| p.f3_at(r)),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ])
}

fn expect_opt(obj: &MinObjective<'_>, lo: f64, hi: f64) -> crate::scalar_opt::OptimizationResult {
    maximize_min(obj, lo, hi).expect("breakpoints lie inside [0, 1]")
}

/// The converse bound `min(max(S1, S2), max(S3, S4))`.
///
/// `max(S1, S2)` is the capacity bound without a secrecy constraint; the
/// second pair accounts for leakage to the eavesdropper.
pub fn upper_bound_s1(p: &ChannelParams) -> BoundReport {
    let rs = p.rho_star();
    let f3_zero = p.f3_at(0.0);

    let s1 = MinObjective::new(vec![
        Term::new("f1", |r| p.f1_at(r)),
        Term::new("f2", |r| p.f2_at(r)),
        Term::new("f3", |r| p.f3_at(r)),
        Term::new("f4", |r| p.f4_at(r)),
    ]);
    let s2 = MinObjective::new(vec![
        Term::new("f1", |r| p.f1_at(r)),
        Term::new("f2", |r| p.f2_at(r)),
        Term::constant("f3(0)", f3_zero),
        Term::new("f4", |r| p.f4_at(r)),
    ]);
    let s3 = MinObjective::new(vec![
        Term::new("f1", |r| p.f1_at(r)),
        Term::new("f2", |r| p.f2_at(r)),
        Term::constant("f3(0)", f3_zero),
        Term::new("(f3+f4)/2", |r| (p.f3_at(r) + p.f4_at(r)) / 2.0),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ]);
    let s4 = MinObjective::new(vec![
        Term::new("f1", |r| p.f1_at(r)),
        Term::new("f2", |r| p.f2_at(r)),
        Term::constant("f3(0)", f3_zero),
        Term::new("f4-f5", |r| p.f45_at(r)),
    ]);

    let branches = [
        BoundReport::upper("S1", expect_opt(&s1, 0.0, rs)),
        BoundReport::upper("S2", expect_opt(&s2, rs, 1.0)),
        BoundReport::upper("S3", expect_opt(&s3, 0.0, rs)),
        BoundReport::upper("S4", expect_opt(&s4, rs, 1.0)),
    ];
    let pick_max = |a: &BoundReport, b: &BoundReport| if a.value >= b.value { a.clone() } else { b.clone() };
    let no_secrecy = pick_max(&branches[0], &branches[1]);
    let secrecy = pick_max(&branches[2], &branches[3]);
    let winner = if no_secrecy.value <= secrecy.value {
        no_secrecy
    } else {
        secrecy
    };

    BoundReport {
        name: "UB1",
        value: winner.value,
        rate: winner.value.value(),
        rho: winner.rho,
        binding: winner.binding.clone(),
        branch: Some(winner.name),
        components: branches.to_vec(),
        notes: Vec::new(),
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

/// Decode-and-forward: `min(C1, C2, f4 - f5)`, clamped at zero.
pub fn lower_bound_df1(p: &ChannelParams, budget: RandomnessBudget, rho: f64) -> Result<RateValue> {
    check_point(p, budget, rho)?;
    Ok(RateValue::finite(df_objective(p).eval(rho).clamp_nonneg()))
}

/// Partial DF with multicoding: `min(f1, f2, f3, f4 - f5)`, clamped at zero.
pub fn lower_bound_pdfm1(p: &ChannelParams, budget: RandomnessBudget, rho: f64) -> Result<RateValue> {
    check_point(p, budget, rho)?;
    Ok(RateValue::finite(pdfm_objective(p).eval(rho).clamp_nonneg()))
}

/// All scenario-1 bounds, each lower bound at its best feasible rho.
pub fn best_lower_bound_s1(p: &ChannelParams, budget: RandomnessBudget) -> ScenarioOneBounds {
    let upper = upper_bound_s1(p);
    let mut diagnostics = Vec::new();

    let rho_max = match p.f5_inverse(budget) {
        Ok(r) => r,
        Err(e) => {
            let note = format!("no feasible correlation: {e}");
            diagnostics.push(note.clone());
            return ScenarioOneBounds {
                upper,
                lower_df: BoundReport::infeasible("DF", note.clone()),
                lower_pdf: BoundReport::infeasible("PDF", note.clone()),
                lower_pdfm: BoundReport::infeasible("PDF-M", note),
                lower: 0.0,
                diagnostics,
            };
        }
    };

    // f4 - f5 increases in rho, so DF is best at the largest feasible rho
    let df = df_objective(p);
    let lower_df = BoundReport::lower("DF", evaluate_at(&df, rho_max));

    let pdfm = pdfm_objective(p);
    let lower_pdf = if rho_max >= 0.0 {
        BoundReport::lower("PDF", evaluate_at(&pdfm, 0.0))
    } else {
        BoundReport::infeasible("PDF", format!("rho = 0 needs R' >= {}", p.f5_at(0.0)))
    };
    // nonnegative rho suffices when it is feasible (negative rho only lowers f4 - f5)
    let (lo, hi) = if rho_max >= 0.0 {
        (0.0, rho_max)
    } else {
        diagnostics.push(format!("budget limits rho to [-1, {rho_max:.6}]"));
        (-1.0, rho_max)
    };
    let lower_pdfm = BoundReport::lower("PDF-M", expect_opt(&pdfm, lo, hi));

    let lower = lower_df.rate.max(lower_pdf.rate).max(lower_pdfm.rate);
    ScenarioOneBounds {
        upper,
        lower_df,
        lower_pdf,
        lower_pdfm,
        lower,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const F45_ONE_P10: f64 = 1.517_811_954_865_360_7; // (log2 41 - log2 5) / 2

    fn sym(p: f64, c: f64, g: f64) -> ChannelParams {
        ChannelParams::symmetric(p, c, g).unwrap()
    }

    #[test]
    fn upper_bound_bc_cut_regime() {
        let ub = upper_bound_s1(&sym(10.0, 0.5, 0.1));
        assert_abs_diff_eq!(ub.rate, 1.0, epsilon = 1e-9);
        assert_eq!(ub.components.len(), 4);
    }

    #[test]
    fn upper_bound_mac_cut_regime() {
        let ub = upper_bound_s1(&sym(10.0, 2.0, 0.1));
        assert_abs_diff_eq!(ub.rate, F45_ONE_P10, epsilon = 1e-9);
    }

    #[test]
    fn upper_bound_without_eavesdropper_is_max_s1_s2() {
        for c in [0.2, 0.9, 1.7, 3.0] {
            let ub = upper_bound_s1(&sym(4.0, c, 0.0));
            let s1 = ub.component("S1").unwrap().value;
            let s2 = ub.component("S2").unwrap().value;
            assert_abs_diff_eq!(ub.rate, s1.max(s2).value(), epsilon = 1e-12);
        }
    }

    #[test]
    fn df_examples() {
        let p = sym(10.0, 2.0, 0.1);
        let r = lower_bound_df1(&p, RandomnessBudget::Unbounded, 1.0).unwrap();
        assert_abs_diff_eq!(r.value(), F45_ONE_P10, epsilon = 1e-12);
        assert!(matches!(
            lower_bound_df1(&p, RandomnessBudget::Finite(1.0), 1.0),
            Err(Error::BudgetInfeasible { .. })
        ));
        let broken = ChannelParams::new(10.0, 10.0, 0.0, 2.0, 0.1).unwrap();
        assert_eq!(
            lower_bound_df1(&broken, RandomnessBudget::Unbounded, 0.4)
                .unwrap()
                .value(),
            0.0
        );
        assert!(lower_bound_df1(&p, RandomnessBudget::Unbounded, 1.2).is_err());
    }

    #[test]
    fn pdfm_examples() {
        let r = lower_bound_pdfm1(&sym(10.0, 1.0, 0.1), RandomnessBudget::Unbounded, 0.5).unwrap();
        assert_abs_diff_eq!(r.value(), 1.477_098_155_193_438, epsilon = 1e-12);
        let r = lower_bound_pdfm1(&sym(3.0, 1.0, 0.2), RandomnessBudget::Unbounded, 1.0).unwrap();
        assert_eq!(r.value(), 0.0);
        let r = lower_bound_pdfm1(
            &sym(1.0, 0.330_482_023_721_840_6, 0.1),
            RandomnessBudget::Unbounded,
            0.0,
        )
        .unwrap();
        assert_abs_diff_eq!(r.value(), 0.660_964_047_443_681_2, epsilon = 1e-12);
    }

    #[test]
    fn best_lower_bound_tight_regimes() {
        let b = best_lower_bound_s1(&sym(10.0, 2.0, 0.1), RandomnessBudget::Unbounded);
        assert_abs_diff_eq!(b.lower, F45_ONE_P10, epsilon = 1e-9);
        assert_abs_diff_eq!(b.lower, b.upper.rate, epsilon = 1e-9);

        let b = best_lower_bound_s1(&sym(10.0, 0.5, 0.1), RandomnessBudget::Unbounded);
        assert_abs_diff_eq!(b.lower, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(b.upper.rate, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn multicoding_strictly_helps_at_intermediate_c() {
        let b = best_lower_bound_s1(&sym(1.0, 0.6, 0.1), RandomnessBudget::Unbounded);
        assert!(b.lower_pdfm.rate > b.lower_pdf.rate.max(b.lower_df.rate) + 1e-3);
        assert!(b.lower_pdfm.rho > 0.0);
    }

    #[test]
    fn empty_feasible_set_reports_zero() {
        let p = ChannelParams::new(4.0, 1.0, 1.0, 1.0, 0.1).unwrap();
        let b = best_lower_bound_s1(&p, RandomnessBudget::Finite(0.0));
        assert_eq!(b.lower, 0.0);
        assert!(!b.diagnostics.is_empty());
        assert!(b.upper.rate > 0.0);
    }

    #[test]
    fn small_budget_restricts_rho() {
        let p = sym(10.0, 2.0, 0.1);
        let budget = RandomnessBudget::Finite(1.0);
        let b = best_lower_bound_s1(&p, budget);
        assert!(p.f5(b.lower_df.rho).unwrap().value() <= 1.0);
        assert!(p.f5(b.lower_pdfm.rho).unwrap().value() <= 1.0);
        assert!(b.lower < F45_ONE_P10);
    }
}
