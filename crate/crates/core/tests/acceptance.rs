//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so every line is
//! printed even when everything passes.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use diamond_wiretap::analysis::{
    capacity_window, default_comparison, detect_thresholds, no_secrecy_compare, pdf_gap_profile,
    symmetric_capacity, CapacityFamily, ThresholdSearch,
};
use diamond_wiretap::oracles::dmc::{dmc_rates, DmcChannel, JointPmf};
use diamond_wiretap::oracles::validate_closed_forms;
use diamond_wiretap::scenario_one::best_lower_bound_s1;
use diamond_wiretap::scenario_two::best_lower_bound_s2;
use diamond_wiretap::{ChannelParams, RandomnessBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f45(p: &ChannelParams, rho: f64) -> f64 {
    p.f4(rho).unwrap().value() - p.f5(rho).unwrap().value()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn window_matches(p: f64, expected: (f64, f64)) -> Result<(f64, f64), String> {
    let (lo, hi) = capacity_window(p).map_err(|e| e.to_string())?;
    ensure(
        (lo - expected.0).abs() <= 0.01 && (hi - expected.1).abs() <= 0.01,
        || {
            format!(
                "window ({lo:.6}, {hi:.6}) vs expected ({}, {})",
                expected.0, expected.1
            )
        },
    )?;
    Ok((lo, hi))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (lo, hi) = window_matches(10.0, (1.098, 2.179))?;
    // Also against the rounded published window 1.1 < C < 2.18.
    ensure((lo - 1.1).abs() <= 0.01 && (hi - 2.18).abs() <= 0.01, || {
        format!("window ({lo}, {hi}) vs (1.1, 2.18)")
    })?;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let c = lo + (hi - lo) * (i as f64 + 0.5) / 20.0;
        let p = ChannelParams::symmetric(10.0, c, 0.1).unwrap();
        let v = symmetric_capacity(&p, RandomnessBudget::Unbounded).map_err(|e| format!("C = {c}: {e}"))?;
        ensure(v.applies, || {
            format!("C = {c}: capacity condition not met: {:?}", v.diagnostics)
        })?;
        let cap = v.capacity.unwrap().value();
        let d = (v.upper - v.lower)
            .abs()
            .max((v.upper - cap).abs())
            .max((v.lower - cap).abs());
        ensure(d <= 1e-6, || {
            format!("C = {c}: ub2 {} lb2 {} capacity {cap}", v.upper, v.lower)
        })?;
        worst = worst.max(d);
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 5.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!(
        "window ({lo:.6}, {hi:.6}); 20 interior C, max |ub2 - lb2 - capacity| = {worst:.1e}; {elapsed:.2} s"
    ))
}

fn criterion_2() -> Outcome {
    let (lo, hi) = window_matches(100.0, (1.913, 3.824))?;
    ensure((lo - 1.91).abs() <= 0.01 && (hi - 3.82).abs() <= 0.01, || {
        format!("window ({lo}, {hi}) vs (1.91, 3.82)")
    })?;
    Ok(format!("window ({lo:.6}, {hi:.6})"))
}

fn criterion_3() -> Outcome {
    let family = CapacityFamily::symmetric(1.0, 0.1);
    let search = ThresholdSearch {
        from: 0.0,
        to: 2.0,
        steps: 201,
        ..ThresholdSearch::default()
    };
    let (lhs, rhs) = default_comparison(false);
    let report = detect_thresholds(&family, RandomnessBudget::Unbounded, lhs, &rhs, &search)
        .map_err(|e| e.to_string())?;
    let intervals = report.winning_intervals(&search);
    ensure(intervals.len() == 1, || {
        format!("expected one winning interval, got {intervals:?}")
    })?;
    let (a, b) = intervals[0];
    let half = 0.5 * f45(&family.at(0.0).unwrap(), 0.0);
    ensure((a - 0.33).abs() <= 0.01 && (b - 0.89).abs() <= 0.01, || {
        format!("interval ({a}, {b}) vs (0.33, 0.89)")
    })?;
    ensure((a - half).abs() <= 1e-4 && (a - 0.33047).abs() <= 1e-4, || {
        format!("lower endpoint {a} vs half MAC term {half}")
    })?;
    Ok(format!(
        "PDF-M strictly best on ({a:.6}, {b:.6}); half MAC term {half:.6}"
    ))
}

fn regimes() -> impl Iterator<Item = (f64, f64)> {
    [1.0, 10.0, 100.0]
        .into_iter()
        .flat_map(|p| [0.1, 0.5].into_iter().map(move |g| (p, g)))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (p, g) in regimes() {
        let probe = ChannelParams::symmetric(p, 0.0, g).unwrap();
        let low = 0.5 * f45(&probe, 0.0);
        let high = f45(&probe, 1.0);
        for c in linspace(0.0, low, 10)
            .into_iter()
            .chain(linspace(high, high + 3.0, 10))
        {
            let params = ChannelParams::symmetric(p, c, g).unwrap();
            let b = best_lower_bound_s1(&params, RandomnessBudget::Unbounded);
            let d = (b.upper.rate - b.lower).abs();
            ensure(d <= 1e-6, || {
                format!("P={p} g={g} C={c}: ub1 {} lb1 {}", b.upper.rate, b.lower)
            })?;
            worst = worst.max(d);
            count += 1;
        }
    }
    Ok(format!("{count} points, max |ub1 - lb1| = {worst:.1e}"))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (p, g) in regimes() {
        let probe = ChannelParams::symmetric(p, 0.0, g).unwrap();
        let f4_one = probe.f4(1.0).unwrap().value();
        let target = f45(&probe, 1.0);
        for c in linspace(f4_one, f4_one + 3.0, 10) {
            let params = ChannelParams::symmetric(p, c, g).unwrap();
            let b = best_lower_bound_s2(&params, RandomnessBudget::Unbounded);
            let d = (b.upper.rate - target).abs().max((b.lower - target).abs());
            ensure(d <= 1e-6, || {
                format!(
                    "P={p} g={g} C={c}: ub2 {} lb2 {} target {target}",
                    b.upper.rate, b.lower
                )
            })?;
            worst = worst.max(d);
            count += 1;
        }
    }
    Ok(format!(
        "{count} points, max deviation from f4(1) - f5(1) = {worst:.1e}"
    ))
}

fn criterion_6() -> Outcome {
    let powers: Vec<f64> = (1..=6).map(|k| 10f64.powi(k)).collect();
    let pts = pdf_gap_profile(0.1, 1.0, 1.0, &powers).map_err(|e| e.to_string())?;
    for w in pts.windows(2) {
        ensure(w[1].gap <= w[0].gap, || {
            format!(
                "gap rises from {} at P={} to {} at P={}",
                w[0].gap, w[0].power, w[1].gap, w[1].power
            )
        })?;
    }
    let last = pts.last().unwrap();
    ensure(last.gap <= 1e-3, || format!("gap {} at P = 1e6", last.gap))?;
    let gaps: Vec<String> = pts.iter().map(|p| format!("{:.2e}", p.gap)).collect();
    Ok(format!("gaps {}", gaps.join(" ")))
}

fn criterion_7() -> Outcome {
    let r = validate_closed_forms(1000, 42, 1e-9).map_err(|e| e.to_string())?;
    ensure(r.passed(), || {
        format!("{} failures, first {:?}", r.failures.len(), r.failures.first())
    })?;
    Ok(format!(
        "{} checks, {} skipped at |rho| = 1, max deviation {:.1e} bits",
        r.checks, r.skipped, r.max_deviation
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut zero_gain = 0;
    let mut unbounded = 0;
    for trial in 0..1000 {
        // P in (0, 100]: 1 - U[0, 1) lies in (0, 1].
        let p1 = 100.0 * (1.0 - rng.gen::<f64>());
        let p2 = 100.0 * (1.0 - rng.gen::<f64>());
        let c1 = rng.gen_range(0.0..=5.0);
        let c2 = rng.gen_range(0.0..=5.0);
        let g = if rng.gen_bool(0.1) {
            0.0
        } else {
            rng.gen_range(0.0..=0.99)
        };
        let budget = if rng.gen_bool(0.5) {
            RandomnessBudget::Unbounded
        } else {
            RandomnessBudget::Finite(rng.gen_range(0.0..=4.0))
        };
        let p = ChannelParams::new(p1, p2, c1, c2, g).unwrap();
        let tag = || format!("trial {trial}: P=({p1}, {p2}) C=({c1}, {c2}) g={g} R'={budget}");
        let s1 = best_lower_bound_s1(&p, budget);
        let s2 = best_lower_bound_s2(&p, budget);
        ensure(s1.lower <= s1.upper.rate + 1e-7, || {
            format!("{}: lb1 {} > ub1 {}", tag(), s1.lower, s1.upper.rate)
        })?;
        ensure(s2.lower <= s2.upper.rate + 1e-7, || {
            format!("{}: lb2 {} > ub2 {}", tag(), s2.lower, s2.upper.rate)
        })?;
        if budget == RandomnessBudget::Unbounded {
            unbounded += 1;
            ensure(s2.lower <= s1.lower + 1e-7, || {
                format!("{}: lb2 {} > lb1 {}", tag(), s2.lower, s1.lower)
            })?;
        }
        if g == 0.0 {
            zero_gain += 1;
            let base = best_lower_bound_s1(&p.without_eavesdropper(), RandomnessBudget::Unbounded);
            let pairs = [
                ("ub1", s1.upper.rate, base.upper.rate),
                ("lb1", s1.lower, base.lower),
                ("ub2", s2.upper.rate, base.upper.rate),
                ("lb2", s2.lower, base.lower),
            ];
            for (name, v, reference) in pairs {
                ensure((v - reference).abs() <= 1e-9, || {
                    format!("{}: {name} {v} vs no-secrecy {reference}", tag())
                })?;
            }
        }
    }
    Ok(format!(
        "1000 tuples ({unbounded} unbounded budgets, {zero_gain} with g = 0)"
    ))
}

fn criterion_9() -> Outcome {
    let family = CapacityFamily::symmetric(10.0, 0.1);
    let grid: Vec<f64> = (1..=300).map(|i| i as f64 * 0.01).collect();
    let cmp = no_secrecy_compare(&family, RandomnessBudget::Unbounded, &grid).map_err(|e| e.to_string())?;
    let mut worst_eq: f64 = 0.0;
    let mut margin = f64::INFINITY;
    for row in &cmp.rows {
        if row.c <= 0.70184 {
            let d = (row.nosecrecy_ub - row.lb1).abs();
            ensure(d <= 1e-6, || {
                format!(
                    "C={}: no-secrecy ub {} vs lb1 {}",
                    row.c, row.nosecrecy_ub, row.lb1
                )
            })?;
            worst_eq = worst_eq.max(d);
        }
        ensure(row.nosecrecy_lb > row.ub2, || {
            format!(
                "C={}: no-secrecy lb {} <= ub2 {}",
                row.c, row.nosecrecy_lb, row.ub2
            )
        })?;
        margin = margin.min(row.nosecrecy_lb - row.ub2);
    }
    Ok(format!(
        "equality up to C = 0.70184 within {worst_eq:.1e}; no-secrecy lb above ub2 by >= {margin:.4} on (0, 3]"
    ))
}

fn criterion_10() -> Outcome {
    // Uniform independent bits, Y = (X1, X2), Z constant.
    let mut t = vec![0.0; 16];
    for x in 0..4 {
        t[x * 4 + x] = 1.0;
    }
    let ch = DmcChannel::new([2, 2, 4, 1], t).map_err(|e| e.to_string())?;
    let input = JointPmf::independent(&[0.5, 0.5], &[0.5, 0.5]).unwrap();
    for (c1, c2) in [(1.0, 1.0), (0.4, 3.0), (5.0, 2.5), (3.0, 3.0)] {
        let r = dmc_rates(&ch, &input, c1, c2).map_err(|e| e.to_string())?;
        ensure(r.df == f64::min(c1, f64::min(c2, 2.0)), || {
            format!("C=({c1}, {c2}): DF {}", r.df)
        })?;
        if (c1, c2) == (1.0, 1.0) {
            ensure(r.pdfm == 2.0, || format!("PDF-M {}", r.pdfm))?;
        }
    }

    // Z an exact copy of Y.
    let mut t = vec![0.0; 64];
    for x in 0..4 {
        t[x * 16 + x * 4 + x] = 1.0;
    }
    let ch = DmcChannel::new([2, 2, 4, 4], t).map_err(|e| e.to_string())?;
    for input in [
        JointPmf::independent(&[0.5, 0.5], &[0.5, 0.5]).unwrap(),
        JointPmf::new(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap(),
    ] {
        let r = dmc_rates(&ch, &input, 2.0, 3.0).map_err(|e| e.to_string())?;
        let all = [r.df, r.pdfm, r.df2, r.pdfdfm, r.pdfpdfm];
        ensure(all.iter().all(|&v| v == 0.0), || format!("Z = Y rates {all:?}"))?;
    }
    Ok("orthogonal MAC: PDF-M = 2, DF = min(C1, C2, 2); Z = Y: all five rates 0".to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("capacity window P=10 and coincidence inside it", criterion_1),
        ("capacity window P=100", criterion_2),
        ("multicoding thresholds P=1 g=0.1", criterion_3),
        ("scenario-1 tight regimes", criterion_4),
        ("scenario-2 DF regime", criterion_5),
        ("high-power PDF gap", criterion_6),
        ("closed forms vs log-det oracle", criterion_7),
        ("global sanity sweep", criterion_8),
        ("cost of secrecy P=10 g=0.1", criterion_9),
        ("DMC trivial channels", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
