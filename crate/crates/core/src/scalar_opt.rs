//! One-dimensional max-min optimization over a correlation interval, and
//! bisection root finding.
//!
//! Every bound in this crate has the shape `max_rho min_i term_i(rho)`. The
//! maximizer scans a uniform grid and then refines around the best grid
//! point by golden-section search, so a non-unimodal objective can only
//! cost accuracy, never return a value below the best grid sample.

use crate::error::{Error, Result};
use crate::rate::RateValue;

/// Number of uniform grid samples before refinement.
pub const GRID_POINTS: usize = 4097;
/// Golden-section stops once the bracket is this narrow.
pub const ARGMAX_TOL: f64 = 1e-11;
/// Terms within this distance of the minimum count as binding.
pub const BINDING_TOL: f64 = 1e-9;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_TOL: f64 = 1e-12;

/// Label used for an indicator constraint that switched the objective off.
pub const GATE_OFF: &str = "indicator";

/// A named function of the correlation coefficient.
pub struct Term<'a> {
    label: &'static str,
    eval: Box<dyn Fn(f64) -> RateValue + Sync + 'a>,
}

impl<'a> Term<'a> {
    pub fn new(label: &'static str, eval: impl Fn(f64) -> RateValue + Sync + 'a) -> Self {
        Term {
            label,
            eval: Box::new(eval),
        }
    }

    /// A term that does not depend on rho.
    pub fn constant(label: &'static str, value: RateValue) -> Self {
        Term::new(label, move |_| value)
    }

    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn eval(&self, rho: f64) -> RateValue {
        (self.eval)(rho)
    }
}

/// `rho -> min_i term_i(rho)`, optionally multiplied by a 0/1 indicator.
///
/// Where the indicator is off the objective is exactly 0.
pub struct MinObjective<'a> {
    terms: Vec<Term<'a>>,
    gate: Option<Box<dyn Fn(f64) -> bool + Sync + 'a>>,
}

impl<'a> MinObjective<'a> {
    pub fn new(terms: Vec<Term<'a>>) -> Self {
        assert!(!terms.is_empty(), "objective needs at least one term");
        MinObjective { terms, gate: None }
    }

    pub fn gated(mut self, gate: impl Fn(f64) -> bool + Sync + 'a) -> Self {
        self.gate = Some(Box::new(gate));
        self
    }

    pub fn terms(&self) -> &[Term<'a>] {
        &self.terms
    }

    pub fn gate_open(&self, rho: f64) -> bool {
        self.gate.as_ref().is_none_or(|g| g(rho))
    }

    pub fn eval(&self, rho: f64) -> RateValue {
        if !self.gate_open(rho) {
            return RateValue::ZERO;
        }
        RateValue::min_of(self.terms.iter().map(|t| t.eval(rho))).expect("nonempty")
    }

    /// Labels of the terms attaining the objective at `rho`.
    pub fn binding_terms(&self, rho: f64) -> Vec<&'static str> {
        if !self.gate_open(rho) {
            return vec![GATE_OFF];
        }
        let values: Vec<RateValue> = self.terms.iter().map(|t| t.eval(rho)).collect();
        let min = RateValue::min_of(values.iter().copied()).expect("nonempty");
        self.terms
            .iter()
            .zip(&values)
            .filter(|(_, v)| {
                if min.is_neg_infinity() {
                    v.is_neg_infinity()
                } else {
                    v.value() - min.value() <= BINDING_TOL
                }
            })
            .map(|(t, _)| t.label)
            .collect()
    }
}

/// Result of [`maximize_min`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub argmax: f64,
    pub value: RateValue,
    pub binding: Vec<&'static str>,
}

/// Global maximum of `objective` over `[lo, hi]`.
///
/// On plateaus the smallest maximizing grid point is reported.
pub fn maximize_min(objective: &MinObjective<'_>, lo: f64, hi: f64) -> Result<OptimizationResult> {
    if !(lo <= hi) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    if lo == hi {
        return Ok(evaluate_at(objective, lo));
    }

    let n = GRID_POINTS - 1;
    let step = (hi - lo) / n as f64;
    let at = |i: usize| if i == n { hi } else { lo + step * i as f64 };

    let mut best_i = 0;
    let mut best = objective.eval(lo);
    for i in 1..=n {
        let v = objective.eval(at(i));
        if v > best {
            best = v;
            best_i = i;
        }
    }

    let a = at(best_i.saturating_sub(1));
    let b = at((best_i + 1).min(n));
    let (x, v) = golden_section(|x| objective.eval(x), a, b);
    let argmax = if v > best { x } else { at(best_i) };
    Ok(evaluate_at(objective, argmax))
}

/// The objective at a fixed `rho`, packaged like an optimization result.
pub fn evaluate_at(objective: &MinObjective<'_>, argmax: f64) -> OptimizationResult {
    OptimizationResult {
        argmax,
        value: objective.eval(argmax),
        binding: objective.binding_terms(argmax),
    }
}

/// Golden-section maximization on `[a, b]`; returns the best point probed.
fn golden_section(f: impl Fn(f64) -> RateValue, mut a: f64, mut b: f64) -> (f64, RateValue) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > ARGMAX_TOL {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Root of a continuous function with a sign change on `[lo, hi]`.
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo <= hi) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let lo_positive = f_lo > 0.0;
    let (mut a, mut b) = (lo, hi);
    while b - a > ROOT_TOL {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_positive {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
