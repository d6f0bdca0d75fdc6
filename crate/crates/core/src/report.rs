use serde::Serialize;

use crate::rate::RateValue;
use crate::scalar_opt::OptimizationResult;

/// A bound evaluated at its optimizing correlation.
///
/// `value` is the raw formula optimum (possibly negative or -inf for lower
/// bounds); `rate` is the headline number, clamped at zero for lower bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub value: RateValue,
    pub rate: f64,
    pub rho: f64,
    pub binding: Vec<&'static str>,
    /// For composite bounds: the branch that determined the value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn upper(name: &'static str, opt: OptimizationResult) -> Self {
        BoundReport {
            name,
            value: opt.value,
            rate: opt.value.value(),
            rho: opt.argmax,
            binding: opt.binding,
            branch: None,
            components: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn lower(name: &'static str, opt: OptimizationResult) -> Self {
        BoundReport {
            rate: opt.value.clamp_nonneg(),
            ..BoundReport::upper(name, opt)
        }
    }

    /// A lower bound with nothing feasible to optimize over.
    pub fn infeasible(name: &'static str, note: impl Into<String>) -> Self {
        BoundReport {
            name,
            value: RateValue::ZERO,
            rate: 0.0,
            rho: f64::NAN,
            binding: vec!["budget"],
            branch: None,
            components: Vec::new(),
            notes: vec![note.into()],
        }
    }

    pub fn component(&self, name: &str) -> Option<&BoundReport> {
        self.components.iter().find(|c| c.name == name)
    }
}
