use thiserror::Error;

/// Everything that can go wrong while building a problem instance or
/// evaluating a bound.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{function} is undefined at rho = {rho} (domain [{lo}, {hi}])")]
    Domain {
        function: &'static str,
        rho: f64,
        lo: f64,
        hi: f64,
    },

    #[error("no correlation is feasible: f5(-1) = {f5_at_minus_one} exceeds R' = {budget}")]
    EmptyFeasibleSet { f5_at_minus_one: f64, budget: f64 },

    #[error("rho = {rho} needs randomness rate f5 = {required} but only R' = {budget} is available")]
    BudgetInfeasible { rho: f64, required: f64, budget: f64 },

    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("the capacity check needs symmetric parameters (P1 = P2, C1 = C2)")]
    AsymmetricParams,

    #[error("covariance block {block} is singular (det = {det:e})")]
    SingularCovariance { block: String, det: f64 },

    #[error("invalid distribution: {0}")]
    InvalidPmf(String),

    #[error("numerical mismatch in {what}: {lhs} vs {rhs}")]
    NumericalMismatch { what: String, lhs: f64, rhs: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
