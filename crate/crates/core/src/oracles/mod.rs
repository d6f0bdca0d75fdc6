//! Independent paths to the same numbers: a log-determinant calculator for
//! the Gaussian system, an exact evaluator for finite-alphabet channels,
//! and a randomized cross-check of the closed forms.

pub mod dmc;
pub mod gaussian;
pub mod validate;

pub use dmc::{dmc_rates, quantized_gaussian, DmcChannel, DmcDocument, DmcRates, JointPmf, Quantization};
pub use gaussian::{gaussian_mi, GaussianSystem, MiTerm, Var};
pub use validate::{validate_closed_forms, ValidationReport};
