//! Verification suites: cross-checks between independent evaluators,
//! exact identities and inequalities, and empirical asymptotics.

mod asymptotics;
mod fit;
mod identities;
mod oracle;
mod sawtooth;

pub use asymptotics::{floor_power_asymptotic_check, logcase_ratio, logcase_trend, TrendStep};
pub use fit::{
    fit_error_exponent, fit_error_exponent_with, geometric_grid, ErrorSample, FitResult,
    MIN_FIT_SAMPLES,
};
pub use identities::{
    hyperbola_decomposition_check, hyperbola_residual, hyperbola_residual_from, sandwich_check,
    DecompositionReport, SandwichReport, DECOMPOSITION_MAX_X,
};
pub use oracle::{oracle_check, Discrepancy, OracleReport, ORACLE_MAX_X};
pub use sawtooth::{vaaler_check, VaalerReport, VaalerViolation, VAALER_TOLERANCE};
