//! Analytic objects attached to the floor-sum: ζ, the main-term constants,
//! the sawtooth and its Vaaler approximation, and sawtooth sums over
//! arithmetic weights.

mod exponential;
mod mainterm;
mod series;
mod vaaler;
mod zeta;

pub use exponential::{
    mho_sum, mho_sum_with, mho_sweep, prop_bound_envelope, vartheta, vartheta_with, Envelope,
    EnvelopeBranch, MhoRow,
};
pub use mainterm::{main_term, theta_exponent, MainTermCase, MainTermSpec};
pub use series::{series_constant, series_constant_with, DEFAULT_EXPANSION, DEFAULT_TERMS};
pub use vaaler::{
    fejer_majorant, fejer_majorant_direct, psi, psi_ratio, vaaler_approx, vaaler_phi, VaalerApprox,
};
pub use zeta::zeta;

pub(crate) use exponential::floor_div;
