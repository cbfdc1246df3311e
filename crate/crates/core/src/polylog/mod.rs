//! Polylogarithms, their inversion formulas and β → 0 limits, and the perturbative
//! function γ̃ whose blowup differences produce the l-factors.

pub mod gamma;
pub mod numeric;
pub mod real;
pub mod symbolic;

pub use gamma::{
    beta_limit_drift, eps_gamma_tilde, gamma_consistency, gamma_tilde, proposition_check, DriftReport, GammaArgs,
    GammaConsistency, PropositionCheck,
};
pub use numeric::{
    bernoulli, inversion_checks, li_bernoulli, li_neg_real, li_pos, limit_checks, zeta3, InversionReport, LimitReport,
    LimitSeries, GUARD_BITS,
};
pub use real::{BigFloat, Complex};
pub use symbolic::{
    bracket_identity, derivative_relation, li_neg, li_neg_value, negative_inversion, p_poly,
    pert_polynomial_identities, BracketReport, IdentityOutcome,
};
