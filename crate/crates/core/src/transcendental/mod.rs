//! Transcendental Kapteyn series: integral representations in the phase
//! `θ − x sin θ`, their regularized forms near `x = 1`, exact Taylor tables
//! and the leading `x → 1` behaviour.

mod asym;
mod aux;
mod integrals;
mod phase;
mod tables;

pub use asym::{
    asym_eval, asym_reference, n_j_prime_squared, n_j_squared, AsymId, AsymResult, X_ASYM,
};
pub use aux::{aux_integral, aux_quadrature, i3_4_unsquared, AuxId};
pub use integrals::{
    cot_integral, csc2_integral, log_integral, regularized_jprime_sum, CotVariant, LogVariant,
    SumVariant, CSC2_SPLIT, MIN_TOL, X_MAX_PLAIN, X_MAX_REGULARIZED,
};
pub use phase::IntegrandParams;
pub use tables::{
    eval_coeff_table, extract_taylor_coeff, first_omitted, lookup_table, tables, target_series,
    target_value, taylor_poly_in_a, CoeffCheck, CoeffTable, Prefactor, TableExport, Target,
    MAX_TAYLOR_ORDER,
};

pub(crate) use tables::probability_hat;
