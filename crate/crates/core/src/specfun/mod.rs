//! Special functions: integer-order `J_n` and derivatives, the scaled
//! Kapteyn term `J_m(mz)` at any order, `K_{1/3}`, `K_{2/3}`, Airy and `Γ`.

mod airy;
mod bessel;
mod debye;
mod gamma;
mod scaled;

pub use airy::{airy_ai, airy_ai_prime, bessel_k, uniform_j, uniform_j_prime, KOrder};
pub use bessel::{
    bessel_eval_point, bessel_j, bessel_j_prime, bessel_j_second, BesselEvalPoint, Regime,
};
pub use gamma::gamma;
pub use scaled::{scaled_bessel, scaled_bessel_with, ScaledBessel, ScaledConfig};

pub(crate) use scaled::scaled_bessel_dd;
pub(crate) use scaled::atanh_gap;
