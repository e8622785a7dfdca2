//! Kapteyn series of Bessel functions, evaluated by independent routes.
//!
//! The crate is organised in layers:
//!
//! * [`specfun`]: Bessel `J_n`, its derivatives at arbitrary integer order,
//!   `K_{1/3}`, `K_{2/3}`, Airy functions and `Γ`.
//! * [`direct`]: brute-force summation with a certified tail, the universal
//!   oracle for everything else.
//! * [`closed`]: exact closed forms as rational (and `√(1−z²)`-algebraic)
//!   functions, with the operator calculus that re-derives them.
//! * [`transcendental`]: integral representations, auxiliary integrals,
//!   exact Taylor tables and `x → 1` asymptotics.
//! * [`radiation`]: harmonic intensities and radiation-free lifetime of an
//!   electron on a circular orbit.
//!
//! Shared infrastructure lives in [`quad`] (adaptive Gauss–Kronrod) and
//! [`exact`] (polynomials and power series over the rationals).

pub mod closed;
pub mod direct;
mod error;
pub mod exact;
pub mod quad;
pub mod radiation;
pub mod specfun;
pub mod transcendental;

pub use direct::{EvalResult, Family, Parity, SeriesSpec};
pub use error::{Error, Result};
