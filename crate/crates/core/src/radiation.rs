//! Radiation of an electron on a circular orbit: Schott harmonics, the
//! total emission probability per unit time, and the radiation-free
//! lifetime in the classical and quantum regimes.
//!
//! Units are natural (`ħ = c = 1`). Probabilities are reported in the
//! normalized form `P̂ = P·v/(2α ω_H)`; multiply by [`probability_scale`]
//! to get a rate.

use serde::{Deserialize, Serialize};

use crate::closed;
use crate::direct::{self, EvalResult};
use crate::error::{domain, Error, Result};
use crate::quad::{self, QuadOptions};
use crate::specfun::{bessel_j, bessel_j_prime, gamma};
use crate::transcendental::{self, lookup_table, SumVariant};

/// Fine-structure constant, fixed at the value `1/137`.
pub const ALPHA: f64 = 1.0 / 137.0;
/// Largest β accepted by the printed series.
pub const SERIES_BETA_MAX: f64 = 0.9;
/// Largest β accepted by numeric summation.
pub const NUMERIC_BETA_MAX: f64 = 0.999;
/// `χ` at or below which the linear (classical) rate applies.
pub const CHI_LOW: f64 = 0.1;
/// `χ` at or above which the `χ^{2/3}` rate applies.
pub const CHI_HIGH: f64 = 10.0;

const DEFAULT_TOL: f64 = 1e-12;
// above this ΣJ'_{2n} comes from the regularized integral
const REGULARIZED_ABOVE: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Classical,
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbabilityMethod {
    /// Printed small-β series.
    Series,
    /// Summation of the Bessel series.
    Numeric,
}

/// Kinematics and field of one electron.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiationInput {
    pub beta: f64,
    /// First-harmonic frequency.
    pub omega_h: f64,
    /// Field invariant, used in quantum mode only.
    pub chi: f64,
    pub time: f64,
    pub mode: Mode,
}

impl RadiationInput {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.beta) {
            return domain(format!("beta must lie in [0, 1), got {}", self.beta));
        }
        if !(self.omega_h > 0.0 && self.omega_h.is_finite()) {
            return domain(format!("omega_H must be positive, got {}", self.omega_h));
        }
        if !(self.chi >= 0.0 && self.chi.is_finite()) {
            return domain(format!("chi must be non-negative, got {}", self.chi));
        }
        if !(self.time >= 0.0 && self.time.is_finite()) {
            return domain(format!("time must be non-negative, got {}", self.time));
        }
        Ok(())
    }

    /// Emission probability per unit laboratory time.
    pub fn rate(&self, method: ProbabilityMethod) -> Result<f64> {
        self.validate()?;
        match self.mode {
            Mode::Classical => {
                if self.beta == 0.0 {
                    return Ok(0.0);
                }
                let p = total_probability(self.beta, method)?;
                Ok(probability_scale(self.beta, self.omega_h) * p.value)
            }
            Mode::Quantum => {
                // P t = W τ with τ = t √(1 − β²), W in units of α m (m = 1)
                let w = quantum_W(self.chi)?.single()?;
                Ok(ALPHA * w * ((1.0 - self.beta) * (1.0 + self.beta)).sqrt())
            }
        }
    }

    /// Probability of no emission during `time`.
    pub fn survival(&self, method: ProbabilityMethod) -> Result<f64> {
        survival_probability(self.rate(method)?, self.time)
    }
}

/// `2α ω_H / β`, turning `P̂` into a rate.
pub fn probability_scale(beta: f64, omega_h: f64) -> f64 {
    2.0 * ALPHA * omega_h / beta
}

/// `ω_H = (eH/m)√(1 − β²)` in a magnetic field.
pub fn magnetic_omega(cyclotron: f64, beta: f64) -> f64 {
    cyclotron * ((1.0 - beta) * (1.0 + beta)).sqrt()
}

/// Normalized probability with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityResult {
    pub value: f64,
    pub method: String,
    pub error_estimate: f64,
}

fn check_beta(beta: f64, hi: f64) -> Result<()> {
    if !(0.0..=hi).contains(&beta) || beta >= 1.0 {
        return domain(format!("beta must lie in [0, {hi}], got {beta}"));
    }
    Ok(())
}

/// `n² ∫₀^β J_{2n}(2nx) dx`
fn weighted_harmonic_integral(n: u32, beta: f64) -> Result<f64> {
    let m = 2 * n;
    let r = quad::try_integrate(
        |x| bessel_j(m, m as f64 * x),
        0.0,
        beta,
        &QuadOptions::rel(1e-12).with_abs(1e-300),
    )?;
    Ok((n as f64).powi(2) * r.value)
}

/// Normalized intensity of harmonic `n`,
/// `Î_n = β² n J'_{2n}(2nβ) − (1 − β²) n² ∫₀^β J_{2n}(2nx) dx`.
pub fn harmonic_intensity(n: u32, beta: f64) -> Result<f64> {
    if n == 0 {
        return domain("harmonic number must be at least 1");
    }
    if !(0.0..1.0).contains(&beta) {
        return domain(format!("beta must lie in [0, 1), got {beta}"));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    let m = 2 * n;
    let jp = bessel_j_prime(m, m as f64 * beta)?;
    let g = (1.0 - beta) * (1.0 + beta);
    Ok(beta * beta * n as f64 * jp - g * weighted_harmonic_integral(n, beta)?)
}

/// Normalized probability of harmonic `n`, `Î_n / n`.
pub fn harmonic_probability(n: u32, beta: f64) -> Result<f64> {
    Ok(harmonic_intensity(n, beta)? / n as f64)
}

/// `Σ_n Î_n` from closed forms: `β² Σ n J'_{2n} − (1−β²) ∫₀^β Σ n² J_{2n}`.
pub fn total_intensity(beta: f64) -> Result<f64> {
    check_beta(beta, NUMERIC_BETA_MAX)?;
    if beta == 0.0 {
        return Ok(0.0);
    }
    // Σ m J'_m over even m, and Σ m² J_m over even m = (S + S_alt)/2
    let first = closed::eval_closed("2.07", beta)?;
    let sq = |x: f64| -> Result<f64> {
        Ok(0.5 * (closed::eval_closed("2.17", x)? + closed::eval_closed("2.18", x)?))
    };
    let int = quad::try_integrate(sq, 0.0, beta, &QuadOptions::rel(1e-13))?;
    let g = (1.0 - beta) * (1.0 + beta);
    Ok(beta * beta * 0.5 * first - g * 0.25 * int.value)
}

/// Total normalized probability `P̂`.
pub fn total_probability(beta: f64, method: ProbabilityMethod) -> Result<ProbabilityResult> {
    match method {
        ProbabilityMethod::Series => {
            check_beta(beta, SERIES_BETA_MAX)?;
            let t = lookup_table("6.04")?;
            let value = t.eval_full(beta)?;
            let err = if beta == 0.0 { 0.0 } else { transcendental::first_omitted(t, beta)? };
            Ok(ProbabilityResult {
                value,
                method: "series".into(),
                error_estimate: err,
            })
        }
        ProbabilityMethod::Numeric => {
            check_beta(beta, NUMERIC_BETA_MAX)?;
            if beta == 0.0 {
                return Ok(ProbabilityResult {
                    value: 0.0,
                    method: "numeric".into(),
                    error_estimate: 0.0,
                });
            }
            let r = if beta <= REGULARIZED_ABOVE {
                transcendental::probability_hat(beta, DEFAULT_TOL)?
            } else {
                regularized_probability(beta)?
            };
            Ok(ProbabilityResult {
                value: r.value,
                method: format!("numeric:{}", r.method),
                error_estimate: r.abs_error_estimate,
            })
        }
    }
}

fn regularized_probability(beta: f64) -> Result<EvalResult> {
    let jp = transcendental::regularized_jprime_sum(SumVariant::Even, beta, DEFAULT_TOL)?;
    let int = direct::sum_integral(&direct::SeriesSpec::linear(1).even().scaled(0.5), beta, 1e-10)?;
    let g = (1.0 - beta) * (1.0 + beta);
    Ok(EvalResult {
        value: beta * beta * jp.value - g * int.value,
        abs_error_estimate: beta * beta * jp.abs_error_estimate + g * int.abs_error_estimate,
        terms_used: jp.terms_used + int.terms_used,
        method: "regularized".into(),
    })
}

/// `Σ_{n ≤ N} Î_n/n` until the harmonics fall below `tol` relative.
pub fn probability_by_harmonics(beta: f64, tol: f64) -> Result<ProbabilityResult> {
    check_beta(beta, 0.9)?;
    let mut sum = 0.0;
    let mut small = 0;
    for n in 1..=5000 {
        let p = harmonic_probability(n, beta)?;
        sum += p;
        if p.abs() <= tol * sum.abs() {
            small += 1;
            if small == 5 {
                return Ok(ProbabilityResult {
                    value: sum,
                    method: format!("harmonics:{n}"),
                    error_estimate: 5.0 * p.abs(),
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergent(format!("harmonic sum at beta = {beta}")))
}

/// Classical ultrarelativistic rate `P / (eH/m) = 5α/(2√3)`.
#[allow(non_snake_case)]
pub fn ultrarelativistic_P() -> f64 {
    ALPHA * w_low(1.0)
}

/// `P / (eH/m) = (2α/β) √(1 − β²) P̂` in a magnetic field; tends to
/// [`ultrarelativistic_P`] as `β → 1`.
pub fn magnetic_coefficient(beta: f64, method: ProbabilityMethod) -> Result<f64> {
    let p = total_probability(beta, method)?;
    Ok(2.0 * ALPHA / beta * ((1.0 - beta) * (1.0 + beta)).sqrt() * p.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuantumRegime {
    Low,
    High,
    /// Between the two: neither formula is claimed, both are returned.
    Gap,
}

/// `W/(α m)` for the given `χ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumW {
    pub regime: QuantumRegime,
    pub low: Option<f64>,
    pub high: Option<f64>,
}

impl QuantumW {
    /// The value of the applicable branch; an error in the gap.
    pub fn single(&self) -> Result<f64> {
        match self.regime {
            QuantumRegime::Low => Ok(self.low.unwrap_or(0.0)),
            QuantumRegime::High => Ok(self.high.unwrap_or(0.0)),
            QuantumRegime::Gap => domain(format!(
                "no rate formula between chi = {CHI_LOW} and {CHI_HIGH}; both branches are reported"
            )),
        }
    }
}

/// `5χ/(2√3)`
pub fn w_low(chi: f64) -> f64 {
    5.0 * chi / (2.0 * 3f64.sqrt())
}

/// `14 Γ(2/3) (3χ)^{2/3} / 27`
pub fn w_high(chi: f64) -> Result<f64> {
    Ok(14.0 * gamma(2.0 / 3.0)? * (3.0 * chi).powf(2.0 / 3.0) / 27.0)
}

/// Emission rate per unit proper time in units of `α m`.
#[allow(non_snake_case)]
pub fn quantum_W(chi: f64) -> Result<QuantumW> {
    if !(chi >= 0.0 && chi.is_finite()) {
        return domain(format!("chi must be non-negative, got {chi}"));
    }
    let (regime, low, high) = if chi <= CHI_LOW {
        (QuantumRegime::Low, Some(w_low(chi)), None)
    } else if chi >= CHI_HIGH {
        (QuantumRegime::High, None, Some(w_high(chi)?))
    } else {
        (QuantumRegime::Gap, Some(w_low(chi)), Some(w_high(chi)?))
    };
    Ok(QuantumW { regime, low, high })
}

/// `exp(−P t)`
pub fn survival_probability(p: f64, t: f64) -> Result<f64> {
    if !(p >= 0.0 && t >= 0.0) || !p.is_finite() || !t.is_finite() {
        return domain(format!("rate and time must be non-negative, got {p} and {t}"));
    }
    Ok((-p * t).exp())
}

/// Laboratory radiation-free lifetime `γ/W` in units of `1/(α m)`, for an
/// electron with Lorentz factor `gamma` and field invariant `chi`.
pub fn lab_lifetime(gamma_factor: f64, chi: f64) -> Result<f64> {
    if !(gamma_factor >= 1.0) {
        return domain(format!("Lorentz factor must be at least 1, got {gamma_factor}"));
    }
    let w = quantum_W(chi)?.single()?;
    if w == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(gamma_factor / w)
}

/// `t_lab(kE)/t_lab(E)` at fixed field, where `χ ∝ E`.
pub fn lifetime_ratio(gamma_factor: f64, chi: f64, k: f64) -> Result<f64> {
    Ok(lab_lifetime(k * gamma_factor, k * chi)? / lab_lifetime(gamma_factor, chi)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        let v = harmonic_intensity(1, 0.5).unwrap();
        assert!((v - 3.770e-2).abs() < 1e-5, "{v}");
        assert_eq!(harmonic_intensity(3, 0.0).unwrap(), 0.0);
        let p = total_probability(0.3, ProbabilityMethod::Series).unwrap().value;
        assert!((p - 9.7012e-3).abs() < 1e-7, "{p}");
        assert!((ultrarelativistic_P() - 1.05356e-2).abs() < 1e-7);
        let w = quantum_W(1.0 / 3.0).unwrap();
        assert_eq!(w.regime, QuantumRegime::Gap);
        assert!((w.high.unwrap() - 0.70213).abs() < 1e-5);
        assert!((quantum_W(0.01).unwrap().single().unwrap() - 1.44338e-2).abs() < 1e-7);
        assert_eq!(quantum_W(0.0).unwrap().single().unwrap(), 0.0);
        assert!((survival_probability(0.1, 10.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(survival_probability(0.1, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn lifetime_grows_as_cube_root() {
        let r = lifetime_ratio(1e4, 20.0, 2.0).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-12);
        assert!(lab_lifetime(10.0, 1.0).is_err());
    }

    #[test]
    fn seam_coefficient() {
        // the low-χ rate and the ultrarelativistic limit share 5/(2√3)
        assert_eq!(ALPHA * w_low(1.0), ultrarelativistic_P());
    }
}
