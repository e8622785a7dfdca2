use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quad::{self, QuadOptions};

/// Integrals over `[0, π]` of rational functions of `c + θ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AuxId {
    /// `∫ dθ / (c + θ²)`
    I1,
    /// `∫ dθ / (c + θ²)²`
    I2,
    /// `∫ dθ / (c + θ²)³`
    I3,
    /// `∫ θ⁴ dθ / (c + θ²)³`
    I3_4,
}

impl AuxId {
    pub const ALL: [AuxId; 4] = [AuxId::I1, AuxId::I2, AuxId::I3, AuxId::I3_4];

    pub fn name(self) -> &'static str {
        match self {
            AuxId::I1 => "I1",
            AuxId::I2 => "I2",
            AuxId::I3 => "I3",
            AuxId::I3_4 => "I3_4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(s))
    }

    fn integrand(self, c: f64, t: f64) -> f64 {
        let d = c + t * t;
        match self {
            AuxId::I1 => 1.0 / d,
            AuxId::I2 => 1.0 / (d * d),
            AuxId::I3 => 1.0 / (d * d * d),
            AuxId::I3_4 => {
                let r = t * t / d;
                r * r / d
            }
        }
    }
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return domain(format!("the auxiliary integrals need c > 0, got {c}"));
    }
    Ok(())
}

/// Closed form of the auxiliary integral.
pub fn aux_integral(id: AuxId, c: f64) -> Result<f64> {
    check_c(c)?;
    let s = c.sqrt();
    let at = (PI / s).atan();
    let p2c = PI * PI + c;
    Ok(match id {
        AuxId::I1 => at / s,
        AuxId::I2 => at / (2.0 * c * s) + PI / (2.0 * c * p2c),
        AuxId::I3 => {
            3.0 * at / (8.0 * c * c * s) + 3.0 * PI / (8.0 * c * c * p2c) + PI / (4.0 * c * p2c * p2c)
        }
        AuxId::I3_4 => 3.0 * at / (8.0 * s) - 5.0 * PI / (8.0 * p2c) + c * PI / (4.0 * p2c * p2c),
    })
}

/// The `θ⁴/(c+θ²)³` formula with `(π² + c)` instead of `(π² + c)²` in the
/// last denominator, kept to show how far it is off.
pub fn i3_4_unsquared(c: f64) -> Result<f64> {
    check_c(c)?;
    let s = c.sqrt();
    let p2c = PI * PI + c;
    Ok(3.0 * (PI / s).atan() / (8.0 * s) - 5.0 * PI / (8.0 * p2c) + c * PI / (4.0 * p2c))
}

/// The same integral by adaptive quadrature of its definition.
pub fn aux_quadrature(id: AuxId, c: f64) -> Result<f64> {
    check_c(c)?;
    let s = c.sqrt();
    let mut pts = vec![0.0, PI];
    for f in [0.3, 1.0, 3.0] {
        if f * s < PI {
            pts.push(f * s);
        }
    }
    pts.sort_by(f64::total_cmp);
    let r = quad::integrate_points(|t| id.integrand(c, t), &pts, &QuadOptions::rel(1e-13))?;
    Ok(r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn values_at_pi_squared() {
        let c = PI * PI;
        assert!((aux_integral(AuxId::I1, c).unwrap() - 0.25).abs() < 1e-15);
        let i2 = 1.0 / (8.0 * PI * PI) + 1.0 / (4.0 * PI * PI * PI);
        assert!(rel(aux_integral(AuxId::I2, c).unwrap(), i2) < 1e-15);
        // quadrature oracle (mpmath): 0.0141725…
        assert!((aux_integral(AuxId::I3_4, c).unwrap() - 0.014_172_5).abs() < 1e-7);
        assert!((i3_4_unsquared(c).unwrap() - 0.386_98).abs() < 1e-5);
        assert!(aux_integral(AuxId::I1, 0.0).is_err());
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for c in [0.01, 1.0, PI * PI] {
            for id in AuxId::ALL {
                let a = aux_integral(id, c).unwrap();
                let q = aux_quadrature(id, c).unwrap();
                assert!(rel(a, q) < 1e-12, "{id:?} at {c}: {a} vs {q}");
            }
        }
    }
}
