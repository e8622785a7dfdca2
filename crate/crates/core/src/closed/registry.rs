use std::sync::OnceLock;

use serde::Serialize;

use super::{
    apply_kapteyn_operator, derive_prime_relation, integrate_weight_down, parity_combine,
    AlgebraicFunction, ClosedFormEntry, Provenance, RationalCoeffs, RationalFunction, Term,
};
use crate::direct::SeriesSpec;
use crate::error::{Error, Result};
use crate::exact::{q, Poly};

const ODD_START: &str = "matches the odd sum from m = 1; dropping the m = 1 term breaks it";

/// `num / (c · base^e)` with integer coefficients.
fn over(num: &[i64], c: i64, base: &[i64], e: u32) -> RationalFunction {
    let den = Poly::from_ints(base).pow(e).scale(&q(c, 1));
    RationalFunction::new(Poly::from_ints(num), den).expect("non-zero denominator")
}

fn rat(r: RationalFunction) -> AlgebraicFunction {
    AlgebraicFunction::from_rational(r)
}

/// `B(z) · √(1−z²)`
fn root(b: RationalFunction) -> AlgebraicFunction {
    AlgebraicFunction::new(RationalFunction::zero(), b)
}

const ONE_MINUS: [i64; 2] = [1, -1];
const ONE_PLUS: [i64; 2] = [1, 1];
const ONE_MINUS_SQ: [i64; 3] = [1, 0, -1];

fn inv_z2_minus_one() -> RationalFunction {
    RationalFunction::from_ints(&[1, 0, -1], &[0, 0, 1])
}

fn entry(id: &str, lhs: Vec<Term>, expression: AlgebraicFunction) -> ClosedFormEntry {
    ClosedFormEntry {
        id: id.into(),
        lhs,
        expression,
        validity: (0.0, 1.0),
        provenance: Provenance::Transcribed,
        odd_start: None,
    }
}

fn single(id: &str, spec: SeriesSpec, expression: AlgebraicFunction) -> ClosedFormEntry {
    let mut e = entry(id, vec![Term::plain(spec)], expression);
    if spec.parity == crate::direct::Parity::Odd {
        e.odd_start = Some(ODD_START);
    }
    e
}

fn build() -> Vec<ClosedFormEntry> {
    use SeriesSpec as S;
    let lin = S::linear;
    let bil = S::bilinear;
    vec![
        single("2.03", lin(0), rat(over(&[0, 1], 2, &ONE_MINUS, 1))),
        single("2.04", lin(0).alternating(), rat(over(&[0, -1], 2, &ONE_PLUS, 1))),
        single("2.05", lin(0).even(), rat(over(&[0, 0, 1], 2, &ONE_MINUS_SQ, 1))),
        single("2.06", lin(0).odd(), rat(over(&[0, 1], 2, &ONE_MINUS_SQ, 1))),
        single("2.07", lin(1).even().deriv(1), rat(over(&[0, 1], 1, &ONE_MINUS_SQ, 2))),
        single("2.08", lin(1).odd().deriv(1), rat(over(&[1, 0, 1], 2, &ONE_MINUS_SQ, 2))),
        single("2.09", lin(2).even().deriv(2), rat(over(&[1, 0, 3], 1, &ONE_MINUS_SQ, 3))),
        entry(
            "2.11",
            vec![
                Term {
                    multiplier: inv_z2_minus_one(),
                    spec: lin(2).even(),
                },
                Term {
                    multiplier: RationalFunction::from_ints(&[-1], &[0, 1]),
                    spec: lin(1).even().deriv(1),
                },
            ],
            rat(over(&[1, 0, 3], 1, &ONE_MINUS_SQ, 3)),
        ),
        single("2.13", lin(-2), rat(RationalFunction::from_ints(&[0, 4, 1], &[8]))),
        single("2.14", lin(-2).alternating(), rat(RationalFunction::from_ints(&[0, -4, 1], &[8]))),
        single("2.15a", lin(-1).even().deriv(1), rat(RationalFunction::from_ints(&[0, 1], &[4]))),
        single("2.15b", lin(-1).odd().deriv(1), rat(RationalFunction::from_ints(&[1], &[2]))),
        single("2.17", lin(2), rat(over(&[0, 1], 2, &ONE_MINUS, 4))),
        single("2.18", lin(2).alternating(), rat(over(&[0, -1], 2, &ONE_PLUS, 4))),
        single("2.20", lin(4), rat(over(&[0, 1, 9], 2, &ONE_MINUS, 7))),
        single("2.22", lin(4).alternating(), rat(over(&[0, -1, 9], 2, &ONE_PLUS, 7))),
        single(
            "2.23",
            lin(4).even().scaled(1.0 / 16.0),
            rat(over(&[0, 0, 1, 0, 14, 0, 21, 0, 4], 2, &ONE_MINUS_SQ, 7)),
        ),
        single(
            "2.24",
            lin(4).odd(),
            rat(over(&[0, 1, 0, 84, 0, 350, 0, 196, 0, 9], 2, &ONE_MINUS_SQ, 7)),
        ),
        single("4.04", bil(-2), rat(RationalFunction::from_ints(&[0, 0, 1], &[4]))),
        single("4.06", bil(-2).derivs(1, 1), rat(RationalFunction::from_ints(&[2, 0, -1], &[8]))),
        single(
            "4.07",
            bil(0),
            AlgebraicFunction::new(
                RationalFunction::from_ints(&[-1], &[2]),
                over(&[1], 2, &ONE_MINUS_SQ, 1),
            ),
        ),
        single(
            "4.08",
            bil(0).derivs(1, 1),
            AlgebraicFunction::new(
                RationalFunction::from_ints(&[1], &[0, 0, 2]),
                RationalFunction::from_ints(&[-1], &[0, 0, 2]),
            ),
        ),
        single("4.10", bil(1).derivs(1, 0), root(over(&[0, 1], 4, &ONE_MINUS_SQ, 2))),
        entry(
            "4.11",
            vec![Term::plain(bil(2).derivs(1, 1)), Term::plain(bil(2).derivs(0, 2))],
            root(over(&[1, 0, 2], 4, &ONE_MINUS_SQ, 3)),
        ),
        entry(
            "4.13",
            vec![
                Term::plain(bil(2).derivs(1, 1)),
                Term {
                    multiplier: inv_z2_minus_one(),
                    spec: bil(2),
                },
            ],
            root(over(&[2, 0, 1], 4, &ONE_MINUS_SQ, 3)),
        ),
        single("4.14", bil(2), root(over(&[0, 0, 4, 0, 1], 16, &ONE_MINUS_SQ, 4))),
        single(
            "4.15",
            bil(3).derivs(0, 1).scaled(2.0),
            root(over(&[0, 8, 0, 24, 0, 3], 16, &ONE_MINUS_SQ, 5)),
        ),
        entry(
            "4.16",
            vec![
                Term::plain(bil(4).derivs(1, 1)),
                Term {
                    multiplier: inv_z2_minus_one(),
                    spec: bil(4),
                },
            ],
            root(over(&[16, 0, 152, 0, 138, 0, 9], 32, &ONE_MINUS_SQ, 6)),
        ),
    ]
}

/// All transcribed entries, in table order.
pub fn registry() -> &'static [ClosedFormEntry] {
    static REG: OnceLock<Vec<ClosedFormEntry>> = OnceLock::new();
    REG.get_or_init(build)
}

pub fn lookup(id: &str) -> Result<&'static ClosedFormEntry> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.into()))
}

pub fn eval_closed(id: &str, z: f64) -> Result<f64> {
    lookup(id)?.eval(z)
}

fn rational_of(id: &str) -> RationalFunction {
    lookup(id)
        .ok()
        .and_then(|e| e.expression.as_rational().cloned())
        .expect("rational registry entry")
}

fn half() -> crate::exact::Q {
    q(1, 2)
}

/// Operator reconstruction of an entry from lower ones, with a short
/// description of the recipe. `None` for the seed entries.
fn derivation(id: &str) -> Result<Option<(AlgebraicFunction, &'static str)>> {
    let k = apply_kapteyn_operator;
    let lin_down = |id: &str| -> Result<RationalFunction> {
        let up = &rational_of(id) * &RationalFunction::from_ints(&ONE_MINUS_SQ, &[1]);
        integrate_weight_down(&up)
    };
    let d = |id: &str| -> Result<AlgebraicFunction> {
        Ok(derived_or_seed(id)?.derivative())
    };
    let out: (AlgebraicFunction, &'static str) = match id {
        "2.05" | "2.06" => {
            let (e, o) = parity_combine(&rational_of("2.03"), &rational_of("2.04"));
            let r = if id == "2.05" { e } else { o };
            (rat(r), "parity split of 2.03 and 2.04")
        }
        "2.07" => (d("2.05")?, "d/dz of 2.05"),
        "2.08" => (d("2.06")?, "d/dz of 2.06"),
        "2.09" => (d("2.07")?, "d/dz of 2.07"),
        "2.11" => {
            let (even2, _) = parity_combine(&rational_of("2.17"), &rational_of("2.18"));
            let lhs = &(&even2 * &inv_z2_minus_one())
                - &(&rational_of("2.07") / &RationalFunction::z());
            (rat(lhs), "(1/z² − 1)·even part of 2.17/2.18 − 2.07/z")
        }
        "2.13" => (rat(lin_down("2.03")?), "(z d/dz)⁻² of (1−z²)·2.03"),
        "2.14" => (rat(lin_down("2.04")?), "(z d/dz)⁻² of (1−z²)·2.04"),
        "2.15a" | "2.15b" => {
            let (e, o) = parity_combine(&rational_of("2.13"), &rational_of("2.14"));
            let r = if id == "2.15a" { e } else { o };
            (rat(r.derivative()), "d/dz of the parity split of 2.13 and 2.14")
        }
        "2.17" => (rat(k(&rational_of("2.03"))), "Kapteyn operator on 2.03"),
        "2.18" => (rat(k(&rational_of("2.04"))), "Kapteyn operator on 2.04"),
        "2.20" => (rat(k(&k(&rational_of("2.03")))), "Kapteyn operator twice on 2.03"),
        "2.22" => (rat(k(&k(&rational_of("2.04")))), "Kapteyn operator twice on 2.04"),
        "2.23" | "2.24" => {
            let (e, o) = parity_combine(&k(&k(&rational_of("2.03"))), &k(&k(&rational_of("2.04"))));
            if id == "2.23" {
                (rat(e.scale(&q(1, 16))), "even part of derived 2.20/2.22, over 16")
            } else {
                (rat(o), "odd part of derived 2.20/2.22")
            }
        }
        "4.06" => (
            derive_prime_relation(lookup("4.04")?)?.expression,
            "integrated prime relation on 4.04",
        ),
        "4.08" => (
            derive_prime_relation(lookup("4.07")?)?.expression,
            "differential prime relation on 4.07 and 4.04",
        ),
        "4.10" => (d("4.07")?.scale(&half()), "½ d/dz of 4.07"),
        "4.11" => (d("4.10")?, "d/dz of 4.10"),
        "4.13" => {
            let f = lookup("4.10")?.expression.mul_rational(&RationalFunction::z().recip()?);
            (&d("4.10")? + &f, "d/dz of 4.10 plus 4.10/z")
        }
        "4.15" => (d("4.14")?, "d/dz of 4.14"),
        "4.16" => {
            let e = &lookup("4.15")?.expression;
            let f = e.mul_rational(&RationalFunction::z().recip()?);
            (
                (&d("4.15")? + &f).scale(&half()),
                "½ d/dz of 4.15 plus 4.15/(2z)",
            )
        }
        _ => {
            lookup(id)?;
            return Ok(None);
        }
    };
    Ok(Some(out))
}

fn derived_or_seed(id: &str) -> Result<AlgebraicFunction> {
    Ok(match derivation(id)? {
        Some((e, _)) => e,
        None => lookup(id)?.expression.clone(),
    })
}

/// The operator-derived version of entry `id`, or `None` for entries that
/// seed the derivations.
pub fn derive(id: &str) -> Result<Option<ClosedFormEntry>> {
    let base = lookup(id)?;
    Ok(derivation(id)?.map(|(expression, _)| ClosedFormEntry {
        expression,
        provenance: Provenance::OperatorDerived,
        ..base.clone()
    }))
}

/// Outcome of comparing one derived entry with its transcription.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureCheck {
    pub id: String,
    pub recipe: String,
    pub derived: String,
    pub transcribed: String,
    pub equal: bool,
}

pub fn closure_checks() -> Vec<ClosureCheck> {
    registry()
        .iter()
        .filter_map(|e| {
            let (derived, recipe) = match derivation(&e.id) {
                Ok(Some(d)) => d,
                Ok(None) => return None,
                Err(err) => {
                    return Some(ClosureCheck {
                        id: e.id.clone(),
                        recipe: format!("failed: {err}"),
                        derived: String::new(),
                        transcribed: e.expression.to_string(),
                        equal: false,
                    })
                }
            };
            Some(ClosureCheck {
                id: e.id.clone(),
                recipe: recipe.into(),
                equal: derived == e.expression,
                derived: derived.to_string(),
                transcribed: e.expression.to_string(),
            })
        })
        .collect()
}

/// A relation between entries that must hold exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub relation: String,
    pub holds: bool,
}

pub fn identity_checks() -> Vec<IdentityCheck> {
    let get = |id: &str| lookup(id).expect("registered").expression.clone();
    let inv_z = RationalFunction::z().recip().expect("z ≠ 0");
    let mut out = Vec::new();
    let mut check = |name: &str, relation: &str, lhs: AlgebraicFunction, rhs: AlgebraicFunction| {
        out.push(IdentityCheck {
            name: name.into(),
            relation: relation.into(),
            holds: lhs == rhs,
        })
    };
    // (1/z² − 1) Σ(2n)²J_{2n} − (1/z) Σ 2n J'_{2n} with the sums taken
    // from the registry
    let (even2, _) = parity_combine(&rational_of("2.17"), &rational_of("2.18"));
    let combo = &(&even2 * &inv_z2_minus_one()) - &(&rational_of("2.07") * &inv_z);
    check("2.11", "(1/z²−1)·Σ(2n)²J_{2n} − Σ2nJ'_{2n}/z = 2.09", rat(combo), get("2.09"));
    check("2.09", "d/dz 2.07 = 2.09", get("2.07").derivative(), get("2.09"));
    let s_over_z2 = AlgebraicFunction::new(RationalFunction::zero(), &inv_z * &inv_z);
    check("4.09", "√(1−z²)/z² · 4.07 = 4.08", &s_over_z2 * &get("4.07"), get("4.08"));
    check("4.10", "d/dz 4.07 = 2·4.10", get("4.07").derivative(), get("4.10").scale(&q(2, 1)));
    check("4.11", "d/dz 4.10 = 4.11", get("4.10").derivative(), get("4.11"));
    check(
        "4.13",
        "4.11 + 4.10/z = 4.13",
        &get("4.11") + &get("4.10").mul_rational(&inv_z),
        get("4.13"),
    );
    check("4.15", "d/dz 4.14 = 4.15", get("4.14").derivative(), get("4.15"));
    check(
        "4.16",
        "½ d/dz 4.15 + 4.15/(2z) = 4.16",
        (&get("4.15").derivative() + &get("4.15").mul_rational(&inv_z)).scale(&half()),
        get("4.16"),
    );
    // the same combination from the prime relation with T = 4.14
    let t1 = get("4.14").derivative();
    let prime_side = (&t1.mul_rational(&inv_z) + &t1.derivative()).scale(&half());
    check("4.16-prime", "½(T'/z + T'') with T = 4.14 equals 4.16", prime_side, get("4.16"));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportTerm {
    pub multiplier: RationalCoeffs,
    pub series: String,
    pub spec: SeriesSpec,
}

/// Machine-readable listing of one entry.
#[derive(Debug, Clone, Serialize)]
pub struct ExportEntry {
    pub id: String,
    pub lhs: Vec<ExportTerm>,
    pub expression: String,
    pub rational_part: RationalCoeffs,
    pub sqrt_part: RationalCoeffs,
    pub validity: [f64; 2],
    pub provenance: Provenance,
    pub odd_start: Option<String>,
}

pub fn export() -> Vec<ExportEntry> {
    registry()
        .iter()
        .map(|e| ExportEntry {
            id: e.id.clone(),
            lhs: e
                .lhs
                .iter()
                .map(|t| ExportTerm {
                    multiplier: t.multiplier.coeffs(),
                    series: t.spec.to_string(),
                    spec: t.spec,
                })
                .collect(),
            expression: e.expression.to_string(),
            rational_part: e.expression.rational.coeffs(),
            sqrt_part: e.expression.radical.coeffs(),
            validity: [e.validity.0, e.validity.1],
            provenance: e.provenance,
            odd_start: e.odd_start.map(String::from),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(eval_closed("2.17", 0.5).unwrap(), 4.0);
        assert!((eval_closed("4.04", 0.6).unwrap() - 0.09).abs() < 1e-17);
        assert_eq!(eval_closed("2.05", 0.0).unwrap(), 0.0);
        assert!(matches!(eval_closed("9.99", 0.5), Err(Error::UnknownId(_))));
        assert!(matches!(eval_closed("2.17", 1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_closed("2.17", -0.1), Err(Error::Domain(_))));
        assert_eq!(eval_closed("4.08", 0.0).unwrap(), 0.25);
    }

    #[test]
    fn every_derivation_closes() {
        let checks = closure_checks();
        assert!(checks.len() >= 20);
        for c in &checks {
            assert!(c.equal, "{}: {} gives {} vs {}", c.id, c.recipe, c.derived, c.transcribed);
        }
    }

    #[test]
    fn identities_hold() {
        for c in identity_checks() {
            assert!(c.holds, "{}: {}", c.name, c.relation);
        }
    }

    #[test]
    fn export_lists_everything() {
        let ex = export();
        assert_eq!(ex.len(), registry().len());
        let e = ex.iter().find(|e| e.id == "2.17").unwrap();
        assert_eq!(e.rational_part.numerator, vec!["0", "1/2"]);
        assert!(e.sqrt_part.numerator.is_empty());
    }
}
