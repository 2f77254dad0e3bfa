//! Characteristic polynomials of the formal curvature `K = r1·E1 + r2·E2 +
//! r3·E3` in a representation, and the first Pontryagin form read off from
//! them.
//!
//! Curvature components are 2-forms, which commute, so `r1, r2, r3` are
//! modeled as ordinary commuting variables. The characteristic polynomial is
//! taken as `det(λI + K)` and Pontryagin representatives are the bare
//! coefficients, without the `1/(2π)²` factor; ratios between
//! representations are unaffected by either choice.

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{MultiPoly, VarEnv};
use crate::representations::{make_rho3, make_rho5, Generator, Representation};

pub const LAMBDA: &str = "lambda";
pub const CURVATURE_VARS: [&str; 3] = ["r1", "r2", "r3"];

/// `(lambda, r1, r2, r3)`.
pub fn curvature_env() -> VarEnv {
    VarEnv::new([LAMBDA, "r1", "r2", "r3"]).expect("valid names")
}

/// `r1² + r2² + r3²` over [`curvature_env`].
pub fn invariant_quadratic() -> MultiPoly {
    MultiPoly::parse(&curvature_env(), "r1^2 + r2^2 + r3^2").expect("well-formed")
}

/// `K = Σ rₖ ρ(Eₖ)` over [`curvature_env`].
pub fn curvature_matrix(rep: &Representation) -> Result<PolyMatrix> {
    let env = curvature_env();
    let mut k = PolyMatrix::zeros(&env, rep.dim(), rep.dim());
    for (g, name) in Generator::ALL.iter().zip(CURVATURE_VARS) {
        let r = MultiPoly::var(&env, name)?;
        k = k.add(&rep.generator(*g).reembed(&env)?.scale(&r)?)?;
    }
    Ok(k)
}

/// Proportionality of a quadratic form to the base form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ratio {
    Integer(i64),
    NotProportional,
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ratio::Integer(n) => s.serialize_i64(*n),
            Ratio::NotProportional => s.serialize_str("not proportional"),
        }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Ratio::Integer(n) => write!(f, "{n}"),
            Ratio::NotProportional => write!(f, "not proportional"),
        }
    }
}

fn integer_ratio(form: &MultiPoly, base: &MultiPoly) -> Result<Ratio> {
    let Some(t) = form.ratio_to(base)? else {
        return Ok(Ratio::NotProportional);
    };
    Ok(t.to_rational()
        .filter(|r| r.is_integer())
        .and_then(|r| r.to_integer().to_i64())
        .map_or(Ratio::NotProportional, Ratio::Integer))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyReport {
    pub rep_dim: usize,
    /// `det(λI + K)`.
    pub char_poly: MultiPoly,
    /// Coefficient of `λ^(dim−2)`.
    pub p1_form: MultiPoly,
    /// `p1_form` against the p1 form of the defining representation.
    pub ratio_to_base: Ratio,
}

impl Serialize for CharPolyReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc<'a> {
            dim: usize,
            char_poly: String,
            p1_form: String,
            ratio_to_base: &'a Ratio,
        }
        Doc {
            dim: self.rep_dim,
            char_poly: self.char_poly.to_string(),
            p1_form: self.p1_form.to_string(),
            ratio_to_base: &self.ratio_to_base,
        }
        .serialize(s)
    }
}

fn characteristic_polynomial(rep: &Representation) -> Result<MultiPoly> {
    let env = curvature_env();
    let lambda = MultiPoly::var(&env, LAMBDA)?;
    PolyMatrix::scalar(&env, rep.dim(), lambda).add(&curvature_matrix(rep)?)?.det()
}

fn p1_form_of(rep: &Representation, char_poly: &MultiPoly) -> Result<MultiPoly> {
    if rep.dim() < 2 {
        return Err(AlgebraError::Domain("representation of dimension < 2 has no p1 form".into()));
    }
    char_poly.coefficient_of(LAMBDA, (rep.dim() - 2) as u32)
}

pub fn char_poly(rep: &Representation) -> Result<CharPolyReport> {
    let poly = characteristic_polynomial(rep)?;
    let p1_form = p1_form_of(rep, &poly)?;
    let rho3 = make_rho3();
    let base = p1_form_of(&rho3, &characteristic_polynomial(&rho3)?)?;
    Ok(CharPolyReport { rep_dim: rep.dim(), ratio_to_base: integer_ratio(&p1_form, &base)?, char_poly: poly, p1_form })
}

/// Integer `n` with `p1(rep) = n · p1(base)`.
pub fn pontryagin_ratio_between(rep: &Representation, base: &Representation) -> Result<i64> {
    let form = p1_form_of(rep, &characteristic_polynomial(rep)?)?;
    let base_form = p1_form_of(base, &characteristic_polynomial(base)?)?;
    match integer_ratio(&form, &base_form)? {
        Ratio::Integer(n) => Ok(n),
        Ratio::NotProportional => {
            Err(AlgebraError::Inconsistency(format!("p1 forms are not proportional: {form} vs {base_form}")))
        }
    }
}

/// Ratio of the first Pontryagin forms of ρ₅ and ρ₃.
pub fn pontryagin_ratio() -> Result<i64> {
    pontryagin_ratio_between(&make_rho5(), &make_rho3())
}

/// Coefficient of `λ¹` in `det(λI + K)` for ρ₅, a quartic form in `r`.
pub fn lambda_coefficient_rho5() -> Result<MultiPoly> {
    characteristic_polynomial(&make_rho5())?.coefficient_of(LAMBDA, 1)
}

/// Whether `form` is a constant multiple of `(r1² + r2² + r3²)^(deg/2)`.
pub fn is_rotation_invariant_form(form: &MultiPoly) -> Result<bool> {
    let Some(deg) = form.total_degree() else {
        return Ok(true);
    };
    if deg % 2 == 1 || !form.is_homogeneous(deg) {
        return Ok(false);
    }
    Ok(form.ratio_to(&invariant_quadratic().pow(deg / 2)?)?.is_some())
}

/// Leading coefficient check: `det(λI + K)` is monic of degree `dim` in λ.
pub fn is_monic_in_lambda(report: &CharPolyReport) -> Result<bool> {
    let n = report.rep_dim as u32;
    let lead = report.char_poly.coefficient_of(LAMBDA, n)?;
    Ok(report.char_poly.degree_in(LAMBDA)? == Some(n) && lead == MultiPoly::one(lead.env()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QSqrt3;

    fn p(text: &str) -> MultiPoly {
        MultiPoly::parse(&curvature_env(), text).unwrap()
    }

    #[test]
    fn curvature_of_rho3() {
        let k = curvature_matrix(&make_rho3()).unwrap();
        assert!(k.is_antisymmetric().unwrap());
        assert_eq!(k.get(1, 2), &p("r1"));
        assert_eq!(k.get(0, 2), &p("r2"));
        assert_eq!(k.get(0, 1), &p("r3"));
        assert_eq!(k.get(2, 1), &p("-r1"));
    }

    #[test]
    fn curvature_of_rho5_carries_sqrt3() {
        let k = curvature_matrix(&make_rho5()).unwrap();
        assert_eq!(k.get(0, 4), &MultiPoly::var(&curvature_env(), "r1").unwrap().scale(&QSqrt3::sqrt3()));
        let zero = QSqrt3::from_int(0);
        let at_origin: Vec<MultiPoly> = k
            .entries()
            .iter()
            .map(|e| e.evaluate(&[("r1", zero.clone()), ("r2", zero.clone()), ("r3", zero.clone())]).unwrap())
            .collect();
        assert!(at_origin.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn rho3_characteristic_polynomial() {
        let r = char_poly(&make_rho3()).unwrap();
        assert_eq!(r.char_poly, p("lambda^3 + lambda*r1^2 + lambda*r2^2 + lambda*r3^2"));
        assert_eq!(r.p1_form.to_string(), "r1^2 + r2^2 + r3^2");
        assert_eq!(r.ratio_to_base, Ratio::Integer(1));
        assert!(is_monic_in_lambda(&r).unwrap());
    }

    #[test]
    fn rho5_characteristic_polynomial() {
        let r = char_poly(&make_rho5()).unwrap();
        assert_eq!(r.p1_form, p("5*r1^2 + 5*r2^2 + 5*r3^2"));
        assert!(r.char_poly.coefficient_of(LAMBDA, 4).unwrap().is_zero());
        assert!(r.char_poly.coefficient_of(LAMBDA, 2).unwrap().is_zero());
        assert!(r.char_poly.coefficient_of(LAMBDA, 0).unwrap().is_zero());
        assert_eq!(r.ratio_to_base, Ratio::Integer(5));
        assert!(is_monic_in_lambda(&r).unwrap());
    }

    #[test]
    fn ratios() {
        assert_eq!(pontryagin_ratio().unwrap(), 5);
        assert_eq!(pontryagin_ratio_between(&make_rho3(), &make_rho3()).unwrap(), 1);
    }

    #[test]
    fn ratio_of_corrupted_rep_is_not_proportional() {
        let bad = make_rho5().with_entry(Generator::E3, 1, 3, QSqrt3::from_int(3)).unwrap();
        // breaks antisymmetry and rotation invariance of the p1 form
        let report = char_poly(&bad).unwrap();
        assert_eq!(report.ratio_to_base, Ratio::NotProportional);
        assert!(pontryagin_ratio_between(&bad, &make_rho3()).is_err());
    }

    #[test]
    fn specialized_coefficients() {
        let at = |poly: &MultiPoly| {
            poly.evaluate(&[("r1", QSqrt3::from_int(1)), ("r2", QSqrt3::from_int(0)), ("r3", QSqrt3::from_int(0))])
                .unwrap()
                .constant_value()
                .unwrap()
        };
        assert_eq!(at(&char_poly(&make_rho5()).unwrap().p1_form), QSqrt3::from_int(5));
        assert_eq!(at(&char_poly(&make_rho3()).unwrap().p1_form), QSqrt3::from_int(1));
    }

    #[test]
    fn json_document() {
        let r = char_poly(&make_rho5()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["dim"], 5);
        assert_eq!(v["p1_form"], "5*r1^2 + 5*r2^2 + 5*r3^2");
        assert_eq!(v["ratio_to_base"], 5);
        let np = serde_json::to_value(Ratio::NotProportional).unwrap();
        assert_eq!(np, "not proportional");
    }

    #[test]
    fn invariant_form_detection() {
        assert!(is_rotation_invariant_form(&p("5*r1^2 + 5*r2^2 + 5*r3^2")).unwrap());
        assert!(!is_rotation_invariant_form(&p("r1^2 + 2*r2^2 + r3^2")).unwrap());
        assert!(!is_rotation_invariant_form(&p("r1^3")).unwrap());
    }
}
