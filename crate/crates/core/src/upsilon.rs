//! The totally symmetric, trace-free rank-3 tensor Υ on ℝ⁵.
//!
//! Υ is the polarization of the cubic invariant `det A` on 𝕄⁵, realized as
//! `Υᵢⱼₖ = c · tr(AᵢAⱼAₖ)`. The constant `c` is not copied from anywhere: it
//! is solved for from the identity `Υ_v² v = g(v,v) v` with `g` the
//! coordinate metric of the orthonormal basis.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{MultiPoly, VarEnv};
use crate::representations::{rho5_of_rotation, M5Basis, Rotation3};
use crate::scalar::{rat, QSqrt3};

const DIM: usize = 5;

fn index(i: usize, j: usize, k: usize) -> usize {
    (i * DIM + j) * DIM + k
}

/// The environment `v1..v5` of symbolic vectors.
pub fn coordinate_env() -> VarEnv {
    VarEnv::new((1..=DIM).map(|i| format!("v{i}"))).expect("valid names")
}

/// The generic vector `(v1, …, v5)`.
pub fn symbolic_vector(env: &VarEnv) -> Result<Vec<MultiPoly>> {
    (1..=DIM).map(|i| MultiPoly::var(env, &format!("v{i}"))).collect()
}

/// `Σ vᵢ²`.
pub fn norm_sq(v: &[MultiPoly]) -> Result<MultiPoly> {
    let env = v.first().map(MultiPoly::env).cloned().unwrap_or_else(VarEnv::empty);
    v.iter().try_fold(MultiPoly::zero(&env), |acc, x| acc.add(&x.mul(x)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonTensor {
    components: Vec<QSqrt3>,
    normalization: QSqrt3,
}

impl UpsilonTensor {
    /// Raw constructor from `125` components in `(i, j, k)` row-major order.
    pub fn from_components(components: Vec<QSqrt3>, normalization: QSqrt3) -> Result<Self> {
        if components.len() != DIM * DIM * DIM {
            return Err(AlgebraError::Shape(format!("expected 125 components, got {}", components.len())));
        }
        Ok(UpsilonTensor { components, normalization })
    }

    pub fn zero() -> Self {
        UpsilonTensor { components: vec![QSqrt3::zero(); DIM * DIM * DIM], normalization: QSqrt3::zero() }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &QSqrt3 {
        &self.components[index(i, j, k)]
    }

    pub fn normalization(&self) -> &QSqrt3 {
        &self.normalization
    }

    pub fn scaled(&self, s: &QSqrt3) -> Self {
        UpsilonTensor {
            components: self.components.iter().map(|c| c * s).collect(),
            normalization: &self.normalization * s,
        }
    }

    pub fn is_totally_symmetric(&self) -> bool {
        let mut ok = true;
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let x = self.get(i, j, k);
                    ok &= [(i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)]
                        .iter()
                        .all(|&(a, b, c)| self.get(a, b, c) == x);
                }
            }
        }
        ok
    }

    /// `Σᵢ Υᵢᵢₖ` for each `k`.
    pub fn traces(&self) -> Vec<QSqrt3> {
        (0..DIM).map(|k| (0..DIM).fold(QSqrt3::zero(), |acc, i| acc + self.get(i, i, k))).collect()
    }

    pub fn is_trace_free(&self) -> bool {
        self.traces().iter().all(Zero::is_zero)
    }

    /// Nonzero components ordered by sorted index triple, then by the triple
    /// itself; indices are 1-based.
    pub fn nonzero_components(&self) -> Vec<((usize, usize, usize), QSqrt3)> {
        let mut out: Vec<_> = (0..DIM)
            .flat_map(|i| (0..DIM).flat_map(move |j| (0..DIM).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| !self.get(i, j, k).is_zero())
            .map(|(i, j, k)| ((i + 1, j + 1, k + 1), self.get(i, j, k).clone()))
            .collect();
        out.sort_by_key(|&((i, j, k), _)| {
            let mut s = [i, j, k];
            s.sort_unstable();
            (s, (i, j, k))
        });
        out
    }
}

/// One line per nonzero component: `i j k : value`.
impl fmt::Display for UpsilonTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, j, k), value) in self.nonzero_components() {
            writeln!(f, "{i} {j} {k} : {value}")?;
        }
        Ok(())
    }
}

/// `Υᵢⱼₖ = c · tr(AᵢAⱼAₖ)`.
pub fn build_upsilon(basis: &M5Basis, c: &QSqrt3) -> Result<UpsilonTensor> {
    if c.is_zero() {
        return Err(AlgebraError::Domain("normalization constant must be nonzero".into()));
    }
    let m = basis.matrices();
    let mut components = vec![QSqrt3::zero(); DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let aij = m[i].mul(&m[j])?;
            for k in 0..DIM {
                let tr = aij.mul(&m[k])?.trace()?.constant_value().expect("constant basis");
                components[index(i, j, k)] = c * &tr;
            }
        }
    }
    UpsilonTensor::from_components(components, c.clone())
}

/// `(Υ_v)ⱼₖ = Σᵢ vᵢ Υᵢⱼₖ`.
pub fn upsilon_endomorphism(t: &UpsilonTensor, v: &[MultiPoly]) -> Result<PolyMatrix> {
    if v.len() != DIM {
        return Err(AlgebraError::Shape(format!("expected a 5-vector, got {}", v.len())));
    }
    let env = v[0].env().clone();
    PolyMatrix::from_fn(&env, DIM, DIM, |j, k| {
        v.iter().enumerate().try_fold(MultiPoly::zero(&env), |acc, (i, vi)| {
            let c = t.get(i, j, k);
            if c.is_zero() {
                Ok(acc)
            } else {
                acc.add(&vi.scale(c))
            }
        })
    })
}

/// `Υ_v (Υ_v v)`.
pub fn upsilon_squared_applied(t: &UpsilonTensor, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let m = upsilon_endomorphism(t, v)?;
    m.apply(&m.apply(v)?)
}

/// Residual `Υ_v(Υ_v v) − g(v,v) v` for the symbolic vector `v = (v1..v5)`.
/// The identity holds iff every component is the zero polynomial.
pub fn verify_defining_identity(t: &UpsilonTensor) -> Result<Vec<MultiPoly>> {
    let env = coordinate_env();
    let v = symbolic_vector(&env)?;
    let lhs = upsilon_squared_applied(t, &v)?;
    let g = norm_sq(&v)?;
    lhs.iter().zip(&v).map(|(l, vi)| l.sub(&g.mul(vi)?)).collect()
}

/// Picks the root with positive rational part, or positive √3 part when the
/// rational part vanishes.
fn canonical_sign(c: QSqrt3) -> QSqrt3 {
    let positive = if c.a().is_zero() { c.b().is_positive() } else { c.a().is_positive() };
    if positive {
        c
    } else {
        -c
    }
}

/// Solves for `c` with `Υ_v² v = (Σvᵢ²) v`. The residual is `c²·P(v) − |v|² v`
/// where `P` is computed at `c = 1`; every component of `P` must be the same
/// multiple `α` of `|v|² vₖ`, giving `c² = 1/α`.
pub fn solve_normalization(basis: &M5Basis) -> Result<QSqrt3> {
    let unit = build_upsilon(basis, &QSqrt3::one())?;
    let env = coordinate_env();
    let v = symbolic_vector(&env)?;
    let p = upsilon_squared_applied(&unit, &v)?;
    let g = norm_sq(&v)?;
    let mut alpha: Option<QSqrt3> = None;
    for (pk, vk) in p.iter().zip(&v) {
        let target = g.mul(vk)?;
        let ratio = pk.ratio_to(&target)?.ok_or_else(|| {
            AlgebraError::Inconsistency("Υ_v² v is not proportional to |v|² v for any normalization".into())
        })?;
        match &alpha {
            None => alpha = Some(ratio),
            Some(a) if *a == ratio => {}
            Some(_) => {
                return Err(AlgebraError::Inconsistency("components require different normalizations".into()));
            }
        }
    }
    let alpha = alpha.expect("five components");
    let c_sq = alpha.inverse().ok_or_else(|| AlgebraError::Inconsistency("Υ_v² v vanishes identically".into()))?;
    let c = c_sq.sqrt().ok_or_else(|| AlgebraError::Inconsistency(format!("c² = {c_sq} has no root in Q(sqrt 3)")))?;
    Ok(canonical_sign(c))
}

/// Υ built from the basis with its solved normalization.
pub fn canonical_upsilon(basis: &M5Basis) -> Result<UpsilonTensor> {
    build_upsilon(basis, &solve_normalization(basis)?)
}

/// Whether `R Υ_v Rᵀ = Υ_{Rv}` holds identically in `v`, for a constant 5×5
/// matrix `R`.
pub fn is_invariant_under(t: &UpsilonTensor, r: &PolyMatrix) -> Result<bool> {
    let env = coordinate_env();
    let r = r.reembed(&env)?;
    let v = symbolic_vector(&env)?;
    let lhs = r.mul(&upsilon_endomorphism(t, &v)?)?.mul(&r.transpose())?;
    let rhs = upsilon_endomorphism(t, &r.apply(&v)?)?;
    Ok(lhs == rhs)
}

/// Equivariance of Υ under `ρ₅(h)`.
pub fn verify_equivariance(t: &UpsilonTensor, h: &Rotation3, basis: &M5Basis) -> Result<bool> {
    is_invariant_under(t, &rho5_of_rotation(h, basis)?)
}

/// Gram matrix of the metric read off from Υ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric5 {
    gram: Vec<Vec<QSqrt3>>,
}

impl Metric5 {
    pub fn identity() -> Self {
        Self::scalar(&QSqrt3::one())
    }

    pub fn scalar(s: &QSqrt3) -> Self {
        Metric5 {
            gram: (0..DIM)
                .map(|i| (0..DIM).map(|j| if i == j { s.clone() } else { QSqrt3::zero() }).collect())
                .collect(),
        }
    }

    pub fn gram(&self) -> &[Vec<QSqrt3>] {
        &self.gram
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// Reads the metric out of `Υ_v² v = q(v) v`: every component must be `vₖ`
/// times one common quadratic form `q`, which must be positive definite.
pub fn recover_metric(t: &UpsilonTensor) -> Result<Metric5> {
    let env = coordinate_env();
    let v = symbolic_vector(&env)?;
    let w = upsilon_squared_applied(t, &v)?;
    let mut form: Option<MultiPoly> = None;
    for (k, wk) in w.iter().enumerate() {
        let name = format!("v{}", k + 1);
        let qk = wk
            .div_by_var(&name)?
            .ok_or_else(|| AlgebraError::Structure(format!("component {} is not a multiple of {name}", k + 1)))?;
        match &form {
            None => form = Some(qk),
            Some(q) if *q == qk => {}
            Some(_) => {
                return Err(AlgebraError::Structure("v is not an eigenvector of Υ_v² for every v".into()));
            }
        }
    }
    let form = form.expect("five components");
    if !form.is_homogeneous(2) {
        return Err(AlgebraError::Structure("eigenvalue of Υ_v² is not a quadratic form".into()));
    }
    let half = QSqrt3::from_rational(rat(1, 2));
    let mut gram = vec![vec![QSqrt3::zero(); DIM]; DIM];
    for (i, row) in gram.iter_mut().enumerate() {
        for (j, g) in row.iter_mut().enumerate() {
            let mut e = vec![0u32; DIM];
            e[i] += 1;
            e[j] += 1;
            let c = form.coeff(&e);
            *g = if i == j { c } else { &c * &half };
        }
    }
    let cenv = VarEnv::empty();
    let gm = PolyMatrix::from_constants(&cenv, &gram)?;
    for (k, minor) in gm.leading_principal_minors()?.iter().enumerate() {
        let value = minor.constant_value().expect("constant minor");
        if !value.is_positive() {
            return Err(AlgebraError::Structure(format!(
                "quadratic form is not positive definite (leading minor {} = {value})",
                k + 1
            )));
        }
    }
    Ok(Metric5 { gram })
}
