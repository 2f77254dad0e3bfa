//! The 3- and 5-dimensional irreducible representations of so(3), the model
//! of ℝ⁵ as symmetric trace-free 3×3 matrices, and exact rotations.
//!
//! Conventions:
//!
//! * The Lie algebra acts on a trace-free symmetric matrix by the commutator
//!   `A ↦ [ρ₃(E), A]`. A 5×5 matrix acts on coordinate column vectors, so the
//!   compatibility condition for a basis `A₁..A₅` is
//!   `[ρ₃(E), Aᵢ] = Σⱼ ρ₅(E)ⱼᵢ Aⱼ`.
//! * The inner product on trace-free symmetric matrices is the half-trace
//!   form `⟨A, B⟩ = ½ tr(AB)`. A compatible basis is unique up to an overall
//!   scale; the half-trace form is the normalization that keeps it inside
//!   ℚ(√3).

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::linalg::nullspace;
use crate::matrix::PolyMatrix;
use crate::poly::{MultiPoly, VarEnv};
use crate::scalar::{int, rat, QSqrt3, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E1,
    E2,
    E3,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E1, Generator::E2, Generator::E3];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The three relations `[E1,E2]=E3`, `[E2,E3]=E1`, `[E3,E1]=E2`.
    pub fn cyclic_triples() -> [(Generator, Generator, Generator); 3] {
        use Generator::*;
        [(E1, E2, E3), (E2, E3, E1), (E3, E1, E2)]
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E{}", self.index() + 1)
    }
}

/// Images of `E1, E2, E3` under a representation, as constant matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    generators: [PolyMatrix; 3],
}

impl Representation {
    pub fn new(dim: usize, generators: [PolyMatrix; 3]) -> Result<Self> {
        for g in &generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(AlgebraError::Shape(format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.to_constants().is_none() {
                return Err(AlgebraError::Domain("generators must have constant entries".into()));
            }
        }
        let env = VarEnv::empty();
        let generators = [generators[0].reembed(&env)?, generators[1].reembed(&env)?, generators[2].reembed(&env)?];
        Ok(Representation { dim, generators })
    }

    pub fn from_rows(dim: usize, rows: [Vec<Vec<QSqrt3>>; 3]) -> Result<Self> {
        let env = VarEnv::empty();
        let [a, b, c] = rows;
        Self::new(
            dim,
            [
                PolyMatrix::from_constants(&env, &a)?,
                PolyMatrix::from_constants(&env, &b)?,
                PolyMatrix::from_constants(&env, &c)?,
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, g: Generator) -> &PolyMatrix {
        &self.generators[g.index()]
    }

    pub fn generators(&self) -> &[PolyMatrix; 3] {
        &self.generators
    }

    /// Returns a copy with one generator entry replaced.
    pub fn with_entry(&self, g: Generator, i: usize, j: usize, value: QSqrt3) -> Result<Self> {
        let mut generators = self.generators.clone();
        let m = &generators[g.index()];
        generators[g.index()] = m.with_entry(i, j, MultiPoly::constant(m.env(), value))?;
        Self::new(self.dim, generators)
    }

    /// `[ρ(a), ρ(b)] − ρ(c)` for each cyclic relation, in the order of
    /// [`Generator::cyclic_triples`].
    pub fn commutation_defects(&self) -> Result<[PolyMatrix; 3]> {
        let defect = |(a, b, c): (Generator, Generator, Generator)| -> Result<PolyMatrix> {
            self.generator(a).commutator(self.generator(b))?.sub(self.generator(c))
        };
        let [t1, t2, t3] = Generator::cyclic_triples();
        Ok([defect(t1)?, defect(t2)?, defect(t3)?])
    }

    pub fn satisfies_commutation(&self) -> Result<bool> {
        Ok(self.commutation_defects()?.iter().all(PolyMatrix::is_zero))
    }

    pub fn is_antisymmetric(&self) -> Result<bool> {
        for g in &self.generators {
            if !g.is_antisymmetric()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn q(n: i64) -> QSqrt3 {
    QSqrt3::from_int(n)
}

fn s3(sign: i64) -> QSqrt3 {
    QSqrt3::new(int(0), int(sign))
}

fn int_rows<const N: usize>(rows: [[i64; N]; N]) -> Vec<Vec<QSqrt3>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// The defining representation on ℝ³.
pub fn make_rho3() -> Representation {
    let e1 = int_rows([[0, 0, 0], [0, 0, 1], [0, -1, 0]]);
    let e2 = int_rows([[0, 0, 1], [0, 0, 0], [-1, 0, 0]]);
    let e3 = int_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]]);
    Representation::from_rows(3, [e1, e2, e3]).expect("well-formed generators")
}

/// The irreducible representation on ℝ⁵.
pub fn make_rho5() -> Representation {
    let mut e1 = int_rows([[0, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, -1, 0, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, -1, 0]]);
    e1[0][4] = s3(1);
    e1[4][0] = s3(-1);
    let mut e2 = int_rows([[0, 0, 0, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0], [0, 0, -1, 0, 0], [0, -1, 0, 0, 0]]);
    e2[0][2] = s3(1);
    e2[2][0] = s3(-1);
    let e3 = int_rows([[0, 0, 0, 0, 0], [0, 0, 0, 2, 0], [0, 0, 0, 0, 1], [0, -2, 0, 0, 0], [0, 0, -1, 0, 0]]);
    Representation::from_rows(5, [e1, e2, e3]).expect("well-formed generators")
}

/// Symmetric trace-free 3×3 matrix, stored by its five independent entries
/// `a11, a12, a13, a22, a23` (`a33 = −a11 − a22`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTraceless3 {
    entries: [MultiPoly; 5],
}

impl SymTraceless3 {
    pub fn new(entries: [MultiPoly; 5]) -> Result<Self> {
        let env = entries[0].env();
        if entries.iter().any(|e| e.env() != env) {
            return Err(AlgebraError::Environment("entries over different environments".into()));
        }
        Ok(SymTraceless3 { entries })
    }

    pub fn env(&self) -> &VarEnv {
        self.entries[0].env()
    }

    pub fn entries(&self) -> &[MultiPoly; 5] {
        &self.entries
    }

    pub fn to_matrix(&self) -> PolyMatrix {
        let [a11, a12, a13, a22, a23] = &self.entries;
        let a33 = a11.add(a22).expect("shared environment").neg();
        let entries = vec![
            a11.clone(),
            a12.clone(),
            a13.clone(),
            a12.clone(),
            a22.clone(),
            a23.clone(),
            a13.clone(),
            a23.clone(),
            a33,
        ];
        PolyMatrix::from_entries(self.env(), 3, 3, entries).expect("3x3 shape")
    }

    pub fn from_matrix(m: &PolyMatrix) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(AlgebraError::Shape("expected a 3x3 matrix".into()));
        }
        if !m.is_symmetric()? || !m.trace()?.is_zero() {
            return Err(AlgebraError::Structure("matrix is not symmetric trace-free".into()));
        }
        Self::new([
            m.get(0, 0).clone(),
            m.get(0, 1).clone(),
            m.get(0, 2).clone(),
            m.get(1, 1).clone(),
            m.get(1, 2).clone(),
        ])
    }
}

/// `⟨A, B⟩ = ½ tr(AB)`.
pub fn half_trace_inner(a: &PolyMatrix, b: &PolyMatrix) -> Result<MultiPoly> {
    Ok(a.mul(b)?.trace()?.scale(&QSqrt3::from_rational(rat(1, 2))))
}

/// Orthonormal basis of 𝕄⁵ compatible with a pair (ρ₃, ρ₅).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M5Basis {
    elements: [SymTraceless3; 5],
    matrices: [PolyMatrix; 5],
}

impl M5Basis {
    fn from_elements(elements: [SymTraceless3; 5]) -> Self {
        let matrices = std::array::from_fn(|i| elements[i].to_matrix());
        M5Basis { elements, matrices }
    }

    pub fn elements(&self) -> &[SymTraceless3; 5] {
        &self.elements
    }

    /// The basis elements as constant 3×3 matrices.
    pub fn matrices(&self) -> &[PolyMatrix; 5] {
        &self.matrices
    }

    /// Solves `[ρ₃(E), Aᵢ] = Σⱼ ρ₅(E)ⱼᵢ Aⱼ` for all three generators,
    /// normalizes the solution to `⟨Aᵢ, Aⱼ⟩ = δᵢⱼ`, and fixes the overall sign
    /// so that the first nonzero entry of `A₁` is positive.
    pub fn derive(rho3: &Representation, rho5: &Representation) -> Result<Self> {
        if rho3.dim() != 3 || rho5.dim() != 5 {
            return Err(AlgebraError::Shape("expected a 3- and a 5-dimensional representation".into()));
        }
        const UNKNOWNS: usize = 25;
        // entry (r, s) of Aᵢ as a linear form in the 25 unknowns
        let entry_form = |i: usize, r: usize, s: usize| -> Vec<QSqrt3> {
            let mut form = vec![QSqrt3::zero(); UNKNOWNS];
            let base = 5 * i;
            match (r.min(s), r.max(s)) {
                (0, 0) => form[base] = q(1),
                (0, 1) => form[base + 1] = q(1),
                (0, 2) => form[base + 2] = q(1),
                (1, 1) => form[base + 3] = q(1),
                (1, 2) => form[base + 4] = q(1),
                _ => {
                    form[base] = q(-1);
                    form[base + 3] = q(-1);
                }
            }
            form
        };
        let axpy = |acc: &mut Vec<QSqrt3>, c: &QSqrt3, form: &[QSqrt3]| {
            if !c.is_zero() {
                for (a, f) in acc.iter_mut().zip(form) {
                    *a += &(c * f);
                }
            }
        };

        let mut equations = Vec::new();
        for g in Generator::ALL {
            let e3 = rho3.generator(g).to_constants().expect("constant generator");
            let e5 = rho5.generator(g).to_constants().expect("constant generator");
            for i in 0..5 {
                for r in 0..3 {
                    for s in 0..3 {
                        let mut eq = vec![QSqrt3::zero(); UNKNOWNS];
                        for (t, (e_rt, row_t)) in e3[r].iter().zip(&e3).enumerate() {
                            axpy(&mut eq, e_rt, &entry_form(i, t, s));
                            axpy(&mut eq, &-&row_t[s], &entry_form(i, r, t));
                        }
                        for (j, row) in e5.iter().enumerate() {
                            axpy(&mut eq, &-&row[i], &entry_form(j, r, s));
                        }
                        if eq.iter().any(|c| !c.is_zero()) {
                            equations.push(eq);
                        }
                    }
                }
            }
        }

        let kernel = nullspace(equations, UNKNOWNS);
        let solution = match kernel.as_slice() {
            [v] => v,
            [] => {
                return Err(AlgebraError::Inconsistency(
                    "no trace-free symmetric basis intertwines the given generators".into(),
                ))
            }
            many => return Err(AlgebraError::Inconsistency(format!(
                "compatible bases form a {}-dimensional family; the 5-dimensional representation is not irreducible",
                many.len()
            ))),
        };

        let env = VarEnv::empty();
        let raw: [PolyMatrix; 5] = std::array::from_fn(|i| {
            let entries = std::array::from_fn(|k| MultiPoly::constant(&env, solution[5 * i + k].clone()));
            SymTraceless3 { entries }.to_matrix()
        });
        let norm_sq = half_trace_inner(&raw[0], &raw[0])?.constant_value().expect("constant");
        for i in 0..5 {
            for j in 0..5 {
                let g = half_trace_inner(&raw[i], &raw[j])?.constant_value().expect("constant");
                let expected = if i == j { norm_sq.clone() } else { QSqrt3::zero() };
                if g != expected {
                    return Err(AlgebraError::Inconsistency(format!(
                        "solution is not orthogonal: <A{},A{}> = {g}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let norm = norm_sq.sqrt().ok_or_else(|| {
            AlgebraError::Inconsistency(format!("normalizing factor sqrt({norm_sq}) leaves Q(sqrt 3)"))
        })?;
        let mut factor = norm.inverse().expect("nonzero norm");
        let first = solution[..5].iter().find(|c| !c.is_zero()).expect("nonzero solution");
        if first.signum() < 0 {
            factor = -factor;
        }
        let elements = raw.map(|m| SymTraceless3::from_matrix(&m.scale_const(&factor)).expect("trace-free symmetric"));
        let basis = Self::from_elements(elements);
        for g in Generator::ALL {
            if basis.induced_action(rho3, g)? != *rho5.generator(g) {
                return Err(AlgebraError::Inconsistency(format!("normalized basis does not reproduce rho5({g})")));
            }
        }
        Ok(basis)
    }

    /// Matrix of `A ↦ [ρ₃(E), A]` in this basis.
    pub fn induced_action(&self, rho3: &Representation, g: Generator) -> Result<PolyMatrix> {
        let e = rho3.generator(g);
        let images: Vec<PolyMatrix> = self.matrices.iter().map(|a| e.commutator(a)).collect::<Result<_>>()?;
        PolyMatrix::from_fn(&VarEnv::empty(), 5, 5, |j, i| half_trace_inner(&images[i], &self.matrices[j]))
    }
}

/// The basis compatible with [`make_rho3`] and [`make_rho5`].
pub fn derive_m5_basis() -> Result<M5Basis> {
    M5Basis::derive(&make_rho3(), &make_rho5())
}

/// `A_v = Σ vᵢ Aᵢ`.
pub fn coordinates_to_matrix(v: &[MultiPoly], basis: &M5Basis) -> Result<SymTraceless3> {
    if v.len() != 5 {
        return Err(AlgebraError::Shape(format!("expected 5 coordinates, got {}", v.len())));
    }
    let env = v[0].env();
    let mut acc = PolyMatrix::zeros(env, 3, 3);
    for (vi, a) in v.iter().zip(basis.matrices()) {
        acc = acc.add(&a.reembed(env)?.scale(vi)?)?;
    }
    SymTraceless3::from_matrix(&acc)
}

/// `vᵢ = ⟨A, Aᵢ⟩`.
pub fn matrix_to_coordinates(a: &SymTraceless3, basis: &M5Basis) -> Result<Vec<MultiPoly>> {
    let m = a.to_matrix();
    basis.matrices().iter().map(|b| half_trace_inner(&m, &b.reembed(a.env())?)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalQuaternion {
    components: [Rational; 4],
}

impl RationalQuaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Result<Self> {
        let components = [w, x, y, z];
        if components.iter().all(Zero::is_zero) {
            return Err(AlgebraError::Domain("zero quaternion defines no rotation".into()));
        }
        Ok(RationalQuaternion { components })
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(int(w), int(x), int(y), int(z))
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.components
    }

    pub fn norm_sq(&self) -> Rational {
        self.components.iter().map(|c| c * c).sum()
    }

    /// Hamilton product.
    pub fn mul(&self, other: &Self) -> Self {
        let [w1, x1, y1, z1] = &self.components;
        let [w2, x2, y2, z2] = &other.components;
        RationalQuaternion {
            components: [
                w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
                w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
                w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
                w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
            ],
        }
    }
}

/// Exact element of SO(3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation3 {
    m: [[Rational; 3]; 3],
}

impl Rotation3 {
    pub fn new(m: [[Rational; 3]; 3]) -> Result<Self> {
        let r = Rotation3 { m };
        if !r.is_orthogonal() || !r.det().is_one() {
            return Err(AlgebraError::Domain("matrix is not a rotation".into()));
        }
        Ok(r)
    }

    pub fn identity() -> Self {
        Rotation3 { m: std::array::from_fn(|i| std::array::from_fn(|j| if i == j { int(1) } else { int(0) })) }
    }

    /// Euler–Rodrigues formula, dividing by `|q|²` to stay rational.
    pub fn from_quaternion(q: &RationalQuaternion) -> Self {
        let [w, x, y, z] = q.components();
        let n = q.norm_sq();
        let two = int(2);
        let m = [
            [w * w + x * x - y * y - z * z, &two * (x * y - w * z), &two * (x * z + w * y)],
            [&two * (x * y + w * z), w * w - x * x + y * y - z * z, &two * (y * z - w * x)],
            [&two * (x * z - w * y), &two * (y * z + w * x), w * w - x * x - y * y + z * z],
        ];
        Rotation3 { m: m.map(|row| row.map(|e| e / &n)) }
    }

    pub fn entries(&self) -> &[[Rational; 3]; 3] {
        &self.m
    }

    pub fn transpose(&self) -> Self {
        Rotation3 { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[j][i].clone())) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Rotation3 {
            m: std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &self.m[i][k] * &other.m[k][j]).sum())),
        }
    }

    pub fn det(&self) -> Rational {
        let m = &self.m;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self) == Self::identity()
    }

    pub fn to_poly_matrix(&self, env: &VarEnv) -> PolyMatrix {
        let rows: Vec<Vec<QSqrt3>> =
            self.m.iter().map(|r| r.iter().map(|e| QSqrt3::from_rational(e.clone())).collect()).collect();
        PolyMatrix::from_constants(env, &rows).expect("3x3 shape")
    }
}

pub fn rotation_from_quaternion(q: &RationalQuaternion) -> Rotation3 {
    Rotation3::from_quaternion(q)
}

/// Matrix of `A ↦ h A hᵀ` in the given basis.
pub fn rho5_of_rotation(h: &Rotation3, basis: &M5Basis) -> Result<PolyMatrix> {
    let env = VarEnv::empty();
    let hm = h.to_poly_matrix(&env);
    let ht = hm.transpose();
    let images: Vec<PolyMatrix> = basis.matrices().iter().map(|a| hm.mul(a)?.mul(&ht)).collect::<Result<_>>()?;
    PolyMatrix::from_fn(&env, 5, 5, |j, i| half_trace_inner(&images[i], &basis.matrices()[j]))
}

/// Deterministic sample of rational quaternions with small integer
/// numerators and denominators.
pub fn sample_quaternions(seed: u64, count: usize) -> Vec<RationalQuaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut c = || rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        let (w, x, y, z) = (c(), c(), c(), c());
        if let Ok(q) = RationalQuaternion::new(w, x, y, z) {
            out.push(q);
        }
    }
    out
}

/// Whether a constant matrix is orthogonal with determinant one.
pub fn is_special_orthogonal(m: &PolyMatrix) -> Result<bool> {
    let id = PolyMatrix::identity(m.env(), m.rows());
    if m.transpose().mul(m)? != id {
        return Ok(false);
    }
    Ok(m.det()?.constant_value().is_some_and(|d| d.is_one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constants(m: &PolyMatrix) -> Vec<Vec<QSqrt3>> {
        m.to_constants().unwrap()
    }

    #[test]
    fn rho3_matches_transcription() {
        let r = make_rho3();
        assert_eq!(constants(r.generator(Generator::E1))[1], vec![q(0), q(0), q(1)]);
        let e2 = r.generator(Generator::E2);
        assert!(e2.add(&e2.transpose()).unwrap().is_zero());
        assert!(r.is_antisymmetric().unwrap());
    }

    #[test]
    fn rho3_e2_e3_bracket() {
        // oracle: multiply the integer matrices directly
        let mul = |a: [[i64; 3]; 3], b: [[i64; 3]; 3]| -> [[i64; 3]; 3] {
            std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
        };
        let e2 = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]];
        let e3 = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]];
        let (ab, ba) = (mul(e2, e3), mul(e3, e2));
        let bracket: [[i64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j] - ba[i][j]));
        assert_eq!(bracket, [[0, 0, 0], [0, 0, 1], [0, -1, 0]]);

        let r = make_rho3();
        let got = r.generator(Generator::E2).commutator(r.generator(Generator::E3)).unwrap();
        assert_eq!(&got, r.generator(Generator::E1));
    }

    #[test]
    fn rho5_matches_transcription() {
        let r = make_rho5();
        assert_eq!(constants(r.generator(Generator::E1))[0][4], QSqrt3::sqrt3());
        assert_eq!(constants(r.generator(Generator::E3))[1][3], q(2));
        assert!(r.is_antisymmetric().unwrap());
        assert!(r.satisfies_commutation().unwrap());
    }

    #[test]
    fn corrupted_rho5_breaks_commutation() {
        let bad = make_rho5().with_entry(Generator::E3, 1, 3, q(3)).unwrap();
        assert!(!bad.satisfies_commutation().unwrap());
        assert!(matches!(M5Basis::derive(&make_rho3(), &bad), Err(AlgebraError::Inconsistency(_))));
    }

    #[test]
    fn basis_is_orthonormal_and_compatible() {
        let basis = derive_m5_basis().unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let g = half_trace_inner(&basis.matrices()[i], &basis.matrices()[j]).unwrap();
                let expected = if i == j { QSqrt3::one() } else { QSqrt3::zero() };
                assert_eq!(g.constant_value().unwrap(), expected);
            }
        }
        let rho3 = make_rho3();
        let rho5 = make_rho5();
        for g in Generator::ALL {
            assert_eq!(&basis.induced_action(&rho3, g).unwrap(), rho5.generator(g));
        }
    }

    #[test]
    fn basis_sign_convention() {
        let basis = derive_m5_basis().unwrap();
        let a1 = constants(&basis.matrices()[0]);
        // A₁ = diag(1, 1, −2)/√3
        let third = QSqrt3::new(int(0), rat(1, 3));
        assert_eq!(a1[0][0], third);
        assert_eq!(a1[2][2], third.scale(&int(-2)));
    }

    #[test]
    fn coordinates_round_trip_and_metric() {
        let basis = derive_m5_basis().unwrap();
        let env = VarEnv::new(["v1", "v2", "v3", "v4", "v5"]).unwrap();
        let v: Vec<MultiPoly> = env.names().iter().map(|n| MultiPoly::var(&env, n).unwrap()).collect();
        let a = coordinates_to_matrix(&v, &basis).unwrap();
        assert_eq!(matrix_to_coordinates(&a, &basis).unwrap(), v);
        let m = a.to_matrix();
        let tr = m.mul(&m).unwrap().trace().unwrap();
        let expected = MultiPoly::parse(&env, "2*v1^2 + 2*v2^2 + 2*v3^2 + 2*v4^2 + 2*v5^2").unwrap();
        assert_eq!(tr, expected);

        let zero = vec![MultiPoly::zero(&env); 5];
        assert!(coordinates_to_matrix(&zero, &basis).unwrap().to_matrix().is_zero());

        let a2 = SymTraceless3::from_matrix(&basis.matrices()[1]).unwrap();
        let coords = matrix_to_coordinates(&a2, &basis).unwrap();
        let values: Vec<QSqrt3> = coords.iter().map(|c| c.constant_value().unwrap()).collect();
        assert_eq!(values, vec![q(0), q(1), q(0), q(0), q(0)]);
    }

    #[test]
    fn quaternion_rotations() {
        assert_eq!(
            Rotation3::from_quaternion(&RationalQuaternion::from_ints(1, 0, 0, 0).unwrap()),
            Rotation3::identity()
        );
        let h = Rotation3::from_quaternion(&RationalQuaternion::from_ints(1, 1, 0, 0).unwrap());
        let expected = [[1, 0, 0], [0, 0, -1], [0, 1, 0]].map(|r| r.map(int));
        assert_eq!(h.entries(), &expected);
        assert!(RationalQuaternion::from_ints(0, 0, 0, 0).is_err());
        for q in sample_quaternions(3, 20) {
            let h = Rotation3::from_quaternion(&q);
            assert!(h.is_orthogonal());
            assert!(h.det().is_one());
        }
    }

    #[test]
    fn rho5_of_rotation_basics() {
        let basis = derive_m5_basis().unwrap();
        let id = rho5_of_rotation(&Rotation3::identity(), &basis).unwrap();
        assert_eq!(id, PolyMatrix::identity(&VarEnv::empty(), 5));

        let h1 = RationalQuaternion::from_ints(1, 1, 0, 0).unwrap();
        let h2 = RationalQuaternion::from_ints(1, 0, 1, 0).unwrap();
        let r1 = rho5_of_rotation(&Rotation3::from_quaternion(&h1), &basis).unwrap();
        assert_eq!(r1.det().unwrap().constant_value().unwrap(), q(1));
        assert!(is_special_orthogonal(&r1).unwrap());

        let r2 = rho5_of_rotation(&Rotation3::from_quaternion(&h2), &basis).unwrap();
        let r12 = rho5_of_rotation(&Rotation3::from_quaternion(&h1.mul(&h2)), &basis).unwrap();
        assert_eq!(r12, r1.mul(&r2).unwrap());
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(sample_quaternions(7, 5), sample_quaternions(7, 5));
        assert_ne!(sample_quaternions(7, 5), sample_quaternions(8, 5));
    }
}
