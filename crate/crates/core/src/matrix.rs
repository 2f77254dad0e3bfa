//! Dense matrices of [`MultiPoly`] entries sharing one variable environment.

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::poly::{MultiPoly, VarEnv};
use crate::scalar::QSqrt3;

/// Largest matrix `det` will expand by cofactors.
pub const MAX_DET_SIZE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    env: VarEnv,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_entries(env: &VarEnv, rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(AlgebraError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|e| e.env() != env) {
            return Err(AlgebraError::Environment(format!("entry over [{}]", bad.env().names().join(","))));
        }
        Ok(PolyMatrix { rows, cols, env: env.clone(), entries })
    }

    pub fn from_fn(
        env: &VarEnv,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<MultiPoly>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Self::from_entries(env, rows, cols, entries)
    }

    /// Embeds a scalar matrix, given row by row.
    pub fn from_constants(env: &VarEnv, rows: &[Vec<QSqrt3>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Self::from_fn(env, n, m, |i, j| Ok(MultiPoly::constant(env, rows[i][j].clone())))
    }

    pub fn zeros(env: &VarEnv, rows: usize, cols: usize) -> Self {
        Self::from_fn(env, rows, cols, |_, _| Ok(MultiPoly::zero(env))).expect("valid shape")
    }

    pub fn identity(env: &VarEnv, n: usize) -> Self {
        Self::scalar(env, n, MultiPoly::one(env))
    }

    /// `p · I`.
    pub fn scalar(env: &VarEnv, n: usize, p: MultiPoly) -> Self {
        Self::from_fn(env, n, n, |i, j| Ok(if i == j { p.clone() } else { MultiPoly::zero(env) })).expect("valid shape")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn env(&self) -> &VarEnv {
        &self.env
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    /// Replaces one entry, keeping everything else.
    pub fn with_entry(&self, i: usize, j: usize, value: MultiPoly) -> Result<Self> {
        if i >= self.rows || j >= self.cols {
            return Err(AlgebraError::Shape(format!("({i},{j}) outside {}x{}", self.rows, self.cols)));
        }
        let mut entries = self.entries.clone();
        entries[i * self.cols + j] = value;
        Self::from_entries(&self.env, self.rows, self.cols, entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    /// Entry-wise constant values, if every entry has degree 0.
    pub fn to_constants(&self) -> Option<Vec<Vec<QSqrt3>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).constant_value()).collect()).collect()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Self::from_entries(&self.env, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Self::from_entries(&self.env, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Self::from_fn(&self.env, self.rows, other.cols, |i, j| {
            let mut acc = MultiPoly::zero(&self.env);
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b)?)?;
                }
            }
            Ok(acc)
        })
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn scale(&self, p: &MultiPoly) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.mul(p)).collect::<Result<_>>()?;
        Self::from_entries(&self.env, self.rows, self.cols, entries)
    }

    pub fn scale_const(&self, c: &QSqrt3) -> Self {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect();
        PolyMatrix { entries, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.scale_const(&-QSqrt3::from_int(1))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { rows: self.cols, cols: self.rows, env: self.env.clone(), entries }
    }

    pub fn trace(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(AlgebraError::Shape("trace of a non-square matrix".into()));
        }
        (0..self.rows).try_fold(MultiPoly::zero(&self.env), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_symmetric(&self) -> Result<bool> {
        Ok(self.sub(&self.transpose())?.is_zero())
    }

    pub fn is_antisymmetric(&self) -> Result<bool> {
        Ok(self.add(&self.transpose())?.is_zero())
    }

    /// Matrix times a column vector given as a slice.
    pub fn apply(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
        if v.len() != self.cols {
            return Err(AlgebraError::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        (0..self.rows)
            .map(|i| {
                v.iter().enumerate().try_fold(MultiPoly::zero(&self.env), |acc, (j, x)| {
                    let a = self.get(i, j);
                    if a.is_zero() || x.is_zero() {
                        Ok(acc)
                    } else {
                        acc.add(&a.mul(x)?)
                    }
                })
            })
            .collect()
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(AlgebraError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows > MAX_DET_SIZE {
            return Err(AlgebraError::Shape(format!("cofactor expansion limited to {MAX_DET_SIZE}x{MAX_DET_SIZE}")));
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        self.minor_det(0, &cols)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Result<MultiPoly> {
        if cols.len() == 1 {
            return Ok(self.get(row, cols[0]).clone());
        }
        let mut acc = MultiPoly::zero(&self.env);
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.minor_det(row + 1, &rest)?)?;
            acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        Ok(acc)
    }

    /// Moves every entry into `env`, matching variables by name.
    pub fn reembed(&self, env: &VarEnv) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.reembed(env)).collect::<Result<_>>()?;
        Self::from_entries(env, self.rows, self.cols, entries)
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
    pub fn leading_principal_minors(&self) -> Result<Vec<MultiPoly>> {
        if !self.is_square() {
            return Err(AlgebraError::Shape("minors of a non-square matrix".into()));
        }
        (1..=self.rows).map(|k| Self::from_fn(&self.env, k, k, |i, j| Ok(self.get(i, j).clone()))?.det()).collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
