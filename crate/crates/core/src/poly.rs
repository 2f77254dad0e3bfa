//! Multivariate polynomials over ℚ(√3) in canonical (sparse, zero-free) form.
//!
//! Text form: terms in descending lexicographic order of their exponent
//! vectors, joined by ` + ` / ` - `. Coefficients are printed as in
//! [`QSqrt3`]'s `Display`; a coefficient with both a rational and a √3 part
//! is parenthesized, e.g. `(1+s3)*r1*r2`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::scalar::QSqrt3;

/// Polynomials above this total degree are rejected.
pub const MAX_DEGREE: u32 = 24;

/// Token reserved for √3 in the text form.
const SQRT3_TOKEN: &str = "s3";

/// Ordered, duplicate-free list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarEnv(Arc<[String]>);

impl VarEnv {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || name == SQRT3_TOKEN {
                return Err(AlgebraError::Environment(format!("invalid variable name '{name}'")));
            }
            if names[..i].contains(name) {
                return Err(AlgebraError::Environment(format!("duplicate variable '{name}'")));
            }
        }
        Ok(VarEnv(names.into()))
    }

    /// The environment with no variables, home of constant polynomials.
    pub fn empty() -> Self {
        VarEnv(Arc::from(Vec::<String>::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| AlgebraError::Environment(format!("unknown variable '{name}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    env: VarEnv,
    terms: BTreeMap<Vec<u32>, QSqrt3>,
}

fn degree_of(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

fn check_degree(degree: u32) -> Result<()> {
    if degree > MAX_DEGREE {
        Err(AlgebraError::Resource { degree, limit: MAX_DEGREE })
    } else {
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero(env: &VarEnv) -> Self {
        MultiPoly { env: env.clone(), terms: BTreeMap::new() }
    }

    pub fn one(env: &VarEnv) -> Self {
        Self::constant(env, QSqrt3::one())
    }

    pub fn constant(env: &VarEnv, c: QSqrt3) -> Self {
        let mut p = Self::zero(env);
        if !c.is_zero() {
            p.terms.insert(vec![0; env.len()], c);
        }
        p
    }

    pub fn var(env: &VarEnv, name: &str) -> Result<Self> {
        let idx = env.index_of(name)?;
        let mut exps = vec![0; env.len()];
        exps[idx] = 1;
        Self::monomial(env, exps, QSqrt3::one())
    }

    pub fn monomial(env: &VarEnv, exps: Vec<u32>, coeff: QSqrt3) -> Result<Self> {
        if exps.len() != env.len() {
            return Err(AlgebraError::Environment(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                env.len()
            )));
        }
        check_degree(degree_of(&exps))?;
        let mut p = Self::zero(env);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        Ok(p)
    }

    pub fn env(&self) -> &VarEnv {
        &self.env
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &QSqrt3)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> QSqrt3 {
        self.terms.get(exps).cloned().unwrap_or_else(QSqrt3::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree_of(e)).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| degree_of(e) == degree)
    }

    /// The value of a degree-0 polynomial.
    pub fn constant_value(&self) -> Option<QSqrt3> {
        match self.terms.len() {
            0 => Some(QSqrt3::zero()),
            1 => self.terms.get(&vec![0; self.env.len()]).cloned(),
            _ => None,
        }
    }

    fn same_env(&self, other: &Self) -> Result<()> {
        if self.env == other.env {
            Ok(())
        } else {
            Err(AlgebraError::Environment(format!(
                "[{}] vs [{}]",
                self.env.names().join(","),
                other.env.names().join(",")
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_env(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_env(other)?;
        if let (Some(d1), Some(d2)) = (self.total_degree(), other.total_degree()) {
            check_degree(d1 + d2)?;
        }
        let mut acc: BTreeMap<Vec<u32>, QSqrt3> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                match acc.get_mut(&e) {
                    Some(slot) => *slot += &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { env: self.env.clone(), terms: acc })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        if let Some(d) = self.total_degree() {
            check_degree(d.saturating_mul(n))?;
        }
        let mut out = Self::one(&self.env);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        MultiPoly { env: self.env.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &QSqrt3) -> Self {
        if s.is_zero() {
            return Self::zero(&self.env);
        }
        MultiPoly { env: self.env.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    fn accumulate(&mut self, e: Vec<u32>, c: &QSqrt3) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// Replaces bound variables by polynomials over the same environment;
    /// unbound variables pass through.
    pub fn substitute(&self, bindings: &[(&str, MultiPoly)]) -> Result<Self> {
        let mut slots: Vec<Option<&MultiPoly>> = vec![None; self.env.len()];
        for (name, value) in bindings {
            self.same_env(value)?;
            slots[self.env.index_of(name)?] = Some(value);
        }
        let mut out = Self::zero(&self.env);
        for (e, c) in &self.terms {
            let mut kept = vec![0; e.len()];
            let mut term = Self::one(&self.env);
            for (i, &k) in e.iter().enumerate() {
                match slots[i] {
                    Some(value) if k > 0 => term = term.mul(&value.pow(k)?)?,
                    Some(_) => {}
                    None => kept[i] = k,
                }
            }
            term = term.mul(&Self::monomial(&self.env, kept, c.clone())?)?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes constants for variables, in the order given.
    pub fn evaluate(&self, bindings: &[(&str, QSqrt3)]) -> Result<Self> {
        let polys: Vec<(&str, MultiPoly)> =
            bindings.iter().map(|(n, v)| (*n, Self::constant(&self.env, v.clone()))).collect();
        self.substitute(&polys)
    }

    /// Coefficient of `var^power`, viewing the polynomial as univariate in
    /// `var` over the remaining variables.
    pub fn coefficient_of(&self, var: &str, power: u32) -> Result<Self> {
        let idx = self.env.index_of(var)?;
        let mut out = Self::zero(&self.env);
        for (e, c) in &self.terms {
            if e[idx] == power {
                let mut e = e.clone();
                e[idx] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        Ok(out)
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Result<Option<u32>> {
        let idx = self.env.index_of(var)?;
        Ok(self.terms.keys().map(|e| e[idx]).max())
    }

    /// Exact quotient by `var`, when every term is divisible by it.
    pub fn div_by_var(&self, var: &str) -> Result<Option<Self>> {
        let idx = self.env.index_of(var)?;
        let mut out = Self::zero(&self.env);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                return Ok(None);
            }
            let mut e = e.clone();
            e[idx] -= 1;
            out.terms.insert(e, c.clone());
        }
        Ok(Some(out))
    }

    /// `Some(t)` when `self = t · other` for a scalar `t`.
    pub fn ratio_to(&self, other: &Self) -> Result<Option<QSqrt3>> {
        self.same_env(other)?;
        let Some((lead, lead_coeff)) = other.terms.iter().next_back() else {
            return Ok(None);
        };
        let t = self.coeff(lead).checked_div(lead_coeff).expect("stored coefficients are nonzero");
        Ok((other.scale(&t) == *self).then_some(t))
    }

    /// Moves the polynomial into another environment, matching variables by
    /// name. Fails if a variable that actually occurs is missing from `env`.
    pub fn reembed(&self, env: &VarEnv) -> Result<Self> {
        if *env == self.env {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.env.len());
        for name in self.env.names() {
            map.push(env.index_of(name).ok());
        }
        let mut out = Self::zero(env);
        for (e, c) in &self.terms {
            let mut target = vec![0; env.len()];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let idx = map[i].ok_or_else(|| {
                    AlgebraError::Environment(format!("variable '{}' missing from target", self.env.names()[i]))
                })?;
                target[idx] = k;
            }
            out.terms.insert(target, c.clone());
        }
        Ok(out)
    }

    /// Parses the text form over `env`.
    pub fn parse(env: &VarEnv, text: &str) -> Result<Self> {
        Parser { env, chars: text.chars().collect(), pos: 0 }.expr()
    }
}

fn format_monomial(names: &[String], exps: &[u32]) -> String {
    let factors: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    factors.join("*")
}

/// Returns (is_negative, unsigned body).
fn format_term(names: &[String], exps: &[u32], c: &QSqrt3) -> (bool, String) {
    let mono = format_monomial(names, exps);
    let mixed = !c.is_rational() && !c.a().is_zero();
    if mixed {
        let body = if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") };
        return (false, body);
    }
    let negative = c.signum() < 0;
    let abs = if negative { -c } else { c.clone() };
    let body = if mono.is_empty() {
        abs.to_string()
    } else if abs.is_one() {
        mono
    } else {
        format!("{abs}*{mono}")
    };
    (negative, body)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = format_term(self.env.names(), e, c);
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    env: &'a VarEnv,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| pred(c)) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.env);
        let mut negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let term = self.term()?;
            out = if negative { out.sub(&term)? } else { out.add(&term)? };
            negative = match self.peek() {
                None => return Ok(out),
                Some('+') => false,
                Some('-') => true,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut coeff = QSqrt3::one();
        let mut exps = vec![0u32; self.env.len()];
        loop {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.take_while(|c| c != ')');
                    if !self.eat(')') {
                        return Err(self.err("unclosed '('"));
                    }
                    coeff = &coeff * &inner.parse::<QSqrt3>()?;
                }
                Some(c) if c.is_ascii_digit() => {
                    let mut text = self.take_while(|c| c.is_ascii_digit());
                    if self.eat('/') {
                        text.push('/');
                        text.push_str(&self.take_while(|c| c.is_ascii_digit()));
                    }
                    coeff = &coeff * &text.parse::<QSqrt3>()?;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                    if name == SQRT3_TOKEN {
                        coeff = &coeff * &QSqrt3::sqrt3();
                    } else {
                        let idx = self.env.index_of(&name)?;
                        let k = if self.eat('^') {
                            self.take_while(|c| c.is_ascii_digit())
                                .parse::<u32>()
                                .map_err(|_| self.err("bad exponent"))?
                        } else {
                            1
                        };
                        exps[idx] += k;
                    }
                }
                _ => return Err(self.err("expected a factor")),
            }
            if !self.eat('*') {
                break;
            }
        }
        MultiPoly::monomial(self.env, exps, coeff)
    }
}
