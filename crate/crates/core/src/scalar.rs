//! Exact arithmetic in the real quadratic field ℚ(√3).
//!
//! An element is stored as the pair `(a, b)` standing for `a + b√3`. Since √3
//! is irrational the pair is unique, so equality and hashing are
//! componentwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Square root of a non-negative rational, when it is itself rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    if &num * &num == *x.numer() && &den * &den == *x.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    a: Rational,
    b: Rational,
}

impl QSqrt3 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QSqrt3 { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// The element `√3`.
    pub fn sqrt3() -> Self {
        QSqrt3 { a: Rational::zero(), b: Rational::one() }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √3.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Galois conjugate `a − b√3`.
    pub fn conj(&self) -> Self {
        QSqrt3 { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 3b²`; nonzero for every nonzero element.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(3) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QSqrt3 { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        QSqrt3 { a: &self.a * s, b: &self.b * s }
    }

    /// Sign of the real number `a + b√3`.
    pub fn signum(&self) -> i32 {
        fn sign(x: &Rational) -> i32 {
            if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                0
            }
        }
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        match (&self.a * &self.a).cmp(&(int(3) * &self.b * &self.b)) {
            Ordering::Greater => sa,
            _ => sb,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Square root inside ℚ(√3), if one exists. The non-negative root is
    /// returned.
    pub fn sqrt(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let root = if self.b.is_zero() {
            // either a rational root, or a rational multiple of √3
            if let Some(p) = rational_sqrt(&self.a) {
                QSqrt3::from_rational(p)
            } else {
                let q = rational_sqrt(&(&self.a / int(3)))?;
                QSqrt3::new(Rational::zero(), q)
            }
        } else {
            // (p + q√3)² = a + b√3  ⇒  p² = (a ± √(a² − 3b²)) / 2, q = b / 2p
            let disc = rational_sqrt(&self.norm())?;
            let half = rat(1, 2);
            [(&self.a + &disc) * &half, (&self.a - &disc) * &half]
                .iter()
                .filter_map(|p2| rational_sqrt(p2).filter(|p| !p.is_zero()))
                .map(|p| {
                    let q = &self.b / (int(2) * &p);
                    QSqrt3::new(p, q)
                })
                .find(|cand| &(cand * cand) == self)?
        };
        Some(if root.signum() < 0 { -root } else { root })
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        QSqrt3 { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::from_rational(Rational::one())
    }
}

impl From<i64> for QSqrt3 {
    fn from(n: i64) -> Self {
        QSqrt3::from_int(n)
    }
}

impl From<Rational> for QSqrt3 {
    fn from(r: Rational) -> Self {
        QSqrt3::from_rational(r)
    }
}

impl PartialOrd for QSqrt3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt3 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn add(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl<'a> Sub<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn sub(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QSqrt3> for &'a QSqrt3 {
    type Output = QSqrt3;
    fn mul(self, rhs: &QSqrt3) -> QSqrt3 {
        QSqrt3 { a: &self.a * &rhs.a + int(3) * &self.b * &rhs.b, b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

impl Neg for &QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        QSqrt3 { a: -&self.a, b: -&self.b }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, rhs: QSqrt3) -> QSqrt3 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QSqrt3> for QSqrt3 {
            type Output = QSqrt3;
            fn $m(self, rhs: &QSqrt3) -> QSqrt3 {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for QSqrt3 {
    type Output = QSqrt3;
    fn neg(self) -> QSqrt3 {
        -&self
    }
}

impl AddAssign<&QSqrt3> for QSqrt3 {
    fn add_assign(&mut self, rhs: &QSqrt3) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&QSqrt3> for QSqrt3 {
    fn sub_assign(&mut self, rhs: &QSqrt3) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&QSqrt3> for QSqrt3 {
    fn mul_assign(&mut self, rhs: &QSqrt3) {
        *self = &*self * rhs;
    }
}

/// Prints `a`, `b*s3` or `a+b*s3`, with `s3` standing for √3.
impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn surd(b: &Rational) -> String {
            if b.is_one() {
                "s3".to_string()
            } else if *b == -Rational::one() {
                "-s3".to_string()
            } else {
                format!("{}*s3", b)
            }
        }
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}", surd(&self.b)),
            (false, false) => {
                let s = surd(&self.b);
                if s.starts_with('-') {
                    write!(f, "{}{}", self.a, s)
                } else {
                    write!(f, "{}+{}", self.a, s)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("invalid rational '{s}'"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Parses the `Display` form: `a`, `b*s3`, `s3`, `-s3`, `a+b*s3`, `a-b*s3`.
impl FromStr for QSqrt3 {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&s);
        if s.is_empty() {
            return Err(AlgebraError::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix("s3") else {
            return Ok(QSqrt3::from_rational(parse_rational(s)?));
        };
        // split "a+b*" / "a-b*" / "b*" / "" / "-" at the last sign that is not leading
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let a = if a_str.is_empty() { Rational::zero() } else { parse_rational(a_str)? };
        let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
        let b = match b_str {
            "" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        Ok(QSqrt3::new(a, b))
    }
}
