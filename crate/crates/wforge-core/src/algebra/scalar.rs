//! Exact complex scalars and the coefficient traits shared by the
//! exact and floating-point polynomial stacks.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number (arbitrary precision, always in lowest terms
/// with positive denominator).
pub type Rational = BigRational;

/// Coefficient ring for polynomials: exact rationals, Gaussian
/// rationals, `f64`, `Complex64`.
pub trait Coeff: Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> {
    fn from_int(n: i64) -> Self;
}

/// Coefficients that can also divide (field of fractions available).
pub trait FieldCoeff: Coeff + Div<Output = Self> {}

/// Complex coefficient with an accessible real/imaginary split, used
/// when expanding `p(u+iv)` into real bivariate polynomials.
pub trait ComplexCoeff: FieldCoeff {
    type Real: FieldCoeff;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn real(&self) -> Self::Real;
    fn imag(&self) -> Self::Real;
    fn i() -> Self;
    fn conj(&self) -> Self;
}

impl Coeff for Rational {
    fn from_int(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}
impl FieldCoeff for Rational {}

impl Coeff for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
}
impl FieldCoeff for f64 {}

impl Coeff for Complex64 {
    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}
impl FieldCoeff for Complex64 {}

impl ComplexCoeff for Complex64 {
    type Real = f64;

    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn real(&self) -> f64 {
        self.re
    }
    fn imag(&self) -> f64 {
        self.im
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn conj(&self) -> Self {
        Complex64::new(self.re, -self.im)
    }
}

/// Complex number with exact rational real and imaginary parts
/// (a Gaussian rational). Arithmetic never rounds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        ExactComplex { re, im }
    }

    pub fn from_int(re: i64) -> Self {
        ExactComplex::new(Rational::from_integer(BigInt::from(re)), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ExactComplex::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    /// `num/den` as a real rational scalar.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactComplex::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn from_real(re: Rational) -> Self {
        ExactComplex::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        ExactComplex::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² = re² + im², an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn recip(&self) -> Option<ExactComplex> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(ExactComplex::new(&self.re / &n, -&self.im / &n))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact square root in the Gaussian rationals, when one exists.
    /// Returns the principal branch: Re > 0, or Re = 0 and Im ≥ 0.
    pub fn sqrt_exact(&self) -> Option<ExactComplex> {
        if self.is_zero() {
            return Some(ExactComplex::zero());
        }
        if self.im.is_zero() {
            return if self.re.is_positive() {
                rational_sqrt(&self.re).map(ExactComplex::from_real)
            } else {
                rational_sqrt(&(-self.re.clone())).map(|r| ExactComplex::new(Rational::zero(), r))
            };
        }
        // (p + qi)² = a + bi  =>  p² = (a + |z|)/2, q = b/(2p)
        let r = rational_sqrt(&self.norm_sqr())?;
        let two = Rational::from_integer(BigInt::from(2));
        let p_sq = (&self.re + &r) / &two;
        let p = rational_sqrt(&p_sq)?;
        if p.is_zero() {
            return None;
        }
        let q = &self.im / (&two * &p);
        // p = +sqrt ≥ 0 and p > 0 here, so this is the principal branch.
        Some(ExactComplex::new(p, q))
    }
}

/// Exact square root of a nonnegative rational, when it is a perfect
/// square of a rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: ExactComplex) -> ExactComplex {
        ExactComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: ExactComplex) -> ExactComplex {
        ExactComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for ExactComplex {
    type Output = ExactComplex;
    // division by reciprocal keeps exactness through one normalization
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ExactComplex) -> ExactComplex {
        let inv = rhs.recip().expect("division by exact complex zero");
        self * inv
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl Zero for ExactComplex {
    fn zero() -> Self {
        ExactComplex::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactComplex {
    fn one() -> Self {
        ExactComplex::new(Rational::one(), Rational::zero())
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl Coeff for ExactComplex {
    fn from_int(n: i64) -> Self {
        ExactComplex::from_int(n)
    }
}
impl FieldCoeff for ExactComplex {}

impl ComplexCoeff for ExactComplex {
    type Real = Rational;

    fn from_parts(re: Rational, im: Rational) -> Self {
        ExactComplex::new(re, im)
    }
    fn real(&self) -> Rational {
        self.re.clone()
    }
    fn imag(&self) -> Rational {
        self.im.clone()
    }
    fn i() -> Self {
        ExactComplex::i()
    }
    fn conj(&self) -> Self {
        ExactComplex::conj(self)
    }
}

/// Formats as `(re,im)` with rationals as `p/q` (or `p` when integral).
impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parse error for the textual scalar/polynomial syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.message)
    }
}

impl core::error::Error for ParseError {}

impl FromStr for ExactComplex {
    type Err = ParseError;

    /// Accepts `(re,im)` with each part a rational `p/q` or integer,
    /// or a bare real part `p/q`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let mut parts = inner.splitn(2, ',');
            let re = parts
                .next()
                .ok_or_else(|| ParseError::new("empty complex literal"))?;
            let im = parts
                .next()
                .ok_or_else(|| ParseError::new("complex literal needs two components"))?;
            Ok(ExactComplex::new(parse_rational(re)?, parse_rational(im)?))
        } else {
            Ok(ExactComplex::from_real(parse_rational(t)?))
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    Rational::from_str(s.trim())
        .map_err(|_| ParseError::new(alloc::format!("invalid rational '{}'", s.trim())))
}
