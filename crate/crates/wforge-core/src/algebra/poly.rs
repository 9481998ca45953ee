//! Univariate polynomials over an exact or floating coefficient field.
//!
//! Coefficients are stored lowest degree first with no trailing zeros;
//! the zero polynomial has an empty coefficient list and its degree is
//! `None` (the "minus infinity" marker).

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_complex::Complex64;

use super::scalar::{Coeff, ExactComplex, FieldCoeff, ParseError};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

/// Polynomial with exact Gaussian-rational coefficients.
pub type ComplexPoly = Poly<ExactComplex>;

/// Polynomial with `Complex64` coefficients (the float path).
pub type Poly64 = Poly<Complex64>;

impl<C: Coeff> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c·zᵏ.
    pub fn monomial(c: C, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The identity polynomial z.
    pub fn identity() -> Self {
        Poly::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of zᵏ (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * C::from_int(k as i64))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Horner composition `self(inner(z))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: FieldCoeff> Poly<C> {
    /// Antiderivative vanishing at 0 (the definite integral from 0).
    pub fn integral(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / C::from_int((k + 1) as i64));
        }
        Poly::new(coeffs)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg d.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), AlgebraError> {
        let dd = d.degree().ok_or(AlgebraError::DivisionByZeroPoly)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.coeffs[rd].clone() / lead.clone();
            let shift = rd - dd;
            quo = &quo + &Poly::monomial(factor.clone(), shift);
            let sub = d.scale(&factor);
            let mut sub_coeffs = vec![C::zero(); shift];
            sub_coeffs.extend(sub.coeffs);
            rem = &rem - &Poly::new(sub_coeffs);
        }
        Ok((quo, rem))
    }

    /// Exact quotient; errors unless the division is remainder-free.
    pub fn div_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::NotDivisible)
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
        }
    }
}

/// Monic greatest common divisor by the Euclidean algorithm.
/// Errors when both inputs are zero.
pub fn poly_gcd<C: FieldCoeff>(a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>, AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::GcdOfZeros);
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::new(coeffs)
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl ComplexPoly {
    /// Convenience constructor from integer (re, im) coefficient pairs,
    /// lowest degree first.
    pub fn from_int_pairs(pairs: &[(i64, i64)]) -> Self {
        Poly::new(
            pairs
                .iter()
                .map(|&(re, im)| ExactComplex::from_ints(re, im))
                .collect(),
        )
    }

    pub fn to_float(&self) -> Poly64 {
        self.map_coeffs(|c| c.to_c64())
    }
}

/// Canonical textual form `poly[(re,im), (re,im), ...]`, lowest degree
/// first, rationals as `p/q`. Round-trips bit-exactly.
impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly{:?}", self.coeffs)
    }
}

impl FromStr for ComplexPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        let inner = t
            .strip_prefix("poly[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::new("expected poly[...] syntax"))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Poly::zero());
        }
        let mut coeffs = Vec::new();
        for tuple in split_top_level(inner) {
            coeffs.push(tuple.parse::<ExactComplex>()?);
        }
        Ok(Poly::new(coeffs))
    }
}

/// Splits on commas that are not inside parentheses.
pub(crate) fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (idx, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..idx].trim().to_owned());
                start = idx + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim().to_owned());
    out
}
