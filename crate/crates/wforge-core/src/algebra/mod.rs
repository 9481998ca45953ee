//! Exact arithmetic: Gaussian-rational scalars, univariate complex
//! polynomials, reduced rational functions, bivariate real polynomials,
//! and the `p(u+iv)` real/imaginary expansion. Everything here is an
//! exact pure function over immutable values.

use core::fmt;

mod bivar;
mod poly;
mod ratfunc;
mod scalar;

pub use bivar::{substitute_complex, Bivariate, Bivariate64, BivariatePoly};
pub use poly::{poly_gcd, ComplexPoly, Poly, Poly64};
pub use ratfunc::{RatFunc, RatFunc64, RationalFunction};
pub use scalar::{
    parse_rational, rational_sqrt, Coeff, ComplexCoeff, ExactComplex, FieldCoeff, ParseError,
    Rational,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// gcd(0, 0) requested.
    GcdOfZeros,
    /// Polynomial division by the zero polynomial.
    DivisionByZeroPoly,
    /// Exact division left a nonzero remainder.
    NotDivisible,
    /// Rational function with zero denominator.
    ZeroDenominator,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::GcdOfZeros => write!(f, "gcd of two zero polynomials is undefined"),
            AlgebraError::DivisionByZeroPoly => write!(f, "polynomial division by zero"),
            AlgebraError::NotDivisible => write!(f, "polynomial division has a remainder"),
            AlgebraError::ZeroDenominator => {
                write!(f, "rational function denominator is zero")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}
