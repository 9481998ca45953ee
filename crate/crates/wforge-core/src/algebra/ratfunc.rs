//! Reduced quotients of polynomials.

use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;
use num_traits::One;

use super::poly::{poly_gcd, ComplexPoly, Poly, Poly64};
use super::scalar::{Coeff, ExactComplex, FieldCoeff, ParseError};
use super::AlgebraError;

/// Quotient num/den of two polynomials. The exact instantiation keeps
/// the invariants: denominator nonzero and monic, gcd(num, den)
/// constant. The float instantiation is a plain unreduced pair.
#[derive(Clone, PartialEq)]
pub struct RatFunc<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: fmt::Debug> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.num, self.den)
    }
}

/// Reduced rational function over the Gaussian rationals.
pub type RationalFunction = RatFunc<ExactComplex>;

/// Float-coefficient rational function (no reduction performed).
pub type RatFunc64 = RatFunc<Complex64>;

impl<C: Coeff> RatFunc<C> {
    pub fn num(&self) -> &Poly<C> {
        &self.num
    }

    pub fn den(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant as a rational function: numerator and denominator both
    /// degree ≤ 0.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn from_poly(p: Poly<C>) -> Self
    where
        C: One,
    {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl<C: FieldCoeff> RatFunc<C> {
    /// Evaluates at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &C) -> Option<C> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }
}

impl RationalFunction {
    /// Builds the reduced, denominator-monic form.
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: ComplexPoly::one(),
            });
        }
        let g = poly_gcd(&num, &den)?;
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = lead.recip().expect("leading coefficient nonzero");
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RatFunc { num, den })
    }

    /// z as a rational function.
    pub fn identity() -> Self {
        RatFunc::from_poly(ComplexPoly::identity())
    }

    /// (num'·den − num·den')/den², reduced.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let d = &self.den * &self.den;
        RationalFunction::new(n, d).expect("denominator square is nonzero")
    }

    /// Composition with a polynomial inner argument, reduced.
    pub fn compose_poly(&self, inner: &ComplexPoly) -> Result<Self, AlgebraError> {
        RationalFunction::new(self.num.compose(inner), self.den.compose(inner))
    }

    pub fn to_float(&self) -> RatFunc64 {
        RatFunc {
            num: self.num.to_float(),
            den: self.den.to_float(),
        }
    }
}

impl RatFunc64 {
    pub fn from_parts(num: Poly64, den: Poly64) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(RatFunc { num, den })
    }

    /// Unreduced quotient-rule derivative.
    pub fn derivative(&self) -> Self {
        RatFunc {
            num: &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative()),
            den: &self.den * &self.den,
        }
    }
}

/// Formats as `poly[...]` when the denominator is 1, else
/// `poly[...]/poly[...]`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for RationalFunction {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let t = s.trim();
        // the '/' separating two poly[...] blocks is the one after ']'
        let split = t.find("]/").map(|i| i + 1);
        let (ns, ds) = match split {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t, None),
        };
        let num: ComplexPoly = ns.parse()?;
        let den: ComplexPoly = match ds {
            Some(d) => d.parse()?,
            None => ComplexPoly::one(),
        };
        RationalFunction::new(num, den)
            .map_err(|e| ParseError::new(alloc::format!("invalid rational function: {}", e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn zp(pairs: &[(i64, i64)]) -> ComplexPoly {
        ComplexPoly::from_int_pairs(pairs)
    }

    #[test]
    fn reduces_and_normalizes_monic() {
        // (2z² − 2)/(4z + 4): the z+1 cancels entirely, leaving (z−1)/2
        let num = zp(&[(-2, 0), (0, 0), (2, 0)]);
        let den = zp(&[(4, 0), (4, 0)]);
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r.den(), &ComplexPoly::one());
        let half = ExactComplex::from_ratio(1, 2);
        assert_eq!(r.num(), &ComplexPoly::new(alloc::vec![-half.clone(), half]));

        // (2z² − 2)/(4z² + 4): coprime, denominator normalized monic
        let r = RationalFunction::new(
            zp(&[(-2, 0), (0, 0), (2, 0)]),
            zp(&[(4, 0), (0, 0), (4, 0)]),
        )
        .unwrap();
        assert_eq!(r.den(), &zp(&[(1, 0), (0, 0), (1, 0)]));
        let x = ExactComplex::from_ints(3, 1);
        let expect =
            (zp(&[(-2, 0), (0, 0), (2, 0)]).eval(&x)) / (zp(&[(4, 0), (0, 0), (4, 0)]).eval(&x));
        assert_eq!(r.eval(&x).unwrap(), expect);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalFunction::new(ComplexPoly::one(), ComplexPoly::zero()),
            Err(AlgebraError::ZeroDenominator)
        ));
    }

    #[test]
    fn equality_is_canonical() {
        // z/1 and (z²+z)/(z+1) reduce to the same representation
        let a = RationalFunction::identity();
        let b =
            RationalFunction::new(zp(&[(0, 0), (1, 0), (1, 0)]), zp(&[(1, 0), (1, 0)])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn derivative_of_inverse() {
        // d/dz (1/z) = -1/z²
        let inv = RationalFunction::new(ComplexPoly::one(), ComplexPoly::identity()).unwrap();
        let d = inv.derivative();
        assert_eq!(d.num(), &zp(&[(-1, 0)]));
        assert_eq!(d.den(), &zp(&[(0, 0), (0, 0), (1, 0)]));
    }

    #[test]
    fn display_and_parse() {
        let g =
            RationalFunction::new(zp(&[(1, 0), (0, 0), (1, 0)]), zp(&[(0, 0), (1, 0)])).unwrap();
        let text = g.to_string();
        assert_eq!(text, "poly[(1,0), (0,0), (1,0)]/poly[(0,0), (1,0)]");
        let back: RationalFunction = text.parse().unwrap();
        assert_eq!(back, g);
        let p: RationalFunction = "poly[(0,0), (1,0)]".parse().unwrap();
        assert_eq!(p, RationalFunction::identity());
    }
}
