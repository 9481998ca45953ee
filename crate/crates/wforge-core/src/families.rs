//! The named families of generating pairs, the transforms that move
//! between them, and the coincidence predicates.
//!
//! Degree-5 catalog (complex parameters):
//!
//! ```text
//! case 1.1   f = a,         g = z² + b           a ≠ 0
//! case 1.2   f = a(z+b)²,   g = (cz²+d)/(z+b)    a, c ≠ 0
//! case 3     f = az² + b,   g = z + c            a ≠ 0
//! ```
//!
//! Cases 2.1, 2.2 and 4 are the mirror images of these and are reached
//! through [`symmetry_transform`] rather than separate constructors.
//! The ω-family of arbitrary degree and the quintic four-parameter
//! family are float-only (their coefficients involve square roots).

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::algebra::{
    AlgebraError, Bivariate64, BivariatePoly, ComplexPoly, ExactComplex, Poly64, RatFunc64,
    Rational, RationalFunction,
};
use crate::geometry::{BivarSurface, CurveSurface};
use crate::weierstrass::{validate_pair, StructureError, WeierstrassPair};

#[derive(Debug, Clone, PartialEq)]
pub enum FamilyError {
    /// A side condition of the family is violated (e.g. a = 0).
    SideCondition {
        family: &'static str,
        condition: String,
    },
    /// The quintic four-parameter family needs a₂e₁ − a₁e₂ < 0.
    NotMinimal {
        value: f64,
    },
    /// Argument outside the family's domain (e.g. basis index < 1).
    Domain {
        message: String,
    },
    /// A transform's preconditions fail (α = 0, identically zero
    /// denominator, zero g).
    InvalidTransform {
        message: String,
    },
    /// Float pair failed the structure division within tolerance.
    FloatStructure {
        residual: f64,
    },
    Structure(StructureError),
    Algebra(AlgebraError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::SideCondition { family, condition } => {
                write!(
                    f,
                    "family {}: side condition violated: {}",
                    family, condition
                )
            }
            FamilyError::NotMinimal { value } => write!(
                f,
                "a2*e1 - a1*e2 = {} is not negative: the surface is not minimal",
                value
            ),
            FamilyError::Domain { message } => write!(f, "{}", message),
            FamilyError::InvalidTransform { message } => write!(f, "{}", message),
            FamilyError::FloatStructure { residual } => write!(
                f,
                "float pair violates f = Q²R (division residual {:e})",
                residual
            ),
            FamilyError::Structure(e) => write!(f, "{}", e),
            FamilyError::Algebra(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for FamilyError {}

impl From<StructureError> for FamilyError {
    fn from(e: StructureError) -> Self {
        FamilyError::Structure(e)
    }
}

impl From<AlgebraError> for FamilyError {
    fn from(e: AlgebraError) -> Self {
        FamilyError::Algebra(e)
    }
}

/// A family parameter: exact when it came in as a rational, float
/// otherwise. A descriptor whose parameters are all exact takes the
/// exact pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Param {
    Exact(ExactComplex),
    Float(Complex64),
}

impl Param {
    pub fn from_int(n: i64) -> Self {
        Param::Exact(ExactComplex::from_int(n))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Param::Exact(e) => e.to_c64(),
            Param::Float(c) => *c,
        }
    }

    pub fn exact(&self) -> Option<&ExactComplex> {
        match self {
            Param::Exact(e) => Some(e),
            Param::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Param::Exact(e) => e.is_zero(),
            Param::Float(c) => c.norm_sqr() == 0.0,
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Exact(e) => write!(f, "{}", e),
            Param::Float(c) => write!(f, "({},{})", c.re, c.im),
        }
    }
}

/// Validated descriptor of a catalog family.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Enneper,
    R11 {
        a: Param,
        b: Param,
    },
    R12 {
        a: Param,
        b: Param,
        c: Param,
        d: Param,
    },
    R3 {
        a: Param,
        b: Param,
        c: Param,
    },
    /// The ω-family of degree n ≥ 3 (float-only: the third coordinate
    /// carries √(n(n−2)ω)).
    XuWangOmega {
        n: u32,
        omega: f64,
    },
    /// The quintic four-parameter family of the same authors.
    XuWangDeg5 {
        a1: f64,
        a2: f64,
        e1: f64,
        e2: f64,
    },
}

/// The generating pair of a family: exact when every parameter is a
/// Gaussian rational, float otherwise.
#[derive(Debug, Clone)]
pub enum GeneratingPair {
    Exact(WeierstrassPair),
    Float { f: Poly64, g: RatFunc64 },
}

impl GeneratingPair {
    pub fn as_exact(&self) -> Option<&WeierstrassPair> {
        match self {
            GeneratingPair::Exact(p) => Some(p),
            GeneratingPair::Float { .. } => None,
        }
    }

    /// Numeric surface evaluator for either path.
    pub fn curve_surface(&self) -> Result<CurveSurface, FamilyError> {
        match self {
            GeneratingPair::Exact(p) => Ok(CurveSurface::new(p.curve().psi_float())),
            GeneratingPair::Float { f, g } => Ok(CurveSurface::new(float_curve(f, g)?)),
        }
    }
}

impl Family {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Family::Enneper => "enneper",
            Family::R11 { .. } => "r11",
            Family::R12 { .. } => "r12",
            Family::R3 { .. } => "r3",
            Family::XuWangOmega { .. } => "xw",
            Family::XuWangDeg5 { .. } => "xw5",
        }
    }

    /// Checks the family's side conditions.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            Family::Enneper => Ok(()),
            Family::R11 { a, .. } => {
                if a.is_zero() {
                    Err(FamilyError::SideCondition {
                        family: "r11",
                        condition: String::from("a must be nonzero"),
                    })
                } else {
                    Ok(())
                }
            }
            Family::R12 { a, c, .. } => {
                if a.is_zero() {
                    Err(FamilyError::SideCondition {
                        family: "r12",
                        condition: String::from("a must be nonzero"),
                    })
                } else if c.is_zero() {
                    Err(FamilyError::SideCondition {
                        family: "r12",
                        condition: String::from("c must be nonzero"),
                    })
                } else {
                    Ok(())
                }
            }
            Family::R3 { a, .. } => {
                if a.is_zero() {
                    Err(FamilyError::SideCondition {
                        family: "r3",
                        condition: String::from("a must be nonzero"),
                    })
                } else {
                    Ok(())
                }
            }
            Family::XuWangOmega { n, omega } => {
                if *n < 3 {
                    Err(FamilyError::Domain {
                        message: alloc::format!("omega family needs degree n >= 3, got {}", n),
                    })
                } else if *omega < 0.0 {
                    Err(FamilyError::Domain {
                        message: alloc::format!("omega must be nonnegative, got {}", omega),
                    })
                } else {
                    Ok(())
                }
            }
            Family::XuWangDeg5 { a1, a2, e1, e2 } => {
                let value = a2 * e1 - a1 * e2;
                if value < 0.0 {
                    Ok(())
                } else {
                    Err(FamilyError::NotMinimal { value })
                }
            }
        }
    }

    /// Builds the generating pair: exact when all parameters are exact.
    pub fn pair(&self) -> Result<GeneratingPair, FamilyError> {
        self.validate()?;
        match self {
            Family::Enneper => Ok(GeneratingPair::Exact(validate_pair(
                ComplexPoly::one(),
                RationalFunction::identity(),
            )?)),
            Family::R11 { a, b } => match (a.exact(), b.exact()) {
                (Some(a), Some(b)) => {
                    let f = ComplexPoly::constant(a.clone());
                    let g = RationalFunction::new(
                        ComplexPoly::new(alloc::vec![
                            b.clone(),
                            ExactComplex::zero(),
                            ExactComplex::one()
                        ]),
                        ComplexPoly::one(),
                    )?;
                    Ok(GeneratingPair::Exact(validate_pair(f, g)?))
                }
                _ => {
                    let (a, b) = (a.to_c64(), b.to_c64());
                    let f = Poly64::constant(a);
                    let g = Poly64::new(alloc::vec![b, Complex64::zero(), Complex64::one()]);
                    Ok(GeneratingPair::Float {
                        f,
                        g: RatFunc64::from_parts(g, Poly64::one())?,
                    })
                }
            },
            Family::R12 { a, b, c, d } => {
                match (a.exact(), b.exact(), c.exact(), d.exact()) {
                    (Some(a), Some(b), Some(c), Some(d)) => {
                        let zb = ComplexPoly::new(alloc::vec![b.clone(), ExactComplex::one()]);
                        let f = (&zb * &zb).scale(a);
                        let num = ComplexPoly::new(alloc::vec![
                            d.clone(),
                            ExactComplex::zero(),
                            c.clone()
                        ]);
                        let g = RationalFunction::new(num, zb)?;
                        Ok(GeneratingPair::Exact(validate_pair(f, g)?))
                    }
                    _ => {
                        let (a, b, c, d) = (a.to_c64(), b.to_c64(), c.to_c64(), d.to_c64());
                        let zb = Poly64::new(alloc::vec![b, Complex64::one()]);
                        let f = (&zb * &zb).scale(&a);
                        // cancel the common root analytically when b²c+d = 0,
                        // matching the exact path's reduction
                        let g = if (c * b * b + d).norm() == 0.0 {
                            RatFunc64::from_parts(
                                Poly64::new(alloc::vec![-c * b, c]),
                                Poly64::one(),
                            )?
                        } else {
                            RatFunc64::from_parts(
                                Poly64::new(alloc::vec![d, Complex64::zero(), c]),
                                zb,
                            )?
                        };
                        Ok(GeneratingPair::Float { f, g })
                    }
                }
            }
            Family::R3 { a, b, c } => match (a.exact(), b.exact(), c.exact()) {
                (Some(a), Some(b), Some(c)) => {
                    let f =
                        ComplexPoly::new(alloc::vec![b.clone(), ExactComplex::zero(), a.clone()]);
                    let g = RationalFunction::new(
                        ComplexPoly::new(alloc::vec![c.clone(), ExactComplex::one()]),
                        ComplexPoly::one(),
                    )?;
                    Ok(GeneratingPair::Exact(validate_pair(f, g)?))
                }
                _ => {
                    let (a, b, c) = (a.to_c64(), b.to_c64(), c.to_c64());
                    let f = Poly64::new(alloc::vec![b, Complex64::zero(), a]);
                    let g = Poly64::new(alloc::vec![c, Complex64::one()]);
                    Ok(GeneratingPair::Float {
                        f,
                        g: RatFunc64::from_parts(g, Poly64::one())?,
                    })
                }
            },
            Family::XuWangOmega { .. } => Err(FamilyError::Domain {
                message: String::from(
                    "the omega family is defined by its surface, not a generating pair; \
                     use xu_wang_surface",
                ),
            }),
            Family::XuWangDeg5 { a1, a2, e1, e2 } => {
                let xw = xw_degree5(*a1, *a2, *e1, *e2)?;
                Ok(GeneratingPair::Float {
                    f: xw.f,
                    g: RatFunc64::from_parts(xw.g, Poly64::one())?,
                })
            }
        }
    }
}

/// Binomial coefficient as an exact rational.
fn binomial(n: u32, k: u32) -> Rational {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= BigInt::from((n - i) as i64);
        den *= BigInt::from((i + 1) as i64);
    }
    Rational::new(num, den)
}

/// The harmonic pair (Pₙ, Qₙ): alternating binomial sums equal to the
/// real and imaginary parts of (u+iv)ⁿ.
pub fn xu_wang_basis(n: u32) -> Result<(BivariatePoly, BivariatePoly), FamilyError> {
    if n < 1 {
        return Err(FamilyError::Domain {
            message: alloc::format!("basis index must be >= 1, got {}", n),
        });
    }
    let mut p = BivariatePoly::zero();
    for k in 0..=(n - 1).div_ceil(2) {
        if 2 * k > n {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        p.add_term(
            n - 2 * k,
            2 * k,
            binomial(n, 2 * k) * Rational::from_integer(BigInt::from(sign)),
        );
    }
    let mut q = BivariatePoly::zero();
    for k in 0..=(n - 1) / 2 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        q.add_term(
            n - 2 * k - 1,
            2 * k + 1,
            binomial(n, 2 * k + 1) * Rational::from_integer(BigInt::from(sign)),
        );
    }
    Ok((p, q))
}

/// Coordinate polynomials of the ω-family surface of degree n:
/// (−Pₙ + ωPₙ₋₂, Qₙ + ωQₙ₋₂, 2√(n(n−2)ω)/(n−1)·Pₙ₋₁).
pub fn xu_wang_coords(n: u32, omega: f64) -> Result<[Bivariate64; 3], FamilyError> {
    Family::XuWangOmega { n, omega }.validate()?;
    let (pn, qn) = xu_wang_basis(n)?;
    let (pn2, qn2) = xu_wang_basis(n - 2)?;
    let (pn1, _) = xu_wang_basis(n - 1)?;
    let scale = 2.0 * libm::sqrt((n as f64) * ((n - 2) as f64) * omega) / ((n - 1) as f64);
    let x1 = &-&pn.to_float() + &pn2.to_float().scale(&omega);
    let x2 = &qn.to_float() + &qn2.to_float().scale(&omega);
    let x3 = pn1.to_float().scale(&scale);
    Ok([x1, x2, x3])
}

/// Numeric evaluator for the ω-family surface.
pub fn xu_wang_surface(n: u32, omega: f64) -> Result<BivarSurface, FamilyError> {
    Ok(BivarSurface::from_float(xu_wang_coords(n, omega)?))
}

/// The quintic four-parameter family, as a float generating pair plus
/// its catalog descriptor (case 1.2 with b = d = 0).
#[derive(Debug, Clone)]
pub struct XwDegree5 {
    pub f: Poly64,
    /// g = κ·z.
    pub g: Poly64,
    pub kappa: Complex64,
    /// Equivalent catalog member.
    pub r12: Family,
}

pub fn xw_degree5(a1: f64, a2: f64, e1: f64, e2: f64) -> Result<XwDegree5, FamilyError> {
    Family::XuWangDeg5 { a1, a2, e1, e2 }.validate()?;
    let s = libm::sqrt((a1 * a1 + a2 * a2) * (e1 * e1 + e2 * e2));
    let ae = a1 * e1 + a2 * e2;
    let e_conj = Complex64::new(e1, -e2);
    let kappa =
        Complex64::new(libm::sqrt(s - ae), libm::sqrt(s + ae)) * libm::sqrt(5.0 / 6.0) / e_conj;
    let f = Poly64::monomial(e_conj * 6.0, 2);
    let g = Poly64::monomial(kappa, 1);
    let r12 = Family::R12 {
        a: Param::Float(e_conj * 6.0),
        b: Param::Float(Complex64::zero()),
        c: Param::Float(kappa),
        d: Param::Float(Complex64::zero()),
    };
    Ok(XwDegree5 { f, g, kappa, r12 })
}

/// The same surface straight from its closed-form coordinates; kept as
/// an independent oracle for the generating pair.
pub fn xw_degree5_closed_form(a1: f64, a2: f64, e1: f64, e2: f64) -> [Bivariate64; 3] {
    let basis = crate::quintic::basis_polynomials::<f64>();
    let (ba, bb, bc, bd, be, bf) = (
        &basis[0], &basis[1], &basis[2], &basis[3], &basis[4], &basis[5],
    );
    let s = libm::sqrt((a1 * a1 + a2 * a2) * (e1 * e1 + e2 * e2));
    let ae = a1 * e1 + a2 * e2;
    let sqrt30 = libm::sqrt(30.0);
    let x = &(&ba.scale(&a1) - &bb.scale(&a2)) + &(&be.scale(&e1) - &bf.scale(&e2));
    let y = &(&ba.scale(&a2) + &bb.scale(&a1)) + &(&be.scale(&e2) + &bf.scale(&e1));
    let z =
        &bc.scale(&(sqrt30 / 4.0 * libm::sqrt(s - ae))) - &bd.scale(&(sqrt30 * libm::sqrt(s + ae)));
    [x, y, z]
}

/// The pole-free integrand of a float pair, clearing g's denominator
/// out of f (f must be Q²·R up to float tolerance).
pub fn float_integrand(f: &Poly64, g: &RatFunc64) -> Result<[Poly64; 3], FamilyError> {
    let q = g.den();
    let p = g.num();
    let q_sq = q * q;
    let (r, rem) = f.div_rem(&q_sq)?;
    let scale = f.coeffs().iter().fold(1.0f64, |m, c| m.max(c.norm()));
    let rem_norm = rem.coeffs().iter().fold(0.0f64, |m, c| m.max(c.norm()));
    if rem_norm > 1e-9 * scale {
        return Err(FamilyError::FloatStructure { residual: rem_norm });
    }
    let q_sq_r = &q_sq * &r;
    let p_sq_r = &(p * p) * &r;
    let half = Complex64::new(0.5, 0.0);
    let i_half = Complex64::new(0.0, 0.5);
    let phi1 = (&q_sq_r - &p_sq_r).scale(&half);
    let phi2 = (&q_sq_r + &p_sq_r).scale(&i_half);
    let phi3 = &(p * q) * &r;
    Ok([phi1, phi2, phi3])
}

/// Builds the minimal curve Ψ of a float pair.
pub fn float_curve(f: &Poly64, g: &RatFunc64) -> Result<[Poly64; 3], FamilyError> {
    let [phi1, phi2, phi3] = float_integrand(f, g)?;
    Ok([phi1.integral(), phi2.integral(), phi3.integral()])
}

/// Reparametrization z ↦ αz + β: f̃(z) = α·f(αz+β), g̃(z) = g(αz+β).
/// Generates the same surface up to translation.
pub fn affine_normalize(
    f: &ComplexPoly,
    g: &RationalFunction,
    alpha: &ExactComplex,
    beta: &ExactComplex,
) -> Result<(ComplexPoly, RationalFunction), FamilyError> {
    if alpha.is_zero() {
        return Err(FamilyError::InvalidTransform {
            message: String::from("affine reparametrization needs alpha != 0"),
        });
    }
    let inner = ComplexPoly::new(alloc::vec![beta.clone(), alpha.clone()]);
    let f_new = f.compose(&inner).scale(alpha);
    let g_new = g.compose_poly(&inner)?;
    Ok((f_new, g_new))
}

/// For a quadratic g = Az² + Bz + C with A a perfect Gaussian-rational
/// square, the (α, β) that bring it to the z² + b normal form:
/// α²A = 1 (principal root) and β = −B/(2A) kills the linear term.
pub fn normalize_quadratic(g: &ComplexPoly) -> Option<(ExactComplex, ExactComplex)> {
    if g.degree() != Some(2) {
        return None;
    }
    let a = g.coeff(2);
    let b = g.coeff(1);
    let alpha = a.recip()?.sqrt_exact()?;
    let beta = -(b / (ExactComplex::from_int(2) * a));
    Some((alpha, beta))
}

/// The Oyz mirror: (f, g) ↦ (f·g² cleared to P²R, 1/g). The image
/// surface is exactly (−x₁, x₂, x₃) of the original.
pub fn symmetry_transform(pair: &WeierstrassPair) -> Result<WeierstrassPair, FamilyError> {
    let p = pair.g_num();
    if p.is_zero() {
        return Err(FamilyError::InvalidTransform {
            message: String::from("symmetry transform needs g nonzero"),
        });
    }
    // f·g² = Q²R·(P/Q)² = P²R, a polynomial for every validated pair
    let f_new = &(p * p) * pair.f_cofactor();
    let g_new = RationalFunction::new(pair.g_den().clone(), p.clone())?;
    Ok(validate_pair(f_new, g_new)?)
}

/// Disc automorphism (α+g)/(1−ᾱg) with φ = 0, staying exact.
pub fn moebius_exact(
    g: &RationalFunction,
    alpha: &ExactComplex,
) -> Result<RationalFunction, FamilyError> {
    let num = &g.den().scale(alpha) + g.num();
    let den = &g.den().clone() - &g.num().scale(&alpha.conj());
    if den.is_zero() {
        return Err(FamilyError::InvalidTransform {
            message: String::from("moebius transform has identically zero denominator"),
        });
    }
    Ok(RationalFunction::new(num, den)?)
}

/// e^{iφ}(α+g)/(1−ᾱg) on float rational functions.
pub fn moebius_float(g: &RatFunc64, alpha: Complex64, phi: f64) -> Result<RatFunc64, FamilyError> {
    let rot = Complex64::new(libm::cos(phi), libm::sin(phi));
    let num = (&g.den().scale(&alpha) + g.num()).scale(&rot);
    let den = &g.den().clone() - &g.num().scale(&alpha.conj());
    if den.is_zero() {
        return Err(FamilyError::InvalidTransform {
            message: String::from("moebius transform has identically zero denominator"),
        });
    }
    Ok(RatFunc64::from_parts(num, den)?)
}

/// Result of a canonical-parameter transform: exact when the rotation
/// e^{iφ} stays rational (φ = 0), float coefficients otherwise.
#[derive(Debug, Clone)]
pub enum TransformedG {
    Exact(RationalFunction),
    Float(RatFunc64),
}

impl TransformedG {
    pub fn to_float(&self) -> RatFunc64 {
        match self {
            TransformedG::Exact(g) => g.to_float(),
            TransformedG::Float(g) => g.clone(),
        }
    }
}

/// e^{iφ}(α+g)/(1−ᾱg): exact when φ = 0, float otherwise.
pub fn moebius_transform(
    g: &RationalFunction,
    alpha: &ExactComplex,
    phi: f64,
) -> Result<TransformedG, FamilyError> {
    if phi == 0.0 {
        Ok(TransformedG::Exact(moebius_exact(g, alpha)?))
    } else {
        Ok(TransformedG::Float(moebius_float(
            &g.to_float(),
            alpha.to_c64(),
            phi,
        )?))
    }
}

/// e^{iφ}/g: exact when φ = 0, float otherwise.
pub fn inversion_transform(g: &RationalFunction, phi: f64) -> Result<TransformedG, FamilyError> {
    if phi == 0.0 {
        Ok(TransformedG::Exact(inversion_exact(g)?))
    } else {
        Ok(TransformedG::Float(inversion_float(&g.to_float(), phi)?))
    }
}

/// 1/g, exact (φ = 0).
pub fn inversion_exact(g: &RationalFunction) -> Result<RationalFunction, FamilyError> {
    if g.is_zero() {
        return Err(FamilyError::InvalidTransform {
            message: String::from("inversion needs g not identically zero"),
        });
    }
    Ok(RationalFunction::new(g.den().clone(), g.num().clone())?)
}

/// e^{iφ}/g on float rational functions.
pub fn inversion_float(g: &RatFunc64, phi: f64) -> Result<RatFunc64, FamilyError> {
    if g.is_zero() {
        return Err(FamilyError::InvalidTransform {
            message: String::from("inversion needs g not identically zero"),
        });
    }
    let rot = Complex64::new(libm::cos(phi), libm::sin(phi));
    Ok(RatFunc64::from_parts(g.den().scale(&rot), g.num().clone())?)
}

/// What remains of an r12 member when b²c + d = 0: g collapses to the
/// polynomial c(z−b) and the pair is a case-3 surface.
#[derive(Debug, Clone, PartialEq)]
pub struct R12Reduction {
    /// The reduced g = c·(z − b).
    pub g_reduced: ComplexPoly,
    /// Case-3 parameter C of the affine-normalized pair.
    pub r3_c: ExactComplex,
    /// Multiply r12's `a` by this to get the case-3 parameter A
    /// (the normalization is z ↦ z/c − b, giving A = a/c³, B = 0).
    pub a_scale: ExactComplex,
}

/// The coincidence predicate between cases 1.2 and 3: exactly when
/// b²c + d = 0 the r12 member is also a case-3 surface.
pub fn coincidence_r12_r3(
    b: &ExactComplex,
    c: &ExactComplex,
    d: &ExactComplex,
) -> Result<Option<R12Reduction>, FamilyError> {
    if c.is_zero() {
        return Err(FamilyError::SideCondition {
            family: "r12",
            condition: String::from("coincidence predicate needs c != 0"),
        });
    }
    let predicate = b.clone() * b.clone() * c.clone() + d.clone();
    if !predicate.is_zero() {
        return Ok(None);
    }
    let g_reduced = ComplexPoly::new(alloc::vec![-(c.clone() * b.clone()), c.clone()]);
    let two = ExactComplex::from_int(2);
    let c3 = c.clone() * c.clone() * c.clone();
    Ok(Some(R12Reduction {
        g_reduced,
        r3_c: -(two * b.clone() * c.clone()),
        a_scale: c3.recip().expect("c nonzero"),
    }))
}

/// Exact decision: does r12[a,b,c,d] coincide (up to position in space)
/// with r3[A,B,C]? Evaluates the derived relation set
/// α = 0, B = 0, b²c+d = 0, C = −2bc·e^{iφ}, a = A c³ e^{4iφ}
/// for some real φ.
pub fn r12_coincides_with_r3(
    r12: (&ExactComplex, &ExactComplex, &ExactComplex, &ExactComplex),
    r3: (&ExactComplex, &ExactComplex, &ExactComplex),
) -> Result<bool, FamilyError> {
    let (a, b, c, d) = r12;
    let (big_a, big_b, big_c) = r3;
    if coincidence_r12_r3(b, c, d)?.is_none() {
        return Ok(false);
    }
    if !big_b.is_zero() {
        return Ok(false);
    }
    let c3 = (*c).clone() * (*c).clone() * (*c).clone();
    if b.is_zero() {
        // e^{iφ} is free: C must vanish and |a| must match |A c³|
        Ok(big_c.is_zero() && a.norm_sqr() == ((*big_a).clone() * c3).norm_sqr())
    } else {
        // e^{iφ} is pinned by C = −2bc·e^{iφ}
        let two_bc = ExactComplex::from_int(2) * (*b).clone() * (*c).clone();
        let unit = -((*big_c).clone() / two_bc);
        if !unit.norm_sqr().is_one() {
            return Ok(false);
        }
        let unit4 = unit.clone() * unit.clone() * unit.clone() * unit;
        Ok((*a).clone() == (*big_a).clone() * c3 * unit4)
    }
}

/// Where a validated pair sits in the degree-5 catalog.
#[derive(Debug, Clone, PartialEq)]
pub enum PairClass {
    /// n = 3 with f constant and g linear.
    EnneperLike,
    /// Literal f = a, g = z² + b.
    Case11 {
        a: ExactComplex,
        b: ExactComplex,
    },
    /// Shape (p,q,r) = (2,0,0) but g not in normal form.
    Case11Shape,
    /// Literal f = a(z+b)², g = (cz²+d)/(z+b).
    Case12 {
        a: ExactComplex,
        b: ExactComplex,
        c: ExactComplex,
        d: ExactComplex,
    },
    Case12Shape,
    /// The b²c+d = 0 member: f = a(z+b)², g = c(z−b); also a case-3
    /// surface.
    Case12Reduced {
        a: ExactComplex,
        b: ExactComplex,
        c: ExactComplex,
    },
    /// Literal f = Az² + B, g = z + C.
    Case3 {
        a: ExactComplex,
        b: ExactComplex,
        c: ExactComplex,
    },
    Case3Shape,
    /// Mirror shapes reached by the symmetry transform.
    Case21Shape,
    Case22Shape,
    Case4Shape,
    Other,
}

/// Classifies a validated pair against the catalog normal forms.
pub fn classify_pair(pair: &WeierstrassPair) -> PairClass {
    let s = pair.structure();
    let p = pair.g_num();
    let r = pair.f_cofactor();
    match (s.p, s.q, s.r) {
        (1, 0, 0) if s.n == 3 => PairClass::EnneperLike,
        (2, 0, 0) => {
            if p.coeff(2).is_one() && p.coeff(1).is_zero() {
                PairClass::Case11 {
                    a: r.coeff(0),
                    b: p.coeff(0),
                }
            } else {
                PairClass::Case11Shape
            }
        }
        (2, 1, 0) => {
            // Q is monic z + b already; the literal form additionally
            // has no linear term in the numerator
            if p.coeff(1).is_zero() {
                PairClass::Case12 {
                    a: r.coeff(0),
                    b: pair.g_den().coeff(0),
                    c: p.coeff(2),
                    d: p.coeff(0),
                }
            } else {
                PairClass::Case12Shape
            }
        }
        (1, 0, 2) => {
            // reduced r12 first: R = a(z+b)² and P = c(z−b) for the same b
            let a = r.coeff(2);
            if let Some(inv) = (ExactComplex::from_int(2) * a.clone()).recip() {
                let b = r.coeff(1) * inv;
                let c = p.coeff(1);
                if r.coeff(0) == a.clone() * b.clone() * b.clone()
                    && p.coeff(0) == -(c.clone() * b.clone())
                {
                    return PairClass::Case12Reduced { a, b, c };
                }
            }
            if p.coeff(1).is_one() && r.coeff(1).is_zero() {
                PairClass::Case3 {
                    a: r.coeff(2),
                    b: r.coeff(0),
                    c: p.coeff(0),
                }
            } else {
                PairClass::Case3Shape
            }
        }
        (0, 2, 0) => PairClass::Case21Shape,
        (1, 2, 0) => PairClass::Case22Shape,
        (0, 1, 2) => PairClass::Case4Shape,
        _ => PairClass::Other,
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::substitute_complex as subst;
    use crate::geometry::{
        forms_at, minimality_scan, DerivativeMode, Region, Surface, TOL_MINIMALITY_H,
        TOL_MINIMALITY_K,
    };
    use alloc::vec;

    fn ec(re: i64, im: i64) -> ExactComplex {
        ExactComplex::from_ints(re, im)
    }

    pub(crate) fn exact_r11(a: ExactComplex, b: ExactComplex) -> Family {
        Family::R11 {
            a: Param::Exact(a),
            b: Param::Exact(b),
        }
    }

    pub(crate) fn exact_r12(
        a: ExactComplex,
        b: ExactComplex,
        c: ExactComplex,
        d: ExactComplex,
    ) -> Family {
        Family::R12 {
            a: Param::Exact(a),
            b: Param::Exact(b),
            c: Param::Exact(c),
            d: Param::Exact(d),
        }
    }

    pub(crate) fn exact_r3(a: ExactComplex, b: ExactComplex, c: ExactComplex) -> Family {
        Family::R3 {
            a: Param::Exact(a),
            b: Param::Exact(b),
            c: Param::Exact(c),
        }
    }

    pub(crate) fn exact_pair(fam: &Family) -> WeierstrassPair {
        match fam.pair().unwrap() {
            GeneratingPair::Exact(p) => p,
            GeneratingPair::Float { .. } => panic!("expected exact pair"),
        }
    }

    #[test]
    fn r11_structure() {
        let pair = exact_pair(&exact_r11(ec(1, 0), ec(0, 0)));
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (2, 0, 0, 5));
        assert_eq!(pair.f(), &ComplexPoly::one());
    }

    #[test]
    fn r12_structure() {
        // r12[1,0,1,1]: f = z², g = (z²+1)/z
        let pair = exact_pair(&exact_r12(ec(1, 0), ec(0, 0), ec(1, 0), ec(1, 0)));
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (2, 1, 0, 5));
        assert_eq!(
            pair.f(),
            &ComplexPoly::from_int_pairs(&[(0, 0), (0, 0), (1, 0)])
        );
        assert_eq!(pair.g_den(), &ComplexPoly::identity());
    }

    #[test]
    fn r12_reduces_when_predicate_holds() {
        // b=1, c=1, d=−1: g = (z²−1)/(z+1) = z−1
        let pair = exact_pair(&exact_r12(ec(1, 0), ec(1, 0), ec(1, 0), ec(-1, 0)));
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (1, 0, 2, 5));
        assert_eq!(
            pair.g_num(),
            &ComplexPoly::from_int_pairs(&[(-1, 0), (1, 0)])
        );
    }

    #[test]
    fn r3_structure() {
        let pair = exact_pair(&exact_r3(ec(1, 0), ec(1, 0), ec(0, 0)));
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (1, 0, 2, 5));
        assert_eq!(s.degree_sums(), [2, 4, 3]);
    }

    #[test]
    fn side_conditions_rejected() {
        assert!(matches!(
            exact_r11(ec(0, 0), ec(1, 0)).validate(),
            Err(FamilyError::SideCondition { family: "r11", .. })
        ));
        assert!(matches!(
            exact_r12(ec(1, 0), ec(0, 0), ec(0, 0), ec(1, 0)).validate(),
            Err(FamilyError::SideCondition { family: "r12", .. })
        ));
        assert!(matches!(
            exact_r3(ec(0, 0), ec(1, 0), ec(1, 0)).validate(),
            Err(FamilyError::SideCondition { family: "r3", .. })
        ));
        assert!(matches!(
            Family::XuWangOmega { n: 2, omega: 1.0 }.validate(),
            Err(FamilyError::Domain { .. })
        ));
        assert!(matches!(
            Family::XuWangOmega { n: 4, omega: -0.5 }.validate(),
            Err(FamilyError::Domain { .. })
        ));
    }

    #[test]
    fn basis_matches_power_expansion() {
        for n in 1..=8u32 {
            let (p, q) = xu_wang_basis(n).unwrap();
            let (re, im) = subst(&ComplexPoly::monomial(ExactComplex::one(), n as usize));
            assert_eq!(p, re, "P_{} mismatch", n);
            assert_eq!(q, im, "Q_{} mismatch", n);
        }
        assert!(xu_wang_basis(0).is_err());
    }

    #[test]
    fn basis_small_cases() {
        let (p1, q1) = xu_wang_basis(1).unwrap();
        assert_eq!(p1, BivariatePoly::monomial(1, 0, Rational::one()));
        assert_eq!(q1, BivariatePoly::monomial(0, 1, Rational::one()));
        let (p5, _) = xu_wang_basis(5).unwrap();
        let expected = crate::quintic::basis_polynomials::<Rational>()[0].clone();
        assert_eq!(p5, expected);
    }

    #[test]
    fn omega_zero_degenerates_to_plane() {
        let s = xu_wang_surface(3, 0.0).unwrap();
        for &(u, v) in &[(0.5, -0.3), (1.0, 1.0)] {
            assert_eq!(s.position(u, v)[2], 0.0);
        }
    }

    #[test]
    fn omega_family_is_minimal() {
        for &(n, omega) in &[(4u32, 1.0), (5, 1.0), (6, 0.5)] {
            let s = xu_wang_surface(n, omega).unwrap();
            let report = minimality_scan(&s, Region::square(1.0), 21).unwrap();
            assert!(
                report.passes(TOL_MINIMALITY_H, TOL_MINIMALITY_K),
                "n={n} omega={omega}: {report:?}"
            );
            // spot-check against the independent finite-difference oracle;
            // its truncation floor for |H| sits near 1e-7 relative
            for &(u, v) in &[(0.3, 0.7), (-0.9, 0.1)] {
                let fs = forms_at(&s, u, v, DerivativeMode::FiniteDifference).unwrap();
                assert!(fs.h_rel() < 1e-6, "fd H at ({u},{v}) = {}", fs.h);
            }
        }
    }

    #[test]
    fn xw5_accepts_and_rejects() {
        let xw = xw_degree5(1.0, 0.0, 0.0, 1.0).unwrap();
        // f = −6i z²
        assert_eq!(xw.f.degree(), Some(2));
        let lead = xw.f.coeff(2);
        assert!((lead - Complex64::new(0.0, -6.0)).norm() < 1e-12);
        match &xw.r12 {
            Family::R12 { b, d, .. } => {
                assert!(b.is_zero());
                assert!(d.is_zero());
            }
            _ => panic!("expected r12 descriptor"),
        }
        assert!(matches!(
            xw_degree5(1.0, 0.0, 1.0, 0.0),
            Err(FamilyError::NotMinimal { .. })
        ));
    }

    #[test]
    fn xw5_pair_reproduces_closed_form() {
        let (a1, a2, e1, e2) = (1.0, 0.0, 0.0, 1.0);
        let xw = xw_degree5(a1, a2, e1, e2).unwrap();
        let g = RatFunc64::from_parts(xw.g.clone(), Poly64::one()).unwrap();
        let psi = float_curve(&xw.f, &g).unwrap();
        let pair_surface = CurveSurface::new(psi);
        let closed = BivarSurface::from_float(xw_degree5_closed_form(a1, a2, e1, e2));
        for &(u, v) in &[(0.0, 0.0), (0.5, 0.5), (-0.8, 0.3), (1.0, -1.0)] {
            let a = pair_surface.position(u, v);
            let b = closed.position(u, v);
            for i in 0..3 {
                assert!(
                    (a[i] - b[i]).abs() < 1e-9 * (1.0 + b[i].abs()),
                    "coord {i} at ({u},{v}): {} vs {}",
                    a[i],
                    b[i]
                );
            }
        }
    }

    #[test]
    fn affine_identity() {
        let pair = exact_pair(&exact_r11(ec(1, 0), ec(2, 0)));
        let (f, g) = affine_normalize(
            pair.f(),
            pair.g(),
            &ExactComplex::one(),
            &ExactComplex::zero(),
        )
        .unwrap();
        assert_eq!(&f, pair.f());
        assert_eq!(&g, pair.g());
        assert!(matches!(
            affine_normalize(
                pair.f(),
                pair.g(),
                &ExactComplex::zero(),
                &ExactComplex::zero()
            ),
            Err(FamilyError::InvalidTransform { .. })
        ));
    }

    #[test]
    fn affine_brings_quadratic_to_normal_form() {
        // g = 4z² + 4z: α = 1/2, β = −1/2 give z² − 1
        let g = ComplexPoly::from_int_pairs(&[(0, 0), (4, 0), (4, 0)]);
        let (alpha, beta) = normalize_quadratic(&g).unwrap();
        assert_eq!(alpha, ExactComplex::from_ratio(1, 2));
        assert_eq!(beta, ExactComplex::from_ratio(-1, 2));
        let composed = g.compose(&ComplexPoly::new(vec![beta, alpha]));
        assert_eq!(
            composed,
            ComplexPoly::from_int_pairs(&[(-1, 0), (0, 0), (1, 0)])
        );
    }

    #[test]
    fn affine_preserves_surface_up_to_translation() {
        let pair = exact_pair(&exact_r3(ec(1, 0), ec(1, 0), ec(0, 0)));
        let alpha = ExactComplex::from_ratio(1, 2);
        let beta = ec(0, 1);
        let (f2, g2) = affine_normalize(pair.f(), pair.g(), &alpha, &beta).unwrap();
        let pair2 = validate_pair(f2, g2).unwrap();
        let s1 = BivarSurface::from_exact(&pair.curve().real_surface());
        let s2 = BivarSurface::from_exact(&pair2.curve().real_surface());
        let (al, be) = (alpha.to_c64(), beta.to_c64());
        // translation fixed at w = 0
        let base1 = s1.position(be.re, be.im);
        let base2 = s2.position(0.0, 0.0);
        let shift: [f64; 3] = core::array::from_fn(|i| base2[i] - base1[i]);
        for &(su, sv) in &[(0.4, 0.2), (-0.5, 0.7), (0.9, -0.9)] {
            let w = Complex64::new(su, sv);
            let z = al * w + be;
            let a = s2.position(su, sv);
            let b = s1.position(z.re, z.im);
            for i in 0..3 {
                assert!(
                    (a[i] - (b[i] + shift[i])).abs() < 1e-10,
                    "translation mismatch at ({su},{sv})"
                );
            }
        }
    }

    #[test]
    fn symmetry_maps_case11_to_case21_form() {
        // (a, z²+b) ↦ (a(z²+b)², 1/(z²+b))
        let pair = exact_pair(&exact_r11(ec(3, 0), ec(2, 0)));
        let sym = symmetry_transform(&pair).unwrap();
        let g_expected = ComplexPoly::from_int_pairs(&[(2, 0), (0, 0), (1, 0)]);
        let f_expected = (&g_expected * &g_expected).scale(&ec(3, 0));
        assert_eq!(sym.f(), &f_expected);
        assert_eq!(sym.g_num(), &ComplexPoly::constant(ec(1, 0)));
        assert_eq!(sym.g_den(), &g_expected);
        let s = sym.structure();
        assert_eq!((s.p, s.q, s.r), (0, 2, 0));
        assert_eq!(classify_pair(&sym), PairClass::Case21Shape);
    }

    #[test]
    fn symmetry_mirrors_the_surface_exactly() {
        for fam in [
            Family::Enneper,
            exact_r11(ec(1, 0), ec(0, 0)),
            exact_r12(ec(1, 0), ec(0, 0), ec(1, 0), ec(1, 0)),
            exact_r3(ec(2, 0), ec(1, 1), ec(0, 1)),
        ] {
            let pair = exact_pair(&fam);
            let sym = symmetry_transform(&pair).unwrap();
            let mirrored = pair.curve().real_surface().mirror_x1();
            let image = sym.curve().real_surface();
            assert_eq!(image, mirrored, "family {}", fam.kind_name());
        }
    }

    #[test]
    fn symmetry_is_an_involution() {
        let pair = exact_pair(&exact_r11(ec(1, 0), ec(1, 0)));
        let back = symmetry_transform(&symmetry_transform(&pair).unwrap()).unwrap();
        assert_eq!(back.f(), pair.f());
        assert_eq!(back.g(), pair.g());
    }

    #[test]
    fn moebius_identity_and_rotation() {
        let g = RationalFunction::identity();
        let same = moebius_exact(&g, &ExactComplex::zero()).unwrap();
        assert_eq!(same, g);
        // φ = π flips the sign
        let rotated =
            moebius_float(&g.to_float(), Complex64::zero(), core::f64::consts::PI).unwrap();
        let at = rotated.eval(&Complex64::new(0.7, 0.2)).unwrap();
        assert!((at - Complex64::new(-0.7, -0.2)).norm() < 1e-14);
    }

    #[test]
    fn transform_picks_exact_or_float_path() {
        let g = RationalFunction::identity();
        match moebius_transform(&g, &ExactComplex::zero(), 0.0).unwrap() {
            TransformedG::Exact(t) => assert_eq!(t, g),
            TransformedG::Float(_) => panic!("phi = 0 stays exact"),
        }
        match moebius_transform(&g, &ExactComplex::zero(), core::f64::consts::PI).unwrap() {
            TransformedG::Float(t) => {
                let at = t.eval(&Complex64::new(0.4, -0.1)).unwrap();
                assert!((at - Complex64::new(-0.4, 0.1)).norm() < 1e-14);
            }
            TransformedG::Exact(_) => panic!("phi != 0 goes float"),
        }
        match inversion_transform(&g, 0.0).unwrap() {
            TransformedG::Exact(t) => {
                assert_eq!(t.num(), &ComplexPoly::one());
                assert_eq!(t.den(), &ComplexPoly::identity());
            }
            TransformedG::Float(_) => panic!("phi = 0 stays exact"),
        }
    }

    #[test]
    fn inversion_of_identity() {
        let g = RationalFunction::identity();
        let inv = inversion_exact(&g).unwrap();
        assert_eq!(inv.num(), &ComplexPoly::one());
        assert_eq!(inv.den(), &ComplexPoly::identity());
        assert!(matches!(
            inversion_exact(
                &RationalFunction::new(ComplexPoly::zero(), ComplexPoly::one()).unwrap()
            ),
            Err(FamilyError::InvalidTransform { .. })
        ));
    }

    #[test]
    fn coincidence_predicate() {
        // (0,1,1): b²c+d = 1 ≠ 0
        assert!(coincidence_r12_r3(&ec(0, 0), &ec(1, 0), &ec(1, 0))
            .unwrap()
            .is_none());
        // (1,1,−1): reduces to g = z−1
        let red = coincidence_r12_r3(&ec(1, 0), &ec(1, 0), &ec(-1, 0))
            .unwrap()
            .unwrap();
        assert_eq!(
            red.g_reduced,
            ComplexPoly::from_int_pairs(&[(-1, 0), (1, 0)])
        );
        assert_eq!(red.r3_c, ec(-2, 0));
        // (0,c,0) holds for any nonzero c
        let red = coincidence_r12_r3(&ec(0, 0), &ec(2, 0), &ec(0, 0))
            .unwrap()
            .unwrap();
        assert_eq!(
            red.g_reduced,
            ComplexPoly::from_int_pairs(&[(0, 0), (2, 0)])
        );
        // c = 0 is outside the family
        assert!(coincidence_r12_r3(&ec(0, 0), &ec(0, 0), &ec(0, 0)).is_err());
    }

    #[test]
    fn reduced_pair_validates_as_case3_shape() {
        let red = coincidence_r12_r3(&ec(1, 0), &ec(1, 0), &ec(-1, 0))
            .unwrap()
            .unwrap();
        // f = a(z+b)² with a=1, b=1
        let zb = ComplexPoly::from_int_pairs(&[(1, 0), (1, 0)]);
        let f = &zb * &zb;
        let g = RationalFunction::new(red.g_reduced.clone(), ComplexPoly::one()).unwrap();
        let pair = validate_pair(f, g).unwrap();
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (1, 0, 2, 5));
    }

    #[test]
    fn r12_r3_coincidence_decision() {
        // r12[1,1,1,−1] against its normalized case-3 pair r3[1,0,−2]
        let yes = r12_coincides_with_r3(
            (&ec(1, 0), &ec(1, 0), &ec(1, 0), &ec(-1, 0)),
            (&ec(1, 0), &ec(0, 0), &ec(-2, 0)),
        )
        .unwrap();
        assert!(yes);
        // the paper's two look-alikes are genuinely different
        let no = r12_coincides_with_r3(
            (&ec(1, 0), &ec(0, 0), &ec(1, 0), &ec(1, 0)),
            (&ec(1, 0), &ec(1, 0), &ec(0, 0)),
        )
        .unwrap();
        assert!(!no);
        // b = 0 branch: r12[1,0,1,0] (f=z², g=z) vs r3[1,0,0]
        let yes = r12_coincides_with_r3(
            (&ec(1, 0), &ec(0, 0), &ec(1, 0), &ec(0, 0)),
            (&ec(1, 0), &ec(0, 0), &ec(0, 0)),
        )
        .unwrap();
        assert!(yes);
        // but not when the moduli differ
        let no = r12_coincides_with_r3(
            (&ec(3, 0), &ec(0, 0), &ec(1, 0), &ec(0, 0)),
            (&ec(1, 0), &ec(0, 0), &ec(0, 0)),
        )
        .unwrap();
        assert!(!no);
    }

    #[test]
    fn classification_of_catalog_members() {
        let p11 = exact_pair(&exact_r11(ec(2, 0), ec(-1, 0)));
        assert_eq!(
            classify_pair(&p11),
            PairClass::Case11 {
                a: ec(2, 0),
                b: ec(-1, 0)
            }
        );
        let p12 = exact_pair(&exact_r12(ec(1, 0), ec(0, 0), ec(1, 0), ec(1, 0)));
        assert_eq!(
            classify_pair(&p12),
            PairClass::Case12 {
                a: ec(1, 0),
                b: ec(0, 0),
                c: ec(1, 0),
                d: ec(1, 0)
            }
        );
        let p3 = exact_pair(&exact_r3(ec(1, 0), ec(1, 0), ec(0, 0)));
        assert_eq!(
            classify_pair(&p3),
            PairClass::Case3 {
                a: ec(1, 0),
                b: ec(1, 0),
                c: ec(0, 0)
            }
        );
        // f = z², g = z is the reduced r12 with b = d = 0
        let pair = validate_pair(
            ComplexPoly::monomial(ExactComplex::one(), 2),
            RationalFunction::identity(),
        )
        .unwrap();
        assert_eq!(
            classify_pair(&pair),
            PairClass::Case12Reduced {
                a: ec(1, 0),
                b: ec(0, 0),
                c: ec(1, 0)
            }
        );
        assert_eq!(
            classify_pair(&exact_pair(&Family::Enneper)),
            PairClass::EnneperLike
        );
    }
}
