//! From a generating pair (f, g) to a polynomial minimal surface.
//!
//! A pair consists of a polynomial `f` and a nonconstant rational
//! function `g = P/Q` (reduced, Q monic) with `f = Q²·R` for some
//! polynomial R. Clearing Q from the classical integrand
//! `(½f(1−g²), (i/2)f(1+g²), f·g)` then leaves three polynomials
//!
//! ```text
//! φ₁ = ½R(Q² − P²),   φ₂ = (i/2)R(Q² + P²),   φ₃ = P·Q·R
//! ```
//!
//! which satisfy φ₁² + φ₂² + φ₃² = 0 identically. Integrating from 0
//! gives the minimal curve Ψ, and the real part of Ψ(u+iv) is the
//! surface: harmonic and isothermal by construction, both facts kept
//! checkable as exact polynomial identities.

use core::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use crate::algebra::{
    substitute_complex, AlgebraError, BivariatePoly, ComplexPoly, ExactComplex, Poly64,
    RationalFunction,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureError {
    /// f must be a nonzero polynomial.
    ZeroF,
    /// g constant generates a plane, not a proper surface.
    DegenerateSurface,
    /// f is not divisible by the square of g's denominator.
    NotDivisibleByDenomSquared,
    Algebra(AlgebraError),
}

impl fmt::Display for StructureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureError::ZeroF => write!(f, "generating polynomial f is zero"),
            StructureError::DegenerateSurface => {
                write!(f, "g is constant: the pair generates a plane")
            }
            StructureError::NotDivisibleByDenomSquared => {
                write!(f, "f is not divisible by the square of g's denominator")
            }
            StructureError::Algebra(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for StructureError {}

impl From<AlgebraError> for StructureError {
    fn from(e: AlgebraError) -> Self {
        StructureError::Algebra(e)
    }
}

/// Degrees (p, q, r) of the structure polynomials and the surface
/// degree n = 1 + max(2q+r, 2p+r, p+q+r).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairStructure {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub n: usize,
}

impl PairStructure {
    /// The three degree sums, each ≤ n−1 with equality at least once.
    pub fn degree_sums(&self) -> [usize; 3] {
        [
            2 * self.q + self.r,
            2 * self.p + self.r,
            self.p + self.q + self.r,
        ]
    }
}

/// A validated generating pair with its structure data.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassPair {
    f: ComplexPoly,
    g: RationalFunction,
    g_num: ComplexPoly,
    g_den: ComplexPoly,
    f_cofactor: ComplexPoly,
    structure: PairStructure,
}

/// Checks the structure requirements and computes (P, Q, R, p, q, r, n).
pub fn validate_pair(
    f: ComplexPoly,
    g: RationalFunction,
) -> Result<WeierstrassPair, StructureError> {
    if f.is_zero() {
        return Err(StructureError::ZeroF);
    }
    if g.is_constant() {
        return Err(StructureError::DegenerateSurface);
    }
    let g_num = g.num().clone();
    let g_den = g.den().clone();
    let den_sq = &g_den * &g_den;
    let f_cofactor = f
        .div_exact(&den_sq)
        .map_err(|_| StructureError::NotDivisibleByDenomSquared)?;
    let p = g_num.degree().expect("g nonconstant implies P nonzero");
    let q = g_den.degree().expect("denominator nonzero");
    let r = f_cofactor.degree().expect("f nonzero implies R nonzero");
    let n = 1 + (2 * q + r).max(2 * p + r).max(p + q + r);
    Ok(WeierstrassPair {
        f,
        g,
        g_num,
        g_den,
        f_cofactor,
        structure: PairStructure { p, q, r, n },
    })
}

impl WeierstrassPair {
    pub fn f(&self) -> &ComplexPoly {
        &self.f
    }

    pub fn g(&self) -> &RationalFunction {
        &self.g
    }

    /// Numerator P of g.
    pub fn g_num(&self) -> &ComplexPoly {
        &self.g_num
    }

    /// Denominator Q of g (monic).
    pub fn g_den(&self) -> &ComplexPoly {
        &self.g_den
    }

    /// Cofactor R with f = Q²·R.
    pub fn f_cofactor(&self) -> &ComplexPoly {
        &self.f_cofactor
    }

    pub fn structure(&self) -> PairStructure {
        self.structure
    }

    /// The pole-free Weierstrass integrand (φ₁, φ₂, φ₃).
    pub fn integrand(&self) -> [ComplexPoly; 3] {
        let half = ExactComplex::from_ratio(1, 2);
        let i_half = ExactComplex::new(
            crate::algebra::Rational::zero(),
            crate::algebra::Rational::new(1.into(), 2.into()),
        );
        let q_sq_r = &(&self.g_den * &self.g_den) * &self.f_cofactor;
        let p_sq_r = &(&self.g_num * &self.g_num) * &self.f_cofactor;
        let phi1 = (&q_sq_r - &p_sq_r).scale(&half);
        let phi2 = (&q_sq_r + &p_sq_r).scale(&i_half);
        let phi3 = &(&self.g_num * &self.g_den) * &self.f_cofactor;
        [phi1, phi2, phi3]
    }

    /// Integrates the integrand from 0 with Ψ(0) = 0.
    pub fn curve(&self) -> MinimalCurve {
        let [phi1, phi2, phi3] = self.integrand();
        MinimalCurve {
            psi: [phi1.integral(), phi2.integral(), phi3.integral()],
        }
    }
}

/// Free function form of [`WeierstrassPair::integrand`].
pub fn integrand(pair: &WeierstrassPair) -> [ComplexPoly; 3] {
    pair.integrand()
}

/// Sum of squares of the integrand components. The zero polynomial
/// certifies a minimal curve.
pub fn check_isotropy(phi: &[ComplexPoly; 3]) -> ComplexPoly {
    let mut acc = ComplexPoly::zero();
    for p in phi {
        acc = &acc + &(p * p);
    }
    acc
}

/// Free function form of [`WeierstrassPair::curve`].
pub fn build_curve(pair: &WeierstrassPair) -> MinimalCurve {
    pair.curve()
}

/// A polynomial minimal curve Ψ = (Ψ₁, Ψ₂, Ψ₃) with Ψ(0) = 0 and
/// isotropic derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalCurve {
    psi: [ComplexPoly; 3],
}

impl MinimalCurve {
    pub fn new(psi: [ComplexPoly; 3]) -> Self {
        MinimalCurve { psi }
    }

    pub fn psi(&self) -> &[ComplexPoly; 3] {
        &self.psi
    }

    /// x(u,v) = Re Ψ(u+iv).
    pub fn real_surface(&self) -> SurfacePolynomial {
        self.surface_part(false)
    }

    /// The conjugate surface y(u,v) = Im Ψ(u+iv).
    pub fn imag_surface(&self) -> SurfacePolynomial {
        self.surface_part(true)
    }

    fn surface_part(&self, imaginary: bool) -> SurfacePolynomial {
        let coords = core::array::from_fn(|i| {
            let (re, im) = substitute_complex(&self.psi[i]);
            if imaginary {
                im
            } else {
                re
            }
        });
        SurfacePolynomial::new(coords)
    }

    /// Float coefficients of Ψ for the numeric evaluators.
    pub fn psi_float(&self) -> [Poly64; 3] {
        core::array::from_fn(|i| self.psi[i].to_float())
    }
}

/// Free function form of [`MinimalCurve::real_surface`].
pub fn real_part_surface(curve: &MinimalCurve) -> SurfacePolynomial {
    curve.real_surface()
}

/// Triple of exact bivariate coordinate polynomials x(u,v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePolynomial {
    coords: [BivariatePoly; 3],
    degree: usize,
}

impl SurfacePolynomial {
    pub fn new(coords: [BivariatePoly; 3]) -> Self {
        let degree = coords.iter().filter_map(|c| c.degree()).max().unwrap_or(0) as usize;
        SurfacePolynomial { coords, degree }
    }

    pub fn coords(&self) -> &[BivariatePoly; 3] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BivariatePoly {
        &self.coords[i]
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Laplacians of the three coordinates; all zero iff harmonic.
    pub fn laplacians(&self) -> [BivariatePoly; 3] {
        core::array::from_fn(|i| self.coords[i].laplacian())
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacians().iter().all(|l| l.is_zero())
    }

    /// First-form coefficients (E, F, G) as exact bivariate polynomials
    /// built from the symbolic first derivatives.
    pub fn first_form_polys(&self) -> (BivariatePoly, BivariatePoly, BivariatePoly) {
        let mut e = BivariatePoly::zero();
        let mut f = BivariatePoly::zero();
        let mut g = BivariatePoly::zero();
        for c in &self.coords {
            let cu = c.partial_u();
            let cv = c.partial_v();
            e = &e + &(&cu * &cu);
            f = &f + &(&cu * &cv);
            g = &g + &(&cv * &cv);
        }
        (e, f, g)
    }

    /// E−G and F as exact polynomials; both zero iff the
    /// parametrization is isothermal.
    pub fn isothermal_defect(&self) -> (BivariatePoly, BivariatePoly) {
        let (e, f, g) = self.first_form_polys();
        (&e - &g, f)
    }

    pub fn is_isothermal(&self) -> bool {
        let (eg, f) = self.isothermal_defect();
        eg.is_zero() && f.is_zero()
    }

    /// Float position, converting coefficients on the fly. Grid-scale
    /// work should go through the cached evaluators in `geometry`.
    pub fn position(&self, u: f64, v: f64) -> [f64; 3] {
        core::array::from_fn(|i| self.coords[i].to_float().eval_f64(u, v))
    }

    /// Mirror image about the Oyz plane: (−x₁, x₂, x₃).
    pub fn mirror_x1(&self) -> SurfacePolynomial {
        SurfacePolynomial::new([
            -&self.coords[0],
            self.coords[1].clone(),
            self.coords[2].clone(),
        ])
    }
}

/// Numeric evaluator for a member of the associated family:
/// x_t(u,v) = cos(t)·Re Ψ + sin(t)·Im Ψ = Re(e^{−it} Ψ).
#[derive(Debug, Clone)]
pub struct AssociatedFamily {
    /// e^{−it}·Ψ with float coefficients.
    phi: [Poly64; 3],
}

impl AssociatedFamily {
    pub fn new(curve: &MinimalCurve, t: f64) -> Self {
        AssociatedFamily::from_float_curve(curve.psi_float(), t)
    }

    pub fn from_float_curve(psi: [Poly64; 3], t: f64) -> Self {
        let rot = Complex64::new(libm::cos(t), -libm::sin(t));
        let phi = core::array::from_fn(|i| psi[i].scale(&rot));
        AssociatedFamily { phi }
    }

    pub fn components(&self) -> &[Poly64; 3] {
        &self.phi
    }

    pub fn position(&self, u: f64, v: f64) -> [f64; 3] {
        let w = Complex64::new(u, v);
        core::array::from_fn(|i| self.phi[i].eval(&w).re)
    }
}

/// Free function form: evaluator for x_t.
pub fn associated_surface(curve: &MinimalCurve, t: f64) -> AssociatedFamily {
    AssociatedFamily::new(curve, t)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::{poly_gcd, Bivariate, Rational};
    use alloc::vec;
    use alloc::vec::Vec;
    use num_bigint::BigInt;
    use num_traits::One;

    fn ec(re: i64, im: i64) -> ExactComplex {
        ExactComplex::from_ints(re, im)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    pub(crate) fn enneper_pair() -> WeierstrassPair {
        validate_pair(ComplexPoly::one(), RationalFunction::identity()).unwrap()
    }

    #[test]
    fn validate_enneper() {
        let pair = enneper_pair();
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (1, 0, 0, 3));
    }

    #[test]
    fn validate_quadratic_g() {
        // f = 1, g = z²: p=2, q=0, r=0, n=5
        let g = RationalFunction::new(
            ComplexPoly::monomial(ExactComplex::one(), 2),
            ComplexPoly::one(),
        )
        .unwrap();
        let pair = validate_pair(ComplexPoly::one(), g).unwrap();
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (2, 0, 0, 5));
    }

    #[test]
    fn validate_divisible_f() {
        // f = (z+1)², g = 1/(z+1): Q = z+1, R = 1, p=0, q=1, r=0, n=3
        let zp1 = ComplexPoly::from_int_pairs(&[(1, 0), (1, 0)]);
        let f = &zp1 * &zp1;
        let g = RationalFunction::new(ComplexPoly::one(), zp1.clone()).unwrap();
        let pair = validate_pair(f, g).unwrap();
        let s = pair.structure();
        assert_eq!((s.p, s.q, s.r, s.n), (0, 1, 0, 3));
        assert_eq!(pair.f_cofactor(), &ComplexPoly::one());
        assert_eq!(pair.g_den(), &zp1);
    }

    #[test]
    fn validate_rejects_bad_inputs() {
        // f = z not divisible by z²
        let g = RationalFunction::new(ComplexPoly::one(), ComplexPoly::identity()).unwrap();
        assert!(matches!(
            validate_pair(ComplexPoly::identity(), g),
            Err(StructureError::NotDivisibleByDenomSquared)
        ));
        // constant g
        let c = RationalFunction::new(ComplexPoly::constant(ec(2, 0)), ComplexPoly::one()).unwrap();
        assert!(matches!(
            validate_pair(ComplexPoly::one(), c),
            Err(StructureError::DegenerateSurface)
        ));
        // zero f
        assert!(matches!(
            validate_pair(ComplexPoly::zero(), RationalFunction::identity()),
            Err(StructureError::ZeroF)
        ));
    }

    #[test]
    fn integrand_enneper() {
        // (½(1−z²), (i/2)(1+z²), z)
        let [p1, p2, p3] = enneper_pair().integrand();
        let half = ExactComplex::from_ratio(1, 2);
        assert_eq!(
            p1,
            ComplexPoly::new(vec![half.clone(), ExactComplex::zero(), -half.clone()])
        );
        let ih = ExactComplex::new(q(0, 1), q(1, 2));
        assert_eq!(
            p2,
            ComplexPoly::new(vec![ih.clone(), ExactComplex::zero(), ih])
        );
        assert_eq!(p3, ComplexPoly::identity());
        assert!(check_isotropy(&[p1, p2, p3]).is_zero());
    }

    #[test]
    fn integrand_quartic() {
        // f = 1, g = z² → (½(1−z⁴), (i/2)(1+z⁴), z²)
        let g = RationalFunction::new(
            ComplexPoly::monomial(ExactComplex::one(), 2),
            ComplexPoly::one(),
        )
        .unwrap();
        let pair = validate_pair(ComplexPoly::one(), g).unwrap();
        let [p1, _, p3] = pair.integrand();
        let half = ExactComplex::from_ratio(1, 2);
        let mut expect = ComplexPoly::constant(half.clone());
        expect = &expect - &ComplexPoly::monomial(half, 4);
        assert_eq!(p1, expect);
        assert_eq!(p3, ComplexPoly::monomial(ExactComplex::one(), 2));
    }

    #[test]
    fn integrand_degree_bound() {
        // degrees ≤ n−1, at least one equal
        let pair = enneper_pair();
        let n = pair.structure().n;
        let degs: Vec<_> = pair.integrand().iter().map(|p| p.degree()).collect();
        assert!(degs.iter().flatten().all(|&d| d < n));
        assert!(degs.iter().flatten().any(|&d| d == n - 1));
    }

    #[test]
    fn isotropy_negative_control() {
        let phi = [ComplexPoly::one(), ComplexPoly::zero(), ComplexPoly::zero()];
        assert_eq!(check_isotropy(&phi), ComplexPoly::one());
    }

    #[test]
    fn curve_enneper() {
        // Ψ = (z/2 − z³/6, i(z/2 + z³/6), z²/2)
        let curve = enneper_pair().curve();
        let psi = curve.psi();
        let mut e1 = ComplexPoly::monomial(ExactComplex::from_ratio(1, 2), 1);
        e1 = &e1 - &ComplexPoly::monomial(ExactComplex::from_ratio(1, 6), 3);
        assert_eq!(psi[0], e1);
        let mut e2 = ComplexPoly::monomial(ExactComplex::new(q(0, 1), q(1, 2)), 1);
        e2 = &e2 + &ComplexPoly::monomial(ExactComplex::new(q(0, 1), q(1, 6)), 3);
        assert_eq!(psi[1], e2);
        assert_eq!(
            psi[2],
            ComplexPoly::monomial(ExactComplex::from_ratio(1, 2), 2)
        );
        // Ψ(0) = 0
        for c in psi {
            assert!(c.eval(&ExactComplex::zero()).is_zero());
        }
    }

    #[test]
    fn curve_degrees() {
        let pair = enneper_pair();
        let phi = pair.integrand();
        let psi = pair.curve();
        for (p, component) in phi.iter().zip(psi.psi()) {
            assert_eq!(component.degree(), p.degree().map(|d| d + 1));
        }
    }

    #[test]
    fn curve_case11_third_component() {
        // f=1, g=z²: φ₃ = z² so Ψ₃ = z³/3
        let g = RationalFunction::new(
            ComplexPoly::monomial(ExactComplex::one(), 2),
            ComplexPoly::one(),
        )
        .unwrap();
        let pair = validate_pair(ComplexPoly::one(), g).unwrap();
        assert_eq!(
            pair.curve().psi()[2],
            ComplexPoly::monomial(ExactComplex::from_ratio(1, 3), 3)
        );
    }

    /// The classical closed form: x = (u/2(1+v²−u²/3), −v/2(1+u²−v²/3), (u²−v²)/2).
    pub(crate) fn enneper_expected() -> [BivariatePoly; 3] {
        let x1 = Bivariate::from_terms([((1, 0), q(1, 2)), ((1, 2), q(1, 2)), ((3, 0), q(-1, 6))]);
        let x2 = Bivariate::from_terms([((0, 1), q(-1, 2)), ((2, 1), q(-1, 2)), ((0, 3), q(1, 6))]);
        let x3 = Bivariate::from_terms([((2, 0), q(1, 2)), ((0, 2), q(-1, 2))]);
        [x1, x2, x3]
    }

    #[test]
    fn real_surface_is_enneper() {
        let surf = enneper_pair().curve().real_surface();
        assert_eq!(surf.coords(), &enneper_expected());
        assert_eq!(surf.degree(), 3);
        assert!(surf.is_harmonic());
        assert!(surf.is_isothermal());
    }

    #[test]
    fn conjugate_surface_also_harmonic_isothermal() {
        let surf = enneper_pair().curve().imag_surface();
        assert!(surf.is_harmonic());
        assert!(surf.is_isothermal());
        assert_eq!(surf.degree(), 3);
    }

    #[test]
    fn constant_curve_gives_constant_surface() {
        let c = MinimalCurve::new([
            ComplexPoly::constant(ec(1, 2)),
            ComplexPoly::constant(ec(0, -1)),
            ComplexPoly::constant(ec(3, 0)),
        ]);
        let surf = c.real_surface();
        assert_eq!(surf.degree(), 0);
        for i in 0..3 {
            assert!(surf.coord(i).partial_u().is_zero());
            assert!(surf.coord(i).partial_v().is_zero());
        }
    }

    #[test]
    fn associated_family_t0_matches_real_part() {
        let curve = enneper_pair().curve();
        let surf = curve.real_surface();
        let assoc = AssociatedFamily::new(&curve, 0.0);
        for &(u, v) in &[(0.3, 0.4), (-1.1, 0.7), (0.0, 0.0)] {
            let a = assoc.position(u, v);
            let b = surf.position(u, v);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-14, "mismatch at ({u},{v})");
            }
        }
    }

    #[test]
    fn associated_family_halfpi_is_conjugate() {
        let curve = enneper_pair().curve();
        let conj = curve.imag_surface();
        let assoc = AssociatedFamily::new(&curve, core::f64::consts::FRAC_PI_2);
        let a = assoc.position(0.3, 0.4);
        let b = conj.position(0.3, 0.4);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn structure_parts_stay_coprime() {
        let pair = enneper_pair();
        let g = poly_gcd(pair.g_num(), pair.g_den()).unwrap();
        assert!(g.is_constant());
    }
}
