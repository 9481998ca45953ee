//! Coefficient vectors of harmonic polynomial surfaces of degree ≤ 5
//! and the 18-equation minimality system they must satisfy.
//!
//! A harmonic surface of degree ≤ 5 expands uniquely over the eleven
//! basis polynomials
//!
//! ```text
//! u⁵−10u³v²+5uv⁴   v⁵−10u²v³+5u⁴v   u⁴−6u²v²+v⁴   uv(u²−v²)
//! u(u²−3v²)        v(v²−3u²)        u²−v²         uv
//! u                v                1
//! ```
//!
//! with 3-vector coefficients a…k. The surface is minimal exactly when
//! the vectors satisfy the quadratic system evaluated by
//! [`system_residual`]; every residual is exact over the rationals.
//! Surfaces of degree < 5 embed with the leading vectors zero.

use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Bivariate, Bivariate64, Coeff, FieldCoeff, Rational};
use crate::weierstrass::SurfacePolynomial;

#[derive(Debug, Clone, PartialEq)]
pub enum QuinticError {
    /// Total degree above 5.
    DegreeTooHigh { found: u32 },
    /// Not a combination of the harmonic basis (non-harmonic input).
    NotRepresentable,
    /// Float reconstruction missed by more than the tolerance.
    FloatReconstruction { max_error: f64 },
}

impl fmt::Display for QuinticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuinticError::DegreeTooHigh { found } => {
                write!(f, "surface degree {} exceeds 5", found)
            }
            QuinticError::NotRepresentable => {
                write!(f, "surface is not in the degree-5 harmonic span")
            }
            QuinticError::FloatReconstruction { max_error } => write!(
                f,
                "float reconstruction error {:e} above tolerance",
                max_error
            ),
        }
    }
}

impl core::error::Error for QuinticError {}

/// The eleven basis polynomials in the fixed order a…k.
pub fn basis_polynomials<S: Coeff>() -> [Bivariate<S>; 11] {
    let t = |entries: &[((u32, u32), i64)]| {
        Bivariate::from_terms(entries.iter().map(|&(ij, c)| (ij, S::from_int(c))))
    };
    [
        t(&[((5, 0), 1), ((3, 2), -10), ((1, 4), 5)]),
        t(&[((0, 5), 1), ((2, 3), -10), ((4, 1), 5)]),
        t(&[((4, 0), 1), ((2, 2), -6), ((0, 4), 1)]),
        t(&[((3, 1), 1), ((1, 3), -1)]),
        t(&[((3, 0), 1), ((1, 2), -3)]),
        t(&[((0, 3), 1), ((2, 1), -3)]),
        t(&[((2, 0), 1), ((0, 2), -1)]),
        t(&[((1, 1), 1)]),
        t(&[((1, 0), 1)]),
        t(&[((0, 1), 1)]),
        t(&[((0, 0), 1)]),
    ]
}

/// The eleven 3-vector coefficients of a degree-≤5 harmonic surface.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVectors<S> {
    pub a: [S; 3],
    pub b: [S; 3],
    pub c: [S; 3],
    pub d: [S; 3],
    pub e: [S; 3],
    pub f: [S; 3],
    pub g: [S; 3],
    pub h: [S; 3],
    pub i: [S; 3],
    pub j: [S; 3],
    pub k: [S; 3],
}

/// Exact coefficient vectors.
pub type CoeffVectors5 = CoeffVectors<Rational>;

impl<S: Coeff> CoeffVectors<S> {
    pub fn zero() -> Self {
        let z = || core::array::from_fn(|_| S::zero());
        CoeffVectors {
            a: z(),
            b: z(),
            c: z(),
            d: z(),
            e: z(),
            f: z(),
            g: z(),
            h: z(),
            i: z(),
            j: z(),
            k: z(),
        }
    }

    /// Vectors in basis order a…k.
    pub fn as_array(&self) -> [&[S; 3]; 11] {
        [
            &self.a, &self.b, &self.c, &self.d, &self.e, &self.f, &self.g, &self.h, &self.i,
            &self.j, &self.k,
        ]
    }

    /// Rebuilds the three coordinate polynomials from the vectors.
    pub fn reconstruct(&self) -> [Bivariate<S>; 3] {
        let basis = basis_polynomials::<S>();
        core::array::from_fn(|coord| {
            let mut acc = Bivariate::zero();
            for (vec, b) in self.as_array().iter().zip(basis.iter()) {
                acc = &acc + &b.scale(&vec[coord]);
            }
            acc
        })
    }
}

/// Reads the eleven vectors off the coordinate polynomials. Each basis
/// element owns one monomial no other element contains, so extraction
/// is a set of scaled coefficient reads.
fn extract_raw<S: FieldCoeff>(coords: &[Bivariate<S>; 3]) -> CoeffVectors<S> {
    let read = |i: u32, j: u32, scale: i64| -> [S; 3] {
        core::array::from_fn(|c| coords[c].coeff(i, j) / S::from_int(scale))
    };
    CoeffVectors {
        a: read(5, 0, 1),
        b: read(4, 1, 5),
        c: read(4, 0, 1),
        d: read(3, 1, 1),
        e: read(3, 0, 1),
        f: read(2, 1, -3),
        g: read(2, 0, 1),
        h: read(1, 1, 1),
        i: read(1, 0, 1),
        j: read(0, 1, 1),
        k: read(0, 0, 1),
    }
}

/// Exact extraction; errors when the surface has degree > 5 or is not
/// harmonic (reconstruction then fails to reproduce it).
pub fn extract_coeffs(surface: &SurfacePolynomial) -> Result<CoeffVectors5, QuinticError> {
    for c in surface.coords() {
        if let Some(d) = c.degree() {
            if d > 5 {
                return Err(QuinticError::DegreeTooHigh { found: d });
            }
        }
    }
    let cv = extract_raw(surface.coords());
    if &cv.reconstruct() != surface.coords() {
        return Err(QuinticError::NotRepresentable);
    }
    Ok(cv)
}

/// Float extraction for surfaces that only exist numerically. The
/// reconstruction residual is compared against `tol` relative to the
/// largest input coefficient.
pub fn extract_coeffs_f64(
    coords: &[Bivariate64; 3],
    tol: f64,
) -> Result<CoeffVectors<f64>, QuinticError> {
    for c in coords {
        if let Some(d) = c.degree() {
            if d > 5 {
                return Err(QuinticError::DegreeTooHigh { found: d });
            }
        }
    }
    let cv = extract_raw(coords);
    let rebuilt = cv.reconstruct();
    let mut scale = 1.0f64;
    for c in coords {
        for (_, v) in c.terms() {
            scale = scale.max(libm::fabs(*v));
        }
    }
    let mut max_err = 0.0f64;
    for (orig, re) in coords.iter().zip(rebuilt.iter()) {
        let diff = orig - re;
        for (_, v) in diff.terms() {
            max_err = max_err.max(libm::fabs(*v));
        }
    }
    if max_err > tol * scale {
        return Err(QuinticError::FloatReconstruction { max_error: max_err });
    }
    Ok(cv)
}

/// Human-readable left-hand sides of the 18 equations, residual form.
pub const EQUATION_LABELS: [&str; 18] = [
    "a·a − b·b",
    "a·b",
    "4a·c − b·d",
    "a·d + 4b·c",
    "16c·c − d·d + 30a·e + 30b·f",
    "4d·c + 15b·e − 15a·f",
    "9e·e − 9f·f + 16c·g − 2d·h + 10a·i − 10b·j",
    "9e·f − 4c·h − 2d·g − 5b·i − 5a·j",
    "4g·g − h·h + 6e·i + 6f·j",
    "2g·h − 3f·i + 3e·j",
    "5a·h + 10b·g − 12c·f + 3d·e",
    "5b·h − 10a·g − 3d·f − 12c·e",
    "6e·g + 3f·h + 4c·i − d·j",
    "6f·g − 3e·h − d·i − 4c·j",
    "h·i + 2g·j",
    "2g·i − h·j",
    "i·i − j·j",
    "i·j",
];

/// The 18 residuals, one per equation, all terms moved to one side.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemResidual<S> {
    pub values: [S; 18],
}

impl<S: Coeff> SystemResidual<S> {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Indices (1-based) of equations with nonzero residual.
    pub fn violated(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl SystemResidual<f64> {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(libm::fabs(*v)))
    }
}

/// Evaluates the minimality system on a set of coefficient vectors.
pub fn system_residual<S: Coeff>(cv: &CoeffVectors<S>) -> SystemResidual<S> {
    let dot = |x: &[S; 3], y: &[S; 3]| -> S {
        x[0].clone() * y[0].clone() + x[1].clone() * y[1].clone() + x[2].clone() * y[2].clone()
    };
    let n = |k: i64| S::from_int(k);
    let CoeffVectors {
        a,
        b,
        c,
        d,
        e,
        f,
        g,
        h,
        i,
        j,
        k: _,
    } = cv;
    let values = [
        dot(a, a) - dot(b, b),
        dot(a, b),
        n(4) * dot(a, c) - dot(b, d),
        dot(a, d) + n(4) * dot(b, c),
        n(16) * dot(c, c) - dot(d, d) + n(30) * dot(a, e) + n(30) * dot(b, f),
        n(4) * dot(d, c) + n(15) * dot(b, e) - n(15) * dot(a, f),
        n(9) * dot(e, e) - n(9) * dot(f, f) + n(16) * dot(c, g) - n(2) * dot(d, h)
            + n(10) * dot(a, i)
            - n(10) * dot(b, j),
        n(9) * dot(e, f)
            - n(4) * dot(c, h)
            - n(2) * dot(d, g)
            - n(5) * dot(b, i)
            - n(5) * dot(a, j),
        n(4) * dot(g, g) - dot(h, h) + n(6) * dot(e, i) + n(6) * dot(f, j),
        n(2) * dot(g, h) - n(3) * dot(f, i) + n(3) * dot(e, j),
        n(5) * dot(a, h) + n(10) * dot(b, g) - n(12) * dot(c, f) + n(3) * dot(d, e),
        n(5) * dot(b, h) - n(10) * dot(a, g) - n(3) * dot(d, f) - n(12) * dot(c, e),
        n(6) * dot(e, g) + n(3) * dot(f, h) + n(4) * dot(c, i) - dot(d, j),
        n(6) * dot(f, g) - n(3) * dot(e, h) - dot(d, i) - n(4) * dot(c, j),
        dot(h, i) + n(2) * dot(g, j),
        n(2) * dot(g, i) - dot(h, j),
        dot(i, i) - dot(j, j),
        dot(i, j),
    ];
    SystemResidual { values }
}
