//! Polynomial minimal surfaces from Weierstrass generating pairs.
//!
//! A minimal surface in isothermal parameters is the real part of a
//! complex curve with isotropic tangent. When the surface is polynomial,
//! the generating data is a polynomial `f` and a rational function
//! `g = P/Q` with `f = Q²R`. Everything about the surface (the
//! integrand, the curve, the coordinate polynomials, the quintic
//! coefficient system) can then be computed in exact Gaussian-rational
//! arithmetic. This crate does that, plus the floating-point side:
//! fundamental forms, curvature scans, canonical principal parameters
//! and the invariants that come with them.
//!
//! The crate is `no_std` (with `alloc`); IO and the command-line front
//! end live in the companion `wforge-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod families;
pub mod geometry;
pub mod mesh;
pub mod quintic;
pub mod weierstrass;

pub use num_complex::Complex64;

pub use algebra::{
    poly_gcd, substitute_complex, Bivariate, BivariatePoly, ComplexPoly, ExactComplex, Poly,
    Poly64, RatFunc, RatFunc64, Rational, RationalFunction,
};
pub use weierstrass::{validate_pair, MinimalCurve, SurfacePolynomial, WeierstrassPair};
