//! Bivariate real polynomials in the surface parameters (u, v), and
//! the expansion of a complex polynomial p(u+iv) into real and
//! imaginary bivariate parts.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::poly::Poly;
use super::scalar::{Coeff, ComplexCoeff, Rational};

/// Sparse bivariate polynomial: (degree in u, degree in v) → coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Bivariate<S> {
    terms: BTreeMap<(u32, u32), S>,
}

/// Exact-rational bivariate polynomial.
pub type BivariatePoly = Bivariate<Rational>;

/// Float bivariate polynomial, used by the numeric evaluators.
pub type Bivariate64 = Bivariate<f64>;

impl<S: Coeff> Bivariate<S> {
    pub fn zero() -> Self {
        Bivariate {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        Bivariate::monomial(0, 0, c)
    }

    /// c·u^i·v^j.
    pub fn monomial(i: u32, j: u32, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Bivariate { terms }
    }

    pub fn from_terms(raw: impl IntoIterator<Item = ((u32, u32), S)>) -> Self {
        let mut out = Bivariate::zero();
        for ((i, j), c) in raw {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Bivariate::zero();
        for (&(i, j), a) in &self.terms {
            out.add_term(i, j, a.clone() * c.clone());
        }
        out
    }

    pub fn partial_u(&self) -> Self {
        let mut out = Bivariate::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.clone() * S::from_int(i as i64));
            }
        }
        out
    }

    pub fn partial_v(&self) -> Self {
        let mut out = Bivariate::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.clone() * S::from_int(j as i64));
            }
        }
        out
    }

    /// ∂²/∂u² + ∂²/∂v².
    pub fn laplacian(&self) -> Self {
        &self.partial_u().partial_u() + &self.partial_v().partial_v()
    }

    /// Exact evaluation (or plain float evaluation for `f64` terms).
    pub fn eval(&self, u: &S, v: &S) -> S {
        let mut acc = S::zero();
        for (&(i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * u.clone();
            }
            for _ in 0..j {
                t = t * v.clone();
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&S) -> T) -> Bivariate<T> {
        let mut out = Bivariate::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c));
        }
        out
    }
}

impl BivariatePoly {
    pub fn to_float(&self) -> Bivariate64 {
        use num_traits::ToPrimitive;
        self.map_coeffs(|c| c.to_f64().unwrap_or(f64::NAN))
    }
}

impl Bivariate64 {
    /// Evaluation with precomputed power tables; the hot path for grid
    /// scans.
    pub fn eval_f64(&self, u: f64, v: f64) -> f64 {
        let du = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0) as usize;
        let dv = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut pu = Vec::with_capacity(du + 1);
        let mut pv = Vec::with_capacity(dv + 1);
        pu.push(1.0);
        for k in 0..du {
            pu.push(pu[k] * u);
        }
        pv.push(1.0);
        for k in 0..dv {
            pv.push(pv[k] * v);
        }
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c * pu[i as usize] * pv[j as usize];
        }
        acc
    }
}

impl<S: Coeff> Add for &Bivariate<S> {
    type Output = Bivariate<S>;
    fn add(self, rhs: &Bivariate<S>) -> Bivariate<S> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl<S: Coeff> Sub for &Bivariate<S> {
    type Output = Bivariate<S>;
    fn sub(self, rhs: &Bivariate<S>) -> Bivariate<S> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl<S: Coeff> Mul for &Bivariate<S> {
    type Output = Bivariate<S>;
    fn mul(self, rhs: &Bivariate<S>) -> Bivariate<S> {
        let mut out = Bivariate::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<S: Coeff> Neg for &Bivariate<S> {
    type Output = Bivariate<S>;
    fn neg(self) -> Bivariate<S> {
        let mut out = Bivariate::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl<S: fmt::Debug> fmt::Debug for Bivariate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?})", c)?;
            if i > 0 {
                write!(f, "*u^{}", i)?;
            }
            if j > 0 {
                write!(f, "*v^{}", j)?;
            }
        }
        Ok(())
    }
}

/// Expands p(u+iv) into exact real and imaginary bivariate parts:
/// the returned pair (R, I) satisfies R(u,v) + i·I(u,v) = p(u+iv).
pub fn substitute_complex<C: ComplexCoeff>(
    p: &Poly<C>,
) -> (Bivariate<C::Real>, Bivariate<C::Real>) {
    let u = Bivariate::<C::Real>::monomial(1, 0, C::Real::one());
    let v = Bivariate::<C::Real>::monomial(0, 1, C::Real::one());
    // (re_k, im_k) = (u+iv)^k, accumulated by one multiplication per step
    let mut re_k = Bivariate::<C::Real>::constant(C::Real::one());
    let mut im_k = Bivariate::<C::Real>::zero();
    let mut out_re = Bivariate::<C::Real>::zero();
    let mut out_im = Bivariate::<C::Real>::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if k > 0 {
            let nre = &(&u * &re_k) - &(&v * &im_k);
            let nim = &(&u * &im_k) + &(&v * &re_k);
            re_k = nre;
            im_k = nim;
        }
        if !c.is_zero() {
            let (cr, ci) = (c.real(), c.imag());
            out_re = &out_re + &(&re_k.scale(&cr) - &im_k.scale(&ci));
            out_im = &out_im + &(&im_k.scale(&cr) + &re_k.scale(&ci));
        }
    }
    (out_re, out_im)
}
