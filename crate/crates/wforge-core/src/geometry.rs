//! Floating-point differential geometry: fundamental forms, curvature,
//! minimality scans, the transformation to canonical principal
//! parameters, and the canonical energy density.
//!
//! Two independent derivative paths are kept deliberately separate:
//! the analytic mode evaluates symbolically differentiated polynomials,
//! the finite-difference mode works from surface positions alone and
//! serves as the oracle for the analytic path.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::algebra::{Bivariate64, Poly64, RatFunc64};
use crate::weierstrass::{AssociatedFamily, SurfacePolynomial, WeierstrassPair};

/// Default tolerances. Scale-relative where the quantity carries
/// dimensions; see the field docs of [`ScanReport`] for the
/// normalizations used.
pub const TOL_MINIMALITY_H: f64 = 1e-8;
pub const TOL_MINIMALITY_K: f64 = 1e-10;
pub const TOL_FORMS_AGREE: f64 = 1e-6;
pub const TOL_CHART_FIRST: f64 = 1e-6;
pub const TOL_CHART_SECOND: f64 = 1e-5;
pub const TOL_GANCHEV_PDE: f64 = 1e-4;
pub const TOL_ASSOC_INVARIANCE: f64 = 1e-9;
pub const TOL_ENERGY_INVARIANCE: f64 = 1e-12;
pub const TOL_FLOAT_RESIDUAL: f64 = 1e-8;

/// Metric degeneracy threshold: EG−F² relative to (1+E+G)².
const SINGULAR_DET_REL: f64 = 1e-12;

/// Guard for the canonical-parameter ODE: integration aborts when
/// |f·g′| drops below this, a value-level proxy for passing near a
/// branch point (zeros of f·g′ are not located explicitly).
const BRANCH_VALUE_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Metric degenerate at this parameter point (a zero of f).
    SingularPoint { u: f64, v: f64 },
    /// g′ vanishes here; the canonical energy is undefined.
    CriticalPoint { z: Complex64 },
    /// The ODE path came too close to a zero of f·g′.
    BranchPointProximity { z: Complex64 },
    /// Every grid point of a scan region was singular.
    EmptyRegion,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::SingularPoint { u, v } => {
                write!(f, "singular (branch) point at (u,v)=({}, {})", u, v)
            }
            GeometryError::CriticalPoint { z } => {
                write!(f, "g' vanishes at z = {}", z)
            }
            GeometryError::BranchPointProximity { z } => {
                write!(
                    f,
                    "integration path too close to a branch point near z = {}",
                    z
                )
            }
            GeometryError::EmptyRegion => write!(f, "all grid points singular"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// Position and derivatives through second order at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct Jet2 {
    pub x: [f64; 3],
    pub xu: [f64; 3],
    pub xv: [f64; 3],
    pub xuu: [f64; 3],
    pub xuv: [f64; 3],
    pub xvv: [f64; 3],
}

/// A numerically evaluable parametric surface.
pub trait Surface {
    fn position(&self, u: f64, v: f64) -> [f64; 3];
    /// Analytic jet (symbolically differentiated, then evaluated).
    fn jet2(&self, u: f64, v: f64) -> Jet2;
}

/// Surface backed by three float bivariate coordinate polynomials with
/// all partials cached.
#[derive(Debug, Clone)]
pub struct BivarSurface {
    x: [Bivariate64; 3],
    xu: [Bivariate64; 3],
    xv: [Bivariate64; 3],
    xuu: [Bivariate64; 3],
    xuv: [Bivariate64; 3],
    xvv: [Bivariate64; 3],
}

impl BivarSurface {
    pub fn from_float(x: [Bivariate64; 3]) -> Self {
        let xu: [Bivariate64; 3] = core::array::from_fn(|i| x[i].partial_u());
        let xv: [Bivariate64; 3] = core::array::from_fn(|i| x[i].partial_v());
        BivarSurface {
            xuu: core::array::from_fn(|i| xu[i].partial_u()),
            xuv: core::array::from_fn(|i| xu[i].partial_v()),
            xvv: core::array::from_fn(|i| xv[i].partial_v()),
            x,
            xu,
            xv,
        }
    }

    /// Differentiates exactly first, then converts to float.
    pub fn from_exact(s: &SurfacePolynomial) -> Self {
        let xu: [_; 3] = core::array::from_fn(|i| s.coord(i).partial_u());
        let xv: [_; 3] = core::array::from_fn(|i| s.coord(i).partial_v());
        BivarSurface {
            x: core::array::from_fn(|i| s.coord(i).to_float()),
            xuu: core::array::from_fn(|i| xu[i].partial_u().to_float()),
            xuv: core::array::from_fn(|i| xu[i].partial_v().to_float()),
            xvv: core::array::from_fn(|i| xv[i].partial_v().to_float()),
            xu: core::array::from_fn(|i| xu[i].to_float()),
            xv: core::array::from_fn(|i| xv[i].to_float()),
        }
    }
}

impl Surface for BivarSurface {
    fn position(&self, u: f64, v: f64) -> [f64; 3] {
        core::array::from_fn(|i| self.x[i].eval_f64(u, v))
    }

    fn jet2(&self, u: f64, v: f64) -> Jet2 {
        let ev =
            |p: &[Bivariate64; 3]| -> [f64; 3] { core::array::from_fn(|i| p[i].eval_f64(u, v)) };
        Jet2 {
            x: ev(&self.x),
            xu: ev(&self.xu),
            xv: ev(&self.xv),
            xuu: ev(&self.xuu),
            xuv: ev(&self.xuv),
            xvv: ev(&self.xvv),
        }
    }
}

/// Surface given as the real part of a holomorphic polynomial curve,
/// x(u,v) = Re Φ(u+iv); covers the associated family and float-only
/// generating pairs.
#[derive(Debug, Clone)]
pub struct CurveSurface {
    phi: [Poly64; 3],
    dphi: [Poly64; 3],
    ddphi: [Poly64; 3],
}

impl CurveSurface {
    pub fn new(phi: [Poly64; 3]) -> Self {
        let dphi: [Poly64; 3] = core::array::from_fn(|i| phi[i].derivative());
        let ddphi: [Poly64; 3] = core::array::from_fn(|i| dphi[i].derivative());
        CurveSurface { phi, dphi, ddphi }
    }

    pub fn from_associated(a: &AssociatedFamily) -> Self {
        CurveSurface::new(a.components().clone())
    }
}

impl Surface for CurveSurface {
    fn position(&self, u: f64, v: f64) -> [f64; 3] {
        let w = Complex64::new(u, v);
        core::array::from_fn(|i| self.phi[i].eval(&w).re)
    }

    fn jet2(&self, u: f64, v: f64) -> Jet2 {
        let w = Complex64::new(u, v);
        let x: [f64; 3] = core::array::from_fn(|i| self.phi[i].eval(&w).re);
        let d: [Complex64; 3] = core::array::from_fn(|i| self.dphi[i].eval(&w));
        let dd: [Complex64; 3] = core::array::from_fn(|i| self.ddphi[i].eval(&w));
        // ∂u Re Φ = Re Φ′, ∂v Re Φ = −Im Φ′, and again for Φ″
        Jet2 {
            x,
            xu: core::array::from_fn(|i| d[i].re),
            xv: core::array::from_fn(|i| -d[i].im),
            xuu: core::array::from_fn(|i| dd[i].re),
            xuv: core::array::from_fn(|i| -dd[i].im),
            xvv: core::array::from_fn(|i| -dd[i].re),
        }
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: &[f64; 3]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Fundamental forms and curvature at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct FormsSample {
    pub u: f64,
    pub v: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// Mean curvature.
    pub h: f64,
    /// Gauss curvature.
    pub k: f64,
    /// Normal curvature ν = √(−K) (0 where K > 0).
    pub nu: f64,
    /// (‖x_uu‖+‖x_uv‖+‖x_vv‖)/((E+G)/2): the 1/length scale against
    /// which H and K are made relative.
    pub curvature_scale: f64,
}

impl FormsSample {
    /// |H| relative to the local curvature scale.
    pub fn h_rel(&self) -> f64 {
        if self.h == 0.0 {
            0.0
        } else {
            libm::fabs(self.h) / self.curvature_scale.max(f64::MIN_POSITIVE)
        }
    }

    /// Positive part of K relative to the squared curvature scale.
    pub fn k_pos_rel(&self) -> f64 {
        if self.k <= 0.0 {
            0.0
        } else {
            self.k / (self.curvature_scale * self.curvature_scale).max(f64::MIN_POSITIVE)
        }
    }
}

/// Derivative source for [`forms_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    /// Symbolic derivatives evaluated in float.
    Analytic,
    /// Central differences of positions only (the oracle). Step
    /// h = 1e−5·max(1, |u|, |v|) for first derivatives; second
    /// derivatives use 10h because the h² division amplifies the
    /// eps·|x| cancellation noise above the agreement tolerance at
    /// the smaller step.
    FiniteDifference,
}

fn fd_jet(s: &dyn Surface, u: f64, v: f64) -> Jet2 {
    let h1 = 1e-5 * libm::fabs(u).max(libm::fabs(v)).max(1.0);
    let h2 = 10.0 * h1;
    let base = s.position(u, v);
    // work with positions relative to the center to keep the second
    // differences well conditioned
    let rel = |du: f64, dv: f64| -> [f64; 3] {
        let p = s.position(u + du, v + dv);
        [p[0] - base[0], p[1] - base[1], p[2] - base[2]]
    };
    let pu1 = rel(h1, 0.0);
    let mu1 = rel(-h1, 0.0);
    let pv1 = rel(0.0, h1);
    let mv1 = rel(0.0, -h1);
    let pu = rel(h2, 0.0);
    let mu = rel(-h2, 0.0);
    let pv = rel(0.0, h2);
    let mv = rel(0.0, -h2);
    let pp = rel(h2, h2);
    let pm = rel(h2, -h2);
    let mp = rel(-h2, h2);
    let mm = rel(-h2, -h2);
    Jet2 {
        x: base,
        xu: core::array::from_fn(|i| (pu1[i] - mu1[i]) / (2.0 * h1)),
        xv: core::array::from_fn(|i| (pv1[i] - mv1[i]) / (2.0 * h1)),
        xuu: core::array::from_fn(|i| (pu[i] + mu[i]) / (h2 * h2)),
        xvv: core::array::from_fn(|i| (pv[i] + mv[i]) / (h2 * h2)),
        xuv: core::array::from_fn(|i| (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h2 * h2)),
    }
}

/// Forms from a jet; errors when the metric is degenerate.
pub fn forms_from_jet(jet: &Jet2, u: f64, v: f64) -> Result<FormsSample, GeometryError> {
    let e = dot(&jet.xu, &jet.xu);
    let f = dot(&jet.xu, &jet.xv);
    let g = dot(&jet.xv, &jet.xv);
    let det = e * g - f * f;
    let reg_scale = 1.0 + e + g;
    // NaN determinants count as singular
    let regular = det > SINGULAR_DET_REL * reg_scale * reg_scale;
    if !regular {
        return Err(GeometryError::SingularPoint { u, v });
    }
    let w = libm::sqrt(det);
    let cr = cross(&jet.xu, &jet.xv);
    let normal = [cr[0] / w, cr[1] / w, cr[2] / w];
    let l = dot(&normal, &jet.xuu);
    let m = dot(&normal, &jet.xuv);
    let n = dot(&normal, &jet.xvv);
    let k = (l * n - m * m) / det;
    let h = (e * n - 2.0 * f * m + g * l) / (2.0 * det);
    let nu = libm::sqrt(if k < 0.0 { -k } else { 0.0 });
    let curvature_scale = (norm(&jet.xuu) + norm(&jet.xuv) + norm(&jet.xvv)) / ((e + g) / 2.0);
    Ok(FormsSample {
        u,
        v,
        e,
        f,
        g,
        l,
        m,
        n,
        h,
        k,
        nu,
        curvature_scale,
    })
}

/// Fundamental forms at (u, v) in the requested derivative mode.
pub fn forms_at(
    s: &dyn Surface,
    u: f64,
    v: f64,
    mode: DerivativeMode,
) -> Result<FormsSample, GeometryError> {
    let jet = match mode {
        DerivativeMode::Analytic => s.jet2(u, v),
        DerivativeMode::FiniteDifference => fd_jet(s, u, v),
    };
    forms_from_jet(&jet, u, v)
}

/// Rectangular parameter region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Region {
    pub fn square(half_width: f64) -> Self {
        Region {
            u_min: -half_width,
            u_max: half_width,
            v_min: -half_width,
            v_max: half_width,
        }
    }

    pub fn grid_point(&self, i: usize, j: usize, nu: usize, nv: usize) -> (f64, f64) {
        let fu = if nu > 1 {
            i as f64 / (nu - 1) as f64
        } else {
            0.0
        };
        let fv = if nv > 1 {
            j as f64 / (nv - 1) as f64
        } else {
            0.0
        };
        (
            self.u_min + fu * (self.u_max - self.u_min),
            self.v_min + fv * (self.v_max - self.v_min),
        )
    }
}

/// Result of a minimality grid scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanReport {
    pub points: usize,
    pub skipped_singular: usize,
    /// max |H|/curvature_scale over regular grid points.
    pub max_h_rel: f64,
    /// max |H| (absolute).
    pub max_h_abs: f64,
    /// max K⁺/curvature_scale² (positive Gauss curvature, relative).
    pub max_k_rel: f64,
}

impl ScanReport {
    pub fn passes(&self, tol_h: f64, tol_k: f64) -> bool {
        self.max_h_rel < tol_h && self.max_k_rel <= tol_k
    }
}

/// Scans |H| and K over an n×n grid; singular points are skipped and
/// counted. Errors only when every point is singular.
pub fn minimality_scan(
    s: &dyn Surface,
    region: Region,
    grid: usize,
) -> Result<ScanReport, GeometryError> {
    let n = grid.max(2);
    let mut report = ScanReport {
        points: 0,
        skipped_singular: 0,
        max_h_rel: 0.0,
        max_h_abs: 0.0,
        max_k_rel: 0.0,
    };
    for j in 0..n {
        for i in 0..n {
            let (u, v) = region.grid_point(i, j, n, n);
            match forms_at(s, u, v, DerivativeMode::Analytic) {
                Ok(fs) => {
                    report.points += 1;
                    report.max_h_rel = report.max_h_rel.max(fs.h_rel());
                    report.max_h_abs = report.max_h_abs.max(libm::fabs(fs.h));
                    report.max_k_rel = report.max_k_rel.max(fs.k_pos_rel());
                }
                Err(GeometryError::SingularPoint { .. }) => report.skipped_singular += 1,
                Err(e) => return Err(e),
            }
        }
    }
    if report.points == 0 {
        return Err(GeometryError::EmptyRegion);
    }
    Ok(report)
}

/// Options for the canonical-parameter chart integration.
#[derive(Debug, Clone, Copy)]
pub struct ChartOptions {
    /// Base point z₀ with f(z₀)·g′(z₀) ≠ 0; maps to w = 0.
    pub z0: Complex64,
    /// Global sign of z′ (both are admissible).
    pub branch: f64,
    /// Chart extent in w: s ∈ [0, extent_s], t ∈ [0, extent_t].
    pub extent_s: f64,
    pub extent_t: f64,
    /// Node spacing of the w grid.
    pub grid_step: f64,
    /// Micro-step of the fixed-step 4th-order integrator.
    pub ode_step: f64,
}

impl Default for ChartOptions {
    fn default() -> Self {
        ChartOptions {
            z0: Complex64::new(0.0, 0.0),
            branch: 1.0,
            extent_s: 0.5,
            extent_t: 0.5,
            grid_step: 1e-2,
            ode_step: 1e-3,
        }
    }
}

/// A grid in canonical principal parameters w = (s, t), with the
/// pulled-back fundamental forms and normal curvature at each node.
#[derive(Debug, Clone)]
pub struct CanonicalChart {
    pub ns: usize,
    pub nt: usize,
    pub grid_step: f64,
    /// z(w) at each node, row-major over (s, t).
    pub z: Vec<Complex64>,
    /// z′(w) (the branch-continued square root) at each node.
    pub zprime: Vec<Complex64>,
    /// g̃(w) = g(z(w)); NaN where g has a pole.
    pub gtilde: Vec<Complex64>,
    /// Forms in w coordinates.
    pub forms: Vec<FormsSample>,
    /// ν = √(−K) at each node.
    pub nu: Vec<f64>,
    /// Smallest |f·g′| seen along any integration path.
    pub min_integrand_abs: f64,
}

/// Worst-case deviations from the canonical form E = G = 1/ν, F = 0,
/// L = 1, M = 0, N = −1.
#[derive(Debug, Clone, Copy)]
pub struct ChartFormReport {
    pub max_e_defect: f64,
    pub max_g_defect: f64,
    pub max_f_abs: f64,
    pub max_l_defect: f64,
    pub max_m_abs: f64,
    pub max_n_defect: f64,
}

impl ChartFormReport {
    pub fn passes(&self, tol_first: f64, tol_second: f64) -> bool {
        self.max_e_defect < tol_first
            && self.max_g_defect < tol_first
            && self.max_f_abs < tol_first
            && self.max_l_defect < tol_second
            && self.max_m_abs < tol_second
            && self.max_n_defect < tol_second
    }
}

impl CanonicalChart {
    pub fn idx(&self, is: usize, it: usize) -> usize {
        it * self.ns + is
    }

    pub fn form_report(&self) -> ChartFormReport {
        let mut r = ChartFormReport {
            max_e_defect: 0.0,
            max_g_defect: 0.0,
            max_f_abs: 0.0,
            max_l_defect: 0.0,
            max_m_abs: 0.0,
            max_n_defect: 0.0,
        };
        for (fs, &nu) in self.forms.iter().zip(self.nu.iter()) {
            let inv_nu = 1.0 / nu;
            r.max_e_defect = r.max_e_defect.max(libm::fabs(fs.e - inv_nu));
            r.max_g_defect = r.max_g_defect.max(libm::fabs(fs.g - inv_nu));
            r.max_f_abs = r.max_f_abs.max(libm::fabs(fs.f));
            r.max_l_defect = r.max_l_defect.max(libm::fabs(fs.l - 1.0));
            r.max_m_abs = r.max_m_abs.max(libm::fabs(fs.m));
            r.max_n_defect = r.max_n_defect.max(libm::fabs(fs.n + 1.0));
        }
        r
    }

    /// max |Δ ln ν + 2ν| over interior nodes, Laplacian by fourth-order
    /// central differences (two-node border excluded).
    pub fn ganchev_pde_residual(&self) -> f64 {
        let h2 = self.grid_step * self.grid_step;
        let ln_nu: Vec<f64> = self.nu.iter().map(|&x| libm::log(x)).collect();
        let mut worst = 0.0f64;
        for it in 2..self.nt.saturating_sub(2) {
            for is in 2..self.ns.saturating_sub(2) {
                let at = |ds: isize, dt: isize| -> f64 {
                    ln_nu[self.idx((is as isize + ds) as usize, (it as isize + dt) as usize)]
                };
                let dss = (-at(-2, 0) + 16.0 * at(-1, 0) - 30.0 * at(0, 0) + 16.0 * at(1, 0)
                    - at(2, 0))
                    / (12.0 * h2);
                let dtt = (-at(0, -2) + 16.0 * at(0, -1) - 30.0 * at(0, 0) + 16.0 * at(0, 1)
                    - at(0, 2))
                    / (12.0 * h2);
                let res = dss + dtt + 2.0 * self.nu[self.idx(is, it)];
                worst = worst.max(libm::fabs(res));
            }
        }
        worst
    }
}

/// Branch-continued square root of −1/(f·g′): picks the root closest
/// in direction to `prev`.
fn branch_sqrt(fgp: Complex64, prev: Complex64) -> Complex64 {
    let s = (-fgp.inv()).sqrt();
    if (s * prev.conj()).re < 0.0 {
        -s
    } else {
        s
    }
}

/// Integrates z′(w)² = −1/(f(z)g′(z)) over an axis-parallel grid in w
/// starting at z₀ ↦ w=0, then pulls the surface's fundamental forms
/// back to w coordinates.
///
/// f·g′ is evaluated as the polynomial R·(P′Q − PQ′), so the integrand
/// has no poles; its zeros are the branch points guarded against.
pub fn canonical_chart(
    pair: &WeierstrassPair,
    opts: &ChartOptions,
) -> Result<CanonicalChart, GeometryError> {
    // f·g′ = Q²R · (P′Q − PQ′)/Q² = R(P′Q − PQ′)
    let p = pair.g_num();
    let q = pair.g_den();
    let fgp_exact = pair.f_cofactor() * &(&(&p.derivative() * q) - &(p * &q.derivative()));
    let fgp = fgp_exact.to_float();
    let g_float = pair.g().to_float();
    let surface = BivarSurface::from_exact(&pair.curve().real_surface());

    let ns = libm::round(opts.extent_s / opts.grid_step) as usize + 1;
    let nt = libm::round(opts.extent_t / opts.grid_step) as usize + 1;
    let substeps = libm::round(opts.grid_step / opts.ode_step).max(1.0) as usize;
    let h = opts.grid_step / substeps as f64;

    let fgp0 = fgp.eval(&opts.z0);
    let mut min_abs = fgp0.norm();
    if min_abs < BRANCH_VALUE_GUARD {
        return Err(GeometryError::BranchPointProximity { z: opts.z0 });
    }

    // z′ continued from the branch reference q_near
    let zprime_at =
        |zz: Complex64, q_near: Complex64, min_abs: &mut f64| -> Result<Complex64, GeometryError> {
            let val = fgp.eval(&zz);
            let a = val.norm();
            *min_abs = min_abs.min(a);
            if a < BRANCH_VALUE_GUARD {
                return Err(GeometryError::BranchPointProximity { z: zz });
            }
            Ok(branch_sqrt(val, q_near))
        };

    // one 4th-order step of dz/dσ = dir·z′(z) along the path direction
    let step = |z: &mut Complex64,
                qref: &mut Complex64,
                dir: Complex64,
                min_abs: &mut f64|
     -> Result<(), GeometryError> {
        let k1 = dir * zprime_at(*z, *qref, min_abs)?;
        let k2 = dir * zprime_at(*z + k1 * (h / 2.0), *qref, min_abs)?;
        let k3 = dir * zprime_at(*z + k2 * (h / 2.0), *qref, min_abs)?;
        let k4 = dir * zprime_at(*z + k3 * h, *qref, min_abs)?;
        *z += (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0);
        *qref = zprime_at(*z, *qref, min_abs)?;
        Ok(())
    };

    let q0 = {
        let principal = (-fgp0.inv()).sqrt();
        principal * opts.branch
    };

    // first row: integrate along s
    let mut row0: Vec<(Complex64, Complex64)> = Vec::with_capacity(ns);
    let mut z = opts.z0;
    let mut qref = q0;
    row0.push((z, qref));
    for _ in 1..ns {
        for _ in 0..substeps {
            step(&mut z, &mut qref, Complex64::new(1.0, 0.0), &mut min_abs)?;
        }
        row0.push((z, qref));
    }

    // columns: integrate along t from each row-0 node
    let mut nodes: Vec<(Complex64, Complex64)> = Vec::with_capacity(ns * nt);
    nodes.extend(row0.iter().copied());
    nodes.resize(
        ns * nt,
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
    );
    for is in 0..ns {
        let (mut z, mut qref) = row0[is];
        for it in 1..nt {
            for _ in 0..substeps {
                step(&mut z, &mut qref, Complex64::new(0.0, 1.0), &mut min_abs)?;
            }
            nodes[it * ns + is] = (z, qref);
        }
    }

    // forms pulled back to w coordinates
    let mut zs = Vec::with_capacity(ns * nt);
    let mut zps = Vec::with_capacity(ns * nt);
    let mut gts = Vec::with_capacity(ns * nt);
    let mut forms = Vec::with_capacity(ns * nt);
    let mut nus = Vec::with_capacity(ns * nt);
    for (idx, &(z, zp)) in nodes.iter().enumerate() {
        let (u, v) = (z.re, z.im);
        let base = forms_at(&surface, u, v, DerivativeMode::Analytic)?;
        let (us, vs) = (zp.re, zp.im);
        let (ut, vt) = (-vs, us);
        let e = base.e * us * us + 2.0 * base.f * us * vs + base.g * vs * vs;
        let fw = base.e * us * ut + base.f * (us * vt + ut * vs) + base.g * vs * vt;
        let gw = base.e * ut * ut + 2.0 * base.f * ut * vt + base.g * vt * vt;
        let l = base.l * us * us + 2.0 * base.m * us * vs + base.n * vs * vs;
        let m = base.l * us * ut + base.m * (us * vt + ut * vs) + base.n * vs * vt;
        let n = base.l * ut * ut + 2.0 * base.m * ut * vt + base.n * vt * vt;
        let det = e * gw - fw * fw;
        let k = base.k;
        let hmean = (e * n - 2.0 * fw * m + gw * l) / (2.0 * det);
        let nu = libm::sqrt(if k < 0.0 { -k } else { 0.0 });
        let is = idx % ns;
        let it = idx / ns;
        forms.push(FormsSample {
            u: is as f64 * opts.grid_step,
            v: it as f64 * opts.grid_step,
            e,
            f: fw,
            g: gw,
            l,
            m,
            n,
            h: hmean,
            k,
            nu,
            curvature_scale: base.curvature_scale,
        });
        nus.push(nu);
        zs.push(z);
        zps.push(zp);
        gts.push(
            g_float
                .eval(&z)
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
        );
    }

    Ok(CanonicalChart {
        ns,
        nt,
        grid_step: opts.grid_step,
        z: zs,
        zprime: zps,
        gtilde: gts,
        forms,
        nu: nus,
        min_integrand_abs: min_abs,
    })
}

/// The invariant density (1+|g|²)²/(4|g′|²) of the canonical generating
/// function, from point values of g and g′.
pub fn canonical_energy_values(
    g_val: Complex64,
    g_deriv: Complex64,
    z: Complex64,
) -> Result<f64, GeometryError> {
    let gd2 = g_deriv.norm_sqr();
    if gd2 == 0.0 {
        return Err(GeometryError::CriticalPoint { z });
    }
    let s = 1.0 + g_val.norm_sqr();
    Ok(s * s / (4.0 * gd2))
}

/// Canonical energy of a float rational function at z.
pub fn canonical_energy(g: &RatFunc64, z: Complex64) -> Result<f64, GeometryError> {
    let gp = g.derivative();
    let gv = g.eval(&z).ok_or(GeometryError::CriticalPoint { z })?;
    let gd = gp.eval(&z).ok_or(GeometryError::CriticalPoint { z })?;
    canonical_energy_values(gv, gd, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ComplexPoly, ExactComplex, RationalFunction};
    use crate::weierstrass::tests::enneper_pair;
    use crate::weierstrass::validate_pair;
    use alloc::vec;
    use num_traits::One;

    fn enneper_surface() -> BivarSurface {
        BivarSurface::from_exact(&enneper_pair().curve().real_surface())
    }

    #[test]
    fn enneper_forms_at_origin() {
        let s = enneper_surface();
        for mode in [DerivativeMode::Analytic, DerivativeMode::FiniteDifference] {
            let fs = forms_at(&s, 0.0, 0.0, mode).unwrap();
            assert!((fs.e - 0.25).abs() < 1e-9, "E={} in {:?}", fs.e, mode);
            assert!((fs.g - 0.25).abs() < 1e-9);
            assert!(fs.f.abs() < 1e-9);
            assert!(fs.h.abs() < 1e-7);
            assert!((fs.k + 16.0).abs() < 1e-5, "K={} in {:?}", fs.k, mode);
            assert!((fs.nu - 4.0).abs() < 1e-6);
        }
    }

    #[test]
    fn modes_agree_on_enneper() {
        let s = enneper_surface();
        for &(u, v) in &[(0.0, 0.0), (0.3, 0.4), (-0.8, 0.9), (1.0, -1.0)] {
            let a = forms_at(&s, u, v, DerivativeMode::Analytic).unwrap();
            let b = forms_at(&s, u, v, DerivativeMode::FiniteDifference).unwrap();
            let scale = 1.0 + a.e.abs().max(a.g.abs());
            for (x, y) in [
                (a.e, b.e),
                (a.f, b.f),
                (a.g, b.g),
                (a.l, b.l),
                (a.m, b.m),
                (a.n, b.n),
            ] {
                assert!(
                    (x - y).abs() < TOL_FORMS_AGREE * scale,
                    "mode mismatch at ({u},{v}): {x} vs {y}"
                );
            }
        }
    }

    #[test]
    fn plane_has_zero_second_form() {
        // x = (u, v, 0)
        let s = BivarSurface::from_float([
            Bivariate64::monomial(1, 0, 1.0),
            Bivariate64::monomial(0, 1, 1.0),
            Bivariate64::zero(),
        ]);
        let fs = forms_at(&s, 0.2, -0.7, DerivativeMode::Analytic).unwrap();
        assert_eq!(fs.l, 0.0);
        assert_eq!(fs.m, 0.0);
        assert_eq!(fs.n, 0.0);
        assert_eq!(fs.k, 0.0);
        assert_eq!(fs.h, 0.0);
    }

    #[test]
    fn paraboloid_scan_fails_minimality() {
        // x = (u, v, u²): H = 1 at the origin
        let s = BivarSurface::from_float([
            Bivariate64::monomial(1, 0, 1.0),
            Bivariate64::monomial(0, 1, 1.0),
            Bivariate64::monomial(2, 0, 1.0),
        ]);
        let report = minimality_scan(&s, Region::square(1.0), 41).unwrap();
        assert!((report.max_h_abs - 1.0).abs() < 1e-12);
        assert!(!report.passes(TOL_MINIMALITY_H, TOL_MINIMALITY_K));
    }

    #[test]
    fn enneper_scan_passes() {
        let report = minimality_scan(&enneper_surface(), Region::square(1.0), 41).unwrap();
        assert_eq!(report.skipped_singular, 0);
        assert!(report.passes(TOL_MINIMALITY_H, TOL_MINIMALITY_K));
    }

    #[test]
    fn singular_point_detected_at_branch_point() {
        // f = z², g = z: metric degenerates at z = 0
        let f = ComplexPoly::monomial(ExactComplex::one(), 2);
        let pair = validate_pair(f, RationalFunction::identity()).unwrap();
        let s = BivarSurface::from_exact(&pair.curve().real_surface());
        assert!(matches!(
            forms_at(&s, 0.0, 0.0, DerivativeMode::Analytic),
            Err(GeometryError::SingularPoint { .. })
        ));
        // and the scan counts it rather than failing
        let report = minimality_scan(&s, Region::square(1.0), 41).unwrap();
        assert_eq!(report.skipped_singular, 1);
        assert!(report.passes(TOL_MINIMALITY_H, TOL_MINIMALITY_K));
    }

    #[test]
    fn enneper_chart_matches_closed_form() {
        // (z′)² = −1 so z(w) = ±i·w; branch +1 gives z = i·w
        let pair = enneper_pair();
        let chart = canonical_chart(&pair, &ChartOptions::default()).unwrap();
        for it in (0..chart.nt).step_by(10) {
            for is in (0..chart.ns).step_by(10) {
                let w = Complex64::new(is as f64 * chart.grid_step, it as f64 * chart.grid_step);
                let expect = Complex64::new(0.0, 1.0) * w;
                let got = chart.z[chart.idx(is, it)];
                assert!(
                    (got - expect).norm() < 1e-9,
                    "z({w}) = {got}, expected {expect}"
                );
            }
        }
        // g̃(w) = g(z(w)) = i·w for Enneper
        let gt = chart.gtilde[chart.idx(10, 0)];
        assert!((gt - Complex64::new(0.0, 0.1)).norm() < 1e-9);
    }

    #[test]
    fn enneper_chart_form_invariants() {
        let chart = canonical_chart(&enneper_pair(), &ChartOptions::default()).unwrap();
        let report = chart.form_report();
        assert!(
            report.passes(TOL_CHART_FIRST, TOL_CHART_SECOND),
            "{report:?}"
        );
        let pde = chart.ganchev_pde_residual();
        assert!(pde < TOL_GANCHEV_PDE, "pde residual {pde}");
    }

    #[test]
    fn enneper_chart_negative_branch() {
        let opts = ChartOptions {
            branch: -1.0,
            ..ChartOptions::default()
        };
        let chart = canonical_chart(&enneper_pair(), &opts).unwrap();
        // mirrored chart: z = −i·w
        let got = chart.z[chart.idx(10, 0)];
        assert!((got - Complex64::new(0.0, -0.1)).norm() < 1e-9);
        assert!(chart
            .form_report()
            .passes(TOL_CHART_FIRST, TOL_CHART_SECOND));
        assert!(chart.ganchev_pde_residual() < TOL_GANCHEV_PDE);
    }

    #[test]
    fn quintic_chart_form_invariants() {
        // r3[1,1,0]: f = z²+1, g = z; branch points ±i stay clear of
        // the integration paths from z₀ = 0
        let f = ComplexPoly::from_int_pairs(&[(1, 0), (0, 0), (1, 0)]);
        let pair = validate_pair(f, RationalFunction::identity()).unwrap();
        let chart = canonical_chart(&pair, &ChartOptions::default()).unwrap();
        assert!(chart.min_integrand_abs > 0.5);
        assert!(chart
            .form_report()
            .passes(TOL_CHART_FIRST, TOL_CHART_SECOND));
        assert!(chart.ganchev_pde_residual() < TOL_GANCHEV_PDE);
        // g̃(w) = g(z(w)) is recorded along the chart
        let mid = chart.idx(25, 25);
        assert!((chart.gtilde[mid] - chart.z[mid]).norm() < 1e-12);
    }

    #[test]
    fn chart_rejects_branch_point_start() {
        // f = z², g = z: f·g′ = z² vanishes at the default z₀ = 0
        let f = ComplexPoly::monomial(ExactComplex::one(), 2);
        let pair = validate_pair(f, RationalFunction::identity()).unwrap();
        assert!(matches!(
            canonical_chart(&pair, &ChartOptions::default()),
            Err(GeometryError::BranchPointProximity { .. })
        ));
    }

    #[test]
    fn canonical_energy_basics() {
        // g = z at 0: (1+0)²/(4·1) = 1/4
        let g = RationalFunction::identity().to_float();
        assert!((canonical_energy(&g, Complex64::new(0.0, 0.0)).unwrap() - 0.25).abs() < 1e-15);
        // g = z² at 0: g′ = 0 → critical point
        let g2 = RationalFunction::new(
            ComplexPoly::monomial(ExactComplex::one(), 2),
            ComplexPoly::one(),
        )
        .unwrap()
        .to_float();
        assert!(matches!(
            canonical_energy(&g2, Complex64::new(0.0, 0.0)),
            Err(GeometryError::CriticalPoint { .. })
        ));
    }

    #[test]
    fn canonical_energy_inversion_invariant() {
        // g = z vs 1/z at z = 2+i
        let z = Complex64::new(2.0, 1.0);
        let g = RationalFunction::identity().to_float();
        let ginv = RationalFunction::new(ComplexPoly::one(), ComplexPoly::identity())
            .unwrap()
            .to_float();
        let a = canonical_energy(&g, z).unwrap();
        let b = canonical_energy(&ginv, z).unwrap();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn associated_family_first_form_invariant() {
        let curve = enneper_pair().curve();
        let base = CurveSurface::from_associated(&AssociatedFamily::new(&curve, 0.0));
        for &t in &[
            core::f64::consts::FRAC_PI_6,
            1.0,
            core::f64::consts::FRAC_PI_2,
        ] {
            let rotated = CurveSurface::from_associated(&AssociatedFamily::new(&curve, t));
            for &(u, v) in &[(0.3, 0.4), (-0.9, 0.2), (1.0, 1.0)] {
                let a = forms_at(&base, u, v, DerivativeMode::Analytic).unwrap();
                let b = forms_at(&rotated, u, v, DerivativeMode::Analytic).unwrap();
                assert!((a.e - b.e).abs() < TOL_ASSOC_INVARIANCE * a.e.abs());
                assert!((a.f - b.f).abs() < TOL_ASSOC_INVARIANCE * (1.0 + a.e.abs()));
                assert!((a.g - b.g).abs() < TOL_ASSOC_INVARIANCE * a.g.abs());
                // H stays zero across the family
                assert!(b.h_rel() < TOL_MINIMALITY_H);
            }
        }
    }

    #[test]
    fn fd_oracle_on_curve_surface() {
        let curve = enneper_pair().curve();
        let s = CurveSurface::from_associated(&AssociatedFamily::new(&curve, 0.7));
        let a = forms_at(&s, 0.25, -0.4, DerivativeMode::Analytic).unwrap();
        let b = forms_at(&s, 0.25, -0.4, DerivativeMode::FiniteDifference).unwrap();
        for (x, y) in [(a.e, b.e), (a.l, b.l), (a.n, b.n), (a.m, b.m)] {
            assert!((x - y).abs() < TOL_FORMS_AGREE * (1.0 + x.abs()));
        }
    }

    #[test]
    fn empty_vec_guard() {
        let s = BivarSurface::from_float([
            Bivariate64::zero(),
            Bivariate64::zero(),
            Bivariate64::zero(),
        ]);
        assert!(matches!(
            minimality_scan(&s, Region::square(1.0), 5),
            Err(GeometryError::EmptyRegion)
        ));
        let _ = vec![0u8; 1];
    }
}
