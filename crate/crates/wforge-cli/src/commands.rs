//! Implementations of the gen / verify / compare / families commands.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use num_traits::{ToPrimitive, Zero};
use serde::Deserialize;

use wforge_core::families::{
    classify_pair, float_curve, float_integrand, xu_wang_surface, Family, GeneratingPair, PairClass,
};
use wforge_core::geometry::{
    canonical_chart, minimality_scan, BivarSurface, CanonicalChart, ChartOptions, CurveSurface,
    Region, Surface, TOL_CHART_FIRST, TOL_CHART_SECOND, TOL_FLOAT_RESIDUAL, TOL_GANCHEV_PDE,
    TOL_MINIMALITY_H, TOL_MINIMALITY_K,
};
use wforge_core::mesh::{export_csv, export_obj, sample, MeshGrid};
use wforge_core::quintic::{
    extract_coeffs, extract_coeffs_f64, system_residual, CoeffVectors, CoeffVectors5,
    EQUATION_LABELS,
};
use wforge_core::weierstrass::{check_isotropy, validate_pair, WeierstrassPair};
use wforge_core::{Complex64, ComplexPoly, Poly64, RatFunc64, Rational, RationalFunction};

use crate::report::{
    CheckReport, CompareReport, EquationReport, FingerprintReport, StructureInfo, VerifyReport,
    SCHEMA_VERSION,
};

/// All numeric tolerances, scaled by the WFORGE_TOL_SCALE environment
/// variable (default 1).
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub minimality_h: f64,
    pub minimality_k: f64,
    pub chart_first: f64,
    pub chart_second: f64,
    pub ganchev_pde: f64,
    pub float_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            minimality_h: TOL_MINIMALITY_H,
            minimality_k: TOL_MINIMALITY_K,
            chart_first: TOL_CHART_FIRST,
            chart_second: TOL_CHART_SECOND,
            ganchev_pde: TOL_GANCHEV_PDE,
            float_residual: TOL_FLOAT_RESIDUAL,
        }
    }
}

impl Tolerances {
    pub fn from_env() -> Result<Self> {
        let mut t = Tolerances::default();
        if let Ok(raw) = std::env::var("WFORGE_TOL_SCALE") {
            let scale: f64 = raw
                .parse()
                .with_context(|| format!("WFORGE_TOL_SCALE must be a number, got '{}'", raw))?;
            if scale.is_nan() || scale <= 0.0 {
                bail!("WFORGE_TOL_SCALE must be positive, got {}", scale);
            }
            t.minimality_h *= scale;
            t.minimality_k *= scale;
            t.chart_first *= scale;
            t.chart_second *= scale;
            t.ganchev_pde *= scale;
            t.float_residual *= scale;
        }
        Ok(t)
    }
}

/// What a command operates on.
#[allow(clippy::large_enum_variant)]
pub enum Subject {
    Family(Family),
    ExplicitPair {
        f: ComplexPoly,
        g: RationalFunction,
    },
    /// Raw coefficient vectors (verify only).
    Coeffs(Box<CoeffVectors5>),
}

impl Subject {
    pub fn describe(&self) -> String {
        match self {
            Subject::Family(f) => describe_family(f),
            Subject::ExplicitPair { f, g } => format!("pair f={} g={}", f, g),
            Subject::Coeffs(_) => "raw coefficient vectors".to_string(),
        }
    }
}

pub fn describe_family(f: &Family) -> String {
    match f {
        Family::Enneper => "enneper".to_string(),
        Family::R11 { a, b } => format!("r11[{},{}]", a, b),
        Family::R12 { a, b, c, d } => format!("r12[{},{},{},{}]", a, b, c, d),
        Family::R3 { a, b, c } => format!("r3[{},{},{}]", a, b, c),
        Family::XuWangOmega { n, omega } => format!("xw[n={},omega={}]", n, omega),
        Family::XuWangDeg5 { a1, a2, e1, e2 } => {
            format!("xw5[{},{},{},{}]", a1, a2, e1, e2)
        }
    }
}

fn classification_text(class: &PairClass) -> String {
    match class {
        PairClass::EnneperLike => "degree-3 (Enneper up to the affine moves)".to_string(),
        PairClass::Case11 { a, b } => format!("case 1.1 with a={}, b={}", a, b),
        PairClass::Case11Shape => "case 1.1 shape (p,q,r)=(2,0,0)".to_string(),
        PairClass::Case12 { a, b, c, d } => {
            format!("case 1.2 with a={}, b={}, c={}, d={}", a, b, c, d)
        }
        PairClass::Case12Shape => "case 1.2 shape (p,q,r)=(2,1,0)".to_string(),
        PairClass::Case12Reduced { a, b, c } => {
            let d = -(b.clone() * b.clone() * c.clone());
            format!(
                "case 1.2 with a={}, b={}, c={}, d={} (b²c+d=0: reduces to case 3)",
                a, b, c, d
            )
        }
        PairClass::Case3 { a, b, c } => format!("case 3 with a={}, b={}, c={}", a, b, c),
        PairClass::Case3Shape => "case 3 shape (p,q,r)=(1,0,2)".to_string(),
        PairClass::Case21Shape => "case 2.1 shape (mirror of case 1.1)".to_string(),
        PairClass::Case22Shape => "case 2.2 shape (mirror of case 1.2)".to_string(),
        PairClass::Case4Shape => "case 4 shape (mirror of case 3)".to_string(),
        PairClass::Other => "outside the degree-5 catalog".to_string(),
    }
}

fn structure_info(pair: &WeierstrassPair) -> StructureInfo {
    let s = pair.structure();
    StructureInfo {
        p: s.p,
        q: s.q,
        r: s.r,
        n: s.n,
        degree_sums: s.degree_sums(),
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Candidate chart base points. All are tried; the chart keeping the
/// largest margin from branch points (min |f·g′| along its paths) is
/// the one checked, since discretization error blows up for charts
/// whose w-image passes near a zero of f·g′.
const CHART_BASE_POINTS: [(f64, f64); 6] = [
    (0.0, 0.0),
    (0.37, 0.13),
    (-0.29, 0.41),
    (0.52, -0.33),
    (1.21, 0.44),
    (-1.34, -0.81),
];

/// Exact-pair verification: the full check suite.
fn verify_exact_pair(
    pair: &WeierstrassPair,
    region: Region,
    grid: usize,
    tol: &Tolerances,
) -> (Vec<CheckReport>, Option<StructureInfo>, Option<String>) {
    let mut checks = Vec::new();
    let s = pair.structure();
    let sums = s.degree_sums();
    let structure_ok = sums.iter().all(|&x| x < s.n) && sums.iter().any(|&x| x == s.n - 1);
    checks.push(CheckReport::exact("structure", structure_ok, None));

    let iso = check_isotropy(&pair.integrand());
    checks.push(CheckReport::exact(
        "isotropy",
        iso.is_zero(),
        Some(if iso.is_zero() {
            "0".to_string()
        } else {
            iso.to_string()
        }),
    ));

    let surface = pair.curve().real_surface();
    checks.push(CheckReport::exact(
        "harmonic",
        surface.is_harmonic(),
        Some("exact Laplacian".to_string()),
    ));
    checks.push(CheckReport::exact(
        "isothermal",
        surface.is_isothermal(),
        Some("exact E−G and F".to_string()),
    ));
    checks.push(CheckReport::exact(
        "surface_degree",
        surface.degree() == s.n,
        Some(format!("degree {} vs n={}", surface.degree(), s.n)),
    ));

    if surface.degree() <= 5 {
        let mut check = match extract_coeffs(&surface) {
            Ok(cv) => {
                let res = system_residual(&cv);
                let equations: Vec<EquationReport> = res
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| EquationReport {
                        index: i + 1,
                        label: EQUATION_LABELS[i].to_string(),
                        residual: v.to_string(),
                        residual_float: rational_to_f64(v),
                        pass: v.is_zero(),
                    })
                    .collect();
                let mut c = CheckReport::exact("quintic_system", res.is_zero(), None);
                c.equations = Some(equations);
                c
            }
            Err(e) => CheckReport::exact("quintic_system", false, Some(e.to_string())),
        };
        check.kind = "exact".to_string();
        checks.push(check);
    } else {
        checks.push(CheckReport::skipped(
            "quintic_system",
            "exact",
            &format!("surface degree {} > 5", surface.degree()),
        ));
    }

    let evaluator = BivarSurface::from_exact(&surface);
    checks.push(scan_check(&evaluator, region, grid, tol));

    let (chart_check, pde_check) = chart_checks(pair, tol);
    checks.push(chart_check);
    checks.push(pde_check);

    let classification = classification_text(&classify_pair(pair));
    (checks, Some(structure_info(pair)), Some(classification))
}

fn scan_check(surface: &dyn Surface, region: Region, grid: usize, tol: &Tolerances) -> CheckReport {
    match minimality_scan(surface, region, grid) {
        Ok(report) => {
            let mut c = CheckReport::numeric(
                "minimality_scan",
                report.passes(tol.minimality_h, tol.minimality_k),
                report.max_h_rel.max(report.max_k_rel),
                tol.minimality_h,
            );
            c.skipped_points = Some(report.skipped_singular);
            c
        }
        Err(e) => CheckReport::numeric("minimality_scan", false, f64::NAN, tol.minimality_h)
            .with_note(e.to_string()),
    }
}

fn chart_checks(pair: &WeierstrassPair, tol: &Tolerances) -> (CheckReport, CheckReport) {
    let mut chart: Option<CanonicalChart> = None;
    let mut last_err = None;
    for &(x, y) in &CHART_BASE_POINTS {
        let opts = ChartOptions {
            z0: Complex64::new(x, y),
            ..ChartOptions::default()
        };
        match canonical_chart(pair, &opts) {
            Ok(c) => {
                if chart
                    .as_ref()
                    .is_none_or(|best| c.min_integrand_abs > best.min_integrand_abs)
                {
                    chart = Some(c);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match chart {
        Some(c) => {
            let fr = c.form_report();
            let first = fr.max_e_defect.max(fr.max_g_defect).max(fr.max_f_abs);
            let second = fr.max_l_defect.max(fr.max_m_abs).max(fr.max_n_defect);
            let chart_pass = fr.passes(tol.chart_first, tol.chart_second);
            let mut chart_check = CheckReport::numeric(
                "canonical_chart",
                chart_pass,
                first.max(second),
                tol.chart_second,
            );
            chart_check.residual = Some(format!(
                "first-form defect {:.3e} (tol {:.1e}), second-form defect {:.3e} (tol {:.1e})",
                first, tol.chart_first, second, tol.chart_second
            ));
            let pde = c.ganchev_pde_residual();
            let pde_check =
                CheckReport::numeric("ganchev_pde", pde < tol.ganchev_pde, pde, tol.ganchev_pde);
            (chart_check, pde_check)
        }
        None => {
            let reason = format!(
                "no regular base point among the candidates ({})",
                last_err
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "unknown".to_string())
            );
            (
                CheckReport::skipped("canonical_chart", "numeric", &reason),
                CheckReport::skipped("ganchev_pde", "numeric", &reason),
            )
        }
    }
}

/// Float-pair verification: numeric analogues of the exact suite.
fn verify_float_pair(
    f: &Poly64,
    g: &RatFunc64,
    region: Region,
    grid: usize,
    tol: &Tolerances,
) -> Result<(Vec<CheckReport>, Option<StructureInfo>)> {
    let mut checks = Vec::new();
    let p = g.num().degree().unwrap_or(0);
    let q = g.den().degree().unwrap_or(0);
    let fdeg = f.degree().unwrap_or(0);
    let r = fdeg.saturating_sub(2 * q);
    let n = 1 + (2 * q + r).max(2 * p + r).max(p + q + r);
    let info = StructureInfo {
        p,
        q,
        r,
        n,
        degree_sums: [2 * q + r, 2 * p + r, p + q + r],
    };
    // the real structure test is the division f = Q²R within tolerance
    let phi = match float_integrand(f, g) {
        Ok(phi) => {
            checks.push(CheckReport::exact("structure", true, None));
            phi
        }
        Err(e) => {
            checks.push(CheckReport::exact("structure", false, Some(e.to_string())));
            return Ok((checks, Some(info)));
        }
    };
    let scale = phi
        .iter()
        .flat_map(|p| p.coeffs())
        .fold(1.0f64, |m, c| m.max(c.norm()));
    let mut iso = Poly64::zero();
    for p in &phi {
        iso = &iso + &(p * p);
    }
    let iso_residual = iso.coeffs().iter().fold(0.0f64, |m, c| m.max(c.norm()));
    checks.push(CheckReport::numeric(
        "isotropy",
        iso_residual <= 1e-12 * scale * scale,
        iso_residual,
        1e-12 * scale * scale,
    ));

    let psi = float_curve(f, g)?;
    let coords: [wforge_core::Bivariate<f64>; 3] = std::array::from_fn(|i| {
        let (re, _) = wforge_core::substitute_complex(&psi[i]);
        re
    });
    let coeff_scale = coords
        .iter()
        .flat_map(|c| c.terms().map(|(_, v)| v.abs()))
        .fold(1.0f64, f64::max);
    let lap_residual = coords
        .iter()
        .map(|c| {
            c.laplacian()
                .terms()
                .map(|(_, v)| v.abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    checks.push(CheckReport::numeric(
        "harmonic",
        lap_residual <= 1e-10 * coeff_scale,
        lap_residual,
        1e-10 * coeff_scale,
    ));

    let evaluator = CurveSurface::new(psi);
    // isothermality at sample points
    let mut iso_defect = 0.0f64;
    for &(u, v) in &[(0.3, 0.4), (-0.7, 0.6), (0.9, -0.9), (0.05, 0.02)] {
        if let Ok(fs) = wforge_core::geometry::forms_at(
            &evaluator,
            u,
            v,
            wforge_core::geometry::DerivativeMode::Analytic,
        ) {
            let scale = fs.e.max(fs.g).max(1e-300);
            iso_defect = iso_defect
                .max((fs.e - fs.g).abs() / scale)
                .max(fs.f.abs() / scale);
        }
    }
    checks.push(CheckReport::numeric(
        "isothermal",
        iso_defect < 1e-9,
        iso_defect,
        1e-9,
    ));

    let deg = coords.iter().filter_map(|c| c.degree()).max().unwrap_or(0) as usize;
    checks.push(CheckReport::exact(
        "surface_degree",
        deg == n,
        Some(format!("degree {} vs n={}", deg, n)),
    ));

    if deg <= 5 {
        let check = match extract_coeffs_f64(&coords, 1e-9) {
            Ok(cv) => {
                let res = system_residual(&cv);
                let equations: Vec<EquationReport> = res
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| EquationReport {
                        index: i + 1,
                        label: EQUATION_LABELS[i].to_string(),
                        residual: format!("{:e}", v),
                        residual_float: *v,
                        pass: v.abs() < tol.float_residual,
                    })
                    .collect();
                let mut c = CheckReport::numeric(
                    "quintic_system",
                    res.max_abs() < tol.float_residual,
                    res.max_abs(),
                    tol.float_residual,
                );
                c.equations = Some(equations);
                c
            }
            Err(e) => CheckReport::numeric("quintic_system", false, f64::NAN, tol.float_residual)
                .with_note(e.to_string()),
        };
        checks.push(check);
    } else {
        checks.push(CheckReport::skipped(
            "quintic_system",
            "numeric",
            &format!("surface degree {} > 5", deg),
        ));
    }

    checks.push(scan_check(&evaluator, region, grid, tol));
    checks.push(CheckReport::skipped(
        "canonical_chart",
        "numeric",
        "float generating pair: the chart integrates exact pairs only",
    ));
    checks.push(CheckReport::skipped(
        "ganchev_pde",
        "numeric",
        "float generating pair: the chart integrates exact pairs only",
    ));
    Ok((checks, Some(info)))
}

/// Surface-only verification for the ω-family.
fn verify_omega_surface(
    n: u32,
    omega: f64,
    region: Region,
    grid: usize,
    tol: &Tolerances,
) -> Result<Vec<CheckReport>> {
    let coords =
        wforge_core::families::xu_wang_coords(n, omega).map_err(|e| anyhow!(e.to_string()))?;
    let surface = BivarSurface::from_float(coords.clone());
    let mut checks = Vec::new();
    checks.push(CheckReport::skipped(
        "structure",
        "exact",
        "the omega family is defined by its surface, not a generating pair",
    ));
    checks.push(CheckReport::skipped(
        "isotropy",
        "exact",
        "no generating pair",
    ));
    let coeff_scale = coords
        .iter()
        .flat_map(|c| c.terms().map(|(_, v)| v.abs()))
        .fold(1.0f64, f64::max);
    let lap_residual = coords
        .iter()
        .map(|c| {
            c.laplacian()
                .terms()
                .map(|(_, v)| v.abs())
                .fold(0.0f64, f64::max)
        })
        .fold(0.0f64, f64::max);
    checks.push(CheckReport::numeric(
        "harmonic",
        lap_residual <= 1e-12 * coeff_scale,
        lap_residual,
        1e-12 * coeff_scale,
    ));
    let mut iso_defect = 0.0f64;
    let mut sampled = 0;
    for &(u, v) in &[(0.3, 0.4), (-0.7, 0.6), (0.9, -0.9), (0.15, -0.55)] {
        if let Ok(fs) = wforge_core::geometry::forms_at(
            &surface,
            u,
            v,
            wforge_core::geometry::DerivativeMode::Analytic,
        ) {
            let scale = fs.e.max(fs.g).max(1e-300);
            iso_defect = iso_defect
                .max((fs.e - fs.g).abs() / scale)
                .max(fs.f.abs() / scale);
            sampled += 1;
        }
    }
    checks.push(CheckReport::numeric(
        "isothermal",
        sampled > 0 && iso_defect < 1e-9,
        iso_defect,
        1e-9,
    ));
    checks.push(scan_check(&surface, region, grid, tol));
    checks.push(CheckReport::skipped(
        "canonical_chart",
        "numeric",
        "no generating pair",
    ));
    checks.push(CheckReport::skipped(
        "ganchev_pde",
        "numeric",
        "no generating pair",
    ));
    Ok(checks)
}

/// JSON schema for `verify --coeffs`: eleven named 3-vectors of
/// rational strings.
#[derive(Debug, Deserialize)]
pub struct CoeffFile {
    pub a: [String; 3],
    pub b: [String; 3],
    pub c: [String; 3],
    pub d: [String; 3],
    pub e: [String; 3],
    pub f: [String; 3],
    pub g: [String; 3],
    pub h: [String; 3],
    pub i: [String; 3],
    pub j: [String; 3],
    pub k: [String; 3],
}

pub fn read_coeff_file(path: &Path) -> Result<CoeffVectors5> {
    let raw = fs::read_to_string(path)
        .with_context(|| format!("cannot read coefficient file {}", path.display()))?;
    let file: CoeffFile =
        serde_json::from_str(&raw).context("coefficient file is not valid JSON")?;
    let parse_vec = |v: &[String; 3], name: &str| -> Result<[Rational; 3]> {
        let mut out: [Rational; 3] = std::array::from_fn(|_| Rational::zero());
        for (slot, s) in out.iter_mut().zip(v) {
            *slot = wforge_core::algebra::parse_rational(s)
                .map_err(|e| anyhow!("vector {}: {}", name, e))?;
        }
        Ok(out)
    };
    Ok(CoeffVectors {
        a: parse_vec(&file.a, "a")?,
        b: parse_vec(&file.b, "b")?,
        c: parse_vec(&file.c, "c")?,
        d: parse_vec(&file.d, "d")?,
        e: parse_vec(&file.e, "e")?,
        f: parse_vec(&file.f, "f")?,
        g: parse_vec(&file.g, "g")?,
        h: parse_vec(&file.h, "h")?,
        i: parse_vec(&file.i, "i")?,
        j: parse_vec(&file.j, "j")?,
        k: parse_vec(&file.k, "k")?,
    })
}

fn verify_coeffs(cv: &CoeffVectors5) -> Vec<CheckReport> {
    let res = system_residual(cv);
    let equations: Vec<EquationReport> = res
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| EquationReport {
            index: i + 1,
            label: EQUATION_LABELS[i].to_string(),
            residual: v.to_string(),
            residual_float: rational_to_f64(v),
            pass: v.is_zero(),
        })
        .collect();
    let mut c = CheckReport::exact("quintic_system", res.is_zero(), None);
    c.equations = Some(equations);
    vec![c]
}

/// Runs the verification suite for a subject.
pub fn cmd_verify(
    subject: &Subject,
    region: Region,
    grid: usize,
    tol: &Tolerances,
) -> Result<VerifyReport> {
    let (checks, structure, classification) = match subject {
        Subject::Coeffs(cv) => (verify_coeffs(cv), None, None),
        Subject::ExplicitPair { f, g } => {
            let pair = validate_pair(f.clone(), g.clone());
            match pair {
                Ok(pair) => verify_exact_pair(&pair, region, grid, tol),
                Err(e) => (
                    vec![CheckReport::exact("structure", false, Some(e.to_string()))],
                    None,
                    None,
                ),
            }
        }
        Subject::Family(fam) => match fam {
            Family::XuWangOmega { n, omega } => (
                verify_omega_surface(*n, *omega, region, grid, tol)?,
                None,
                None,
            ),
            _ => match fam.pair().map_err(|e| anyhow!(e.to_string()))? {
                GeneratingPair::Exact(pair) => verify_exact_pair(&pair, region, grid, tol),
                GeneratingPair::Float { f, g } => {
                    let (checks, info) = verify_float_pair(&f, &g, region, grid, tol)?;
                    let classification = if matches!(fam, Family::XuWangDeg5 { .. }) {
                        Some("case 1.2 with b=d=0 (float parameters)".to_string())
                    } else {
                        None
                    };
                    (checks, info, classification)
                }
            },
        },
    };
    let passed = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        subject: subject.describe(),
        structure,
        classification,
        checks,
        passed,
    })
}

/// Mesh generation output description.
pub struct GenSummary {
    pub subject: String,
    pub structure: Option<StructureInfo>,
    pub classification: Option<String>,
    pub vertices: usize,
    pub faces: usize,
    pub singular: usize,
    pub obj_path: Option<PathBuf>,
    pub csv_path: Option<PathBuf>,
}

impl GenSummary {
    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("subject: {}\n", self.subject));
        if let Some(s) = &self.structure {
            out.push_str(&format!(
                "structure: p={} q={} r={} n={}\nsurface degree: {}\n",
                s.p, s.q, s.r, s.n, s.n
            ));
        }
        if let Some(c) = &self.classification {
            out.push_str(&format!("classification: {}\n", c));
        }
        out.push_str(&format!(
            "mesh: {} vertices, {} triangles, {} singular point(s)\n",
            self.vertices, self.faces, self.singular
        ));
        if let Some(p) = &self.obj_path {
            out.push_str(&format!("wrote {}\n", p.display()));
        }
        if let Some(p) = &self.csv_path {
            out.push_str(&format!("wrote {}\n", p.display()));
        }
        out
    }
}

type SurfaceWithInfo = (Box<dyn Surface>, Option<StructureInfo>, Option<String>);

/// Builds the numeric evaluator for a subject (gen path).
fn surface_of(subject: &Subject) -> Result<SurfaceWithInfo> {
    match subject {
        Subject::Coeffs(_) => bail!("gen does not accept raw coefficient vectors"),
        Subject::ExplicitPair { f, g } => {
            let pair = validate_pair(f.clone(), g.clone()).map_err(|e| anyhow!(e.to_string()))?;
            let class = classification_text(&classify_pair(&pair));
            let info = structure_info(&pair);
            Ok((
                Box::new(BivarSurface::from_exact(&pair.curve().real_surface())),
                Some(info),
                Some(class),
            ))
        }
        Subject::Family(fam) => match fam {
            Family::XuWangOmega { n, omega } => {
                let s = xu_wang_surface(*n, *omega).map_err(|e| anyhow!(e.to_string()))?;
                Ok((Box::new(s), None, None))
            }
            _ => match fam.pair().map_err(|e| anyhow!(e.to_string()))? {
                GeneratingPair::Exact(pair) => {
                    let class = classification_text(&classify_pair(&pair));
                    let info = structure_info(&pair);
                    Ok((
                        Box::new(BivarSurface::from_exact(&pair.curve().real_surface())),
                        Some(info),
                        Some(class),
                    ))
                }
                GeneratingPair::Float { f, g } => {
                    let psi = float_curve(&f, &g).map_err(|e| anyhow!(e.to_string()))?;
                    Ok((Box::new(CurveSurface::new(psi)), None, None))
                }
            },
        },
    }
}

pub struct GenConfig {
    pub region: Region,
    pub resolution: (usize, usize),
    pub obj_path: Option<PathBuf>,
    pub csv_path: Option<PathBuf>,
}

pub fn cmd_gen(subject: &Subject, cfg: &GenConfig) -> Result<GenSummary> {
    let (surface, structure, classification) = surface_of(subject)?;
    let with_curvature = cfg.csv_path.is_some();
    let mesh: MeshGrid = sample(
        surface.as_ref(),
        cfg.region,
        cfg.resolution.0,
        cfg.resolution.1,
        with_curvature,
    )
    .map_err(|e| anyhow!(e.to_string()))?;
    let mut summary = GenSummary {
        subject: subject.describe(),
        structure,
        classification,
        vertices: mesh.vertex_count(),
        faces: mesh.faces.len(),
        singular: mesh.singular_count(),
        obj_path: None,
        csv_path: None,
    };
    if let Some(path) = &cfg.obj_path {
        fs::write(path, export_obj(&mesh))
            .with_context(|| format!("cannot write {}", path.display()))?;
        summary.obj_path = Some(path.clone());
    }
    if let Some(path) = &cfg.csv_path {
        let csv = export_csv(&mesh).map_err(|e| anyhow!(e.to_string()))?;
        fs::write(path, csv).with_context(|| format!("cannot write {}", path.display()))?;
        summary.csv_path = Some(path.clone());
    }
    Ok(summary)
}

/// Fixed sample points for the canonical-energy fingerprint.
const FINGERPRINT_POINTS: [(f64, f64); 6] = [
    (0.31, 0.21),
    (-0.52, 0.67),
    (0.83, -0.41),
    (1.12, 0.94),
    (-1.21, -0.33),
    (0.05, 1.31),
];

fn fingerprint(ga: &RatFunc64, gb: &RatFunc64) -> Option<FingerprintReport> {
    let mut ea = Vec::new();
    let mut eb = Vec::new();
    for &(x, y) in &FINGERPRINT_POINTS {
        let z = Complex64::new(x, y);
        match (
            wforge_core::geometry::canonical_energy(ga, z),
            wforge_core::geometry::canonical_energy(gb, z),
        ) {
            (Ok(a), Ok(b)) => {
                ea.push(a);
                eb.push(b);
            }
            _ => continue,
        }
    }
    if ea.is_empty() {
        return None;
    }
    let max_difference = ea
        .iter()
        .zip(&eb)
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1e-300))
        .fold(0.0f64, f64::max);
    Some(FingerprintReport {
        energy_a: ea,
        energy_b: eb,
        max_difference,
    })
}

/// One side of a comparison: a catalog family or an explicit pair.
#[allow(clippy::large_enum_variant)]
pub enum CompareSide {
    Family(Family),
    Pair { f: ComplexPoly, g: RationalFunction },
}

impl CompareSide {
    fn describe(&self) -> String {
        match self {
            CompareSide::Family(f) => describe_family(f),
            CompareSide::Pair { f, g } => format!("pair f={} g={}", f, g),
        }
    }

    fn exact_pair(&self) -> Result<Option<WeierstrassPair>> {
        match self {
            CompareSide::Pair { f, g } => Ok(Some(
                validate_pair(f.clone(), g.clone()).map_err(|e| anyhow!(e.to_string()))?,
            )),
            CompareSide::Family(fam) => match fam {
                Family::XuWangOmega { .. } => {
                    bail!("compare needs generating-pair descriptors (the omega family has none)")
                }
                _ => match fam.pair().map_err(|e| anyhow!(e.to_string()))? {
                    GeneratingPair::Exact(p) => Ok(Some(p)),
                    GeneratingPair::Float { .. } => Ok(None),
                },
            },
        }
    }

    fn float_g(&self) -> Result<RatFunc64> {
        match self {
            CompareSide::Pair { g, .. } => Ok(g.to_float()),
            CompareSide::Family(fam) => match fam.pair().map_err(|e| anyhow!(e.to_string()))? {
                GeneratingPair::Exact(p) => Ok(p.g().to_float()),
                GeneratingPair::Float { g, .. } => Ok(g),
            },
        }
    }
}

/// Pulls exact (a,b,c,d) out of an r12 descriptor and (A,B,C) out of r3.
fn exact_r12_params(f: &Family) -> Option<[wforge_core::ExactComplex; 4]> {
    if let Family::R12 { a, b, c, d } = f {
        Some([
            a.exact()?.clone(),
            b.exact()?.clone(),
            c.exact()?.clone(),
            d.exact()?.clone(),
        ])
    } else {
        None
    }
}

fn exact_r3_params(f: &Family) -> Option<[wforge_core::ExactComplex; 3]> {
    if let Family::R3 { a, b, c } = f {
        Some([a.exact()?.clone(), b.exact()?.clone(), c.exact()?.clone()])
    } else {
        None
    }
}

pub fn cmd_compare(a: &CompareSide, b: &CompareSide) -> Result<CompareReport> {
    let mut report = CompareReport {
        schema_version: SCHEMA_VERSION,
        subject_a: a.describe(),
        subject_b: b.describe(),
        verdict: "undetermined by implemented criteria".to_string(),
        reason: None,
        predicate_value: None,
        reduced_case3: None,
        fingerprint: None,
    };

    // the decisive r12-vs-r3 predicate, in either order
    let r12_r3 = match (a, b) {
        (CompareSide::Family(fa), CompareSide::Family(fb)) => {
            if let (Some(r12), Some(r3)) = (exact_r12_params(fa), exact_r3_params(fb)) {
                Some((r12, r3))
            } else if let (Some(r12), Some(r3)) = (exact_r12_params(fb), exact_r3_params(fa)) {
                Some((r12, r3))
            } else {
                None
            }
        }
        _ => None,
    };
    if let Some(([ra, rb, rc, rd], [ba, bb, bc])) = r12_r3 {
        let predicate = rb.clone() * rb.clone() * rc.clone() + rd.clone();
        report.predicate_value = Some(predicate.to_string());
        if predicate.is_zero() {
            let red = wforge_core::families::coincidence_r12_r3(&rb, &rc, &rd)
                .map_err(|e| anyhow!(e.to_string()))?
                .expect("predicate is zero");
            let big_a = ra.clone() * red.a_scale.clone();
            report.reduced_case3 =
                Some([big_a.to_string(), "(0,0)".to_string(), red.r3_c.to_string()]);
            let coincides =
                wforge_core::families::r12_coincides_with_r3((&ra, &rb, &rc, &rd), (&ba, &bb, &bc))
                    .map_err(|e| anyhow!(e.to_string()))?;
            if coincides {
                report.verdict = "coincident".to_string();
                report.reason = Some(
                    "b²c+d = 0 and the canonical relation set (B = 0, C = −2bc·e^{iφ}, \
                     a = Ac³e^{4iφ}) holds"
                        .to_string(),
                );
            } else {
                report.reason = Some(
                    "b²c+d = 0, so the r12 member is a case-3 surface, but the given \
                     case-3 parameters do not match the reduced pair"
                        .to_string(),
                );
            }
        } else {
            report.verdict = "distinct".to_string();
            report.reason = Some(format!(
                "the families can only share a surface when b²c+d = 0; here b²c+d = {}",
                predicate
            ));
        }
        if let (Ok(ga), Ok(gb)) = (a.float_g(), b.float_g()) {
            report.fingerprint = fingerprint(&ga, &gb);
        }
        return Ok(report);
    }

    // exact surface-level decisions: identical or mirror-congruent
    if let (Some(pa), Some(pb)) = (a.exact_pair()?, b.exact_pair()?) {
        let sa = pa.curve().real_surface();
        let sb = pb.curve().real_surface();
        if sa == sb {
            report.verdict = "coincident".to_string();
            report.reason = Some("identical surface polynomials".to_string());
            return Ok(report);
        }
        if sb == sa.mirror_x1() || sa == sb.mirror_x1() {
            report.verdict = "mirror-congruent".to_string();
            report.reason =
                Some("the surfaces are exact mirror images about the Oyz plane".to_string());
            return Ok(report);
        }
        if sa.degree() != sb.degree() {
            report.verdict = "distinct".to_string();
            report.reason = Some(format!(
                "surface degrees differ ({} vs {})",
                sa.degree(),
                sb.degree()
            ));
            return Ok(report);
        }
        // different catalog families with no coincidence clause share
        // no surfaces
        if let (CompareSide::Family(fa), CompareSide::Family(fb)) = (a, b) {
            let cross_family = matches!(
                (fa, fb),
                (Family::R11 { .. }, Family::R12 { .. })
                    | (Family::R12 { .. }, Family::R11 { .. })
                    | (Family::R11 { .. }, Family::R3 { .. })
                    | (Family::R3 { .. }, Family::R11 { .. })
            );
            if cross_family {
                report.verdict = "distinct".to_string();
                report.reason = Some(
                    "case 1.1 surfaces never coincide with case 1.2 or case 3 surfaces".to_string(),
                );
                return Ok(report);
            }
        }
    }

    report.reason = Some(
        "no implemented criterion decides this pairing; the canonical-energy \
         fingerprint below is auxiliary data, not a decision"
            .to_string(),
    );
    if let (Ok(ga), Ok(gb)) = (a.float_g(), b.float_g()) {
        report.fingerprint = fingerprint(&ga, &gb);
    }
    Ok(report)
}

/// The catalog listing for the `families` subcommand.
pub fn families_catalog() -> String {
    let mut out = String::new();
    out.push_str("known families (degree-5 catalog unless noted):\n\n");
    out.push_str("  enneper              f = 1, g = z (degree 3)\n");
    out.push_str("  r11 a,b              f = a, g = z² + b          (a ≠ 0)\n");
    out.push_str("  r12 a,b,c,d          f = a(z+b)², g = (cz²+d)/(z+b)   (a, c ≠ 0)\n");
    out.push_str("  r3  a,b,c            f = az² + b, g = z + c     (a ≠ 0)\n");
    out.push_str("  xw  --n N --omega W  degree-N harmonic family (N ≥ 3, W ≥ 0; float)\n");
    out.push_str("  xw5 a1,a2,e1,e2      quintic four-parameter family\n");
    out.push_str("                       (needs a2·e1 − a1·e2 < 0; float; = r12 with b=d=0)\n");
    out.push_str("\nmirror images (cases 2.1, 2.2, 4) arise from r11, r12, r3 via the\n");
    out.push_str("Oyz symmetry transform; they are not separate catalog entries.\n");
    out.push_str("\nparameters: exact rationals like 1, -2/3, (1/2,-1); any decimal\n");
    out.push_str("component switches the descriptor to the float pipeline.\n");
    out
}
