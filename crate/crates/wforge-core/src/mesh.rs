//! Parameter-grid sampling of surfaces and OBJ/CSV content generation.
//!
//! Vertices at metric-degenerate points (zeros of the cofactor R in
//! f = Q²R; at zeros of Q the pole of g cancels the zero of f) keep
//! their positions but are flagged: no face touches them and their
//! curvature columns read NaN in the CSV. File writing itself lives in
//! the CLI crate; this module only produces the file contents.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::geometry::{forms_at, DerivativeMode, GeometryError, Region, Surface};

#[derive(Debug, Clone, PartialEq)]
pub enum MeshError {
    /// Fewer than 2 samples along an axis.
    ResolutionTooSmall { nu: usize, nv: usize },
    /// Every sampled vertex was singular.
    EmptyMesh,
    /// CSV export asked for curvature data the grid was built without.
    MissingCurvature,
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshError::ResolutionTooSmall { nu, nv } => {
                write!(
                    f,
                    "resolution must be at least 2 per axis, got {}x{}",
                    nu, nv
                )
            }
            MeshError::EmptyMesh => write!(f, "all grid points are singular"),
            MeshError::MissingCurvature => {
                write!(f, "grid was sampled without curvature data")
            }
        }
    }
}

impl core::error::Error for MeshError {}

/// Per-vertex curvature sample.
#[derive(Debug, Clone, Copy)]
pub struct VertexCurvature {
    pub gauss: f64,
    pub normal: f64,
}

/// Row-major vertex grid with triangulated quad faces.
#[derive(Debug, Clone)]
pub struct MeshGrid {
    pub nu: usize,
    pub nv: usize,
    pub region: Region,
    /// (u, v) per vertex, row-major over v.
    pub params: Vec<(f64, f64)>,
    pub vertices: Vec<[f64; 3]>,
    /// None at singular vertices (or everywhere when sampled without
    /// curvature).
    pub curvature: Option<Vec<Option<VertexCurvature>>>,
    pub singular: Vec<bool>,
    /// Triangles with counterclockwise winding in (u, v); 0-based.
    pub faces: Vec<[u32; 3]>,
}

impl MeshGrid {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn singular_count(&self) -> usize {
        self.singular.iter().filter(|&&s| s).count()
    }
}

/// Samples a surface over a region. `with_curvature` adds per-vertex
/// Gauss and normal curvature (needed for CSV export).
pub fn sample(
    surface: &dyn Surface,
    region: Region,
    nu: usize,
    nv: usize,
    with_curvature: bool,
) -> Result<MeshGrid, MeshError> {
    if nu < 2 || nv < 2 {
        return Err(MeshError::ResolutionTooSmall { nu, nv });
    }
    let mut params = Vec::with_capacity(nu * nv);
    let mut vertices = Vec::with_capacity(nu * nv);
    let mut singular = Vec::with_capacity(nu * nv);
    let mut curvature = if with_curvature {
        Some(Vec::with_capacity(nu * nv))
    } else {
        None
    };
    for r in 0..nv {
        for c in 0..nu {
            let (u, v) = region.grid_point(c, r, nu, nv);
            params.push((u, v));
            vertices.push(surface.position(u, v));
            match forms_at(surface, u, v, DerivativeMode::Analytic) {
                Ok(fs) => {
                    singular.push(false);
                    if let Some(cv) = curvature.as_mut() {
                        cv.push(Some(VertexCurvature {
                            gauss: fs.k,
                            normal: fs.nu,
                        }));
                    }
                }
                Err(GeometryError::SingularPoint { .. }) => {
                    singular.push(true);
                    if let Some(cv) = curvature.as_mut() {
                        cv.push(None);
                    }
                }
                Err(_) => {
                    singular.push(true);
                    if let Some(cv) = curvature.as_mut() {
                        cv.push(None);
                    }
                }
            }
        }
    }
    if singular.iter().all(|&s| s) {
        return Err(MeshError::EmptyMesh);
    }
    let mut faces = Vec::with_capacity(2 * (nu - 1) * (nv - 1));
    let idx = |r: usize, c: usize| (r * nu + c) as u32;
    for r in 0..nv - 1 {
        for c in 0..nu - 1 {
            let quad = [idx(r, c), idx(r, c + 1), idx(r + 1, c + 1), idx(r + 1, c)];
            if quad.iter().any(|&i| singular[i as usize]) {
                continue;
            }
            faces.push([quad[0], quad[1], quad[2]]);
            faces.push([quad[0], quad[2], quad[3]]);
        }
    }
    Ok(MeshGrid {
        nu,
        nv,
        region,
        params,
        vertices,
        curvature,
        singular,
        faces,
    })
}

/// Wavefront OBJ: `v x y z` lines, then 1-based `f i j k` lines.
pub fn export_obj(mesh: &MeshGrid) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
    }
    for f in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    out
}

/// CSV with header `u,v,x,y,z,K,nu`, one row per vertex, 17 significant
/// digits; singular vertices carry NaN in the curvature columns.
pub fn export_csv(mesh: &MeshGrid) -> Result<String, MeshError> {
    let curvature = mesh.curvature.as_ref().ok_or(MeshError::MissingCurvature)?;
    let mut out = String::from("u,v,x,y,z,K,nu\n");
    for (i, v) in mesh.vertices.iter().enumerate() {
        let (u, vv) = mesh.params[i];
        let (k, nu) = match &curvature[i] {
            Some(c) => (c.gauss, c.normal),
            None => (f64::NAN, f64::NAN),
        };
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            u, vv, v[0], v[1], v[2], k, nu
        );
    }
    Ok(out)
}
