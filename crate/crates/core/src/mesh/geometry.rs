//! Affine reference maps, volumes, diameters, face areas and normals.

use super::PolyMesh;
use crate::error::{Error, Result};
use nalgebra::{Matrix3, Vector3};

/// Affine map `x = origin + J xi` from the reference tetrahedron.
#[derive(Debug, Clone)]
pub struct SubTetGeometry {
    pub origin: Vector3<f64>,
    pub jac: Matrix3<f64>,
    /// `det J = 6 * volume`, strictly positive.
    pub det: f64,
    pub jac_inv: Matrix3<f64>,
}

impl SubTetGeometry {
    pub fn to_physical(&self, xi: &Vector3<f64>) -> Vector3<f64> {
        self.origin + self.jac * xi
    }

    pub fn to_reference(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.jac_inv * (x - self.origin)
    }

    /// Push a reference gradient to a physical gradient (`J^{-T} g`).
    pub fn push_gradient(&self, g: &Vector3<f64>) -> Vector3<f64> {
        self.jac_inv.transpose() * g
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FaceGeometry {
    pub area: f64,
    /// Unit normal pointing out of the owning cell.
    pub normal: Vector3<f64>,
    pub centroid: Vector3<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct CellGeometryInfo {
    pub volume: f64,
    /// Characteristic length: the cell diameter (max pairwise vertex
    /// distance).
    pub diameter: f64,
}

#[derive(Debug, Clone)]
pub struct CellGeometry {
    /// Per global sub-tetrahedron.
    pub subtets: Vec<SubTetGeometry>,
    pub cells: Vec<CellGeometryInfo>,
    /// Per cell, per boundary triangle.
    pub faces: Vec<Vec<FaceGeometry>>,
    pub h_min: f64,
    pub h_max: f64,
    pub total_volume: f64,
}

pub fn compute_geometry(pm: &PolyMesh) -> Result<CellGeometry> {
    let mut subtets = Vec::with_capacity(pm.subtets.len());
    for (i, t) in pm.subtets.iter().enumerate() {
        let x0 = pm.vertices[t[0]];
        let jac = Matrix3::from_columns(&[
            pm.vertices[t[1]] - x0,
            pm.vertices[t[2]] - x0,
            pm.vertices[t[3]] - x0,
        ]);
        let det = jac.determinant();
        if !(det > 0.0) {
            return Err(Error::Geometry(format!(
                "sub-tetrahedron {i} has non-positive Jacobian determinant {det:e}"
            )));
        }
        let jac_inv = jac.try_inverse().ok_or_else(|| {
            Error::Geometry(format!("sub-tetrahedron {i} Jacobian is singular"))
        })?;
        subtets.push(SubTetGeometry {
            origin: x0,
            jac,
            det,
            jac_inv,
        });
    }

    let mut cells = Vec::with_capacity(pm.cells.len());
    let mut faces = Vec::with_capacity(pm.cells.len());
    let mut total_volume = 0.0;
    let (mut h_min, mut h_max) = (f64::INFINITY, 0.0f64);
    for (ci, cell) in pm.cells.iter().enumerate() {
        let volume: f64 = cell.subtets.iter().map(|&k| subtets[k].det / 6.0).sum();
        total_volume += volume;
        let ids = pm.cell_vertices(ci);
        let mut diameter = 0.0f64;
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                diameter = diameter.max((pm.vertices[a] - pm.vertices[b]).norm());
            }
        }
        h_min = h_min.min(diameter);
        h_max = h_max.max(diameter);
        cells.push(CellGeometryInfo { volume, diameter });

        let mut cell_faces = Vec::with_capacity(cell.boundary.len());
        for tri in &cell.boundary {
            let a = pm.vertices[tri.verts[0]];
            let b = pm.vertices[tri.verts[1]];
            let c = pm.vertices[tri.verts[2]];
            let cr = (b - a).cross(&(c - a));
            let twice_area = cr.norm();
            if !(twice_area > 0.0) {
                return Err(Error::Geometry(format!(
                    "cell {ci} has a degenerate boundary triangle {:?}",
                    tri.verts
                )));
            }
            cell_faces.push(FaceGeometry {
                area: 0.5 * twice_area,
                normal: cr / twice_area,
                centroid: (a + b + c) / 3.0,
            });
        }
        faces.push(cell_faces);
    }

    Ok(CellGeometry {
        subtets,
        cells,
        faces,
        h_min,
        h_max,
        total_volume,
    })
}
