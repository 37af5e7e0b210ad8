//! Tetrahedral and polyhedral meshes.
//!
//! A [`PolyMesh`] is a collection of polyhedral cells, each owning a
//! conforming list of sub-tetrahedra that tile it exactly. Cells are
//! produced from a tetrahedral grid either by local polyhedral
//! replacement ([`lpr`]), by vertex/edge clustering ([`agglomerate`]), or
//! left as single tetrahedra.

pub mod agglomerate;
pub mod boxmesh;
pub mod geometry;
pub mod io;
pub mod lpr;
pub mod stats;
pub mod validate;

pub use agglomerate::{agglomerate_et, agglomerate_vt};
pub use boxmesh::{build_box_tet_mesh, distort_tet_mesh, BoxBounds};
pub use geometry::{compute_geometry, CellGeometry};
pub use lpr::{generate_poly_mesh, LprBuilder};
pub use stats::{mesh_stats, MeshStats};
pub use validate::{validate_mesh, Violation};

use crate::error::{Error, Result};
use nalgebra::{Matrix3, Vector3};
use std::collections::BTreeMap;

/// Signed volume of the tetrahedron `(a, b, c, d)`.
pub fn tet_volume(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>, d: &Vector3<f64>) -> f64 {
    Matrix3::from_columns(&[b - a, c - a, d - a]).determinant() / 6.0
}

/// Outward-oriented local faces of a positively oriented tetrahedron;
/// entry `k` is the face opposite local vertex `k`.
pub const TET_FACES_OUT: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

/// Shared-vertex tetrahedral grid.
#[derive(Debug, Clone)]
pub struct TetMesh {
    pub vertices: Vec<Vector3<f64>>,
    /// Positively oriented tetrahedra.
    pub tets: Vec<[usize; 4]>,
    /// Vertex lies on the domain boundary.
    pub boundary_vertex: Vec<bool>,
}

impl TetMesh {
    /// Build a mesh from raw connectivity. Tetrahedra are re-oriented to
    /// positive volume; boundary flags are derived from once-counted faces
    /// when not supplied.
    pub fn new(
        vertices: Vec<Vector3<f64>>,
        mut tets: Vec<[usize; 4]>,
        boundary_vertex: Option<Vec<bool>>,
    ) -> Result<Self> {
        for (i, t) in tets.iter_mut().enumerate() {
            for &v in t.iter() {
                if v >= vertices.len() {
                    return Err(Error::Conformity(format!(
                        "tetrahedron {i} references missing vertex {v}"
                    )));
                }
            }
            let vol = tet_volume(
                &vertices[t[0]],
                &vertices[t[1]],
                &vertices[t[2]],
                &vertices[t[3]],
            );
            if vol == 0.0 || !vol.is_finite() {
                return Err(Error::Geometry(format!(
                    "tetrahedron {i} is degenerate (volume {vol:e})"
                )));
            }
            if vol < 0.0 {
                t.swap(2, 3);
            }
        }
        let boundary_vertex = match boundary_vertex {
            Some(f) => {
                if f.len() != vertices.len() {
                    return Err(Error::Config(
                        "boundary flag count does not match vertex count".into(),
                    ));
                }
                f
            }
            None => {
                let mut counts: BTreeMap<[usize; 3], usize> = BTreeMap::new();
                for t in &tets {
                    for f in &TET_FACES_OUT {
                        let mut key = [t[f[0]], t[f[1]], t[f[2]]];
                        key.sort_unstable();
                        *counts.entry(key).or_default() += 1;
                    }
                }
                let mut flags = vec![false; vertices.len()];
                for (key, c) in counts {
                    if c == 1 {
                        for v in key {
                            flags[v] = true;
                        }
                    }
                }
                flags
            }
        };
        Ok(Self {
            vertices,
            tets,
            boundary_vertex,
        })
    }

    pub fn total_volume(&self) -> f64 {
        self.tets
            .iter()
            .map(|t| {
                tet_volume(
                    &self.vertices[t[0]],
                    &self.vertices[t[1]],
                    &self.vertices[t[2]],
                    &self.vertices[t[3]],
                )
            })
            .sum()
    }

    /// Incident tetrahedra per vertex.
    pub fn vertex_tets(&self) -> Vec<Vec<usize>> {
        let mut map = vec![Vec::new(); self.vertices.len()];
        for (i, t) in self.tets.iter().enumerate() {
            for &v in t {
                map[v].push(i);
            }
        }
        map
    }

    /// Vertices where local polyhedral replacement may be applied:
    /// interior vertices whose incident elements are all tetrahedra
    /// (trivially true before any replacement), in ascending index order.
    pub fn replacement_centers(&self) -> Vec<usize> {
        let incident = self.vertex_tets();
        (0..self.vertices.len())
            .filter(|&v| !self.boundary_vertex[v] && !incident[v].is_empty())
            .collect()
    }
}

/// How a polyhedral cell was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// Untouched tetrahedron.
    Tet,
    /// Subdivided truncated tetrahedron (eight triangular facets).
    Octahedron,
    /// Hub cell whose facet vertices are equidistant from its apex vertex.
    Central,
    /// Tetrahedra clustered around a vertex.
    VertexCluster,
    /// Tetrahedra clustered around an edge.
    EdgeCluster,
}

impl CellKind {
    pub fn token(&self) -> &'static str {
        match self {
            CellKind::Tet => "tet",
            CellKind::Octahedron => "octa",
            CellKind::Central => "central",
            CellKind::VertexCluster => "vcluster",
            CellKind::EdgeCluster => "ecluster",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "tet" => CellKind::Tet,
            "octa" => CellKind::Octahedron,
            "central" => CellKind::Central,
            "vcluster" => CellKind::VertexCluster,
            "ecluster" => CellKind::EdgeCluster,
            _ => return None,
        })
    }
}

/// What lies on the other side of a cell boundary triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceNeighbor {
    Cell(usize),
    /// Domain boundary with a tag (box sides use 0..6).
    Boundary(u8),
}

/// One triangle of a cell's polyhedral boundary.
#[derive(Debug, Clone)]
pub struct BoundaryTri {
    /// Outward-oriented vertex ids (right-hand normal points out of the cell).
    pub verts: [usize; 3],
    /// Cell-local index of the owning sub-tetrahedron.
    pub subtet: usize,
    /// Local face index (opposite vertex) within the owning sub-tetrahedron.
    pub subtet_face: u8,
    pub neighbor: FaceNeighbor,
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub kind: CellKind,
    /// Global sub-tetrahedron ids; they tile the cell.
    pub subtets: Vec<usize>,
    pub boundary: Vec<BoundaryTri>,
}

/// Polyhedral mesh with a conforming tetrahedral subgrid.
#[derive(Debug, Clone)]
pub struct PolyMesh {
    pub vertices: Vec<Vector3<f64>>,
    pub boundary_vertex: Vec<bool>,
    /// Positively oriented sub-tetrahedra (global vertex ids).
    pub subtets: Vec<[usize; 4]>,
    pub cells: Vec<Cell>,
    /// Element count of the source tetrahedral grid.
    pub n_gamma: usize,
    /// Incident-tet counts of the replacements performed, in order.
    pub replacement_sizes: Vec<usize>,
    /// Volume of the source grid, for closure checks.
    pub base_volume: f64,
}

impl PolyMesh {
    /// Trivial polyhedral mesh: every tetrahedron is its own cell.
    pub fn from_tet_mesh(tm: &TetMesh) -> Result<Self> {
        let specs = tm
            .tets
            .iter()
            .map(|t| (CellKind::Tet, vec![*t]))
            .collect();
        assemble_poly_mesh(
            tm.vertices.clone(),
            tm.boundary_vertex.clone(),
            specs,
            tm.tets.len(),
            Vec::new(),
            tm.total_volume(),
        )
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn n_subtets(&self) -> usize {
        self.subtets.len()
    }

    pub fn total_volume(&self) -> f64 {
        self.subtets
            .iter()
            .map(|t| {
                tet_volume(
                    &self.vertices[t[0]],
                    &self.vertices[t[1]],
                    &self.vertices[t[2]],
                    &self.vertices[t[3]],
                )
            })
            .sum()
    }

    /// Distinct vertex ids referenced by a cell, ascending.
    pub fn cell_vertices(&self, cell: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.cells[cell]
            .subtets
            .iter()
            .flat_map(|&k| self.subtets[k])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Assign box-side tags 0..6 (x-min, x-max, y-min, y-max, z-min, z-max)
    /// to boundary triangles whose vertices lie on the corresponding plane.
    pub fn tag_box_boundaries(&mut self, bounds: &boxmesh::BoxBounds) {
        let eps = 1e-9 * bounds.extent().norm().max(1.0);
        let planes = [
            (0, bounds.min.x),
            (0, bounds.max.x),
            (1, bounds.min.y),
            (1, bounds.max.y),
            (2, bounds.min.z),
            (2, bounds.max.z),
        ];
        let verts = self.vertices.clone();
        for cell in &mut self.cells {
            for tri in &mut cell.boundary {
                if let FaceNeighbor::Boundary(tag) = &mut tri.neighbor {
                    for (side, (axis, plane)) in planes.iter().enumerate() {
                        if tri
                            .verts
                            .iter()
                            .all(|&v| (verts[v][*axis] - plane).abs() <= eps)
                        {
                            *tag = side as u8;
                            break;
                        }
                    }
                }
            }
        }
    }
}

/// Assemble a [`PolyMesh`] from per-cell sub-tetrahedra.
///
/// Re-orients sub-tetrahedra to positive volume, derives each cell's
/// boundary triangles (sub-tet faces not shared within the cell), and
/// resolves cross-cell neighbors. A triangle claimed by more than two
/// cells is a conformity fault.
pub fn assemble_poly_mesh(
    vertices: Vec<Vector3<f64>>,
    boundary_vertex: Vec<bool>,
    cell_specs: Vec<(CellKind, Vec<[usize; 4]>)>,
    n_gamma: usize,
    replacement_sizes: Vec<usize>,
    base_volume: f64,
) -> Result<PolyMesh> {
    let mut subtets = Vec::new();
    let mut cells = Vec::with_capacity(cell_specs.len());
    for (kind, mut local) in cell_specs {
        let mut ids = Vec::with_capacity(local.len());
        for t in &mut local {
            let vol = tet_volume(
                &vertices[t[0]],
                &vertices[t[1]],
                &vertices[t[2]],
                &vertices[t[3]],
            );
            if vol == 0.0 || !vol.is_finite() {
                return Err(Error::Geometry(format!(
                    "degenerate sub-tetrahedron {t:?} (volume {vol:e})"
                )));
            }
            if vol < 0.0 {
                t.swap(2, 3);
            }
            ids.push(subtets.len());
            subtets.push(*t);
        }
        cells.push(Cell {
            kind,
            subtets: ids,
            boundary: Vec::new(),
        });
    }

    // per-cell boundary: sub-tet faces not shared inside the cell
    for cell in &mut cells {
        let mut counts: BTreeMap<[usize; 3], Vec<(usize, u8)>> = BTreeMap::new();
        for (local, &k) in cell.subtets.iter().enumerate() {
            let t = subtets[k];
            for (fi, f) in TET_FACES_OUT.iter().enumerate() {
                let mut key = [t[f[0]], t[f[1]], t[f[2]]];
                key.sort_unstable();
                counts.entry(key).or_default().push((local, fi as u8));
            }
        }
        for (key, owners) in counts {
            match owners.len() {
                1 => {
                    let (local, fi) = owners[0];
                    let t = subtets[cell.subtets[local]];
                    let f = TET_FACES_OUT[fi as usize];
                    cell.boundary.push(BoundaryTri {
                        verts: [t[f[0]], t[f[1]], t[f[2]]],
                        subtet: local,
                        subtet_face: fi,
                        neighbor: FaceNeighbor::Boundary(0),
                    });
                }
                2 => {}
                n => {
                    return Err(Error::Conformity(format!(
                        "triangle {key:?} shared by {n} sub-tetrahedra of one cell"
                    )))
                }
            }
        }
    }

    // cross-cell neighbor resolution
    let mut global: BTreeMap<[usize; 3], Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for (ti, tri) in cell.boundary.iter().enumerate() {
            let mut key = tri.verts;
            key.sort_unstable();
            global.entry(key).or_default().push((ci, ti));
        }
    }
    for (key, owners) in global {
        match owners.len() {
            1 => {}
            2 => {
                let (c0, t0) = owners[0];
                let (c1, t1) = owners[1];
                cells[c0].boundary[t0].neighbor = FaceNeighbor::Cell(c1);
                cells[c1].boundary[t1].neighbor = FaceNeighbor::Cell(c0);
            }
            n => {
                return Err(Error::Conformity(format!(
                    "triangle {key:?} shared by {n} cells"
                )))
            }
        }
    }

    Ok(PolyMesh {
        vertices,
        boundary_vertex,
        subtets,
        cells,
        n_gamma,
        replacement_sizes,
        base_volume,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn two_tet_mesh() -> TetMesh {
        // two tets sharing the face (1,2,3)
        let vertices = vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(0.0, 1.0, 0.0),
            Vector3::new(0.0, 0.0, 1.0),
            Vector3::new(1.0, 1.0, 1.0),
        ];
        TetMesh::new(vertices, vec![[0, 1, 2, 3], [4, 1, 3, 2]], None).unwrap()
    }

    #[test]
    fn orientation_enforced() {
        let tm = two_tet_mesh();
        for t in &tm.tets {
            assert!(
                tet_volume(
                    &tm.vertices[t[0]],
                    &tm.vertices[t[1]],
                    &tm.vertices[t[2]],
                    &tm.vertices[t[3]],
                ) > 0.0
            );
        }
    }

    #[test]
    fn boundary_detection_all_vertices_on_hull() {
        let tm = two_tet_mesh();
        assert!(tm.boundary_vertex.iter().all(|&b| b));
        assert!(tm.replacement_centers().is_empty());
    }

    #[test]
    fn poly_mesh_neighbors_resolved() {
        let tm = two_tet_mesh();
        let pm = PolyMesh::from_tet_mesh(&tm).unwrap();
        assert_eq!(pm.n_cells(), 2);
        let shared: Vec<_> = pm.cells[0]
            .boundary
            .iter()
            .filter(|t| matches!(t.neighbor, FaceNeighbor::Cell(1)))
            .collect();
        assert_eq!(shared.len(), 1);
        assert_relative_eq!(pm.total_volume(), tm.total_volume(), max_relative = 1e-14);
    }

    #[test]
    fn nonmanifold_triangle_rejected() {
        let mut vertices = two_tet_mesh().vertices;
        vertices.push(Vector3::new(-1.0, -1.0, -1.0));
        // three cells claiming the same face (1,2,3)
        let specs = vec![
            (CellKind::Tet, vec![[0, 1, 2, 3]]),
            (CellKind::Tet, vec![[4, 1, 3, 2]]),
            (CellKind::Tet, vec![[5, 1, 2, 3]]),
        ];
        let flags = vec![true; vertices.len()];
        assert!(assemble_poly_mesh(vertices, flags, specs, 3, vec![], 1.0).is_err());
    }
}
