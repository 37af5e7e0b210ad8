//! Local polyhedral replacement.
//!
//! Replacing the `n` tetrahedra incident at an interior vertex `v`:
//! every edge at `v` is split at distance `d = min incident edge / 2`,
//! each incident tetrahedron loses a small tip at `v` and becomes a
//! truncated tetrahedron (two triangular faces, three quadrilaterals),
//! the tips merge into one hub cell whose `n` triangular facets all have
//! their vertices on the sphere of radius `d` about `v`. Each truncated
//! tetrahedron is subdivided into 8 sub-tetrahedra from its barycenter
//! after fixing one diagonal per quadrilateral; the hub cell is
//! subdivided into `n` sub-tetrahedra from `v`. One replacement grows the
//! cell count by exactly one and the subgrid by `8n`.

use super::{assemble_poly_mesh, CellKind, PolyMesh, TetMesh};
use crate::error::{Error, Result};
use nalgebra::Vector3;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy)]
pub struct LprReport {
    /// Number of tetrahedra incident at the replaced vertex.
    pub incident: usize,
    /// Edge split distance.
    pub split_distance: f64,
}

struct BuildCell {
    kind: CellKind,
    subtets: Vec<[usize; 4]>,
}

/// Incremental polyhedral mesh construction by repeated replacement.
pub struct LprBuilder {
    vertices: Vec<Vector3<f64>>,
    boundary_vertex: Vec<bool>,
    cells: Vec<Option<BuildCell>>,
    vertex_cells: Vec<BTreeSet<usize>>,
    n_gamma: usize,
    replacement_sizes: Vec<usize>,
    base_volume: f64,
}

impl LprBuilder {
    pub fn new(tm: &TetMesh) -> Self {
        let mut vertex_cells = vec![BTreeSet::new(); tm.vertices.len()];
        let cells: Vec<Option<BuildCell>> = tm
            .tets
            .iter()
            .enumerate()
            .map(|(i, t)| {
                for &v in t {
                    vertex_cells[v].insert(i);
                }
                Some(BuildCell {
                    kind: CellKind::Tet,
                    subtets: vec![*t],
                })
            })
            .collect();
        Self {
            vertices: tm.vertices.clone(),
            boundary_vertex: tm.boundary_vertex.clone(),
            cells,
            vertex_cells,
            n_gamma: tm.tets.len(),
            replacement_sizes: Vec::new(),
            base_volume: tm.total_volume(),
        }
    }

    /// A vertex qualifies while it is interior and every incident element
    /// is still a plain tetrahedron.
    pub fn is_center(&self, v: usize) -> bool {
        v < self.vertices.len()
            && !self.boundary_vertex[v]
            && !self.vertex_cells[v].is_empty()
            && self.vertex_cells[v]
                .iter()
                .all(|&c| matches!(&self.cells[c], Some(bc) if bc.kind == CellKind::Tet))
    }

    /// Current replacement candidates in ascending vertex order.
    pub fn centers(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.is_center(v))
            .collect()
    }

    /// Apply one replacement at `v`.
    pub fn replace(&mut self, v: usize) -> Result<LprReport> {
        if !self.is_center(v) {
            return Err(Error::Logic(format!(
                "vertex {v} is not a valid replacement center"
            )));
        }
        let incident: Vec<usize> = self.vertex_cells[v].iter().copied().collect();
        let n = incident.len();
        let xv = self.vertices[v];

        // one split point per edge at v, at half the shortest incident edge
        let mut neighbors = BTreeSet::new();
        for &c in &incident {
            let tet = self.cells[c].as_ref().unwrap().subtets[0];
            for &w in &tet {
                if w != v {
                    neighbors.insert(w);
                }
            }
        }
        let d = 0.5
            * neighbors
                .iter()
                .map(|&w| (self.vertices[w] - xv).norm())
                .fold(f64::INFINITY, f64::min);
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Geometry(format!(
                "zero-length edge incident at vertex {v}"
            )));
        }
        let mut split: BTreeMap<usize, usize> = BTreeMap::new();
        for &w in &neighbors {
            let dir = (self.vertices[w] - xv).normalize();
            let id = self.vertices.len();
            self.vertices.push(xv + d * dir);
            self.boundary_vertex.push(false);
            split.insert(w, id);
        }

        let mut new_cells: Vec<BuildCell> = Vec::with_capacity(n + 1);
        let mut hub_faces: Vec<[usize; 3]> = Vec::with_capacity(n);
        for &c in &incident {
            let tet = self.cells[c].as_ref().unwrap().subtets[0];
            let others: Vec<usize> = tet.iter().copied().filter(|&w| w != v).collect();
            let (a, b, cc) = (others[0], others[1], others[2]);
            let (sa, sb, sc) = (split[&a], split[&b], split[&cc]);
            hub_faces.push([sa, sb, sc]);

            // truncated tetrahedron {a,b,c,sa,sb,sc}: barycenter apex,
            // 2 triangles + 3 quadrilaterals split by the canonical
            // diagonal through each quad's smallest vertex id
            let bary = (self.vertices[a]
                + self.vertices[b]
                + self.vertices[cc]
                + self.vertices[sa]
                + self.vertices[sb]
                + self.vertices[sc])
                / 6.0;
            let bary_id = self.vertices.len();
            self.vertices.push(bary);
            self.boundary_vertex.push(false);

            let mut tris: Vec<[usize; 3]> = vec![[a, b, cc], [sa, sb, sc]];
            for quad in [[a, b, sb, sa], [b, cc, sc, sb], [cc, a, sa, sc]] {
                tris.extend_from_slice(&split_quad(quad));
            }
            debug_assert_eq!(tris.len(), 8);
            let subtets = tris
                .iter()
                .map(|t| [t[0], t[1], t[2], bary_id])
                .collect();
            new_cells.push(BuildCell {
                kind: CellKind::Octahedron,
                subtets,
            });
        }
        new_cells.push(BuildCell {
            kind: CellKind::Central,
            subtets: hub_faces.iter().map(|f| [f[0], f[1], f[2], v]).collect(),
        });

        // swap old cells for new ones, keeping incidence maps current
        for &c in &incident {
            let old = self.cells[c].take().unwrap();
            for t in &old.subtets {
                for &w in t {
                    self.vertex_cells[w].remove(&c);
                }
            }
        }
        for bc in new_cells {
            let id = self.cells.len();
            for t in &bc.subtets {
                for &w in t {
                    self.vertex_cells[w].insert(id);
                }
            }
            self.cells.push(Some(bc));
        }
        self.replacement_sizes.push(n);
        Ok(LprReport {
            incident: n,
            split_distance: d,
        })
    }

    pub fn finish(self) -> Result<PolyMesh> {
        let specs = self
            .cells
            .into_iter()
            .flatten()
            .map(|bc| (bc.kind, bc.subtets))
            .collect();
        assemble_poly_mesh(
            self.vertices,
            self.boundary_vertex,
            specs,
            self.n_gamma,
            self.replacement_sizes,
            self.base_volume,
        )
    }
}

/// Split a quadrilateral given by cyclic corners into two triangles along
/// the diagonal incident to its smallest vertex id. Both cells sharing
/// the quad see the same four ids, hence pick the same diagonal.
fn split_quad(q: [usize; 4]) -> [[usize; 3]; 2] {
    let min = *q.iter().min().unwrap();
    if min == q[0] || min == q[2] {
        [[q[0], q[1], q[2]], [q[0], q[2], q[3]]]
    } else {
        [[q[0], q[1], q[3]], [q[1], q[2], q[3]]]
    }
}

/// Run replacement at every initially collected center, head of the list
/// first; vertices invalidated by earlier replacements are skipped.
pub fn generate_poly_mesh(tm: &TetMesh) -> Result<PolyMesh> {
    let mut builder = LprBuilder::new(tm);
    for v in tm.replacement_centers() {
        if builder.is_center(v) {
            builder.replace(v)?;
        }
    }
    builder.finish()
}

/// Hand-built mesh with one interior vertex: an octahedral hull
/// tetrahedralized from its center. Eight incident tetrahedra; hull edge
/// lengths can be scaled anisotropically through `radii`.
#[cfg(test)]
pub fn octahedral_star(radii: [f64; 3]) -> TetMesh {
    let vertices = vec![
        Vector3::new(0.0, 0.0, 0.0),
        Vector3::new(radii[0], 0.0, 0.0),
        Vector3::new(-radii[0], 0.0, 0.0),
        Vector3::new(0.0, radii[1], 0.0),
        Vector3::new(0.0, -radii[1], 0.0),
        Vector3::new(0.0, 0.0, radii[2]),
        Vector3::new(0.0, 0.0, -radii[2]),
    ];
    let tets = vec![
        [0, 1, 3, 5],
        [0, 3, 2, 5],
        [0, 2, 4, 5],
        [0, 4, 1, 5],
        [0, 3, 1, 6],
        [0, 2, 3, 6],
        [0, 4, 2, 6],
        [0, 1, 4, 6],
    ];
    TetMesh::new(vertices, tets, None).unwrap()
}
