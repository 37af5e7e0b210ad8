//! Global face list with both-side DOF traces in a shared canonical node
//! order, so the two cells at an interface address the same physical
//! nodes by the same index.

use super::dofmap::DofMaps;
use crate::error::{Error, Result};
use crate::mesh::{CellGeometry, FaceNeighbor, PolyMesh};
use nalgebra::Vector3;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct FaceInfo {
    /// `(cell, boundary-triangle index)` on the owner side.
    pub owner: (usize, usize),
    /// Present for internal faces.
    pub neighbor: Option<(usize, usize)>,
    /// Boundary tag, meaningful when `neighbor` is `None`.
    pub tag: u8,
    pub area: f64,
    /// Unit normal, outward for the owner cell.
    pub normal: Vector3<f64>,
    pub h_owner: f64,
    pub h_neighbor: f64,
    /// Canonical face node coordinates.
    pub node_coords: Vec<Vector3<f64>>,
}

#[derive(Debug, Clone)]
pub struct MeshFaces {
    pub faces: Vec<FaceInfo>,
    /// `[cell][boundary tri] -> (global face id, cell is owner)`.
    pub cell_faces: Vec<Vec<(usize, bool)>>,
}

impl MeshFaces {
    pub fn n_internal(&self) -> usize {
        self.faces.iter().filter(|f| f.neighbor.is_some()).count()
    }
}

/// Pair up cell boundary triangles into global faces. The owner is the
/// lower cell id; both sides' canonical node lists must coincide
/// geometrically to `1e-12 h`.
pub fn build_face_maps(
    pm: &PolyMesh,
    geom: &CellGeometry,
    dofs: &DofMaps,
) -> Result<MeshFaces> {
    let mut lookup: BTreeMap<[usize; 3], (usize, usize)> = BTreeMap::new();
    let mut faces = Vec::new();
    let mut cell_faces: Vec<Vec<(usize, bool)>> = pm
        .cells
        .iter()
        .map(|c| vec![(usize::MAX, false); c.boundary.len()])
        .collect();

    for (ci, cell) in pm.cells.iter().enumerate() {
        for (ti, tri) in cell.boundary.iter().enumerate() {
            let mut key = tri.verts;
            key.sort_unstable();
            match tri.neighbor {
                FaceNeighbor::Boundary(tag) => {
                    let fid = faces.len();
                    let fg = &geom.faces[ci][ti];
                    let cd = &dofs.cells[ci];
                    faces.push(FaceInfo {
                        owner: (ci, ti),
                        neighbor: None,
                        tag,
                        area: fg.area,
                        normal: fg.normal,
                        h_owner: geom.cells[ci].diameter,
                        h_neighbor: geom.cells[ci].diameter,
                        node_coords: cd.face_dofs[ti]
                            .iter()
                            .map(|&d| cd.coords[d])
                            .collect(),
                    });
                    cell_faces[ci][ti] = (fid, true);
                }
                FaceNeighbor::Cell(_) => {
                    if let Some(&(cj, tj)) = lookup.get(&key) {
                        // second visit: ci is the neighbor, cj the owner
                        let fid = faces.len();
                        let fg = &geom.faces[cj][tj];
                        let own = &dofs.cells[cj];
                        let other = &dofs.cells[ci];
                        let node_coords: Vec<Vector3<f64>> = own.face_dofs[tj]
                            .iter()
                            .map(|&d| own.coords[d])
                            .collect();
                        let tol = 1e-12 * geom.cells[cj].diameter.max(geom.cells[ci].diameter);
                        for (c, &d) in other.face_dofs[ti].iter().enumerate() {
                            let dist = (other.coords[d] - node_coords[c]).norm();
                            if dist > tol {
                                return Err(Error::Conformity(format!(
                                    "face {key:?}: paired node {c} separated by {dist:e} between cells {cj} and {ci}"
                                )));
                            }
                        }
                        faces.push(FaceInfo {
                            owner: (cj, tj),
                            neighbor: Some((ci, ti)),
                            tag: 0,
                            area: fg.area,
                            normal: fg.normal,
                            h_owner: geom.cells[cj].diameter,
                            h_neighbor: geom.cells[ci].diameter,
                            node_coords,
                        });
                        cell_faces[cj][tj] = (fid, true);
                        cell_faces[ci][ti] = (fid, false);
                    } else {
                        lookup.insert(key, (ci, ti));
                    }
                }
            }
        }
    }

    for (ci, list) in cell_faces.iter().enumerate() {
        for (ti, &(fid, _)) in list.iter().enumerate() {
            if fid == usize::MAX {
                return Err(Error::Conformity(format!(
                    "cell {ci} boundary triangle {ti} was never paired"
                )));
            }
        }
    }

    Ok(MeshFaces { faces, cell_faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::afe::dofmap::build_cell_dof_maps;
    use crate::basis::UniversalMatrices;
    use crate::mesh::{build_box_tet_mesh, compute_geometry, generate_poly_mesh, BoxBounds};
    use nalgebra::Vector3;

    fn setup(degree: usize) -> (crate::mesh::PolyMesh, CellGeometry, DofMaps, MeshFaces) {
        let bounds = BoxBounds::new(Vector3::zeros(), Vector3::new(2.0, 2.0, 2.0));
        let tm = build_box_tet_mesh(&bounds, 1.0).unwrap();
        let pm = generate_poly_mesh(&tm).unwrap();
        let geom = compute_geometry(&pm).unwrap();
        let uni = UniversalMatrices::new(degree).unwrap();
        let dofs = build_cell_dof_maps(&pm, &geom, &uni).unwrap();
        let faces = build_face_maps(&pm, &geom, &dofs).unwrap();
        (pm, geom, dofs, faces)
    }

    #[test]
    fn pairing_is_involutive_and_coincident() {
        let (pm, _geom, dofs, faces) = setup(2);
        for f in &faces.faces {
            if let Some((cj, tj)) = f.neighbor {
                let (ci, ti) = f.owner;
                let a = &dofs.cells[ci];
                let b = &dofs.cells[cj];
                for (c, (&da, &db)) in a.face_dofs[ti]
                    .iter()
                    .zip(b.face_dofs[tj].iter())
                    .enumerate()
                {
                    let dist = (a.coords[da] - b.coords[db]).norm();
                    assert!(dist < 1e-10, "node {c} mismatch: {dist:e}");
                }
            }
        }
        drop(pm);
    }

    #[test]
    fn paired_dof_count_matches_face_node_count() {
        for degree in 1..=3usize {
            let (_pm, _geom, _dofs, faces) = setup(degree);
            let per_face = (degree + 1) * (degree + 2) / 2;
            let total: usize = faces
                .faces
                .iter()
                .filter(|f| f.neighbor.is_some())
                .map(|f| f.node_coords.len())
                .sum();
            assert_eq!(total, faces.n_internal() * per_face);
        }
    }

    #[test]
    fn every_triangle_accounted_for() {
        let (pm, _geom, _dofs, faces) = setup(1);
        let total_btris: usize = pm.cells.iter().map(|c| c.boundary.len()).sum();
        let counted: usize = faces
            .faces
            .iter()
            .map(|f| if f.neighbor.is_some() { 2 } else { 1 })
            .sum();
        assert_eq!(total_btris, counted);
    }
}
