//! Agglomerated degree-of-freedom bookkeeping.
//!
//! Inside one polyhedral cell the basis is continuous: nodes shared
//! between sub-tetrahedra (vertices, edge nodes, face nodes) map to a
//! single cell DOF — the union without repetition. Node identity is
//! resolved topologically through canonical keys (never by coordinate
//! matching); geometric coincidence is asserted afterwards.

use crate::basis::matrices::face_signatures;
use crate::basis::{NodeLocation, UniversalMatrices};
use crate::error::{Error, Result};
use crate::mesh::{CellGeometry, PolyMesh};
use nalgebra::Vector3;
use std::collections::BTreeMap;

/// Topological identity of a basis node inside one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum NodeKey {
    Vertex(usize),
    /// Node at fraction `step / N` from `lo` towards `hi` (`lo < hi`).
    Edge { lo: usize, hi: usize, step: u8 },
    /// Interior face node; vertex ids ascending with matching weights.
    Face { verts: [usize; 3], weights: [u8; 3] },
    /// Node interior to one sub-tetrahedron (never shared).
    Cell { subtet: usize, node: u8 },
}

fn node_key(
    tet: &[usize; 4],
    subtet_global: usize,
    node_idx: usize,
    loc: &NodeLocation,
    degree: u8,
) -> NodeKey {
    match *loc {
        NodeLocation::Vertex(i) => NodeKey::Vertex(tet[i]),
        NodeLocation::Edge { i, j, step } => {
            let (gi, gj) = (tet[i], tet[j]);
            if gi < gj {
                NodeKey::Edge {
                    lo: gi,
                    hi: gj,
                    step,
                }
            } else {
                NodeKey::Edge {
                    lo: gj,
                    hi: gi,
                    step: degree - step,
                }
            }
        }
        NodeLocation::Face { verts, weights } => {
            let mut pairs = [
                (tet[verts[0]], weights[0]),
                (tet[verts[1]], weights[1]),
                (tet[verts[2]], weights[2]),
            ];
            pairs.sort_unstable();
            NodeKey::Face {
                verts: [pairs[0].0, pairs[1].0, pairs[2].0],
                weights: [pairs[0].1, pairs[1].1, pairs[2].1],
            }
        }
        NodeLocation::Interior => NodeKey::Cell {
            subtet: subtet_global,
            node: node_idx as u8,
        },
    }
}

/// Key of a canonical face node on the triangle with ascending global
/// vertex ids `g` and signature weights `sig`.
fn face_node_key(g: &[usize; 3], sig: &[u8; 3]) -> NodeKey {
    let nz: Vec<usize> = (0..3).filter(|&i| sig[i] > 0).collect();
    match nz.len() {
        1 => NodeKey::Vertex(g[nz[0]]),
        // g is ascending, so lo/hi ordering is immediate
        2 => NodeKey::Edge {
            lo: g[nz[0]],
            hi: g[nz[1]],
            step: sig[nz[1]],
        },
        _ => NodeKey::Face {
            verts: *g,
            weights: *sig,
        },
    }
}

/// Per-cell agglomerated DOF numbering.
#[derive(Debug, Clone)]
pub struct CellDofMap {
    /// Agglomerated spatial DOF count of the cell.
    pub n_dofs: usize,
    /// `[local subtet][local node] -> cell dof`.
    pub subtet_dofs: Vec<Vec<usize>>,
    /// Physical coordinates per cell DOF.
    pub coords: Vec<Vector3<f64>>,
    /// `[boundary tri][canonical face node] -> cell dof`.
    pub face_dofs: Vec<Vec<usize>>,
    /// `[boundary tri][canonical face node] -> node index local to the
    /// owning sub-tetrahedron`.
    pub face_local: Vec<Vec<usize>>,
}

/// DOF maps for every cell of the mesh.
#[derive(Debug, Clone)]
pub struct DofMaps {
    pub cells: Vec<CellDofMap>,
    pub degree: usize,
}

impl DofMaps {
    pub fn total_dofs(&self) -> usize {
        self.cells.iter().map(|c| c.n_dofs).sum()
    }
}

/// Resolve the agglomerated numbering for every cell.
pub fn build_cell_dof_maps(
    pm: &PolyMesh,
    geom: &CellGeometry,
    uni: &UniversalMatrices,
) -> Result<DofMaps> {
    let degree = uni.degree() as u8;
    let basis = &uni.basis;
    let np = basis.n_nodes();
    let fsigs = face_signatures(uni.degree());

    let mut cells = Vec::with_capacity(pm.n_cells());
    for (ci, cell) in pm.cells.iter().enumerate() {
        let h = geom.cells[ci].diameter;
        let tol = 1e-12 * h;
        let mut keys: BTreeMap<NodeKey, usize> = BTreeMap::new();
        let mut coords: Vec<Vector3<f64>> = Vec::new();
        let mut subtet_dofs = Vec::with_capacity(cell.subtets.len());
        for (local_k, &k) in cell.subtets.iter().enumerate() {
            let tet = &pm.subtets[k];
            let g = &geom.subtets[k];
            let mut dofs = Vec::with_capacity(np);
            for j in 0..np {
                let key = node_key(tet, k, j, &basis.locations[j], degree);
                let x = g.to_physical(&basis.nodes[j]);
                let dof = match keys.get(&key) {
                    Some(&d) => {
                        let dist = (coords[d] - x).norm();
                        if dist > tol {
                            return Err(Error::Conformity(format!(
                                "cell {ci}: node {key:?} of sub-tetrahedron {local_k} lands {dist:e} away from its first placement (tol {tol:e})"
                            )));
                        }
                        d
                    }
                    None => {
                        let d = coords.len();
                        keys.insert(key, d);
                        coords.push(x);
                        d
                    }
                };
                dofs.push(dof);
            }
            subtet_dofs.push(dofs);
        }

        // canonical face-node lists per boundary triangle
        let mut face_dofs = Vec::with_capacity(cell.boundary.len());
        let mut face_local = Vec::with_capacity(cell.boundary.len());
        for tri in &cell.boundary {
            let mut g = tri.verts;
            g.sort_unstable();
            let mut fd = Vec::with_capacity(fsigs.len());
            for sig in &fsigs {
                let key = face_node_key(&g, sig);
                let dof = *keys.get(&key).ok_or_else(|| {
                    Error::Conformity(format!(
                        "cell {ci}: boundary triangle {:?} expects node {key:?} which no sub-tetrahedron provides",
                        tri.verts
                    ))
                })?;
                fd.push(dof);
            }
            // local indices within the owning sub-tetrahedron
            let owner_dofs = &subtet_dofs[tri.subtet];
            let mut fl = Vec::with_capacity(fd.len());
            for &d in &fd {
                let local = owner_dofs.iter().position(|&x| x == d).ok_or_else(|| {
                    Error::Conformity(format!(
                        "cell {ci}: face node dof {d} is not a node of the owning sub-tetrahedron"
                    ))
                })?;
                fl.push(local);
            }
            face_dofs.push(fd);
            face_local.push(fl);
        }

        cells.push(CellDofMap {
            n_dofs: coords.len(),
            subtet_dofs,
            coords,
            face_dofs,
            face_local,
        });
    }
    Ok(DofMaps {
        cells,
        degree: uni.degree(),
    })
}
