//! Baseline polyhedral meshing by plain clustering: merge the tetrahedra
//! incident at an interior vertex (VT) or at an interior edge (ET),
//! without splitting anything. The subgrid is the original tetrahedra.

use super::{assemble_poly_mesh, CellKind, PolyMesh, TetMesh, TET_FACES_OUT};
use crate::error::Result;
use std::collections::BTreeMap;

fn finish(
    tm: &TetMesh,
    clusters: Vec<(CellKind, Vec<usize>)>,
    consumed: &[bool],
) -> Result<PolyMesh> {
    let mut specs: Vec<(CellKind, Vec<[usize; 4]>)> = clusters
        .into_iter()
        .map(|(kind, tets)| (kind, tets.into_iter().map(|t| tm.tets[t]).collect()))
        .collect();
    for (i, t) in tm.tets.iter().enumerate() {
        if !consumed[i] {
            specs.push((CellKind::Tet, vec![*t]));
        }
    }
    assemble_poly_mesh(
        tm.vertices.clone(),
        tm.boundary_vertex.clone(),
        specs,
        tm.tets.len(),
        Vec::new(),
        tm.total_volume(),
    )
}

/// Merge the tetrahedra incident at each eligible vertex into one cell.
/// A vertex is eligible while it is interior and none of its incident
/// tetrahedra has been consumed by an earlier cluster; vertices are
/// processed in ascending order.
pub fn agglomerate_vt(tm: &TetMesh) -> Result<PolyMesh> {
    let incident = tm.vertex_tets();
    let mut consumed = vec![false; tm.tets.len()];
    let mut clusters = Vec::new();
    for v in 0..tm.vertices.len() {
        if tm.boundary_vertex[v] || incident[v].is_empty() {
            continue;
        }
        if incident[v].iter().any(|&t| consumed[t]) {
            continue;
        }
        for &t in &incident[v] {
            consumed[t] = true;
        }
        clusters.push((CellKind::VertexCluster, incident[v].clone()));
    }
    finish(tm, clusters, &consumed)
}

/// Merge the tetrahedra incident at each eligible edge into one cell.
/// An edge is eligible while it is interior (not an edge of any boundary
/// triangle) and none of its incident tetrahedra has been consumed; edges
/// are processed in ascending `(min, max)` order.
pub fn agglomerate_et(tm: &TetMesh) -> Result<PolyMesh> {
    let mut edge_tets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, t) in tm.tets.iter().enumerate() {
        for a in 0..4 {
            for b in (a + 1)..4 {
                let key = (t[a].min(t[b]), t[a].max(t[b]));
                edge_tets.entry(key).or_default().push(i);
            }
        }
    }
    // boundary edges: edges of once-counted faces
    let mut face_counts: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for t in &tm.tets {
        for f in &TET_FACES_OUT {
            let mut key = [t[f[0]], t[f[1]], t[f[2]]];
            key.sort_unstable();
            *face_counts.entry(key).or_default() += 1;
        }
    }
    let mut boundary_edges = std::collections::BTreeSet::new();
    for (key, c) in &face_counts {
        if *c == 1 {
            boundary_edges.insert((key[0], key[1]));
            boundary_edges.insert((key[0], key[2]));
            boundary_edges.insert((key[1], key[2]));
        }
    }

    let mut consumed = vec![false; tm.tets.len()];
    let mut clusters = Vec::new();
    for (edge, tets) in &edge_tets {
        if boundary_edges.contains(edge) || tets.len() < 2 {
            continue;
        }
        if tets.iter().any(|&t| consumed[t]) {
            continue;
        }
        for &t in tets {
            consumed[t] = true;
        }
        clusters.push((CellKind::EdgeCluster, tets.clone()));
    }
    finish(tm, clusters, &consumed)
}
