//! Structural mesh diagnostics. Collects violations instead of aborting.

use super::{tet_volume, PolyMesh, TET_FACES_OUT};
use nalgebra::Vector3;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A sub-tetrahedron with non-positive signed volume.
    NonPositiveVolume { subtet: usize, volume: f64 },
    /// A triangle shared by an unexpected number of sub-tetrahedra.
    NonConformingTriangle { verts: [usize; 3], count: usize },
    /// Cell volumes do not add up to the source mesh volume.
    VolumeClosure { total: f64, expected: f64 },
    /// Outer surface does not close up (area vector defect).
    OpenBoundary { defect: f64 },
    /// A boundary triangle whose stored orientation points into its cell.
    InwardNormal { cell: usize, triangle: usize },
}

/// Check conformity, positivity, volume conservation, and boundary
/// closure. Returns an empty list for a sound mesh.
pub fn validate_mesh(pm: &PolyMesh) -> Vec<Violation> {
    let mut out = Vec::new();

    let mut volumes = Vec::with_capacity(pm.subtets.len());
    for (i, t) in pm.subtets.iter().enumerate() {
        let v = tet_volume(
            &pm.vertices[t[0]],
            &pm.vertices[t[1]],
            &pm.vertices[t[2]],
            &pm.vertices[t[3]],
        );
        if !(v > 0.0) {
            out.push(Violation::NonPositiveVolume {
                subtet: i,
                volume: v,
            });
        }
        volumes.push(v);
    }

    // every triangle of the subgrid is shared by exactly two
    // sub-tetrahedra, or lies on the domain boundary
    let mut counts: BTreeMap<[usize; 3], usize> = BTreeMap::new();
    for t in &pm.subtets {
        for f in &TET_FACES_OUT {
            let mut key = [t[f[0]], t[f[1]], t[f[2]]];
            key.sort_unstable();
            *counts.entry(key).or_default() += 1;
        }
    }
    let mut area_defect = Vector3::zeros();
    let mut boundary_area = 0.0;
    for (key, c) in &counts {
        match c {
            1 => {
                // orientation unknown from the sorted key; accumulate via
                // the owning sub-tetrahedron below
            }
            2 => {}
            n => out.push(Violation::NonConformingTriangle {
                verts: *key,
                count: *n,
            }),
        }
    }
    for t in &pm.subtets {
        for f in &TET_FACES_OUT {
            let tri = [t[f[0]], t[f[1]], t[f[2]]];
            let mut key = tri;
            key.sort_unstable();
            if counts[&key] == 1 {
                let a = pm.vertices[tri[0]];
                let b = pm.vertices[tri[1]];
                let c = pm.vertices[tri[2]];
                let av = 0.5 * (b - a).cross(&(c - a));
                area_defect += av;
                boundary_area += av.norm();
            }
        }
    }
    if boundary_area > 0.0 {
        let defect = area_defect.norm() / boundary_area;
        if defect > 1e-12 {
            out.push(Violation::OpenBoundary { defect });
        }
    }

    let total: f64 = volumes.iter().sum();
    if pm.base_volume > 0.0 && (total - pm.base_volume).abs() > 1e-12 * pm.base_volume {
        out.push(Violation::VolumeClosure {
            total,
            expected: pm.base_volume,
        });
    }

    // stored boundary triangles must point out of their cell
    for (ci, cell) in pm.cells.iter().enumerate() {
        for (ti, tri) in cell.boundary.iter().enumerate() {
            let a = pm.vertices[tri.verts[0]];
            let b = pm.vertices[tri.verts[1]];
            let c = pm.vertices[tri.verts[2]];
            let n = (b - a).cross(&(c - a));
            let t = pm.subtets[cell.subtets[tri.subtet]];
            let centroid = (pm.vertices[t[0]]
                + pm.vertices[t[1]]
                + pm.vertices[t[2]]
                + pm.vertices[t[3]])
                / 4.0;
            let face_centroid = (a + b + c) / 3.0;
            if n.dot(&(face_centroid - centroid)) <= 0.0 {
                out.push(Violation::InwardNormal {
                    cell: ci,
                    triangle: ti,
                });
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::super::{build_box_tet_mesh, generate_poly_mesh, BoxBounds};
    use super::*;
    use nalgebra::Vector3;

    #[test]
    fn fresh_mesh_is_clean() {
        let bounds = BoxBounds::new(Vector3::zeros(), Vector3::new(2.0, 2.0, 2.0));
        let tm = build_box_tet_mesh(&bounds, 1.0).unwrap();
        let pm = generate_poly_mesh(&tm).unwrap();
        assert!(validate_mesh(&pm).is_empty());
    }

    #[test]
    fn injected_inversion_is_reported_once() {
        let bounds = BoxBounds::new(Vector3::zeros(), Vector3::new(2.0, 2.0, 2.0));
        let tm = build_box_tet_mesh(&bounds, 1.0).unwrap();
        let mut pm = generate_poly_mesh(&tm).unwrap();
        pm.subtets[7].swap(0, 1);
        let violations = validate_mesh(&pm);
        let inversions = violations
            .iter()
            .filter(|v| matches!(v, Violation::NonPositiveVolume { .. }))
            .count();
        assert_eq!(inversions, 1);
    }

    #[test]
    fn volume_closure_tolerance_on_boxes() {
        for h in [0.9, 0.61, 0.47] {
            let bounds = BoxBounds::new(Vector3::zeros(), Vector3::new(2.0, 3.0, 2.5));
            let tm = build_box_tet_mesh(&bounds, h).unwrap();
            let pm = generate_poly_mesh(&tm).unwrap();
            assert!((pm.total_volume() - bounds.volume()).abs() <= 1e-12 * bounds.volume());
            assert!(validate_mesh(&pm).is_empty());
        }
    }
}
