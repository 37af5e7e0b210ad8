//! Element-wise operators: the assembled cell mass matrix and the upwind
//! space-time system matrix with its stored inverse.
//!
//! Both are sums over the cell's sub-tetrahedra of a universal reference
//! matrix scaled by that sub-tetrahedron's Jacobian determinant and
//! scattered through the agglomerated numbering.

use super::dofmap::{CellDofMap, DofMaps};
use crate::basis::UniversalMatrices;
use crate::error::{Error, Result};
use crate::mesh::{CellGeometry, PolyMesh};
use nalgebra::{Cholesky, DMatrix, Dyn};
use rayon::prelude::*;

/// Space-time DOF index: spatial dof major, temporal node minor.
#[inline]
pub fn st_index(dof: usize, q: usize, n_time: usize) -> usize {
    dof * n_time + q
}

/// Assembled cell mass matrix `sum_k det_k M_hat` scattered into the
/// agglomerated numbering.
pub fn assemble_cell_mass(
    cell_dofs: &CellDofMap,
    dets: &[f64],
    uni: &UniversalMatrices,
) -> DMatrix<f64> {
    let n = cell_dofs.n_dofs;
    let np = uni.n_nodes();
    let mut mass = DMatrix::zeros(n, n);
    for (k, dofs) in cell_dofs.subtet_dofs.iter().enumerate() {
        let det = dets[k];
        for m in 0..np {
            for l in 0..np {
                mass[(dofs[m], dofs[l])] += det * uni.mass[(m, l)];
            }
        }
    }
    mass
}

/// Assembled upwind space-time matrix
/// `sum_k det_k [theta theta|_{tau=1} - int d(theta_m)/d(tau) theta_l]`
/// in the cell's space-time numbering.
pub fn assemble_cell_k1(
    cell_dofs: &CellDofMap,
    dets: &[f64],
    uni: &UniversalMatrices,
) -> DMatrix<f64> {
    let nt = uni.n_time_nodes();
    let n = cell_dofs.n_dofs * nt;
    let np = uni.n_nodes();
    let mut k1 = DMatrix::zeros(n, n);
    for (k, dofs) in cell_dofs.subtet_dofs.iter().enumerate() {
        let det = dets[k];
        for m in 0..np {
            for l in 0..np {
                let w = det * uni.mass[(m, l)];
                for p in 0..nt {
                    for q in 0..nt {
                        k1[(st_index(dofs[m], p, nt), st_index(dofs[l], q, nt))] +=
                            w * uni.time.upwind[(p, q)];
                    }
                }
            }
        }
    }
    k1
}

/// Per-cell factorized operators.
pub struct CellOps {
    pub n_dofs: usize,
    pub mass_chol: Cholesky<f64, Dyn>,
    pub k1_inv: DMatrix<f64>,
}

/// Build mass factorizations and stored space-time inverses for every
/// cell. The inversion residual `max |K1 K1^{-1} - I|` must stay below
/// `1e-10`.
pub fn build_cell_ops(
    pm: &PolyMesh,
    geom: &CellGeometry,
    dofs: &DofMaps,
    uni: &UniversalMatrices,
) -> Result<Vec<CellOps>> {
    (0..pm.n_cells())
        .into_par_iter()
        .map(|ci| {
            let cd = &dofs.cells[ci];
            let dets: Vec<f64> = pm.cells[ci]
                .subtets
                .iter()
                .map(|&k| geom.subtets[k].det)
                .collect();
            let mass = assemble_cell_mass(cd, &dets, uni);
            let mass_chol = mass.clone().cholesky().ok_or_else(|| {
                Error::Setup(format!("cell {ci}: mass matrix is not positive definite"))
            })?;
            let k1 = assemble_cell_k1(cd, &dets, uni);
            let k1_inv = k1.clone().lu().try_inverse().ok_or_else(|| {
                Error::Setup(format!("cell {ci}: space-time system matrix is singular"))
            })?;
            let residual = (&k1 * &k1_inv - DMatrix::identity(k1.nrows(), k1.ncols()))
                .amax();
            if residual > 1e-10 {
                return Err(Error::Setup(format!(
                    "cell {ci}: inversion residual {residual:e} exceeds 1e-10"
                )));
            }
            Ok(CellOps {
                n_dofs: cd.n_dofs,
                mass_chol,
                k1_inv,
            })
        })
        .collect()
}
