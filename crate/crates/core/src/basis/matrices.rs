//! Universal reference-element matrices, assembled once per degree by
//! quadrature and reused verbatim for every physical sub-tetrahedron.

use super::lagrange::ReferenceBasis;
use super::quadrature::{quadrature, Domain};
use super::time::TemporalBasis;
use crate::error::Result;
use nalgebra::{DMatrix, Vector2, Vector3};

/// Canonical enumeration of face-node signatures `[a,b,c]` with
/// `a+b+c = N` over the three face vertices. Shared by the face mass
/// matrix and the DOF maps so that both sides of a physical face agree on
/// node ordering.
pub fn face_signatures(degree: usize) -> Vec<[u8; 3]> {
    let n = degree as u8;
    let mut sigs = Vec::new();
    for a in (0..=n).rev() {
        for b in (0..=(n - a)).rev() {
            sigs.push([a, b, n - a - b]);
        }
    }
    sigs
}

/// Face node count `(N+1)(N+2)/2`.
pub fn face_node_count(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

fn face_basis_eval(sigs: &[[u8; 3]], degree: usize, p: &Vector2<f64>) -> Vec<f64> {
    let lam = [1.0 - p.x - p.y, p.x, p.y];
    let n = degree as f64;
    sigs.iter()
        .map(|sig| {
            let mut v = 1.0;
            for i in 0..3 {
                for k in 0..sig[i] {
                    v *= (n * lam[i] - k as f64) / (sig[i] - k) as f64;
                }
            }
            v
        })
        .collect()
}

/// Everything the solver precomputes on the reference tetrahedron and the
/// reference time interval for one polynomial degree.
#[derive(Debug, Clone)]
pub struct UniversalMatrices {
    pub basis: ReferenceBasis,
    pub time: TemporalBasis,
    /// Spatial mass `int phi_m phi_l` (N_p x N_p).
    pub mass: DMatrix<f64>,
    /// Derivative matrices `int d(phi_m)/d(xi_d) phi_l` per direction.
    pub vder: [DMatrix<f64>; 3],
    /// Nodal differentiation: `dnodes[d][(j, l)] = d(phi_l)/d(xi_d)` at
    /// node `j`; maps nodal values to nodal reference derivatives.
    pub dnodes: [DMatrix<f64>; 3],
    /// Canonical face signatures (shared node ordering on any triangle).
    pub face_sigs: Vec<[u8; 3]>,
    /// Face mass matrix with the reference measure folded out, so that
    /// `area * face_mass` is the physical face integral `int psi_m psi_l`.
    pub face_mass: DMatrix<f64>,
}

impl UniversalMatrices {
    pub fn new(degree: usize) -> Result<Self> {
        let basis = ReferenceBasis::new(degree)?;
        let time = TemporalBasis::new(degree + 1);
        let np = basis.n_nodes();

        let rule = quadrature(Domain::Tetrahedron, 2 * degree + 2)?;
        let mut mass = DMatrix::zeros(np, np);
        let mut vder = [
            DMatrix::zeros(np, np),
            DMatrix::zeros(np, np),
            DMatrix::zeros(np, np),
        ];
        for (pt, w) in rule.points.iter().zip(&rule.weights) {
            let x = Vector3::new(pt[0], pt[1], pt[2]);
            let vals = basis.eval(&x);
            let grads = basis.eval_grad(&x);
            for m in 0..np {
                for l in 0..np {
                    mass[(m, l)] += w * vals[m] * vals[l];
                    for d in 0..3 {
                        vder[d][(m, l)] += w * grads[m][d] * vals[l];
                    }
                }
            }
        }

        let mut dnodes = [
            DMatrix::zeros(np, np),
            DMatrix::zeros(np, np),
            DMatrix::zeros(np, np),
        ];
        for (j, node) in basis.nodes.iter().enumerate() {
            let grads = basis.eval_grad(node);
            for l in 0..np {
                for d in 0..3 {
                    dnodes[d][(j, l)] = grads[l][d];
                }
            }
        }

        let face_sigs = face_signatures(degree);
        let nf = face_sigs.len();
        let tri = quadrature(Domain::Triangle, 2 * degree + 2)?;
        let mut face_mass = DMatrix::zeros(nf, nf);
        for (pt, w) in tri.points.iter().zip(&tri.weights) {
            let vals = face_basis_eval(&face_sigs, degree, &Vector2::new(pt[0], pt[1]));
            for m in 0..nf {
                for l in 0..nf {
                    // factor 2 folds out the reference triangle measure
                    face_mass[(m, l)] += 2.0 * w * vals[m] * vals[l];
                }
            }
        }

        Ok(Self {
            basis,
            time,
            mass,
            vder,
            dnodes,
            face_sigs,
            face_mass,
        })
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn n_nodes(&self) -> usize {
        self.basis.n_nodes()
    }

    pub fn n_time_nodes(&self) -> usize {
        self.time.n_nodes()
    }

    /// Space-time nodes per sub-tetrahedron.
    pub fn n_spacetime(&self) -> usize {
        self.n_nodes() * self.n_time_nodes()
    }

    /// Materialized space-time stiffness `int theta_m d(theta_l)/d(xi_d)`
    /// for verification; the solver contracts the tensor factors instead.
    pub fn spacetime_stiffness(&self, d: usize) -> DMatrix<f64> {
        let np = self.n_nodes();
        let nt = self.n_time_nodes();
        let mut k = DMatrix::zeros(np * nt, np * nt);
        for m in 0..np {
            for p in 0..nt {
                for l in 0..np {
                    for q in 0..nt {
                        k[(m * nt + p, l * nt + q)] =
                            self.vder[d][(l, m)] * self.time.mass[(p, q)];
                    }
                }
            }
        }
        k
    }
}
