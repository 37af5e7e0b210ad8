//! Nodal Lagrange bases on the unit reference tetrahedron
//! `{ (r,s,t) : r,s,t >= 0, r+s+t <= 1 }` with vertices
//! `(0,0,0), (1,0,0), (0,1,0), (0,0,1)`, for degrees 1 to 3.
//!
//! Every node is identified by its barycentric exponent signature
//! `(a0,a1,a2,a3)` with `a0+a1+a2+a3 = N`; the basis function peaking at
//! that node is the classical equispaced-lattice product
//! `prod_i prod_{k<a_i} (N lambda_i - k)/(a_i - k)`, which reproduces the
//! familiar vertex/edge/face formulas (e.g. `phi = 4 lambda_1 lambda_2`
//! for a quadratic edge midpoint).

use crate::error::{Error, Result};
use nalgebra::Vector3;

/// Node count for degree `n`: `(N+1)(N+2)(N+3)/6`.
pub fn node_count(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Classification of a reference node by which sub-simplex carries it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeLocation {
    /// Local tetrahedron vertex index 0..4.
    Vertex(usize),
    /// Local edge `(i, j)` with `i < j`; `step` is the barycentric weight of
    /// vertex `j`, so the node sits at fraction `step / N` from `i` to `j`.
    Edge { i: usize, j: usize, step: u8 },
    /// Local face `{i, j, k}` (ascending) with barycentric weights of the
    /// three face vertices.
    Face {
        verts: [usize; 3],
        weights: [u8; 3],
    },
    /// Strictly interior node (first appears at degree 4).
    Interior,
}

/// Degree-`N` Lagrange basis on the reference tetrahedron.
#[derive(Debug, Clone)]
pub struct ReferenceBasis {
    pub degree: usize,
    /// Barycentric exponent signature per node, summing to `degree`.
    pub signatures: Vec<[u8; 4]>,
    /// Node coordinates `(r, s, t)`.
    pub nodes: Vec<Vector3<f64>>,
    pub locations: Vec<NodeLocation>,
}

/// Node signatures in the published ordering: vertices, then edge nodes,
/// then face nodes (each edge walked from its lower-index endpoint as
/// listed, faces by their bubble node).
fn signatures(degree: usize) -> Result<Vec<[u8; 4]>> {
    let sigs: Vec<[u8; 4]> = match degree {
        1 => vec![[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        2 => vec![
            [2, 0, 0, 0],
            [0, 2, 0, 0],
            [0, 0, 2, 0],
            [0, 0, 0, 2],
            [1, 1, 0, 0],
            [0, 1, 1, 0],
            [1, 0, 1, 0],
            [1, 0, 0, 1],
            [0, 1, 0, 1],
            [0, 0, 1, 1],
        ],
        3 => vec![
            [3, 0, 0, 0],
            [0, 3, 0, 0],
            [0, 0, 3, 0],
            [0, 0, 0, 3],
            [2, 1, 0, 0],
            [1, 2, 0, 0],
            [0, 2, 1, 0],
            [0, 1, 2, 0],
            [1, 0, 2, 0],
            [2, 0, 1, 0],
            [2, 0, 0, 1],
            [1, 0, 0, 2],
            [0, 1, 0, 2],
            [0, 2, 0, 1],
            [0, 0, 1, 2],
            [0, 0, 2, 1],
            [1, 1, 1, 0],
            [1, 1, 0, 1],
            [1, 0, 1, 1],
            [0, 1, 1, 1],
        ],
        _ => {
            return Err(Error::Config(format!(
                "unsupported basis degree {degree}; supported degrees are 1, 2, 3"
            )))
        }
    };
    Ok(sigs)
}

fn classify(sig: &[u8; 4]) -> NodeLocation {
    let nz: Vec<usize> = (0..4).filter(|&i| sig[i] > 0).collect();
    match nz.len() {
        1 => NodeLocation::Vertex(nz[0]),
        2 => NodeLocation::Edge {
            i: nz[0],
            j: nz[1],
            step: sig[nz[1]],
        },
        3 => NodeLocation::Face {
            verts: [nz[0], nz[1], nz[2]],
            weights: [sig[nz[0]], sig[nz[1]], sig[nz[2]]],
        },
        _ => NodeLocation::Interior,
    }
}

impl ReferenceBasis {
    pub fn new(degree: usize) -> Result<Self> {
        let signatures = signatures(degree)?;
        debug_assert_eq!(signatures.len(), node_count(degree));
        let nd = degree as f64;
        let nodes = signatures
            .iter()
            .map(|s| Vector3::new(s[1] as f64 / nd, s[2] as f64 / nd, s[3] as f64 / nd))
            .collect();
        let locations = signatures.iter().map(classify).collect();
        Ok(Self {
            degree,
            signatures,
            nodes,
            locations,
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.signatures.len()
    }

    /// All basis values at `(r, s, t)`.
    pub fn eval(&self, p: &Vector3<f64>) -> Vec<f64> {
        let lam = [1.0 - p.x - p.y - p.z, p.x, p.y, p.z];
        let n = self.degree as f64;
        self.signatures
            .iter()
            .map(|sig| {
                let mut v = 1.0;
                for i in 0..4 {
                    for k in 0..sig[i] {
                        v *= (n * lam[i] - k as f64) / (sig[i] - k) as f64;
                    }
                }
                v
            })
            .collect()
    }

    /// All basis gradients `(d/dr, d/ds, d/dt)` at `(r, s, t)`.
    pub fn eval_grad(&self, p: &Vector3<f64>) -> Vec<Vector3<f64>> {
        let lam = [1.0 - p.x - p.y - p.z, p.x, p.y, p.z];
        // d lambda_i / d(r,s,t)
        const DLAM: [[f64; 3]; 4] = [
            [-1.0, -1.0, -1.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ];
        let n = self.degree as f64;
        self.signatures
            .iter()
            .map(|sig| {
                // factors per barycentric coordinate and their derivatives
                // w.r.t. that coordinate
                let mut val = [1.0f64; 4];
                let mut der = [0.0f64; 4];
                for i in 0..4 {
                    for k in 0..sig[i] {
                        let term = (n * lam[i] - k as f64) / (sig[i] - k) as f64;
                        let dterm = n / (sig[i] - k) as f64;
                        der[i] = der[i] * term + dterm * val[i];
                        val[i] *= term;
                    }
                }
                let mut g = Vector3::zeros();
                for i in 0..4 {
                    if sig[i] == 0 {
                        continue;
                    }
                    let mut others = 1.0;
                    for j in 0..4 {
                        if j != i {
                            others *= val[j];
                        }
                    }
                    let coeff = der[i] * others;
                    g.x += coeff * DLAM[i][0];
                    g.y += coeff * DLAM[i][1];
                    g.z += coeff * DLAM[i][2];
                }
                g
            })
            .collect()
    }
}

/// Nodes of the degree-`n` basis (published ordering).
pub fn lagrange_nodes(n: usize) -> Result<Vec<Vector3<f64>>> {
    Ok(ReferenceBasis::new(n)?.nodes)
}
