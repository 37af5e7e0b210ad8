//! One-dimensional Lagrange basis in the reference time coordinate
//! `tau in [0, 1]`, collocated at Gauss-Legendre points. Together with the
//! spatial basis it forms the tensor-product space-time basis of the
//! predictor.

use super::quadrature::gauss_legendre_01;
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct TemporalBasis {
    /// Gauss-Legendre collocation nodes in `[0, 1]`.
    pub nodes: Vec<f64>,
    /// `psi_q(0)`.
    pub at_zero: Vec<f64>,
    /// `psi_q(1)`.
    pub at_one: Vec<f64>,
    /// `int_0^1 psi_q dtau`; equals the Gauss-Legendre weights.
    pub avg: Vec<f64>,
    /// `int_0^1 psi_p psi_q dtau`.
    pub mass: DMatrix<f64>,
    /// Upwind temporal kernel `psi_p(1) psi_q(1) - int psi_p' psi_q dtau`.
    pub upwind: DMatrix<f64>,
}

impl TemporalBasis {
    /// Basis with `n_nodes = degree + 1` collocation points.
    pub fn new(n_nodes: usize) -> Self {
        assert!(n_nodes >= 1);
        let (nodes, gl_w) = gauss_legendre_01(n_nodes);

        let eval = |q: usize, tau: f64| -> f64 {
            let mut v = 1.0;
            for (k, &xk) in nodes.iter().enumerate() {
                if k != q {
                    v *= (tau - xk) / (nodes[q] - xk);
                }
            }
            v
        };
        let eval_deriv = |q: usize, tau: f64| -> f64 {
            let mut sum = 0.0;
            for (k, &xk) in nodes.iter().enumerate() {
                if k == q {
                    continue;
                }
                let mut term = 1.0 / (nodes[q] - xk);
                for (m, &xm) in nodes.iter().enumerate() {
                    if m != q && m != k {
                        term *= (tau - xm) / (nodes[q] - xm);
                    }
                }
                sum += term;
            }
            sum
        };

        // products of two basis functions have degree 2(n-1); a GL rule
        // with n points is exact through 2n-1
        let (qx, qw) = gauss_legendre_01(n_nodes);
        let mut mass = DMatrix::zeros(n_nodes, n_nodes);
        let mut dmass = DMatrix::zeros(n_nodes, n_nodes);
        for p in 0..n_nodes {
            for q in 0..n_nodes {
                let mut m = 0.0;
                let mut dm = 0.0;
                for (x, w) in qx.iter().zip(&qw) {
                    m += w * eval(p, *x) * eval(q, *x);
                    dm += w * eval_deriv(p, *x) * eval(q, *x);
                }
                mass[(p, q)] = m;
                dmass[(p, q)] = dm;
            }
        }
        let at_zero: Vec<f64> = (0..n_nodes).map(|q| eval(q, 0.0)).collect();
        let at_one: Vec<f64> = (0..n_nodes).map(|q| eval(q, 1.0)).collect();
        let mut upwind = DMatrix::zeros(n_nodes, n_nodes);
        for p in 0..n_nodes {
            for q in 0..n_nodes {
                upwind[(p, q)] = at_one[p] * at_one[q] - dmass[(p, q)];
            }
        }
        Self {
            nodes,
            at_zero,
            at_one,
            avg: gl_w,
            mass,
            upwind,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Time-average of nodal samples: `sum_q avg[q] f(tau_q)`. Exact for
    /// polynomials represented in this basis.
    pub fn average(&self, samples: &[f64]) -> f64 {
        samples.iter().zip(&self.avg).map(|(s, w)| s * w).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn averages_are_gl_weights_and_sum_to_one() {
        for n in 1..=4 {
            let t = TemporalBasis::new(n);
            let s: f64 = t.avg.iter().sum();
            assert_relative_eq!(s, 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn average_exact_on_linears() {
        for n in 2..=4 {
            let t = TemporalBasis::new(n);
            // f(tau) = 3 - 2 tau averages to 2
            let samples: Vec<f64> = t.nodes.iter().map(|&x| 3.0 - 2.0 * x).collect();
            assert_relative_eq!(t.average(&samples), 2.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn constant_in_time_satisfies_upwind_identity() {
        // For coefficients constant in q: sum_q upwind[p][q] = psi_p(0),
        // the steady fixed-point identity of the predictor system.
        for n in 1..=4 {
            let t = TemporalBasis::new(n);
            for p in 0..n {
                let row: f64 = (0..n).map(|q| t.upwind[(p, q)]).sum();
                assert_abs_diff_eq!(row, t.at_zero[p], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn endpoint_values_partition() {
        for n in 1..=4 {
            let t = TemporalBasis::new(n);
            let s0: f64 = t.at_zero.iter().sum();
            let s1: f64 = t.at_one.iter().sum();
            assert_relative_eq!(s0, 1.0, max_relative = 1e-12);
            assert_relative_eq!(s1, 1.0, max_relative = 1e-12);
        }
    }
}
