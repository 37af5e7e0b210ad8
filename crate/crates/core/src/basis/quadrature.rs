//! Setup-time quadrature rules on the unit interval, triangle, and
//! tetrahedron. Runtime integrals are quadrature-free; these rules are used
//! only to assemble reference matrices, to initialize oracles, and to
//! evaluate error norms.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `[0, 1]`, measure 1.
    Interval,
    /// `{ r,s >= 0, r+s <= 1 }`, measure 1/2.
    Triangle,
    /// `{ r,s,t >= 0, r+s+t <= 1 }`, measure 1/6.
    Tetrahedron,
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub domain: Domain,
    /// Points padded to 3 coordinates; unused coordinates are zero.
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    /// Polynomial total degree integrated exactly.
    pub order: usize,
}

const MAX_ORDER: usize = 40;

/// Gauss-Legendre nodes and weights on `[0, 1]`, exact through degree
/// `2n - 1`. Nodes found by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre_01(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess on [-1, 1]
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x)
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 0.5 * w;
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[n - 1 - i] = 0.5 * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.5;
    }
    (nodes, weights)
}

/// Exact monomial integral over the reference domain, used for the
/// construction-time exactness check.
fn exact_monomial(domain: Domain, e: [usize; 3]) -> f64 {
    fn fact(k: usize) -> f64 {
        (1..=k).map(|i| i as f64).product()
    }
    match domain {
        Domain::Interval => 1.0 / (e[0] as f64 + 1.0),
        Domain::Triangle => fact(e[0]) * fact(e[1]) / fact(e[0] + e[1] + 2),
        Domain::Tetrahedron => {
            fact(e[0]) * fact(e[1]) * fact(e[2]) / fact(e[0] + e[1] + e[2] + 3)
        }
    }
}

/// Build a rule exact for total degree `order` on the requested domain.
///
/// Simplex rules are collapsed tensor products (Duffy transform) of 1D
/// Gauss-Legendre rules, with point counts chosen to absorb the transform
/// Jacobian exactly. Exactness is verified on all monomials up to `order`
/// at construction.
pub fn quadrature(domain: Domain, order: usize) -> Result<QuadratureRule> {
    if order > MAX_ORDER {
        return Err(Error::Config(format!(
            "quadrature order {order} exceeds supported maximum {MAX_ORDER}"
        )));
    }
    let rule = match domain {
        Domain::Interval => {
            let n = order / 2 + 1;
            let (x, w) = gauss_legendre_01(n);
            QuadratureRule {
                domain,
                points: x.iter().map(|&xi| [xi, 0.0, 0.0]).collect(),
                weights: w,
                order,
            }
        }
        Domain::Triangle => {
            // r = u, s = v (1-u); Jacobian (1-u)
            let nu = (order + 2) / 2 + 1;
            let nv = (order + 1) / 2 + 1;
            let (xu, wu) = gauss_legendre_01(nu);
            let (xv, wv) = gauss_legendre_01(nv);
            let mut points = Vec::with_capacity(nu * nv);
            let mut weights = Vec::with_capacity(nu * nv);
            for (u, cu) in xu.iter().zip(&wu) {
                for (v, cv) in xv.iter().zip(&wv) {
                    points.push([*u, v * (1.0 - u), 0.0]);
                    weights.push(cu * cv * (1.0 - u));
                }
            }
            QuadratureRule {
                domain,
                points,
                weights,
                order,
            }
        }
        Domain::Tetrahedron => {
            // r = u, s = v (1-u), t = w (1-u)(1-v); Jacobian (1-u)^2 (1-v)
            let nu = (order + 3) / 2 + 1;
            let nv = (order + 2) / 2 + 1;
            let nw = (order + 1) / 2 + 1;
            let (xu, wu) = gauss_legendre_01(nu);
            let (xv, wv) = gauss_legendre_01(nv);
            let (xw, ww) = gauss_legendre_01(nw);
            let mut points = Vec::with_capacity(nu * nv * nw);
            let mut weights = Vec::with_capacity(nu * nv * nw);
            for (u, cu) in xu.iter().zip(&wu) {
                for (v, cv) in xv.iter().zip(&wv) {
                    for (w, cw) in xw.iter().zip(&ww) {
                        points.push([*u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)]);
                        weights.push(cu * cv * cw * (1.0 - u) * (1.0 - u) * (1.0 - v));
                    }
                }
            }
            QuadratureRule {
                domain,
                points,
                weights,
                order,
            }
        }
    };
    rule.verify()?;
    Ok(rule)
}

impl QuadratureRule {
    pub fn integrate<F: FnMut(&[f64; 3]) -> f64>(&self, mut f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }

    fn verify(&self) -> Result<()> {
        let dims = match self.domain {
            Domain::Interval => 1,
            Domain::Triangle => 2,
            Domain::Tetrahedron => 3,
        };
        let mut exps = vec![];
        collect_exponents(dims, self.order, &mut [0; 3], 0, &mut exps);
        for e in exps {
            let got = self.integrate(|p| {
                p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32)
            });
            let want = exact_monomial(self.domain, e);
            if (got - want).abs() > 1e-13 * want.abs().max(1.0) {
                return Err(Error::Setup(format!(
                    "quadrature rule on {:?} failed exactness for monomial {:?}: got {got:e}, want {want:e}",
                    self.domain, e
                )));
            }
        }
        Ok(())
    }
}

fn collect_exponents(
    dims: usize,
    remaining: usize,
    current: &mut [usize; 3],
    dim: usize,
    out: &mut Vec<[usize; 3]>,
) {
    if dim == dims {
        out.push(*current);
        return;
    }
    for e in 0..=remaining {
        current[dim] = e;
        collect_exponents(dims, remaining - e, current, dim + 1, out);
    }
    current[dim] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tet_unit_integral() {
        let q = quadrature(Domain::Tetrahedron, 2).unwrap();
        assert_relative_eq!(q.integrate(|_| 1.0), 1.0 / 6.0, max_relative = 1e-14);
    }

    #[test]
    fn barycentric_products() {
        // int lambda1^2 = 1/60, int lambda1 lambda2 = 1/120 over the tet
        let q = quadrature(Domain::Tetrahedron, 4).unwrap();
        let l1 = |p: &[f64; 3]| 1.0 - p[0] - p[1] - p[2];
        assert_relative_eq!(
            q.integrate(|p| l1(p) * l1(p)),
            1.0 / 60.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            q.integrate(|p| l1(p) * p[0]),
            1.0 / 120.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn gl2_matches_closed_form() {
        let (x, w) = gauss_legendre_01(2);
        let d = 1.0 / (2.0 * 3.0f64.sqrt());
        assert_relative_eq!(x[0], 0.5 - d, max_relative = 1e-14);
        assert_relative_eq!(x[1], 0.5 + d, max_relative = 1e-14);
        assert_relative_eq!(w[0], 0.5, max_relative = 1e-14);
        assert_relative_eq!(w[1], 0.5, max_relative = 1e-14);
    }

    #[test]
    fn triangle_measure_and_products() {
        let q = quadrature(Domain::Triangle, 6).unwrap();
        assert_relative_eq!(q.integrate(|_| 1.0), 0.5, max_relative = 1e-14);
        // int r s over the unit triangle = 1/24
        assert_relative_eq!(q.integrate(|p| p[0] * p[1]), 1.0 / 24.0, max_relative = 1e-13);
    }

    #[test]
    fn weights_sum_to_measure() {
        for (dom, measure) in [
            (Domain::Interval, 1.0),
            (Domain::Triangle, 0.5),
            (Domain::Tetrahedron, 1.0 / 6.0),
        ] {
            for order in [1, 4, 8, 12] {
                let q = quadrature(dom, order).unwrap();
                let s: f64 = q.weights.iter().sum();
                assert_relative_eq!(s, measure, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn excessive_order_rejected() {
        assert!(quadrature(Domain::Tetrahedron, 99).is_err());
    }
}
