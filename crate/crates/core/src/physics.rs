//! Compressible Euler/Navier-Stokes state algebra.
//!
//! Conversions between conserved and primitive variables, the total
//! (inviscid + viscous) flux tensor, the stress tensor under the Stokes
//! hypothesis, and convective/viscous wave speed estimates. All
//! operations are pure; states are small `Copy` values.

use crate::error::PositivityFault;
use nalgebra::{Matrix3, Vector3};

/// Number of conserved fields: density, three momenta, total energy.
pub const N_FIELDS: usize = 5;

/// Ideal-gas parameters plus transport coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasParams {
    /// Ratio of specific heats.
    pub gamma: f64,
    /// Gas constant.
    pub r_gas: f64,
    /// Specific heat at constant volume, `r_gas / (gamma - 1)`.
    pub c_v: f64,
    /// Dynamic viscosity.
    pub mu: f64,
    /// Heat conduction coefficient.
    pub kappa: f64,
}

impl GasParams {
    pub fn new(gamma: f64, r_gas: f64, mu: f64, kappa: f64) -> Self {
        assert!(gamma > 1.0, "gamma must exceed 1");
        assert!(r_gas > 0.0, "gas constant must be positive");
        assert!(mu >= 0.0 && kappa >= 0.0);
        Self {
            gamma,
            r_gas,
            c_v: r_gas / (gamma - 1.0),
            mu,
            kappa,
        }
    }

    /// Diatomic air-like gas (`gamma = 1.4`, `R = 1`) with the given transport
    /// coefficients.
    pub fn standard(mu: f64, kappa: f64) -> Self {
        Self::new(1.4, 1.0, mu, kappa)
    }

    /// Same gas with a different dynamic viscosity (used for cell-local
    /// artificial viscosity).
    pub fn with_mu(&self, mu: f64) -> Self {
        Self { mu, ..*self }
    }
}

/// Conserved state `(rho, rho v, rho E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedState {
    pub rho: f64,
    pub mom: Vector3<f64>,
    pub rho_e: f64,
}

/// Primitive state `(rho, v, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveState {
    pub rho: f64,
    pub vel: Vector3<f64>,
    pub p: f64,
}

impl ConservedState {
    pub fn from_array(q: &[f64; N_FIELDS]) -> Self {
        Self {
            rho: q[0],
            mom: Vector3::new(q[1], q[2], q[3]),
            rho_e: q[4],
        }
    }

    pub fn to_array(&self) -> [f64; N_FIELDS] {
        [self.rho, self.mom.x, self.mom.y, self.mom.z, self.rho_e]
    }
}

/// Flux tensor columns per Cartesian direction; `dir[d][c]` is the flux of
/// conserved field `c` in direction `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxTensor {
    pub dir: [[f64; N_FIELDS]; 3],
}

impl FluxTensor {
    /// Projection `F . n` onto a direction.
    pub fn dot_normal(&self, n: &Vector3<f64>) -> [f64; N_FIELDS] {
        let mut out = [0.0; N_FIELDS];
        for c in 0..N_FIELDS {
            out[c] = n.x * self.dir[0][c] + n.y * self.dir[1][c] + n.z * self.dir[2][c];
        }
        out
    }
}

/// Spatial gradient of the conserved fields; `grad[d][c] = d Q_c / d x_d`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StateGradient {
    pub grad: [[f64; N_FIELDS]; 3],
}

impl StateGradient {
    pub const ZERO: Self = Self {
        grad: [[0.0; N_FIELDS]; 3],
    };
}

/// Decode primitives from a conserved state.
///
/// Fails with a positivity fault when density or the implied pressure is
/// not strictly positive.
pub fn cons_to_prim(
    q: &ConservedState,
    gas: &GasParams,
) -> std::result::Result<PrimitiveState, PositivityFault> {
    if !(q.rho > 0.0) {
        return Err(PositivityFault {
            quantity: "density",
            value: q.rho,
        });
    }
    let vel = q.mom / q.rho;
    let p = (gas.gamma - 1.0) * (q.rho_e - 0.5 * q.rho * vel.norm_squared());
    if !(p > 0.0) {
        return Err(PositivityFault {
            quantity: "pressure",
            value: p,
        });
    }
    Ok(PrimitiveState { rho: q.rho, vel, p })
}

/// Encode a conserved state from primitives.
pub fn prim_to_cons(
    w: &PrimitiveState,
    gas: &GasParams,
) -> std::result::Result<ConservedState, PositivityFault> {
    if !(w.rho > 0.0) {
        return Err(PositivityFault {
            quantity: "density",
            value: w.rho,
        });
    }
    if !(w.p > 0.0) {
        return Err(PositivityFault {
            quantity: "pressure",
            value: w.p,
        });
    }
    Ok(ConservedState {
        rho: w.rho,
        mom: w.rho * w.vel,
        rho_e: w.p / (gas.gamma - 1.0) + 0.5 * w.rho * w.vel.norm_squared(),
    })
}

/// Sound speed `sqrt(gamma p / rho)`.
pub fn sound_speed(w: &PrimitiveState, gas: &GasParams) -> f64 {
    (gas.gamma * w.p / w.rho).sqrt()
}

/// Stress tensor under the Stokes hypothesis, pressure included on the
/// diagonal: `sigma = (p + 2/3 mu div v) I - mu (grad v + grad v^T)`.
pub fn viscous_stress(w: &PrimitiveState, grad_v: &Matrix3<f64>, gas: &GasParams) -> Matrix3<f64> {
    let div_v = grad_v.trace();
    let iso = w.p + 2.0 / 3.0 * gas.mu * div_v;
    let mut sigma = -gas.mu * (grad_v + grad_v.transpose());
    sigma[(0, 0)] += iso;
    sigma[(1, 1)] += iso;
    sigma[(2, 2)] += iso;
    sigma
}

/// Velocity gradient `d v_i / d x_d` recovered from the conserved gradient,
/// indexed `(i, d)`.
pub fn velocity_gradient(
    q: &ConservedState,
    w: &PrimitiveState,
    grad: &StateGradient,
) -> Matrix3<f64> {
    let mut gv = Matrix3::zeros();
    for d in 0..3 {
        for i in 0..3 {
            gv[(i, d)] = (grad.grad[d][1 + i] - w.vel[i] * grad.grad[d][0]) / q.rho;
        }
    }
    gv
}

/// Total flux tensor including inviscid and viscous contributions.
///
/// The temperature gradient for the heat flux is obtained from the
/// conserved gradient via `T = p / (rho R)` and the chain rule.
pub fn total_flux(
    q: &ConservedState,
    grad: &StateGradient,
    gas: &GasParams,
) -> std::result::Result<FluxTensor, PositivityFault> {
    let w = cons_to_prim(q, gas)?;
    let gv = velocity_gradient(q, &w, grad);
    let sigma = viscous_stress(&w, &gv, gas);

    // Heat flux only when conduction is active; avoids the gradient algebra
    // in the common kappa = 0 case.
    let grad_t = if gas.kappa > 0.0 {
        let gm1 = gas.gamma - 1.0;
        let mut gt = Vector3::zeros();
        for d in 0..3 {
            // dp = (gamma-1) (d(rhoE) - v . d(rho v) + |v|^2/2 drho)
            let mut v_dot_dm = 0.0;
            for i in 0..3 {
                v_dot_dm += w.vel[i] * grad.grad[d][1 + i];
            }
            let dp = gm1
                * (grad.grad[d][4] - v_dot_dm + 0.5 * w.vel.norm_squared() * grad.grad[d][0]);
            gt[d] = (dp - w.p / w.rho * grad.grad[d][0]) / (w.rho * gas.r_gas);
        }
        gt
    } else {
        Vector3::zeros()
    };

    let mut dir = [[0.0; N_FIELDS]; 3];
    for d in 0..3 {
        dir[d][0] = q.mom[d];
        for i in 0..3 {
            dir[d][1 + i] = q.mom[i] * w.vel[d] + sigma[(i, d)];
        }
        let mut sv = 0.0;
        for i in 0..3 {
            sv += sigma[(i, d)] * w.vel[i];
        }
        dir[d][4] = q.rho_e * w.vel[d] + sv - gas.kappa * grad_t[d];
    }
    Ok(FluxTensor { dir })
}

/// Inviscid (Euler) flux of a state, i.e. [`total_flux`] with zero gradients
/// and zero transport coefficients.
pub fn euler_flux(
    q: &ConservedState,
    gas: &GasParams,
) -> std::result::Result<FluxTensor, PositivityFault> {
    let w = cons_to_prim(q, gas)?;
    let mut dir = [[0.0; N_FIELDS]; 3];
    for d in 0..3 {
        dir[d][0] = q.mom[d];
        for i in 0..3 {
            dir[d][1 + i] = q.mom[i] * w.vel[d];
        }
        dir[d][1 + d] += w.p;
        dir[d][4] = (q.rho_e + w.p) * w.vel[d];
    }
    Ok(FluxTensor { dir })
}

/// Convective eigenvalues `(|v|+c, |v|, |v|, |v|, |v|-c)` and viscous
/// eigenvalues `(4 mu / 3 rho, kappa / (c_v rho))`.
///
/// The second viscous entry is the conduction speed scale written so it
/// stays defined at `kappa = 0` (it equals `gamma mu / (Pr rho)` whenever
/// the Prandtl number is defined).
pub fn eigenvalues(
    q: &ConservedState,
    gas: &GasParams,
) -> std::result::Result<([f64; 5], [f64; 2]), PositivityFault> {
    let w = cons_to_prim(q, gas)?;
    let c = sound_speed(&w, gas);
    let v = w.vel.norm();
    let conv = [v + c, v, v, v, v - c];
    let visc = [4.0 * gas.mu / (3.0 * q.rho), gas.kappa / (gas.c_v * q.rho)];
    Ok((conv, visc))
}

/// Largest convective and viscous signal speeds across a face with unit
/// normal `n`: `max(|v.n| + c)` over both states and the largest viscous
/// eigenvalue over both states.
pub fn max_signal_speed(
    ql: &ConservedState,
    qr: &ConservedState,
    n: &Vector3<f64>,
    gas: &GasParams,
) -> std::result::Result<(f64, f64), PositivityFault> {
    let wl = cons_to_prim(ql, gas)?;
    let wr = cons_to_prim(qr, gas)?;
    let lam_l = wl.vel.dot(n).abs() + sound_speed(&wl, gas);
    let lam_r = wr.vel.dot(n).abs() + sound_speed(&wr, gas);
    let visc = |q: &ConservedState| -> f64 {
        (4.0 * gas.mu / (3.0 * q.rho)).max(gas.kappa / (gas.c_v * q.rho))
    };
    Ok((lam_l.max(lam_r), visc(ql).max(visc(qr))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn gas() -> GasParams {
        GasParams::standard(0.0, 0.0)
    }

    #[test]
    fn eos_at_rest() {
        let q = ConservedState {
            rho: 1.0,
            mom: Vector3::zeros(),
            rho_e: 2.5,
        };
        let w = cons_to_prim(&q, &gas()).unwrap();
        assert_relative_eq!(w.p, 1.0, max_relative = 1e-14);
        assert_eq!(w.vel, Vector3::zeros());
    }

    #[test]
    fn eos_with_motion() {
        let q = ConservedState {
            rho: 1.0,
            mom: Vector3::new(1.0, 0.0, 0.0),
            rho_e: 3.0,
        };
        let w = cons_to_prim(&q, &gas()).unwrap();
        // p = 0.4 (3.0 - 0.5) = 1.0
        assert_relative_eq!(w.p, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn prim_to_cons_examples() {
        let g = gas();
        let w = PrimitiveState {
            rho: 1.0,
            vel: Vector3::zeros(),
            p: 1.0,
        };
        assert_relative_eq!(prim_to_cons(&w, &g).unwrap().rho_e, 2.5, max_relative = 1e-14);

        let w = PrimitiveState {
            rho: 1.0,
            vel: Vector3::new(1.0, 1.0, 0.0),
            p: 1.0 / g.gamma,
        };
        let expect = (1.0 / g.gamma) / (g.gamma - 1.0) + 1.0;
        assert_relative_eq!(prim_to_cons(&w, &g).unwrap().rho_e, expect, max_relative = 1e-14);
    }

    #[test]
    fn rejects_nonpositive_states() {
        let g = gas();
        let q = ConservedState {
            rho: -1.0,
            mom: Vector3::zeros(),
            rho_e: 2.5,
        };
        assert!(cons_to_prim(&q, &g).is_err());
        let q = ConservedState {
            rho: 1.0,
            mom: Vector3::new(10.0, 0.0, 0.0),
            rho_e: 2.5,
        };
        assert!(cons_to_prim(&q, &g).is_err());
    }

    #[test]
    fn inviscid_stress_is_pressure_identity() {
        let w = PrimitiveState {
            rho: 1.0,
            vel: Vector3::zeros(),
            p: 1.0,
        };
        let gv = Matrix3::new(0.3, -0.1, 0.2, 0.0, 0.5, 0.1, 0.4, 0.0, -0.2);
        let sigma = viscous_stress(&w, &gv, &gas());
        assert_relative_eq!(sigma, Matrix3::identity(), max_relative = 1e-14);
    }

    #[test]
    fn pure_dilation_cancels_at_zero_pressure() {
        // diag(a,a,a) with mu=1, p=0: (2/3)(3a) I - 2a I = 0
        let w = PrimitiveState {
            rho: 1.0,
            vel: Vector3::zeros(),
            p: 0.0,
        };
        let g = GasParams::standard(1.0, 0.0);
        let a = 0.7;
        let sigma = viscous_stress(&w, &Matrix3::from_diagonal_element(a), &g);
        assert_abs_diff_eq!(sigma, Matrix3::zeros(), epsilon = 1e-14);
    }

    #[test]
    fn stress_trace_is_three_p() {
        let w = PrimitiveState {
            rho: 1.2,
            vel: Vector3::new(0.1, -0.2, 0.3),
            p: 0.8,
        };
        let g = GasParams::standard(0.37, 0.0);
        let gv = Matrix3::new(0.3, -0.1, 0.2, 0.0, 0.5, 0.1, 0.4, 0.0, -0.2);
        let sigma = viscous_stress(&w, &gv, &g);
        assert_relative_eq!(sigma.trace(), 3.0 * w.p, max_relative = 1e-13);
        assert_relative_eq!(sigma, sigma.transpose(), max_relative = 1e-13);
    }

    #[test]
    fn flux_reduces_to_euler_flux() {
        let g = gas();
        let q = ConservedState {
            rho: 1.3,
            mom: Vector3::new(0.5, -0.2, 0.8),
            rho_e: 4.0,
        };
        let full = total_flux(&q, &StateGradient::ZERO, &g).unwrap();
        let eul = euler_flux(&q, &g).unwrap();
        for d in 0..3 {
            for c in 0..N_FIELDS {
                assert_relative_eq!(full.dir[d][c], eul.dir[d][c], max_relative = 1e-13);
            }
        }
        // classical x-flux for a uniform state
        let w = cons_to_prim(&q, &g).unwrap();
        let u = w.vel.x;
        assert_relative_eq!(full.dir[0][0], q.rho * u, max_relative = 1e-13);
        assert_relative_eq!(full.dir[0][1], q.rho * u * u + w.p, max_relative = 1e-13);
        assert_relative_eq!(full.dir[0][2], q.rho * u * w.vel.y, max_relative = 1e-13);
        assert_relative_eq!(full.dir[0][4], u * (q.rho_e + w.p), max_relative = 1e-13);
    }

    #[test]
    fn flux_at_rest_is_pressure_only() {
        let g = gas();
        let q = ConservedState {
            rho: 2.0,
            mom: Vector3::zeros(),
            rho_e: 5.0,
        };
        let w = cons_to_prim(&q, &g).unwrap();
        let f = total_flux(&q, &StateGradient::ZERO, &g).unwrap();
        for d in 0..3 {
            for c in 0..N_FIELDS {
                let expect = if c == 1 + d { w.p } else { 0.0 };
                assert_abs_diff_eq!(f.dir[d][c], expect, epsilon = 1e-13);
            }
        }
    }

    /// Independent oracle: evaluate the viscous flux of an analytic field
    /// directly from primitive-variable gradients and compare against the
    /// conserved-gradient chain rule used by `total_flux`.
    #[test]
    fn viscous_flux_matches_primitive_gradient_oracle() {
        let g = GasParams::standard(0.02, 0.013);
        // analytic field at a point: rho, v, p and their gradients
        let rho = 1.3;
        let p = 0.9;
        let vel = Vector3::new(0.4, -0.3, 0.2);
        let d_rho = Vector3::new(0.11, -0.07, 0.05);
        let d_p = Vector3::new(-0.02, 0.08, 0.03);
        // dv[i][d] = d v_i / d x_d
        let dv = Matrix3::new(0.3, -0.1, 0.2, 0.0, 0.5, 0.1, 0.4, 0.0, -0.2);

        // conserved gradients by the product rule
        let mut grad = StateGradient::ZERO;
        for d in 0..3 {
            grad.grad[d][0] = d_rho[d];
            for i in 0..3 {
                grad.grad[d][1 + i] = d_rho[d] * vel[i] + rho * dv[(i, d)];
            }
            let gm1 = g.gamma - 1.0;
            // rhoE = p/(gm1) + rho |v|^2 / 2
            let mut v_dot_dvd = 0.0;
            for i in 0..3 {
                v_dot_dvd += vel[i] * dv[(i, d)];
            }
            grad.grad[d][4] =
                d_p[d] / gm1 + 0.5 * d_rho[d] * vel.norm_squared() + rho * v_dot_dvd;
        }
        let w = PrimitiveState { rho, vel, p };
        let q = prim_to_cons(&w, &g).unwrap();
        let flux = total_flux(&q, &grad, &g).unwrap();

        // oracle: same flux assembled from the primitive data directly
        let sigma = viscous_stress(&w, &dv, &g);
        let grad_t = Vector3::from_fn(|d, _| (d_p[d] - p / rho * d_rho[d]) / (rho * g.r_gas));
        for d in 0..3 {
            assert_relative_eq!(flux.dir[d][0], rho * vel[d], max_relative = 1e-12);
            for i in 0..3 {
                assert_relative_eq!(
                    flux.dir[d][1 + i],
                    rho * vel[i] * vel[d] + sigma[(i, d)],
                    max_relative = 1e-12
                );
            }
            let mut sv = 0.0;
            for i in 0..3 {
                sv += sigma[(i, d)] * vel[i];
            }
            assert_relative_eq!(
                flux.dir[d][4],
                q.rho_e * vel[d] + sv - g.kappa * grad_t[d],
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let g = gas();
        let q = prim_to_cons(
            &PrimitiveState {
                rho: 1.0,
                vel: Vector3::zeros(),
                p: 1.0,
            },
            &g,
        )
        .unwrap();
        let (conv, visc) = eigenvalues(&q, &g).unwrap();
        assert_relative_eq!(conv[0], 1.4f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(conv[0], 1.18322, max_relative = 1e-5);
        assert_eq!(visc, [0.0, 0.0]);

        let g = GasParams::standard(1e-3, 0.0);
        let q = prim_to_cons(
            &PrimitiveState {
                rho: 2.0,
                vel: Vector3::zeros(),
                p: 1.0,
            },
            &g,
        )
        .unwrap();
        let (_, visc) = eigenvalues(&q, &g).unwrap();
        assert_relative_eq!(visc[0], 6.6667e-4, max_relative = 1e-4);
        assert_eq!(visc[1], 0.0);
    }

    #[test]
    fn signal_speed_examples() {
        let g = gas();
        let n = Vector3::new(1.0, 0.0, 0.0);
        let at_rest = prim_to_cons(
            &PrimitiveState {
                rho: 1.0,
                vel: Vector3::zeros(),
                p: 1.0,
            },
            &g,
        )
        .unwrap();
        let moving = prim_to_cons(
            &PrimitiveState {
                rho: 1.0,
                vel: Vector3::new(0.5, 0.0, 0.0),
                p: 1.0,
            },
            &g,
        )
        .unwrap();
        let (same, _) = max_signal_speed(&at_rest, &at_rest, &n, &g).unwrap();
        assert_relative_eq!(same, 1.4f64.sqrt(), max_relative = 1e-12);
        let (lam, _) = max_signal_speed(&at_rest, &moving, &n, &g).unwrap();
        assert_relative_eq!(lam, 0.5 + 1.4f64.sqrt(), max_relative = 1e-12);
        let (swapped, _) = max_signal_speed(&moving, &at_rest, &n, &g).unwrap();
        assert_eq!(lam, swapped);
    }

    proptest! {
        #[test]
        fn prim_cons_round_trip(
            rho in 0.1f64..10.0,
            vx in -5.0f64..5.0,
            vy in -5.0f64..5.0,
            vz in -5.0f64..5.0,
            p in 0.05f64..20.0,
        ) {
            let g = gas();
            let w = PrimitiveState { rho, vel: Vector3::new(vx, vy, vz), p };
            let q = prim_to_cons(&w, &g).unwrap();
            let w2 = cons_to_prim(&q, &g).unwrap();
            prop_assert!((w2.rho - rho).abs() <= 1e-14 * rho.abs());
            prop_assert!((w2.p - p).abs() <= 1e-13 * (p.abs() + 0.5 * rho * w.vel.norm_squared()));
            prop_assert!((w2.vel - w.vel).norm() <= 1e-13 * (1.0 + w.vel.norm()));
            let q2 = prim_to_cons(&w2, &g).unwrap();
            prop_assert!((q2.rho_e - q.rho_e).abs() <= 1e-13 * q.rho_e.abs());
        }

        #[test]
        fn eigenvalue_bounds(
            rho in 0.1f64..10.0,
            vx in -5.0f64..5.0,
            vy in -5.0f64..5.0,
            vz in -5.0f64..5.0,
            p in 0.05f64..20.0,
            nx in -1.0f64..1.0,
            ny in -1.0f64..1.0,
            nz in -1.0f64..1.0,
        ) {
            let g = GasParams::standard(1e-3, 2e-3);
            let w = PrimitiveState { rho, vel: Vector3::new(vx, vy, vz), p };
            let q = prim_to_cons(&w, &g).unwrap();
            let (conv, visc) = eigenvalues(&q, &g).unwrap();
            let n = Vector3::new(nx, ny, nz);
            prop_assume!(n.norm() > 1e-3);
            let n = n.normalize();
            prop_assert!(conv[0] >= w.vel.dot(&n).abs() - 1e-13);
            prop_assert!(visc[0] >= 0.0 && visc[1] >= 0.0);
        }
    }
}
