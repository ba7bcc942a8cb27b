//! Over-relaxed ADMM splitting between the affine-and-sign set and the PSD
//! cone. Both projections are closed form; the PSD one is an eigenvalue clip.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numla::{eigh_from_guess, eigh_with, Eigen, SymMatrix};
use crate::sdp::problem::{ConicProblem, Sense};
use crate::tolerance::Tolerances;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Distance of the reported `X` from the affine-and-sign set.
    pub primal_tol: f64,
    /// Largest sign-pattern violation of the reported `X`.
    pub sign_tol: f64,
    /// Dual residual, relative to `1 + ||C||_F`.
    pub dual_tol: f64,
    /// Duality gap, relative to `1 + |value|`.
    pub gap_tol: f64,
    /// Change between successive iterates.
    pub step_tol: f64,
    pub max_iters: usize,
    /// Over-relaxation parameter in `(0, 2)`.
    pub relax: f64,
    pub rho: f64,
    /// Iterations between penalty updates (0 disables them).
    pub adapt_every: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            primal_tol: 1e-7,
            sign_tol: 1e-8,
            dual_tol: 1e-7,
            gap_tol: 1e-8,
            step_tol: 1e-9,
            max_iters: 200_000,
            relax: 1.6,
            rho: 1.0,
            adapt_every: 25,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub primal: f64,
    pub sign: f64,
    pub dual: f64,
    pub gap: f64,
    pub step: f64,
}

/// Iterate state, reusable as a warm start for a related problem.
#[derive(Clone, Debug)]
pub struct SolverState {
    z: Matrix<f64>,
    u: Matrix<f64>,
    rho: f64,
}

#[derive(Clone, Debug)]
pub struct ConicSolution {
    /// PSD iterate.
    pub x: SymMatrix,
    /// `<C, X>`
    pub value: f64,
    /// Dual objective `b . y` from the splitting's multipliers.
    pub dual_value: f64,
    pub residuals: Residuals,
    pub iterations: usize,
    pub converged: bool,
    pub state: SolverState,
}

struct DualEstimate {
    value: f64,
    residual: f64,
}

/// Recover `(y, W)` from the cone multiplier `S`: `C + S` should equal
/// `sum y_i A_i + W` with `W` supported on the sign cells inside the normal cone.
fn dual_estimate(p: &ConicProblem, s: &Matrix<f64>) -> DualEstimate {
    let n = p.n();
    let t = p.objective().as_matrix() + s;
    let y = p.affine_multipliers(&t, false);
    let mut r = t;
    for (e, yi) in p.equalities().iter().zip(&y) {
        r.add_scaled(&-yi, &e.matrix);
    }
    for u in 0..n {
        for v in 0..n {
            if let Some(sense) = p.sense(u, v) {
                let w = r[(u, v)];
                // multiplier sign for a maximisation: x >= 0 pairs with w <= 0
                let allowed = match sense {
                    Sense::Zero => w,
                    Sense::NonNegative => w.min(0.0),
                    Sense::NonPositive => w.max(0.0),
                };
                r[(u, v)] = w - allowed;
            }
        }
    }
    let value = p.equalities().iter().zip(&y).map(|(e, yi)| e.rhs * yi).sum();
    DualEstimate {
        value,
        residual: r.frobenius(),
    }
}

fn check_finite(m: &Matrix<f64>) -> Result<()> {
    match m.iter_cells().find(|(_, _, v)| !v.is_finite()) {
        Some((i, j, _)) => Err(Error::NonFinite(i, j)),
        None => Ok(()),
    }
}

pub fn solve_conic(p: &ConicProblem, opts: &SolverOptions, warm: Option<&SolverState>) -> Result<ConicSolution> {
    let n = p.n();
    let tol = Tolerances::default();
    let (mut z, mut u, mut rho) = match warm {
        Some(s) if s.z.n() == n => (s.z.clone(), s.u.clone(), s.rho),
        _ => (Matrix::zeros(n), Matrix::zeros(n), opts.rho),
    };
    let c = p.objective().as_matrix();
    let c_norm = c.frobenius();
    let mut eigen: Option<Eigen> = None;
    let mut residuals = Residuals::default();
    let mut value = c.inner(&z);
    let mut dual_value = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;

    for iter in 1..=opts.max_iters {
        iterations = iter;
        let mut target = &z - &u;
        target.add_scaled(&(1.0 / rho), c);
        let x = p.project_feasible(&target);
        let mut relaxed = x.scale(&opts.relax);
        relaxed.add_scaled(&(1.0 - opts.relax), &z);
        let w = &relaxed + &u;
        check_finite(&w)?;
        let w = SymMatrix::new(w)?;
        // Warm-started Jacobi; restart from scratch periodically so rounding in
        // the accumulated rotations cannot build up.
        let e = match &eigen {
            Some(prev) if iter % 200 != 0 => eigh_from_guess(&w, &prev.vectors, &tol)?,
            _ => eigh_with(&w, &tol)?,
        };
        let z_next = e.reconstruct(|l| l.max(0.0));
        eigen = Some(e);
        let u_next = w.as_matrix() - &z_next;

        let step = (&z_next - &z).frobenius();
        let r_prim = (&x - &z_next).frobenius();
        let r_dual = rho * step;
        z = z_next;
        u = u_next;

        value = c.inner(&z);
        let s = u.scale(&-rho);
        let dual = dual_estimate(p, &s);
        dual_value = dual.value;
        let feasible = p.project_feasible(&z);
        residuals = Residuals {
            primal: (&z - &feasible).frobenius(),
            sign: p.sign_violation(&z),
            dual: dual.residual,
            gap: (value - dual.value).abs(),
            step,
        };
        if residuals.primal <= opts.primal_tol
            && residuals.sign <= opts.sign_tol
            && residuals.dual <= opts.dual_tol * (1.0 + c_norm)
            && residuals.gap <= opts.gap_tol * (1.0 + value.abs())
            && residuals.step <= opts.step_tol * (1.0 + z.frobenius())
        {
            converged = true;
            break;
        }

        if opts.adapt_every > 0 && iter % opts.adapt_every == 0 {
            let factor = if r_prim > 10.0 * r_dual {
                2.0
            } else if r_dual > 10.0 * r_prim {
                0.5
            } else {
                1.0
            };
            if factor != 1.0 {
                rho *= factor;
                u = u.scale(&(1.0 / factor));
            }
        }
    }

    Ok(ConicSolution {
        x: SymMatrix::new(z.clone())?,
        value,
        dual_value,
        residuals,
        iterations,
        converged,
        state: SolverState { z, u, rho },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::problem::{CellConstraint, EqualityConstraint};

    #[test]
    fn maximal_entry_sum_under_unit_trace() {
        // max <J, X> s.t. tr X = 1, X PSD: optimum n at X = J / n.
        let n = 4;
        let p = ConicProblem::new(
            SymMatrix::new(Matrix::ones(n)).unwrap(),
            vec![EqualityConstraint {
                matrix: SymMatrix::identity(n),
                rhs: 1.0,
            }],
            vec![],
        )
        .unwrap();
        let sol = solve_conic(&p, &SolverOptions::default(), None).unwrap();
        assert!(sol.converged, "{:?}", sol.residuals);
        assert!((sol.value - 4.0).abs() < 1e-6);
    }

    #[test]
    fn sign_constraint_binds() {
        // max x01 + x10 s.t. tr X = 1, x01 <= 0: optimum 0.
        let n = 2;
        let obj = SymMatrix::new(Matrix::from_row_major(2, vec![0.0, 1.0, 1.0, 0.0])).unwrap();
        let p = ConicProblem::new(
            obj,
            vec![EqualityConstraint {
                matrix: SymMatrix::identity(n),
                rhs: 1.0,
            }],
            vec![CellConstraint { u: 0, v: 1, sense: Sense::NonPositive }],
        )
        .unwrap();
        let sol = solve_conic(&p, &SolverOptions::default(), None).unwrap();
        assert!(sol.converged, "{:?}", sol.residuals);
        assert!(sol.value.abs() < 1e-6);
    }

    #[test]
    fn iteration_cap_reports_unconverged() {
        let n = 5;
        let p = ConicProblem::new(
            SymMatrix::new(Matrix::ones(n)).unwrap(),
            vec![EqualityConstraint {
                matrix: SymMatrix::identity(n),
                rhs: 1.0,
            }],
            vec![CellConstraint { u: 0, v: 1, sense: Sense::Zero }],
        )
        .unwrap();
        let opts = SolverOptions {
            max_iters: 3,
            ..SolverOptions::default()
        };
        let sol = solve_conic(&p, &opts, None).unwrap();
        assert!(!sol.converged);
        assert_eq!(sol.iterations, 3);
    }
}
