use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numla::SymMatrix;
use crate::sdp::problem::{theta_problem, ConicProblem, ThetaVariant};
use crate::sdp::solver::{solve_conic, Residuals, SolverOptions, SolverState};

/// Largest graph accepted by [`solve_theta`].
pub const THETA_CAP: usize = 40;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaResult {
    pub variant: ThetaVariant,
    pub value: f64,
    /// PSD iterate; `value` is `<J, x>`.
    pub x: SymMatrix,
    /// `x` moved onto the sign pattern and trace exactly, then made PSD by a
    /// diagonal shift. Verification consumes this matrix.
    pub certificate: SymMatrix,
    /// `<J, certificate>`, a certified lower bound on the optimum.
    pub certificate_value: f64,
    pub residuals: Residuals,
    pub iterations: usize,
    pub converged: bool,
    #[serde(skip)]
    pub(crate) state: Option<SolverState>,
}

impl ThetaResult {
    /// Iterate state for warm-starting a related solve.
    pub fn warm_state(&self) -> Option<&SolverState> {
        self.state.as_ref()
    }
}

pub fn solve_theta(g: &Graph, variant: ThetaVariant, opts: &SolverOptions) -> Result<ThetaResult> {
    solve_theta_warm(g, variant, opts, None)
}

pub fn solve_theta_warm(
    g: &Graph,
    variant: ThetaVariant,
    opts: &SolverOptions,
    warm: Option<&SolverState>,
) -> Result<ThetaResult> {
    let n = g.n();
    if n > THETA_CAP {
        return Err(Error::CapExceeded {
            what: "theta solver",
            n,
            cap: THETA_CAP,
        });
    }
    if n == 1 {
        return Ok(ThetaResult {
            variant,
            value: 1.0,
            x: SymMatrix::identity(1),
            certificate: SymMatrix::identity(1),
            certificate_value: 1.0,
            residuals: Residuals::default(),
            iterations: 0,
            converged: true,
            state: None,
        });
    }
    let problem = theta_problem(g, variant)?;
    let sol = solve_conic(&problem, opts, warm)?;
    let certificate = feasible_certificate(&problem, &sol.x)?;
    Ok(ThetaResult {
        variant,
        value: sol.value,
        certificate_value: certificate.sum(),
        certificate,
        x: sol.x,
        residuals: sol.residuals,
        iterations: sol.iterations,
        converged: sol.converged,
        state: Some(sol.state),
    })
}

/// Project onto the affine-and-sign set, then shift the diagonal by the most
/// negative eigenvalue and rescale to unit trace. The theta programs never
/// constrain diagonal cells, so the sign pattern survives exactly.
fn feasible_certificate(p: &ConicProblem, z: &SymMatrix) -> Result<SymMatrix> {
    let x = SymMatrix::new(p.project_feasible(z))?;
    let lambda = x.min_eigenvalue()?;
    if lambda >= 0.0 {
        return Ok(x);
    }
    let mut shifted = x.into_matrix();
    for i in 0..shifted.n() {
        shifted[(i, i)] -= lambda;
    }
    let t = shifted.trace();
    SymMatrix::new(shifted.scale(&(1.0 / t)))
}

/// Lovász, Schrijver and Szegedy thetas of one graph; the latter two are
/// warm-started from the Lovász solution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaTriple {
    pub lovasz: ThetaResult,
    pub schrijver: ThetaResult,
    pub szegedy: ThetaResult,
}

pub fn solve_all_thetas(g: &Graph, opts: &SolverOptions) -> Result<ThetaTriple> {
    let lovasz = solve_theta(g, ThetaVariant::Lovasz, opts)?;
    let warm = lovasz.state.clone();
    let schrijver = solve_theta_warm(g, ThetaVariant::Schrijver, opts, warm.as_ref())?;
    let szegedy = solve_theta_warm(g, ThetaVariant::Szegedy, opts, warm.as_ref())?;
    Ok(ThetaTriple {
        lovasz,
        schrijver,
        szegedy,
    })
}
