//! Dense conic solver over the PSD cone with entrywise sign constraints, and
//! the Lovász, Schrijver and Szegedy theta programs built on it.

mod problem;
mod solver;
mod theta;

pub use problem::{theta_problem, CellConstraint, ConicProblem, EqualityConstraint, Sense, ThetaVariant};
pub use solver::{solve_conic, ConicSolution, Residuals, SolverOptions, SolverState};
pub use theta::{solve_all_thetas, solve_theta, solve_theta_warm, ThetaResult, ThetaTriple, THETA_CAP};
