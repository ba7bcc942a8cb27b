//! Every numeric threshold used by the toolkit, in one record.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Jacobi stops once the off-diagonal Frobenius norm is below this times `||m||_F`.
    pub jacobi_rel: f64,
    pub jacobi_max_sweeps: usize,
    /// Feasibility tier for float inputs (sign patterns, hypotheses, inequalities).
    pub num_tol: f64,
    /// Equality tier for float inputs (equality flags and certificates).
    pub eq_tol: f64,
    /// Relative tolerance on theta products against `n` for covered graphs.
    pub product_rel: f64,
    /// Slack allowed in each link of the sandwich chain.
    pub sandwich: f64,
    /// Cap on rational denominator size, in bits.
    pub denominator_bits: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            jacobi_rel: 1e-12,
            jacobi_max_sweeps: 100,
            num_tol: 1e-8,
            eq_tol: 1e-4,
            product_rel: 1e-3,
            sandwich: 1e-4,
            denominator_bits: 1 << 20,
        }
    }
}
