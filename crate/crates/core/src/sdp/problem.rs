use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::numla::SymMatrix;

/// Sign pattern imposed on one entry (and its mirror) of `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Zero,
    NonNegative,
    NonPositive,
}

impl Sense {
    pub fn clip(self, x: f64) -> f64 {
        match self {
            Sense::Zero => 0.0,
            Sense::NonNegative => x.max(0.0),
            Sense::NonPositive => x.min(0.0),
        }
    }

    pub fn violation(self, x: f64) -> f64 {
        (x - self.clip(x)).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellConstraint {
    pub u: usize,
    pub v: usize,
    pub sense: Sense,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EqualityConstraint {
    pub matrix: SymMatrix,
    pub rhs: f64,
}

/// `maximize <C, X>` subject to `<A_i, X> = b_i`, sign patterns on listed
/// cells, and `X` positive semidefinite.
///
/// Equality matrices must vanish on every sign-constrained cell; the feasible
/// set is then a product of an affine part and a box part, and its projection
/// is closed form.
#[derive(Clone, Debug)]
pub struct ConicProblem {
    n: usize,
    objective: SymMatrix,
    equalities: Vec<EqualityConstraint>,
    cells: Vec<CellConstraint>,
    senses: Matrix<Option<Sense>>,
    gram_inverse: Vec<Vec<f64>>,
}

impl ConicProblem {
    pub fn new(objective: SymMatrix, equalities: Vec<EqualityConstraint>, cells: Vec<CellConstraint>) -> Result<Self> {
        let n = objective.n();
        let mut senses: Matrix<Option<Sense>> = Matrix::from_fn(n, |_, _| None);
        let mut seen = BTreeSet::new();
        for c in &cells {
            if c.u > c.v {
                return Err(Error::InvalidProblem(format!("cell ({}, {}) must have u <= v", c.u, c.v)));
            }
            if c.v >= n {
                return Err(Error::InvalidProblem(format!("cell ({}, {}) out of range", c.u, c.v)));
            }
            if !seen.insert((c.u, c.v)) {
                return Err(Error::InvalidProblem(format!("duplicate cell ({}, {})", c.u, c.v)));
            }
            senses[(c.u, c.v)] = Some(c.sense);
            senses[(c.v, c.u)] = Some(c.sense);
        }
        for (k, e) in equalities.iter().enumerate() {
            if e.matrix.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.matrix.n(),
                });
            }
            if !e.rhs.is_finite() {
                return Err(Error::InvalidProblem(format!("equality {k} has a non-finite right-hand side")));
            }
            if let Some(c) = cells.iter().find(|c| e.matrix[(c.u, c.v)] != 0.0) {
                return Err(Error::InvalidProblem(format!(
                    "equality {k} touches sign-constrained cell ({}, {})",
                    c.u, c.v
                )));
            }
        }
        let gram: Vec<Vec<f64>> = equalities
            .iter()
            .map(|a| equalities.iter().map(|b| a.matrix.inner(&b.matrix)).collect())
            .collect();
        let gram_inverse = invert(&gram)
            .ok_or_else(|| Error::InvalidProblem("equality constraints are linearly dependent".into()))?;
        Ok(ConicProblem {
            n,
            objective,
            equalities,
            cells,
            senses,
            gram_inverse,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn objective(&self) -> &SymMatrix {
        &self.objective
    }

    pub fn equalities(&self) -> &[EqualityConstraint] {
        &self.equalities
    }

    pub fn cells(&self) -> &[CellConstraint] {
        &self.cells
    }

    pub fn sense(&self, u: usize, v: usize) -> Option<Sense> {
        self.senses[(u, v)]
    }

    /// Euclidean projection onto the affine-and-sign set.
    pub fn project_feasible(&self, m: &Matrix<f64>) -> Matrix<f64> {
        let mut out = m.clone();
        for c in &self.cells {
            out[(c.u, c.v)] = c.sense.clip(m[(c.u, c.v)]);
            out[(c.v, c.u)] = c.sense.clip(m[(c.v, c.u)]);
        }
        if !self.equalities.is_empty() {
            let y = self.affine_multipliers(&out, true);
            for (e, yi) in self.equalities.iter().zip(&y) {
                out.add_scaled(&-yi, &e.matrix);
            }
        }
        out
    }

    /// Least-squares `y` with `sum y_i A_i` closest to `m`; with `residual`
    /// the target is `<A_i, m> - b_i` instead of `<A_i, m>`.
    pub(crate) fn affine_multipliers(&self, m: &Matrix<f64>, residual: bool) -> Vec<f64> {
        let rhs: Vec<f64> = self
            .equalities
            .iter()
            .map(|e| e.matrix.inner(m) - if residual { e.rhs } else { 0.0 })
            .collect();
        self.gram_inverse
            .iter()
            .map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest violation of a sign pattern by `m`.
    pub fn sign_violation(&self, m: &Matrix<f64>) -> f64 {
        self.cells
            .iter()
            .map(|c| c.sense.violation(m[(c.u, c.v)]).max(c.sense.violation(m[(c.v, c.u)])))
            .fold(0.0, f64::max)
    }

    /// Largest equality residual `|<A_i, m> - b_i|`.
    pub fn equality_violation(&self, m: &Matrix<f64>) -> f64 {
        self.equalities
            .iter()
            .map(|e| (e.matrix.inner(m) - e.rhs).abs())
            .fold(0.0, f64::max)
    }
}

/// Gauss-Jordan inverse of a small dense matrix.
fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let m = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).max_by(|&x, &y| aug[x][col].abs().total_cmp(&aug[y][col].abs()))?;
        if aug[pivot][col].abs() < 1e-12 {
            return None;
        }
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..m {
            if r != col {
                let f = aug[r][col];
                if f != 0.0 {
                    let pivot_row = aug[col].clone();
                    for (v, pv) in aug[r].iter_mut().zip(pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[m..].to_vec()).collect())
}

/// The three theta formulations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaVariant {
    /// `X o A = 0`
    Lovasz,
    /// `X o A = 0` and `X >= 0` entrywise
    Schrijver,
    /// `X o A <= 0`
    Szegedy,
}

impl ThetaVariant {
    pub const ALL: [ThetaVariant; 3] = [ThetaVariant::Lovasz, ThetaVariant::Schrijver, ThetaVariant::Szegedy];

    pub fn name(self) -> &'static str {
        match self {
            ThetaVariant::Lovasz => "lovasz",
            ThetaVariant::Schrijver => "schrijver",
            ThetaVariant::Szegedy => "szegedy",
        }
    }
}

/// `maximize <J, X>` over PSD `X` with unit trace and the variant's sign
/// pattern on the edges (and, for Schrijver, the non-edges).
pub fn theta_problem(g: &Graph, variant: ThetaVariant) -> Result<ConicProblem> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidGraph("theta needs at least one vertex".into()));
    }
    let mut cells = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let sense = match (variant, g.has_edge(u, v)) {
                (ThetaVariant::Lovasz | ThetaVariant::Schrijver, true) => Some(Sense::Zero),
                (ThetaVariant::Schrijver, false) => Some(Sense::NonNegative),
                (ThetaVariant::Szegedy, true) => Some(Sense::NonPositive),
                _ => None,
            };
            if let Some(sense) = sense {
                cells.push(CellConstraint { u, v, sense });
            }
        }
    }
    let objective = SymMatrix::new(Matrix::ones(n))?;
    let trace = EqualityConstraint {
        matrix: SymMatrix::identity(n),
        rhs: 1.0,
    };
    ConicProblem::new(objective, vec![trace], cells)
}
