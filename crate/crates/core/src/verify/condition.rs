use serde::{Deserialize, Serialize};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{Matrix, Rational, Scalar};
use crate::numla::SymMatrix;
use crate::tolerance::Tolerances;
use crate::verify::report::{Precondition, ReportTolerances, Tier};

/// Sign patterns of a pair `(M, N)` relative to `A` and its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `M o A = 0` and `N o A-bar = 0`
    A,
    /// `M o A <= 0`, `N o A-bar = 0` and `N o A >= 0`
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operand {
    M,
    N,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellViolation {
    pub matrix: Operand,
    pub u: usize,
    pub v: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub tier: Tier,
    pub holds: bool,
    pub max_violation: f64,
    /// Cell with the largest violation.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<CellViolation>,
    pub tolerance: f64,
}

pub fn check_condition<T: Scalar>(
    m: &Matrix<T>,
    n: &Matrix<T>,
    g: &Graph,
    which: Condition,
    tol: &Tolerances,
) -> Result<ConditionReport> {
    for x in [m, n] {
        if x.n() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: g.n(),
                got: x.n(),
            });
        }
    }
    let zero = T::zero();
    let mut worst = zero.clone();
    let mut witness: Option<(Operand, usize, usize)> = None;
    let mut record = |violation: T, op: Operand, u: usize, v: usize| {
        if violation > worst {
            worst = violation;
            witness = Some((op, u, v));
        }
    };
    for u in 0..g.n() {
        for v in 0..g.n() {
            if u == v {
                continue;
            }
            let (mv, nv) = (&m[(u, v)], &n[(u, v)]);
            if g.has_edge(u, v) {
                let mviol = match which {
                    Condition::A => mv.abs_val(),
                    Condition::B if *mv > zero => mv.clone(),
                    Condition::B => zero.clone(),
                };
                record(mviol, Operand::M, u, v);
                if which == Condition::B && *nv < zero {
                    record(-nv.clone(), Operand::N, u, v);
                }
            } else {
                record(nv.abs_val(), Operand::N, u, v);
            }
        }
    }
    let tier = Tier::of::<T>();
    let tolerance = ReportTolerances::new(tier, tol).num_tol;
    let max_violation = worst.to_f64();
    let holds = if T::EXACT {
        worst.is_zero()
    } else {
        max_violation <= tolerance
    };
    Ok(ConditionReport {
        condition: which,
        tier,
        holds,
        max_violation,
        witness: witness.map(|(matrix, u, v)| CellViolation {
            matrix,
            u,
            v,
            value: match matrix {
                Operand::M => m[(u, v)].to_f64(),
                Operand::N => n[(u, v)].to_f64(),
            },
        }),
        tolerance,
    })
}

/// Exact PSD test by symmetric elimination: a zero pivot needs a zero row,
/// a negative pivot refutes.
fn rational_psd(m: &Matrix<Rational>) -> bool {
    let mut a = m.clone();
    let n = a.n();
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&p) = active.first() {
        active.remove(0);
        let pivot = a[(p, p)].clone();
        if pivot < Rational::from_int(0) {
            return false;
        }
        if pivot.is_zero() {
            if active.iter().any(|&j| !a[(p, j)].is_zero()) {
                return false;
            }
            continue;
        }
        for &i in &active {
            let f = a[(i, p)].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let d = f.clone() * a[(p, j)].clone();
                a[(i, j)] = a[(i, j)].clone() - d;
            }
        }
    }
    true
}

/// `name` is PSD: exactly for rational input, otherwise smallest eigenvalue
/// at least `-num_tol (1 + ||m||_F)`.
pub(crate) fn psd_precondition<T: Scalar>(name: &str, m: &Matrix<T>, tol: &Tolerances) -> Result<Precondition> {
    if T::EXACT {
        let r = m.map(|v| v.to_rational().unwrap_or_default());
        let holds = m.is_symmetric() && rational_psd(&r);
        return Ok(Precondition::new(name, holds, None));
    }
    let f = m.map(|v| v.to_f64());
    let scale = 1.0 + f.frobenius();
    let lambda = SymMatrix::new(f)?.min_eigenvalue()?;
    Ok(Precondition::new(
        name,
        lambda >= -tol.num_tol * scale,
        Some(format!("min eigenvalue {lambda:.3e}")),
    ))
}
