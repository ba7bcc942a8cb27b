use serde::{Deserialize, Serialize};

use crate::matrix::Scalar;
use crate::tolerance::Tolerances;

/// Exact reports compare with zero tolerance; float reports use `num_tol`
/// for feasibility and `eq_tol` for equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Exact,
    Float,
}

impl Tier {
    pub fn of<T: Scalar>() -> Self {
        if T::EXACT {
            Tier::Exact
        } else {
            Tier::Float
        }
    }
}

/// Tolerances a report was evaluated with.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportTolerances {
    pub num_tol: f64,
    pub eq_tol: f64,
}

impl ReportTolerances {
    pub fn new(tier: Tier, tol: &Tolerances) -> Self {
        match tier {
            Tier::Exact => ReportTolerances { num_tol: 0.0, eq_tol: 0.0 },
            Tier::Float => ReportTolerances {
                num_tol: tol.num_tol,
                eq_tol: tol.eq_tol,
            },
        }
    }
}

/// `Upper`: the statement is `lhs <= rhs`; `Lower`: `lhs >= rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSense {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Precondition {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Precondition {
    pub fn new(name: &str, holds: bool, detail: Option<String>) -> Self {
        Precondition {
            name: name.to_string(),
            holds,
            detail,
        }
    }
}

/// `<M, P_i><P_i, N>` for basis element `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerTerm {
    pub index: usize,
    /// The element is the identity; the equality condition skips it.
    pub identity: bool,
    pub product: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
}

/// Fit of `P = M'N'` by a multiple of `J`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualityCertificate {
    /// Mean entry of `P`, the least-squares multiple of `J`.
    pub mean_entry: f64,
    /// `||P - mean_entry J||_F`
    pub residual: f64,
    /// `||P||_F`
    pub norm: f64,
    /// Largest residual accepted as a multiple of `J`.
    pub threshold: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValues {
    pub lhs: String,
    pub rhs: String,
    pub slack: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub statement: String,
    pub tier: Tier,
    pub sense: BoundSense,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs` for upper bounds, `lhs - rhs` for lower bounds.
    pub slack: f64,
    pub holds: bool,
    pub equality: bool,
    /// All preconditions hold, so the statement claims `holds`.
    pub applicable: bool,
    pub preconditions: Vec<Precondition>,
    pub per_term: Vec<PerTerm>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<EqualityCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactValues>,
    pub tolerances: ReportTolerances,
}

impl InequalityReport {
    /// Pass unless the statement applies and fails.
    pub fn passed(&self) -> bool {
        !self.applicable || self.holds
    }

    /// Fill in `lhs`, `rhs`, `slack`, `holds` and a tolerance-based `equality`
    /// from exact or float values.
    pub(crate) fn evaluate<T: Scalar>(
        statement: &str,
        sense: BoundSense,
        lhs: &T,
        rhs: &T,
        preconditions: Vec<Precondition>,
        tol: &Tolerances,
    ) -> Self {
        let tier = Tier::of::<T>();
        let tolerances = ReportTolerances::new(tier, tol);
        let slack = match sense {
            BoundSense::Upper => rhs.clone() - lhs.clone(),
            BoundSense::Lower => lhs.clone() - rhs.clone(),
        };
        let (holds, equality) = if T::EXACT {
            (slack >= T::zero(), slack.is_zero())
        } else {
            let s = slack.to_f64();
            (s >= -tolerances.num_tol, s.abs() <= tolerances.eq_tol)
        };
        let exact = T::EXACT.then(|| ExactValues {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            slack: slack.to_string(),
        });
        InequalityReport {
            statement: statement.to_string(),
            tier,
            sense,
            lhs: lhs.to_f64(),
            rhs: rhs.to_f64(),
            slack: slack.to_f64(),
            holds,
            equality,
            applicable: preconditions.iter().all(|p| p.holds),
            preconditions,
            per_term: Vec::new(),
            certificate: None,
            exact,
            tolerances,
        }
    }
}

/// Exact display of a scalar; `None` for floats.
pub(crate) fn exact_string<T: Scalar>(v: &T) -> Option<String> {
    T::EXACT.then(|| v.to_string())
}
