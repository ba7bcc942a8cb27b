use serde::{Deserialize, Serialize};
use theta_core::sdp::SolverOptions;
use theta_core::structure::StructureFlags;
use theta_core::Tolerances;

use crate::error::exit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Structure,
    Lemma0,
    CliqueCoclique,
    MainBound,
    ThetaProducts,
    Sandwich,
    EqualityLink,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::Structure,
        CheckName::Lemma0,
        CheckName::CliqueCoclique,
        CheckName::MainBound,
        CheckName::ThetaProducts,
        CheckName::Sandwich,
        CheckName::EqualityLink,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Structure => "structure",
            CheckName::Lemma0 => "lemma0",
            CheckName::CliqueCoclique => "clique_coclique",
            CheckName::MainBound => "main_bound",
            CheckName::ThetaProducts => "theta_products",
            CheckName::Sandwich => "sandwich",
            CheckName::EqualityLink => "equality_link",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    NotConverged,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
            Status::NotConverged => "NOCONV",
            Status::Error => "ERROR",
        }
    }

    fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Error)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub elapsed_ms: f64,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    /// Source as given: graph6 token, generator spec or file line.
    pub source: String,
    pub graph6: Option<String>,
    pub n: Option<usize>,
    pub edges: Option<usize>,
}

/// Numbers gathered along the way, for tables.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Values {
    pub omega: Option<usize>,
    pub alpha: Option<usize>,
    pub chi_complement: Option<usize>,
    pub lovasz: Option<f64>,
    pub lovasz_complement: Option<f64>,
    pub schrijver_complement: Option<f64>,
    pub szegedy: Option<f64>,
    pub lovasz_product: Option<f64>,
    pub variant_product: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceSnapshot {
    pub tolerances: Tolerances,
    pub solver: SolverOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub graph: GraphInfo,
    pub structure: Option<StructureFlags>,
    /// Failing checks first, then in run order.
    pub checks: Vec<CheckResult>,
    pub values: Values,
    pub passed: bool,
    pub exit_code: i32,
    pub timing: Timing,
    pub config: ToleranceSnapshot,
}

impl RunReport {
    /// Order failures first and derive `passed` and `exit_code`.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by_key(|c| !c.status.is_failure());
        let failed = self.checks.iter().any(|c| c.status.is_failure());
        let stalled = self.checks.iter().any(|c| c.status == Status::NotConverged);
        self.passed = !failed && !stalled;
        self.exit_code = if failed {
            exit::FAILURE
        } else if stalled {
            exit::NOT_CONVERGED
        } else {
            exit::PASS
        };
        self
    }

    pub fn status_of(&self, name: CheckName) -> Option<Status> {
        self.checks.iter().find(|c| c.name == name.as_str()).map(|c| c.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: CheckName, status: Status) -> CheckResult {
        CheckResult {
            name: name.as_str().into(),
            status,
            summary: String::new(),
            elapsed_ms: 0.0,
            detail: serde_json::Value::Null,
        }
    }

    fn report(checks: Vec<CheckResult>) -> RunReport {
        RunReport {
            graph: GraphInfo {
                source: "x".into(),
                graph6: None,
                n: None,
                edges: None,
            },
            structure: None,
            checks,
            values: Values::default(),
            passed: false,
            exit_code: 0,
            timing: Timing { total_ms: 0.0 },
            config: ToleranceSnapshot {
                tolerances: Tolerances::default(),
                solver: SolverOptions::default(),
            },
        }
        .finish()
    }

    #[test]
    fn failures_first_and_exit_codes() {
        let r = report(vec![
            check(CheckName::Structure, Status::Pass),
            check(CheckName::Lemma0, Status::NotConverged),
            check(CheckName::Sandwich, Status::Fail),
        ]);
        assert_eq!(r.checks[0].name, "sandwich");
        assert_eq!(r.checks[1].name, "structure");
        assert_eq!(r.exit_code, exit::FAILURE);
        assert!(!r.passed);
        let r = report(vec![
            check(CheckName::Structure, Status::Pass),
            check(CheckName::ThetaProducts, Status::NotConverged),
        ]);
        assert_eq!(r.exit_code, exit::NOT_CONVERGED);
        let r = report(vec![check(CheckName::Lemma0, Status::NotApplicable)]);
        assert!(r.passed);
        assert_eq!(r.exit_code, exit::PASS);
    }
}
