//! Machine checks of the trace lemmas, the ratio bound and the theta
//! identities, each producing a serializable report.

mod basis;
mod condition;
mod lemma0;
mod lemmas;
mod main_bound;
mod report;
mod thetas;

pub use basis::ProjectionBasis;
pub use condition::{check_condition, CellViolation, Condition, ConditionReport, Operand};
pub use lemma0::{lemma0_algebra, lemma0_configuration, Lemma0Part, Lemma0Report, Lemma0Source};
pub use lemmas::{lemma1_check, lemma2_check, multiple_of_j_certificate, trace_identities, TraceIdentities};
pub use main_bound::{applicable_structures, main_bound_check, main_bound_checks, MainBoundReport, StructureKind};
pub use report::{
    BoundSense, EqualityCertificate, ExactValues, InequalityReport, PerTerm, Precondition, ReportTolerances, Tier,
};
pub use thetas::{
    equality_link, product_report, sandwich_check, sandwich_from, theta_product_check, ProductReport,
    ProductSolutions, SandwichLink, SandwichReport, ThetaSummary,
};
