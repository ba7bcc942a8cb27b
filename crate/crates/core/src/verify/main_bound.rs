use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{negligible, Matrix, Scalar};
use crate::structure::GraphStructure;
use crate::tolerance::Tolerances;
use crate::verify::basis::ProjectionBasis;
use crate::verify::condition::{check_condition, psd_precondition, Condition, ConditionReport};
use crate::verify::lemmas::{lemma1_check, lemma2_check};
use crate::verify::report::{BoundSense, InequalityReport, Precondition, Tier};

/// Which algebra carries the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    /// Coherent closure of a connected graph, when homogeneous.
    Coherent,
    /// Adjacency algebra of a 1-walk regular graph.
    WalkRegular,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MainBoundReport {
    pub structure: StructureKind,
    pub tier: Tier,
    /// The condition the pair satisfies (`A` when both do).
    pub condition: Condition,
    pub conditions: Vec<ConditionReport>,
    /// `(tr JM)(tr JN) / ((tr M)(tr N)) <= n`
    pub bound: InequalityReport,
    pub lemma1: InequalityReport,
    pub lemma2: InequalityReport,
    /// `M'N'` is a multiple of `J` and every cross term vanishes.
    pub characterization: bool,
    /// `bound.equality` agrees with `characterization`.
    pub consistent: bool,
}

impl MainBoundReport {
    pub fn passed(&self) -> bool {
        self.bound.passed() && self.lemma1.passed() && self.lemma2.passed()
    }
}

/// Structures under which the bound is claimed for `g`.
pub fn applicable_structures(s: &GraphStructure) -> Vec<StructureKind> {
    let mut out = Vec::new();
    if s.flags.homogeneous_coherent && s.flags.connected {
        out.push(StructureKind::Coherent);
    }
    if s.flags.one_walk_regular && s.flags.adjacency_contains_j {
        out.push(StructureKind::WalkRegular);
    }
    out
}

fn validate(s: &GraphStructure, kind: StructureKind) -> Result<()> {
    let f = &s.flags;
    match kind {
        StructureKind::Coherent if !f.homogeneous_coherent => {
            Err(Error::NotApplicable("coherent closure is not homogeneous".into()))
        }
        StructureKind::Coherent if !f.connected => Err(Error::NotApplicable("graph is not connected".into())),
        StructureKind::WalkRegular if !f.one_walk_regular => {
            Err(Error::NotApplicable("graph is not 1-walk regular".into()))
        }
        // The walk-regular statement omits connectivity, but the lower trace
        // bound needs J in the adjacency algebra.
        StructureKind::WalkRegular if !f.adjacency_contains_j => Err(Error::NotApplicable(
            "1-walk regular but J is not in the adjacency algebra (graph disconnected)".into(),
        )),
        _ => Ok(()),
    }
}

/// `n >= (tr JM)(tr JN) / ((tr M)(tr N))` for non-zero PSD `M`, `N` satisfying
/// condition A or B, with both equality certificates.
pub fn main_bound_check<T: Scalar>(
    m: &Matrix<T>,
    n: &Matrix<T>,
    g: &Graph,
    s: &GraphStructure,
    kind: StructureKind,
    tol: &Tolerances,
) -> Result<MainBoundReport> {
    validate(s, kind)?;
    let conditions = vec![
        check_condition(m, n, g, Condition::A, tol)?,
        check_condition(m, n, g, Condition::B, tol)?,
    ];
    let condition = conditions
        .iter()
        .find(|c| c.holds)
        .map(|c| c.condition)
        .ok_or_else(|| Error::NotApplicable("the pair satisfies neither condition A nor condition B".into()))?;
    let (tm, tn) = (m.trace(), n.trace());
    if negligible(&tm, tol.num_tol) {
        return Err(Error::ZeroTrace("M"));
    }
    if negligible(&tn, tol.num_tol) {
        return Err(Error::ZeroTrace("N"));
    }
    let basis = match kind {
        StructureKind::Coherent => ProjectionBasis::from_configuration(&s.closure)?,
        StructureKind::WalkRegular => ProjectionBasis::from_algebra(&s.adjacency_basis),
    };
    let lemma1 = lemma1_check(m, n, &basis, tol)?;
    let lemma2 = lemma2_check(m, n, &basis, tol)?;

    let ratio = m.sum() * n.sum() / (tm * tn);
    let size = T::from_int(g.n() as i64);
    let pre = vec![
        Precondition::new("structure", true, Some(format!("{kind:?}"))),
        Precondition::new("condition", true, Some(format!("{condition:?}"))),
        psd_precondition("m_psd", m, tol)?,
        psd_precondition("n_psd", n, tol)?,
    ];
    let mut bound = InequalityReport::evaluate("clique_coclique_ratio_bound", BoundSense::Upper, &ratio, &size, pre, tol);
    bound.per_term = lemma1.per_term.clone();
    bound.certificate = lemma2.certificate.clone();
    let characterization = lemma1.equality && lemma2.equality;
    Ok(MainBoundReport {
        structure: kind,
        tier: bound.tier,
        condition,
        conditions,
        consistent: bound.equality == characterization,
        characterization,
        bound,
        lemma1,
        lemma2,
    })
}

/// Run the bound over every applicable structure.
pub fn main_bound_checks<T: Scalar>(
    m: &Matrix<T>,
    n: &Matrix<T>,
    g: &Graph,
    s: &GraphStructure,
    tol: &Tolerances,
) -> Result<Vec<MainBoundReport>> {
    let kinds = applicable_structures(s);
    if kinds.is_empty() {
        return Err(Error::NotApplicable(
            "graph is neither connected homogeneous coherent nor connected 1-walk regular".into(),
        ));
    }
    kinds
        .into_iter()
        .map(|k| main_bound_check(m, n, g, s, k, tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen};
    use crate::matrix::RationalMatrix;
    use crate::oracle::{max_clique, max_coclique};

    fn rank_one_pair(g: &Graph) -> (RationalMatrix, RationalMatrix) {
        let n = g.n();
        let t = max_coclique(g).unwrap().indicator(n);
        let s = max_clique(g).unwrap().indicator(n);
        (
            RationalMatrix::from_integers(n, |i, j| t[i] * t[j]),
            RationalMatrix::from_integers(n, |i, j| s[i] * s[j]),
        )
    }

    #[test]
    fn petersen_clique_coclique_both_structures() {
        let g = petersen();
        let s = GraphStructure::detect(&g).unwrap();
        let (m, n) = rank_one_pair(&g);
        let reports = main_bound_checks(&m, &n, &g, &s, &Tolerances::default()).unwrap();
        assert_eq!(reports.len(), 2);
        for r in &reports {
            assert_eq!(r.bound.lhs, 8.0);
            assert_eq!(r.bound.rhs, 10.0);
            assert!(r.bound.holds && !r.bound.equality && r.passed() && r.consistent);
            assert_eq!(r.condition, Condition::A);
            assert_eq!(r.tier, Tier::Exact);
        }
    }

    #[test]
    fn identity_pair_ratio_is_one() {
        let g = cycle(5);
        let s = GraphStructure::detect(&g).unwrap();
        let i = RationalMatrix::identity(5);
        let r = main_bound_check(&i, &i, &g, &s, StructureKind::Coherent, &Tolerances::default()).unwrap();
        assert_eq!(r.bound.lhs, 1.0);
        assert!(r.bound.holds && r.consistent);
    }

    #[test]
    fn complete_graph_attains_equality() {
        let g = complete(6);
        let s = GraphStructure::detect(&g).unwrap();
        let (m, n) = rank_one_pair(&g);
        for r in main_bound_checks(&m, &n, &g, &s, &Tolerances::default()).unwrap() {
            assert!(r.bound.equality && r.characterization && r.consistent);
        }
    }

    #[test]
    fn rejections() {
        let tol = Tolerances::default();
        let g = path(4);
        let s = GraphStructure::detect(&g).unwrap();
        let i = RationalMatrix::identity(4);
        assert!(matches!(main_bound_checks(&i, &i, &g, &s, &tol), Err(Error::NotApplicable(_))));

        let g = cycle(5);
        let s = GraphStructure::detect(&g).unwrap();
        let j = RationalMatrix::ones(5);
        assert!(matches!(
            main_bound_check(&j, &j, &g, &s, StructureKind::Coherent, &tol),
            Err(Error::NotApplicable(_))
        ));
        let z = RationalMatrix::zeros(5);
        assert!(matches!(
            main_bound_check(&z, &i_of(5), &g, &s, StructureKind::Coherent, &tol),
            Err(Error::ZeroTrace("M"))
        ));

        let two = complete(3).disjoint_union(&complete(3));
        let s = GraphStructure::detect(&two).unwrap();
        let i6 = i_of(6);
        let err = main_bound_check(&i6, &i6, &two, &s, StructureKind::WalkRegular, &tol).unwrap_err();
        assert!(err.to_string().contains("J is not in the adjacency algebra"));
    }

    fn i_of(n: usize) -> RationalMatrix {
        RationalMatrix::identity(n)
    }
}
