//! Which of the two covered graph classes a graph belongs to.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactalg::{
    adjacency_algebra_basis, one_walk_report, wl_closure, AlgebraBasis, CoherentConfiguration, OneWalkReport,
};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFlags {
    /// The coherent closure contains the identity as a class.
    pub homogeneous_coherent: bool,
    pub one_walk_regular: bool,
    pub connected: bool,
    /// `J` lies in the adjacency algebra.
    pub adjacency_contains_j: bool,
}

impl StructureFlags {
    /// Membership in a homogeneous coherent configuration, or 1-walk regular.
    pub fn qualifies(&self) -> bool {
        self.homogeneous_coherent || self.one_walk_regular
    }

    /// Qualifies for the theta product equalities: homogeneous coherent, or
    /// 1-walk regular and connected.
    pub fn qualifies_for_products(&self) -> bool {
        self.homogeneous_coherent || (self.one_walk_regular && self.connected)
    }
}

/// The algebraic data computed for a graph: its coherent closure, its
/// adjacency-algebra basis and the 1-walk regularity verdict.
#[derive(Clone, Debug)]
pub struct GraphStructure {
    pub closure: CoherentConfiguration,
    pub adjacency_basis: AlgebraBasis,
    pub walk: OneWalkReport,
    pub flags: StructureFlags,
}

impl GraphStructure {
    pub fn detect(g: &Graph) -> Result<Self> {
        let closure = wl_closure(g)?;
        let adjacency_basis = adjacency_algebra_basis(g)?;
        let walk = one_walk_report(g, &adjacency_basis);
        let flags = StructureFlags {
            homogeneous_coherent: closure.is_homogeneous(),
            one_walk_regular: walk.is_one_walk_regular,
            connected: g.is_connected(),
            adjacency_contains_j: adjacency_basis.contains_j(),
        };
        Ok(GraphStructure {
            closure,
            adjacency_basis,
            walk,
            flags,
        })
    }
}
