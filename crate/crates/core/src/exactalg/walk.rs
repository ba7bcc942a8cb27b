use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactalg::basis::{adjacency_algebra_basis_with, AlgebraBasis};
use crate::graph::Graph;
use crate::matrix::{Rational, RationalMatrix};
use crate::tolerance::Tolerances;

/// Walk counts `a_k` (closed walks at a vertex) and `b_k` (walks along an edge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkConstants {
    pub k: usize,
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkSupport {
    Diagonal,
    Edge,
}

/// First place where `A^k` fails to be constant on the diagonal or on the edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkWitness {
    pub k: usize,
    pub cell: (usize, usize),
    pub support: WalkSupport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneWalkReport {
    pub is_one_walk_regular: bool,
    /// `(a_k, b_k)` for `k = 0..dim`, filled only when the graph is 1-walk regular.
    pub constants: Vec<WalkConstants>,
    pub failure_witness: Option<WalkWitness>,
    pub algebra_dim: usize,
}

fn to_integer(r: &Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

/// Decide 1-walk regularity from the orthogonal adjacency-algebra basis:
/// every basis element past `A` must vanish on the diagonal and on the edges.
pub fn is_one_walk_regular(g: &Graph) -> Result<OneWalkReport> {
    let basis = adjacency_algebra_basis_with(g, &Tolerances::default())?;
    Ok(one_walk_report(g, &basis))
}

pub fn one_walk_report(g: &Graph, basis: &AlgebraBasis) -> OneWalkReport {
    let n = g.n();
    let dim = basis.dim();
    let elements = basis.elements();
    let vanishes = elements.iter().skip(2).all(|p| {
        (0..n).all(|u| p[(u, u)].is_zero()) && g.edges().all(|(u, v)| p[(u, v)].is_zero())
    });
    let regular = g.is_regular();
    if vanishes && regular {
        let a: RationalMatrix = g.adjacency();
        let mut power = RationalMatrix::identity(n);
        let mut constants = Vec::with_capacity(dim);
        for k in 0..dim {
            if k > 0 {
                power = power.matmul(&a);
            }
            let coef = |i: usize| -> Rational {
                elements.get(i).map_or(Rational::zero(), |p| power.inner(p) / &basis.norms()[i])
            };
            let b = if basis.second_is_a() { coef(1) } else { Rational::zero() };
            constants.push(WalkConstants {
                k,
                a: to_integer(&coef(0)),
                b: to_integer(&b),
            });
        }
        return OneWalkReport {
            is_one_walk_regular: true,
            constants,
            failure_witness: None,
            algebra_dim: dim,
        };
    }
    OneWalkReport {
        is_one_walk_regular: false,
        constants: Vec::new(),
        failure_witness: find_witness(g, dim),
        algebra_dim: dim,
    }
}

fn find_witness(g: &Graph, dim: usize) -> Option<WalkWitness> {
    let n = g.n();
    let a: RationalMatrix = g.adjacency();
    let edges: Vec<_> = g.edges().collect();
    let mut power = a.clone();
    for k in 2..=dim.max(2) {
        power = power.matmul(&a);
        if let Some(u) = (1..n).find(|&u| power[(u, u)] != power[(0, 0)]) {
            return Some(WalkWitness {
                k,
                cell: (u, u),
                support: WalkSupport::Diagonal,
            });
        }
        if let Some(&(u0, v0)) = edges.first() {
            if let Some(&cell) = edges.iter().find(|&&(u, v)| power[(u, v)] != power[(u0, v0)]) {
                return Some(WalkWitness {
                    k,
                    cell,
                    support: WalkSupport::Edge,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, petersen};

    fn constants(r: &OneWalkReport, k: usize) -> (i64, i64) {
        let c = &r.constants[k];
        (c.a.clone().try_into().unwrap(), c.b.clone().try_into().unwrap())
    }

    #[test]
    fn petersen_is_one_walk_regular() {
        let r = is_one_walk_regular(&petersen()).unwrap();
        assert!(r.is_one_walk_regular);
        assert_eq!(r.constants.len(), 3);
        assert_eq!(constants(&r, 0), (1, 0));
        assert_eq!(constants(&r, 1), (0, 1));
        assert_eq!(constants(&r, 2), (3, 0));
    }

    #[test]
    fn path_three_fails_on_diagonal() {
        let r = is_one_walk_regular(&path(3)).unwrap();
        assert!(!r.is_one_walk_regular);
        let w = r.failure_witness.unwrap();
        assert_eq!(w.k, 2);
        assert_eq!(w.support, WalkSupport::Diagonal);
    }

    #[test]
    fn six_cycle() {
        let r = is_one_walk_regular(&cycle(6)).unwrap();
        assert!(r.is_one_walk_regular);
        assert_eq!(constants(&r, 2), (2, 0));
        // dim = 4 distinct eigenvalues (2, 1, -1, -2)
        assert_eq!(r.algebra_dim, 4);
        assert_eq!(constants(&r, 3), (0, 3));
    }
}
