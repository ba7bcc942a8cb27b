//! Exact rational algebra: orthogonal bases of adjacency algebras,
//! 1-walk regularity, coherent closures and orthogonal projection.

mod basis;
mod coherent;
mod gram_schmidt;
mod walk;

pub use basis::{adjacency_algebra_basis, adjacency_algebra_basis_with, AlgebraBasis};
pub use coherent::{
    check_coherent_axioms, wl_closure, wl_closure_with_cap, AxiomCheck, AxiomReport, AxiomWitness,
    CoherentConfiguration, ConfigurationDocument, CLOSURE_CAP,
};
pub use gram_schmidt::gram_schmidt;
pub use walk::{is_one_walk_regular, one_walk_report, OneWalkReport, WalkConstants, WalkSupport, WalkWitness};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

/// Exact orthogonal projection onto the span of an [`AlgebraBasis`].
pub fn project(m: &RationalMatrix, b: &AlgebraBasis) -> Result<RationalMatrix> {
    if m.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            got: m.n(),
        });
    }
    Ok(b.project_unchecked(m))
}

/// Exact orthogonal projection onto the span of arbitrary pairwise orthogonal
/// matrices. Orthogonality and non-zero elements are checked.
pub fn project_onto(m: &RationalMatrix, basis: &[RationalMatrix]) -> Result<RationalMatrix> {
    let mut norms = Vec::with_capacity(basis.len());
    for (i, p) in basis.iter().enumerate() {
        if p.n() != m.n() {
            return Err(Error::DimensionMismatch {
                expected: m.n(),
                got: p.n(),
            });
        }
        let norm = p.frobenius_sq();
        if norm.is_zero() {
            return Err(Error::ZeroBasisElement(i));
        }
        for (j, q) in basis[..i].iter().enumerate() {
            if !p.inner(q).is_zero() {
                return Err(Error::NotOrthogonal(j, i));
            }
        }
        norms.push(norm);
    }
    let mut out = RationalMatrix::zeros(m.n());
    for (p, norm) in basis.iter().zip(&norms) {
        out.add_scaled(&(m.inner(p) / norm), p);
    }
    Ok(out)
}
