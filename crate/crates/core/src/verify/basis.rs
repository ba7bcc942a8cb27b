use crate::error::{Error, Result};
use crate::exactalg::{AlgebraBasis, CoherentConfiguration};
use crate::matrix::{Matrix, Scalar};

/// Orthogonal basis used by the trace lemmas, over either scalar type.
///
/// Coherent configurations are kept as a colour map: the classes are
/// disjointly supported 0/1 matrices, so `<M, A_k>` is a class sum,
/// `<A_k, A_k>` is the class size and projection is averaging per class.
#[derive(Clone, Debug)]
pub enum ProjectionBasis<T> {
    Dense {
        elements: Vec<Matrix<T>>,
        norms: Vec<T>,
        contains_j: bool,
    },
    Partition {
        n: usize,
        color: Vec<usize>,
        sizes: Vec<usize>,
        identity: Option<usize>,
    },
}

impl<T: Scalar> ProjectionBasis<T> {
    pub fn from_algebra(b: &AlgebraBasis) -> Self {
        ProjectionBasis::Dense {
            elements: b.elements().iter().map(|m| m.map(T::from_rational)).collect(),
            norms: b.norms().iter().map(T::from_rational).collect(),
            contains_j: b.contains_j(),
        }
    }

    pub fn from_configuration(c: &CoherentConfiguration) -> Result<Self> {
        if !c.is_partition() {
            return Err(Error::InvalidGraph("classes do not partition the cells".into()));
        }
        Ok(ProjectionBasis::Partition {
            n: c.n(),
            color: c.colors().to_vec(),
            sizes: c.class_sizes(),
            identity: c.identity_index(),
        })
    }

    pub fn n(&self) -> usize {
        match self {
            ProjectionBasis::Dense { elements, .. } => elements[0].n(),
            ProjectionBasis::Partition { n, .. } => *n,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ProjectionBasis::Dense { elements, .. } => elements.len(),
            ProjectionBasis::Partition { sizes, .. } => sizes.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the element equal to `I`, if any.
    pub fn identity_index(&self) -> Option<usize> {
        match self {
            ProjectionBasis::Dense { elements, .. } => {
                let i = Matrix::identity(elements[0].n());
                elements.iter().position(|e| *e == i)
            }
            ProjectionBasis::Partition { identity, .. } => *identity,
        }
    }

    /// Every element has constant diagonal.
    pub fn is_homogeneous(&self) -> bool {
        match self {
            ProjectionBasis::Dense { elements, .. } => elements.iter().all(|e| {
                let d = &e[(0, 0)];
                (1..e.n()).all(|i| e[(i, i)] == *d)
            }),
            ProjectionBasis::Partition { identity, .. } => identity.is_some(),
        }
    }

    pub fn contains_j(&self) -> bool {
        match self {
            ProjectionBasis::Dense { contains_j, .. } => *contains_j,
            ProjectionBasis::Partition { .. } => true,
        }
    }

    pub fn check_size(&self, m: &Matrix<T>) -> Result<()> {
        if m.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: m.n(),
            });
        }
        Ok(())
    }

    /// `<M, P_i>` for every element.
    pub fn coefficients(&self, m: &Matrix<T>) -> Vec<T> {
        match self {
            ProjectionBasis::Dense { elements, .. } => elements.iter().map(|p| m.inner(p)).collect(),
            ProjectionBasis::Partition { color, sizes, .. } => {
                let mut sums = vec![T::zero(); sizes.len()];
                for (&c, v) in color.iter().zip(m.as_slice()) {
                    sums[c] = sums[c].clone() + v.clone();
                }
                sums
            }
        }
    }

    /// `<P_i, P_i>` for every element.
    pub fn norms(&self) -> Vec<T> {
        match self {
            ProjectionBasis::Dense { norms, .. } => norms.clone(),
            ProjectionBasis::Partition { sizes, .. } => sizes.iter().map(|&s| T::from_int(s as i64)).collect(),
        }
    }

    /// `M' = sum_i <M, P_i> / <P_i, P_i> P_i`
    pub fn project(&self, m: &Matrix<T>) -> Matrix<T> {
        let weights: Vec<T> = self
            .coefficients(m)
            .into_iter()
            .zip(self.norms())
            .map(|(c, w)| c / w)
            .collect();
        match self {
            ProjectionBasis::Dense { elements, .. } => {
                let mut out = Matrix::zeros(m.n());
                for (p, w) in elements.iter().zip(&weights) {
                    out.add_scaled(w, p);
                }
                out
            }
            ProjectionBasis::Partition { n, color, .. } => {
                Matrix::from_row_major(*n, color.iter().map(|&c| weights[c].clone()).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{adjacency_algebra_basis, wl_closure};
    use crate::graph::petersen;
    use crate::matrix::{Rational, RationalMatrix};

    #[test]
    fn both_petersen_bases_agree() {
        let g = petersen();
        let dense: ProjectionBasis<Rational> = ProjectionBasis::from_algebra(&adjacency_algebra_basis(&g).unwrap());
        let part: ProjectionBasis<Rational> = ProjectionBasis::from_configuration(&wl_closure(&g).unwrap()).unwrap();
        let m = RationalMatrix::from_integers(10, |i, j| ((i * 7 + j * 3) % 5) as i64);
        assert_eq!(dense.project(&m), part.project(&m));
        assert_eq!(dense.identity_index(), Some(0));
        assert!(part.identity_index().is_some());
        assert!(dense.is_homogeneous() && part.is_homogeneous());
    }
}
