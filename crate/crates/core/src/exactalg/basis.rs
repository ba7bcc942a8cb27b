use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{Rational, RationalMatrix};
use crate::tolerance::Tolerances;

/// Pairwise orthogonal basis of a matrix *-algebra with `basis[0] = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraBasis {
    basis: Vec<RationalMatrix>,
    norms: Vec<Rational>,
    contains_j: bool,
    second_is_a: bool,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.basis[0].n()
    }

    pub fn elements(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// `<P_i, P_i>` for each element.
    pub fn norms(&self) -> &[Rational] {
        &self.norms
    }

    pub fn contains_j(&self) -> bool {
        self.contains_j
    }

    /// True when `basis[1]` is the adjacency matrix of the source graph.
    pub fn second_is_a(&self) -> bool {
        self.second_is_a
    }

    /// Exact orthogonal projection `M' = sum_i <M,P_i>/<P_i,P_i> P_i`.
    pub(crate) fn project_unchecked(&self, m: &RationalMatrix) -> RationalMatrix {
        let mut out = RationalMatrix::zeros(m.n());
        for (p, norm) in self.basis.iter().zip(&self.norms) {
            let c = m.inner(p) / norm;
            out.add_scaled(&c, p);
        }
        out
    }
}

/// Orthogonal basis of the adjacency algebra of `g`, built by Gram-Schmidt on
/// `I, A, A^2, ...` up to the first power that depends on the earlier ones.
pub fn adjacency_algebra_basis(g: &Graph) -> Result<AlgebraBasis> {
    adjacency_algebra_basis_with(g, &Tolerances::default())
}

pub fn adjacency_algebra_basis_with(g: &Graph, tol: &Tolerances) -> Result<AlgebraBasis> {
    let n = g.n();
    let a: RationalMatrix = g.adjacency();
    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let identity: Vec<BigInt> = (0..n * n).map(|k| BigInt::from(u8::from(k % (n + 1) == 0))).collect();
    // Fraction-free Gram-Schmidt: `prims` holds each element scaled to a
    // primitive integer matrix, and only the stored basis is rational.
    let mut prims = vec![identity.clone()];
    let mut prim_norms = vec![BigInt::from(n)];
    let mut basis = vec![RationalMatrix::identity(n)];
    let mut norms = vec![Rational::from_integer(n.into())];
    let mut power = identity;
    loop {
        power = times_adjacency(&power, &neighbors, n);
        let (p, scale) = reduce(&power, &prims, &prim_norms);
        let content = p.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if content.is_zero() {
            break;
        }
        let element = RationalMatrix::from_row_major(
            n,
            p.iter().map(|x| Rational::new(x.clone(), scale.clone())).collect(),
        );
        let bits = element.max_denominator_bits();
        if bits > tol.denominator_bits {
            return Err(Error::DenominatorOverflow {
                bits,
                cap: tol.denominator_bits,
            });
        }
        norms.push(Rational::new(int_inner(&p, &p), &scale * &scale));
        let q: Vec<BigInt> = p.iter().map(|x| x / &content).collect();
        prim_norms.push(int_inner(&q, &q));
        prims.push(q);
        basis.push(element);
    }
    let ones = vec![BigInt::one(); n * n];
    let contains_j = reduce(&ones, &prims, &prim_norms).0.iter().all(|x| x.is_zero());
    Ok(AlgebraBasis {
        second_is_a: basis.len() > 1 && basis[1] == a,
        basis,
        norms,
        contains_j,
    })
}

/// Component of `m` orthogonal to the integer matrices `prims`, returned as
/// `(scale * component, scale)` with the first entry an integer matrix.
fn reduce(m: &[BigInt], prims: &[Vec<BigInt>], prim_norms: &[BigInt]) -> (Vec<BigInt>, BigInt) {
    let coeffs: Vec<BigInt> = prims.iter().map(|q| int_inner(m, q)).collect();
    let scale = coeffs
        .iter()
        .zip(prim_norms)
        .filter(|(c, _)| !c.is_zero())
        .fold(BigInt::one(), |l, (c, nq)| l.lcm(&(nq / c.gcd(nq))));
    let mut p: Vec<BigInt> = m.iter().map(|x| x * &scale).collect();
    for ((q, c), nq) in prims.iter().zip(&coeffs).zip(prim_norms) {
        if c.is_zero() {
            continue;
        }
        let f = &scale * c / nq;
        for (x, y) in p.iter_mut().zip(q) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    (p, scale)
}

/// `m A` for row-major `m`, summing columns over neighbourhoods.
fn times_adjacency(m: &[BigInt], neighbors: &[Vec<usize>], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for (j, nb) in neighbors.iter().enumerate() {
            out[i * n + j] = nb.iter().map(|&k| &m[i * n + k]).sum();
        }
    }
    out
}

fn int_inner(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}
