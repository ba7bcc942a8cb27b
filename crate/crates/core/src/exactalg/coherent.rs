//! Coherent configurations and the Weisfeiler-Leman coherent closure.
//!
//! A configuration is stored as a colour map over the `n x n` cells; class
//! `i` is the 0/1 matrix of cells with colour `i`. Class matrices are only
//! materialised on request, so closures of graphs with many classes stay cheap.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{Rational, RationalMatrix};

/// Largest vertex count accepted by [`wl_closure`].
pub const CLOSURE_CAP: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentConfiguration {
    n: usize,
    color: Vec<usize>,
    class_count: usize,
    identity_index: Option<usize>,
    graph_classes: Vec<usize>,
    /// First cell covered zero or several times by the classes given to
    /// [`CoherentConfiguration::from_classes`].
    partition_defect: Option<(usize, usize)>,
}

impl CoherentConfiguration {
    /// Build from a colour map with colours `0..class_count`.
    pub fn from_colors(n: usize, color: Vec<usize>, graph_classes: Vec<usize>) -> Result<Self> {
        if color.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: color.len(),
            });
        }
        let class_count = color.iter().max().map_or(0, |&m| m + 1);
        let mut c = CoherentConfiguration {
            n,
            color,
            class_count,
            identity_index: None,
            graph_classes,
            partition_defect: None,
        };
        c.identity_index = c.find_identity();
        Ok(c)
    }

    /// Build from explicit 0/1 class matrices. Classes that overlap or leave
    /// cells uncovered are accepted; the defect is reported by
    /// [`check_coherent_axioms`].
    pub fn from_classes(classes: &[RationalMatrix]) -> Result<Self> {
        let first = classes
            .first()
            .ok_or(Error::EmptyInput("a configuration needs at least one class"))?;
        let n = first.n();
        let mut color = vec![usize::MAX; n * n];
        let mut defect = None;
        for (idx, m) in classes.iter().enumerate() {
            if m.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.n() });
            }
            for (i, j, v) in m.iter_cells() {
                if v.is_one() {
                    let cell = &mut color[i * n + j];
                    if *cell == usize::MAX {
                        *cell = idx;
                    } else if defect.is_none() {
                        defect = Some((i, j));
                    }
                } else if !v.is_zero() {
                    return Err(Error::InvalidGraph(format!(
                        "class {idx} has non-0/1 entry at ({i}, {j})"
                    )));
                }
            }
        }
        if defect.is_none() {
            defect = color.iter().position(|&c| c == usize::MAX).map(|k| (k / n, k % n));
        }
        let mut c = CoherentConfiguration {
            n,
            color,
            class_count: classes.len(),
            identity_index: None,
            graph_classes: Vec::new(),
            partition_defect: defect,
        };
        c.identity_index = c.find_identity();
        Ok(c)
    }

    fn find_identity(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        let k = self.color[0];
        let diagonal = (0..self.n).all(|u| self.color[u * self.n + u] == k);
        let off = self
            .color
            .iter()
            .enumerate()
            .all(|(idx, &c)| c != k || idx / self.n == idx % self.n);
        (diagonal && off).then_some(k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of classes, `d + 1`.
    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn d(&self) -> usize {
        self.class_count.saturating_sub(1)
    }

    pub fn color(&self, u: usize, v: usize) -> usize {
        self.color[u * self.n + v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    /// True when every cell lies in exactly one class.
    pub fn is_partition(&self) -> bool {
        self.partition_defect.is_none()
    }

    pub fn identity_index(&self) -> Option<usize> {
        self.identity_index
    }

    /// Homogeneous iff the identity matrix is one of the classes.
    pub fn is_homogeneous(&self) -> bool {
        self.identity_index.is_some()
    }

    /// Classes whose sum is the adjacency matrix of the source graph.
    pub fn graph_classes(&self) -> &[usize] {
        &self.graph_classes
    }

    /// Classes summing to the complement's adjacency matrix: every non-identity
    /// class outside `graph_classes`.
    pub fn complement_classes(&self) -> Vec<usize> {
        (0..self.class_count)
            .filter(|&c| Some(c) != self.identity_index && !self.graph_classes.contains(&c))
            .collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count];
        for &c in &self.color {
            if c < self.class_count {
                sizes[c] += 1;
            }
        }
        sizes
    }

    pub fn class_cells(&self, k: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.color
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == k)
            .map(move |(idx, _)| (idx / n, idx % n))
    }

    pub fn class_matrix(&self, k: usize) -> RationalMatrix {
        let n = self.n;
        RationalMatrix::from_integers(n, |i, j| i64::from(self.color[i * n + j] == k))
    }

    pub fn classes(&self) -> Vec<RationalMatrix> {
        (0..self.class_count).map(|k| self.class_matrix(k)).collect()
    }

    /// `p_{ij}^k`: entry of `A_i A_j` at any cell of class `k`.
    /// `None` when the entry is not constant on class `k`.
    pub fn intersection_number(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        let mut cells = self.class_cells(k);
        let (u0, v0) = cells.next()?;
        let count = |u: usize, v: usize| {
            (0..self.n)
                .filter(|&w| self.color(u, w) == i && self.color(w, v) == j)
                .count()
        };
        let p = count(u0, v0);
        cells.all(|(u, v)| count(u, v) == p).then_some(p)
    }

    /// Exact projection onto the span of the classes: each cell is replaced by
    /// the mean of its class.
    pub fn project(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: m.n(),
            });
        }
        if let Some(cell) = self.partition_defect {
            return Err(Error::InvalidGraph(format!(
                "classes do not partition the cells (cell {cell:?})"
            )));
        }
        let mut sums = vec![Rational::zero(); self.class_count];
        for (i, j, v) in m.iter_cells() {
            let c = self.color(i, j);
            sums[c] = &sums[c] + v;
        }
        let sizes = self.class_sizes();
        let means: Vec<Rational> = sums
            .into_iter()
            .zip(&sizes)
            .map(|(s, &sz)| s / Rational::from_integer(sz.into()))
            .collect();
        Ok(RationalMatrix::from_fn(self.n, |i, j| means[self.color(i, j)].clone()))
    }

    /// JSON document: `n`, `d`, row-major colour matrix, graph classes and the
    /// axiom report.
    pub fn to_document(&self) -> ConfigurationDocument {
        ConfigurationDocument {
            n: self.n,
            d: self.d(),
            homogeneous: self.is_homogeneous(),
            identity_index: self.identity_index,
            color: self.color.clone(),
            graph_classes: self.graph_classes.clone(),
            class_sizes: self.class_sizes(),
            axioms: check_coherent_axioms(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationDocument {
    pub n: usize,
    pub d: usize,
    pub homogeneous: bool,
    pub identity_index: Option<usize>,
    pub color: Vec<usize>,
    pub graph_classes: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub axioms: AxiomReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    /// Cell covered by no class or by several classes.
    Cell { cell: (usize, usize) },
    /// Class with a diagonal entry that is not a diagonal matrix.
    MixedClass { class: usize, cell: (usize, usize) },
    /// The transpose of this class is not a class.
    Transpose { class: usize, cell: (usize, usize) },
    /// `A_i A_j` is not constant on class `k`.
    Product { i: usize, j: usize, k: usize, cell: (usize, usize) },
    /// Check skipped because the partition axiom fails.
    NotEvaluated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

impl AxiomCheck {
    fn from_witness(witness: Option<AxiomWitness>) -> Self {
        AxiomCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub partition: AxiomCheck,
    pub diagonal_separation: AxiomCheck,
    pub transpose_closed: AxiomCheck,
    pub product_closed: AxiomCheck,
    /// `transpose[i] = j` when `A_i^T = A_j`.
    pub transpose: Vec<usize>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.partition.holds
            && self.diagonal_separation.holds
            && self.transpose_closed.holds
            && self.product_closed.holds
    }
}

/// Check the four coherent-configuration axioms exactly.
pub fn check_coherent_axioms(c: &CoherentConfiguration) -> AxiomReport {
    let n = c.n;
    let partition = AxiomCheck::from_witness(c.partition_defect.map(|cell| AxiomWitness::Cell { cell }));

    let mut has_diag = vec![false; c.class_count];
    let mut has_off = vec![None; c.class_count];
    for (idx, &k) in c.color.iter().enumerate() {
        if k >= c.class_count {
            continue;
        }
        let (i, j) = (idx / n, idx % n);
        if i == j {
            has_diag[k] = true;
        } else if has_off[k].is_none() {
            has_off[k] = Some((i, j));
        }
    }
    let mixed = (0..c.class_count).find_map(|k| {
        has_off[k]
            .filter(|_| has_diag[k])
            .map(|cell| AxiomWitness::MixedClass { class: k, cell })
    });
    let diagonal_separation = AxiomCheck::from_witness(mixed);

    let mut transpose = vec![usize::MAX; c.class_count];
    let mut transpose_witness = None;
    for (idx, &k) in c.color.iter().enumerate() {
        if k >= c.class_count {
            continue;
        }
        let (i, j) = (idx / n, idx % n);
        let t = c.color(j, i);
        if transpose[k] == usize::MAX {
            transpose[k] = t;
        } else if transpose[k] != t && transpose_witness.is_none() {
            transpose_witness = Some(AxiomWitness::Transpose { class: k, cell: (i, j) });
        }
    }
    if transpose_witness.is_none() {
        let sizes = c.class_sizes();
        transpose_witness = (0..c.class_count).find_map(|k| {
            let t = transpose[k];
            (t < c.class_count && sizes[t] != sizes[k]).then(|| AxiomWitness::Transpose {
                class: k,
                cell: c.class_cells(k).next().unwrap_or((0, 0)),
            })
        });
    }
    let transpose_closed = AxiomCheck::from_witness(transpose_witness);

    let product_closed = if partition.holds {
        AxiomCheck::from_witness(product_witness(c))
    } else {
        AxiomCheck {
            holds: false,
            witness: Some(AxiomWitness::NotEvaluated),
        }
    };

    AxiomReport {
        partition,
        diagonal_separation,
        transpose_closed,
        product_closed,
        transpose,
    }
}

/// Profile of cell `(u, v)`: sorted counts of `(colour(u,w), colour(w,v))`.
fn cell_profile(color: &[usize], n: usize, u: usize, v: usize, scratch: &mut Vec<(usize, usize)>) -> Vec<(usize, usize, u32)> {
    scratch.clear();
    scratch.extend((0..n).map(|w| (color[u * n + w], color[w * n + v])));
    scratch.sort_unstable();
    let mut out: Vec<(usize, usize, u32)> = Vec::new();
    for &(a, b) in scratch.iter() {
        match out.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += 1,
            _ => out.push((a, b, 1)),
        }
    }
    out
}

/// Axiom (iv): every product `A_i A_j` is constant on each class.
fn product_witness(c: &CoherentConfiguration) -> Option<AxiomWitness> {
    let n = c.n;
    let mut reference: Vec<Option<Vec<(usize, usize, u32)>>> = vec![None; c.class_count];
    let mut scratch = Vec::with_capacity(n);
    for u in 0..n {
        for v in 0..n {
            let k = c.color(u, v);
            let profile = cell_profile(&c.color, n, u, v, &mut scratch);
            match &reference[k] {
                None => reference[k] = Some(profile),
                Some(r) if *r == profile => {}
                Some(r) => {
                    let (i, j) = first_difference(r, &profile);
                    return Some(AxiomWitness::Product { i, j, k, cell: (u, v) });
                }
            }
        }
    }
    None
}

fn first_difference(a: &[(usize, usize, u32)], b: &[(usize, usize, u32)]) -> (usize, usize) {
    let lookup = |s: &[(usize, usize, u32)], key: (usize, usize)| {
        s.iter().find(|t| (t.0, t.1) == key).map_or(0, |t| t.2)
    };
    a.iter()
        .chain(b)
        .map(|t| (t.0, t.1))
        .find(|&key| lookup(a, key) != lookup(b, key))
        .unwrap_or((0, 0))
}

/// Relabel colours: diagonal colours first by position, then off-diagonal
/// colours by first row-major occurrence.
fn canonicalize(color: &mut [usize], n: usize) -> usize {
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    for u in 0..n {
        let next = relabel.len();
        relabel.entry(color[u * n + u]).or_insert(next);
    }
    for idx in 0..n * n {
        let next = relabel.len();
        relabel.entry(color[idx]).or_insert(next);
    }
    for c in color.iter_mut() {
        *c = relabel[c];
    }
    relabel.len()
}

/// One refinement round: cells keep their colour and are split by their
/// profile. Returns the number of colours after canonical relabelling.
pub(crate) fn refine_once(color: &mut Vec<usize>, n: usize) -> usize {
    let classes = color.iter().max().map_or(0, |&m| m + 1);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (idx, &c) in color.iter().enumerate() {
        by_class[c].push(idx);
    }
    let mut next = vec![0usize; n * n];
    let mut fresh = 0usize;
    let mut scratch = Vec::with_capacity(n);
    for cells in by_class {
        let mut keyed: Vec<(Vec<(usize, usize, u32)>, usize)> = cells
            .into_iter()
            .map(|idx| (cell_profile(color, n, idx / n, idx % n, &mut scratch), idx))
            .collect();
        keyed.sort_unstable();
        for (pos, (profile, idx)) in keyed.iter().enumerate() {
            if pos > 0 && keyed[pos - 1].0 != *profile {
                fresh += 1;
            }
            next[*idx] = fresh;
        }
        fresh += 1;
    }
    *color = next;
    canonicalize(color, n)
}

/// Coherent closure of `g` by two-dimensional Weisfeiler-Leman refinement,
/// starting from the colours diagonal / edge / non-edge.
pub fn wl_closure(g: &Graph) -> Result<CoherentConfiguration> {
    wl_closure_with_cap(g, CLOSURE_CAP)
}

pub fn wl_closure_with_cap(g: &Graph, cap: usize) -> Result<CoherentConfiguration> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "coherent closure",
            n,
            cap,
        });
    }
    if n == 0 {
        return Err(Error::InvalidGraph("closure needs at least one vertex".into()));
    }
    let mut color: Vec<usize> = (0..n * n)
        .map(|idx| {
            let (u, v) = (idx / n, idx % n);
            if u == v {
                0
            } else if g.has_edge(u, v) {
                1
            } else {
                2
            }
        })
        .collect();
    let mut count = canonicalize(&mut color, n);
    loop {
        let refined = refine_once(&mut color, n);
        if refined == count {
            break;
        }
        count = refined;
    }
    let mut graph_classes: Vec<usize> = g.edges().map(|(u, v)| color[u * n + v]).collect();
    graph_classes.sort_unstable();
    graph_classes.dedup();
    CoherentConfiguration::from_colors(n, color, graph_classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path, petersen};

    #[test]
    fn complete_graph_closure_has_two_classes() {
        let c = wl_closure(&complete(6)).unwrap();
        assert_eq!(c.class_count(), 2);
        assert!(c.is_homogeneous());
        assert_eq!(c.graph_classes(), &[1]);
        assert!(check_coherent_axioms(&c).all_hold());
    }

    #[test]
    fn petersen_closure_is_three_class_scheme() {
        let g = petersen();
        let c = wl_closure(&g).unwrap();
        assert_eq!(c.class_count(), 3);
        assert_eq!(c.graph_classes(), &[1]);
        assert_eq!(c.complement_classes(), vec![2]);
        assert_eq!(c.class_matrix(1), g.adjacency());
        assert_eq!(c.class_matrix(2), g.complement().adjacency());
        // srg(10,3,0,1): A^2 = 3I + 0A + 1(J-I-A)
        assert_eq!(c.intersection_number(1, 1, 0), Some(3));
        assert_eq!(c.intersection_number(1, 1, 1), Some(0));
        assert_eq!(c.intersection_number(1, 1, 2), Some(1));
        assert!(check_coherent_axioms(&c).all_hold());
    }

    #[test]
    fn path_three_is_not_homogeneous() {
        let c = wl_closure(&path(3)).unwrap();
        assert!(!c.is_homogeneous());
        let diagonal_classes: std::collections::BTreeSet<_> = (0..3).map(|u| c.color(u, u)).collect();
        assert!(diagonal_classes.len() >= 2);
        assert!(check_coherent_axioms(&c).all_hold());
    }

    #[test]
    fn five_cycle_is_homogeneous() {
        let c = wl_closure(&cycle(5)).unwrap();
        assert!(c.is_homogeneous());
        assert_eq!(c.identity_index(), Some(0));
    }

    #[test]
    fn complete_scheme_from_classes() {
        let i = RationalMatrix::identity(4);
        let j = RationalMatrix::ones(4);
        let c = CoherentConfiguration::from_classes(&[i.clone(), &j - &i]).unwrap();
        assert!(check_coherent_axioms(&c).all_hold());
        assert!(c.is_homogeneous());
        // (J - I)^2 = 2 (J - I) + 3 I
        assert_eq!(c.intersection_number(1, 1, 1), Some(2));
        assert_eq!(c.intersection_number(1, 1, 0), Some(3));
    }

    #[test]
    fn all_ones_class_breaks_diagonal_separation() {
        let c = CoherentConfiguration::from_classes(&[RationalMatrix::ones(2)]).unwrap();
        let r = check_coherent_axioms(&c);
        assert!(r.partition.holds);
        assert!(!r.diagonal_separation.holds);
        assert!(!c.is_homogeneous());
    }

    #[test]
    fn overlapping_classes_break_partition() {
        let i = RationalMatrix::identity(3);
        let c = CoherentConfiguration::from_classes(&[i.clone(), RationalMatrix::ones(3)]).unwrap();
        let r = check_coherent_axioms(&c);
        assert!(!r.partition.holds);
        assert_eq!(r.product_closed.witness, Some(AxiomWitness::NotEvaluated));
    }

    #[test]
    fn projection_onto_classes_averages() {
        let i = RationalMatrix::identity(3);
        let j = RationalMatrix::ones(3);
        let c = CoherentConfiguration::from_classes(&[i.clone(), &j - &i]).unwrap();
        let mut e11 = RationalMatrix::zeros(3);
        e11[(0, 0)] = Rational::one();
        let third = Rational::new(1.into(), 3.into());
        assert_eq!(c.project(&e11).unwrap(), i.scale(&third));
    }

    #[test]
    fn closure_is_a_fixed_point_of_refinement() {
        let c = wl_closure(&path(5)).unwrap();
        let mut color = c.colors().to_vec();
        let count = refine_once(&mut color, 5);
        assert_eq!(count, c.class_count());
        assert_eq!(color, c.colors());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(wl_closure_with_cap(&cycle(10), 8), Err(Error::CapExceeded { .. })));
    }
}
