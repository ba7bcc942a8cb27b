//! Exhaustive ground truth at desk scale: clique number, independence number,
//! chromatic number and the clique-coclique product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::{GraphStructure, StructureFlags};

pub const CLIQUE_CAP: usize = 30;
pub const CHROMATIC_CAP: usize = 16;

/// A clique or coclique, checked against the graph before it is returned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub size: usize,
    pub vertices: Vec<usize>,
}

impl Witness {
    /// Characteristic vector over `0..n`.
    pub fn indicator(&self, n: usize) -> Vec<i64> {
        let mut x = vec![0; n];
        for &v in &self.vertices {
            x[v] = 1;
        }
        x
    }
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|u| g.neighbors(u).fold(0u64, |m, v| m | (1 << v)))
        .collect()
}

/// Descending degree, index tiebreak.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

struct CliqueSearch {
    nbr: Vec<u64>,
    order: Vec<usize>,
    best: Vec<usize>,
}

impl CliqueSearch {
    /// Greedy colouring of `cand` in search order. Returns the vertices sorted
    /// by colour together with the colour count up to each position.
    fn color_sort(&self, cand: u64) -> (Vec<usize>, Vec<usize>) {
        let mut vertices = Vec::new();
        let mut bounds = Vec::new();
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut available = uncolored;
            for &v in &self.order {
                if available & (1 << v) != 0 {
                    vertices.push(v);
                    bounds.push(color);
                    uncolored &= !(1 << v);
                    available &= !(1 << v) & !self.nbr[v];
                }
            }
        }
        (vertices, bounds)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: u64) {
        let (vertices, bounds) = self.color_sort(cand);
        for idx in (0..vertices.len()).rev() {
            if current.len() + bounds[idx] <= self.best.len() {
                return;
            }
            let v = vertices[idx];
            current.push(v);
            let next = cand & self.nbr[v];
            if next == 0 {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand &= !(1 << v);
        }
    }
}

fn check_cap(g: &Graph, cap: usize, what: &'static str) -> Result<()> {
    if g.n() > cap {
        return Err(Error::CapExceeded { what, n: g.n(), cap });
    }
    Ok(())
}

/// Maximum clique by branch and bound with a greedy-colouring bound.
pub fn max_clique(g: &Graph) -> Result<Witness> {
    check_cap(g, CLIQUE_CAP, "maximum clique search")?;
    let n = g.n();
    let mut search = CliqueSearch {
        nbr: neighbor_masks(g),
        order: search_order(g),
        best: Vec::new(),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if n > 0 {
        search.expand(&mut Vec::new(), all);
    }
    let mut vertices = search.best;
    vertices.sort_unstable();
    let ok = vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)));
    assert!(ok, "clique search returned a non-clique");
    Ok(Witness {
        size: vertices.len(),
        vertices,
    })
}

/// Maximum coclique: maximum clique of the complement.
pub fn max_coclique(g: &Graph) -> Result<Witness> {
    check_cap(g, CLIQUE_CAP, "maximum coclique search")?;
    let w = max_clique(&g.complement())?;
    let ok = w
        .vertices
        .iter()
        .enumerate()
        .all(|(i, &u)| w.vertices[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
    assert!(ok, "coclique search returned adjacent vertices");
    Ok(w)
}

fn colorable(order: &[usize], nbr: &[u64], colors: &mut [usize], pos: usize, used: usize, k: usize) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // A fresh colour is only ever the next unused one.
    for c in 0..(used + 1).min(k) {
        let clash = order[..pos].iter().any(|&u| nbr[v] & (1 << u) != 0 && colors[u] == c);
        if clash {
            continue;
        }
        colors[v] = c;
        if colorable(order, nbr, colors, pos + 1, used.max(c + 1), k) {
            return true;
        }
    }
    false
}

/// Chromatic number by iterative deepening over the number of colours.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    check_cap(g, CHROMATIC_CAP, "chromatic number search")?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let nbr = neighbor_masks(g);
    let order = search_order(g);
    let lower = max_clique(g)?.size.max(1);
    for k in lower..=n {
        let mut colors = vec![usize::MAX; n];
        if colorable(&order, &nbr, &mut colors, 0, 0, k) {
            return Ok(k);
        }
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueCocliqueReport {
    pub n: usize,
    pub omega: usize,
    pub alpha: usize,
    pub product: usize,
    /// `omega * alpha <= n`, evaluated exactly.
    pub holds: bool,
    pub equality: bool,
    /// The graph is homogeneous coherent or 1-walk regular.
    pub applicable: bool,
    pub structure: StructureFlags,
    pub clique: Witness,
    pub coclique: Witness,
}

impl CliqueCocliqueReport {
    /// Pass unless the bound applies and fails.
    pub fn passed(&self) -> bool {
        !self.applicable || self.holds
    }
}

pub fn clique_coclique_check(g: &Graph) -> Result<CliqueCocliqueReport> {
    let structure = GraphStructure::detect(g)?;
    clique_coclique_check_with(g, &structure.flags)
}

pub fn clique_coclique_check_with(g: &Graph, flags: &StructureFlags) -> Result<CliqueCocliqueReport> {
    let clique = max_clique(g)?;
    let coclique = max_coclique(g)?;
    let product = clique.size * coclique.size;
    Ok(CliqueCocliqueReport {
        n: g.n(),
        omega: clique.size,
        alpha: coclique.size,
        product,
        holds: product <= g.n(),
        equality: product == g.n(),
        applicable: flags.qualifies(),
        structure: *flags,
        clique,
        coclique,
    })
}
