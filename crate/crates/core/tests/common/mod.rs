#![allow(dead_code)]

use rand::Rng;
use theta_core::graph::{circulant, complete, cycle, hypercube, kneser, petersen};
use theta_core::numla::{psd_project, SymMatrix};
use theta_core::verify::Condition;
use theta_core::{parse_graph6, Graph, Matrix};

/// Graph6 corpus under `tests/data`, skipping `#` comment lines.
pub fn corpus(name: &str) -> Vec<(String, Graph)> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| (l.to_string(), parse_graph6(l).unwrap_or_else(|e| panic!("{l}: {e}"))))
        .collect()
}

/// Every graph on at most eight vertices.
pub fn graphs_le8() -> Vec<(String, Graph)> {
    let mut all = corpus("graphs_le7.g6");
    all.extend(corpus("graphs_8.g6"));
    all
}

/// Vertex-transitive graphs on which both theta products equal `n`.
pub fn suite() -> Vec<(&'static str, Graph)> {
    vec![
        ("C5", cycle(5)),
        ("C7", cycle(7)),
        ("C9", cycle(9)),
        ("petersen", petersen()),
        ("kneser(5,2)", kneser(5, 2).unwrap()),
        ("Q3", hypercube(3).unwrap()),
        ("circulant(8;1,2)", circulant(8, &[1, 2]).unwrap()),
        ("circulant(10;1,3)", circulant(10, &[1, 3]).unwrap()),
        ("K6", complete(6)),
        ("circulant(6;1,3)", circulant(6, &[1, 3]).unwrap()),
    ]
}

/// Connected circulants on `2..=max_n` vertices, one per connection set
/// drawn from `1..=n/2`.
pub fn connected_circulants(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let half = n / 2;
        for mask in 1u32..(1 << half) {
            let set: Vec<i64> = (0..half).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1).collect();
            let g = circulant(n, &set).unwrap();
            if g.is_connected() {
                out.push((format!("circulant({n};{set:?})"), g));
            }
        }
    }
    out
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// `B B^T` for a random `n x r` matrix `B` of rank `r` in `1..=n`.
pub fn random_psd(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let r = rng.gen_range(1..=n);
    let b: Vec<f64> = (0..n * r).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Matrix::from_fn(n, |i, j| (0..r).map(|k| b[i * r + k] * b[j * r + k]).sum())
}

#[derive(Clone, Copy, Debug)]
pub enum Side {
    M,
    N,
}

/// Clip `m` onto the sign pattern the condition imposes on one side.
pub fn clip(m: &Matrix<f64>, g: &Graph, cond: Condition, side: Side) -> Matrix<f64> {
    Matrix::from_fn(m.n(), |i, j| {
        let x = m[(i, j)];
        if i == j {
            return x;
        }
        match (cond, side, g.has_edge(i, j)) {
            (Condition::A, Side::M, true) => 0.0,
            (Condition::A, Side::N, false) => 0.0,
            (Condition::B, Side::M, true) => x.min(0.0),
            (Condition::B, Side::N, false) => 0.0,
            (Condition::B, Side::N, true) => x.max(0.0),
            _ => x,
        }
    })
}

/// PSD matrix on the condition's sign pattern: a few alternating clip and
/// PSD rounds, a final clip, then a diagonal shift.
pub fn random_side(rng: &mut impl Rng, g: &Graph, cond: Condition, side: Side) -> Matrix<f64> {
    let n = g.n();
    let mut x = random_psd(rng, n);
    for _ in 0..3 {
        x = psd_project(&SymMatrix::new(clip(&x, g, cond, side)).unwrap()).unwrap().into_matrix();
    }
    let mut x = clip(&x, g, cond, side);
    let lambda = SymMatrix::new(x.clone()).unwrap().min_eigenvalue().unwrap();
    if lambda < 0.0 {
        for i in 0..n {
            x[(i, i)] -= lambda;
        }
    }
    x.scale(&rng.gen_range(0.1..10.0))
}

pub fn random_pair(rng: &mut impl Rng, g: &Graph, cond: Condition) -> (Matrix<f64>, Matrix<f64>) {
    (random_side(rng, g, cond, Side::M), random_side(rng, g, cond, Side::N))
}

/// Indicator outer product `x x^T` as an exact matrix.
pub fn rank_one(x: &[i64]) -> theta_core::RationalMatrix {
    theta_core::RationalMatrix::from_integers(x.len(), |i, j| x[i] * x[j])
}
