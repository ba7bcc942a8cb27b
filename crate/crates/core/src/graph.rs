//! Simple undirected graphs and the generators used by the test corpus.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};

/// Largest vertex count accepted by the generators and the graph6 codec.
pub const MAX_VERTICES: usize = 1000;

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as a dense symmetric bit table; the graph is immutable
/// once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            g.set(u, v, true);
        }
        Ok(g)
    }

    pub(crate) fn from_predicate(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set(u, v, true);
                }
            }
        }
        g
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        self.adj[u * self.n + v] = on;
        self.adj[v * self.n + u] = on;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Edges as pairs `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// Complement graph: `uv` is an edge iff `u != v` and `uv` is not an edge here.
    pub fn complement(&self) -> Graph {
        Graph::from_predicate(self.n, |u, v| !self.has_edge(u, v))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// 0/1 adjacency matrix `A`.
    pub fn adjacency<T: Scalar>(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, |u, v| if self.has_edge(u, v) { T::one() } else { T::zero() })
    }

    /// Disjoint union, vertices of `other` shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        Graph::from_predicate(n, |u, v| {
            if v < self.n {
                self.has_edge(u, v)
            } else if u >= self.n {
                other.has_edge(u - self.n, v - self.n)
            } else {
                false
            }
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        family: family.to_string(),
        reason: reason.into(),
    }
}

fn expect_params(family: &str, params: &[i64], count: usize) -> Result<()> {
    if params.len() != count {
        return Err(invalid(family, format!("expected {count} parameter(s), got {}", params.len())));
    }
    Ok(())
}

fn vertex_count(family: &str, v: i64, min: i64) -> Result<usize> {
    if v < min {
        return Err(invalid(family, format!("vertex count must be at least {min}, got {v}")));
    }
    if v as u64 > MAX_VERTICES as u64 {
        return Err(Error::CapExceeded {
            what: "graph generators",
            n: v as usize,
            cap: MAX_VERTICES,
        });
    }
    Ok(v as usize)
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_predicate(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_predicate(n, |_, _| true)
}

pub fn path(n: usize) -> Graph {
    Graph::from_predicate(n, |u, v| v == u + 1)
}

/// Outer 5-cycle, inner pentagram and five spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("static edge list")
}

/// Kneser graph: `k`-subsets of `0..n`, adjacent when disjoint.
/// Vertices are the subsets in colexicographic bitmask order.
pub fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || k > n || n > 20 {
        return Err(invalid("kneser", format!("need 1 <= k <= n <= 20, got n={n}, k={k}")));
    }
    let subsets: Vec<u32> = (0u32..(1u32 << n)).filter(|s| s.count_ones() as usize == k).collect();
    if subsets.len() > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "graph generators",
            n: subsets.len(),
            cap: MAX_VERTICES,
        });
    }
    Ok(Graph::from_predicate(subsets.len(), |u, v| subsets[u] & subsets[v] == 0))
}

/// Circulant graph on `Z_n`. The connection set is reduced mod `n`,
/// closed under negation and deduplicated before use.
pub fn circulant(n: usize, connections: &[i64]) -> Result<Graph> {
    let set = canonical_connection_set(n, connections)?;
    Ok(Graph::from_predicate(n, |u, v| set.contains(&(v - u))))
}

/// Sorted, negation-closed connection set with entries in `1..n`.
pub fn canonical_connection_set(n: usize, connections: &[i64]) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(invalid("circulant", "vertex count must be positive"));
    }
    let mut set = Vec::new();
    for &s in connections {
        let r = s.rem_euclid(n as i64) as usize;
        if r == 0 {
            return Err(invalid("circulant", format!("connection {s} is 0 mod {n}")));
        }
        set.push(r);
        set.push(n - r);
    }
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// `d`-dimensional hypercube `Q_d`.
pub fn hypercube(d: usize) -> Result<Graph> {
    if d > 9 {
        return Err(invalid("hypercube", format!("dimension {d} exceeds 9")));
    }
    Ok(Graph::from_predicate(1 << d, |u, v| (u ^ v).count_ones() == 1))
}

/// Parse a generator spec `name:p1,p2,...` such as `petersen:` or
/// `circulant:8,1,2`.
pub fn parse_generator_spec(spec: &str) -> Result<Graph> {
    let (name, params) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidGraph(format!("`{spec}` is not of the form name:params")))?;
    let name = name.trim();
    let params = if params.trim().is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| invalid(name, format!("parameter `{}` is not an integer", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?
    };
    named_graph(name, &params)
}

/// Build a graph from a family name and integer parameters.
///
/// Families: `cycle n`, `complete n`, `empty n`, `path n`, `petersen`,
/// `kneser n k`, `circulant n s1 s2 ...`, `hypercube d`.
pub fn named_graph(name: &str, params: &[i64]) -> Result<Graph> {
    match name {
        "cycle" => {
            expect_params(name, params, 1)?;
            Ok(cycle(vertex_count(name, params[0], 3)?))
        }
        "complete" => {
            expect_params(name, params, 1)?;
            Ok(complete(vertex_count(name, params[0], 1)?))
        }
        "empty" => {
            expect_params(name, params, 1)?;
            Ok(Graph::empty(vertex_count(name, params[0], 1)?))
        }
        "path" => {
            expect_params(name, params, 1)?;
            Ok(path(vertex_count(name, params[0], 1)?))
        }
        "petersen" => {
            expect_params(name, params, 0)?;
            Ok(petersen())
        }
        "kneser" => {
            expect_params(name, params, 2)?;
            if params[1] < 1 {
                return Err(invalid(name, "k must be positive"));
            }
            kneser(vertex_count(name, params[0], 1)?, params[1] as usize)
        }
        "circulant" => {
            if params.is_empty() {
                return Err(invalid(name, "expected n followed by a connection set"));
            }
            circulant(vertex_count(name, params[0], 1)?, &params[1..])
        }
        "hypercube" => {
            expect_params(name, params, 1)?;
            if params[0] < 0 {
                return Err(invalid(name, "dimension must be non-negative"));
            }
            hypercube(params[0] as usize)
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}
