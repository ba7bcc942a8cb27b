//! Browser demo bindings. Each operation has a plain Rust function returning
//! a serializable view and a `wasm_bindgen` wrapper returning JSON text.

use serde::Serialize;
use theta_core::exactalg::check_coherent_axioms;
use theta_core::numla::{cluster_eigenvalues, eigh};
use theta_core::sdp::{solve_theta, solve_theta_warm, SolverOptions, ThetaVariant};
use theta_core::structure::GraphStructure;
use theta_core::{parse_generator_spec, parse_graph6, write_graph6, Graph, SymMatrix};
use wasm_bindgen::prelude::*;

/// Largest graph the page accepts; keeps each click well under a second.
pub const DEMO_CAP: usize = 24;

/// graph6 first, then a `name:params` generator spec.
pub fn parse(source: &str) -> Result<Graph, String> {
    let t = source.trim();
    let g = match parse_graph6(t) {
        Ok(g) => g,
        Err(e) if !t.contains(':') => return Err(e.to_string()),
        Err(_) => parse_generator_spec(t).map_err(|e| e.to_string())?,
    };
    if g.n() > DEMO_CAP {
        return Err(format!("the demo handles at most {DEMO_CAP} vertices, got {}", g.n()));
    }
    Ok(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaView {
    pub n: usize,
    pub graph6: String,
    pub lovasz: f64,
    pub schrijver: f64,
    pub szegedy: f64,
    pub lovasz_complement: f64,
    pub schrijver_complement: f64,
    /// `theta(G) theta(G-bar)`
    pub lovasz_product: f64,
    /// `theta-(G-bar) theta+(G)`
    pub variant_product: f64,
    pub converged: bool,
    pub iterations: usize,
}

pub fn thetas(source: &str) -> Result<ThetaView, String> {
    let g = parse(source)?;
    let gbar = g.complement();
    let opts = SolverOptions::default();
    let err = |e: theta_core::Error| e.to_string();
    let lovasz = solve_theta(&g, ThetaVariant::Lovasz, &opts).map_err(err)?;
    let schrijver = solve_theta_warm(&g, ThetaVariant::Schrijver, &opts, lovasz.warm_state()).map_err(err)?;
    let szegedy = solve_theta_warm(&g, ThetaVariant::Szegedy, &opts, lovasz.warm_state()).map_err(err)?;
    let lc = solve_theta(&gbar, ThetaVariant::Lovasz, &opts).map_err(err)?;
    let sc = solve_theta_warm(&gbar, ThetaVariant::Schrijver, &opts, lc.warm_state()).map_err(err)?;
    let all = [&lovasz, &schrijver, &szegedy, &lc, &sc];
    Ok(ThetaView {
        n: g.n(),
        graph6: write_graph6(&g).map_err(err)?,
        lovasz: lovasz.value,
        schrijver: schrijver.value,
        szegedy: szegedy.value,
        lovasz_complement: lc.value,
        schrijver_complement: sc.value,
        lovasz_product: lovasz.value * lc.value,
        variant_product: sc.value * szegedy.value,
        converged: all.iter().all(|r| r.converged),
        iterations: all.iter().map(|r| r.iterations).sum(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureView {
    pub n: usize,
    pub d: usize,
    pub homogeneous: bool,
    pub axioms_hold: bool,
    pub graph_classes: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Row-major class index of every cell.
    pub color: Vec<usize>,
    /// Row-major adjacency, 0 or 1.
    pub adjacency: Vec<u8>,
}

pub fn closure(source: &str) -> Result<ClosureView, String> {
    let g = parse(source)?;
    let s = GraphStructure::detect(&g).map_err(|e| e.to_string())?;
    let c = &s.closure;
    let n = g.n();
    Ok(ClosureView {
        n,
        d: c.d(),
        homogeneous: c.is_homogeneous(),
        axioms_hold: check_coherent_axioms(c).all_hold(),
        graph_classes: c.graph_classes().to_vec(),
        class_sizes: c.class_sizes(),
        color: c.colors().to_vec(),
        adjacency: (0..n * n).map(|k| g.has_edge(k / n, k % n) as u8).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumView {
    pub n: usize,
    pub eigenvalues: Vec<Eigenvalue>,
    pub regular: bool,
    pub connected: bool,
    pub homogeneous_coherent: bool,
    pub one_walk_regular: bool,
    pub algebra_dim: usize,
    /// `(k, a_k, b_k)`: closed walks at a vertex and walks along an edge.
    pub walk_constants: Vec<(usize, String, String)>,
}

pub fn spectrum(source: &str) -> Result<SpectrumView, String> {
    let g = parse(source)?;
    let s = GraphStructure::detect(&g).map_err(|e| e.to_string())?;
    let a = SymMatrix::new(g.adjacency()).map_err(|e| e.to_string())?;
    let values = eigh(&a).map_err(|e| e.to_string())?.values;
    Ok(SpectrumView {
        n: g.n(),
        eigenvalues: cluster_eigenvalues(&values, 1e-8)
            .into_iter()
            .rev()
            .map(|(value, multiplicity)| Eigenvalue { value, multiplicity })
            .collect(),
        regular: g.is_regular(),
        connected: s.flags.connected,
        homogeneous_coherent: s.flags.homogeneous_coherent,
        one_walk_regular: s.flags.one_walk_regular,
        algebra_dim: s.walk.algebra_dim,
        walk_constants: s
            .walk
            .constants
            .iter()
            .map(|w| (w.k, w.a.to_string(), w.b.to_string()))
            .collect(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = thetas)]
pub fn thetas_js(source: &str) -> Result<String, JsError> {
    to_js(thetas(source))
}

#[wasm_bindgen(js_name = closure)]
pub fn closure_js(source: &str) -> Result<String, JsError> {
    to_js(closure(source))
}

#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(source: &str) -> Result<String, JsError> {
    to_js(spectrum(source))
}
