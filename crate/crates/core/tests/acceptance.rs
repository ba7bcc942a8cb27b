//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Tolerances are fixed below.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_core::exactalg::{adjacency_algebra_basis, check_coherent_axioms, one_walk_report, wl_closure};
use theta_core::graph::{complete, cycle, hypercube, path, petersen};
use theta_core::numla::SymMatrix;
use theta_core::oracle::{clique_coclique_check_with, max_clique, max_coclique};
use theta_core::sdp::{solve_theta, SolverOptions, ThetaVariant};
use theta_core::structure::GraphStructure;
use theta_core::verify::{
    applicable_structures, equality_link, lemma0_algebra, lemma0_configuration, lemma1_check, lemma2_check,
    main_bound_checks, sandwich_check, theta_product_check, trace_identities, Condition, ProjectionBasis,
    StructureKind,
};
use theta_core::{Graph, Matrix, Rational, Tolerances};

use common::{connected_circulants, corpus, graphs_le8, random_graph, random_pair, random_psd, rank_one, suite};

const PRODUCT_TOL: f64 = 1e-2;
const PRODUCT_LOWER_TOL: f64 = 1e-2;
const SANDWICH_TOL: f64 = 1e-4;
const PROJECTION_EIG_TOL: f64 = 1e-8;
const LEMMA_SLACK_TOL: f64 = 1e-8;
const TRACE_IDENTITY_REL: f64 = 1e-9;
const LINK_RESIDUAL_TOL: f64 = 1e-3;
const LINK_PER_TERM_TOL: f64 = 1e-3;
const THETA_KNOWN_TOL: f64 = 1e-4;
const THETA_TRIVIAL_TOL: f64 = 1e-6;
const PAIRS_PER_GRAPH: usize = 100;
const SEED: u64 = 0x7e7a;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> SolverOptions {
    SolverOptions::default()
}

fn product_equality() -> Outcome {
    let tol = Tolerances::default();
    let mut worst = 0.0f64;
    for (name, g) in suite() {
        let s = GraphStructure::detect(&g).map_err(|e| format!("{name}: {e}"))?;
        let (r, _) = theta_product_check(&g, &s.flags, &opts(), &tol).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.converged, || format!("{name}: solver did not converge"))?;
        let dev = r.lovasz_deviation.abs().max(r.variant_deviation.abs());
        ensure(dev <= PRODUCT_TOL, || {
            format!("{name}: products {} and {} against n = {}", r.lovasz_product, r.variant_product, r.n)
        })?;
        worst = worst.max(dev);
    }
    Ok(format!("10 graphs, largest |product - n| = {worst:.2e}"))
}

fn product_lower_bound() -> Outcome {
    let graphs = corpus("connected_le7.g6");
    let mut worst = f64::INFINITY;
    for (g6, g) in &graphs {
        let a = solve_theta(g, ThetaVariant::Lovasz, &opts()).map_err(|e| format!("{g6}: {e}"))?;
        let b = solve_theta(&g.complement(), ThetaVariant::Lovasz, &opts()).map_err(|e| format!("{g6}: {e}"))?;
        ensure(a.converged && b.converged, || format!("{g6}: solver did not converge"))?;
        let slack = a.value * b.value - g.n() as f64;
        ensure(slack >= -PRODUCT_LOWER_TOL, || format!("{g6}: product short of n by {}", -slack))?;
        worst = worst.min(slack);
    }
    Ok(format!("{} connected graphs, smallest product - n = {worst:.2e}", graphs.len()))
}

fn clique_coclique() -> Outcome {
    let mut graphs = connected_circulants(10);
    graphs.push(("petersen".into(), petersen()));
    graphs.push(("Q3".into(), hypercube(3).unwrap()));
    let tol = Tolerances::default();
    let mut tight = 0;
    for (name, g) in &graphs {
        let s = GraphStructure::detect(g).map_err(|e| format!("{name}: {e}"))?;
        let r = clique_coclique_check_with(g, &s.flags).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.applicable, || format!("{name}: not detected as a covered graph"))?;
        ensure(r.holds, || format!("{name}: omega {} * alpha {} > {}", r.omega, r.alpha, r.n))?;
        tight += r.equality as usize;
        let m = rank_one(&max_coclique(g).unwrap().indicator(g.n()));
        let n = rank_one(&max_clique(g).unwrap().indicator(g.n()));
        for report in main_bound_checks::<Rational>(&m, &n, g, &s, &tol).map_err(|e| format!("{name}: {e}"))? {
            ensure(report.passed() && report.bound.applicable, || {
                format!("{name}: exact bound failed under {:?}", report.structure)
            })?;
            ensure(report.consistent, || format!("{name}: equality flag disagrees with the characterization"))?;
        }
    }
    Ok(format!("{} graphs, {tight} attain equality, all exact", graphs.len()))
}

fn sandwich() -> Outcome {
    let tol = Tolerances {
        sandwich: SANDWICH_TOL,
        ..Tolerances::default()
    };
    let mut worst = f64::INFINITY;
    for (name, g) in suite() {
        let r = sandwich_check(&g, &opts(), &tol).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.converged, || format!("{name}: solver did not converge"))?;
        for l in &r.links {
            ensure(l.holds, || format!("{name}: {} <= {} fails by {}", l.lower, l.upper, -l.slack))?;
            worst = worst.min(l.slack);
        }
    }
    Ok(format!("40 links, smallest slack {worst:.2e}"))
}

fn psd_projection() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = f64::INFINITY;
    for _ in 0..20 {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let c = wl_closure(&g).map_err(|e| e.to_string())?;
        let b = ProjectionBasis::<f64>::from_configuration(&c).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let m = random_psd(&mut rng, n);
            let lambda = SymMatrix::new(b.project(&m)).unwrap().min_eigenvalue().unwrap();
            ensure(lambda >= -PROJECTION_EIG_TOL, || format!("projection on n = {n} has eigenvalue {lambda}"))?;
            worst = worst.min(lambda);
        }
    }
    Ok(format!("200 projections, smallest eigenvalue {worst:.2e}"))
}

fn lemma_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let tol = Tolerances::default();
    let mut graphs = 0;
    let mut checks = 0;
    let mut worst_slack = f64::INFINITY;
    let mut worst_rel = 0.0f64;
    for (g6, g) in corpus("connected_le7.g6") {
        let s = GraphStructure::detect(&g).map_err(|e| format!("{g6}: {e}"))?;
        let kinds = applicable_structures(&s);
        if kinds.is_empty() {
            continue;
        }
        graphs += 1;
        let bases: Vec<ProjectionBasis<f64>> = kinds
            .iter()
            .map(|k| match k {
                StructureKind::Coherent => ProjectionBasis::from_configuration(&s.closure).unwrap(),
                StructureKind::WalkRegular => ProjectionBasis::from_algebra(&s.adjacency_basis),
            })
            .collect();
        for t in 0..PAIRS_PER_GRAPH {
            let cond = if t % 2 == 0 { Condition::A } else { Condition::B };
            let (m, n) = random_pair(&mut rng, &g, cond);
            for b in &bases {
                let l1 = lemma1_check(&m, &n, b, &tol).map_err(|e| format!("{g6}: {e}"))?;
                let l2 = lemma2_check(&m, &n, b, &tol).map_err(|e| format!("{g6}: {e}"))?;
                for r in [&l1, &l2] {
                    let failed: Vec<&str> =
                        r.preconditions.iter().filter(|p| !p.holds).map(|p| p.name.as_str()).collect();
                    ensure(failed.is_empty(), || format!("{g6} {cond:?}: {} preconditions {failed:?}", r.statement))?;
                    ensure(r.slack >= -LEMMA_SLACK_TOL, || format!("{g6} {cond:?}: {} slack {}", r.statement, r.slack))?;
                    worst_slack = worst_slack.min(r.slack);
                }
                for x in [&m, &n] {
                    let ti = trace_identities(x, b, TRACE_IDENTITY_REL).map_err(|e| format!("{g6}: {e}"))?;
                    ensure(ti.holds, || format!("{g6}: trace identities off by {}", ti.relative_error))?;
                    worst_rel = worst_rel.max(ti.relative_error);
                }
                checks += 1;
            }
        }
    }
    Ok(format!(
        "{graphs} graphs, {checks} pair checks, smallest slack {worst_slack:.2e}, trace error {worst_rel:.2e}"
    ))
}

fn lemma0() -> Outcome {
    let mut closures = 0;
    let mut algebras = 0;
    for (g6, g) in graphs_le8() {
        let c = wl_closure(&g).map_err(|e| format!("{g6}: {e}"))?;
        if c.is_homogeneous() {
            let r = lemma0_configuration(&c);
            ensure(r.passed(), || format!("{g6}: closure fails {r:?}"))?;
            closures += 1;
        }
        let b = adjacency_algebra_basis(&g).map_err(|e| format!("{g6}: {e}"))?;
        if one_walk_report(&g, &b).is_one_walk_regular {
            let r = lemma0_algebra(&b);
            ensure(r.passed(), || format!("{g6}: adjacency algebra fails {r:?}"))?;
            algebras += 1;
        }
    }
    Ok(format!("{closures} homogeneous closures and {algebras} walk-regular algebras, exact"))
}

fn equality_characterization() -> Outcome {
    let tol = Tolerances::default();
    let mut worst_residual = 0.0f64;
    let mut worst_term = 0.0f64;
    for (name, g) in suite() {
        let s = GraphStructure::detect(&g).map_err(|e| format!("{name}: {e}"))?;
        let (_, sols) = theta_product_check(&g, &s.flags, &opts(), &tol).map_err(|e| format!("{name}: {e}"))?;
        let reports = equality_link(&g, &s, &sols, &tol).map_err(|e| format!("{name}: {e}"))?;
        ensure(!reports.is_empty(), || format!("{name}: no applicable structure"))?;
        for r in reports {
            let cert = r.lemma2.certificate.as_ref().ok_or_else(|| format!("{name}: missing certificate"))?;
            let rel = cert.residual / (1.0 + cert.norm);
            ensure(rel <= LINK_RESIDUAL_TOL, || format!("{name} {:?}: residual {rel:.2e}", r.structure))?;
            worst_residual = worst_residual.max(rel);
            for t in r.lemma1.per_term.iter().filter(|t| !t.identity) {
                ensure(t.product.abs() <= LINK_PER_TERM_TOL, || {
                    format!("{name} {:?}: per-term {} = {}", r.structure, t.index, t.product)
                })?;
                worst_term = worst_term.max(t.product.abs());
            }
        }
    }
    Ok(format!("relative residual <= {worst_residual:.2e}, per-term <= {worst_term:.2e}"))
}

/// `A^k` constant on the diagonal and on the edges, for `k` in `1..=kmax`.
fn walk_regular_by_powers(g: &Graph, kmax: usize) -> bool {
    let n = g.n();
    let a: Matrix<i64> = Matrix::from_fn(n, |i, j| g.has_edge(i, j) as i64);
    let mut p = a.clone();
    for k in 1..=kmax {
        if k > 1 {
            p = Matrix::from_fn(n, |i, j| (0..n).map(|l| p[(i, l)] * a[(l, j)]).sum());
        }
        if (0..n).any(|i| p[(i, i)] != p[(0, 0)]) {
            return false;
        }
        let mut on_edges = g.edges().map(|(u, v)| p[(u, v)]);
        if let Some(first) = on_edges.next() {
            if on_edges.any(|x| x != first) {
                return false;
            }
        }
    }
    true
}

fn structure_detectors() -> Outcome {
    let graphs = graphs_le8();
    let mut walk_regular = 0;
    for (g6, g) in &graphs {
        let b = adjacency_algebra_basis(g).map_err(|e| format!("{g6}: {e}"))?;
        let fast = one_walk_report(g, &b).is_one_walk_regular;
        let slow = walk_regular_by_powers(g, 2 * b.dim());
        ensure(fast == slow, || format!("{g6}: detector says {fast}, powers say {slow}"))?;
        walk_regular += fast as usize;
        let c = wl_closure(g).map_err(|e| format!("{g6}: {e}"))?;
        let axioms = check_coherent_axioms(&c);
        ensure(axioms.all_hold(), || format!("{g6}: closure axioms fail {axioms:?}"))?;
    }
    let paw = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    for (name, g) in [("P3", path(3)), ("paw", paw)] {
        let c = wl_closure(&g).map_err(|e| e.to_string())?;
        ensure(!c.is_homogeneous(), || format!("{name} detected homogeneous"))?;
    }
    Ok(format!("{} graphs, {walk_regular} 1-walk regular, all closures coherent", graphs.len()))
}

fn known_values() -> Outcome {
    let theta = |g: &Graph| -> Result<f64, String> {
        let r = solve_theta(g, ThetaVariant::Lovasz, &opts()).map_err(|e| e.to_string())?;
        ensure(r.converged, || "solver did not converge".into())?;
        Ok(r.value)
    };
    let mut cases: Vec<(String, Graph, f64, f64)> = vec![
        ("C5".into(), cycle(5), 5f64.sqrt(), THETA_KNOWN_TOL),
        ("petersen".into(), petersen(), 4.0, THETA_KNOWN_TOL),
    ];
    for n in 1..=10 {
        cases.push((format!("K{n}"), complete(n), 1.0, THETA_TRIVIAL_TOL));
        cases.push((format!("empty{n}"), Graph::empty(n), n as f64, THETA_TRIVIAL_TOL));
    }
    let mut worst = 0.0f64;
    for (name, g, expect, tol) in &cases {
        let v = theta(g).map_err(|e| format!("{name}: {e}"))?;
        ensure((v - expect).abs() <= *tol, || format!("{name}: {v} against {expect}"))?;
        worst = worst.max((v - expect).abs());
    }
    Ok(format!("{} values, largest error {worst:.2e}", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("theta product equality on the suite", product_equality),
        ("theta product lower bound, connected n <= 7", product_lower_bound),
        ("exact clique-coclique bound on circulants", clique_coclique),
        ("sandwich chain on the suite", sandwich),
        ("PSD projection onto coherent closures", psd_projection),
        ("trace bounds on random pairs", lemma_bounds),
        ("constant sums in homogeneous closures", lemma0),
        ("equality characterization of optimal pairs", equality_characterization),
        ("structure detectors on n <= 8", structure_detectors),
        ("known theta values", known_values),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {title}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {title}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
