use std::time::Instant;

use serde_json::{json, Value};
use theta_core::exactalg::check_coherent_axioms;
use theta_core::oracle::{chromatic_number, clique_coclique_check_with, max_clique, max_coclique};
use theta_core::sdp::SolverOptions;
use theta_core::structure::GraphStructure;
use theta_core::verify::{
    applicable_structures, equality_link, lemma0_algebra, lemma0_configuration, main_bound_checks, product_report,
    sandwich_from, ProductSolutions,
};
use theta_core::sdp::solve_all_thetas;
use theta_core::{Error, Graph, RationalMatrix, Tolerances};

use crate::report::{CheckName, CheckResult, GraphInfo, RunReport, Status, Timing, ToleranceSnapshot, Values};

struct Outcome {
    status: Status,
    summary: String,
    detail: Value,
}

impl Outcome {
    fn new(status: Status, summary: impl Into<String>, detail: Value) -> Self {
        Outcome {
            status,
            summary: summary.into(),
            detail,
        }
    }

    fn not_applicable(reason: impl Into<String>) -> Self {
        let reason = reason.into();
        Outcome::new(Status::NotApplicable, reason.clone(), json!({ "reason": reason }))
    }

    fn from_error(e: Error) -> Self {
        match e {
            Error::NotApplicable(reason) => Outcome::not_applicable(reason),
            e => Outcome::new(Status::Error, e.to_string(), json!({ "error": e.to_string() })),
        }
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Shared state for one graph: structure detection and the theta optima are
/// computed once.
struct Context<'a> {
    g: &'a Graph,
    s: GraphStructure,
    opts: &'a SolverOptions,
    tol: &'a Tolerances,
    solutions: Option<Result<ProductSolutions, Error>>,
    values: Values,
}

impl<'a> Context<'a> {
    fn solutions(&mut self) -> Result<&ProductSolutions, Error> {
        if self.solutions.is_none() {
            self.solutions = Some(ProductSolutions::solve(self.g, self.opts));
        }
        self.solutions.as_ref().unwrap().as_ref().map_err(Clone::clone)
    }

    fn run(&mut self, name: CheckName) -> Outcome {
        let r = match name {
            CheckName::Structure => Ok(self.structure()),
            CheckName::Lemma0 => Ok(self.lemma0()),
            CheckName::CliqueCoclique => self.clique_coclique(),
            CheckName::MainBound => self.main_bound(),
            CheckName::ThetaProducts => self.theta_products(),
            CheckName::Sandwich => self.sandwich(),
            CheckName::EqualityLink => self.equality_link(),
        };
        r.unwrap_or_else(Outcome::from_error)
    }

    fn structure(&self) -> Outcome {
        let c = &self.s.closure;
        let axioms = check_coherent_axioms(c);
        let walk = &self.s.walk;
        let constants: Vec<Value> = walk
            .constants
            .iter()
            .map(|w| json!({ "k": w.k, "a": w.a.to_string(), "b": w.b.to_string() }))
            .collect();
        let summary = format!(
            "closure d = {} ({}), 1-walk regular: {}, adjacency algebra dim {}",
            c.d(),
            if c.is_homogeneous() { "homogeneous" } else { "not homogeneous" },
            if walk.is_one_walk_regular { "yes" } else { "no" },
            walk.algebra_dim,
        );
        let detail = json!({
            "flags": self.s.flags,
            "closure": c.to_document(),
            "walk": {
                "is_one_walk_regular": walk.is_one_walk_regular,
                "algebra_dim": walk.algebra_dim,
                "constants": constants,
                "failure_witness": walk.failure_witness,
            },
        });
        Outcome::new(pass_if(axioms.all_hold()), summary, detail)
    }

    fn lemma0(&self) -> Outcome {
        let mut reports = Vec::new();
        if self.s.flags.homogeneous_coherent {
            reports.push(lemma0_configuration(&self.s.closure));
        }
        if self.s.flags.one_walk_regular {
            reports.push(lemma0_algebra(&self.s.adjacency_basis));
        }
        if reports.is_empty() {
            return Outcome::not_applicable("closure is not homogeneous and the graph is not 1-walk regular");
        }
        let ok = reports.iter().all(|r| r.passed());
        let summary = format!(
            "constant row and column sums in {} algebra(s), J present: {}",
            reports.len(),
            reports.iter().all(|r| r.contains_j)
        );
        Outcome::new(pass_if(ok), summary, json!({ "reports": reports }))
    }

    fn clique_coclique(&mut self) -> Result<Outcome, Error> {
        let r = clique_coclique_check_with(self.g, &self.s.flags)?;
        self.values.omega = Some(r.omega);
        self.values.alpha = Some(r.alpha);
        let rel = if r.holds { "<=" } else { ">" };
        let summary = format!("omega {} * alpha {} = {} {rel} {}", r.omega, r.alpha, r.product, r.n);
        let status = if !r.applicable {
            Status::NotApplicable
        } else {
            pass_if(r.holds)
        };
        Ok(Outcome::new(status, summary, to_json(&r)))
    }

    fn main_bound(&self) -> Result<Outcome, Error> {
        let n = self.g.n();
        let rank_one = |x: Vec<i64>| RationalMatrix::from_integers(n, |i, j| x[i] * x[j]);
        let m = rank_one(max_coclique(self.g)?.indicator(n));
        let nn = rank_one(max_clique(self.g)?.indicator(n));
        let reports = main_bound_checks(&m, &nn, self.g, &self.s, self.tol)?;
        let ok = reports.iter().all(|r| r.passed() && r.consistent);
        let ratio = reports
            .first()
            .and_then(|r| r.bound.exact.as_ref())
            .map(|e| e.lhs.clone())
            .unwrap_or_default();
        let kinds: Vec<String> = reports
            .iter()
            .map(|r| to_json(&r.structure).as_str().unwrap_or_default().to_string())
            .collect();
        let summary = format!(
            "coclique/clique ratio {ratio} <= {n} exactly, under {}",
            kinds.join(" and ")
        );
        Ok(Outcome::new(pass_if(ok), summary, json!({ "reports": reports })))
    }

    fn theta_products(&mut self) -> Result<Outcome, Error> {
        let (g, tol, flags) = (self.g, self.tol, self.s.flags);
        let sols = self.solutions()?;
        let r = product_report(g, &flags, sols, tol);
        self.values.lovasz = Some(r.thetas[0].value);
        self.values.lovasz_complement = Some(r.thetas[1].value);
        self.values.schrijver_complement = Some(r.thetas[2].value);
        self.values.szegedy = Some(r.thetas[3].value);
        self.values.lovasz_product = Some(r.lovasz_product);
        self.values.variant_product = Some(r.variant_product);
        let claim = if r.qualifies { "equality claimed" } else { "inequality only" };
        let summary = format!(
            "theta(G) theta(G') = {:.4}, theta-(G') theta+(G) = {:.4}, n = {} ({claim})",
            r.lovasz_product, r.variant_product, r.n
        );
        let status = if !r.converged {
            Status::NotConverged
        } else {
            pass_if(r.passed())
        };
        Ok(Outcome::new(status, summary, to_json(&r)))
    }

    fn sandwich(&mut self) -> Result<Outcome, Error> {
        let alpha = max_coclique(self.g)?.size;
        let chi = chromatic_number(&self.g.complement())?;
        let t = solve_all_thetas(self.g, self.opts)?;
        let r = sandwich_from(alpha, chi, &t, self.tol);
        self.values.alpha = Some(alpha);
        self.values.chi_complement = Some(chi);
        let summary = format!(
            "{} <= {:.4} <= {:.4} <= {:.4} <= {}",
            r.alpha, r.schrijver, r.lovasz, r.szegedy, r.chi_complement
        );
        let status = if !r.converged {
            Status::NotConverged
        } else {
            pass_if(r.passed())
        };
        Ok(Outcome::new(status, summary, to_json(&r)))
    }

    fn equality_link(&mut self) -> Result<Outcome, Error> {
        if applicable_structures(&self.s).is_empty() {
            return Ok(Outcome::not_applicable(
                "graph is neither connected homogeneous coherent nor connected 1-walk regular",
            ));
        }
        let (g, tol) = (self.g, self.tol);
        let s = &self.s;
        let sols = match self.solutions.get_or_insert_with(|| ProductSolutions::solve(g, self.opts)) {
            Ok(sols) => sols,
            Err(e) => return Err(e.clone()),
        };
        let converged = sols.converged();
        let reports = equality_link(g, s, sols, tol)?;
        let ok = reports
            .iter()
            .all(|r| r.passed() && r.consistent && r.characterization && r.bound.equality);
        let residual = reports
            .iter()
            .filter_map(|r| r.lemma2.certificate.as_ref())
            .map(|c| c.residual / (1.0 + c.norm))
            .fold(0.0, f64::max);
        let summary = format!(
            "{} optimal pairs, M'N' proportional to J (relative residual {residual:.1e}), cross terms vanish: {ok}",
            reports.len()
        );
        let status = if !converged {
            Status::NotConverged
        } else {
            pass_if(ok)
        };
        Ok(Outcome::new(status, summary, json!({ "reports": reports })))
    }
}

pub fn graph_info(source: &str, g: &Graph) -> GraphInfo {
    GraphInfo {
        source: source.to_string(),
        graph6: theta_core::write_graph6(g).ok(),
        n: Some(g.n()),
        edges: Some(g.edge_count()),
    }
}

pub fn snapshot(opts: &SolverOptions, tol: &Tolerances) -> ToleranceSnapshot {
    ToleranceSnapshot {
        tolerances: tol.clone(),
        solver: opts.clone(),
    }
}

/// Structure detection followed by the selected checks, in the order given.
pub fn run_checks(
    source: &str,
    g: &Graph,
    selected: &[CheckName],
    opts: &SolverOptions,
    tol: &Tolerances,
) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport {
        graph: graph_info(source, g),
        structure: None,
        checks: Vec::new(),
        values: Values::default(),
        passed: false,
        exit_code: 0,
        timing: Timing { total_ms: 0.0 },
        config: snapshot(opts, tol),
    };
    match GraphStructure::detect(g) {
        Ok(s) => {
            report.structure = Some(s.flags);
            let mut ctx = Context {
                g,
                s,
                opts,
                tol,
                solutions: None,
                values: Values::default(),
            };
            for &name in selected {
                let t = Instant::now();
                let o = ctx.run(name);
                report.checks.push(CheckResult {
                    name: name.as_str().to_string(),
                    status: o.status,
                    summary: o.summary,
                    elapsed_ms: t.elapsed().as_secs_f64() * 1e3,
                    detail: o.detail,
                });
            }
            report.values = ctx.values;
        }
        Err(e) => report.checks.push(CheckResult {
            name: CheckName::Structure.as_str().to_string(),
            status: Status::Error,
            summary: e.to_string(),
            elapsed_ms: 0.0,
            detail: json!({ "error": e.to_string() }),
        }),
    }
    report.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    report.finish()
}

/// Report for a line that failed to parse.
pub fn parse_error_report(line: &str, err: &str, opts: &SolverOptions, tol: &Tolerances) -> RunReport {
    RunReport {
        graph: GraphInfo {
            source: line.to_string(),
            graph6: None,
            n: None,
            edges: None,
        },
        structure: None,
        checks: vec![CheckResult {
            name: "parse".into(),
            status: Status::Error,
            summary: err.to_string(),
            elapsed_ms: 0.0,
            detail: json!({ "error": err }),
        }],
        values: Values::default(),
        passed: false,
        exit_code: 0,
        timing: Timing { total_ms: 0.0 },
        config: snapshot(opts, tol),
    }
    .finish()
}
