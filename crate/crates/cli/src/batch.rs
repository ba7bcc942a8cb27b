use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use theta_core::parse_graph6;
use theta_core::sdp::SolverOptions;
use theta_core::Tolerances;

use crate::checks::{parse_error_report, run_checks};
use crate::error::{exit, CliError};
use crate::report::{CheckName, RunReport, Status};
use crate::source::graph6_lines;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub graphs: usize,
    pub passed: usize,
    pub failed: usize,
    pub not_converged: usize,
    pub parse_errors: usize,
}

impl Summary {
    pub fn of(reports: &[RunReport]) -> Self {
        let mut s = Summary {
            graphs: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            match r.exit_code {
                exit::PASS => s.passed += 1,
                exit::NOT_CONVERGED => s.not_converged += 1,
                _ => s.failed += 1,
            }
            if r.graph.n.is_none() {
                s.parse_errors += 1;
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            exit::FAILURE
        } else if self.not_converged > 0 {
            exit::NOT_CONVERGED
        } else {
            exit::PASS
        }
    }
}

/// Run the checks on every graph6 line; reports come back in input order.
pub fn run_batch(
    text: &str,
    selected: &[CheckName],
    jobs: usize,
    opts: &SolverOptions,
    tol: &Tolerances,
) -> Result<Vec<RunReport>, CliError> {
    let lines: Vec<&str> = graph6_lines(text).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(pool.install(|| {
        lines
            .par_iter()
            .map(|line| match parse_graph6(line) {
                Ok(g) => run_checks(line, &g, selected, opts, tol),
                Err(e) => parse_error_report(line, &e.to_string(), opts, tol),
            })
            .collect()
    }))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_f(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

fn status_label(s: Option<Status>) -> String {
    s.map(|s| serde_json::to_value(s).unwrap().as_str().unwrap_or_default().to_string())
        .unwrap_or_default()
}

pub fn write_csv(out: impl Write, reports: &[RunReport], selected: &[CheckName]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = [
        "graph",
        "n",
        "homogeneous_coherent",
        "one_walk_regular",
        "connected",
        "omega",
        "alpha",
        "theta",
        "theta_complement",
        "schrijver_complement",
        "szegedy",
        "lovasz_product",
        "variant_product",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    header.extend(selected.iter().map(|c| c.as_str().to_string()));
    header.push("passed".into());
    w.write_record(&header)?;
    for r in reports {
        let v = &r.values;
        let f = r.structure;
        let mut row = vec![
            r.graph.source.clone(),
            opt(r.graph.n),
            opt(f.map(|f| f.homogeneous_coherent)),
            opt(f.map(|f| f.one_walk_regular)),
            opt(f.map(|f| f.connected)),
            opt(v.omega),
            opt(v.alpha),
            opt_f(v.lovasz),
            opt_f(v.lovasz_complement),
            opt_f(v.schrijver_complement),
            opt_f(v.szegedy),
            opt_f(v.lovasz_product),
            opt_f(v.variant_product),
        ];
        if r.graph.n.is_none() {
            row.extend(selected.iter().map(|_| "parse_error".to_string()));
        } else {
            row.extend(selected.iter().map(|c| status_label(r.status_of(*c))));
        }
        row.push(r.passed.to_string());
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| CliError::io("stdout", e))?;
    Ok(())
}

/// One JSON report per line.
pub fn write_json_lines(mut out: impl Write, reports: &[RunReport]) -> Result<(), CliError> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out).map_err(|e| CliError::io("stdout", e))?;
    }
    Ok(())
}
