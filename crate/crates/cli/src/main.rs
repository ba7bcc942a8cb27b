use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use theta_core::exactalg::wl_closure;
use theta_core::sdp::{solve_theta, SolverOptions, ThetaResult, ThetaVariant};
use theta_core::Tolerances;
use theta_cli::batch::{run_batch, write_csv, write_json_lines, Format, Summary};
use theta_cli::checks::run_checks;
use theta_cli::{exit, parse_source, CheckName, CliError, RunReport};

/// Theta functions, coherent closures and clique-coclique checks for small graphs.
///
/// GRAPH is a graph6 string, a generator spec such as `petersen:`,
/// `cycle:5` or `circulant:8,1,2`, or a file holding one graph6 line.
#[derive(Parser)]
#[command(name = "thetas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Convergence tolerance (primal, dual and gap).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Over-relaxation parameter in (0, 2).
    #[arg(long)]
    relax: Option<f64>,
}

impl SolverArgs {
    fn options(&self) -> Result<SolverOptions, CliError> {
        let mut o = SolverOptions::default();
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Input(format!("--tol must be positive, got {t}")));
            }
            o.primal_tol = t;
            o.dual_tol = t;
            o.gap_tol = t;
        }
        if let Some(m) = self.max_iters {
            if m == 0 {
                return Err(CliError::Input("--max-iters must be positive".into()));
            }
            o.max_iters = m;
        }
        if let Some(r) = self.relax {
            if !(r > 0.0 && r < 2.0) {
                return Err(CliError::Input(format!("--relax must lie in (0, 2), got {r}")));
            }
            o.relax = r;
        }
        Ok(o)
    }
}

#[derive(Args, Clone)]
struct CheckArgs {
    /// Run every check (the default when no --check is given).
    #[arg(long, conflicts_with = "check")]
    all: bool,
    /// Run only the named check; repeatable.
    #[arg(long, value_enum)]
    check: Vec<CheckName>,
}

impl CheckArgs {
    fn selected(&self) -> Vec<CheckName> {
        if self.all || self.check.is_empty() {
            CheckName::ALL.to_vec()
        } else {
            let mut c = self.check.clone();
            c.sort();
            c.dedup();
            c
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Coherent closure (Weisfeiler-Leman) and its axiom check.
    Closure {
        graph: String,
        #[arg(long)]
        json: bool,
    },
    /// Lovasz, Schrijver and Szegedy thetas (all three unless flags select).
    Theta {
        graph: String,
        #[arg(long)]
        lovasz: bool,
        #[arg(long)]
        schrijver: bool,
        #[arg(long)]
        szegedy: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Structure detection and verification checks; failing checks listed first.
    Verify {
        graph: String,
        #[command(flatten)]
        checks: CheckArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Checks for every graph6 line of FILE, in input order.
    Batch {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Graphs processed concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        checks: CheckArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn closure(graph: &str, json: bool) -> Result<i32, CliError> {
    let src = parse_source(graph)?;
    let c = wl_closure(&src.graph).map_err(|e| CliError::Input(e.to_string()))?;
    let doc = c.to_document();
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out).ok();
    } else {
        let a = &doc.axioms;
        let mark = |b: bool| if b { "ok" } else { "FAILS" };
        writeln!(out, "graph {} (n = {})", src.id, doc.n).ok();
        writeln!(
            out,
            "d = {} ({} classes), {}",
            doc.d,
            doc.class_sizes.len(),
            if doc.homogeneous { "homogeneous" } else { "NOT homogeneous" }
        )
        .ok();
        writeln!(out, "graph classes {:?}, class sizes {:?}", doc.graph_classes, doc.class_sizes).ok();
        writeln!(
            out,
            "axioms: partition {}, diagonal {}, transpose {}, products {}",
            mark(a.partition.holds),
            mark(a.diagonal_separation.holds),
            mark(a.transpose_closed.holds),
            mark(a.product_closed.holds)
        )
        .ok();
    }
    Ok(if doc.axioms.all_hold() { exit::PASS } else { exit::FAILURE })
}

fn theta(graph: &str, variants: Vec<ThetaVariant>, opts: SolverOptions, json: bool) -> Result<i32, CliError> {
    let src = parse_source(graph)?;
    let results = variants
        .into_iter()
        .map(|v| solve_theta(&src.graph, v, &opts).map_err(|e| CliError::Input(e.to_string())))
        .collect::<Result<Vec<ThetaResult>, _>>()?;
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &results)?;
        writeln!(out).ok();
    } else {
        for r in &results {
            let r0 = &r.residuals;
            let state = if r.converged {
                format!("converged in {} iterations", r.iterations)
            } else {
                format!("NOT CONVERGED after {} iterations, best iterate", r.iterations)
            };
            writeln!(
                out,
                "{:<10} {:.4}  {state} (primal {:.1e}, sign {:.1e}, dual {:.1e}, gap {:.1e})",
                r.variant.name(),
                r.value,
                r0.primal,
                r0.sign,
                r0.dual,
                r0.gap
            )
            .ok();
        }
    }
    Ok(if results.iter().all(|r| r.converged) {
        exit::PASS
    } else {
        exit::NOT_CONVERGED
    })
}

fn print_report(r: &RunReport) {
    let mut out = io::stdout().lock();
    let f = r.structure;
    writeln!(
        out,
        "graph {} (graph6 {}, n = {})",
        r.graph.source,
        r.graph.graph6.as_deref().unwrap_or("?"),
        r.graph.n.map(|n| n.to_string()).unwrap_or_else(|| "?".into())
    )
    .ok();
    if let Some(f) = f {
        writeln!(
            out,
            "structure: homogeneous coherent {}, 1-walk regular {}, connected {}",
            f.homogeneous_coherent, f.one_walk_regular, f.connected
        )
        .ok();
    }
    for c in &r.checks {
        writeln!(out, "{:<6} {:<16} {}", c.status.label(), c.name, c.summary).ok();
    }
    let verdict = match r.exit_code {
        exit::PASS => "all checks passed",
        exit::NOT_CONVERGED => "solver did not converge",
        _ => "some checks FAILED",
    };
    writeln!(out, "{verdict} ({:.0} ms)", r.timing.total_ms).ok();
}

fn verify(graph: &str, checks: &CheckArgs, opts: SolverOptions, json: bool) -> Result<i32, CliError> {
    let src = parse_source(graph)?;
    let report = run_checks(&src.id, &src.graph, &checks.selected(), &opts, &Tolerances::default());
    if json {
        let mut out = io::stdout().lock();
        serde_json::to_writer_pretty(&mut out, &report)?;
        writeln!(out).ok();
    } else {
        print_report(&report);
    }
    Ok(report.exit_code)
}

fn batch(file: &PathBuf, format: Format, jobs: usize, checks: &CheckArgs, opts: SolverOptions) -> Result<i32, CliError> {
    let name = file.display().to_string();
    let text = std::fs::read_to_string(file).map_err(|e| CliError::io(name, e))?;
    let selected = checks.selected();
    let reports = run_batch(&text, &selected, jobs, &opts, &Tolerances::default())?;
    let out = io::stdout().lock();
    match format {
        Format::Csv => write_csv(out, &reports, &selected)?,
        Format::Json => write_json_lines(out, &reports)?,
    }
    let s = Summary::of(&reports);
    eprintln!(
        "summary: {} graphs, {} passed, {} failed ({} parse errors), {} not converged",
        s.graphs, s.passed, s.failed, s.parse_errors, s.not_converged
    );
    Ok(s.exit_code())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Closure { graph, json } => closure(&graph, json),
        Command::Theta {
            graph,
            lovasz,
            schrijver,
            szegedy,
            solver,
            json,
        } => {
            let picked: Vec<ThetaVariant> = [lovasz, schrijver, szegedy]
                .into_iter()
                .zip(ThetaVariant::ALL)
                .filter(|(on, _)| *on)
                .map(|(_, v)| v)
                .collect();
            let variants = if picked.is_empty() { ThetaVariant::ALL.to_vec() } else { picked };
            theta(&graph, variants, solver.options()?, json)
        }
        Command::Verify {
            graph,
            checks,
            solver,
            json,
        } => verify(&graph, &checks, solver.options()?, json),
        Command::Batch {
            file,
            format,
            jobs,
            checks,
            solver,
        } => batch(&file, format, jobs, &checks, solver.options()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::PASS };
            e.print().ok();
            return ExitCode::from(code as u8);
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        match e {
            CliError::Io { .. } | CliError::Input(_) | CliError::Core(_) => exit::INPUT,
            _ => exit::FAILURE,
        }
    });
    ExitCode::from(code as u8)
}
