use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Graph;
use crate::oracle::{chromatic_number, max_coclique};
use crate::sdp::{solve_all_thetas, solve_theta, solve_theta_warm, Residuals, SolverOptions, ThetaResult, ThetaTriple, ThetaVariant};
use crate::structure::{GraphStructure, StructureFlags};
use crate::tolerance::Tolerances;
use crate::verify::main_bound::{applicable_structures, main_bound_check, MainBoundReport};

/// One solved theta, without the solution matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSummary {
    pub variant: ThetaVariant,
    pub complement: bool,
    pub value: f64,
    pub certificate_value: f64,
    pub converged: bool,
    pub iterations: usize,
    pub residuals: Residuals,
}

impl ThetaSummary {
    pub fn new(r: &ThetaResult, complement: bool) -> Self {
        ThetaSummary {
            variant: r.variant,
            complement,
            value: r.value,
            certificate_value: r.certificate_value,
            converged: r.converged,
            iterations: r.iterations,
            residuals: r.residuals,
        }
    }
}

/// Optima of the two products: `theta(G) theta(G-bar)` and
/// `theta-(G-bar) theta+(G)`.
#[derive(Clone, Debug)]
pub struct ProductSolutions {
    pub lovasz: ThetaResult,
    pub lovasz_complement: ThetaResult,
    pub schrijver_complement: ThetaResult,
    pub szegedy: ThetaResult,
}

impl ProductSolutions {
    pub fn solve(g: &Graph, opts: &SolverOptions) -> Result<Self> {
        let gbar = g.complement();
        let lovasz = solve_theta(g, ThetaVariant::Lovasz, opts)?;
        let szegedy = solve_theta_warm(g, ThetaVariant::Szegedy, opts, lovasz.warm_state())?;
        let lovasz_complement = solve_theta(&gbar, ThetaVariant::Lovasz, opts)?;
        let schrijver_complement =
            solve_theta_warm(&gbar, ThetaVariant::Schrijver, opts, lovasz_complement.warm_state())?;
        Ok(ProductSolutions {
            lovasz,
            lovasz_complement,
            schrijver_complement,
            szegedy,
        })
    }

    pub fn converged(&self) -> bool {
        [&self.lovasz, &self.lovasz_complement, &self.schrijver_complement, &self.szegedy]
            .iter()
            .all(|r| r.converged)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductReport {
    pub n: usize,
    pub flags: StructureFlags,
    /// Equality is claimed for this graph.
    pub qualifies: bool,
    pub thetas: Vec<ThetaSummary>,
    /// `theta(G) theta(G-bar)`
    pub lovasz_product: f64,
    /// `theta-(G-bar) theta+(G)`
    pub variant_product: f64,
    pub lovasz_deviation: f64,
    pub variant_deviation: f64,
    /// Allowed deviation, `product_rel * n`.
    pub tolerance: f64,
    /// Both products at least `n - tolerance`.
    pub inequality_holds: bool,
    /// Both products within `tolerance` of `n`; only set when `qualifies`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equality_holds: Option<bool>,
    pub converged: bool,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.inequality_holds && self.equality_holds.unwrap_or(true)
    }
}

pub fn product_report(g: &Graph, flags: &StructureFlags, sols: &ProductSolutions, tol: &Tolerances) -> ProductReport {
    let n = g.n() as f64;
    let lovasz_product = sols.lovasz.value * sols.lovasz_complement.value;
    let variant_product = sols.schrijver_complement.value * sols.szegedy.value;
    let tolerance = tol.product_rel * n;
    let qualifies = flags.qualifies_for_products();
    let inequality_holds = lovasz_product >= n - tolerance && variant_product >= n - tolerance;
    let equality_holds =
        qualifies.then(|| (lovasz_product - n).abs() <= tolerance && (variant_product - n).abs() <= tolerance);
    ProductReport {
        n: g.n(),
        flags: *flags,
        qualifies,
        thetas: vec![
            ThetaSummary::new(&sols.lovasz, false),
            ThetaSummary::new(&sols.lovasz_complement, true),
            ThetaSummary::new(&sols.schrijver_complement, true),
            ThetaSummary::new(&sols.szegedy, false),
        ],
        lovasz_product,
        variant_product,
        lovasz_deviation: lovasz_product - n,
        variant_deviation: variant_product - n,
        tolerance,
        inequality_holds,
        equality_holds,
        converged: sols.converged(),
    }
}

/// Solve the four thetas and compare both products with `n`.
pub fn theta_product_check(
    g: &Graph,
    flags: &StructureFlags,
    opts: &SolverOptions,
    tol: &Tolerances,
) -> Result<(ProductReport, ProductSolutions)> {
    let sols = ProductSolutions::solve(g, opts)?;
    Ok((product_report(g, flags, &sols, tol), sols))
}

/// Main bound on the optimal pairs: `(theta(G), theta(G-bar))` under condition
/// A and `(theta+(G), theta-(G-bar))` under condition B, over every applicable
/// structure. Uses the exactly feasible certificates.
pub fn equality_link(g: &Graph, s: &GraphStructure, sols: &ProductSolutions, tol: &Tolerances) -> Result<Vec<MainBoundReport>> {
    let pairs = [
        (&sols.lovasz, &sols.lovasz_complement),
        (&sols.szegedy, &sols.schrijver_complement),
    ];
    let mut out = Vec::new();
    for kind in applicable_structures(s) {
        for (m, n) in pairs {
            out.push(main_bound_check(&m.certificate, &n.certificate, g, s, kind, tol)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichLink {
    pub lower: String,
    pub upper: String,
    /// `upper - lower`, accepted down to `-tolerance`.
    pub slack: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub alpha: usize,
    pub schrijver: f64,
    pub lovasz: f64,
    pub szegedy: f64,
    pub chi_complement: usize,
    pub links: Vec<SandwichLink>,
    pub tolerance: f64,
    pub converged: bool,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

/// `alpha(G) <= theta-(G) <= theta(G) <= theta+(G) <= chi(G-bar)`, each link
/// with slack `tol.sandwich`.
pub fn sandwich_from(alpha: usize, chi_complement: usize, t: &ThetaTriple, tol: &Tolerances) -> SandwichReport {
    let chain = [
        ("alpha", alpha as f64),
        ("schrijver", t.schrijver.value),
        ("lovasz", t.lovasz.value),
        ("szegedy", t.szegedy.value),
        ("chi_complement", chi_complement as f64),
    ];
    let links = chain
        .windows(2)
        .map(|w| {
            let slack = w[1].1 - w[0].1;
            SandwichLink {
                lower: w[0].0.to_string(),
                upper: w[1].0.to_string(),
                slack,
                holds: slack >= -tol.sandwich,
            }
        })
        .collect();
    SandwichReport {
        alpha,
        schrijver: t.schrijver.value,
        lovasz: t.lovasz.value,
        szegedy: t.szegedy.value,
        chi_complement,
        links,
        tolerance: tol.sandwich,
        converged: t.lovasz.converged && t.schrijver.converged && t.szegedy.converged,
    }
}

pub fn sandwich_check(g: &Graph, opts: &SolverOptions, tol: &Tolerances) -> Result<SandwichReport> {
    let alpha = max_coclique(g)?.size;
    let chi = chromatic_number(&g.complement())?;
    let thetas = solve_all_thetas(g, opts)?;
    Ok(sandwich_from(alpha, chi, &thetas, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, petersen};

    fn run(g: &Graph) -> (ProductReport, ProductSolutions, GraphStructure) {
        let s = GraphStructure::detect(g).unwrap();
        let (r, sols) = theta_product_check(g, &s.flags, &SolverOptions::default(), &Tolerances::default()).unwrap();
        (r, sols, s)
    }

    #[test]
    fn petersen_products() {
        let (r, sols, s) = run(&petersen());
        assert!(r.qualifies && r.converged && r.passed());
        assert!((r.lovasz_product - 10.0).abs() < 1e-2);
        assert!((r.variant_product - 10.0).abs() < 1e-2);
        let link = equality_link(&petersen(), &s, &sols, &Tolerances::default()).unwrap();
        assert_eq!(link.len(), 4);
        for m in &link {
            assert!(m.passed() && m.bound.equality && m.characterization, "{m:#?}");
        }
    }

    #[test]
    fn seven_cycle_products() {
        let (r, _, _) = run(&cycle(7));
        assert!(r.qualifies && r.passed());
        assert!((r.lovasz_product - 7.0).abs() < 1e-2);
    }

    #[test]
    fn path_products_only_inequality() {
        let (r, _, _) = run(&path(4));
        assert!(!r.qualifies && r.equality_holds.is_none());
        assert!(r.lovasz_product >= 4.0 - 1e-2 && r.passed());
    }

    #[test]
    fn sandwich_on_five_cycle() {
        let r = sandwich_check(&cycle(5), &SolverOptions::default(), &Tolerances::default()).unwrap();
        assert!(r.passed() && r.converged);
        assert_eq!((r.alpha, r.chi_complement), (2, 3));
    }
}
