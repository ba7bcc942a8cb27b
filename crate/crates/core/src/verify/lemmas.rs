use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{negligible, Matrix, Scalar};
use crate::tolerance::Tolerances;
use crate::verify::basis::ProjectionBasis;
use crate::verify::condition::psd_precondition;
use crate::verify::report::{exact_string, BoundSense, EqualityCertificate, InequalityReport, PerTerm, Precondition};

fn check_sizes<T: Scalar>(m: &Matrix<T>, n: &Matrix<T>, b: &ProjectionBasis<T>) -> Result<()> {
    b.check_size(m)?;
    b.check_size(n)
}

fn structural_preconditions<T: Scalar>(b: &ProjectionBasis<T>) -> Vec<Precondition> {
    vec![
        Precondition::new("homogeneous", b.is_homogeneous(), None),
        Precondition::new("contains_identity", b.identity_index().is_some(), None),
    ]
}

/// `<M', N'> <= (tr M)(tr N) / n`, given `<M,P_i><P_i,N> <= 0` for every
/// non-identity basis element. Equality iff all those products vanish.
pub fn lemma1_check<T: Scalar>(
    m: &Matrix<T>,
    n: &Matrix<T>,
    b: &ProjectionBasis<T>,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    check_sizes(m, n, b)?;
    let size = T::from_int(b.n() as i64);
    let identity = b.identity_index();
    let cm = b.coefficients(m);
    let cn = b.coefficients(n);
    let products: Vec<T> = cm.into_iter().zip(cn).map(|(x, y)| x * y).collect();

    let mut pre = structural_preconditions(b);
    let worst = products
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != identity)
        .map(|(i, p)| (i, p.clone()))
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let hypothesis = match &worst {
        Some((_, p)) if T::EXACT => *p <= T::zero(),
        Some((_, p)) => p.to_f64() <= tol.num_tol,
        None => true,
    };
    pre.push(Precondition::new(
        "cross_terms_nonpositive",
        hypothesis,
        worst.as_ref().map(|(i, p)| format!("largest product {} at index {i}", p.to_f64())),
    ));
    pre.push(psd_precondition("m_psd", m, tol)?);
    pre.push(psd_precondition("n_psd", n, tol)?);

    let lhs = b.project(m).inner(&b.project(n));
    let rhs = m.trace() * n.trace() / size;
    let mut report = InequalityReport::evaluate("lemma1_trace_upper_bound", BoundSense::Upper, &lhs, &rhs, pre, tol);
    report.equality = products
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != identity)
        .all(|(_, p)| negligible(p, tol.eq_tol));
    report.per_term = products
        .iter()
        .enumerate()
        .map(|(index, p)| PerTerm {
            index,
            identity: Some(index) == identity,
            product: p.to_f64(),
            exact: exact_string(p),
        })
        .collect();
    Ok(report)
}

/// `M'N'` against its best multiple of `J`.
pub fn multiple_of_j_certificate<T: Scalar>(mp: &Matrix<T>, np: &Matrix<T>, tol: &Tolerances) -> EqualityCertificate {
    let p = mp.matmul(np);
    let cells = T::from_int((p.n() * p.n()) as i64);
    let mean = p.sum() / cells;
    let residual_sq = p.as_slice().iter().fold(T::zero(), |acc, v| {
        let d = v.clone() - mean.clone();
        acc + d.clone() * d
    });
    let residual = residual_sq.to_f64().sqrt();
    let norm = p.frobenius_sq().to_f64().sqrt();
    let (threshold, holds) = if T::EXACT {
        (0.0, residual_sq.is_zero())
    } else {
        let t = tol.eq_tol * (1.0 + norm);
        (t, residual <= t)
    };
    EqualityCertificate {
        mean_entry: mean.to_f64(),
        residual,
        norm,
        threshold,
        holds,
    }
}

/// `<M', N'> >= (tr JM)(tr JN) / n^2` for PSD `M`, `N` when the algebra holds
/// `I` and `J`. Equality iff `M'N'` is a multiple of `J`.
pub fn lemma2_check<T: Scalar>(
    m: &Matrix<T>,
    n: &Matrix<T>,
    b: &ProjectionBasis<T>,
    tol: &Tolerances,
) -> Result<InequalityReport> {
    check_sizes(m, n, b)?;
    if !b.contains_j() {
        return Err(Error::NotApplicable("J is not in the algebra, so the lower trace bound does not apply".into()));
    }
    let size = T::from_int(b.n() as i64);
    let mut pre = structural_preconditions(b);
    pre.push(psd_precondition("m_psd", m, tol)?);
    pre.push(psd_precondition("n_psd", n, tol)?);
    let mp = b.project(m);
    let np = b.project(n);
    let lhs = mp.inner(&np);
    let rhs = m.sum() * n.sum() / (size.clone() * size);
    let mut report = InequalityReport::evaluate("lemma2_trace_lower_bound", BoundSense::Lower, &lhs, &rhs, pre, tol);
    let cert = multiple_of_j_certificate(&mp, &np, tol);
    report.equality = cert.holds;
    report.certificate = Some(cert);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceIdentities {
    pub trace: f64,
    pub projected_trace: f64,
    pub sum: f64,
    pub projected_sum: f64,
    /// Largest of the two discrepancies, relative to `1 + |original|`.
    pub relative_error: f64,
    /// Exactly equal (exact tier) or within `rel` (float tier).
    pub holds: bool,
}

/// `tr M' = tr M` and `tr JM' = tr JM` when `I` and `J` are in the algebra.
pub fn trace_identities<T: Scalar>(m: &Matrix<T>, b: &ProjectionBasis<T>, rel: f64) -> Result<TraceIdentities> {
    b.check_size(m)?;
    if b.identity_index().is_none() || !b.contains_j() {
        return Err(Error::NotApplicable("trace identities need I and J in the algebra".into()));
    }
    let mp = b.project(m);
    let (t, tp, s, sp) = (m.trace(), mp.trace(), m.sum(), mp.sum());
    let err = |a: &T, b: &T| (a.clone() - b.clone()).to_f64().abs() / (1.0 + a.to_f64().abs());
    let relative_error = err(&t, &tp).max(err(&s, &sp));
    let holds = if T::EXACT {
        t == tp && s == sp
    } else {
        relative_error <= rel
    };
    Ok(TraceIdentities {
        trace: t.to_f64(),
        projected_trace: tp.to_f64(),
        sum: s.to_f64(),
        projected_sum: sp.to_f64(),
        relative_error,
        holds,
    })
}
