use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

/// Orthogonalize `mats` under the trace inner product, in order.
///
/// Inputs that become the zero matrix after removing their components along
/// the earlier survivors are dropped. The first non-zero input is returned
/// unchanged. `denominator_bits` caps the size of any rational denominator.
pub fn gram_schmidt(mats: &[RationalMatrix], denominator_bits: u64) -> Result<Vec<RationalMatrix>> {
    let first = mats.first().ok_or(Error::EmptyInput("gram_schmidt needs at least one matrix"))?;
    let n = first.n();
    let mut out: Vec<RationalMatrix> = Vec::new();
    let mut norms = Vec::new();
    for m in mats {
        if m.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: m.n() });
        }
        if let Some(p) = orthogonalize_against(m, &out, &norms, denominator_bits)? {
            norms.push(p.frobenius_sq());
            out.push(p);
        }
    }
    Ok(out)
}

/// Component of `m` orthogonal to `basis`, or `None` if that component is zero.
pub(crate) fn orthogonalize_against(
    m: &RationalMatrix,
    basis: &[RationalMatrix],
    norms: &[crate::matrix::Rational],
    denominator_bits: u64,
) -> Result<Option<RationalMatrix>> {
    let mut p = m.clone();
    for (b, nb) in basis.iter().zip(norms) {
        let c = m.inner(b);
        if !c.is_zero() {
            p.add_scaled(&(-(c / nb)), b);
        }
    }
    let bits = p.max_denominator_bits();
    if bits > denominator_bits {
        return Err(Error::DenominatorOverflow {
            bits,
            cap: denominator_bits,
        });
    }
    Ok(if p.is_zero() { None } else { Some(p) })
}
