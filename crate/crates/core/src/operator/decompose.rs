use serde::{Deserialize, Serialize};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::hilbert::PVector;
use crate::quadratic::{ExtensionContext, QuadExt};

use super::block::BlockOperator;

/// One summand `lambda |e><f|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalTerm {
    pub lambda: QuadExt,
    pub e: PVector,
    pub f: PVector,
}

/// `C = sum_j lambda_j |e_j><f_j|` with `{e_j}` drawn from the standard
/// basis and every `f_j` of norm 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalDecomposition {
    pub terms: Vec<CanonicalTerm>,
}

impl CanonicalDecomposition {
    /// One term per nonzero row `m`: `e = phi_m`, `lambda` the first entry of
    /// maximal absolute value in the row, and `f = conj(row) / conj(lambda)`.
    pub fn of(c: &BlockOperator) -> Result<Self> {
        let ctx = *c.context();
        let mut terms = Vec::new();
        for m in 1..=c.dim() {
            let row = c.row(m);
            if row.is_zero() {
                continue;
            }
            let top = row.sup_norm();
            let lambda = row
                .iter()
                .map(|(_, z)| *z)
                .find(|z| z.ext_abs() == top)
                .expect("nonzero row has a maximal entry");
            let f = row.conj().scale(&lambda.conj().inv()?);
            terms.push(CanonicalTerm { lambda, e: PVector::basis(ctx, m), f });
        }
        Ok(CanonicalDecomposition { terms })
    }

    pub fn reconstruct(&self, ctx: ExtensionContext) -> Result<BlockOperator> {
        let mut acc = BlockOperator::zero(ctx, 0);
        for t in &self.terms {
            acc = acc.add(&BlockOperator::rank_one(&t.e, &t.f)?.scale(&t.lambda))?;
        }
        Ok(acc)
    }

    /// `max_j |lambda_j|`.
    pub fn max_coefficient(&self, p: u64) -> AbsValue {
        self.terms.iter().map(|t| t.lambda.ext_abs()).max().unwrap_or_else(|| AbsValue::zero(p))
    }

    /// `sum_j lambda_j <f_j, e_j>`, the trace of the reconstruction.
    pub fn trace(&self, ctx: ExtensionContext) -> Result<QuadExt> {
        let mut acc = ctx.zero();
        for t in &self.terms {
            acc = acc + t.lambda * t.f.inner(&t.e)?;
        }
        Ok(acc)
    }
}

/// One summand `sigma |e><f| + conj(sigma) |f><e|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricTerm {
    pub sigma: QuadExt,
    pub e: PVector,
    pub f: PVector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricDecomposition {
    pub terms: Vec<SymmetricTerm>,
}

impl SymmetricDecomposition {
    /// Writes a self-adjoint `T` as `A + A*`, with `A` the strict upper
    /// triangle plus half the diagonal, and decomposes `A` canonically.
    pub fn of(t: &BlockOperator) -> Result<Self> {
        if let Some((row, col)) = t.self_adjoint_violation() {
            return Err(Error::NotSelfAdjoint { row, col });
        }
        let ctx = *t.context();
        let half = ctx.base().from_ratio(1, 2)?;
        let upper = BlockOperator::from_fn(ctx, t.dim(), |m, n| match m.cmp(&n) {
            std::cmp::Ordering::Less => t.entry(m, n),
            std::cmp::Ordering::Equal => t.entry(m, n).scale(&half),
            std::cmp::Ordering::Greater => ctx.zero(),
        });
        let terms = CanonicalDecomposition::of(&upper)?
            .terms
            .into_iter()
            .map(|c| SymmetricTerm { sigma: c.lambda, e: c.e, f: c.f })
            .collect();
        Ok(SymmetricDecomposition { terms })
    }

    pub fn reconstruct(&self, ctx: ExtensionContext) -> Result<BlockOperator> {
        let mut acc = BlockOperator::zero(ctx, 0);
        for t in &self.terms {
            let ef = BlockOperator::rank_one(&t.e, &t.f)?.scale(&t.sigma);
            let fe = BlockOperator::rank_one(&t.f, &t.e)?.scale(&t.sigma.conj());
            acc = acc.add(&ef)?.add(&fe)?;
        }
        Ok(acc)
    }

    /// `2 sum_j sc(sigma_j <f_j, e_j>)`.
    pub fn trace(&self, ctx: ExtensionContext) -> Result<QuadExt> {
        let two = ctx.base().from_i64(2);
        let mut acc = ctx.base().zero();
        for t in &self.terms {
            acc = acc + two * (t.sigma * t.f.inner(&t.e)?).sc();
        }
        Ok(ctx.embed(acc))
    }
}

/// Factors `R = S T` with both factors block-finite: `S` is diagonal with
/// entries `kappa_j` on the rows of the canonical decomposition of `R`, and
/// `T = sum_j nu_j |e_j><f_j|` with `kappa_j nu_j = lambda_j`.
pub fn factor_trace_class(r: &BlockOperator) -> Result<(BlockOperator, BlockOperator)> {
    let ctx = *r.context();
    let dec = CanonicalDecomposition::of(r)?;
    let mut s = BlockOperator::zero(ctx, r.dim());
    let mut t = BlockOperator::zero(ctx, r.dim());
    for term in &dec.terms {
        let h = term.lambda.ext_abs().half_valuation().expect("nonzero coefficient");
        let kappa = ctx.embed(ctx.base().p_power(h.div_euclid(4)));
        let nu = term.lambda.div(&kappa)?;
        s = s.add(&BlockOperator::rank_one(&term.e, &term.e)?.scale(&kappa))?;
        t = t.add(&BlockOperator::rank_one(&term.e, &term.f)?.scale(&nu))?;
    }
    Ok((s, t))
}
