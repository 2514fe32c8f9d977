use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::hilbert::PVector;
use crate::padic::PadicNumber;
use crate::quadratic::{ExtensionContext, QuadExt};

/// An operator that vanishes outside the leading `dim x dim` block.
///
/// Entries are addressed 1-based; anything outside the block reads as zero.
/// Binary operations on blocks of different sizes pad the smaller one.
#[derive(Clone, Debug)]
pub struct BlockOperator {
    ctx: ExtensionContext,
    dim: usize,
    entries: Vec<QuadExt>,
}

impl BlockOperator {
    pub fn zero(ctx: ExtensionContext, dim: usize) -> Self {
        BlockOperator { ctx, dim, entries: vec![ctx.zero(); dim * dim] }
    }

    pub fn identity(ctx: ExtensionContext, dim: usize) -> Self {
        Self::from_fn(ctx, dim, |m, n| if m == n { ctx.one() } else { ctx.zero() })
    }

    pub fn from_fn(ctx: ExtensionContext, dim: usize, mut f: impl FnMut(usize, usize) -> QuadExt) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for m in 1..=dim {
            for n in 1..=dim {
                entries.push(f(m, n));
            }
        }
        BlockOperator { ctx, dim, entries }
    }

    pub fn from_rows(ctx: ExtensionContext, rows: Vec<Vec<QuadExt>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for z in row {
                if *z.context() != ctx {
                    return Err(Error::ContextMismatch);
                }
                entries.push(z);
            }
        }
        Ok(BlockOperator { ctx, dim, entries })
    }

    /// `|ket><bra|`, with entries `ket_m conj(bra_n)`.
    pub fn rank_one(ket: &PVector, bra: &PVector) -> Result<Self> {
        if ket.context() != bra.context() {
            return Err(Error::ContextMismatch);
        }
        let ctx = *ket.context();
        let dim = ket.max_index().max(bra.max_index());
        Ok(Self::from_fn(ctx, dim, |m, n| ket.get(m) * bra.get(n).conj()))
    }

    /// The matrix unit `|e_j><e_k|`.
    pub fn matrix_unit(ctx: ExtensionContext, dim: usize, j: usize, k: usize) -> Self {
        Self::from_fn(ctx, dim, |m, n| if (m, n) == (j, k) { ctx.one() } else { ctx.zero() })
    }

    pub fn diagonal(ctx: ExtensionContext, diag: &[QuadExt]) -> Self {
        Self::from_fn(ctx, diag.len(), |m, n| if m == n { diag[m - 1] } else { ctx.zero() })
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A_mn`, 1-based; zero outside the block.
    pub fn entry(&self, m: usize, n: usize) -> QuadExt {
        if m == 0 || n == 0 || m > self.dim || n > self.dim {
            self.ctx.zero()
        } else {
            self.entries[(m - 1) * self.dim + (n - 1)]
        }
    }

    pub fn rows(&self) -> Vec<Vec<QuadExt>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(<[QuadExt]>::to_vec).collect()
    }

    pub fn row(&self, m: usize) -> PVector {
        PVector::from_entries(self.ctx, (1..=self.dim).map(|n| (n, self.entry(m, n)))).expect("same context")
    }

    pub fn column(&self, n: usize) -> PVector {
        PVector::from_entries(self.ctx, (1..=self.dim).map(|m| (m, self.entry(m, n)))).expect("same context")
    }

    pub fn padded(&self, dim: usize) -> BlockOperator {
        Self::from_fn(self.ctx, dim.max(self.dim), |m, n| self.entry(m, n))
    }

    fn check(&self, other: &BlockOperator) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn apply(&self, v: &PVector) -> Result<PVector> {
        if *v.context() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = PVector::zero(self.ctx);
        for m in 1..=self.dim {
            let mut acc = self.ctx.zero();
            for (n, z) in v.iter() {
                if n <= self.dim {
                    acc = acc + self.entry(m, n) * *z;
                }
            }
            out.set(m, acc);
        }
        Ok(out)
    }

    pub fn compose(&self, other: &BlockOperator) -> Result<BlockOperator> {
        self.check(other)?;
        let dim = self.dim.max(other.dim);
        Ok(Self::from_fn(self.ctx, dim, |m, n| {
            let mut acc = self.ctx.zero();
            for k in 1..=self.dim.min(other.dim) {
                acc = acc + self.entry(m, k) * other.entry(k, n);
            }
            acc
        }))
    }

    pub fn add(&self, other: &BlockOperator) -> Result<BlockOperator> {
        self.check(other)?;
        let dim = self.dim.max(other.dim);
        Ok(Self::from_fn(self.ctx, dim, |m, n| self.entry(m, n) + other.entry(m, n)))
    }

    pub fn sub(&self, other: &BlockOperator) -> Result<BlockOperator> {
        self.add(&other.scale(&self.ctx.from_i64(-1)))
    }

    pub fn scale(&self, c: &QuadExt) -> BlockOperator {
        BlockOperator { ctx: self.ctx, dim: self.dim, entries: self.entries.iter().map(|z| *c * *z).collect() }
    }

    pub fn scale_base(&self, c: &PadicNumber) -> BlockOperator {
        BlockOperator { ctx: self.ctx, dim: self.dim, entries: self.entries.iter().map(|z| z.scale(c)).collect() }
    }

    /// `A*_mn = conj(A_nm)`.
    pub fn adjoint(&self) -> BlockOperator {
        Self::from_fn(self.ctx, self.dim, |m, n| self.entry(n, m).conj())
    }

    /// `max_{m,n} |A_mn|`.
    pub fn operator_norm(&self) -> AbsValue {
        self.entries.iter().map(QuadExt::ext_abs).max().unwrap_or_else(|| AbsValue::zero(self.ctx.p()))
    }

    /// `max_n ||A e_n||`, computed from the images of the basis vectors.
    pub fn max_column_norm(&self) -> AbsValue {
        (1..=self.dim)
            .map(|n| self.apply(&PVector::basis(self.ctx, n)).expect("same context").sup_norm())
            .max()
            .unwrap_or_else(|| AbsValue::zero(self.ctx.p()))
    }

    pub fn trace(&self) -> QuadExt {
        (1..=self.dim).fold(self.ctx.zero(), |acc, m| acc + self.entry(m, m))
    }

    /// The Hilbert-Schmidt product `tr(S* T)`.
    pub fn hs_inner(&self, other: &BlockOperator) -> Result<QuadExt> {
        self.check(other)?;
        let mut acc = self.ctx.zero();
        for m in 1..=self.dim.min(other.dim) {
            for n in 1..=self.dim.min(other.dim) {
                acc = acc + self.entry(m, n).conj() * other.entry(m, n);
            }
        }
        Ok(acc)
    }

    /// `U A U*`.
    pub fn conjugate_by(&self, u: &BlockOperator) -> Result<BlockOperator> {
        u.compose(self)?.compose(&u.adjoint())
    }

    /// First entry (row-major) with `A_mn != conj(A_nm)`.
    pub fn self_adjoint_violation(&self) -> Option<(usize, usize)> {
        for m in 1..=self.dim {
            for n in m..=self.dim {
                if self.entry(m, n) != self.entry(n, m).conj() {
                    return Some((m, n));
                }
            }
        }
        None
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.self_adjoint_violation().is_none()
    }

    /// Entrywise equality at precision, padding to the larger block.
    pub fn eq_mod_precision(&self, other: &BlockOperator) -> bool {
        let dim = self.dim.max(other.dim);
        self.ctx == other.ctx && (1..=dim).all(|m| (1..=dim).all(|n| self.entry(m, n) == other.entry(m, n)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadExt::is_zero)
    }
}

impl PartialEq for BlockOperator {
    fn eq(&self, other: &Self) -> bool {
        self.eq_mod_precision(other)
    }
}

impl fmt::Display for BlockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct BlockJson {
    pub(crate) dim: usize,
    pub(crate) entries: Vec<Vec<QuadExt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub(crate) mu: Option<PadicNumber>,
}

impl BlockOperator {
    pub(crate) fn to_json(&self) -> BlockJson {
        // an empty block cannot carry its field through the entries
        let mu = if self.dim == 0 { Some(self.ctx.mu()) } else { None };
        BlockJson { dim: self.dim, entries: self.rows(), mu }
    }

    pub(crate) fn from_json(raw: BlockJson) -> Result<Self> {
        if raw.entries.len() != raw.dim {
            return Err(Error::DimensionMismatch { expected: raw.dim, found: raw.entries.len() });
        }
        let ctx = match (raw.entries.first().and_then(|r| r.first()), raw.mu) {
            (Some(z), _) => *z.context(),
            (None, Some(mu)) => ExtensionContext::new(mu)?,
            (None, None) => return Err(Error::Malformed("empty block needs a \"mu\" field".into())),
        };
        Self::from_rows(ctx, raw.entries)
    }
}
