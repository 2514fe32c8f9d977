use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::hilbert::PVector;
use crate::quadratic::{ExtensionContext, QuadExt};

use super::block::BlockOperator;

/// Where the entries of a generator may be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecaySupport {
    Full,
    Diagonal,
    /// `|m - n| <= width`.
    Band(usize),
}

impl DecaySupport {
    pub fn contains(&self, m: usize, n: usize) -> bool {
        match *self {
            DecaySupport::Full => true,
            DecaySupport::Diagonal => m == n,
            DecaySupport::Band(w) => m.abs_diff(n) <= w,
        }
    }
}

/// A lower bound `beta(m, n) = row*m + col*n + offset` on the valuation of
/// `A_mn` over `support`; entries off the support are zero. With `exact`
/// set, the bound is attained at every supported position, which lets
/// failed limit conditions be refuted rather than left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub row: i64,
    pub col: i64,
    pub offset: i64,
    pub support: DecaySupport,
    #[serde(default)]
    pub exact: bool,
}

/// Limit behaviour implied by a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct DecayFacts {
    /// `lim_m A_mn = 0` for every `n`.
    pub column_limit: bool,
    /// `lim_n A_mn = 0` for every `m`.
    pub row_limit: bool,
    pub bounded: bool,
    /// `A_mn -> 0` as `m` and `n` both grow.
    pub pringsheim: bool,
    /// `lim_m A_mm = 0`.
    pub diagonal_limit: bool,
}

impl DecayCertificate {
    pub fn new(row: i64, col: i64, offset: i64, support: DecaySupport) -> Self {
        DecayCertificate { row, col, offset, support, exact: false }
    }

    pub fn exact(mut self) -> Self {
        self.exact = true;
        self
    }

    /// `beta(m, n)`, or `None` off the support.
    pub fn beta(&self, m: usize, n: usize) -> Option<i64> {
        self.support
            .contains(m, n)
            .then(|| self.row * m as i64 + self.col * n as i64 + self.offset)
    }

    pub fn transpose(&self) -> Self {
        DecayCertificate { row: self.col, col: self.row, ..*self }
    }

    pub(crate) fn facts(&self) -> DecayFacts {
        let (a, b) = (self.row, self.col);
        match self.support {
            DecaySupport::Full => DecayFacts {
                column_limit: a > 0,
                row_limit: b > 0,
                bounded: a >= 0 && b >= 0,
                pringsheim: a >= 0 && b >= 0 && a + b > 0,
                diagonal_limit: a + b > 0,
            },
            // each row and column meets the support finitely often
            DecaySupport::Diagonal | DecaySupport::Band(_) => DecayFacts {
                column_limit: true,
                row_limit: true,
                bounded: a + b >= 0,
                pringsheim: a + b > 0,
                diagonal_limit: a + b > 0,
            },
        }
    }

    /// Smallest `beta` over supported positions outside the `window x window`
    /// block. Only meaningful when the certificate implies boundedness.
    pub(crate) fn tail_minimum(&self, window: usize) -> i64 {
        let w = window + 1;
        let candidates: Vec<(usize, usize)> = match self.support {
            DecaySupport::Full => vec![(w, 1), (1, w)],
            DecaySupport::Diagonal => vec![(w, w)],
            DecaySupport::Band(width) => (w.saturating_sub(width).max(1)..=w)
                .flat_map(|k| [(w, k), (k, w)])
                .collect(),
        };
        candidates
            .into_iter()
            .filter_map(|(m, n)| self.beta(m, n))
            .min()
            .expect("every support reaches beyond the window")
    }

    /// Smallest `beta(m, m)` for `m > window`, when the diagonal decays.
    pub(crate) fn diagonal_tail_minimum(&self, window: usize) -> i64 {
        let w = window as i64 + 1;
        (self.row + self.col) * w + self.offset
    }
}

type EntryFn = dyn Fn(usize, usize) -> QuadExt + Send + Sync;

/// The coefficient form `A_mn = c * p^beta(m, n)` used for serialization.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Monomial {
    pub coefficient: QuadExt,
}

/// An operator given by an entry callback, a decay certificate and a
/// materialization window. The callback must be re-entrant.
#[derive(Clone)]
pub struct GeneratorOperator {
    ctx: ExtensionContext,
    entry: Arc<EntryFn>,
    window: usize,
    certificate: DecayCertificate,
    hermitian: bool,
    monomial: Option<Monomial>,
}

impl fmt::Debug for GeneratorOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorOperator")
            .field("window", &self.window)
            .field("certificate", &self.certificate)
            .field("hermitian", &self.hermitian)
            .finish_non_exhaustive()
    }
}

impl GeneratorOperator {
    /// Validates every windowed entry against the certificate.
    pub fn new(
        ctx: ExtensionContext,
        window: usize,
        certificate: DecayCertificate,
        entry: impl Fn(usize, usize) -> QuadExt + Send + Sync + 'static,
    ) -> Result<Self> {
        let op = GeneratorOperator { ctx, entry: Arc::new(entry), window, certificate, hermitian: false, monomial: None };
        op.validate()?;
        Ok(op)
    }

    /// `A_mn = coefficient * p^beta(m, n)` on the support, which needs
    /// `|coefficient| <= 1`. Hermitian symmetry is decided exactly for this
    /// form.
    pub fn monomial(ctx: ExtensionContext, window: usize, certificate: DecayCertificate, coefficient: QuadExt) -> Result<Self> {
        if *coefficient.context() != ctx {
            return Err(Error::ContextMismatch);
        }
        let mut cert = certificate;
        cert.exact = coefficient.ext_abs() == AbsValue::one(ctx.p());
        let base = ctx.base();
        let mut op = Self::new(ctx, window, cert, move |m, n| match cert.beta(m, n) {
            Some(b) => coefficient.scale(&base.p_power(b)),
            None => ctx.zero(),
        })?;
        op.hermitian = cert.row == cert.col && coefficient.in_base_field();
        op.monomial = Some(Monomial { coefficient });
        Ok(op)
    }

    /// Declares `A_mn = conj(A_nm)` for all `m, n`. Windowed entries are still
    /// checked during classification.
    pub fn attest_hermitian(mut self) -> Self {
        self.hermitian = true;
        self
    }

    fn validate(&self) -> Result<()> {
        for m in 1..=self.window {
            for n in 1..=self.window {
                let z = (self.entry)(m, n);
                if *z.context() != self.ctx {
                    return Err(Error::ContextMismatch);
                }
                let ok = match (self.certificate.beta(m, n), z.ext_abs().half_valuation()) {
                    (None, None) => true,
                    (None, Some(_)) => false,
                    (Some(_), None) => !self.certificate.exact,
                    (Some(b), Some(h)) => h >= 2 * b && (!self.certificate.exact || h == 2 * b),
                };
                if !ok {
                    return Err(Error::InvalidCertificate { row: m, col: n });
                }
            }
        }
        Ok(())
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn certificate(&self) -> &DecayCertificate {
        &self.certificate
    }

    pub fn is_attested_hermitian(&self) -> bool {
        self.hermitian
    }

    pub(crate) fn monomial_form(&self) -> Option<Monomial> {
        self.monomial
    }

    pub fn entry(&self, m: usize, n: usize) -> QuadExt {
        (self.entry)(m, n)
    }

    /// The `window x window` truncation.
    pub fn window_block(&self) -> BlockOperator {
        BlockOperator::from_fn(self.ctx, self.window, |m, n| self.entry(m, n))
    }

    /// Image of a vector supported in the window. Rows are computed up to the
    /// window for full support, and exactly for banded supports.
    pub fn apply(&self, v: &PVector) -> Result<PVector> {
        if *v.context() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        if v.max_index() > self.window {
            return Err(Error::OutsideWindow { index: v.max_index(), window: self.window });
        }
        let rows = match self.certificate.support {
            DecaySupport::Full => self.window,
            DecaySupport::Diagonal => v.max_index(),
            DecaySupport::Band(w) => v.max_index() + w,
        };
        let mut out = PVector::zero(self.ctx);
        for m in 1..=rows {
            let mut acc = self.ctx.zero();
            for (n, z) in v.iter() {
                acc = acc + self.entry(m, n) * *z;
            }
            out.set(m, acc);
        }
        Ok(out)
    }

    /// The adjoint generator `conj(A_nm)`, available when the certificate
    /// proves both row and column decay.
    pub fn adjoint(&self) -> Result<GeneratorOperator> {
        let facts = self.certificate.facts();
        if !(facts.bounded && facts.row_limit && facts.column_limit) {
            return Err(Error::NotAdjointable(
                "the decay certificate does not prove both row and column limits".into(),
            ));
        }
        let inner = Arc::clone(&self.entry);
        let monomial = self.monomial.map(|m| Monomial { coefficient: m.coefficient.conj() });
        Ok(GeneratorOperator {
            ctx: self.ctx,
            entry: Arc::new(move |m, n| inner(n, m).conj()),
            window: self.window,
            certificate: self.certificate.transpose(),
            hermitian: self.hermitian,
            monomial,
        })
    }

    /// `max |A_mn|` over the window, valid when the certificate bounds the
    /// tail by that maximum.
    pub fn operator_norm(&self) -> Result<AbsValue> {
        if !self.certificate.facts().bounded {
            return Err(Error::TailDominates);
        }
        let window_max = self.window_block().operator_norm();
        let tail = AbsValue::from_valuation(self.ctx.p(), self.certificate.tail_minimum(self.window));
        if window_max.is_zero() || tail > window_max {
            return Err(Error::TailDominates);
        }
        Ok(window_max)
    }

    /// Sum of the windowed diagonal together with the bound `p^-beta` on
    /// the remaining terms.
    pub fn windowed_trace(&self) -> Result<(QuadExt, AbsValue)> {
        if !self.certificate.facts().diagonal_limit {
            return Err(Error::TailNotBounded);
        }
        let sum = (1..=self.window).fold(self.ctx.zero(), |acc, m| acc + self.entry(m, m));
        let tail = AbsValue::from_valuation(self.ctx.p(), self.certificate.diagonal_tail_minimum(self.window));
        Ok((sum, tail))
    }
}
