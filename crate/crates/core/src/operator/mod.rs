//! Matrix operators relative to the standard orthonormal basis.

mod block;
mod classify;
mod decompose;
mod generator;
mod unitary;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use block::BlockOperator;
pub use classify::{classify_block, classify_generator, Classification, Flag, Verdict, Witness};
pub use decompose::{factor_trace_class, CanonicalDecomposition, CanonicalTerm, SymmetricDecomposition, SymmetricTerm};
pub use generator::{DecayCertificate, DecaySupport, GeneratorOperator};
pub use unitary::{
    block_is_ip_preserving, block_is_unitary, dyadic_sqrt14_unitary, four_squares, ip_preserving_non_unitary,
    FourSquares,
};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::hilbert::PVector;
use crate::quadratic::{ExtensionContext, QuadExt};

/// Either an exactly stored block or an entry generator with a decay
/// certificate. Algebraic operations other than the adjoint are only
/// offered on blocks.
#[derive(Clone, Debug)]
pub enum MatrixOperator {
    Block(BlockOperator),
    Generator(GeneratorOperator),
}

/// A trace value with the bound on the terms it leaves out.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceValue {
    pub value: QuadExt,
    /// Every omitted diagonal term has at most this absolute value; zero for
    /// block-finite operators.
    pub tail_bound: AbsValue,
}

impl MatrixOperator {
    pub fn context(&self) -> &ExtensionContext {
        match self {
            MatrixOperator::Block(b) => b.context(),
            MatrixOperator::Generator(g) => g.context(),
        }
    }

    pub fn as_block(&self) -> Result<&BlockOperator> {
        match self {
            MatrixOperator::Block(b) => Ok(b),
            MatrixOperator::Generator(_) => Err(Error::NotBlockFinite),
        }
    }

    pub fn entry(&self, m: usize, n: usize) -> QuadExt {
        match self {
            MatrixOperator::Block(b) => b.entry(m, n),
            MatrixOperator::Generator(g) => g.entry(m, n),
        }
    }

    pub fn apply(&self, v: &PVector) -> Result<PVector> {
        match self {
            MatrixOperator::Block(b) => b.apply(v),
            MatrixOperator::Generator(g) => g.apply(v),
        }
    }

    pub fn compose(&self, other: &MatrixOperator) -> Result<MatrixOperator> {
        Ok(MatrixOperator::Block(self.as_block()?.compose(other.as_block()?)?))
    }

    pub fn add(&self, other: &MatrixOperator) -> Result<MatrixOperator> {
        Ok(MatrixOperator::Block(self.as_block()?.add(other.as_block()?)?))
    }

    pub fn scale(&self, c: &QuadExt) -> Result<MatrixOperator> {
        Ok(MatrixOperator::Block(self.as_block()?.scale(c)))
    }

    pub fn adjoint(&self) -> Result<MatrixOperator> {
        match self {
            MatrixOperator::Block(b) => Ok(MatrixOperator::Block(b.adjoint())),
            MatrixOperator::Generator(g) => Ok(MatrixOperator::Generator(g.adjoint()?)),
        }
    }

    pub fn operator_norm(&self) -> Result<AbsValue> {
        match self {
            MatrixOperator::Block(b) => Ok(b.operator_norm()),
            MatrixOperator::Generator(g) => g.operator_norm(),
        }
    }

    pub fn classify(&self) -> Classification {
        match self {
            MatrixOperator::Block(b) => classify_block(b),
            MatrixOperator::Generator(g) => classify_generator(g),
        }
    }

    pub fn is_unitary(&self) -> Result<bool> {
        Ok(block_is_unitary(self.as_block()?))
    }

    pub fn is_ip_preserving(&self) -> Result<bool> {
        Ok(block_is_ip_preserving(self.as_block()?))
    }

    /// The trace. Generators need a certified trace-class (or traceable)
    /// verdict; the window sum is returned with a bound on the tail.
    pub fn trace(&self) -> Result<TraceValue> {
        match self {
            MatrixOperator::Block(b) => Ok(TraceValue { value: b.trace(), tail_bound: AbsValue::zero(b.context().p()) }),
            MatrixOperator::Generator(g) => {
                let c = classify_generator(g);
                if !(c.trace_class.holds() || c.traceable.holds()) {
                    if c.trace_class.verdict == Verdict::Refuted && c.traceable.verdict == Verdict::Refuted {
                        return Err(Error::NotTraceClass("the certificate refutes trace-class decay".into()));
                    }
                    return Err(Error::TailNotBounded);
                }
                let (value, tail_bound) = g.windowed_trace()?;
                Ok(TraceValue { value, tail_bound })
            }
        }
    }

    /// `tr(S* T)` for block-finite operators.
    pub fn hs_inner(&self, other: &MatrixOperator) -> Result<QuadExt> {
        self.as_block()?.hs_inner(other.as_block()?)
    }

    pub fn canonical_decomposition(&self) -> Result<CanonicalDecomposition> {
        CanonicalDecomposition::of(self.as_block()?)
    }

    pub fn symmetric_decomposition(&self) -> Result<SymmetricDecomposition> {
        SymmetricDecomposition::of(self.as_block()?)
    }

    pub fn factor_trace_class(&self) -> Result<(MatrixOperator, MatrixOperator)> {
        let (s, t) = factor_trace_class(self.as_block()?)?;
        Ok((MatrixOperator::Block(s), MatrixOperator::Block(t)))
    }
}

impl From<BlockOperator> for MatrixOperator {
    fn from(b: BlockOperator) -> Self {
        MatrixOperator::Block(b)
    }
}

impl From<GeneratorOperator> for MatrixOperator {
    fn from(g: GeneratorOperator) -> Self {
        MatrixOperator::Generator(g)
    }
}

/// `(tr(BT), tr(TB))` for block-finite `B` and `T`.
pub fn verify_cyclic(b: &BlockOperator, t: &BlockOperator) -> Result<(QuadExt, QuadExt)> {
    Ok((b.compose(t)?.trace(), t.compose(b)?.trace()))
}

#[derive(Serialize, Deserialize)]
struct DecayJson {
    row: i64,
    col: i64,
    offset: i64,
    support: DecaySupport,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum OperatorJson {
    BlockFinite(block::BlockJson),
    /// Entries `coefficient * p^beta(m, n)`.
    Generator {
        p: u64,
        mu: i64,
        precision: u32,
        window: usize,
        decay: DecayJson,
        coefficient: QuadExt,
    },
}

impl Serialize for MatrixOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let json = match self {
            MatrixOperator::Block(b) => OperatorJson::BlockFinite(b.to_json()),
            MatrixOperator::Generator(g) => {
                let mono = g
                    .monomial_form()
                    .ok_or_else(|| S::Error::custom("only monomial generators have a JSON form"))?;
                let ctx = g.context();
                let mu = ctx
                    .mu()
                    .to_balanced_i128()
                    .and_then(|m| i64::try_from(m).ok())
                    .ok_or_else(|| S::Error::custom("mu must be an integer"))?;
                let cert = g.certificate();
                OperatorJson::Generator {
                    p: ctx.p(),
                    mu,
                    precision: ctx.base().precision(),
                    window: g.window(),
                    decay: DecayJson { row: cert.row, col: cert.col, offset: cert.offset, support: cert.support },
                    coefficient: mono.coefficient,
                }
            }
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match OperatorJson::deserialize(deserializer)? {
            OperatorJson::BlockFinite(raw) => BlockOperator::from_json(raw).map(MatrixOperator::Block),
            OperatorJson::Generator { p, mu, precision, window, decay, coefficient } => {
                ExtensionContext::from_params(p, mu, precision).and_then(|ctx| {
                    let coefficient = ctx.from_parts(coefficient.sc(), coefficient.ac())?;
                    let cert = DecayCertificate::new(decay.row, decay.col, decay.offset, decay.support);
                    GeneratorOperator::monomial(ctx, window, cert, coefficient).map(MatrixOperator::Generator)
                })
            }
        }
        .map_err(D::Error::custom)
    }
}

impl Serialize for BlockOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorJson::BlockFinite(self.to_json()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BlockOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match MatrixOperator::deserialize(deserializer)? {
            MatrixOperator::Block(b) => Ok(b),
            MatrixOperator::Generator(_) => Err(D::Error::custom(Error::NotBlockFinite)),
        }
    }
}
