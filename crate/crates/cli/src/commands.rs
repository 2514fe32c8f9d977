use std::fs;
use std::path::{Path, PathBuf};

use padic_qm::hilbert::{isotropy_index, DEFAULT_ISOTROPY_BOUND};
use padic_qm::operator::{dyadic_sqrt14_unitary, ip_preserving_non_unitary, CanonicalDecomposition, SymmetricDecomposition};
use padic_qm::states::pair;
use padic_qm::{
    BlockOperator, Branch, Error, ExtensionContext, MatrixOperator, PadicContext, PadicNumber, Sovm, SquareClass,
    StatisticalOperator,
};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::report::*;

/// How a command failed; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    /// The input was understood but violates a mathematical requirement.
    Validation(Error),
    /// The input could not be read or decoded.
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Parse(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Validation(e) => format!("error[{}]: {e}", e.code()),
            Failure::Parse(msg) => format!("error[parse]: {msg}"),
        }
    }
}

pub type Outcome = Result<Value, Failure>;

/// Context flags shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub p: Option<u64>,
    pub mu: Option<i64>,
    pub precision: u32,
    pub seed: u64,
    pub jobs: usize,
}

impl Params {
    fn require_p(&self) -> Result<u64, Failure> {
        self.p.ok_or_else(|| Failure::Parse("--p is required for this command".into()))
    }

    fn require_mu(&self) -> Result<i64, Failure> {
        self.mu.ok_or_else(|| Failure::Parse("--mu is required for this command".into()))
    }

    fn extension(&self) -> Result<ExtensionContext, Failure> {
        Ok(ExtensionContext::from_params(self.require_p()?, self.require_mu()?, self.precision)?)
    }

    /// Rejects a file whose field differs from the one named by `--p`/`--mu`.
    fn check(&self, ctx: &ExtensionContext) -> Result<(), Failure> {
        if self.p.is_some_and(|p| p != ctx.p()) {
            return Err(Error::ContextMismatch.into());
        }
        if let Some(mu) = self.mu {
            if !ctx.mu().eq_mod_precision(&ctx.base().from_i64(mu)) {
                return Err(Error::ContextMismatch.into());
            }
        }
        Ok(())
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Outcome {
    serde_json::to_value(value).map_err(|e| Failure::Parse(format!("cannot encode output: {e}")))
}

/// Reads an operand given either as a path or as inline JSON.
pub fn load<T: DeserializeOwned>(source: &Path) -> Result<T, Failure> {
    let text = source.to_string_lossy();
    let trimmed = text.trim_start();
    let body = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        trimmed.to_string()
    } else {
        fs::read_to_string(source).map_err(|e| Failure::Parse(format!("{}: {e}", source.display())))?
    };
    let value: Value =
        serde_json::from_str(&body).map_err(|e| Failure::Parse(format!("{}: {e}", source.display())))?;
    serde_json::from_value(value).map_err(|e| Failure::Parse(format!("{}: {e}", source.display())))
}

fn load_block(source: &Path, params: &Params) -> Result<BlockOperator, Failure> {
    let op: MatrixOperator = load(source)?;
    params.check(op.context())?;
    Ok(op.as_block()?.clone())
}

fn class_rows(base: PadicContext) -> Result<Vec<SquareClassRow>, Failure> {
    let classes: Vec<SquareClass> = if base.p() == 2 {
        SquareClass::DYADIC_REPRESENTATIVES.iter().map(|&r| SquareClass::Dyadic(r)).collect()
    } else {
        [(false, false), (true, false), (false, true), (true, true)]
            .into_iter()
            .map(|(nonresidue, odd_valuation)| SquareClass::Odd { nonresidue, odd_valuation })
            .collect()
    };
    classes
        .into_iter()
        .map(|class| {
            let rep = class.representative(base)?;
            let representative = rep.to_balanced_i128().expect("representatives are small integers") as i64;
            let ramified = if class.is_trivial() {
                None
            } else {
                Some(ExtensionContext::new(rep)?.is_ramified())
            };
            Ok(SquareClassRow { label: class.label(), representative, ramified })
        })
        .collect()
}

pub fn field(params: &Params) -> Outcome {
    let ctx = params.extension()?;
    let base = ctx.base();
    let eta = if base.p() == 2 {
        None
    } else {
        Some(base.find_eta()?.to_balanced_i128().expect("eta is a small integer") as i64)
    };
    let square_classes = class_rows(base)?;
    let (nu, witness) = isotropy_index(&ctx, DEFAULT_ISOTROPY_BOUND)?;
    if !witness.inner(&witness)?.is_zero() {
        return Err(Error::SearchBoundExceeded.into());
    }
    to_json(&FieldReport {
        p: ctx.p(),
        mu: params.require_mu()?,
        precision: base.precision(),
        class: ctx.square_class().label(),
        canonical_mu: ctx.canonical_mu(),
        eta,
        ramified: ctx.is_ramified(),
        extensions: square_classes.len() - 1,
        square_classes,
        nu,
        witness_display: witness.to_string(),
        witness,
    })
}

fn parse_rational(base: PadicContext, input: &str) -> Result<PadicNumber, Failure> {
    let bad = || Failure::Parse(format!("expected an integer or a fraction a/b, found {input:?}"));
    match input.split_once('/') {
        Some((num, den)) => {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            Ok(base.from_ratio(num, den)?)
        }
        None => Ok(base.from_i64(input.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn sqrt(params: &Params, input: &str) -> Outcome {
    let base = PadicContext::new(params.require_p()?, params.precision)?;
    let value = parse_rational(base, input)?;
    let root = value.sqrt(Branch::Principal)?;
    let other_root = value.sqrt(Branch::Other)?;
    let square_class = if value.is_zero() { "0".to_string() } else { value.square_class()?.label() };
    to_json(&SqrtReport {
        p: base.p(),
        precision: base.precision(),
        input: input.to_string(),
        value,
        square_class,
        display: root.to_string(),
        root,
        other_root,
    })
}

fn classify_one(path: &Path, params: &Params) -> Result<ClassifyEntry, Failure> {
    let op: MatrixOperator = load(path)?;
    params.check(op.context())?;
    Ok(ClassifyEntry { file: path.display().to_string(), classification: op.classify() })
}

/// One file gives a bare classification; several give a list in argument
/// order, computed on up to `--jobs` threads.
pub fn classify(params: &Params, files: &[PathBuf]) -> Outcome {
    if let [single] = files {
        return to_json(&classify_one(single, params)?.classification);
    }
    let jobs = params.jobs.clamp(1, files.len().max(1));
    let chunk = files.len().div_ceil(jobs).max(1);
    let results: Vec<Result<ClassifyEntry, Failure>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|f| classify_one(f, params)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("classification threads do not panic"))
            .collect()
    });
    let entries = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    to_json(&entries)
}

pub fn trace(params: &Params, file: &Path) -> Outcome {
    let op: MatrixOperator = load(file)?;
    params.check(op.context())?;
    let t = op.trace()?;
    to_json(&TraceReport { display: t.value.to_string(), trace: t.value, tail_bound: t.tail_bound })
}

pub fn decompose(params: &Params, file: &Path, symmetric: bool) -> Outcome {
    let block = load_block(file, params)?;
    if symmetric {
        to_json(&SymmetricDecomposition::of(&block)?.terms)
    } else {
        to_json(&CanonicalDecomposition::of(&block)?.terms)
    }
}

pub fn unitary_check(params: &Params, file: &Path) -> Outcome {
    let op: MatrixOperator = load(file)?;
    params.check(op.context())?;
    to_json(&UnitaryReport {
        unitary: op.is_unitary()?,
        ip_preserving: op.is_ip_preserving()?,
        norm: op.operator_norm()?,
    })
}

pub fn pair_files(params: &Params, sovm: &Path, state: &Path) -> Outcome {
    let effects: Vec<MatrixOperator> = load(sovm)?;
    let effects = effects
        .into_iter()
        .map(|e| {
            params.check(e.context())?;
            Ok(e.as_block()?.clone())
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let sovm = Sovm::new(effects)?;
    let state = StatisticalOperator::new(load_block(state, params)?)?;
    let report = pair(&sovm, &state)?;
    let values = report.distribution.weights().iter().map(show_padic).collect();
    to_json(&PairReport { distribution: report.distribution, in_simplex: report.in_simplex, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CounterexampleKind {
    /// `p^-K` times a four-squares pattern: inner-product preserving, not unitary.
    FourSquares,
    /// The 2x2 unitary over `Q_2(sqrt 14)`.
    DyadicSqrt14,
}

pub fn counterexample(params: &Params, kind: CounterexampleKind, k: u32, operator_only: bool) -> Outcome {
    let (operator, four_squares) = match kind {
        CounterexampleKind::FourSquares => {
            let p = params.require_p()?;
            let mu = match params.mu {
                Some(mu) => mu,
                None => PadicContext::new(p, params.precision)?
                    .find_eta()?
                    .to_balanced_i128()
                    .expect("eta is a small integer") as i64,
            };
            let ctx = ExtensionContext::from_params(p, mu, params.precision)?;
            let (a, sol) = ip_preserving_non_unitary(&ctx, k, params.seed)?;
            (a, Some(sol))
        }
        CounterexampleKind::DyadicSqrt14 => {
            let u = dyadic_sqrt14_unitary(params.precision)?;
            params.check(u.context())?;
            (u, None)
        }
    };
    if operator_only {
        return to_json(&operator);
    }
    let op = MatrixOperator::Block(operator.clone());
    to_json(&CounterexampleReport {
        four_squares,
        unitary: op.is_unitary()?,
        ip_preserving: op.is_ip_preserving()?,
        norm: op.operator_norm()?,
        operator,
    })
}
