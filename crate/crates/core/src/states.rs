//! Probability distributions, statistical operators and SOVMs.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::hilbert::PVector;
use crate::operator::{BlockOperator, CanonicalDecomposition, Classification, SymmetricDecomposition};
use crate::padic::{PadicContext, PadicNumber};
use crate::quadratic::{ExtensionContext, QuadExt};

fn sum_of(ctx: PadicContext, xs: &[PadicNumber]) -> PadicNumber {
    xs.iter().fold(ctx.zero(), |acc, x| acc + *x)
}

/// Finitely many `Q_p`-valued weights summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PadicDistribution {
    ctx: PadicContext,
    weights: Vec<PadicNumber>,
}

impl PadicDistribution {
    pub fn new(weights: Vec<PadicNumber>) -> Result<Self> {
        let ctx = weights.first().ok_or(Error::EmptyList)?.context();
        if weights.iter().any(|w| w.context() != ctx) {
            return Err(Error::ContextMismatch);
        }
        if sum_of(ctx, &weights) != ctx.one() {
            return Err(Error::SumNotOne);
        }
        let d = PadicDistribution { ctx, weights };
        // |sum| <= max |w_j| forces this
        debug_assert!(d.sup_norm() >= AbsValue::one(ctx.p()));
        Ok(d)
    }

    pub fn from_i64(ctx: PadicContext, weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| ctx.from_i64(w)).collect())
    }

    /// `p^(m-1) (1 - p)` for `m < n`, with the last weight `p^(n-1)` taking
    /// the rest of the geometric tail.
    pub fn truncated_geometric(ctx: PadicContext, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyList);
        }
        let one_minus_p = ctx.one() - ctx.from_i64(ctx.p() as i64);
        let mut weights: Vec<_> = (0..n - 1).map(|m| ctx.p_power(m as i64) * one_minus_p).collect();
        let rest = ctx.one() - sum_of(ctx, &weights);
        weights.push(rest);
        Self::new(weights)
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    pub fn weights(&self) -> &[PadicNumber] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `max_j |pi_j|`.
    pub fn sup_norm(&self) -> AbsValue {
        self.weights.iter().map(PadicNumber::abs_p).max().unwrap_or_else(|| AbsValue::zero(self.ctx.p()))
    }

    /// Membership in the probability simplex: every weight in `Z_p`.
    pub fn is_in_simplex(&self) -> bool {
        self.weights.iter().all(PadicNumber::is_integral)
    }

    /// The joint distribution `{pi_j pi'_k}`, row-major in `(j, k)`.
    pub fn product(&self, other: &PadicDistribution) -> Result<PadicDistribution> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Self::new(self.weights.iter().flat_map(|a| other.weights.iter().map(move |b| *a * *b)).collect())
    }
}

#[derive(Serialize, Deserialize)]
struct DistributionJson {
    weights: Vec<PadicNumber>,
}

impl Serialize for PadicDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DistributionJson { weights: self.weights.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PadicDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DistributionJson::deserialize(deserializer)?;
        PadicDistribution::new(raw.weights).map_err(D::Error::custom)
    }
}

/// Values that can be combined linearly with `Q_p` coefficients.
pub trait QpLinear: Sized {
    fn scaled(&self, c: &PadicNumber) -> Self;
    fn plus(&self, other: &Self) -> Result<Self>;
}

impl QpLinear for PadicNumber {
    fn scaled(&self, c: &PadicNumber) -> Self {
        *self * *c
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        if self.context() != other.context() {
            return Err(Error::ContextMismatch);
        }
        Ok(*self + *other)
    }
}

impl QpLinear for QuadExt {
    fn scaled(&self, c: &PadicNumber) -> Self {
        self.scale(c)
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        if self.context() != other.context() {
            return Err(Error::ContextMismatch);
        }
        Ok(*self + *other)
    }
}

impl QpLinear for PVector {
    fn scaled(&self, c: &PadicNumber) -> Self {
        self.scale(&self.context().embed(*c))
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

impl QpLinear for BlockOperator {
    fn scaled(&self, c: &PadicNumber) -> Self {
        self.scale_base(c)
    }

    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

fn sums_to_one(coefficients: &[PadicNumber]) -> bool {
    match coefficients.first() {
        Some(c) => sum_of(c.context(), coefficients) == c.context().one(),
        None => false,
    }
}

/// `sum lambda_i = 1`.
pub fn is_affine_combination(coefficients: &[PadicNumber]) -> bool {
    sums_to_one(coefficients)
}

/// `sum lambda_i = 1` with every `lambda_i` in `Z_p`.
pub fn is_convex_combination(coefficients: &[PadicNumber]) -> bool {
    sums_to_one(coefficients) && coefficients.iter().all(PadicNumber::is_integral)
}

/// How many points a closure test under convex combinations has to mix:
/// pairs suffice for odd `p`, triples are needed for `p = 2`.
pub fn convexity_test_arity(p: u64) -> usize {
    if p == 2 {
        3
    } else {
        2
    }
}

/// `sum lambda_i x_i` for coefficients summing to 1.
pub fn combine<T: QpLinear + Clone>(points: &[T], coefficients: &[PadicNumber]) -> Result<T> {
    if points.len() != coefficients.len() {
        return Err(Error::DimensionMismatch { expected: points.len(), found: coefficients.len() });
    }
    if points.is_empty() {
        return Err(Error::EmptyList);
    }
    if !sums_to_one(coefficients) {
        return Err(Error::SumNotOne);
    }
    let mut acc = points[0].scaled(&coefficients[0]);
    for (x, c) in points.iter().zip(coefficients).skip(1) {
        acc = acc.plus(&x.scaled(c))?;
    }
    Ok(acc)
}

/// A self-adjoint block-finite operator of trace 1.
#[derive(Clone, Debug, PartialEq)]
pub struct StatisticalOperator {
    op: BlockOperator,
    classification: Classification,
}

impl StatisticalOperator {
    pub fn new(op: BlockOperator) -> Result<Self> {
        if let Some((row, col)) = op.self_adjoint_violation() {
            return Err(Error::NotSelfAdjoint { row, col });
        }
        if op.trace() != op.context().one() {
            return Err(Error::TraceNotOne);
        }
        let classification = crate::operator::classify_block(&op);
        debug_assert!(op.operator_norm() >= AbsValue::one(op.context().p()));
        Ok(StatisticalOperator { op, classification })
    }

    /// `sum_m w_m |phi_m><phi_m|`.
    pub fn diagonal(ctx: ExtensionContext, weights: &PadicDistribution) -> Result<Self> {
        if weights.context() != ctx.base() {
            return Err(Error::ContextMismatch);
        }
        let diag: Vec<_> = weights.weights().iter().map(|w| ctx.embed(*w)).collect();
        Self::new(BlockOperator::diagonal(ctx, &diag))
    }

    /// `<psi, psi>^-1 |psi><psi|` for a non-isotropic `psi`.
    pub fn projection(psi: &PVector) -> Result<Self> {
        match simple_statistical(psi, psi, &psi.context().one())? {
            SimpleOperator::Statistical(s) => Ok(s),
            SimpleOperator::ZeroTrace(_) => Err(Error::DegenerateNormalizer),
        }
    }

    pub fn op(&self) -> &BlockOperator {
        &self.op
    }

    pub fn into_op(self) -> BlockOperator {
        self.op
    }

    pub fn context(&self) -> &ExtensionContext {
        self.op.context()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn norm(&self) -> AbsValue {
        self.op.operator_norm()
    }

    /// A density operator is a statistical operator of norm 1.
    pub fn is_density(&self) -> bool {
        self.norm() == AbsValue::one(self.context().p())
    }

    /// The same test read off a canonical decomposition: all `|lambda_j| <= 1`
    /// with maximum 1.
    pub fn is_density_by_decomposition(&self) -> Result<bool> {
        let dec = CanonicalDecomposition::of(&self.op)?;
        Ok(dec.max_coefficient(self.context().p()) == AbsValue::one(self.context().p()))
    }

    /// `tr(A S)`.
    pub fn expectation(&self, a: &BlockOperator) -> Result<QuadExt> {
        Ok(a.compose(&self.op)?.trace())
    }

    /// Splits `S = S0 + S1` along a symmetric decomposition: `S0` collects the
    /// terms with `<e_j, f_j> = 0` and has trace 0, `S1` the rest.
    pub fn split_zero_trace(&self) -> Result<(ZeroTraceOperator, StatisticalOperator)> {
        let ctx = *self.context();
        let dec = SymmetricDecomposition::of(&self.op)?;
        let (mut s0, mut s1) = (BlockOperator::zero(ctx, self.dim()), BlockOperator::zero(ctx, self.dim()));
        for t in &dec.terms {
            let part = symmetric_term(t.sigma, &t.e, &t.f)?;
            if t.e.inner(&t.f)?.is_zero() {
                s0 = s0.add(&part)?;
            } else {
                s1 = s1.add(&part)?;
            }
        }
        Ok((ZeroTraceOperator::new(s0)?, StatisticalOperator::new(s1)?))
    }
}

/// `sigma |e><f| + conj(sigma) |f><e|`.
fn symmetric_term(sigma: QuadExt, e: &PVector, f: &PVector) -> Result<BlockOperator> {
    let ef = BlockOperator::rank_one(e, f)?.scale(&sigma);
    let fe = BlockOperator::rank_one(f, e)?.scale(&sigma.conj());
    ef.add(&fe)
}

impl Serialize for StatisticalOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.op.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StatisticalOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        StatisticalOperator::new(BlockOperator::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

/// A self-adjoint block-finite operator of trace 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTraceOperator(BlockOperator);

impl ZeroTraceOperator {
    pub fn new(op: BlockOperator) -> Result<Self> {
        if let Some((row, col)) = op.self_adjoint_violation() {
            return Err(Error::NotSelfAdjoint { row, col });
        }
        if !op.trace().is_zero() {
            return Err(Error::TraceNotZero);
        }
        Ok(ZeroTraceOperator(op))
    }

    pub fn op(&self) -> &BlockOperator {
        &self.0
    }

    pub fn norm(&self) -> AbsValue {
        self.0.operator_norm()
    }
}

/// The outcome of the simple-operator construction: trace 1 when
/// `<phi, psi> != 0`, trace 0 otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum SimpleOperator {
    Statistical(StatisticalOperator),
    ZeroTrace(ZeroTraceOperator),
}

impl SimpleOperator {
    pub fn op(&self) -> &BlockOperator {
        match self {
            SimpleOperator::Statistical(s) => s.op(),
            SimpleOperator::ZeroTrace(t) => t.op(),
        }
    }
}

/// `c^-1 (sigma |phi><psi| + conj(sigma) |psi><phi|)` where `c` is
/// `sigma + conj(sigma)` when `<phi, psi> = 0` and the trace of the bracket
/// otherwise.
pub fn simple_statistical(phi: &PVector, psi: &PVector, sigma: &QuadExt) -> Result<SimpleOperator> {
    if phi.is_zero() || psi.is_zero() || sigma.is_zero() {
        return Err(Error::ZeroInput);
    }
    if phi.context() != psi.context() || sigma.context() != phi.context() {
        return Err(Error::ContextMismatch);
    }
    let body = symmetric_term(*sigma, phi, psi)?;
    let orthogonal = phi.inner(psi)?.is_zero();
    let normalizer = if orthogonal { *sigma + sigma.conj() } else { body.trace() };
    if normalizer.is_zero() {
        return Err(Error::DegenerateNormalizer);
    }
    let op = body.scale(&normalizer.inv()?);
    if orthogonal {
        ZeroTraceOperator::new(op).map(SimpleOperator::ZeroTrace)
    } else {
        StatisticalOperator::new(op).map(SimpleOperator::Statistical)
    }
}

/// `S + T` for a self-adjoint `T` of trace 0.
pub fn zero_trace_perturb(s: &StatisticalOperator, t: &BlockOperator) -> Result<StatisticalOperator> {
    let t = ZeroTraceOperator::new(t.clone())?;
    StatisticalOperator::new(s.op().add(t.op())?)
}

/// Self-adjoint effects on `k` coordinates summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Sovm {
    ctx: ExtensionContext,
    dim: usize,
    effects: Vec<BlockOperator>,
    norm_bound: AbsValue,
}

impl Sovm {
    pub fn new(effects: Vec<BlockOperator>) -> Result<Self> {
        let first = effects.first().ok_or(Error::EmptyList)?;
        let (ctx, dim) = (*first.context(), first.dim());
        let mut total = BlockOperator::zero(ctx, dim);
        for a in &effects {
            if *a.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if a.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
            }
            if let Some((row, col)) = a.self_adjoint_violation() {
                return Err(Error::NotSelfAdjoint { row, col });
            }
            total = total.add(a)?;
        }
        if total != BlockOperator::identity(ctx, dim) {
            return Err(Error::SumNotIdentity);
        }
        let norm_bound = effects.iter().map(BlockOperator::operator_norm).max().expect("nonempty");
        Ok(Sovm { ctx, dim, effects, norm_bound })
    }

    /// `{|phi_m><phi_m|}` for `m = 1..=dim`.
    pub fn pvm(ctx: ExtensionContext, dim: usize) -> Result<Self> {
        Self::new((1..=dim).map(|m| BlockOperator::matrix_unit(ctx, dim, m, m)).collect())
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[BlockOperator] {
        &self.effects
    }

    /// `max_i ||A_i||`.
    pub fn norm_bound(&self) -> AbsValue {
        self.norm_bound
    }

    pub fn is_contractive(&self) -> bool {
        self.norm_bound <= AbsValue::one(self.ctx.p())
    }
}

impl Serialize for Sovm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.effects.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Sovm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Sovm::new(Vec::<BlockOperator>::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

/// The SOVM `{Id - S, A_1, A_2, ...}` with `A_j = sigma_j |e_j><f_j| +
/// conj(sigma_j) |f_j><e_j|` from a symmetric decomposition of `S`, and the
/// distribution `{0, pi_1, pi_2, ...}` with `pi_j = tr(A_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionSovm {
    pub sovm: Sovm,
    pub associated: PadicDistribution,
}

pub fn sovm_from_symmetric_decomposition(s: &StatisticalOperator) -> Result<DecompositionSovm> {
    let ctx = *s.context();
    let dec = SymmetricDecomposition::of(s.op())?;
    let mut effects = vec![BlockOperator::identity(ctx, s.dim()).sub(s.op())?];
    let mut weights = vec![ctx.base().zero()];
    for t in &dec.terms {
        let a = symmetric_term(t.sigma, &t.e, &t.f)?.padded(s.dim());
        weights.push(a.trace().to_base()?);
        effects.push(a);
    }
    Ok(DecompositionSovm { sovm: Sovm::new(effects)?, associated: PadicDistribution::new(weights)? })
}

/// The distribution `{tr(A_i S)}` induced by a state on a SOVM.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub distribution: PadicDistribution,
    pub in_simplex: bool,
}

/// `{tr(A_i S)}_i`. Each value lies in `Q_p` and they sum to `tr(S) = 1`.
pub fn pair(sovm: &Sovm, s: &StatisticalOperator) -> Result<PairingReport> {
    if s.context() != sovm.context() {
        return Err(Error::ContextMismatch);
    }
    if s.dim() > sovm.dim() {
        return Err(Error::DimensionMismatch { expected: sovm.dim(), found: s.dim() });
    }
    let values = sovm
        .effects()
        .iter()
        .map(|a| s.expectation(a)?.to_base())
        .collect::<Result<Vec<_>>>()?;
    let distribution = PadicDistribution::new(values)?;
    let in_simplex = distribution.is_in_simplex();
    Ok(PairingReport { distribution, in_simplex })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext() -> ExtensionContext {
        ExtensionContext::from_params(3, 5, 10).unwrap()
    }

    #[test]
    fn integer_distribution_outside_simplex_check() {
        let c = PadicContext::new(5, 8).unwrap();
        let d = PadicDistribution::from_i64(c, &[1, 2, -1, -1]).unwrap();
        assert!(d.is_in_simplex());
        assert_eq!(PadicDistribution::from_i64(c, &[1, 1]).unwrap_err(), Error::SumNotOne);
        assert_eq!(PadicDistribution::new(vec![]).unwrap_err(), Error::EmptyList);
    }

    #[test]
    fn inverse_p_weight_leaves_simplex() {
        let c = PadicContext::new(3, 8).unwrap();
        let inv = c.p_power(-1);
        let d = PadicDistribution::new(vec![inv, c.one() - inv]).unwrap();
        assert!(!d.is_in_simplex());
        assert_eq!(d.sup_norm(), AbsValue::from_valuation(3, -1));
    }

    #[test]
    fn geometric_truncation_sums_exactly() {
        let c = PadicContext::new(5, 10).unwrap();
        let d = PadicDistribution::truncated_geometric(c, 5).unwrap();
        assert!(d.is_in_simplex());
        assert_eq!(d.weights()[4], c.p_power(4));
        assert_eq!(d.weights()[1], c.from_i64(5 * (1 - 5)));
    }

    #[test]
    fn convexity_predicates() {
        let c5 = PadicContext::new(5, 8).unwrap();
        let fifth = c5.p_power(-1);
        let lam = [fifth, c5.one() - fifth];
        assert!(is_affine_combination(&lam));
        assert!(!is_convex_combination(&lam));
        let c3 = PadicContext::new(3, 8).unwrap();
        assert!(is_convex_combination(&[c3.from_i64(2), c3.from_i64(-1)]));
        let k = ext();
        let pts = [PVector::basis(k, 1), PVector::basis(k, 2)];
        let first = combine(&pts, &[k.base().one(), k.base().zero()]).unwrap();
        assert_eq!(first, pts[0]);
        assert_eq!(combine(&pts, &[k.base().one(), k.base().one()]).unwrap_err(), Error::SumNotOne);
    }

    #[test]
    fn projections_and_isotropic_vectors() {
        let k = ext();
        let psi = PVector::from_dense(k, &[k.one(), k.element(1, 1)]).unwrap();
        let s = StatisticalOperator::projection(&psi).unwrap();
        assert_eq!(s.op().compose(s.op()).unwrap(), *s.op());
        // N(2 + sqrt 5) + 1 = 0
        let iso = PVector::from_dense(k, &[k.element(2, 1), k.one()]).unwrap();
        match simple_statistical(&iso, &iso, &k.element(3, 1)).unwrap() {
            SimpleOperator::ZeroTrace(t) => assert_eq!(*t.op(), BlockOperator::rank_one(&iso, &iso).unwrap()),
            other => panic!("expected a zero-trace operator, got {other:?}"),
        }
    }

    #[test]
    fn simple_operator_ignores_real_rescaling() {
        let k = ext();
        let phi = PVector::from_dense(k, &[k.one(), k.element(0, 1), k.from_i64(3)]).unwrap();
        let psi = PVector::from_dense(k, &[k.from_i64(2), k.one(), k.zero()]).unwrap();
        let sigma = k.element(1, 2);
        let a = simple_statistical(&phi, &psi, &sigma).unwrap();
        let b = simple_statistical(&phi, &psi, &sigma.scale(&k.base().from_i64(7))).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.op().trace(), k.one());
    }

    #[test]
    fn degenerate_normalizer_surfaces() {
        let k = ext();
        let (e1, e2) = (PVector::basis(k, 1), PVector::basis(k, 2));
        assert_eq!(simple_statistical(&e1, &e2, &k.element(0, 1)).unwrap_err(), Error::DegenerateNormalizer);
    }

    #[test]
    fn perturbation_raises_norm() {
        let k = ext();
        let s = StatisticalOperator::projection(&PVector::basis(k, 1)).unwrap();
        assert!(s.is_density());
        let inv = k.embed(k.base().p_power(-1));
        let t = BlockOperator::from_fn(k, 2, |m, n| if m != n { inv } else { k.zero() });
        let st = zero_trace_perturb(&s, &t).unwrap();
        assert_eq!(st.norm(), AbsValue::from_valuation(3, -1));
        assert!(!st.is_density());
        assert!(!st.is_density_by_decomposition().unwrap());
        assert_eq!(zero_trace_perturb(&s, &BlockOperator::identity(k, 1)).unwrap_err(), Error::TraceNotZero);
        assert_eq!(zero_trace_perturb(&s, &BlockOperator::zero(k, 1)).unwrap(), s);
        let (s0, s1) = st.split_zero_trace().unwrap();
        assert_eq!(s0.op().add(s1.op()).unwrap(), *st.op());
    }

    #[test]
    fn pvm_pairing_reads_diagonal() {
        let k = ext();
        let w = PadicDistribution::truncated_geometric(k.base(), 4).unwrap();
        let s = StatisticalOperator::diagonal(k, &w).unwrap();
        assert!(s.is_density());
        let pvm = Sovm::pvm(k, 4).unwrap();
        assert!(pvm.is_contractive());
        let r = pair(&pvm, &s).unwrap();
        assert_eq!(r.distribution, w);
        assert!(r.in_simplex);
        let id = Sovm::new(vec![BlockOperator::identity(k, 4)]).unwrap();
        assert_eq!(pair(&id, &s).unwrap().distribution.weights(), &[k.base().one()]);
    }

    #[test]
    fn sovm_validation() {
        let k = ext();
        let e11 = BlockOperator::matrix_unit(k, 2, 1, 1);
        assert_eq!(Sovm::new(vec![e11.clone()]).unwrap_err(), Error::SumNotIdentity);
        let e11_3 = BlockOperator::matrix_unit(k, 3, 1, 1);
        assert_eq!(
            Sovm::new(vec![e11, e11_3]).unwrap_err(),
            Error::DimensionMismatch { expected: 2, found: 3 }
        );
    }

    #[test]
    fn decomposition_sovm_sums_to_one() {
        let k = ext();
        let s = BlockOperator::from_fn(k, 3, |m, n| match (m, n) {
            (1, 1) => k.from_i64(4),
            (2, 2) => k.from_i64(-3),
            (1, 2) => k.element(3, 3),
            (2, 1) => k.element(3, -3),
            (3, 3) => k.zero(),
            (1, 3) => k.element(0, 9),
            (3, 1) => k.element(0, -9),
            _ => k.zero(),
        });
        let s = StatisticalOperator::new(s).unwrap();
        let d = sovm_from_symmetric_decomposition(&s).unwrap();
        assert_eq!(d.associated.weights()[0], k.base().zero());
        let r = pair(&d.sovm, &s).unwrap();
        assert_eq!(r.distribution.len(), d.sovm.effects().len());
    }
}
