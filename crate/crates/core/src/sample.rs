//! Seeded random instances for tests and benchmarks.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::hilbert::{norm_two_scalar, BasisRotation, PVector};
use crate::operator::{BlockOperator, DecayCertificate, DecaySupport, GeneratorOperator};
use crate::padic::PadicNumber;
use crate::quadratic::{ExtensionContext, QuadExt};
use crate::states::{Sovm, StatisticalOperator};

/// A seeded source of field elements, vectors and operators over one
/// extension. Valuation ranges are inclusive.
pub struct Sampler {
    rng: StdRng,
    ctx: ExtensionContext,
}

impl Sampler {
    pub fn new(ctx: ExtensionContext, seed: u64) -> Self {
        Sampler { rng: StdRng::seed_from_u64(seed), ctx }
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    /// A nonzero `p^v u` with `v` in `[vmin, vmax]` and all `N` unit digits
    /// random.
    pub fn padic(&mut self, vmin: i64, vmax: i64) -> PadicNumber {
        let base = self.ctx.base();
        let p = base.p();
        let v = self.rng.gen_range(vmin..=vmax);
        let mut digits: Vec<u64> = (0..base.precision()).map(|_| self.rng.gen_range(0..p)).collect();
        digits[0] = self.rng.gen_range(1..p);
        PadicNumber::from_digits(base, v, &digits).expect("digits are in range")
    }

    /// Zero with probability `zero_chance`, otherwise [`Sampler::padic`].
    pub fn padic_or_zero(&mut self, vmin: i64, vmax: i64, zero_chance: f64) -> PadicNumber {
        if self.rng.gen_bool(zero_chance) {
            self.ctx.base().zero()
        } else {
            self.padic(vmin, vmax)
        }
    }

    /// An element whose two coordinates are independently zero or random.
    pub fn scalar(&mut self, vmin: i64, vmax: i64) -> QuadExt {
        let sc = self.padic_or_zero(vmin, vmax, 0.25);
        let ac = self.padic_or_zero(vmin, vmax, 0.4);
        self.ctx.from_parts(sc, ac).expect("same context")
    }

    pub fn nonzero_scalar(&mut self, vmin: i64, vmax: i64) -> QuadExt {
        loop {
            let z = self.scalar(vmin, vmax);
            if !z.is_zero() {
                return z;
            }
        }
    }

    pub fn base_scalar(&mut self, vmin: i64, vmax: i64) -> QuadExt {
        let x = self.padic_or_zero(vmin, vmax, 0.25);
        self.ctx.embed(x)
    }

    /// A vector supported in `1..=dim` with some coordinates left at zero.
    pub fn vector(&mut self, dim: usize, vmin: i64, vmax: i64) -> PVector {
        let coords: Vec<_> = (0..dim)
            .map(|_| if self.rng.gen_bool(0.2) { self.ctx.zero() } else { self.scalar(vmin, vmax) })
            .collect();
        PVector::from_dense(self.ctx, &coords).expect("same context")
    }

    pub fn nonzero_vector(&mut self, dim: usize, vmin: i64, vmax: i64) -> PVector {
        loop {
            let v = self.vector(dim.max(1), vmin, vmax);
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn block(&mut self, dim: usize, vmin: i64, vmax: i64) -> BlockOperator {
        let ctx = self.ctx;
        let cells: Vec<_> = (0..dim * dim)
            .map(|_| if self.rng.gen_bool(0.2) { ctx.zero() } else { self.scalar(vmin, vmax) })
            .collect();
        BlockOperator::from_fn(ctx, dim, |m, n| cells[(m - 1) * dim + (n - 1)])
    }

    /// Base-field diagonal and conjugate-symmetric off-diagonal entries.
    pub fn self_adjoint(&mut self, dim: usize, vmin: i64, vmax: i64) -> BlockOperator {
        let upper = self.block(dim, vmin, vmax);
        let diag: Vec<_> = (0..dim).map(|_| self.base_scalar(vmin, vmax)).collect();
        BlockOperator::from_fn(self.ctx, dim, |m, n| match m.cmp(&n) {
            std::cmp::Ordering::Less => upper.entry(m, n),
            std::cmp::Ordering::Equal => diag[m - 1],
            std::cmp::Ordering::Greater => upper.entry(n, m).conj(),
        })
    }

    /// A self-adjoint operator whose first diagonal entry is set to make
    /// the trace equal to `target`.
    fn self_adjoint_with_trace(&mut self, dim: usize, vmin: i64, vmax: i64, target: QuadExt) -> BlockOperator {
        let a = self.self_adjoint(dim.max(1), vmin, vmax);
        let rest = (2..=a.dim()).fold(self.ctx.zero(), |acc, m| acc + a.entry(m, m));
        let first = target - rest;
        BlockOperator::from_fn(self.ctx, a.dim(), |m, n| if (m, n) == (1, 1) { first } else { a.entry(m, n) })
    }

    pub fn zero_trace(&mut self, dim: usize, vmin: i64, vmax: i64) -> BlockOperator {
        let zero = self.ctx.zero();
        self.self_adjoint_with_trace(dim, vmin, vmax, zero)
    }

    /// A statistical operator; its norm is at least 1 and can be large when
    /// `vmin < 0`.
    pub fn statistical(&mut self, dim: usize, vmin: i64, vmax: i64) -> StatisticalOperator {
        let one = self.ctx.one();
        let op = self.self_adjoint_with_trace(dim, vmin, vmax, one);
        StatisticalOperator::new(op).expect("trace and symmetry hold by construction")
    }

    /// A statistical operator with integral entries, hence of norm 1.
    pub fn density(&mut self, dim: usize) -> StatisticalOperator {
        let s = self.statistical(dim, 0, 3);
        debug_assert!(s.is_density());
        s
    }

    /// `effects` self-adjoint operators on `dim` coordinates, the first
    /// chosen so that the family sums to the identity. Contractive when
    /// `vmin >= 0`.
    pub fn sovm(&mut self, dim: usize, effects: usize, vmin: i64, vmax: i64) -> Sovm {
        let ctx = self.ctx;
        let rest: Vec<_> = (1..effects.max(1)).map(|_| self.self_adjoint(dim, vmin, vmax)).collect();
        let mut first = BlockOperator::identity(ctx, dim);
        for a in &rest {
            first = first.sub(a).expect("same context");
        }
        let mut all = vec![first];
        all.extend(rest);
        Sovm::new(all).expect("sums to the identity by construction")
    }

    /// A unitary: a permutation times a diagonal of `z / conj(z)` phases,
    /// followed by a rotation on random disjoint pairs when one exists.
    pub fn unitary(&mut self, dim: usize) -> BlockOperator {
        let ctx = self.ctx;
        let mut perm: Vec<usize> = (1..=dim).collect();
        perm.shuffle(&mut self.rng);
        let phases: Vec<_> = (0..dim)
            .map(|_| {
                let z = self.nonzero_scalar(-2, 2);
                z.div(&z.conj()).expect("nonzero")
            })
            .collect();
        let mut u = BlockOperator::from_fn(ctx, dim, |m, n| if perm[n - 1] == m { phases[n - 1] } else { ctx.zero() });
        if let Some(z) = norm_two_scalar(&ctx) {
            let mut idx: Vec<usize> = (1..=dim).collect();
            idx.shuffle(&mut self.rng);
            let pairs = idx.chunks_exact(2).filter(|_| self.rng.gen_bool(0.7)).map(|c| (c[0], c[1], z)).collect();
            let r = BasisRotation::new(ctx, pairs).expect("disjoint pairs with a valid scalar");
            u = r.to_block(dim).expect("pairs lie inside the block").compose(&u).expect("same context");
        }
        u
    }

    /// A monomial generator `c p^beta(m, n)` with a random certificate.
    pub fn generator(&mut self) -> GeneratorOperator {
        let support = match self.rng.gen_range(0..3) {
            0 => DecaySupport::Full,
            1 => DecaySupport::Diagonal,
            _ => DecaySupport::Band(self.rng.gen_range(0..3)),
        };
        let cert = DecayCertificate::new(
            self.rng.gen_range(-1..=2),
            self.rng.gen_range(-1..=2),
            self.rng.gen_range(-2..=2),
            support,
        );
        let window = self.rng.gen_range(2..=6);
        let coefficient = if self.rng.gen_bool(0.5) { self.ctx.one() } else { self.nonzero_scalar(0, 2) };
        GeneratorOperator::monomial(self.ctx, window, cert, coefficient).expect("monomials satisfy their certificate")
    }
}
