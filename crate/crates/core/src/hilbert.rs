//! Finitely supported vectors in the coordinate Hilbert space over `Q_p(sqrt mu)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::padic::{Branch, PadicNumber};
use crate::quadratic::{ExtensionContext, QuadExt};

/// A vector with finitely many nonzero coordinates, indexed from 1.
#[derive(Clone, Debug)]
pub struct PVector {
    ctx: ExtensionContext,
    entries: BTreeMap<usize, QuadExt>,
}

impl PVector {
    pub fn zero(ctx: ExtensionContext) -> Self {
        PVector { ctx, entries: BTreeMap::new() }
    }

    /// The standard basis vector `e_i`.
    pub fn basis(ctx: ExtensionContext, i: usize) -> Self {
        assert!(i >= 1, "coordinates are 1-based");
        let mut v = Self::zero(ctx);
        v.entries.insert(i, ctx.one());
        v
    }

    pub fn from_entries(ctx: ExtensionContext, entries: impl IntoIterator<Item = (usize, QuadExt)>) -> Result<Self> {
        let mut v = Self::zero(ctx);
        for (i, z) in entries {
            if i == 0 {
                return Err(Error::Malformed("coordinate index 0; indices start at 1".into()));
            }
            if *z.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            v.set(i, z);
        }
        Ok(v)
    }

    /// Coordinates `1..=values.len()` taken from a dense slice.
    pub fn from_dense(ctx: ExtensionContext, values: &[QuadExt]) -> Result<Self> {
        Self::from_entries(ctx, values.iter().enumerate().map(|(k, z)| (k + 1, *z)))
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn get(&self, i: usize) -> QuadExt {
        self.entries.get(&i).copied().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn set(&mut self, i: usize, z: QuadExt) {
        assert!(i >= 1, "coordinates are 1-based");
        if z.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, z);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &QuadExt)> {
        self.entries.iter().map(|(i, z)| (*i, z))
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn max_index(&self) -> usize {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinates `1..=dim` as a dense list.
    pub fn to_dense(&self, dim: usize) -> Vec<QuadExt> {
        (1..=dim).map(|i| self.get(i)).collect()
    }

    fn check(&self, other: &PVector) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &PVector) -> Result<PVector> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, z) in other.iter() {
            out.set(i, out.get(i) + *z);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PVector) -> Result<PVector> {
        self.add(&other.scale(&self.ctx.from_i64(-1)))
    }

    pub fn scale(&self, c: &QuadExt) -> PVector {
        let mut out = PVector::zero(self.ctx);
        for (i, z) in self.iter() {
            out.set(i, *c * *z);
        }
        out
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> PVector {
        let mut out = PVector::zero(self.ctx);
        for (i, z) in self.iter() {
            out.set(i, z.conj());
        }
        out
    }

    /// The canonical inner product, conjugate-linear in the first slot.
    pub fn inner(&self, other: &PVector) -> Result<QuadExt> {
        self.check(other)?;
        let mut acc = self.ctx.zero();
        for (i, u) in self.iter() {
            if let Some(v) = other.entries.get(&i) {
                acc = acc + u.conj() * *v;
            }
        }
        Ok(acc)
    }

    pub fn sup_norm(&self) -> AbsValue {
        self.entries
            .values()
            .map(QuadExt::ext_abs)
            .max()
            .unwrap_or_else(|| AbsValue::zero(self.ctx.p()))
    }

    /// A scalar multiple of norm 1; `None` for the zero vector.
    pub fn normalized(&self) -> Option<PVector> {
        let h = self.sup_norm().half_valuation()?;
        let c = self
            .ctx
            .scalar_with_half_valuation(-h)
            .expect("vector norms lie in the value group of the field");
        Some(self.scale(&c))
    }

    /// Coordinatewise equality at precision.
    pub fn eq_mod_precision(&self, other: &PVector) -> bool {
        self.ctx == other.ctx
            && self.entries.keys().chain(other.entries.keys()).all(|&i| self.get(i) == other.get(i))
    }
}

impl PartialEq for PVector {
    fn eq(&self, other: &Self) -> bool {
        self.eq_mod_precision(other)
    }
}

impl fmt::Display for PVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.iter().map(|(i, z)| format!("({z})e{i}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    mu: PadicNumber,
    entries: BTreeMap<usize, QuadExt>,
}

impl Serialize for PVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson { mu: self.ctx.mu(), entries: self.entries.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = VectorJson::deserialize(deserializer)?;
        let ctx = ExtensionContext::new(raw.mu).map_err(D::Error::custom)?;
        PVector::from_entries(ctx, raw.entries).map_err(D::Error::custom)
    }
}

fn common_context(vs: &[PVector]) -> Result<ExtensionContext> {
    let first = vs.first().ok_or(Error::EmptyList)?;
    if vs.iter().any(|v| v.ctx != first.ctx) {
        return Err(Error::ContextMismatch);
    }
    Ok(first.ctx)
}

/// Decides whether `||sum a_i x_i|| = max |a_i| ||x_i||` for all scalars.
///
/// Each vector is scaled to norm 1; the family is then norm-orthogonal iff
/// the reduced coordinate rows are independent over the residue field. The
/// rank is read off a Gaussian elimination that always pivots on an entry of
/// maximal absolute value: the family passes iff every pivot is a unit.
pub fn is_norm_orthogonal(vs: &[PVector]) -> Result<bool> {
    let ctx = common_context(vs)?;
    let mut rows = Vec::with_capacity(vs.len());
    for v in vs {
        match v.normalized() {
            Some(n) => rows.push(n),
            None => return Ok(false),
        }
    }
    let one = AbsValue::one(ctx.p());
    let mut remaining: Vec<PVector> = rows;
    while !remaining.is_empty() {
        let mut best: Option<(usize, usize, AbsValue)> = None;
        for (r, row) in remaining.iter().enumerate() {
            for (c, z) in row.iter() {
                let a = z.ext_abs();
                if best.is_none_or(|(_, _, b)| a > b) {
                    best = Some((r, c, a));
                }
            }
        }
        let Some((r, c, a)) = best else { return Ok(false) };
        if a < one {
            return Ok(false);
        }
        let pivot_row = remaining.swap_remove(r);
        let pivot = pivot_row.get(c);
        for row in remaining.iter_mut() {
            let x = row.get(c);
            if x.is_zero() {
                continue;
            }
            let factor = x.div(&pivot)?;
            *row = row.sub(&pivot_row.scale(&factor))?;
        }
    }
    Ok(true)
}

/// Norm-orthogonal, every vector of norm 1, and `<v_i, v_j> = delta_ij`.
pub fn is_orthonormal_system(vs: &[PVector]) -> Result<bool> {
    if !is_norm_orthogonal(vs)? {
        return Ok(false);
    }
    let ctx = common_context(vs)?;
    let one = AbsValue::one(ctx.p());
    if vs.iter().any(|v| v.sup_norm() != one) {
        return Ok(false);
    }
    for (i, u) in vs.iter().enumerate() {
        for (j, v) in vs.iter().enumerate().skip(i) {
            let g = u.inner(v)?;
            let expected = if i == j { ctx.one() } else { ctx.zero() };
            if g != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A unitary built from disjoint coordinate pairs `(i, j)`: on each pair it
/// sends `e_i` to `z^-1 (e_i + e_j)` and `e_j` to `z^-1 (e_i - e_j)`, where
/// `z conj(z) = 2`. All other coordinates are fixed.
#[derive(Clone, Debug)]
pub struct BasisRotation {
    ctx: ExtensionContext,
    pairs: Vec<(usize, usize, QuadExt)>,
}

impl BasisRotation {
    pub fn new(ctx: ExtensionContext, pairs: Vec<(usize, usize, QuadExt)>) -> Result<Self> {
        if ctx.p() == 2 {
            return Err(Error::RequiresOddP);
        }
        let two = ctx.from_i64(2);
        let one = AbsValue::one(ctx.p());
        let mut used = std::collections::BTreeSet::new();
        for &(i, j, z) in &pairs {
            if i == 0 || j == 0 || i == j {
                return Err(Error::InvalidRotation(format!("bad index pair ({i}, {j})")));
            }
            if !used.insert(i) || !used.insert(j) {
                return Err(Error::InvalidRotation(format!("pair ({i}, {j}) overlaps another pair")));
            }
            if *z.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            if z * z.conj() != two || z.ext_abs() != one {
                return Err(Error::InvalidRotation(format!("scalar {z} does not satisfy z conj(z) = 2")));
            }
        }
        Ok(BasisRotation { ctx, pairs })
    }

    /// Pairs `(1,2), (3,4), ...` up to `dim`, all using the same `z`.
    pub fn consecutive(ctx: ExtensionContext, dim: usize, z: QuadExt) -> Result<Self> {
        let pairs = (1..dim).step_by(2).map(|i| (i, i + 1, z)).collect();
        Self::new(ctx, pairs)
    }

    pub fn identity(ctx: ExtensionContext) -> Result<Self> {
        Self::new(ctx, Vec::new())
    }

    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn pairs(&self) -> &[(usize, usize, QuadExt)] {
        &self.pairs
    }

    pub fn apply(&self, v: &PVector) -> Result<PVector> {
        if *v.context() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = v.clone();
        for &(i, j, z) in &self.pairs {
            let zi = z.inv()?;
            let (a, b) = (v.get(i), v.get(j));
            out.set(i, zi * (a + b));
            out.set(j, zi * (a - b));
        }
        Ok(out)
    }

    /// The inverse rotation, which uses `conj(z)` in place of `z`.
    pub fn inverse(&self) -> BasisRotation {
        let pairs = self.pairs.iter().map(|&(i, j, z)| (i, j, z.conj())).collect();
        BasisRotation { ctx: self.ctx, pairs }
    }

    /// Image of `e_k`.
    pub fn image_of_basis(&self, k: usize) -> PVector {
        self.apply(&PVector::basis(self.ctx, k)).expect("same context")
    }
}

/// Some `z = x + y sqrt(mu)` with `z conj(z) = 2`, found by trying small
/// integers `y` until `2 + mu y^2` is a square. `None` for `p = 2` or when 2
/// is not a norm from the extension.
pub fn norm_two_scalar(ctx: &ExtensionContext) -> Option<QuadExt> {
    if ctx.p() == 2 {
        return None;
    }
    let base = ctx.base();
    (0..=64).find_map(|y| {
        let y = base.from_i64(y);
        let x = (base.from_i64(2) + ctx.mu() * y * y).sqrt(Branch::Principal).ok()?;
        let z = ctx.from_parts(x, y).ok()?;
        (z * z.conj() == ctx.from_i64(2)).then_some(z)
    })
}

/// The minimal support size `nu` of a nonzero isotropic vector (2 or 3), from
/// the Hilbert symbol `(-1, mu)_p`: `nu = 2` exactly when `-1` is a norm from
/// the extension.
pub fn isotropy_index_by_symbol(ctx: &ExtensionContext) -> u8 {
    let mu = ctx.mu();
    let beta = mu.valuation().expect("mu is nonzero");
    let minus_one_is_norm = if ctx.p() == 2 {
        mu.unit().expect("mu is nonzero") % 4 == 1
    } else {
        beta.rem_euclid(2) == 0 || ctx.p() % 4 == 1
    };
    if minus_one_is_norm {
        2
    } else {
        3
    }
}

pub const DEFAULT_ISOTROPY_BOUND: i64 = 12;

/// A nonzero isotropic vector with support at most `max_support`, or `None`
/// when no such vector exists.
pub fn find_isotropic(ctx: &ExtensionContext, max_support: usize) -> Option<PVector> {
    find_isotropic_with_bound(ctx, max_support, DEFAULT_ISOTROPY_BOUND).ok().flatten()
}

/// As [`find_isotropic`], searching integer coefficients in `[-bound, bound]`.
pub fn find_isotropic_with_bound(ctx: &ExtensionContext, max_support: usize, bound: i64) -> Result<Option<PVector>> {
    let nu = isotropy_index_by_symbol(ctx) as usize;
    if max_support < nu {
        return Ok(None);
    }
    if let Some(v) = known_isotropic(ctx, nu) {
        return Ok(Some(v));
    }
    search_isotropic(ctx, nu, bound).map(Some).ok_or(Error::SearchBoundExceeded)
}

/// `nu` together with a verified witness.
pub fn isotropy_index(ctx: &ExtensionContext, bound: i64) -> Result<(u8, PVector)> {
    let nu = isotropy_index_by_symbol(ctx);
    let v = find_isotropic_with_bound(ctx, nu as usize, bound)?.ok_or(Error::SearchBoundExceeded)?;
    debug_assert!(v.inner(&v).map(|g| g.is_zero()).unwrap_or(false));
    Ok((nu, v))
}

/// Closed-form witnesses: `e1 + sqrt(-1) e2` when `p = 1 mod 4`, and fixed
/// vectors for `Q_2(sqrt 2)`, `Q_2(sqrt 3)`, `Q_2(sqrt 5)`.
fn known_isotropic(ctx: &ExtensionContext, nu: usize) -> Option<PVector> {
    let p = ctx.p();
    let build = |coords: Vec<QuadExt>| PVector::from_dense(*ctx, &coords).ok();
    if p % 4 == 1 && nu == 2 {
        let i = ctx.base().from_i64(-1).sqrt(Branch::Principal).ok()?;
        return build(vec![ctx.one(), ctx.embed(i)]);
    }
    if p == 2 {
        let mu = ctx.mu().to_balanced_i128()?;
        let one_plus = ctx.element(1, 1);
        return match mu {
            2 => build(vec![one_plus, ctx.one()]),
            3 => build(vec![one_plus, ctx.one(), ctx.one()]),
            5 => build(vec![one_plus, ctx.from_i64(2)]),
            _ => None,
        };
    }
    None
}

/// Searches `z1 e1 + z2 e2 (+ e3)` with `z2 = c + d w`, `z1 = x + y w`,
/// where `w = sqrt(mu) p^-floor(v(mu)/2)`, solving for `x` by a square root.
/// Small coefficients are tried first, and a first pass only accepts `x`
/// that is itself a small integer.
fn search_isotropic(ctx: &ExtensionContext, support: usize, bound: i64) -> Option<PVector> {
    let base = ctx.base();
    let shift = base.p_power(-ctx.mu().valuation()?.div_euclid(2));
    let w = ctx.sqrt_mu().scale(&shift);
    let minus_norm_w = -w.norm();
    let tail = if support == 3 { base.one() } else { base.zero() };
    let order: Vec<i64> = std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k])).collect();
    let small = |x: &PadicNumber| x.to_balanced_i128().is_some_and(|n| n.abs() <= (bound * bound) as i128);
    for strict in [true, false] {
        for &c in &order {
            for &d in &order {
                if c == 0 && d == 0 {
                    continue;
                }
                let z2 = ctx.from_i64(c) + w.scale(&base.from_i64(d));
                let rest = z2.norm() + tail;
                for &y in &order {
                    let target = minus_norm_w * base.from_i64(y * y) - rest;
                    let x = if target.is_zero() {
                        if y == 0 {
                            continue;
                        }
                        base.zero()
                    } else {
                        match target.sqrt(Branch::Principal) {
                            Ok(x) if !strict || small(&x) => x,
                            Ok(x) if small(&-x) => -x,
                            _ => continue,
                        }
                    };
                    let z1 = ctx.embed(x) + w.scale(&base.from_i64(y));
                    let mut coords = vec![z1, z2];
                    if support == 3 {
                        coords.push(ctx.one());
                    }
                    let v = PVector::from_dense(*ctx, &coords).ok()?;
                    if v.support_size() == support && v.inner(&v).ok()?.is_zero() {
                        return Some(v);
                    }
                }
            }
        }
    }
    None
}
