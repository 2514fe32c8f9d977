//! The field `Q_p(sqrt mu)` for a non-square `mu`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abs::AbsValue;
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicNumber, SquareClass};

/// A quadratic extension of `Q_p`, fixed by the adjoined non-square `mu`.
#[derive(Clone, Copy, Debug)]
pub struct ExtensionContext {
    base: PadicContext,
    mu: PadicNumber,
    class: SquareClass,
}

impl PartialEq for ExtensionContext {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.mu.same_representation(&other.mu)
    }
}

impl ExtensionContext {
    pub fn new(mu: PadicNumber) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::ZeroInput);
        }
        if mu.is_square()? {
            return Err(Error::MuIsSquare);
        }
        let class = mu.square_class()?;
        Ok(ExtensionContext { base: mu.context(), mu, class })
    }

    /// Shorthand for an integer `mu`.
    pub fn from_params(p: u64, mu: i64, precision: u32) -> Result<Self> {
        let base = PadicContext::new(p, precision)?;
        Self::new(base.from_i64(mu))
    }

    pub fn base(&self) -> PadicContext {
        self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn mu(&self) -> PadicNumber {
        self.mu
    }

    pub fn square_class(&self) -> SquareClass {
        self.class
    }

    /// For `p = 2`, the representative of `mu` among `2, 3, 5, 6, 7, 10, 14`.
    pub fn canonical_mu(&self) -> Option<u8> {
        match self.class {
            SquareClass::Dyadic(r) => Some(r),
            SquareClass::Odd { .. } => None,
        }
    }

    /// Whether the value group of the extension contains `p^(1/2)`.
    pub fn is_ramified(&self) -> bool {
        match self.class {
            SquareClass::Odd { odd_valuation, .. } => odd_valuation,
            SquareClass::Dyadic(r) => r != 5,
        }
    }

    /// Two extensions are isomorphic iff their `mu` share a square class.
    pub fn is_isomorphic(&self, other: &ExtensionContext) -> bool {
        self.p() == other.p() && self.class == other.class
    }

    pub fn zero(&self) -> QuadExt {
        QuadExt { ctx: *self, sc: self.base.zero(), ac: self.base.zero() }
    }

    pub fn one(&self) -> QuadExt {
        self.embed(self.base.one())
    }

    pub fn from_i64(&self, n: i64) -> QuadExt {
        self.embed(self.base.from_i64(n))
    }

    /// `x + y sqrt(mu)` for integers `x`, `y`.
    pub fn element(&self, x: i64, y: i64) -> QuadExt {
        QuadExt { ctx: *self, sc: self.base.from_i64(x), ac: self.base.from_i64(y) }
    }

    pub fn embed(&self, x: PadicNumber) -> QuadExt {
        assert_eq!(x.context(), self.base, "base-field element from a different context");
        QuadExt { ctx: *self, sc: x, ac: self.base.zero() }
    }

    pub fn from_parts(&self, sc: PadicNumber, ac: PadicNumber) -> Result<QuadExt> {
        if sc.context() != self.base || ac.context() != self.base {
            return Err(Error::ContextMismatch);
        }
        Ok(QuadExt { ctx: *self, sc, ac })
    }

    pub fn sqrt_mu(&self) -> QuadExt {
        QuadExt { ctx: *self, sc: self.base.zero(), ac: self.base.one() }
    }

    /// An element of absolute value `p^(-1/2)`; `None` when unramified.
    pub fn uniformizer(&self) -> Option<QuadExt> {
        if !self.is_ramified() {
            return None;
        }
        let v = self.mu.valuation().expect("mu is nonzero");
        let shift = self.base.p_power(-v.div_euclid(2));
        let w = self.sqrt_mu().scale(&shift);
        // odd v: |w| = p^(-1/2) already; even v (p = 2, unit part 3 mod 4): 1 + w
        let pi = if v.rem_euclid(2) == 1 { w } else { self.one() + w };
        debug_assert_eq!(pi.ext_abs().half_valuation(), Some(1));
        Some(pi)
    }

    /// A scalar with `|c| = p^(-h/2)`. Odd `h` requires a ramified extension.
    pub fn scalar_with_half_valuation(&self, h: i64) -> Option<QuadExt> {
        let whole = self.embed(self.base.p_power(h.div_euclid(2)));
        if h.rem_euclid(2) == 0 {
            Some(whole)
        } else {
            self.uniformizer().map(|pi| pi * whole)
        }
    }
}

impl fmt::Display for ExtensionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mu = self.mu.to_balanced_i128().map_or_else(|| self.mu.to_string(), |m| m.to_string());
        write!(f, "Q_{}(sqrt {})", self.p(), mu)
    }
}

/// An element `x + y sqrt(mu)`, with `x` the selfconjugate and `y` the
/// anticonjugate coordinate.
#[derive(Clone, Copy, Debug)]
pub struct QuadExt {
    ctx: ExtensionContext,
    sc: PadicNumber,
    ac: PadicNumber,
}

impl QuadExt {
    pub fn context(&self) -> &ExtensionContext {
        &self.ctx
    }

    pub fn sc(&self) -> PadicNumber {
        self.sc
    }

    pub fn ac(&self) -> PadicNumber {
        self.ac
    }

    pub fn is_zero(&self) -> bool {
        self.sc.is_zero() && self.ac.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.sc.is_exact_zero() && self.ac.is_exact_zero()
    }

    pub fn in_base_field(&self) -> bool {
        self.ac.is_zero()
    }

    pub fn to_base(&self) -> Result<PadicNumber> {
        if self.in_base_field() {
            Ok(self.sc)
        } else {
            Err(Error::NotInBaseField)
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { ctx: self.ctx, sc: self.sc, ac: -self.ac }
    }

    /// `z * conj(z) = x^2 - mu y^2`.
    pub fn norm(&self) -> PadicNumber {
        self.sc.square() - self.ctx.mu * self.ac.square()
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: &PadicNumber) -> QuadExt {
        QuadExt { ctx: self.ctx, sc: self.sc * *c, ac: self.ac * *c }
    }

    pub fn checked_add(&self, other: &Self) -> Result<QuadExt> {
        self.check(other)?;
        Ok(*self + *other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<QuadExt> {
        self.check(other)?;
        Ok(*self - *other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<QuadExt> {
        self.check(other)?;
        Ok(*self * *other)
    }

    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }

    pub fn div(&self, other: &Self) -> Result<QuadExt> {
        self.check(other)?;
        Ok(*self * other.inv()?)
    }

    /// The unique extension of `|.|_p`, `sqrt(|z conj(z)|_p)`.
    pub fn ext_abs(&self) -> AbsValue {
        let p = self.ctx.p();
        if self.is_zero() {
            return AbsValue::zero(p);
        }
        let norm = self.norm();
        match norm.valuation() {
            Some(h) => AbsValue::from_half_valuation(p, h),
            // Leading terms cancelled below the carried precision; fall back
            // to the bound from the coordinates.
            None => {
                let vx = self.sc.valuation().map(|v| 2 * v);
                let vy = self.ac.valuation().map(|v| 2 * v + self.ctx.mu.valuation().unwrap_or(0));
                let h = [vx, vy].into_iter().flatten().min().expect("nonzero element");
                AbsValue::from_half_valuation(p, h)
            }
        }
    }

    /// Equality of both coordinates at their common precision.
    pub fn eq_mod_precision(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.sc == other.sc && self.ac == other.ac
    }

    pub fn pow(&self, mut e: u32) -> QuadExt {
        let mut acc = self.ctx.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.eq_mod_precision(other)
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        assert!(self.ctx == rhs.ctx, "extension elements from different contexts");
        QuadExt { ctx: self.ctx, sc: self.sc + rhs.sc, ac: self.ac + rhs.ac }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self + (-rhs)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { ctx: self.ctx, sc: -self.sc, ac: -self.ac }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        assert!(self.ctx == rhs.ctx, "extension elements from different contexts");
        let (x1, y1, x2, y2) = (self.sc, self.ac, rhs.sc, rhs.ac);
        let sc = x1 * x2 + self.ctx.mu * y1 * y2;
        let ac = x1 * y2 + x2 * y1;
        QuadExt { ctx: self.ctx, sc, ac }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: &PadicNumber| x.to_balanced_i128().map_or_else(|| format!("({x})"), |n| n.to_string());
        let mu = show(&self.ctx.mu);
        match (self.sc.is_zero(), self.ac.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", show(&self.sc)),
            (true, false) => write!(f, "{}*sqrt({mu})", show(&self.ac)),
            (false, false) => write!(f, "{} + {}*sqrt({mu})", show(&self.sc), show(&self.ac)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    mu: PadicNumber,
    sc: PadicNumber,
    ac: PadicNumber,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QuadJson { mu: self.ctx.mu, sc: self.sc, ac: self.ac }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = QuadJson::deserialize(deserializer)?;
        let ctx = ExtensionContext::new(raw.mu).map_err(D::Error::custom)?;
        ctx.from_parts(raw.sc, raw.ac).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Branch;

    fn ext(p: u64, mu: i64) -> ExtensionContext {
        ExtensionContext::from_params(p, mu, 5).unwrap()
    }

    /// `sqrt(7) - sqrt(5)` in `Q_3(sqrt 5)`.
    fn z_35() -> QuadExt {
        let k = ext(3, 5);
        let r7 = k.base().from_i64(7).sqrt(Branch::Principal).unwrap();
        k.embed(r7) - k.sqrt_mu()
    }

    #[test]
    fn context_validation() {
        assert_eq!(ExtensionContext::from_params(2, 4, 5), Err(Error::MuIsSquare));
        assert_eq!(ExtensionContext::from_params(3, 7, 5), Err(Error::MuIsSquare));
        assert_eq!(ExtensionContext::from_params(3, 0, 5), Err(Error::ZeroInput));
        assert_eq!(ext(2, 30).canonical_mu(), Some(14));
        assert_eq!(ext(2, -1).canonical_mu(), Some(7));
    }

    #[test]
    fn conjugation() {
        let k = ext(3, 5);
        assert_eq!(k.sqrt_mu().conj(), -k.sqrt_mu());
        assert_eq!(k.from_i64(3).conj(), k.from_i64(3));
        let z = z_35();
        assert_eq!(z.conj(), z + k.sqrt_mu() + k.sqrt_mu());
        assert_eq!(z * z.conj(), k.from_i64(2));
    }

    #[test]
    fn ring_identities() {
        let k = ext(3, 5);
        assert_eq!(k.element(1, 1) * k.element(1, -1), k.from_i64(1 - 5));
        let k2 = ext(2, 2);
        assert_eq!(k2.element(1, 1) * k2.element(1, 1), k2.element(3, 2));
    }

    #[test]
    fn inverses() {
        let k = ext(3, 5);
        assert_eq!(k.one().inv().unwrap(), k.one());
        let mu_inv = k.mu().inv().unwrap();
        assert_eq!(k.sqrt_mu().inv().unwrap(), k.sqrt_mu().scale(&mu_inv));
        let z = z_35();
        let half = k.base().from_ratio(1, 2).unwrap();
        assert_eq!(z.inv().unwrap(), z.conj().scale(&half));
        assert_eq!(k.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn extended_absolute_value() {
        assert_eq!(z_35().ext_abs(), AbsValue::one(3));
        assert!(ext(3, 5).zero().ext_abs().is_zero());
        assert_eq!(ext(3, 3).sqrt_mu().ext_abs().to_string(), "3^(-1/2)");
    }

    #[test]
    fn ramification() {
        assert!(!ext(2, 5).is_ramified());
        assert!(ext(3, 3).is_ramified());
        assert!(!ext(3, 5).is_ramified());
        for mu in [2, 3, 6, 7, 10, 14] {
            assert!(ext(2, mu).is_ramified(), "mu = {mu}");
        }
    }

    #[test]
    fn uniformizers_have_half_valuation_one() {
        for (p, mu) in [(2, 2), (2, 3), (2, 7), (2, 6), (2, 14), (2, 12), (3, 3), (3, 6), (5, 250)] {
            let Ok(k) = ExtensionContext::from_params(p, mu, 8) else { continue };
            match k.uniformizer() {
                Some(pi) => assert_eq!(pi.ext_abs().half_valuation(), Some(1), "p={p} mu={mu}"),
                None => assert!(!k.is_ramified()),
            }
        }
        assert!(ext(2, 5).uniformizer().is_none());
    }

    #[test]
    fn isomorphism_by_square_class() {
        assert!(ext(3, 5).is_isomorphic(&ext(3, 2)));
        assert!(!ext(3, 5).is_isomorphic(&ext(3, 3)));
        assert!(ext(3, 3).is_isomorphic(&ext(3, 12)));
    }

    #[test]
    fn json_round_trip() {
        let z = z_35();
        let j = serde_json::to_value(z).unwrap();
        assert!(j.get("mu").is_some() && j.get("sc").is_some() && j.get("ac").is_some());
        let back: QuadExt = serde_json::from_value(j).unwrap();
        assert_eq!(back, z);
    }
}
