//! Fixed-precision arithmetic in `Q_p`.
//!
//! A nonzero [`PadicNumber`] is stored as `p^k * u` where `u` is a unit known
//! modulo `p^r`. The relative precision `r` starts at the context precision `N`
//! and only shrinks when additive cancellation eats leading digits, so every
//! digit a value reports is a digit of the exact result. Equality is decided
//! at the common precision of both operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abs::AbsValue;
use crate::arith;
use crate::error::{Error, Result};

/// The prime `p` and the number `N` of base-`p` digits carried on unit parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicContext {
    p: u64,
    precision: u32,
}

impl PadicContext {
    pub const MIN_PRECISION: u32 = 5;

    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision < Self::MIN_PRECISION {
            return Err(Error::PrecisionTooSmall(precision));
        }
        match p.checked_pow(precision) {
            Some(m) if m < (1 << 63) => Ok(PadicContext { p, precision }),
            _ => Err(Error::PrecisionTooLarge { p, precision }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    #[inline]
    pub(crate) fn pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber { ctx: *self, repr: Repr::Zero { abs_prec: None } }
    }

    pub fn one(&self) -> PadicNumber {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> PadicNumber {
        PadicNumber::from_i128(*self, n as i128)
    }

    /// `num / den` as a p-adic number.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<PadicNumber> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// `p^k`.
    pub fn p_power(&self, k: i64) -> PadicNumber {
        PadicNumber::unit_times_power(*self, k, 1, self.precision)
    }

    /// The least positive quadratic non-residue modulo `p`, the canonical `eta`.
    pub fn find_eta(&self) -> Result<PadicNumber> {
        if self.p == 2 {
            return Err(Error::UnsupportedForP2);
        }
        Ok(self.from_i64(arith::least_nonresidue(self.p) as i64))
    }
}

#[derive(Clone, Copy, Debug)]
enum Repr {
    /// Exact zero when `abs_prec` is `None`; otherwise a value known only to
    /// vanish modulo `p^abs_prec`.
    Zero { abs_prec: Option<i64> },
    Nonzero { valuation: i64, unit: u64, prec: u32 },
}

/// An element of `Q_p` at tracked finite precision.
///
/// The arithmetic operators panic when the operands come from different
/// contexts; the `checked_*` methods report [`Error::ContextMismatch`] instead.
#[derive(Clone, Copy, Debug)]
pub struct PadicNumber {
    ctx: PadicContext,
    repr: Repr,
}

/// Selects one of the two square roots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Odd `p`: first digit in `[1, (p-1)/2]`. `p = 2`: unit part `= 1 mod 4`.
    #[default]
    Principal,
    /// The negative of the principal root.
    Other,
}

impl PadicNumber {
    fn from_i128(ctx: PadicContext, n: i128) -> Self {
        if n == 0 {
            return ctx.zero();
        }
        let (v, u) = arith::split_valuation(n, ctx.p);
        let m = ctx.pow(ctx.precision) as i128;
        let unit = u.rem_euclid(m) as u64;
        PadicNumber { ctx, repr: Repr::Nonzero { valuation: v, unit, prec: ctx.precision } }
    }

    /// `p^k * unit` with `unit` coprime to `p`, known to `prec` digits.
    fn unit_times_power(ctx: PadicContext, k: i64, unit: u64, prec: u32) -> Self {
        debug_assert!(prec >= 1 && prec <= ctx.precision);
        debug_assert!(!unit.is_multiple_of(ctx.p));
        let unit = unit % ctx.pow(prec);
        PadicNumber { ctx, repr: Repr::Nonzero { valuation: k, unit, prec } }
    }

    /// Builds `p^valuation * (d_0 + d_1 p + ...)` from little-endian digits.
    /// At most `N` digits are kept; `d_0` must be nonzero.
    pub fn from_digits(ctx: PadicContext, valuation: i64, digits: &[u64]) -> Result<Self> {
        let digits = &digits[..digits.len().min(ctx.precision as usize)];
        match digits.first() {
            None => return Err(Error::Malformed("empty digit list".into())),
            Some(0) => return Err(Error::Malformed("leading digit must be nonzero".into())),
            Some(_) => {}
        }
        let mut unit = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            if d >= ctx.p {
                return Err(Error::Malformed(format!("digit {d} out of range for p = {}", ctx.p)));
            }
            unit += d * ctx.pow(i as u32);
        }
        Ok(Self::unit_times_power(ctx, valuation, unit, digits.len() as u32))
    }

    pub fn context(&self) -> PadicContext {
        self.ctx
    }

    /// True for exact zeros and for values that vanish at their precision.
    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs_prec: None })
    }

    /// The valuation `k`; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Nonzero { valuation, .. } => Some(valuation),
            Repr::Zero { .. } => None,
        }
    }

    /// The unit part reduced modulo `p^r`.
    pub fn unit(&self) -> Option<u64> {
        match self.repr {
            Repr::Nonzero { unit, .. } => Some(unit),
            Repr::Zero { .. } => None,
        }
    }

    /// Number of known significant digits `r`.
    pub fn relative_precision(&self) -> Option<u32> {
        match self.repr {
            Repr::Nonzero { prec, .. } => Some(prec),
            Repr::Zero { .. } => None,
        }
    }

    /// The exponent `A` such that the value is known modulo `p^A`.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Nonzero { valuation, prec, .. } => Some(valuation + prec as i64),
            Repr::Zero { abs_prec } => abs_prec,
        }
    }

    /// Little-endian digits of the unit part; empty for zero.
    pub fn digits(&self) -> Vec<u64> {
        match self.repr {
            Repr::Zero { .. } => Vec::new(),
            Repr::Nonzero { mut unit, prec, .. } => (0..prec)
                .map(|_| {
                    let d = unit % self.ctx.p;
                    unit /= self.ctx.p;
                    d
                })
                .collect(),
        }
    }

    /// `|x|_p = p^(-k)`, zero for zero.
    pub fn abs_p(&self) -> AbsValue {
        match self.repr {
            Repr::Nonzero { valuation, .. } => AbsValue::from_valuation(self.ctx.p, valuation),
            Repr::Zero { .. } => AbsValue::zero(self.ctx.p),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Drops digits below `p^abs`.
    fn truncate_absolute(&self, abs: i64) -> Self {
        match self.repr {
            Repr::Zero { abs_prec } => {
                let a = abs_prec.map_or(abs, |a| a.min(abs));
                PadicNumber { ctx: self.ctx, repr: Repr::Zero { abs_prec: Some(a) } }
            }
            Repr::Nonzero { valuation, unit, prec } => {
                if valuation >= abs {
                    PadicNumber { ctx: self.ctx, repr: Repr::Zero { abs_prec: Some(abs) } }
                } else {
                    let r = prec.min((abs - valuation) as u32);
                    Self::unit_times_power(self.ctx, valuation, unit, r)
                }
            }
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "p-adic operands from different contexts");
        let (va, ua, pa, vb, ub, pb) = match (self.repr, other.repr) {
            (Repr::Zero { abs_prec: None }, _) => return *other,
            (_, Repr::Zero { abs_prec: None }) => return *self,
            (Repr::Zero { abs_prec: Some(a) }, _) => return other.truncate_absolute(a),
            (_, Repr::Zero { abs_prec: Some(b) }) => return self.truncate_absolute(b),
            (
                Repr::Nonzero { valuation: va, unit: ua, prec: pa },
                Repr::Nonzero { valuation: vb, unit: ub, prec: pb },
            ) => (va, ua, pa, vb, ub, pb),
        };
        let abs = (va + pa as i64).min(vb + pb as i64);
        let base = va.min(vb);
        let width = (abs - base) as u32;
        let modulus = self.ctx.pow(width);
        let shifted = |v: i64, u: u64| -> u64 {
            let s = (v - base) as u32;
            if s >= width {
                0
            } else {
                (u % self.ctx.pow(width - s)) * self.ctx.pow(s)
            }
        };
        let mut sum = arith::add_mod(shifted(va, ua), shifted(vb, ub), modulus);
        if sum == 0 {
            return PadicNumber { ctx: self.ctx, repr: Repr::Zero { abs_prec: Some(abs) } };
        }
        let mut t = 0u32;
        while sum.is_multiple_of(self.ctx.p) {
            sum /= self.ctx.p;
            t += 1;
        }
        Self::unit_times_power(self.ctx, base + t as i64, sum, width - t)
    }

    /// Addition that reports [`Error::PrecisionExhausted`] when two nonzero
    /// operands cancel in every carried digit.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let sum = self.add_impl(other);
        if sum.is_zero() && !sum.is_exact_zero() && !self.is_zero() && !other.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        Ok(sum)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_impl())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_impl(other))
    }

    fn neg_impl(&self) -> Self {
        match self.repr {
            Repr::Zero { .. } => *self,
            Repr::Nonzero { valuation, unit, prec } => {
                let m = self.ctx.pow(prec);
                Self::unit_times_power(self.ctx, valuation, m - unit, prec)
            }
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "p-adic operands from different contexts");
        let repr = match (self.repr, other.repr) {
            (Repr::Zero { abs_prec: None }, _) | (_, Repr::Zero { abs_prec: None }) => {
                Repr::Zero { abs_prec: None }
            }
            (Repr::Zero { abs_prec: Some(a) }, Repr::Zero { abs_prec: Some(b) }) => {
                Repr::Zero { abs_prec: Some(a + b) }
            }
            (Repr::Zero { abs_prec: Some(a) }, Repr::Nonzero { valuation, .. })
            | (Repr::Nonzero { valuation, .. }, Repr::Zero { abs_prec: Some(a) }) => {
                Repr::Zero { abs_prec: Some(a + valuation) }
            }
            (
                Repr::Nonzero { valuation: va, unit: ua, prec: pa },
                Repr::Nonzero { valuation: vb, unit: ub, prec: pb },
            ) => {
                let prec = pa.min(pb);
                let unit = arith::mul_mod(ua, ub, self.ctx.pow(prec));
                Repr::Nonzero { valuation: va + vb, unit, prec }
            }
        };
        PadicNumber { ctx: self.ctx, repr }
    }

    pub fn inv(&self) -> Result<Self> {
        match self.repr {
            Repr::Zero { .. } => Err(Error::DivisionByZero),
            Repr::Nonzero { valuation, unit, prec } => {
                let inv = arith::inv_mod(unit, self.ctx.pow(prec)).expect("unit is coprime to p");
                Ok(Self::unit_times_power(self.ctx, -valuation, inv, prec))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_impl(&other.inv()?))
    }

    pub fn square(&self) -> Self {
        self.mul_impl(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = self.ctx.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            base = base.mul_impl(&base);
            e >>= 1;
        }
        acc
    }

    /// Equality at the common precision of both operands.
    pub fn eq_mod_precision(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.add_impl(&other.neg_impl()).is_zero()
    }

    /// Structural identity: same valuation, unit and precision.
    pub fn same_representation(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && match (self.repr, other.repr) {
                (Repr::Zero { abs_prec: a }, Repr::Zero { abs_prec: b }) => a == b,
                (
                    Repr::Nonzero { valuation: va, unit: ua, prec: pa },
                    Repr::Nonzero { valuation: vb, unit: ub, prec: pb },
                ) => va == vb && ua == ub && pa == pb,
                _ => false,
            }
    }

    /// The value as a signed integer `p^k * u` with `|u| < p^r / 2`, when `k >= 0`
    /// and the product fits. Recovers small integers exactly.
    pub fn to_balanced_i128(&self) -> Option<i128> {
        match self.repr {
            Repr::Zero { .. } => Some(0),
            Repr::Nonzero { valuation, unit, prec } => {
                if valuation < 0 {
                    return None;
                }
                let m = self.ctx.pow(prec) as i128;
                let mut u = unit as i128;
                if u > m / 2 {
                    u -= m;
                }
                (self.ctx.p as i128).checked_pow(valuation as u32)?.checked_mul(u)
            }
        }
    }

    /// Whether this number is a square in `Q_p`.
    pub fn is_square(&self) -> Result<bool> {
        let (v, u, prec) = self.nonzero_parts()?;
        if v.rem_euclid(2) != 0 {
            return Ok(false);
        }
        if self.ctx.p == 2 {
            if prec < 3 {
                return Err(Error::PrecisionExhausted);
            }
            Ok(u % 8 == 1)
        } else {
            Ok(arith::is_quadratic_residue(u % self.ctx.p, self.ctx.p))
        }
    }

    fn nonzero_parts(&self) -> Result<(i64, u64, u32)> {
        match self.repr {
            Repr::Zero { .. } => Err(Error::ZeroInput),
            Repr::Nonzero { valuation, unit, prec } => Ok((valuation, unit, prec)),
        }
    }

    /// A square root, chosen by `branch`, lifted by Hensel's lemma.
    ///
    /// For odd `p` the root carries the same relative precision as the input;
    /// for `p = 2` one digit is lost, since roots are only determined modulo
    /// `2^(r-1)`.
    pub fn sqrt(&self, branch: Branch) -> Result<Self> {
        if self.is_exact_zero() {
            return Ok(*self);
        }
        let (v, u, prec) = match self.nonzero_parts() {
            Ok(parts) => parts,
            Err(_) => return Err(Error::PrecisionExhausted),
        };
        if !self.is_square()? {
            return Err(Error::NotASquare);
        }
        let p = self.ctx.p;
        let (root, root_prec) = if p == 2 {
            let mut r = 1u64;
            let mut j = 2u32;
            while j + 1 < prec {
                let m = 1u64 << (j + 2);
                if (r as u128 * r as u128 % m as u128) as u64 != u % m {
                    r += 1 << j;
                }
                j += 1;
            }
            (r, prec - 1)
        } else {
            let m = self.ctx.pow(prec);
            let r0 = arith::sqrt_mod_prime(u % p, p).expect("residue checked above");
            let r0 = if r0 > (p - 1) / 2 { p - r0 } else { r0 };
            // Newton steps double the number of correct digits.
            let mut r = r0;
            let mut correct = 1u32;
            while correct < prec {
                let two_r_inv = arith::inv_mod(arith::mul_mod(2, r, m), m).expect("2r is a unit");
                let err = (arith::mul_mod(r, r, m) + m - u % m) % m;
                r = (r + m - arith::mul_mod(err, two_r_inv, m)) % m;
                correct *= 2;
            }
            debug_assert_eq!(arith::mul_mod(r, r, m), u % m);
            (r, prec)
        };
        let principal = Self::unit_times_power(self.ctx, v / 2, root, root_prec);
        Ok(match branch {
            Branch::Principal => principal,
            Branch::Other => principal.neg_impl(),
        })
    }

    /// The square class of this number in `Q_p^* / (Q_p^*)^2`.
    pub fn square_class(&self) -> Result<SquareClass> {
        let (v, u, prec) = self.nonzero_parts()?;
        let odd_valuation = v.rem_euclid(2) == 1;
        if self.ctx.p == 2 {
            if prec < 3 {
                return Err(Error::PrecisionExhausted);
            }
            let r = (u % 8) as u8;
            let rep = if odd_valuation { 2 * r } else { r };
            Ok(SquareClass::Dyadic(rep))
        } else {
            let nonresidue = !arith::is_quadratic_residue(u % self.ctx.p, self.ctx.p);
            Ok(SquareClass::Odd { nonresidue, odd_valuation })
        }
    }
}

impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.eq_mod_precision(other)
    }
}

impl Add for PadicNumber {
    type Output = PadicNumber;
    fn add(self, rhs: PadicNumber) -> PadicNumber {
        self.add_impl(&rhs)
    }
}

impl Sub for PadicNumber {
    type Output = PadicNumber;
    fn sub(self, rhs: PadicNumber) -> PadicNumber {
        self.add_impl(&rhs.neg_impl())
    }
}

impl Mul for PadicNumber {
    type Output = PadicNumber;
    fn mul(self, rhs: PadicNumber) -> PadicNumber {
        self.mul_impl(&rhs)
    }
}

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_impl()
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ctx.p;
        match self.repr {
            Repr::Zero { abs_prec: None } => write!(f, "0"),
            Repr::Zero { abs_prec: Some(a) } => write!(f, "O({p}^{a})"),
            Repr::Nonzero { valuation, prec, .. } => {
                for (i, d) in self.digits().iter().enumerate() {
                    if *d == 0 {
                        continue;
                    }
                    let e = valuation + i as i64;
                    if e == 0 {
                        write!(f, "{d} + ")?;
                    } else {
                        write!(f, "{d}*{p}^{e} + ")?;
                    }
                }
                write!(f, "O({p}^{})", valuation + prec as i64)
            }
        }
    }
}

/// Representative of a square class of `Q_p^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareClass {
    /// Odd `p`: one of `1, eta, p, eta*p`.
    Odd { nonresidue: bool, odd_valuation: bool },
    /// `p = 2`: one of `1, 2, 3, 5, 6, 7, 10, 14`.
    Dyadic(u8),
}

impl SquareClass {
    pub const DYADIC_REPRESENTATIVES: [u8; 8] = [1, 2, 3, 5, 6, 7, 10, 14];

    pub fn is_trivial(&self) -> bool {
        matches!(
            self,
            SquareClass::Odd { nonresidue: false, odd_valuation: false } | SquareClass::Dyadic(1)
        )
    }

    /// The canonical representative as a p-adic number.
    pub fn representative(&self, ctx: PadicContext) -> Result<PadicNumber> {
        match *self {
            SquareClass::Dyadic(r) => Ok(ctx.from_i64(r as i64)),
            SquareClass::Odd { nonresidue, odd_valuation } => {
                let mut x = ctx.one();
                if nonresidue {
                    x = ctx.find_eta()?;
                }
                if odd_valuation {
                    x = x * ctx.p_power(1);
                }
                Ok(x)
            }
        }
    }

    /// The group law of `Q_p^* / (Q_p^*)^2`.
    pub fn combine(&self, other: &SquareClass) -> SquareClass {
        match (*self, *other) {
            (
                SquareClass::Odd { nonresidue: a, odd_valuation: b },
                SquareClass::Odd { nonresidue: c, odd_valuation: d },
            ) => SquareClass::Odd { nonresidue: a ^ c, odd_valuation: b ^ d },
            (SquareClass::Dyadic(a), SquareClass::Dyadic(b)) => {
                let ctx = PadicContext::new(2, 8).expect("valid dyadic context");
                ctx.from_i64(a as i64 * b as i64)
                    .square_class()
                    .expect("nonzero product of representatives")
            }
            _ => panic!("square classes of different primes"),
        }
    }

    /// Label in the notation `1, eta, p, eta*p` (odd `p`) or the dyadic representative.
    pub fn label(&self) -> String {
        match *self {
            SquareClass::Dyadic(r) => r.to_string(),
            SquareClass::Odd { nonresidue, odd_valuation } => match (nonresidue, odd_valuation) {
                (false, false) => "1".into(),
                (true, false) => "eta".into(),
                (false, true) => "p".into(),
                (true, true) => "eta*p".into(),
            },
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Serialize, Deserialize)]
struct PadicJson {
    p: u64,
    precision: u32,
    valuation: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    digits: Vec<u64>,
}

impl Serialize for PadicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PadicJson {
            p: self.ctx.p,
            precision: self.ctx.precision,
            valuation: self.valuation(),
            digits: self.digits(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PadicNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PadicJson::deserialize(deserializer)?;
        let ctx = PadicContext::new(raw.p, raw.precision).map_err(D::Error::custom)?;
        match raw.valuation {
            None => Ok(ctx.zero()),
            Some(k) => PadicNumber::from_digits(ctx, k, &raw.digits).map_err(D::Error::custom),
        }
    }
}
