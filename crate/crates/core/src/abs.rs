use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact absolute value `p^(-h/2)` on `Q_p(sqrt mu)`, or zero.
///
/// `h` is the Q_p-valuation of the norm `z * conj(z)`, so base-field values
/// have even `h` and ramified extensions reach odd `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AbsValue {
    p: u64,
    half_val: Option<i64>,
}

impl AbsValue {
    pub fn zero(p: u64) -> Self {
        AbsValue { p, half_val: None }
    }

    pub fn one(p: u64) -> Self {
        AbsValue { p, half_val: Some(0) }
    }

    /// `|p^k|`, i.e. `p^(-k)`.
    pub fn from_valuation(p: u64, k: i64) -> Self {
        AbsValue { p, half_val: Some(2 * k) }
    }

    pub fn from_half_valuation(p: u64, h: i64) -> Self {
        AbsValue { p, half_val: Some(h) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Twice the additive valuation; `None` for zero.
    pub fn half_valuation(&self) -> Option<i64> {
        self.half_val
    }

    pub fn is_zero(&self) -> bool {
        self.half_val.is_none()
    }

    /// Exponent `e` with `self = p^e`, as `(numerator, denominator)` in lowest terms.
    pub fn log_p(&self) -> Option<(i64, i64)> {
        self.half_val.map(|h| if h % 2 == 0 { (-h / 2, 1) } else { (-h, 2) })
    }

    pub fn to_f64(&self) -> f64 {
        match self.half_val {
            None => 0.0,
            Some(h) => (self.p as f64).powf(-(h as f64) / 2.0),
        }
    }
}

impl Ord for AbsValue {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.p, other.p, "absolute values over different primes");
        match (self.half_val, other.half_val) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl PartialOrd for AbsValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for AbsValue {
    type Output = AbsValue;

    fn mul(self, rhs: AbsValue) -> AbsValue {
        debug_assert_eq!(self.p, rhs.p);
        let half_val = match (self.half_val, rhs.half_val) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        AbsValue { p: self.p, half_val }
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log_p() {
            None => write!(f, "0"),
            Some((0, _)) => write!(f, "1"),
            Some((1, 1)) => write!(f, "{}", self.p),
            Some((e, 1)) if e < 0 => write!(f, "1/{}", pow_string(self.p, -e)),
            Some((e, 1)) => write!(f, "{}", pow_string(self.p, e)),
            Some((e, d)) => write!(f, "{}^({}/{})", self.p, e, d),
        }
    }
}

fn pow_string(p: u64, e: i64) -> String {
    if e == 1 {
        p.to_string()
    } else {
        format!("{p}^{e}")
    }
}

impl AbsValue {
    /// Parses the `Display` form of an absolute value over the prime `p`.
    pub fn parse(p: u64, body: &str) -> Result<Self, String> {
        let base = p.to_string();
        let parse_pow = |t: &str| -> Result<i64, String> {
            match t.split_once('^') {
                None if t == base => Ok(1),
                Some((b, e)) if b == base => e.parse().map_err(|_| format!("bad exponent in {body:?}")),
                _ => Err(format!("bad power in {body:?}")),
            }
        };
        let half_val = if body == "0" {
            None
        } else if body == "1" {
            Some(0)
        } else if let Some(rest) = body.strip_prefix("1/") {
            Some(2 * parse_pow(rest)?)
        } else if let Some((b, rest)) = body.split_once("^(") {
            if b != base {
                return Err(format!("bad base in {body:?}"));
            }
            let frac = rest
                .strip_suffix("/2)")
                .ok_or_else(|| format!("bad half exponent in {body:?}"))?;
            let e: i64 = frac.parse().map_err(|_| format!("bad half exponent in {body:?}"))?;
            Some(-e)
        } else {
            Some(-2 * parse_pow(body)?)
        };
        Ok(AbsValue { p, half_val })
    }
}

#[derive(Serialize, Deserialize)]
struct AbsJson {
    p: u64,
    value: String,
}

impl Serialize for AbsValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AbsJson { p: self.p, value: self.to_string() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AbsValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = AbsJson::deserialize(deserializer)?;
        AbsValue::parse(raw.p, &raw.value).map_err(serde::de::Error::custom)
    }
}
