//! The braid trace `tau(b) = tr rep_n(b)` for the catalog `R`, computed exactly.

use std::fmt;

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::exact::ExactScaledMatrix;
use crate::par::Execution;
use crate::rep;

/// `mantissa * sqrt(2)^exp`, kept with an odd mantissa (or `0 * sqrt(2)^0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TauValue {
    mantissa: i128,
    exp: i64,
}

impl TauValue {
    pub const ZERO: TauValue = TauValue { mantissa: 0, exp: 0 };

    pub fn new(mantissa: i128, exp: i64) -> Self {
        if mantissa == 0 {
            return Self::ZERO;
        }
        let tz = mantissa.trailing_zeros();
        TauValue { mantissa: mantissa >> tz, exp: exp + 2 * tz as i64 }
    }

    /// The value `trace * sqrt(2)^(-scale_exp)` of an exact representation.
    pub fn from_scaled(trace: i128, scale_exp: u32) -> Self {
        Self::new(trace, -(scale_exp as i64))
    }

    pub fn mantissa(self) -> i128 {
        self.mantissa
    }

    pub fn exp(self) -> i64 {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0
    }

    pub fn to_f64(self) -> f64 {
        let odd = if self.exp.rem_euclid(2) == 1 { std::f64::consts::SQRT_2 } else { 1.0 };
        self.mantissa as f64 * 2f64.powi(self.exp.div_euclid(2) as i32) * odd
    }

    pub fn mul_sqrt2(self) -> Self {
        if self.is_zero() {
            self
        } else {
            TauValue { mantissa: self.mantissa, exp: self.exp + 1 }
        }
    }

    /// Exact sum, or `None` when the exponents differ in parity (the sum is
    /// then `a + b sqrt(2)` with both parts nonzero, outside this form).
    pub fn checked_add(self, other: Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other);
        }
        if other.is_zero() {
            return Some(self);
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let gap = hi.exp - lo.exp;
        if gap % 2 != 0 {
            return None;
        }
        let shifted = hi.mantissa.checked_mul(1i128.checked_shl(u32::try_from(gap / 2).ok()?)?)?;
        Some(Self::new(lo.mantissa.checked_add(shifted)?, lo.exp))
    }

    pub fn to_json(self) -> serde_json::Value {
        serde_json::json!({ "mantissa": self.mantissa as i64, "sqrt2_exp": self.exp, "float": self.to_f64() })
    }
}

impl std::ops::Neg for TauValue {
    type Output = TauValue;

    fn neg(self) -> TauValue {
        TauValue { mantissa: -self.mantissa, exp: self.exp }
    }
}

impl fmt::Display for TauValue {
    /// `8`, `-2*sqrt2`, `1/2`, or the raw `m*sqrt2^e` when the power is large.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let half = self.exp.div_euclid(2);
        let odd = self.exp.rem_euclid(2) == 1;
        let tail = if odd { "*sqrt2" } else { "" };
        if (0..=60).contains(&half) {
            match self.mantissa.checked_mul(1i128 << half) {
                Some(c) if odd && c.abs() == 1 => write!(f, "{}sqrt2", if c < 0 { "-" } else { "" }),
                Some(c) => write!(f, "{c}{tail}"),
                None => write!(f, "{}*sqrt2^{}", self.mantissa, self.exp),
            }
        } else if (-60..0).contains(&half) {
            write!(f, "{}/{}{tail}", self.mantissa, 1i128 << -half)
        } else {
            write!(f, "{}*sqrt2^{}", self.mantissa, self.exp)
        }
    }
}

pub fn tau(b: &BraidWord) -> Result<TauValue> {
    tau_with(b, Execution::default())
}

pub fn tau_with(b: &BraidWord, exec: Execution) -> Result<TauValue> {
    let m = rep::rep_exact_with(b, exec)?;
    Ok(TauValue::from_scaled(m.int_trace()?, m.scale_exp()))
}

/// The same trace for another integer generator (see [`rep::rep_exact_using`]).
pub fn tau_using(b: &BraidWord, gen: &ExactScaledMatrix) -> Result<TauValue> {
    let m = rep::rep_exact_using(b, gen, Execution::default())?;
    Ok(TauValue::from_scaled(m.int_trace()?, m.scale_exp()))
}

/// Equal up to a power of `sqrt(2)`: both zero or the same odd mantissa.
pub fn tau_equivalent(v1: TauValue, v2: TauValue) -> bool {
    v1.mantissa == v2.mantissa
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkeinReport {
    pub site: usize,
    /// `tau` of the given word.
    pub original: TauValue,
    /// `tau` with the letter at `site` inverted.
    pub flipped: TauValue,
    /// `tau` with the letter at `site` removed.
    pub smoothed: TauValue,
    pub holds: bool,
}

/// Check `tau(b) + tau(b') = sqrt(2) tau(b'')` at one crossing.
///
/// The identity is tested on the integer traces, where it reads
/// `t + t' = 2 t''` (the removed letter lowers the scale by one).
pub fn skein_check(b: &BraidWord, site: usize) -> Result<SkeinReport> {
    let g = *b.letters().get(site).ok_or(Error::BadSite { site, len: b.len() })?;
    let flipped_word = b.with_site(site, Some(-g))?;
    let smoothed_word = b.with_site(site, None)?;
    let m = rep::rep_exact(b)?;
    let mf = rep::rep_exact(&flipped_word)?;
    let ms = rep::rep_exact(&smoothed_word)?;
    let (t, tf, ts) = (m.int_trace()?, mf.int_trace()?, ms.int_trace()?);
    let lhs = t.checked_add(tf).ok_or(Error::Overflow)?;
    let rhs = ts.checked_mul(2).ok_or(Error::Overflow)?;
    let original = TauValue::from_scaled(t, m.scale_exp());
    let flipped = TauValue::from_scaled(tf, mf.scale_exp());
    let smoothed = TauValue::from_scaled(ts, ms.scale_exp());
    let via_values = original.checked_add(flipped) == Some(smoothed.mul_sqrt2());
    Ok(SkeinReport { site, original, flipped, smoothed, holds: lhs == rhs && via_values })
}

/// `tau(s^k)` in `B_2` for `k = 0..len`, generated from `tau(1) = 4`,
/// `tau(s) = 2 sqrt2` by `tau(s^(k+1)) = sqrt2 tau(s^k) - tau(s^(k-1))`.
pub fn tau_power_recurrence(len: usize) -> Result<Vec<TauValue>> {
    let mut out = vec![TauValue::new(1, 4), TauValue::new(1, 3)];
    while out.len() < len {
        let k = out.len();
        let next = out[k - 1]
            .mul_sqrt2()
            .checked_add(-out[k - 2])
            .ok_or_else(|| Error::SelfCheck("recurrence left the sqrt2-power form".into()))?;
        out.push(next);
    }
    out.truncate(len);
    Ok(out)
}
