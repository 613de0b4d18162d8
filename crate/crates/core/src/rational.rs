//! Exact rational values and the `Factor` type used for ratios that may be
//! unbounded (zero denominators).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds `num / den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or a bare integer `"p"`. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let malformed = || Error::MalformedRational(text.to_string());
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(malformed());
    }
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(malformed());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` rendering; integers keep the `/1`.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Lossy decimal view, for human-readable reports only.
pub fn to_f64(value: &Rational) -> f64 {
    let num = value.numer().to_f64().unwrap_or(f64::NAN);
    let den = value.denom().to_f64().unwrap_or(f64::NAN);
    num / den
}

/// A ratio that is either a finite rational or unbounded (a zero
/// denominator, or no constraining pair at all).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Bounded(Rational),
    Unbounded,
}

impl Factor {
    /// `num / den`, unbounded when `den` is zero.
    pub fn ratio(num: &Rational, den: &Rational) -> Factor {
        if den.is_zero() {
            Factor::Unbounded
        } else {
            Factor::Bounded(num / den)
        }
    }

    pub fn bounded(&self) -> Option<&Rational> {
        match self {
            Factor::Bounded(r) => Some(r),
            Factor::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Factor::Unbounded)
    }

    /// True when the factor is at least `alpha`; unbounded always is.
    pub fn at_least(&self, alpha: &Rational) -> bool {
        match self {
            Factor::Bounded(r) => r >= alpha,
            Factor::Unbounded => true,
        }
    }

    /// Unbounded collapses to `cap`.
    pub fn capped(&self, cap: &Rational) -> Rational {
        match self {
            Factor::Bounded(r) if r < cap => r.clone(),
            _ => cap.clone(),
        }
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Factor::Bounded(a), Factor::Bounded(b)) => a.cmp(b),
            (Factor::Bounded(_), Factor::Unbounded) => Ordering::Less,
            (Factor::Unbounded, Factor::Bounded(_)) => Ordering::Greater,
            (Factor::Unbounded, Factor::Unbounded) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Bounded(r) => write!(f, "{}", format_rational(r)),
            Factor::Unbounded => write!(f, "unbounded"),
        }
    }
}

pub(crate) fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}
