//! The ordered truth domain.
//!
//! Values are laid out as
//!
//! ```text
//! F0 < F1 < F2 < ... < 0 < ... < T2 < T1 < T0
//! ```
//!
//! `F0` and `T0` are classical falsity and truth. Every application of
//! negation-as-failure reflects a value about `0` and moves it one step
//! closer to it, so `not F0 = T1`, `not T1 = F2`, and so on.
//!
//! Subscripts are natural numbers. A finite ground program never produces a
//! value whose subscript exceeds the size of its Herbrand base, so transfinite
//! subscripts are not representable.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One element of the infinite-valued truth domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    /// `F_k`: false with order `k`. Larger `k` is closer to `0`.
    False(u32),
    /// The neutral value `0`.
    Zero,
    /// `T_k`: true with order `k`. Larger `k` is closer to `0`.
    True(u32),
}

/// The order of a truth value: its subscript, or `Infinite` for `0`.
///
/// `Infinite` compares greater than every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(k) => Some(k),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(k) => write!(f, "{k}"),
            Order::Infinite => f.write_str("+inf"),
        }
    }
}

impl TruthValue {
    /// Classical truth, `T0`.
    pub const TRUE: TruthValue = TruthValue::True(0);
    /// Classical falsity, `F0`; also the least element of the domain.
    pub const FALSE: TruthValue = TruthValue::False(0);

    pub fn order(self) -> Order {
        match self {
            TruthValue::False(k) | TruthValue::True(k) => Order::Finite(k),
            TruthValue::Zero => Order::Infinite,
        }
    }

    /// `true` when the value has finite order exactly `k`.
    pub fn has_order(self, k: u32) -> bool {
        self.order() == Order::Finite(k)
    }

    /// Negation-as-failure: reflect about `0` and take one step toward it.
    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::False(k) => TruthValue::True(k + 1),
            TruthValue::True(k) => TruthValue::False(k + 1),
            TruthValue::Zero => TruthValue::Zero,
        }
    }

    pub fn collapse(self) -> ThreeValued {
        match self {
            TruthValue::False(_) => ThreeValued::False,
            TruthValue::Zero => ThreeValued::Undefined,
            TruthValue::True(_) => ThreeValued::True,
        }
    }

    pub fn is_true_like(self) -> bool {
        matches!(self, TruthValue::True(_))
    }

    pub fn is_false_like(self) -> bool {
        matches!(self, TruthValue::False(_))
    }

    // (polarity, tiebreak): F_k ascends with k, T_k descends with k.
    fn rank(self) -> (u8, i64) {
        match self {
            TruthValue::False(k) => (0, i64::from(k)),
            TruthValue::Zero => (1, 0),
            TruthValue::True(k) => (2, -i64::from(k)),
        }
    }
}

impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::False(k) => write!(f, "F{k}"),
            TruthValue::Zero => f.write_str("0"),
            TruthValue::True(k) => write!(f, "T{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid truth value {0:?}: expected \"T<k>\", \"F<k>\" or \"0\"")]
pub struct ParseTruthValueError(pub String);

impl FromStr for TruthValue {
    type Err = ParseTruthValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseTruthValueError(s.to_string());
        if s == "0" {
            return Ok(TruthValue::Zero);
        }
        let (ctor, digits): (fn(u32) -> TruthValue, &str) = match s.as_bytes().first() {
            Some(b'T') => (TruthValue::True, &s[1..]),
            Some(b'F') => (TruthValue::False, &s[1..]),
            _ => return Err(err()),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        // Reject leading zeros so that rendering stays canonical.
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(err());
        }
        digits.parse().map(ctor).map_err(|_| err())
    }
}

/// Least upper bound of a finite set of values. The empty set yields `F0`.
pub fn lub<I>(values: I) -> TruthValue
where
    I: IntoIterator<Item = TruthValue>,
{
    values.into_iter().max().unwrap_or(TruthValue::FALSE)
}

/// Greatest lower bound of a finite set of values, `None` when empty.
pub fn glb<I>(values: I) -> Option<TruthValue>
where
    I: IntoIterator<Item = TruthValue>,
{
    values.into_iter().min()
}

/// The collapsed three-valued codomain: `False < Undefined < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThreeValued {
    False,
    Undefined,
    True,
}

impl ThreeValued {
    pub fn as_str(self) -> &'static str {
        match self {
            ThreeValued::False => "false",
            ThreeValued::Undefined => "undefined",
            ThreeValued::True => "true",
        }
    }
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
