//! Integers extended by a `-inf` sentinel.
//!
//! Local cohomology that vanishes has a-invariant `-inf`; it sits below every
//! integer and is the identity for `max`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
}

pub use ExtInt::{Finite, NegInf};

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            NegInf => None,
            Finite(v) => Some(v),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == NegInf
    }

    /// Maximum over an iterator; `-inf` for an empty one.
    pub fn max_of<I: IntoIterator<Item = ExtInt>>(it: I) -> ExtInt {
        it.into_iter().fold(NegInf, std::cmp::max)
    }

    pub fn plus(self, k: i64) -> ExtInt {
        match self {
            NegInf => NegInf,
            Finite(v) => Finite(v + k),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        Finite(v)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, _) => Ordering::Less,
            (_, NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, k: i64) -> ExtInt {
        self.plus(k)
    }
}

impl PartialEq<i64> for ExtInt {
    fn eq(&self, other: &i64) -> bool {
        *self == Finite(*other)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NegInf => s.serialize_str("-inf"),
            Finite(v) => s.serialize_i64(*v),
        }
    }
}
