//! Vertex weights with an explicit "undeletable" sentinel.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A non-negative vertex weight, or the infinite sentinel marking a vertex
/// that must never be deleted.
///
/// `Infinite` compares greater than every finite weight and absorbs addition,
/// so the total weight of a set tells exactly whether it contains a forbidden
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub const ZERO: Weight = Weight::Finite(0);
    pub const ONE: Weight = Weight::Finite(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::ONE
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => a.checked_add(b).map_or(Weight::Infinite, Weight::Finite),
            _ => Weight::Infinite,
        }
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, Add::add)
    }
}

impl From<u64> for Weight {
    fn from(w: u64) -> Self {
        Weight::Finite(w)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Weight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Weight::Infinite);
        }
        s.parse::<u64>()
            .map(Weight::Finite)
            .map_err(|e| format!("bad weight {s:?}: {e}"))
    }
}
