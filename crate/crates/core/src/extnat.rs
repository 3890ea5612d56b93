use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A homological dimension: a finite value, a certified infinity, or an
/// inconclusive lower bound reached at a cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ExtendedNat {
    Finite(usize),
    Infinity,
    /// The search stopped at this cutoff; the true value is at least this.
    AtLeast(usize),
}

impl ExtendedNat {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, ExtendedNat::AtLeast(_))
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            ExtendedNat::Finite(n) => Some(*n),
            _ => None,
        }
    }

    /// The value as seen by a computation that only looks up to `c`: anything
    /// at or above `c` becomes `AtLeast(c)`.
    pub fn capped(self, c: usize) -> ExtendedNat {
        match self {
            ExtendedNat::Finite(n) if n < c => ExtendedNat::Finite(n),
            ExtendedNat::AtLeast(n) if n < c => ExtendedNat::AtLeast(n),
            _ => ExtendedNat::AtLeast(c),
        }
    }

    /// Lower bound usable for comparisons (`Infinity` maps to `usize::MAX`).
    pub fn lower_bound(&self) -> usize {
        match self {
            ExtendedNat::Finite(n) | ExtendedNat::AtLeast(n) => *n,
            ExtendedNat::Infinity => usize::MAX,
        }
    }

    /// `min` for certified values; mixing in `AtLeast` keeps the bound honest.
    pub fn min(self, other: ExtendedNat) -> ExtendedNat {
        use ExtendedNat::*;
        match (self, other) {
            (Infinity, x) | (x, Infinity) => x,
            (Finite(a), Finite(b)) => Finite(a.min(b)),
            (Finite(a), AtLeast(b)) | (AtLeast(b), Finite(a)) => {
                if a <= b {
                    Finite(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }

    /// Total order on certified values; `AtLeast` has no certified position
    /// relative to larger finite values, so this returns `None` there.
    pub fn certified_cmp(&self, other: &ExtendedNat) -> Option<Ordering> {
        use ExtendedNat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(a.cmp(b)),
            (Infinity, Infinity) => Some(Ordering::Equal),
            (Finite(_), Infinity) => Some(Ordering::Less),
            (Infinity, Finite(_)) => Some(Ordering::Greater),
            (Finite(a), AtLeast(b)) if a < b => Some(Ordering::Less),
            (AtLeast(a), Finite(b)) if b < a => Some(Ordering::Greater),
            _ => None,
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinity => write!(f, "Infinity (certified)"),
            ExtendedNat::AtLeast(n) => write!(f, ">= {n} (cutoff)"),
        }
    }
}
