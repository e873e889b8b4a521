use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("invalid interval [{lo}, {hi}]")]
pub struct IntervalError {
    pub lo: f64,
    pub hi: f64,
}

/// Closed real interval `[lo, hi]` with finite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

/// Position of one interval relative to another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalRelation {
    /// Entirely below the other interval.
    DisjointBelow,
    /// Entirely above the other interval.
    DisjointAbove,
    Overlapping,
    /// Strictly contains the other interval.
    Contains,
    /// Strictly contained in the other interval.
    ContainedIn,
    Equal,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, IntervalError> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(IntervalError { lo, hi })
        }
    }

    pub fn point(x: f64) -> Result<Self, IntervalError> {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_value(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Describes `self` relative to `other`.
    ///
    /// Touching endpoints count as overlap. Containment needs at least one
    /// strict endpoint, so a point `[x, x]` with `lo < x < hi` is contained-in
    /// while `[lo, lo]` merely overlaps.
    pub fn relation(&self, other: &Interval) -> IntervalRelation {
        use IntervalRelation::*;
        if self.lo == other.lo && self.hi == other.hi {
            Equal
        } else if self.hi < other.lo {
            DisjointBelow
        } else if self.lo > other.hi {
            DisjointAbove
        } else if other.lo < self.lo && self.hi < other.hi {
            ContainedIn
        } else if self.lo < other.lo && other.hi < self.hi {
            Contains
        } else if other.lo <= self.lo && self.hi <= other.hi && !self.is_point() {
            // shares one endpoint, strictly narrower on the other side
            ContainedIn
        } else if self.lo <= other.lo && other.hi <= self.hi && !other.is_point() {
            Contains
        } else {
            Overlapping
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}
