//! Neutrosophic numbers of the form `d + c·I`.
//!
//! A rating in an indeterminate decision matrix is either a plain number or
//! the indeterminacy symbol `I`. Weighted sums of such entries always land in
//! the linear form `det + ind·I`, so that is the only shape this type needs.
//! No product of two values is ever formed.

use thiserror::Error;

use crate::interval::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ValueError {
    #[error("non-finite result")]
    NonFinite,
    #[error("invalid I-bounds: iMin {i_min} > iMax {i_max}")]
    InvalidBounds { i_min: f64, i_max: f64 },
}

/// A value `det + ind·I` with both parts finite.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeutroValue {
    det: f64,
    ind: f64,
}

impl NeutroValue {
    pub const ZERO: NeutroValue = NeutroValue { det: 0.0, ind: 0.0 };

    /// The bare indeterminacy symbol `I`.
    pub const I: NeutroValue = NeutroValue { det: 0.0, ind: 1.0 };

    pub fn new(det: f64, ind: f64) -> Result<Self, ValueError> {
        if det.is_finite() && ind.is_finite() {
            Ok(NeutroValue { det, ind })
        } else {
            Err(ValueError::NonFinite)
        }
    }

    pub fn crisp(det: f64) -> Result<Self, ValueError> {
        Self::new(det, 0.0)
    }

    /// Determinate part.
    pub fn det(&self) -> f64 {
        self.det
    }

    /// Coefficient of `I`.
    pub fn ind(&self) -> f64 {
        self.ind
    }

    pub fn is_crisp(&self) -> bool {
        self.ind == 0.0
    }

    /// True for the bare symbol form `±I` (no determinate part, unit coefficient).
    pub fn is_bare_indeterminate(&self) -> bool {
        self.det == 0.0 && self.ind.abs() == 1.0
    }

    pub fn checked_add(self, other: NeutroValue) -> Result<Self, ValueError> {
        Self::new(self.det + other.det, self.ind + other.ind)
    }

    pub fn checked_scale(self, weight: f64) -> Result<Self, ValueError> {
        if !weight.is_finite() {
            return Err(ValueError::NonFinite);
        }
        Self::new(weight * self.det, weight * self.ind)
    }

    /// Substitutes a concrete value for `I`.
    pub fn eval(&self, i_value: f64) -> f64 {
        self.det + self.ind * i_value
    }

    /// De-neutrosophication: the range of the value as `I` sweeps `[i_min, i_max]`.
    ///
    /// The value is linear in `I`, so the extremes sit at the two bounds; a
    /// negative coefficient just swaps which bound yields the lower end.
    pub fn to_interval(&self, i_min: f64, i_max: f64) -> Result<Interval, ValueError> {
        if !i_min.is_finite() || !i_max.is_finite() {
            return Err(ValueError::NonFinite);
        }
        if i_min > i_max {
            return Err(ValueError::InvalidBounds { i_min, i_max });
        }
        let a = self.eval(i_min);
        let b = self.eval(i_max);
        Interval::new(a.min(b), a.max(b)).map_err(|_| ValueError::NonFinite)
    }
}
