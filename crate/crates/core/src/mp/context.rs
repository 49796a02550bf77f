use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision shared by every operation.
///
/// Arithmetic runs at `digits + guard` decimal digits; results are meant to be
/// trusted to `digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            digits: 50,
            guard: 10,
        }
    }
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;
    pub const DEFAULT_GUARD: u32 = 10;

    pub fn new(digits: u32, guard: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::domain(format!(
                "precision of {digits} digits is below the minimum of {}",
                Self::MIN_DIGITS
            )));
        }
        Ok(PrecisionContext { digits, guard })
    }

    pub fn with_digits(digits: u32) -> Result<Self> {
        Self::new(digits, Self::DEFAULT_GUARD)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Total decimal digits carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision of every `Float` created under this context.
    pub fn bits(&self) -> u32 {
        (f64::from(self.working_digits()) * LOG2_10).ceil() as u32 + 8
    }

    /// A context with `extra` more trusted digits (same guard).
    pub fn extended(&self, extra: u32) -> Self {
        PrecisionContext {
            digits: self.digits + extra,
            guard: self.guard,
        }
    }

    /// Twice the trusted digits; used by independent reference evaluations.
    pub fn doubled(&self) -> Self {
        self.extended(self.digits)
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    /// 10^-(digits+guard): the size below which contributions are negligible.
    pub fn epsilon(&self) -> Float {
        pow10(self.bits(), -(self.working_digits() as i32))
    }

    /// 10^-digits: the accuracy promised to callers.
    pub fn tolerance(&self) -> Float {
        pow10(self.bits(), -(self.digits as i32))
    }
}

pub(crate) fn pow10(prec: u32, exp: i32) -> Float {
    Float::with_val(prec, exp).exp10()
}
