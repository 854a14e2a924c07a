use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

/// An exact rational in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UnitValue(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseUnitError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("value `{0}` outside [0, 1]")]
    OutOfRange(String),
}

/// The four lattice/arithmetic operations on the unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitOp {
    /// Truncated addition `min(a + b, 1)`.
    Add,
    /// Truncated subtraction `max(0, a - b)`.
    Sub,
    Min,
    Max,
}

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(Ratio::new_raw(0, 1));
    pub const ONE: UnitValue = UnitValue(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, rejecting zero denominators and values outside `[0, 1]`.
    pub fn new(numer: i64, denom: i64) -> Result<Self, ParseUnitError> {
        if denom == 0 {
            return Err(ParseUnitError::Malformed(format!("{numer}/{denom}")));
        }
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Result<Self, ParseUnitError> {
        if r < Ratio::zero() || r > Ratio::one() {
            return Err(ParseUnitError::OutOfRange(r.to_string()));
        }
        Ok(UnitValue(r))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    /// `min(self + other, 1)`.
    pub fn oplus(self, other: Self) -> Self {
        UnitValue((self.0 + other.0).min(Ratio::one()))
    }

    /// `max(0, self - other)`.
    pub fn ominus(self, other: Self) -> Self {
        UnitValue((self.0 - other.0).max(Ratio::zero()))
    }

    pub fn meet(self, other: Self) -> Self {
        self.min(other)
    }

    pub fn join(self, other: Self) -> Self {
        self.max(other)
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        UnitValue(Ratio::one() - self.0)
    }

    /// `|self - other|`.
    pub fn abs_diff(self, other: Self) -> Self {
        self.ominus(other).join(other.ominus(self))
    }

    pub fn apply(op: UnitOp, a: Self, b: Self) -> Self {
        match op {
            UnitOp::Add => a.oplus(b),
            UnitOp::Sub => a.ominus(b),
            UnitOp::Min => a.meet(b),
            UnitOp::Max => a.join(b),
        }
    }

    /// Join of a family; the empty join is 0.
    pub fn sup<I: IntoIterator<Item = UnitValue>>(values: I) -> Self {
        values.into_iter().fold(Self::ZERO, Self::join)
    }

    /// Meet of a family; the empty meet is 1.
    pub fn inf<I: IntoIterator<Item = UnitValue>>(values: I) -> Self {
        values.into_iter().fold(Self::ONE, Self::meet)
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for UnitValue {
    type Err = ParseUnitError;

    /// Accepts `p/q` or a bare integer. No floating-point forms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ParseUnitError::Malformed(s.to_string());
        let parse_int = |t: &str| -> Result<i64, ParseUnitError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            t.parse::<i64>().map_err(|_| malformed())
        };
        let (numer, denom) = match s.split_once('/') {
            Some((p, q)) => (parse_int(p)?, parse_int(q)?),
            None => (parse_int(s)?, 1),
        };
        if denom == 0 {
            return Err(malformed());
        }
        let r = Ratio::new(numer, denom);
        if r > Ratio::one() {
            return Err(ParseUnitError::OutOfRange(s.to_string()));
        }
        Ok(UnitValue(r))
    }
}
