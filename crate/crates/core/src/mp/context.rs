use crate::error::{Error, Result};

pub const MIN_DIGITS: u32 = 10;
pub const MAX_DIGITS: u32 = 100;
pub const DEFAULT_GUARD: u32 = 10;
pub const MIN_GUARD: u32 = 5;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Requested decimal digits plus guard digits. Every operation runs at
/// `digits + guard` decimal digits of working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    /// A context with the default number of guard digits.
    ///
    /// ```
    /// use zeta_identities::PrecisionContext;
    ///
    /// let ctx = PrecisionContext::new(40).unwrap();
    /// assert_eq!((ctx.digits(), ctx.guard()), (40, 10));
    /// assert!(PrecisionContext::new(101).is_err());
    /// ```
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, DEFAULT_GUARD)
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if !(MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
            return Err(Error::Config(format!(
                "digits must lie in {MIN_DIGITS}..={MAX_DIGITS}, got {digits}"
            )));
        }
        if guard < MIN_GUARD {
            return Err(Error::Config(format!("guard must be at least {MIN_GUARD}, got {guard}")));
        }
        Ok(PrecisionContext { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Decimal digits carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision handed to the backend.
    pub fn bits(&self) -> usize {
        (self.working_digits() as f64 * LOG2_10).ceil() as usize + 8
    }

    /// `10^-digits`, the accuracy promised to callers.
    pub fn target(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    /// `10^-(digits+guard)`, the size below which series terms are dropped.
    pub fn working_eps(&self) -> f64 {
        10f64.powi(-(self.working_digits() as i32))
    }

    /// Same guard, more digits. Used by precision-monotonicity checks and by
    /// evaluators that need headroom against cancellation.
    pub fn raised(&self, extra: u32) -> Self {
        PrecisionContext { digits: self.digits + extra, guard: self.guard }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { digits: 30, guard: DEFAULT_GUARD }
    }
}

/// Free-function form of [`PrecisionContext::new`].
pub fn make_context(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits)
}
