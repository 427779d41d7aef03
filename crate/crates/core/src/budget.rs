use crate::error::{Error, Result};

/// Upper bound on the number of candidates an exhaustive search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    pub const fn new(limit: u64) -> Self {
        Budget(limit)
    }

    pub const fn limit(self) -> u64 {
        self.0
    }

    pub(crate) fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// `base^exp` without overflow, saturating at `u128::MAX`.
pub(crate) fn power(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
