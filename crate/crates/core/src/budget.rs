//! Node budgets for exact exponential searches.
//!
//! Every backtracking routine counts the nodes it expands and aborts with
//! [`Error::BudgetExceeded`] instead of returning a partial answer.

use crate::error::{Error, Result};

/// Maximum number of search nodes a single top-level call may expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const UNLIMITED: Budget = Budget(u64::MAX);

    pub fn nodes(self) -> u64 {
        self.0
    }

    pub(crate) fn ticker(self) -> Ticker {
        Ticker {
            used: 0,
            limit: self.0,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(1_000_000_000)
    }
}

#[derive(Debug)]
pub(crate) struct Ticker {
    used: u64,
    limit: u64,
}

impl Ticker {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}
