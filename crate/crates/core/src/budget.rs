use crate::error::{Error, Result};

/// Default number of elementary steps an enumeration oracle may take.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

/// Step counter shared by the enumeration oracles.
///
/// Every visited node of an enumeration tree costs one step. Running out is
/// reported as [`Error::WorkBudgetExhausted`]; results are never truncated.
#[derive(Debug, Clone)]
pub struct WorkBudget {
    limit: u64,
    used: u64,
}

impl WorkBudget {
    pub fn new(limit: u64) -> Self {
        WorkBudget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        WorkBudget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub fn charge(&mut self, steps: u64, context: &str) -> Result<()> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            return Err(Error::WorkBudgetExhausted {
                budget: self.limit,
                context: context.to_string(),
            });
        }
        Ok(())
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget::new(DEFAULT_WORK_BUDGET)
    }
}
