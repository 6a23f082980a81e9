use crate::error::{Error, Result};

/// Upper bound on the number of terms an exponential enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT_TERMS: u64 = 1 << 20;

    pub const fn new(terms: u64) -> Self {
        Budget(terms)
    }

    pub const fn terms(self) -> u64 {
        self.0
    }

    /// Whether `2^count` terms fit the budget.
    pub fn allows_power_set(self, count: usize) -> bool {
        count < 64 && 1u64 << count <= self.0
    }

    /// Largest `count` with `2^count` within budget.
    pub fn max_exponent(self) -> usize {
        if self.0 == 0 {
            0
        } else {
            63 - self.0.leading_zeros() as usize
        }
    }

    /// Checks that all `2^edges` link states can be visited.
    pub fn check_states(self, edges: usize) -> Result<()> {
        if self.allows_power_set(edges) {
            Ok(())
        } else {
            Err(Error::TooManyEdges {
                edges,
                max: self.max_exponent(),
            })
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT_TERMS)
    }
}
