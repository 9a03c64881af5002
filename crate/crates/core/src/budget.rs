//! Search caps shared by the exhaustive procedures.
//!
//! Every search that can blow up takes a [`Meter`] and calls [`Meter::tick`]
//! once per unit of work. Running out yields [`BudgetExceeded`], which callers
//! report as an UNKNOWN verdict rather than as a negative answer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable overriding [`Budget::steps`].
pub const BUDGET_ENV: &str = "CLUTTERFORGE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("search budget of {limit} steps exhausted")]
pub struct BudgetExceeded {
    pub limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Work units per individual search (minor search, packing sweep, ...).
    pub steps: u64,
    /// Largest point count `q^r` that may be listed explicitly.
    pub max_points: usize,
    /// Largest ground set accepted by vertex enumeration.
    pub max_poly_elements: usize,
    /// Largest ground set accepted by isomorphism search.
    pub max_iso_elements: usize,
    /// Largest ground set accepted by exhaustive `3^|V|` minor sweeps.
    pub max_sweep_elements: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            steps: 200_000_000,
            max_points: 1 << 20,
            max_poly_elements: 16,
            max_iso_elements: 20,
            max_sweep_elements: 13,
        }
    }
}

impl Budget {
    /// Defaults, with `steps` taken from `CLUTTERFORGE_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(steps) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            b.steps = steps;
        }
        b
    }

    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    pub fn meter(&self) -> Meter {
        Meter::new(self.steps)
    }
}

/// Countdown of remaining work units.
#[derive(Debug, Clone)]
pub struct Meter {
    limit: u64,
    left: u64,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Meter { limit, left: limit }
    }

    pub fn unlimited() -> Self {
        Meter::new(u64::MAX)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.charge(1)
    }

    #[inline]
    pub fn charge(&mut self, units: u64) -> Result<(), BudgetExceeded> {
        if self.left < units {
            self.left = 0;
            return Err(BudgetExceeded { limit: self.limit });
        }
        self.left -= units;
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.limit - self.left
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meter_runs_out() {
        let mut m = Meter::new(3);
        assert!(m.tick().is_ok());
        assert!(m.charge(2).is_ok());
        assert_eq!(m.tick(), Err(BudgetExceeded { limit: 3 }));
        assert_eq!(m.used(), 3);
    }
}
