//! Resource limits for long computations.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Environment variable holding a wall-clock limit in seconds.
pub const BUDGET_ENV: &str = "POLYTAB_BUDGET_SECS";

/// Default cap on enumerated candidates for a single request.
pub const DEFAULT_MAX_WORK: u64 = 50_000_000_000;

#[derive(Clone, Debug)]
pub struct Budget {
    pub max_work: u64,
    deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_work: DEFAULT_MAX_WORK, deadline: None }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_work: u64::MAX, deadline: None }
    }

    pub fn with_max_work(max_work: u64) -> Self {
        Budget { max_work, deadline: None }
    }

    pub fn with_seconds(mut self, secs: f64) -> Self {
        self.deadline = Some(Instant::now() + Duration::from_secs_f64(secs));
        self
    }

    /// Default work cap plus an optional deadline read from `POLYTAB_BUDGET_SECS`.
    pub fn from_env() -> Result<Self> {
        let budget = Budget::default();
        match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                let secs: f64 = v
                    .trim()
                    .parse()
                    .ok()
                    .filter(|s: &f64| s.is_finite() && *s > 0.0)
                    .ok_or_else(|| Error::Invalid(format!("{BUDGET_ENV}={v} is not a positive number")))?;
                Ok(budget.with_seconds(secs))
            }
            Err(_) => Ok(budget),
        }
    }

    /// Refuses up front when the estimated work exceeds the cap.
    pub fn check_work(&self, estimate: u64, what: &str) -> Result<()> {
        if estimate > self.max_work {
            return Err(Error::Budget(format!(
                "{what} needs about {estimate} steps, above the limit of {}",
                self.max_work
            )));
        }
        Ok(())
    }

    pub fn check_time(&self, what: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget(format!("{what} exceeded the time limit"))),
            _ => Ok(()),
        }
    }
}
