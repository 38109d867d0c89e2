use alloc::format;

use serde::Serialize;

use crate::error::{Error, Result};

/// Monotonic millisecond clock supplied by the host. The core has no notion
/// of time on its own.
pub type Clock = fn() -> u64;

/// How much work a solver may spend.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Budget {
    pub max_evaluations: u64,
    /// Wall-clock cap. Only honoured when a clock is attached.
    pub max_millis: Option<u64>,
    #[serde(skip)]
    pub clock: Option<Clock>,
}

impl Budget {
    pub fn new(max_evaluations: u64) -> Result<Self> {
        if max_evaluations == 0 {
            return Err(Error::InvalidParams("max_evaluations must be positive".into()));
        }
        Ok(Budget { max_evaluations, max_millis: None, clock: None })
    }

    /// Attaches a clock used for elapsed-time reporting and, if given, a
    /// wall-clock cap.
    pub fn with_clock(mut self, clock: Clock, max_millis: Option<u64>) -> Self {
        self.clock = Some(clock);
        self.max_millis = max_millis;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.max_evaluations == 0 {
            return Err(Error::InvalidParams(format!(
                "max_evaluations must be positive, got {}",
                self.max_evaluations
            )));
        }
        Ok(())
    }
}

/// Evaluation accounting for one solver run.
#[derive(Debug)]
pub(crate) struct Meter {
    max: u64,
    used: u64,
    clock: Option<Clock>,
    started: u64,
    deadline: Option<u64>,
    timed_out: bool,
}

impl Meter {
    pub(crate) fn new(budget: &Budget) -> Self {
        let started = budget.clock.map_or(0, |c| c());
        Meter {
            max: budget.max_evaluations,
            used: 0,
            clock: budget.clock,
            started,
            deadline: budget.clock.and(budget.max_millis).map(|m| started.saturating_add(m)),
            timed_out: false,
        }
    }

    pub(crate) fn unlimited() -> Self {
        Meter { max: u64::MAX, used: 0, clock: None, started: 0, deadline: None, timed_out: false }
    }

    #[inline]
    pub(crate) fn charge(&mut self) {
        self.used += 1;
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    pub(crate) fn exhausted(&mut self) -> bool {
        if self.used >= self.max || self.timed_out {
            return true;
        }
        if let (Some(deadline), Some(clock)) = (self.deadline, self.clock) {
            if self.used.is_multiple_of(64) && clock() >= deadline {
                self.timed_out = true;
            }
        }
        self.timed_out
    }

    pub(crate) fn elapsed_millis(&self) -> u64 {
        self.clock.map_or(0, |c| c().saturating_sub(self.started))
    }
}
