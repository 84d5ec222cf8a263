use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Search limits. Exceeding either one is reported distinctly from a negative answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        time_limit: None,
    };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            max_nodes: None,
            time_limit: Some(limit),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::UNLIMITED
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exhausted {
    Nodes,
    Time,
}

/// Counts search nodes against a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    started: Instant,
    pub(crate) nodes: u64,
    tripped: Option<Exhausted>,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            budget,
            started: Instant::now(),
            nodes: 0,
            tripped: None,
        }
    }

    /// Records one node; `Err` once the budget is spent.
    pub(crate) fn tick(&mut self) -> Result<(), Exhausted> {
        if let Some(t) = self.tripped {
            return Err(t);
        }
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|max| self.nodes > max) {
            self.tripped = Some(Exhausted::Nodes);
            return Err(Exhausted::Nodes);
        }
        if self.nodes % 1024 == 1 {
            if let Some(limit) = self.budget.time_limit {
                if self.started.elapsed() > limit {
                    self.tripped = Some(Exhausted::Time);
                    return Err(Exhausted::Time);
                }
            }
        }
        Ok(())
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}
