use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

/// A limit on search effort: node count, wall time, or both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { nodes: None, time: None };

    pub fn nodes(n: u64) -> Budget {
        Budget { nodes: Some(n), time: None }
    }

    pub fn time(t: Duration) -> Budget {
        Budget { nodes: None, time: Some(t) }
    }

    pub fn seconds(s: u64) -> Budget {
        Budget::time(Duration::from_secs(s))
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            limit: self.nodes,
            deadline: self.time.map(|t| Instant::now() + t),
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
        }
    }
}

/// Shared node counter that trips once the budget is spent.
pub(crate) struct Meter {
    limit: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    stopped: AtomicBool,
}

impl Meter {
    /// Count one node; returns false once the budget is exhausted.
    pub fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.limit.is_some_and(|l| n > l) {
            self.stopped.store(true, Ordering::Relaxed);
        }
        if n & 1023 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stopped.store(true, Ordering::Relaxed);
        }
        !self.stopped.load(Ordering::Relaxed)
    }

    pub fn stopped(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}
