//! Cap on the work a single computation may do: S-pairs in a Buchberger run,
//! or minors in a determinantal expansion.
//! Exceeding it yields [`Error::Budget`](crate::Error::Budget).

use std::cell::Cell;
use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_BUDGET: usize = 200_000;

static BUDGET: AtomicUsize = AtomicUsize::new(0);

thread_local! {
    static LOCAL: Cell<usize> = const { Cell::new(0) };
}

/// Overrides the budget for the whole process; `0` restores the default lookup.
pub fn set_work_budget(pairs: usize) {
    BUDGET.store(pairs, Ordering::Relaxed);
}

/// Runs `f` with a budget that applies to the current thread only.
pub fn with_budget<T>(pairs: usize, f: impl FnOnce() -> T) -> T {
    let old = LOCAL.with(|c| c.replace(pairs));
    let out = f();
    LOCAL.with(|c| c.set(old));
    out
}

/// Thread override, else the process setting, else `SUPERTT_BUDGET`, else
/// [`DEFAULT_BUDGET`].
pub fn work_budget() -> usize {
    let local = LOCAL.with(|c| c.get());
    if local > 0 {
        return local;
    }
    match BUDGET.load(Ordering::Relaxed) {
        0 => {
            std::env::var("SUPERTT_BUDGET").ok().and_then(|s| s.trim().parse().ok()).filter(|&b| b > 0).unwrap_or(DEFAULT_BUDGET)
        }
        b => b,
    }
}
