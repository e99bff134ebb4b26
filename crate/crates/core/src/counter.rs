//! Thread-local counting of operations in the extension field.
//!
//! Counting is off by default. [`count_ops`] enables it for the duration of a
//! closure on the current thread and returns the tallies.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounts {
    pub mul: u64,
    pub add: u64,
    pub inv: u64,
    pub theta: u64,
    /// Largest bit length of any numerator or common denominator produced.
    pub max_coeff_bits: u64,
}

impl OpCounts {
    /// Total number of field operations (all classes weighted equally).
    pub fn total(&self) -> u64 {
        self.mul + self.add + self.inv + self.theta
    }

    pub fn merge(&mut self, other: &OpCounts) {
        self.mul += other.mul;
        self.add += other.add;
        self.inv += other.inv;
        self.theta += other.theta;
        self.max_coeff_bits = self.max_coeff_bits.max(other.max_coeff_bits);
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum OpKind {
    Mul,
    Add,
    Inv,
    Theta,
}

thread_local! {
    static ACTIVE: RefCell<Option<OpCounts>> = const { RefCell::new(None) };
}

#[cfg(test)]
pub(crate) fn is_counting() -> bool {
    ACTIVE.with(|c| c.borrow().is_some())
}

/// Records one operation. `bits` is only evaluated while counting is enabled.
pub(crate) fn record(kind: OpKind, bits: impl FnOnce() -> u64) {
    ACTIVE.with(|c| {
        if let Some(counts) = c.borrow_mut().as_mut() {
            match kind {
                OpKind::Mul => counts.mul += 1,
                OpKind::Add => counts.add += 1,
                OpKind::Inv => counts.inv += 1,
                OpKind::Theta => counts.theta += 1,
            }
            let b = bits();
            if b > counts.max_coeff_bits {
                counts.max_coeff_bits = b;
            }
        }
    });
}

/// Runs `f` with counting enabled and returns its result with the tallies.
/// Nested calls are supported; inner tallies are folded into the outer ones.
pub fn count_ops<T>(f: impl FnOnce() -> T) -> (T, OpCounts) {
    let saved = ACTIVE.with(|c| c.borrow_mut().replace(OpCounts::default()));
    let out = f();
    let counts = ACTIVE.with(|c| {
        let mut slot = c.borrow_mut();
        let counts = slot.take().unwrap_or_default();
        if let Some(mut outer) = saved {
            outer.merge(&counts);
            *slot = Some(outer);
        }
        counts
    });
    (out, counts)
}

/// Runs `f` with counting suspended on this thread.
#[cfg(test)]
pub(crate) fn uncounted<T>(f: impl FnOnce() -> T) -> T {
    let saved = ACTIVE.with(|c| c.borrow_mut().take());
    let out = f();
    ACTIVE.with(|c| *c.borrow_mut() = saved);
    out
}
