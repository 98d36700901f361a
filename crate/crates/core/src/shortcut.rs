//! Closed walks with vertex removal by shortcutting. Every removal checks
//! that the replacing edge is no heavier than the two edges it replaces.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

static CHECKS: AtomicU64 = AtomicU64::new(0);
static FAILURES: AtomicU64 = AtomicU64::new(0);

/// Process-wide count of shortcut checks performed and of checks that failed.
pub fn shortcut_stats() -> (u64, u64) {
    (CHECKS.load(Ordering::Relaxed), FAILURES.load(Ordering::Relaxed))
}

/// Check `w(prev,next) <= w(prev,apex) + w(apex,next)`.
pub fn check_shortcut(prev: usize, apex: usize, next: usize, w: impl Fn(usize, usize) -> u128) -> Result<()> {
    CHECKS.fetch_add(1, Ordering::Relaxed);
    if w(prev, next) > w(prev, apex) + w(apex, next) {
        FAILURES.fetch_add(1, Ordering::Relaxed);
        return Err(Error::ShortcutIncrease { prev, apex, next });
    }
    Ok(())
}

/// Cyclic walk stored as a doubly linked list over positions.
#[derive(Debug, Clone)]
pub struct Walk {
    verts: Vec<usize>,
    prev: Vec<usize>,
    next: Vec<usize>,
    alive: Vec<bool>,
    head: usize,
    len: usize,
}

impl Walk {
    pub fn new(order: Vec<usize>) -> Self {
        let k = order.len();
        Walk {
            prev: (0..k).map(|i| (i + k - 1) % k.max(1)).collect(),
            next: (0..k).map(|i| (i + 1) % k.max(1)).collect(),
            alive: vec![true; k],
            verts: order,
            head: 0,
            len: k,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn vertex(&self, pos: usize) -> usize {
        self.verts[pos]
    }

    /// Vertices before and after the live position `pos`.
    pub fn neighbours(&self, pos: usize) -> (usize, usize) {
        (self.verts[self.prev[pos]], self.verts[self.next[pos]])
    }

    /// Shortcut the live position `pos` after checking the weight condition.
    pub fn remove(&mut self, pos: usize, w: impl Fn(usize, usize) -> u128) -> Result<()> {
        debug_assert!(self.alive[pos]);
        if self.len < 2 {
            return Err(Error::Internal("shortcut on a walk of length < 2".into()));
        }
        let (p, n) = (self.prev[pos], self.next[pos]);
        check_shortcut(self.verts[p], self.verts[pos], self.verts[n], w)?;
        self.next[p] = n;
        self.prev[n] = p;
        self.alive[pos] = false;
        self.len -= 1;
        if self.head == pos {
            self.head = n;
        }
        Ok(())
    }

    /// Live positions in walk order.
    pub fn positions(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len);
        let mut p = self.head;
        for _ in 0..self.len {
            out.push(p);
            p = self.next[p];
        }
        out
    }

    pub fn order(&self) -> Vec<usize> {
        self.positions().into_iter().map(|p| self.verts[p]).collect()
    }

    /// Remove every repeat of a vertex accepted by `pick`, keeping the first
    /// appearance in walk order.
    pub fn drop_repeats(&mut self, mut pick: impl FnMut(usize) -> bool, w: impl Fn(usize, usize) -> u128) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for pos in self.positions() {
            let v = self.verts[pos];
            if pick(v) && !seen.insert(v) {
                self.remove(pos, &w)?;
            }
        }
        Ok(())
    }
}
