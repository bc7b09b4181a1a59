//! Counting and inversion engines over a transformed string.
//!
//! All three engines answer the same question — which sorted-matrix rows is
//! a pattern a prefix of — from the last column `L`, the primary index and
//! the ordering scheme alone:
//!
//! - [`general`]: any scheme, `O(σp²)` counting and `O(σn²)` inversion via
//!   ranges refined per extension symbol.
//! - [`pm`]: ± schemes, `O(p²)` counting and `O(n²)` inversion on plain
//!   ranges.
//! - [`local`]: local schemes, `O(p)` counting after `O(σ^{k+1})`
//!   preprocessing, constant-time right shifts, linear inversion, and
//!   toehold locate.

pub mod general;
pub mod local;
pub mod pm;

pub use general::GeneralIndex;
pub use local::LocalIndex;
pub use pm::PmIndex;

/// A contiguous interval of sorted-matrix rows: 1-based first row `b` and
/// row count `len`. The empty range is canonically `[0, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub b: usize,
    pub len: usize,
}

impl Range {
    pub const EMPTY: Range = Range { b: 0, len: 0 };

    /// Canonicalizing constructor: zero-length ranges collapse to `[0, 0]`.
    pub fn new(b: usize, len: usize) -> Range {
        if len == 0 {
            Range::EMPTY
        } else {
            Range { b, len }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Last row of the range. Meaningless for empty ranges.
    pub fn end(&self) -> usize {
        debug_assert!(!self.is_empty());
        self.b + self.len - 1
    }

    pub fn contains(&self, row: usize) -> bool {
        !self.is_empty() && row >= self.b && row <= self.end()
    }
}

/// A range refined by extension symbol: `counts[c]` rows are prefixed by
/// `x·c`, with counts always stored in standard alphabet order. The order
/// the per-symbol blocks actually appear in within `R(x)` is decided by the
/// permutation of `x`, applied on the way out (in [`general::child_ranges`]
/// and [`general::next_char`]) rather than baked into the storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeX {
    pub b: usize,
    pub counts: Vec<usize>,
}

impl RangeX {
    pub fn empty(sigma: usize) -> RangeX {
        RangeX {
            b: 0,
            counts: vec![0; sigma],
        }
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Collapse to the plain range `R(x)`.
    pub fn range(&self) -> Range {
        Range::new(self.b, self.total())
    }
}
