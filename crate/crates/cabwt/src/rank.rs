//! Indexed symbol sequences with rank/select/access, plus run statistics.
//!
//! Rank directories are per-symbol block-sampled counts (block size 256):
//! constant-time queries at the scales this crate targets without the
//! machinery of a wavelet tree. Positions are 1-based throughout, matching
//! the row indices used everywhere else; `rank(c, 0)` is legal and returns 0
//! so callers can form `b - 1` uniformly.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::alphabet::Sym;
use crate::Error;

const BLOCK: usize = 256;

/// A symbol string indexed for `access`/`rank`/`select` queries.
///
/// Immutable after construction; queries are safe to run concurrently.
/// Every `rank` call bumps an internal counter so query budgets can be
/// asserted in tests.
#[derive(Debug)]
pub struct IndexedSequence {
    syms: Vec<Sym>,
    sigma: usize,
    counts: Vec<usize>,
    /// blocks[c * stride + b] = occurrences of c in the first b blocks.
    blocks: Vec<u32>,
    stride: usize,
    rank_calls: AtomicU64,
}

impl IndexedSequence {
    /// Index `seq` over an alphabet of `sigma` symbols.
    pub fn index(seq: &[Sym], sigma: usize) -> Result<Self, Error> {
        let n = seq.len();
        let stride = n / BLOCK + 1;
        let mut counts = vec![0usize; sigma];
        let mut blocks = vec![0u32; sigma * stride];
        for (i, &s) in seq.iter().enumerate() {
            if (s as usize) >= sigma {
                return Err(Error::InvalidSymbol {
                    sym: s as u32,
                    sigma,
                });
            }
            counts[s as usize] += 1;
            if (i + 1) % BLOCK == 0 {
                let b = (i + 1) / BLOCK;
                for c in 0..sigma {
                    blocks[c * stride + b] = counts[c] as u32;
                }
            }
        }
        // block prefix entries past the last full block
        for b in 1..stride {
            if b * BLOCK > n {
                for c in 0..sigma {
                    blocks[c * stride + b] = counts[c] as u32;
                }
            }
        }
        Ok(IndexedSequence {
            syms: seq.to_vec(),
            sigma,
            counts,
            blocks,
            stride,
            rank_calls: AtomicU64::new(0),
        })
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Total occurrences of `c`.
    pub fn count(&self, c: Sym) -> usize {
        self.counts[c as usize]
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.syms
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> Sym {
        assert!(
            i >= 1 && i <= self.len(),
            "access position {i} out of range"
        );
        self.syms[i - 1]
    }

    /// Occurrences of `c` in the first `i` positions (`0 <= i <= n`).
    pub fn rank(&self, c: Sym, i: usize) -> usize {
        assert!(i <= self.len(), "rank position {i} out of range");
        self.rank_calls.fetch_add(1, Ordering::Relaxed);
        let b = i / BLOCK;
        let mut r = self.blocks[c as usize * self.stride + b] as usize;
        for &s in &self.syms[b * BLOCK..i] {
            r += (s == c) as usize;
        }
        r
    }

    /// 1-based position of the `j`-th occurrence of `c` (`1 <= j <= count(c)`).
    pub fn select(&self, c: Sym, j: usize) -> usize {
        assert!(
            j >= 1 && j <= self.count(c),
            "select index {j} out of range for symbol {c}"
        );
        let row = &self.blocks[c as usize * self.stride..(c as usize + 1) * self.stride];
        // last block whose prefix count is < j
        let mut lo = 0usize;
        let mut hi = self.stride - 1;
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if (row[mid] as usize) < j {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let mut seen = row[lo] as usize;
        for (off, &s) in self.syms[lo * BLOCK..].iter().enumerate() {
            if s == c {
                seen += 1;
                if seen == j {
                    return lo * BLOCK + off + 1;
                }
            }
        }
        unreachable!("count table disagrees with payload")
    }

    /// Occurrences of `c` in positions `[i, j]` (1-based, inclusive);
    /// zero when the interval is empty. Issues two rank calls.
    pub fn occ(&self, c: Sym, i: usize, j: usize) -> usize {
        if i > j {
            return 0;
        }
        self.rank(c, j) - self.rank(c, i - 1)
    }

    /// Number of `rank` calls issued so far.
    pub fn rank_calls(&self) -> u64 {
        self.rank_calls.load(Ordering::Relaxed)
    }

    pub fn reset_rank_calls(&self) {
        self.rank_calls.store(0, Ordering::Relaxed);
    }
}

/// Number of maximal runs of equal symbols.
pub fn run_count(seq: &[Sym]) -> usize {
    let mut runs = 0;
    let mut prev = None;
    for &s in seq {
        if prev != Some(s) {
            runs += 1;
            prev = Some(s);
        }
    }
    runs
}
