//! The local engine: order-`k` schemes, where the permutation of a context
//! depends only on its last `k` symbols.
//!
//! Locality buys an order-preserving bijection between the rows prefixed by
//! `x_1…x_{k+1}` and the rows prefixed by `x_2…x_{k+1}` that end in `x_1`.
//! After tabulating `R(y)` for every string `y` with `|y| <= k+1`
//! (`O(σ^{k+1})` preprocessing), one backward-search step is two rank
//! queries, a full pattern count is `O(p)`, a circular right shift of any
//! row is `O(1)`, and inversion walks the text in `O(σ^{k+1} + n)`.
//!
//! The same bijection yields the toehold: while searching backward we
//! maintain the text position of the last row of the current range, reading
//! it either by decrementing (when the extending symbol ends the range's
//! window of `L`) or from a sample stored at the end of each run of `L`.

use crate::alphabet::Sym;
use crate::engine::{general::first_row_table, Range};
use crate::rank::IndexedSequence;
use crate::scheme::OrderingScheme;
use crate::Error;

/// Default cap on the number of base-range table entries.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 24;

const NO_SAMPLE: u32 = u32::MAX;

/// Run-boundary samples enabling locate.
#[derive(Debug)]
struct Toehold {
    /// Text position of `L[q]` for every run-end position `q`; `NO_SAMPLE`
    /// elsewhere. Indexed 1-based.
    marked: Vec<u32>,
    /// Start position of the last row prefixed by each length-`k` context.
    last_row_pos: Vec<u32>,
}

/// Transformed string indexed for local-scheme queries.
pub struct LocalIndex<'a> {
    seq: IndexedSequence,
    primary: usize,
    scheme: &'a OrderingScheme,
    k: usize,
    sigma: usize,
    /// `tables[l-1][code(y)] = R(y)` for every symbol string `y` of length
    /// `l`, `1 <= l <= k+1`; codes are radix-σ, first symbol most
    /// significant.
    tables: Vec<Vec<Range>>,
    /// `occ_before[code(y)*σ + c] = rank_c(L, b_y - 1)` for `|y| = k`.
    occ_before: Vec<usize>,
    /// Code of the length-`k` circular prefix of each row (1-based rows).
    ctx_of_row: Vec<u32>,
    toehold: Option<Toehold>,
}

impl<'a> LocalIndex<'a> {
    /// Build the index with the default table cap. Requires a local scheme.
    pub fn new(l: &[Sym], primary: usize, scheme: &'a OrderingScheme) -> Result<Self, Error> {
        Self::with_cap(l, primary, scheme, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(
        l: &[Sym],
        primary: usize,
        scheme: &'a OrderingScheme,
        cap: u64,
    ) -> Result<Self, Error> {
        let k = scheme
            .local_k()
            .ok_or(Error::SchemeKind { expected: "local" })?;
        let sigma = scheme.sigma();
        let mut entries: u128 = 0;
        let mut level_size: u128 = 1;
        for _ in 0..=k {
            level_size *= sigma as u128;
            entries += level_size;
        }
        if entries > cap as u128 {
            return Err(Error::TableCap { entries, cap });
        }

        let seq = IndexedSequence::index(l, sigma)?;
        let n = seq.len();
        if n == 0 {
            return Err(Error::InvalidTransform("transform payload is empty"));
        }
        if primary < 1 || primary > n {
            return Err(Error::OutOfRange { index: primary, n });
        }

        // Level 1 is the per-symbol first-row table; level l+1 splits each
        // R(y) into children ordered by pi_y, with child sizes counted as
        // occurrences of y's first symbol inside R(y[1..]·c).
        let mut tables: Vec<Vec<Range>> = Vec::with_capacity(k + 1);
        tables.push(first_row_table(&seq, scheme.resolve_unchecked(&[])));
        let mut ctx_buf = vec![0 as Sym; k + 1];
        for l in 1..=k {
            let level_len = sigma.pow(l as u32);
            let below = sigma.pow((l - 1) as u32);
            let mut next = vec![Range::EMPTY; level_len * sigma];
            let mut sizes = vec![0usize; sigma];
            for code in 0..level_len {
                let ry = tables[l - 1][code];
                if ry.is_empty() {
                    continue;
                }
                decode_ctx(code, sigma, &mut ctx_buf[..l]);
                let first_sym = ctx_buf[0];
                let shift_base = (code % below) * sigma;
                for (c, size) in sizes.iter_mut().enumerate() {
                    let sub = tables[l - 1][shift_base + c];
                    *size = if sub.is_empty() {
                        0
                    } else {
                        seq.occ(first_sym, sub.b, sub.end())
                    };
                }
                let pi = scheme.resolve_unchecked(&ctx_buf[..l]);
                let mut b = ry.b;
                for pos in 0..sigma {
                    let c = pi.symbol_at(pos) as usize;
                    if sizes[c] > 0 {
                        next[code * sigma + c] = Range::new(b, sizes[c]);
                        b += sizes[c];
                    }
                }
                if b != ry.b + ry.len {
                    return Err(Error::InvalidTransform(
                        "child counts disagree with the parent range",
                    ));
                }
            }
            tables.push(next);
        }

        let level_k = &tables[k - 1];
        let mut occ_before = vec![0usize; level_k.len() * sigma];
        for (code, r) in level_k.iter().enumerate() {
            if !r.is_empty() {
                for c in 0..sigma {
                    occ_before[code * sigma + c] = seq.rank(c as Sym, r.b - 1);
                }
            }
        }

        let mut ctx_of_row = vec![0u32; n + 1];
        for (code, r) in level_k.iter().enumerate() {
            if !r.is_empty() {
                ctx_of_row[r.b..=r.end()].fill(code as u32);
            }
        }

        Ok(LocalIndex {
            seq,
            primary,
            scheme,
            k,
            sigma,
            tables,
            occ_before,
            ctx_of_row,
            toehold: None,
        })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn primary(&self) -> usize {
        self.primary
    }

    pub fn seq(&self) -> &IndexedSequence {
        &self.seq
    }

    /// Rank queries issued so far by this index's sequence.
    pub fn rank_calls(&self) -> u64 {
        self.seq.rank_calls()
    }

    pub fn reset_rank_calls(&self) {
        self.seq.reset_rank_calls()
    }

    fn ctx_code(&self, y: &[Sym]) -> usize {
        y.iter()
            .fold(0usize, |acc, &c| acc * self.sigma + c as usize)
    }

    /// Table lookup of `R(y)` for `1 <= |y| <= k+1`.
    pub fn table_range(&self, y: &[Sym]) -> Range {
        debug_assert!(!y.is_empty() && y.len() <= self.k + 1);
        self.tables[y.len() - 1][self.ctx_code(y)]
    }

    fn first_symbol_of_row(&self, row: usize) -> Sym {
        let code = self.ctx_of_row[row] as usize;
        (code / self.sigma.pow((self.k - 1) as u32)) as Sym
    }

    /// One backward-search step: from `R(x_2…x_m)` (whose string must have
    /// length at least `k`) to `R(x_1 x_2…x_m)` with `c = x_1`. Two rank
    /// queries.
    pub fn backward_extend(&self, r_suffix: Range, c: Sym) -> Range {
        if r_suffix.is_empty() {
            return Range::EMPTY;
        }
        let ycode = self.ctx_of_row[r_suffix.b] as usize;
        let before = self.seq.rank(c, r_suffix.b - 1);
        let h = self.seq.rank(c, r_suffix.end()) - before;
        if h == 0 {
            return Range::EMPTY;
        }
        let r = before - self.occ_before[ycode * self.sigma + c as usize];
        let target = self.tables[self.k][c as usize * self.sigma.pow(self.k as u32) + ycode];
        if target.is_empty() {
            return Range::EMPTY;
        }
        Range::new(target.b + r, h)
    }

    /// Range of rows prefixed by `x`: a table lookup for `|x| <= k+1`, then
    /// one backward step per remaining symbol — `2(p-k-1)` rank queries.
    pub fn count(&self, x: &[Sym]) -> Result<Range, Error> {
        self.scheme.alphabet().check_syms(x)?;
        let p = x.len();
        if p == 0 {
            return Ok(Range::new(1, self.len()));
        }
        if p <= self.k + 1 {
            return Ok(self.table_range(x));
        }
        let mut cur = self.table_range(&x[p - self.k - 1..]);
        for i in (0..p - self.k - 1).rev() {
            if cur.is_empty() {
                return Ok(Range::EMPTY);
            }
            cur = self.backward_extend(cur, x[i]);
        }
        Ok(cur)
    }

    /// Index of the row holding row `i` rotated right by one position.
    pub fn step_right(&self, i: usize) -> Result<usize, Error> {
        let n = self.len();
        if i < 1 || i > n {
            return Err(Error::OutOfRange { index: i, n });
        }
        let c = self.seq.access(i);
        let ycode = self.ctx_of_row[i] as usize;
        let r = self.seq.rank(c, i - 1) - self.occ_before[ycode * self.sigma + c as usize];
        let target = self.tables[self.k][c as usize * self.sigma.pow(self.k as u32) + ycode];
        if target.is_empty() || r >= target.len {
            return Err(Error::InvalidTransform("right shift left the table"));
        }
        Ok(target.b + r)
    }

    /// Recover the text by walking `n` right shifts from the primary row,
    /// reading each row's first symbol.
    pub fn invert(&self) -> Result<Vec<Sym>, Error> {
        let n = self.len();
        let mut out = vec![0 as Sym; n];
        out[0] = self.first_symbol_of_row(self.primary);
        let mut cur = self.primary;
        for p in (1..n).rev() {
            cur = self.step_right(cur)?;
            out[p] = self.first_symbol_of_row(cur);
        }
        if self.step_right(cur)? != self.primary {
            return Err(Error::InvalidTransform(
                "right-shift walk does not close its cycle",
            ));
        }
        Ok(out)
    }

    /// Build the locate samples: text positions for every run-end of `L`
    /// and for the last row of every length-`k` context. One `O(n)` walk.
    pub fn enable_toehold(&mut self) -> Result<(), Error> {
        let n = self.len();
        let mut start_of = vec![0u32; n + 1];
        let mut cur = self.primary;
        let mut pos = 1usize;
        for _ in 0..n {
            if start_of[cur] != 0 {
                return Err(Error::InvalidTransform("right-shift walk revisited a row"));
            }
            start_of[cur] = pos as u32;
            cur = self.step_right(cur)?;
            pos = if pos == 1 { n } else { pos - 1 };
        }
        if cur != self.primary {
            return Err(Error::InvalidTransform(
                "right-shift walk does not close its cycle",
            ));
        }
        let mut marked = vec![NO_SAMPLE; n + 1];
        for q in 1..=n {
            let run_end = q == n || self.seq.access(q) != self.seq.access(q + 1);
            if run_end {
                // position of the character L[q] itself: one left of the
                // row start, circularly
                let start = start_of[q] as usize;
                marked[q] = (if start >= 2 { start - 1 } else { n }) as u32;
            }
        }
        let level_k = &self.tables[self.k - 1];
        let mut last_row_pos = vec![NO_SAMPLE; level_k.len()];
        for (code, r) in level_k.iter().enumerate() {
            if !r.is_empty() {
                last_row_pos[code] = start_of[r.end()];
            }
        }
        self.toehold = Some(Toehold {
            marked,
            last_row_pos,
        });
        Ok(())
    }

    pub fn has_toehold(&self) -> bool {
        self.toehold.is_some()
    }

    fn toehold(&self) -> &Toehold {
        self.toehold
            .as_ref()
            .expect("enable_toehold before locate queries")
    }

    /// Marked run-end samples as `(L position, text position)` pairs.
    pub fn marked_samples(&self) -> Vec<(usize, usize)> {
        let toe = self.toehold();
        toe.marked
            .iter()
            .enumerate()
            .filter(|&(_, &p)| p != NO_SAMPLE)
            .map(|(q, &p)| (q, p as usize))
            .collect()
    }

    /// Start position of the last row prefixed by a length-`k` context.
    pub fn last_row_sample(&self, ctx: &[Sym]) -> Option<usize> {
        assert_eq!(ctx.len(), self.k, "sample contexts have length k");
        let toe = self.toehold();
        let p = toe.last_row_pos[self.ctx_code(ctx)];
        (p != NO_SAMPLE).then_some(p as usize)
    }

    /// Count `x` and report the text position of the *last* row of the
    /// range. Patterns shorter than `k` are counted without a position.
    /// Requires toehold samples.
    pub fn count_and_locate(&self, x: &[Sym]) -> Result<(Range, Option<usize>), Error> {
        self.scheme.alphabet().check_syms(x)?;
        let toe = self.toehold();
        let p = x.len();
        let n = self.len();
        if p < self.k {
            return Ok((self.count(x)?, None));
        }
        let base_code = self.ctx_code(&x[p - self.k..]);
        let mut range = self.tables[self.k - 1][base_code];
        if range.is_empty() {
            return Ok((Range::EMPTY, None));
        }
        let mut pos = toe.last_row_pos[base_code] as usize;
        for i in (0..p - self.k).rev() {
            let c = x[i];
            let end = range.end();
            let new_pos = if self.seq.access(end) == c {
                if pos == 1 {
                    n
                } else {
                    pos - 1
                }
            } else {
                let cnt = self.seq.rank(c, end);
                if cnt == 0 {
                    return Ok((Range::EMPTY, None));
                }
                let q = self.seq.select(c, cnt);
                if q < range.b {
                    return Ok((Range::EMPTY, None));
                }
                let m = toe.marked[q];
                if m == NO_SAMPLE {
                    return Err(Error::InvalidTransform(
                        "last in-range occurrence is not a run end",
                    ));
                }
                m as usize
            };
            range = self.backward_extend(range, c);
            if range.is_empty() {
                return Ok((Range::EMPTY, None));
            }
            pos = new_pos;
        }
        Ok((range, Some(pos)))
    }

    /// Text position of an arbitrary row: right-shift until a sampled row
    /// (or the primary row) pins the walk down. `O(n)` worst case, the gap
    /// to the next run boundary in practice. Requires toehold samples.
    pub fn occurrence_position(&self, row: usize) -> Result<usize, Error> {
        let n = self.len();
        if row < 1 || row > n {
            return Err(Error::OutOfRange { index: row, n });
        }
        let toe = self.toehold();
        let mut cur = row;
        let mut steps = 0usize;
        loop {
            if cur == self.primary {
                return Ok(steps % n + 1);
            }
            if toe.marked[cur] != NO_SAMPLE {
                let start = toe.marked[cur] as usize % n + 1;
                return Ok((start - 1 + steps) % n + 1);
            }
            cur = self.step_right(cur)?;
            steps += 1;
            if steps > n {
                return Err(Error::InvalidTransform(
                    "right-shift walk does not close its cycle",
                ));
            }
        }
    }
}

fn decode_ctx(code: usize, sigma: usize, out: &mut [Sym]) {
    let mut rest = code;
    for slot in out.iter_mut().rev() {
        *slot = (rest % sigma) as Sym;
        rest /= sigma;
    }
}

/// Recover the original string from `(L, I)` under a local scheme.
pub fn invert_local(l: &[Sym], primary: usize, scheme: &OrderingScheme) -> Result<Vec<Sym>, Error> {
    LocalIndex::new(l, primary, scheme)?.invert()
}
