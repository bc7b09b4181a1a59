//! The general-purpose engine: counting and inversion for any
//! context-adaptive scheme.
//!
//! Everything rests on two refinement steps over [`RangeX`] values:
//! splitting `R(x)` into the per-symbol child ranges `R(x·c)` using the
//! permutation of `x`, and computing `R*(x_1…x_m)` from `R*(x_1…x_{m-1})`
//! and `R*(x_2…x_m)` by counting occurrences of `x_1` inside the child
//! ranges of the latter. Counting a pattern fills a triangular table of
//! `R*` values over its substrings — two evaluation orders are provided,
//! which must agree — and inversion grows one diagonal of that table per
//! recovered symbol.

use crate::alphabet::{Permutation, Sym};
use crate::engine::{Range, RangeX};
use crate::rank::IndexedSequence;
use crate::scheme::OrderingScheme;
use crate::Error;

/// Per-symbol first-row table: `R(c)` for every symbol, from the symbol
/// counts laid out in `pi` order.
pub(crate) fn first_row_table(seq: &IndexedSequence, pi: &Permutation) -> Vec<Range> {
    let sigma = seq.sigma();
    let mut table = vec![Range::EMPTY; sigma];
    let mut b = 1usize;
    for pos in 0..sigma {
        let c = pi.symbol_at(pos);
        let len = seq.count(c);
        table[c as usize] = Range::new(b, len);
        b += len;
    }
    table
}

/// Child ranges `R(x·c_i)` of `R*(x)` for all symbols, ordered inside
/// `R(x)` by the permutation of `x`; indexed by symbol rank.
pub fn child_ranges(rx: &RangeX, pi: &Permutation) -> Vec<Range> {
    let sigma = rx.counts.len();
    let mut out = vec![Range::EMPTY; sigma];
    if rx.is_empty() {
        return out;
    }
    let mut b = rx.b;
    for pos in 0..sigma {
        let c = pi.symbol_at(pos);
        let len = rx.counts[c as usize];
        out[c as usize] = Range::new(b, len);
        b += len;
    }
    out
}

/// Just `R(x·c)` of `R*(x)`, without materializing the siblings.
pub fn child_range(rx: &RangeX, pi: &Permutation, c: Sym) -> Range {
    if rx.is_empty() {
        return Range::EMPTY;
    }
    let target = pi.position(c);
    let mut b = rx.b;
    for pos in 0..target {
        b += rx.counts[pi.symbol_at(pos) as usize];
    }
    Range::new(b, rx.counts[c as usize])
}

/// One refinement step: `R*(x_1…x_m)` from `R*(x_1…x_{m-1})` (`left`,
/// resolved to `pi_left`) and `R*(x_2…x_m)` (`right`, resolved to
/// `pi_right`), where `first = x_1` and `last = x_m`.
///
/// Inputs are trusted to describe the same matrix; inconsistent inputs
/// produce garbage, not errors.
pub fn extend(
    left: &RangeX,
    pi_left: &Permutation,
    right: &RangeX,
    pi_right: &Permutation,
    first: Sym,
    last: Sym,
    seq: &IndexedSequence,
) -> RangeX {
    let sigma = left.counts.len();
    let target = child_range(left, pi_left, last);
    if target.is_empty() {
        return RangeX::empty(sigma);
    }
    let right_children = child_ranges(right, pi_right);
    let counts: Vec<usize> = right_children
        .iter()
        .map(|r| {
            if r.is_empty() {
                0
            } else {
                seq.occ(first, r.b, r.end())
            }
        })
        .collect();
    let rx = RangeX {
        b: target.b,
        counts,
    };
    // On a well-formed transform the per-symbol counts always add up to the
    // target length; a mismatch means (L, I) lies about the matrix, and an
    // empty result routes the caller into invalid-transform detection.
    if rx.is_empty() || rx.total() != target.len {
        RangeX::empty(sigma)
    } else {
        rx
    }
}

/// Symbol at position `|x|+1` of row `i`, given `R*(x)` and the permutation
/// of `x`. `i` must lie inside `R(x)`.
pub fn next_char(rx: &RangeX, pi: &Permutation, i: usize) -> Result<Sym, Error> {
    let total = rx.total();
    if total == 0 || i < rx.b || i >= rx.b + total {
        return Err(Error::OutOfRange {
            index: i,
            n: rx.b + total,
        });
    }
    let mut b = rx.b;
    for pos in 0..rx.counts.len() {
        let c = pi.symbol_at(pos);
        b += rx.counts[c as usize];
        if i < b {
            return Ok(c);
        }
    }
    unreachable!("row inside R(x) but outside every child")
}

/// Transformed string indexed for counting and inversion under an arbitrary
/// context-adaptive scheme.
pub struct GeneralIndex<'a> {
    seq: IndexedSequence,
    primary: usize,
    scheme: &'a OrderingScheme,
    first_rows: Vec<Range>,
}

impl<'a> GeneralIndex<'a> {
    pub fn new(l: &[Sym], primary: usize, scheme: &'a OrderingScheme) -> Result<Self, Error> {
        let seq = IndexedSequence::index(l, scheme.sigma())?;
        let n = seq.len();
        if n == 0 {
            return Err(Error::InvalidTransform("transform payload is empty"));
        }
        if primary < 1 || primary > n {
            return Err(Error::OutOfRange { index: primary, n });
        }
        let first_rows = first_row_table(&seq, scheme.resolve_unchecked(&[]));
        Ok(GeneralIndex {
            seq,
            primary,
            scheme,
            first_rows,
        })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn primary(&self) -> usize {
        self.primary
    }

    pub fn scheme(&self) -> &OrderingScheme {
        self.scheme
    }

    pub fn seq(&self) -> &IndexedSequence {
        &self.seq
    }

    /// `R(c)` for every symbol.
    pub fn first_rows(&self) -> &[Range] {
        &self.first_rows
    }

    /// `R*(c)` for a single symbol: the base of every refinement chain.
    pub fn base_range_x(&self, c: Sym) -> RangeX {
        let sigma = self.seq.sigma();
        let r = self.first_rows[c as usize];
        if r.is_empty() {
            return RangeX::empty(sigma);
        }
        let counts = (0..sigma)
            .map(|i| {
                let ri = self.first_rows[i];
                if ri.is_empty() {
                    0
                } else {
                    self.seq.occ(c, ri.b, ri.end())
                }
            })
            .collect();
        RangeX { b: r.b, counts }
    }

    /// Range of rows prefixed by `x`, filled bottom-up row by row (a
    /// backward search over ever longer pattern suffixes).
    pub fn count(&self, x: &[Sym]) -> Result<Range, Error> {
        self.scheme.alphabet().check_syms(x)?;
        let p = x.len();
        if p == 0 {
            return Ok(Range::new(1, self.len()));
        }
        // prev[t] = R*(x[i+1 ..= i+1+t]) from the row below
        let mut prev: Vec<RangeX> = vec![self.base_range_x(x[p - 1])];
        for i in (0..p - 1).rev() {
            let mut row: Vec<RangeX> = Vec::with_capacity(p - i);
            row.push(self.base_range_x(x[i]));
            for j in i + 1..p {
                let ext = {
                    let left = &row[j - 1 - i];
                    let right = &prev[j - 1 - i];
                    let pi_left = self.scheme.resolve_unchecked(&x[i..j]);
                    let pi_right = self.scheme.resolve_unchecked(&x[i + 1..j + 1]);
                    extend(left, pi_left, right, pi_right, x[i], x[j], &self.seq)
                };
                row.push(ext);
            }
            prev = row;
        }
        Ok(prev.last().unwrap().range())
    }

    /// Same result as [`count`](Self::count) but evaluated top-down,
    /// diagonal by diagonal: after step `j` the head of the diagonal is
    /// `R*(x_1…x_j)`.
    pub fn count_forward(&self, x: &[Sym]) -> Result<Range, Error> {
        self.scheme.alphabet().check_syms(x)?;
        let p = x.len();
        if p == 0 {
            return Ok(Range::new(1, self.len()));
        }
        // diag[i] = R*(x[i ..= j]) after processing end index j
        let mut diag: Vec<RangeX> = vec![self.base_range_x(x[0])];
        for j in 1..p {
            let mut next_rev: Vec<RangeX> = Vec::with_capacity(j + 1);
            next_rev.push(self.base_range_x(x[j]));
            for i in (0..j).rev() {
                let ext = {
                    let left = &diag[i];
                    let right = next_rev.last().unwrap();
                    let pi_left = self.scheme.resolve_unchecked(&x[i..j]);
                    let pi_right = self.scheme.resolve_unchecked(&x[i + 1..j + 1]);
                    extend(left, pi_left, right, pi_right, x[i], x[j], &self.seq)
                };
                next_rev.push(ext);
            }
            next_rev.reverse();
            diag = next_rev;
        }
        Ok(diag[0].range())
    }
}

/// Recover the original string from `(L, I)` under any scheme, maintaining
/// `R*` values for every suffix of the recovered prefix (one triangular
/// diagonal per recovered symbol).
pub fn invert(l: &[Sym], primary: usize, scheme: &OrderingScheme) -> Result<Vec<Sym>, Error> {
    let idx = GeneralIndex::new(l, primary, scheme)?;
    let n = idx.len();
    let s1 = idx
        .first_rows
        .iter()
        .position(|r| r.contains(primary))
        .expect("first rows partition [1, n]") as Sym;
    let mut s: Vec<Sym> = vec![s1];
    let mut diag: Vec<RangeX> = vec![idx.base_range_x(s1)];
    for m in 1..n {
        let pi = scheme.resolve_unchecked(&s[..m]);
        let c = next_char(&diag[0], pi, primary)
            .map_err(|_| Error::InvalidTransform("primary row fell outside its range"))?;
        s.push(c);
        let mut next_rev: Vec<RangeX> = Vec::with_capacity(m + 1);
        next_rev.push(idx.base_range_x(c));
        for j in (0..m).rev() {
            let ext = {
                let left = &diag[j];
                let right = next_rev.last().unwrap();
                let pi_left = scheme.resolve_unchecked(&s[j..m]);
                let pi_right = scheme.resolve_unchecked(&s[j + 1..m + 1]);
                extend(left, pi_left, right, pi_right, s[j], c, &idx.seq)
            };
            next_rev.push(ext);
        }
        next_rev.reverse();
        diag = next_rev;
    }
    let full = diag[0].range();
    if full.b != primary || full.len != 1 {
        return Err(Error::InvalidTransform(
            "recovered string does not sort back to the primary row",
        ));
    }
    Ok(s)
}
