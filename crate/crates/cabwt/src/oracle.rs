//! Ground-truth implementations by explicit rotation-matrix construction.
//!
//! Everything in this module is deliberately naive — rotations are compared
//! symbol by symbol, resolving the tie-breaking permutation at the first
//! mismatch — and shares no code with the suffix-structure or engine paths
//! it is used to validate. Comparison is `O(n)` per pair, so these
//! functions are meant for inputs up to a few thousand symbols.
//!
//! Unlike the fast paths, the oracle accepts any primitive string: the
//! terminator assumption is only needed for suffix-based construction.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BTreeMap;

use itertools::Itertools;

use crate::alphabet::{Alphabet, Sym};
use crate::engine::Range;
use crate::minruns::OrderingAssignment;
use crate::rank::run_count;
use crate::scheme::OrderingScheme;
use crate::suffix::TransformOutput;
use crate::Error;

/// Default cap on the number of child-ordering assignments
/// [`oracle_min_runs`] will enumerate.
pub const DEFAULT_MIN_RUNS_BUDGET: u64 = 10_000_000;

/// `true` when all cyclic rotations of `s` are distinct.
pub fn is_primitive(s: &[Sym]) -> bool {
    let n = s.len();
    if n == 0 {
        return false;
    }
    // smallest period via the KMP failure function
    let mut f = vec![0usize; n];
    for i in 1..n {
        let mut k = f[i - 1];
        while k > 0 && s[i] != s[k] {
            k = f[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        f[i] = k;
    }
    let period = n - f[n - 1];
    period == n || !n.is_multiple_of(period)
}

/// All cyclic rotations of a text, sorted under a context-adaptive scheme.
#[derive(Debug)]
pub struct RotationMatrix<'a> {
    text: &'a [Sym],
    /// 0-based rotation start of each sorted row.
    starts: Vec<u32>,
}

/// Sort all rotations of `s`: two rotations are ordered by comparing their
/// first mismatching symbols under the permutation of their common prefix.
pub fn sorted_rotation_matrix<'a>(
    s: &'a [Sym],
    scheme: &OrderingScheme,
) -> Result<RotationMatrix<'a>, Error> {
    scheme.alphabet().check_syms(s)?;
    if !is_primitive(s) {
        return Err(Error::NotPrimitive);
    }
    let n = s.len();
    let mut starts: Vec<u32> = (0..n as u32).collect();
    let ctx = RefCell::new(Vec::with_capacity(n));
    starts.sort_by(|&i, &j| {
        if i == j {
            return Ordering::Equal;
        }
        let mut ctx = ctx.borrow_mut();
        ctx.clear();
        for h in 0..n {
            let a = s[(i as usize + h) % n];
            let b = s[(j as usize + h) % n];
            if a != b {
                return scheme.resolve_unchecked(&ctx).compare(a, b);
            }
            ctx.push(a);
        }
        unreachable!("primitive strings have distinct rotations")
    });
    Ok(RotationMatrix { text: s, starts })
}

impl RotationMatrix<'_> {
    pub fn n(&self) -> usize {
        self.starts.len()
    }

    /// 1-based start position of the rotation in 1-based row `row`.
    pub fn row_start(&self, row: usize) -> usize {
        self.starts[row - 1] as usize + 1
    }

    /// 1-based row holding the rotation that starts at 1-based position
    /// `start`.
    pub fn row_of_start(&self, start: usize) -> usize {
        self.starts
            .iter()
            .position(|&p| p as usize + 1 == start)
            .expect("starts form a permutation")
            + 1
    }

    /// 1-based row holding the text itself.
    pub fn primary_row(&self) -> usize {
        self.row_of_start(1)
    }

    /// First `len` symbols of a row; rows repeat periodically past `n`.
    pub fn row_symbols(&self, row: usize, len: usize) -> Vec<Sym> {
        let n = self.n();
        let start = self.starts[row - 1] as usize;
        (0..len).map(|h| self.text[(start + h) % n]).collect()
    }

    fn row_has_prefix(&self, row: usize, x: &[Sym]) -> bool {
        let n = self.n();
        let start = self.starts[row - 1] as usize;
        x.iter()
            .enumerate()
            .all(|(h, &c)| self.text[(start + h) % n] == c)
    }

    /// Range of rows prefixed by `x`. Asserts the matching rows are
    /// contiguous, which is what makes ranges well-defined at all.
    pub fn range_of(&self, x: &[Sym]) -> Range {
        let n = self.n();
        let mut first = None;
        let mut count = 0;
        for row in 1..=n {
            if self.row_has_prefix(row, x) {
                if let Some(f) = first {
                    assert_eq!(f + count, row, "rows prefixed by {x:?} are not contiguous");
                } else {
                    first = Some(row);
                }
                count += 1;
            }
        }
        match first {
            Some(f) => Range::new(f, count),
            None => Range::EMPTY,
        }
    }

    /// Circular longest common prefix of rows `row` and `row + 1`.
    pub fn lcp_adjacent(&self, row: usize) -> usize {
        let n = self.n();
        let a = self.starts[row - 1] as usize;
        let b = self.starts[row] as usize;
        (0..n)
            .take_while(|&h| self.text[(a + h) % n] == self.text[(b + h) % n])
            .count()
    }

    /// Last symbol of every row.
    pub fn last_column(&self) -> Vec<Sym> {
        let n = self.n();
        self.starts
            .iter()
            .map(|&p| self.text[(p as usize + n - 1) % n])
            .collect()
    }
}

/// Transform by explicit matrix construction.
pub fn oracle_transform(s: &[Sym], scheme: &OrderingScheme) -> Result<TransformOutput, Error> {
    let m = sorted_rotation_matrix(s, scheme)?;
    Ok(TransformOutput {
        last_column: m.last_column(),
        primary: m.primary_row(),
    })
}

/// Range of rows prefixed by `x`, by scanning a freshly sorted matrix.
pub fn oracle_range(s: &[Sym], scheme: &OrderingScheme, x: &[Sym]) -> Result<Range, Error> {
    Ok(sorted_rotation_matrix(s, scheme)?.range_of(x))
}

/// The pair string over Σ²: `S[i] = (s[i], s[i+1])`, indices modulo `n`.
pub fn pair_string(s: &[Sym]) -> Vec<(Sym, Sym)> {
    let n = s.len();
    (0..n).map(|i| (s[i], s[(i + 1) % n])).collect()
}

/// The classic BWT of the pair string under the pair order induced by a
/// local k=1 scheme — first components ordered by `pi_eps`, ties broken by
/// `pi_{first}` on second components — projected back to first components.
/// Must equal [`oracle_transform`] under the same scheme.
pub fn pair_alphabet_bwt(s: &[Sym], scheme: &OrderingScheme) -> Result<TransformOutput, Error> {
    if scheme.local_k() != Some(1) {
        return Err(Error::SchemeKind {
            expected: "local k=1",
        });
    }
    scheme.alphabet().check_syms(s)?;
    if !is_primitive(s) {
        return Err(Error::NotPrimitive);
    }
    let n = s.len();
    let pairs = pair_string(s);
    let pi_eps = scheme.resolve_unchecked(&[]);
    let pi_of: Vec<_> = (0..scheme.sigma())
        .map(|c| scheme.resolve_unchecked(&[c as Sym]))
        .collect();
    let pair_cmp = |p: (Sym, Sym), q: (Sym, Sym)| -> Ordering {
        if p.0 != q.0 {
            pi_eps.compare(p.0, q.0)
        } else {
            pi_of[p.0 as usize].compare(p.1, q.1)
        }
    };
    let mut starts: Vec<u32> = (0..n as u32).collect();
    starts.sort_by(|&i, &j| {
        for h in 0..n {
            let p = pairs[(i as usize + h) % n];
            let q = pairs[(j as usize + h) % n];
            let ord = pair_cmp(p, q);
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    });
    let last_column = starts
        .iter()
        .map(|&p| pairs[(p as usize + n - 1) % n].0)
        .collect();
    let primary = starts.iter().position(|&p| p == 0).unwrap() + 1;
    Ok(TransformOutput {
        last_column,
        primary,
    })
}

/// Exhaustive run minimization: enumerate every assignment of child
/// orderings to the branching contexts of `s`, evaluate each induced
/// transform, and return the minimum run count with the first (hence
/// lexicographically smallest) witness.
///
/// Fails with [`Error::OracleBudget`] when the assignment space exceeds
/// `budget`.
pub fn oracle_min_runs(
    s: &[Sym],
    alphabet: &Alphabet,
    budget: u64,
) -> Result<(usize, OrderingAssignment), Error> {
    let standard = OrderingScheme::standard(alphabet.clone());
    let matrix = sorted_rotation_matrix(s, &standard)?;
    let n = matrix.n();

    // Branching contexts: circular LCPs of adjacent rows. The branching
    // symbols of a context are the distinct next symbols of the rows it
    // prefixes.
    let mut contexts: BTreeMap<Vec<Sym>, Vec<Sym>> = BTreeMap::new();
    for row in 1..n {
        let l = matrix.lcp_adjacent(row);
        contexts.entry(matrix.row_symbols(row, l)).or_default();
    }
    for (ctx, branching) in contexts.iter_mut() {
        let mut seen = vec![false; alphabet.size()];
        for row in 1..=n {
            if matrix.row_has_prefix(row, ctx) {
                seen[matrix.row_symbols(row, ctx.len() + 1)[ctx.len()] as usize] = true;
            }
        }
        *branching = (0..alphabet.size() as u8)
            .filter(|&c| seen[c as usize])
            .collect();
    }

    let ctx_list: Vec<(&Vec<Sym>, &Vec<Sym>)> = contexts.iter().collect();
    let mut total: u128 = 1;
    for (_, branching) in &ctx_list {
        total = total.saturating_mul((1..=branching.len() as u128).product());
        if total > budget as u128 {
            return Err(Error::OracleBudget {
                combinations: total,
                budget,
            });
        }
    }

    // All child orderings per context, lexicographically.
    let orders_per_ctx: Vec<Vec<Vec<Sym>>> = ctx_list
        .iter()
        .map(|(_, branching)| {
            branching
                .iter()
                .copied()
                .permutations(branching.len())
                .collect()
        })
        .collect();

    let mut best: Option<(usize, OrderingAssignment)> = None;
    let mut indices = vec![0usize; ctx_list.len()];
    loop {
        let assignment = OrderingAssignment {
            entries: ctx_list
                .iter()
                .enumerate()
                .map(|(pos, (ctx, _))| ((*ctx).clone(), orders_per_ctx[pos][indices[pos]].clone()))
                .collect(),
        };
        let scheme = assignment.to_scheme(alphabet)?;
        let out = oracle_transform(s, &scheme)?;
        let runs = run_count(&out.last_column);
        if best.as_ref().is_none_or(|(b, _)| runs < *b) {
            best = Some((runs, assignment));
        }
        // next mixed-radix index vector
        let mut pos = indices.len();
        loop {
            if pos == 0 {
                let (opt, witness) = best.unwrap();
                return Ok((opt, witness));
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < orders_per_ctx[pos].len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}
