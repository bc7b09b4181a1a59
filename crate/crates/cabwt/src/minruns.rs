//! Run minimization: the context-adaptive scheme whose transform has the
//! fewest runs of equal symbols.
//!
//! Only the orderings at branching contexts — internal suffix-tree nodes —
//! influence the output, so the search space is one child ordering per
//! internal node. A bottom-up dynamic program tabulates, for every node `v`
//! and symbol pair `(c_i, c_j)`, the minimal run count over feasible
//! leaf-symbol arrangements of `v`'s subtree starting with `c_i` and ending
//! with `c_j`; children combine by a min-plus recurrence that credits one
//! run when the seam symbols match. The optimum is the smallest root entry,
//! and a witness assignment falls out by replaying the recurrence.
//!
//! Per-node work grows with the factorial of the branching degree, so the
//! total is linear in the text length only for small fixed alphabets; the
//! default guard refuses alphabets above [`DEFAULT_SIGMA_CAP`]. All child
//! tables stay alive until their parent folds, `O(n σ²)` words at peak.

use itertools::Itertools;

use crate::alphabet::{Alphabet, Permutation, Sym};
use crate::scheme::OrderingScheme;
use crate::suffix::{Child, SuffixTreeView, TransformOutput};
use crate::Error;

/// Largest alphabet [`minimize`] accepts.
pub const DEFAULT_SIGMA_CAP: usize = 8;

const INF: u64 = u64::MAX / 4;

/// Per-node DP table: `rho(v, c_i, c_j)` with an infinity sentinel for
/// unreachable start/end pairs. A leaf's table is finite only on the
/// diagonal entry of its own symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDpTable {
    sigma: usize,
    vals: Vec<u64>,
}

impl RunDpTable {
    fn filled(sigma: usize, v: u64) -> Self {
        RunDpTable {
            sigma,
            vals: vec![v; sigma * sigma],
        }
    }

    /// Table of a leaf carrying symbol `c`: the single arrangement is the
    /// one-symbol string, one run.
    pub fn leaf(c: Sym, sigma: usize) -> Self {
        let mut t = Self::filled(sigma, INF);
        t.set(c, c, 1);
        t
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    fn raw(&self, i: Sym, j: Sym) -> u64 {
        self.vals[i as usize * self.sigma + j as usize]
    }

    fn set(&mut self, i: Sym, j: Sym, v: u64) {
        self.vals[i as usize * self.sigma + j as usize] = v;
    }

    /// Minimal run count over arrangements starting with `i` and ending
    /// with `j`, if any such arrangement is feasible.
    pub fn get(&self, i: Sym, j: Sym) -> Option<usize> {
        let v = self.raw(i, j);
        (v < INF).then_some(v as usize)
    }

    /// Smallest entry with its (first in standard order) start/end pair.
    pub fn min_entry(&self) -> Option<(usize, Sym, Sym)> {
        let mut best: Option<(usize, Sym, Sym)> = None;
        for i in 0..self.sigma as u8 {
            for j in 0..self.sigma as u8 {
                if let Some(v) = self.get(i, j) {
                    if best.is_none_or(|(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        best
    }
}

/// One min-plus step: arrangements of `left`'s subtrees followed by one
/// arrangement of `rho`, discounting a run when the seam symbols agree.
fn combine_step(left: &RunDpTable, rho: &RunDpTable) -> RunDpTable {
    let sigma = left.sigma;
    let mut out = RunDpTable::filled(sigma, INF);
    let mut colmin = vec![INF; sigma];
    for (m, slot) in colmin.iter_mut().enumerate() {
        for j in 0..sigma as u8 {
            *slot = (*slot).min(rho.raw(j, m as u8));
        }
    }
    for l in 0..sigma as u8 {
        for m in 0..sigma as u8 {
            let mut best = INF;
            for i in 0..sigma as u8 {
                let a = left.raw(l, i);
                if a >= INF {
                    continue;
                }
                let with_merge = match rho.raw(i, m) {
                    v if v >= INF => INF,
                    v => v - 1,
                };
                let b = colmin[m as usize].min(with_merge);
                if b >= INF {
                    continue;
                }
                best = best.min(a.saturating_add(b));
            }
            out.set(l, m, best);
        }
    }
    out
}

/// Fold an ordered sequence of child tables into the table of their
/// concatenation.
pub fn combine_children(tables: &[&RunDpTable]) -> RunDpTable {
    let mut acc = tables[0].clone();
    for t in &tables[1..] {
        acc = combine_step(&acc, t);
    }
    acc
}

/// Entrywise minimum of [`combine_children`] over every ordering of the
/// children.
pub fn node_table(children: &[&RunDpTable]) -> RunDpTable {
    let h = children.len();
    let sigma = children[0].sigma;
    let mut out = RunDpTable::filled(sigma, INF);
    for perm in (0..h).permutations(h) {
        let ordered: Vec<&RunDpTable> = perm.iter().map(|&i| children[i]).collect();
        let m = combine_children(&ordered);
        for idx in 0..out.vals.len() {
            out.vals[idx] = out.vals[idx].min(m.vals[idx]);
        }
    }
    out
}

/// A chosen child ordering (as branching symbols, left to right) for every
/// branching context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingAssignment {
    /// `(context, branching symbols in chosen order)`, sorted by context.
    pub entries: Vec<(Vec<Sym>, Vec<Sym>)>,
}

impl OrderingAssignment {
    /// Express the assignment as an explicit scheme: each child ordering
    /// extends to a full permutation by appending the remaining alphabet
    /// symbols in standard order; unmapped contexts use the standard order.
    pub fn to_scheme(&self, alphabet: &Alphabet) -> Result<OrderingScheme, Error> {
        let sigma = alphabet.size();
        let mut contexts = std::collections::HashMap::new();
        for (ctx, order) in &self.entries {
            contexts.insert(ctx.clone(), full_permutation(order, sigma)?);
        }
        OrderingScheme::explicit(alphabet.clone(), Permutation::identity(sigma), contexts)
    }
}

/// Extend a branching-symbol ordering to a whole-alphabet permutation.
pub fn full_permutation(branch_order: &[Sym], sigma: usize) -> Result<Permutation, Error> {
    let mut seen = vec![false; sigma];
    let mut order = Vec::with_capacity(sigma);
    for &c in branch_order {
        if (c as usize) >= sigma || seen[c as usize] {
            return Err(Error::InvalidSymbol {
                sym: c as u32,
                sigma,
            });
        }
        seen[c as usize] = true;
        order.push(c);
    }
    for (c, taken) in seen.iter().enumerate() {
        if !taken {
            order.push(c as Sym);
        }
    }
    Permutation::from_order(&order)
}

/// Result of [`minimize`]: the optimum, a witness assignment, and the
/// witness transform itself (whose run count equals `opt`).
#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub opt: usize,
    pub assignment: OrderingAssignment,
    pub output: TransformOutput,
}

/// Minimal run count over all context-adaptive transforms of `s`, which
/// must end with a unique terminator.
pub fn minimize(s: &[Sym], alphabet: &Alphabet) -> Result<MinimizeResult, Error> {
    minimize_with_cap(s, alphabet, DEFAULT_SIGMA_CAP)
}

pub fn minimize_with_cap(
    s: &[Sym],
    alphabet: &Alphabet,
    cap: usize,
) -> Result<MinimizeResult, Error> {
    let sigma = alphabet.size();
    if sigma > cap {
        return Err(Error::SigmaCap { sigma, cap });
    }
    let view = SuffixTreeView::build(s, sigma)?;

    let mut tables: Vec<RunDpTable> = Vec::with_capacity(view.node_count());
    for id in view.internal_nodes() {
        let kids = child_tables(&view, id, &tables, sigma);
        let refs: Vec<&RunDpTable> = kids.iter().collect();
        tables.push(node_table(&refs));
    }

    let root = view.root_id();
    let (opt, ci, cj) = tables[root].min_entry().expect("root has an arrangement");

    // Replay the recurrence top-down to pick, per node, the first child
    // ordering (children come lexicographically by edge symbol) achieving
    // the tabulated value.
    let mut entries: Vec<(Vec<Sym>, Vec<Sym>)> = Vec::new();
    let mut work: Vec<(usize, Sym, Sym)> = vec![(root, ci, cj)];
    while let Some((id, start, end)) = work.pop() {
        let node = view.node(id);
        let kids = child_tables(&view, id, &tables, sigma);
        let edge_syms: Vec<Sym> = node
            .children
            .iter()
            .map(|&c| view.edge_symbol(node, c))
            .collect();
        let h = kids.len();
        let target = tables[id].raw(start, end);
        let mut found = false;
        'perms: for perm in (0..h).permutations(h) {
            let ordered: Vec<&RunDpTable> = perm.iter().map(|&i| &kids[i]).collect();
            let mut stages = Vec::with_capacity(h);
            stages.push(ordered[0].clone());
            for t in &ordered[1..] {
                let next = combine_step(stages.last().unwrap(), t);
                stages.push(next);
            }
            if stages[h - 1].raw(start, end) != target {
                continue;
            }
            // assign (start, end) pairs to children back to front
            let mut child_pairs = vec![(0 as Sym, 0 as Sym); h];
            let mut m_cur = end;
            for k in (1..h).rev() {
                let want = stages[k].raw(start, m_cur);
                let mut picked = None;
                'ij: for i in 0..sigma as u8 {
                    let a = stages[k - 1].raw(start, i);
                    if a >= INF {
                        continue;
                    }
                    for j in 0..sigma as u8 {
                        let b = ordered[k].raw(j, m_cur);
                        if b >= INF {
                            continue;
                        }
                        let delta = (i == j) as u64;
                        if a + b - delta == want {
                            picked = Some((i, j));
                            break 'ij;
                        }
                    }
                }
                let (i, j) = picked.expect("stage value must decompose");
                child_pairs[k] = (j, m_cur);
                m_cur = i;
            }
            child_pairs[0] = (start, m_cur);
            for (k, &(cs, ce)) in child_pairs.iter().enumerate() {
                match node.children[perm[k]] {
                    Child::Node(cid) => work.push((cid as usize, cs, ce)),
                    Child::Leaf(i) => {
                        debug_assert_eq!(cs, ce);
                        debug_assert_eq!(cs, view.leaf_symbol(i));
                    }
                }
            }
            entries.push((
                view.context(id).to_vec(),
                perm.iter().map(|&i| edge_syms[i]).collect(),
            ));
            found = true;
            break 'perms;
        }
        assert!(found, "tabulated optimum must be reachable");
    }
    entries.sort_by(|x, y| x.0.cmp(&y.0));
    let assignment = OrderingAssignment { entries };
    let scheme = assignment.to_scheme(alphabet)?;
    let output = view.transform(&scheme)?;
    Ok(MinimizeResult {
        opt,
        assignment,
        output,
    })
}

fn child_tables(
    view: &SuffixTreeView,
    id: usize,
    tables: &[RunDpTable],
    sigma: usize,
) -> Vec<RunDpTable> {
    view.node(id)
        .children
        .iter()
        .map(|&c| match c {
            Child::Leaf(i) => RunDpTable::leaf(view.leaf_symbol(i), sigma),
            Child::Node(cid) => tables[cid as usize].clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_min_runs;
    use crate::rank::run_count;
    use rand::prelude::*;

    #[test]
    fn leaf_table_shape() {
        let t = RunDpTable::leaf(0, 3);
        assert_eq!(t.get(0, 0), Some(1));
        assert_eq!(t.get(0, 1), None);
        assert_eq!(t.get(1, 1), None);
        let one = RunDpTable::leaf(0, 1);
        assert_eq!(one.get(0, 0), Some(1));
    }

    #[test]
    fn combine_two_leaves() {
        let a = RunDpTable::leaf(0, 2);
        let b = RunDpTable::leaf(1, 2);
        let m = combine_children(&[&a, &b]);
        assert_eq!(m.get(0, 1), Some(2));
        assert_eq!(m.get(1, 0), None);
        assert_eq!(m.get(1, 1), None);
        let m = combine_children(&[&a, &a]);
        assert_eq!(m.get(0, 0), Some(1));
    }

    #[test]
    fn node_table_two_distinct_leaves() {
        let a = RunDpTable::leaf(0, 2);
        let b = RunDpTable::leaf(1, 2);
        let t = node_table(&[&a, &b]);
        assert_eq!(t.get(0, 1), Some(2));
        assert_eq!(t.get(1, 0), Some(2));
        assert_eq!(t.get(0, 0), None);
        assert_eq!(t.get(1, 1), None);
    }

    /// Brute force over orderings of leaf children, counting runs of the
    /// concatenation directly.
    fn brute_min(symbols: &[Sym], sigma: usize) -> RunDpTable {
        let mut out = RunDpTable::filled(sigma, INF);
        let h = symbols.len();
        for perm in (0..h).permutations(h) {
            let arranged: Vec<Sym> = perm.iter().map(|&i| symbols[i]).collect();
            let runs = run_count(&arranged) as u64;
            let (s, e) = (arranged[0], *arranged.last().unwrap());
            let cur = out.raw(s, e);
            out.set(s, e, cur.min(runs));
        }
        out
    }

    #[test]
    fn node_table_matches_brute_force_on_leaf_multisets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let sigma = rng.gen_range(2..=3usize);
            let h = rng.gen_range(1..=5usize);
            let symbols: Vec<Sym> = (0..h).map(|_| rng.gen_range(0..sigma as u8)).collect();
            let leaves: Vec<RunDpTable> = symbols
                .iter()
                .map(|&c| RunDpTable::leaf(c, sigma))
                .collect();
            let refs: Vec<&RunDpTable> = leaves.iter().collect();
            assert_eq!(node_table(&refs), brute_min(&symbols, sigma), "{symbols:?}");
        }
    }

    fn enc(a: &Alphabet, t: &str) -> Vec<Sym> {
        a.encode(t.as_bytes()).unwrap()
    }

    #[test]
    fn minimize_tiny_strings() {
        let ab = Alphabet::new(b"ab").unwrap();
        let r = minimize(&enc(&ab, "ab"), &ab).unwrap();
        assert_eq!(r.opt, 2);
        assert_eq!(run_count(&r.output.last_column), 2);

        let r = minimize(&enc(&ab, "aaab"), &ab).unwrap();
        assert_eq!(r.opt, 2);
        assert_eq!(run_count(&r.output.last_column), 2);
        let (oracle_opt, _) = oracle_min_runs(&enc(&ab, "aaab"), &ab, 10_000).unwrap();
        assert_eq!(r.opt, oracle_opt);
    }

    #[test]
    fn minimize_nine_symbol_example() {
        let a = Alphabet::new(b"abc").unwrap();
        let s = enc(&a, "aabaaabac");
        let r = minimize(&s, &a).unwrap();
        // the local-ordering output "aaaaacabb" has 4 runs, so opt <= 4
        assert!(r.opt <= 4);
        assert_eq!(run_count(&r.output.last_column), r.opt);
        let (oracle_opt, _) = oracle_min_runs(&s, &a, 100_000).unwrap();
        assert_eq!(r.opt, oracle_opt);
    }

    #[test]
    fn witness_scheme_replays_through_transform() {
        let a = Alphabet::new(b"abc").unwrap();
        let s = enc(&a, "aabaaabac");
        let r = minimize(&s, &a).unwrap();
        let scheme = r.assignment.to_scheme(&a).unwrap();
        let out = crate::suffix::transform(&s, &scheme).unwrap();
        assert_eq!(out, r.output);
    }

    #[test]
    fn sigma_cap_is_enforced() {
        let a = Alphabet::new(b"abcdefghi").unwrap();
        let s = a.encode(b"abcdefghi").unwrap();
        assert!(matches!(
            minimize(&s, &a),
            Err(Error::SigmaCap { sigma: 9, cap: 8 })
        ));
    }

    #[test]
    fn full_permutation_appends_rest() {
        let p = full_permutation(&[2, 0], 4).unwrap();
        assert_eq!(p.order(), &[2, 0, 1, 3]);
        assert!(full_permutation(&[2, 2], 4).is_err());
    }
}
