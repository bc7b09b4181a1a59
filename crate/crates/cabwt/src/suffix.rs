//! Suffix structure and the forward transform.
//!
//! With a unique end-of-string symbol, sorting cyclic rotations under any
//! context-adaptive scheme is the same as sorting suffixes: two rotations
//! first differ at or before the point where one of them reaches the
//! terminator, so the tie-breaking context is always a common prefix of the
//! two suffixes. The transform is therefore a depth-first walk of the
//! suffix tree in which each node's outgoing edges are ordered by the
//! permutation assigned to the node's path label.
//!
//! The tree itself is emulated on a suffix array + LCP array: internal
//! nodes are LCP intervals, enumerated bottom-up and stored explicitly so
//! the run minimizer can fold over them. The suffix array is built with
//! induced sorting (SA-IS), linear in the text length.

use crate::alphabet::Sym;
use crate::scheme::OrderingScheme;
use crate::Error;

/// Last column plus primary row index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformOutput {
    /// The transformed string `L` (a permutation of the input).
    pub last_column: Vec<Sym>,
    /// 1-based index of the row holding the input string itself.
    pub primary: usize,
}

// ---------------------------------------------------------------------------
// SA-IS
// ---------------------------------------------------------------------------

const EMPTY: u32 = u32::MAX;

/// Suffix array of `text` (0-based start positions, lexicographic by
/// standard symbol order, shorter-prefix suffixes first on ties).
pub fn suffix_array(text: &[Sym]) -> Vec<u32> {
    if text.is_empty() {
        return Vec::new();
    }
    // Shift ranks up and append a unique smallest sentinel; SA-IS wants one.
    let s: Vec<u32> = text
        .iter()
        .map(|&c| c as u32 + 1)
        .chain(std::iter::once(0))
        .collect();
    let sigma = *s.iter().max().unwrap() as usize + 1;
    let sa = sais(&s, sigma);
    sa[1..].to_vec() // drop the sentinel suffix, always first
}

fn bucket_heads(counts: &[u32]) -> Vec<u32> {
    let mut heads = vec![0u32; counts.len()];
    let mut sum = 0;
    for (h, &c) in heads.iter_mut().zip(counts) {
        *h = sum;
        sum += c;
    }
    heads
}

fn bucket_tails(counts: &[u32]) -> Vec<u32> {
    let mut tails = vec![0u32; counts.len()];
    let mut sum = 0;
    for (t, &c) in tails.iter_mut().zip(counts) {
        sum += c;
        *t = sum;
    }
    tails
}

fn induce(s: &[u32], is_s: &[bool], counts: &[u32], sa: &mut [u32]) {
    let n = s.len();
    let mut heads = bucket_heads(counts);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 && !is_s[j as usize - 1] {
            let c = s[j as usize - 1] as usize;
            sa[heads[c] as usize] = j - 1;
            heads[c] += 1;
        }
    }
    let mut tails = bucket_tails(counts);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && is_s[j as usize - 1] {
            let c = s[j as usize - 1] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = j - 1;
        }
    }
}

/// `s` must end with a unique smallest symbol.
#[allow(clippy::needless_range_loop)]
fn sais(s: &[u32], sigma: usize) -> Vec<u32> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }

    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let mut counts = vec![0u32; sigma];
    for &c in s {
        counts[c as usize] += 1;
    }

    // Stage 1: approximate placement of LMS suffixes, induce, which sorts
    // the LMS substrings.
    let mut sa = vec![EMPTY; n];
    let mut tails = bucket_tails(&counts);
    for i in 1..n {
        if is_lms(i) {
            let c = s[i] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = i as u32;
        }
    }
    induce(s, &is_s, &counts, &mut sa);

    // Name LMS substrings in their sorted order.
    let lms_positions: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();
    let mut name_of = vec![EMPTY; n];
    let mut name = 0u32;
    let mut prev: Option<usize> = None;
    for &p in sa.iter() {
        let p = p as usize;
        if !is_lms(p) {
            continue;
        }
        if let Some(q) = prev {
            if !lms_substrings_equal(s, &is_s, p, q) {
                name += 1;
            }
        }
        name_of[p] = name;
        prev = Some(p);
    }
    let names_used = name as usize + 1;

    let reduced: Vec<u32> = lms_positions.iter().map(|&p| name_of[p as usize]).collect();
    let reduced_sa = if names_used == reduced.len() {
        // all names distinct: the order is immediate
        let mut rsa = vec![0u32; reduced.len()];
        for (i, &nm) in reduced.iter().enumerate() {
            rsa[nm as usize] = i as u32;
        }
        rsa
    } else {
        sais(&reduced, names_used)
    };

    // Stage 2: place LMS suffixes in their true order and induce again.
    sa.fill(EMPTY);
    let mut tails = bucket_tails(&counts);
    for &ri in reduced_sa.iter().rev() {
        let p = lms_positions[ri as usize];
        let c = s[p as usize] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p;
    }
    induce(s, &is_s, &counts, &mut sa);
    sa
}

fn lms_substrings_equal(s: &[u32], is_s: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    if a == b {
        return true;
    }
    // the sentinel's LMS substring is unique
    if a == n - 1 || b == n - 1 {
        return false;
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];
    let mut d = 0;
    loop {
        if s[a + d] != s[b + d] {
            return false;
        }
        if d > 0 {
            let la = is_lms(a + d);
            let lb = is_lms(b + d);
            if la != lb {
                return false;
            }
            if la && lb {
                return true;
            }
        }
        d += 1;
        if a + d >= n || b + d >= n {
            return false;
        }
    }
}

/// Kasai's LCP: `lcp[i]` is the common-prefix length of the suffixes at
/// `sa[i-1]` and `sa[i]`; `lcp[0] = 0`.
pub fn lcp_array(text: &[Sym], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut rank = vec![0u32; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p as usize] = i as u32;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for pos in 0..n {
        let r = rank[pos] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let prev = sa[r - 1] as usize;
        while pos + h < n && prev + h < n && text[pos + h] == text[prev + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

// ---------------------------------------------------------------------------
// Suffix tree view
// ---------------------------------------------------------------------------

/// A child of an internal node: either another internal node or a leaf,
/// identified by its suffix-array index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Child {
    Node(u32),
    Leaf(u32),
}

/// An internal node: an LCP interval `[lb, rb]` of the suffix array with
/// path-label length `depth`.
#[derive(Debug, Clone)]
pub struct Node {
    pub depth: u32,
    pub lb: u32,
    pub rb: u32,
    /// Children left to right in standard order.
    pub children: Vec<Child>,
}

/// Suffix tree of a terminator-terminated text, emulated over SA + LCP.
///
/// Nodes are stored in bottom-up (children before parents) order; the last
/// node is the root.
#[derive(Debug)]
pub struct SuffixTreeView {
    text: Vec<Sym>,
    sigma: usize,
    sa: Vec<u32>,
    nodes: Vec<Node>,
}

impl SuffixTreeView {
    /// Build the suffix structure. The last symbol must occur exactly once.
    pub fn build(text: &[Sym], sigma: usize) -> Result<Self, Error> {
        let n = text.len();
        let Some(&term) = text.last() else {
            return Err(Error::MissingTerminator);
        };
        if text.iter().filter(|&&c| c == term).count() != 1 {
            return Err(Error::MissingTerminator);
        }
        for &c in text {
            if (c as usize) >= sigma {
                return Err(Error::InvalidSymbol {
                    sym: c as u32,
                    sigma,
                });
            }
        }
        let sa = suffix_array(text);
        let lcp = lcp_array(text, &sa);
        let nodes = build_nodes(&lcp, n);
        Ok(SuffixTreeView {
            text: text.to_vec(),
            sigma,
            sa,
            nodes,
        })
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[Sym] {
        &self.text
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub fn root_id(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Internal node ids, children always before parents.
    pub fn internal_nodes(&self) -> impl Iterator<Item = usize> {
        0..self.nodes.len()
    }

    /// Path label of an internal node.
    pub fn context(&self, id: usize) -> &[Sym] {
        let node = &self.nodes[id];
        let start = self.sa[node.lb as usize] as usize;
        &self.text[start..start + node.depth as usize]
    }

    /// First symbol on the edge from `node` to `child`.
    pub fn edge_symbol(&self, node: &Node, child: Child) -> Sym {
        let sa_index = match child {
            Child::Node(c) => self.nodes[c as usize].lb,
            Child::Leaf(i) => i,
        };
        self.text[self.sa[sa_index as usize] as usize + node.depth as usize]
    }

    /// 0-based text position of the suffix at suffix-array index `i`.
    pub fn leaf_start(&self, sa_index: u32) -> usize {
        self.sa[sa_index as usize] as usize
    }

    /// Symbol circularly preceding the suffix at suffix-array index `i`.
    pub fn leaf_symbol(&self, sa_index: u32) -> Sym {
        let n = self.text.len();
        let start = self.sa[sa_index as usize] as usize;
        self.text[(start + n - 1) % n]
    }

    /// Depth-first walk with children ordered per `scheme`, emitting leaf
    /// symbols: the context-adaptive transform of the underlying text.
    pub fn transform(&self, scheme: &OrderingScheme) -> Result<TransformOutput, Error> {
        if scheme.sigma() != self.sigma {
            return Err(Error::InvalidSymbol {
                sym: self.sigma as u32,
                sigma: scheme.sigma(),
            });
        }
        let n = self.len();
        let mut last_column = Vec::with_capacity(n);
        let mut primary = 0usize;
        let mut stack: Vec<std::vec::IntoIter<Child>> =
            vec![self.ordered_children(self.root_id(), scheme)];
        while let Some(top) = stack.last_mut() {
            match top.next() {
                None => {
                    stack.pop();
                }
                Some(Child::Leaf(i)) => {
                    last_column.push(self.leaf_symbol(i));
                    if self.sa[i as usize] == 0 {
                        primary = last_column.len();
                    }
                }
                Some(Child::Node(c)) => {
                    let next = self.ordered_children(c as usize, scheme);
                    stack.push(next);
                }
            }
        }
        debug_assert_eq!(last_column.len(), n);
        Ok(TransformOutput {
            last_column,
            primary,
        })
    }

    fn ordered_children(&self, id: usize, scheme: &OrderingScheme) -> std::vec::IntoIter<Child> {
        let node = &self.nodes[id];
        let pi = scheme.resolve_unchecked(self.context(id));
        let mut kids = node.children.clone();
        kids.sort_by_key(|&c| pi.position(self.edge_symbol(node, c)));
        kids.into_iter()
    }
}

/// Forward transform of a terminator-terminated text under `scheme`.
pub fn transform(text: &[Sym], scheme: &OrderingScheme) -> Result<TransformOutput, Error> {
    SuffixTreeView::build(text, scheme.sigma())?.transform(scheme)
}

/// Bottom-up enumeration of LCP intervals with explicit parent-child links.
#[allow(clippy::needless_range_loop)]
fn build_nodes(lcp: &[u32], n: usize) -> Vec<Node> {
    struct Frame {
        depth: u32,
        lb: u32,
        kids: Vec<Child>,
    }

    fn finalize(nodes: &mut Vec<Node>, frame: Frame, rb: u32) -> u32 {
        let mut children = Vec::with_capacity(frame.kids.len() + 1);
        let mut pos = frame.lb;
        for kid in frame.kids {
            let (clb, crb) = match kid {
                Child::Node(id) => (nodes[id as usize].lb, nodes[id as usize].rb),
                Child::Leaf(i) => (i, i),
            };
            for p in pos..clb {
                children.push(Child::Leaf(p));
            }
            children.push(kid);
            pos = crb + 1;
        }
        for p in pos..=rb {
            children.push(Child::Leaf(p));
        }
        nodes.push(Node {
            depth: frame.depth,
            lb: frame.lb,
            rb,
            children,
        });
        (nodes.len() - 1) as u32
    }

    let mut nodes = Vec::new();
    let mut stack = vec![Frame {
        depth: 0,
        lb: 0,
        kids: Vec::new(),
    }];
    for i in 1..=n {
        let l = if i < n { lcp[i] } else { 0 };
        while stack.last().unwrap().depth > l {
            let frame = stack.pop().unwrap();
            let lb = frame.lb;
            let id = finalize(&mut nodes, frame, (i - 1) as u32);
            let top = stack.last_mut().unwrap();
            if top.depth >= l {
                top.kids.push(Child::Node(id));
            } else {
                stack.push(Frame {
                    depth: l,
                    lb,
                    kids: vec![Child::Node(id)],
                });
            }
        }
        if stack.last().unwrap().depth < l {
            stack.push(Frame {
                depth: l,
                lb: (i - 1) as u32,
                kids: Vec::new(),
            });
        }
    }
    let root = stack.pop().unwrap();
    debug_assert!(stack.is_empty());
    finalize(&mut nodes, root, (n - 1) as u32);
    nodes
}
