//! Pattern counting on the transformed string with all three engines.
//!
//! The range `[b, len]` returned by a count is the block of sorted-matrix
//! rows prefixed by the pattern; `len` is the number of occurrences in the
//! circular text. The general engine works for every scheme in O(σp²); the
//! ± engine needs O(p²); local schemes answer in O(p) rank queries after
//! tabulating short contexts.
//!
//! ```text
//! cargo run --example pattern_search
//! ```

use std::collections::HashMap;

use cabwt::alphabet::{Alphabet, Permutation};
use cabwt::engine::{GeneralIndex, LocalIndex, PmIndex};
use cabwt::scheme::OrderingScheme;
use cabwt::suffix;

fn perm(a: &Alphabet, text: &str) -> Permutation {
    Permutation::from_order(&a.encode(text.as_bytes()).unwrap()).unwrap()
}

fn main() {
    let a = Alphabet::new(b"abc").unwrap();
    let text = a.encode(b"aabaaabac").unwrap();

    // a local scheme is also a ± candidate-free general scheme, so all
    // three engines can be compared on schemes of their own kind
    let mut ctx = HashMap::new();
    ctx.insert(vec![], perm(&a, "bca"));
    ctx.insert(a.encode(b"a").unwrap(), perm(&a, "bac"));
    let local_scheme = OrderingScheme::local(a.clone(), 1, perm(&a, "abc"), ctx).unwrap();
    let pm_scheme = OrderingScheme::pm_parity(a.clone(), Permutation::identity(3)).unwrap();

    let out = suffix::transform(&text, &local_scheme).unwrap();
    let general = GeneralIndex::new(&out.last_column, out.primary, &local_scheme).unwrap();
    let local = LocalIndex::new(&out.last_column, out.primary, &local_scheme).unwrap();

    println!(
        "local scheme, L = {}",
        String::from_utf8_lossy(&a.decode(&out.last_column))
    );
    for pat in ["a", "aa", "aab", "aba", "bac", "cb"] {
        let syms = a.encode(pat.as_bytes()).unwrap();
        let g = general.count(&syms).unwrap();
        local.reset_rank_calls();
        let l = local.count(&syms).unwrap();
        let calls = local.rank_calls();
        assert_eq!(g, l);
        println!(
            "  {:<4} -> rows [{}, {}] ({} occurrences, {} rank calls in the local engine)",
            pat, l.b, l.len, l.len, calls
        );
    }

    let out = suffix::transform(&text, &pm_scheme).unwrap();
    let pm = PmIndex::new(&out.last_column, out.primary, &pm_scheme).unwrap();
    let general = GeneralIndex::new(&out.last_column, out.primary, &pm_scheme).unwrap();
    println!(
        "\nparity ± scheme (the alternating transform), L = {}",
        String::from_utf8_lossy(&a.decode(&out.last_column))
    );
    for pat in ["ab", "aab", "ba", "ccc"] {
        let syms = a.encode(pat.as_bytes()).unwrap();
        let r = pm.count(&syms).unwrap();
        assert_eq!(r, general.count(&syms).unwrap());
        println!("  {:<4} -> rows [{}, {}]", pat, r.b, r.len);
    }
}
