//! Toehold locate on a local scheme: counting a pattern also yields the
//! text position of the last row of its range, maintained during the
//! backward search from run-boundary samples. Other rows of the range are
//! resolved by walking right shifts until a sampled row pins the position.
//!
//! ```text
//! cargo run --example locate_occurrences
//! ```

use std::collections::HashMap;

use cabwt::alphabet::{Alphabet, Permutation};
use cabwt::engine::LocalIndex;
use cabwt::scheme::OrderingScheme;
use cabwt::suffix;

fn main() {
    let a = Alphabet::new(b"abc").unwrap();
    let text = a.encode(b"aabaaabac").unwrap();

    let mut ctx = HashMap::new();
    ctx.insert(
        vec![],
        Permutation::from_order(&a.encode(b"bca").unwrap()).unwrap(),
    );
    ctx.insert(
        a.encode(b"a").unwrap(),
        Permutation::from_order(&a.encode(b"bac").unwrap()).unwrap(),
    );
    let scheme = OrderingScheme::local(a.clone(), 1, Permutation::identity(3), ctx).unwrap();

    let out = suffix::transform(&text, &scheme).unwrap();
    let mut idx = LocalIndex::new(&out.last_column, out.primary, &scheme).unwrap();
    idx.enable_toehold().unwrap();

    println!(
        "text = {}, L = {}",
        String::from_utf8_lossy(&a.decode(&text)),
        String::from_utf8_lossy(&a.decode(&out.last_column))
    );
    println!(
        "run-end samples (L position -> text position): {:?}",
        idx.marked_samples()
    );

    for pat in ["c", "aab", "ab", "aa", "cb"] {
        let syms = a.encode(pat.as_bytes()).unwrap();
        let (range, toehold) = idx.count_and_locate(&syms).unwrap();
        if range.is_empty() {
            println!("{pat:<4} -> no occurrences");
            continue;
        }
        let mut positions: Vec<usize> = (range.b..=range.end())
            .map(|row| idx.occurrence_position(row).unwrap())
            .collect();
        println!(
            "{:<4} -> rows [{}, {}], toehold position {}, all occurrences at {:?}",
            pat,
            range.b,
            range.len,
            toehold.unwrap(),
            positions
        );
        // the toehold is always the last row's position
        assert_eq!(positions.pop(), toehold);
    }
}
