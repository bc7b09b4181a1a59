//! Run every kind of ordering scheme over one small string and show how
//! the transform output changes while staying a permutation of the input.
//!
//! ```text
//! cargo run --example transform_variants
//! ```

use std::collections::{HashMap, HashSet};

use cabwt::alphabet::{Alphabet, Permutation};
use cabwt::rank::run_count;
use cabwt::scheme::OrderingScheme;
use cabwt::suffix;

fn perm(a: &Alphabet, text: &str) -> Permutation {
    Permutation::from_order(&a.encode(text.as_bytes()).unwrap()).unwrap()
}

fn main() {
    let a = Alphabet::new(b"abc").unwrap();
    let text = a.encode(b"aabaaabac").unwrap();

    // The classic transform uses one fixed alphabet order. Context-adaptive
    // variants pick a different order depending on the longest common
    // prefix of the rotations being compared.
    let mut explicit_ctx = HashMap::new();
    explicit_ctx.insert(vec![], perm(&a, "bac"));
    explicit_ctx.insert(a.encode(b"a").unwrap(), perm(&a, "cab"));
    explicit_ctx.insert(a.encode(b"aa").unwrap(), perm(&a, "bac"));
    explicit_ctx.insert(a.encode(b"aaba").unwrap(), perm(&a, "acb"));

    let mut local_ctx = HashMap::new();
    local_ctx.insert(vec![], perm(&a, "bca"));
    local_ctx.insert(a.encode(b"a").unwrap(), perm(&a, "bac"));

    let mut negated = HashSet::new();
    negated.insert(a.encode(b"a").unwrap());
    negated.insert(a.encode(b"aaba").unwrap());

    let schemes: Vec<(&str, OrderingScheme)> = vec![
        ("constant (classic)", OrderingScheme::standard(a.clone())),
        (
            "alternating (mod 2)",
            OrderingScheme::alternating(a.clone()),
        ),
        (
            "position mod 3",
            OrderingScheme::position_mod(
                a.clone(),
                vec![perm(&a, "cab"), perm(&a, "bca"), perm(&a, "bac")],
            )
            .unwrap(),
        ),
        (
            "± with negated contexts",
            OrderingScheme::plus_minus(a.clone(), perm(&a, "bac"), false, negated).unwrap(),
        ),
        (
            "local k=1",
            OrderingScheme::local(a.clone(), 1, perm(&a, "abc"), local_ctx).unwrap(),
        ),
        (
            "explicit context map",
            OrderingScheme::explicit(a.clone(), perm(&a, "abc"), explicit_ctx).unwrap(),
        ),
    ];

    println!("input: {}", String::from_utf8_lossy(&a.decode(&text)));
    println!();
    println!("{:<24} {:<12} {:>2} {:>5}", "scheme", "L", "I", "runs");
    for (name, scheme) in &schemes {
        let out = suffix::transform(&text, scheme).unwrap();
        println!(
            "{:<24} {:<12} {:>2} {:>5}",
            name,
            String::from_utf8_lossy(&a.decode(&out.last_column)),
            out.primary,
            run_count(&out.last_column)
        );
    }
}
