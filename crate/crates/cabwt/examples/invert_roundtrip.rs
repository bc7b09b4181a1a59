//! Invert transforms back to the original text with each engine, and round
//! trip through the container format the CLI uses on disk.
//!
//! ```text
//! cargo run --example invert_roundtrip
//! ```

use std::collections::HashSet;

use cabwt::alphabet::{Alphabet, Permutation};
use cabwt::container::TransformContainer;
use cabwt::engine::{general, local, pm};
use cabwt::scheme::OrderingScheme;
use cabwt::suffix;

fn main() {
    let a = Alphabet::new(b"abc").unwrap();
    let text = a.encode(b"aabaaabac").unwrap();

    // general inversion works for every scheme
    let explicit = OrderingScheme::standard(a.clone());
    let out = suffix::transform(&text, &explicit).unwrap();
    let back = general::invert(&out.last_column, out.primary, &explicit).unwrap();
    assert_eq!(back, text);
    println!(
        "general engine: ({}, {}) -> {}",
        String::from_utf8_lossy(&a.decode(&out.last_column)),
        out.primary,
        String::from_utf8_lossy(&a.decode(&back))
    );

    // ± schemes invert with plain ranges, a σ factor cheaper
    let mut neg = HashSet::new();
    neg.insert(a.encode(b"a").unwrap());
    neg.insert(a.encode(b"aaba").unwrap());
    let pm_scheme = {
        let base = Permutation::from_order(&a.encode(b"bac").unwrap()).unwrap();
        OrderingScheme::plus_minus(a.clone(), base, false, neg).unwrap()
    };
    let out = suffix::transform(&text, &pm_scheme).unwrap();
    let back = pm::invert_pm(&out.last_column, out.primary, &pm_scheme).unwrap();
    assert_eq!(back, text);
    println!(
        "± engine:       ({}, {}) -> {}",
        String::from_utf8_lossy(&a.decode(&out.last_column)),
        out.primary,
        String::from_utf8_lossy(&a.decode(&back))
    );

    // local schemes invert in linear time by walking right shifts
    let local_scheme = {
        let mut ctx = std::collections::HashMap::new();
        ctx.insert(
            vec![],
            Permutation::from_order(&a.encode(b"bca").unwrap()).unwrap(),
        );
        ctx.insert(
            a.encode(b"a").unwrap(),
            Permutation::from_order(&a.encode(b"bac").unwrap()).unwrap(),
        );
        OrderingScheme::local(a.clone(), 1, Permutation::identity(3), ctx).unwrap()
    };
    let out = suffix::transform(&text, &local_scheme).unwrap();
    let back = local::invert_local(&out.last_column, out.primary, &local_scheme).unwrap();
    assert_eq!(back, text);
    println!(
        "local engine:   ({}, {}) -> {}",
        String::from_utf8_lossy(&a.decode(&out.last_column)),
        out.primary,
        String::from_utf8_lossy(&a.decode(&back))
    );

    // the on-disk container carries flags, the scheme text, I and L
    let container = TransformContainer {
        flags: 0,
        scheme_text: local_scheme.to_text(),
        primary: out.primary as u64,
        payload: a.decode(&out.last_column),
    };
    let bytes = container.to_bytes();
    let parsed = TransformContainer::from_bytes(&bytes).unwrap();
    assert_eq!(parsed, container);
    println!(
        "container: {} bytes, scheme blob {} bytes, payload {} bytes",
        bytes.len(),
        container.scheme_text.len(),
        container.payload.len()
    );
}
