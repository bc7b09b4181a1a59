//! Shared fixtures for the integration suites: the worked-example schemes
//! and generators for random terminator-terminated texts and random schemes
//! of every kind.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use cabwt::alphabet::{Alphabet, Permutation, Sym};
use cabwt::scheme::OrderingScheme;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn abc() -> Alphabet {
    Alphabet::new(b"abc").unwrap()
}

pub fn enc(a: &Alphabet, t: &str) -> Vec<Sym> {
    a.encode(t.as_bytes()).unwrap()
}

pub fn perm(a: &Alphabet, text: &str) -> Permutation {
    Permutation::from_order(&a.encode(text.as_bytes()).unwrap()).unwrap()
}

/// Explicit scheme behind the generalized-matrix worked example:
/// pi_eps=(b,a,c), pi_a=(c,a,b), pi_aa=(b,a,c), pi_aaba=(a,c,b).
pub fn explicit_example() -> OrderingScheme {
    let a = abc();
    let mut ctx = HashMap::new();
    ctx.insert(vec![], perm(&a, "bac"));
    ctx.insert(enc(&a, "a"), perm(&a, "cab"));
    ctx.insert(enc(&a, "aa"), perm(&a, "bac"));
    ctx.insert(enc(&a, "aaba"), perm(&a, "acb"));
    OrderingScheme::explicit(a.clone(), perm(&a, "abc"), ctx).unwrap()
}

/// Local k=1 scheme of the worked example: pi_eps=(b,c,a), pi_a=(b,a,c),
/// pi_b=pi_c=(a,b,c).
pub fn local_example() -> OrderingScheme {
    let a = abc();
    let mut ctx = HashMap::new();
    ctx.insert(vec![], perm(&a, "bca"));
    ctx.insert(enc(&a, "a"), perm(&a, "bac"));
    OrderingScheme::local(a.clone(), 1, perm(&a, "abc"), ctx).unwrap()
}

/// ± scheme of the worked example: pi=(b,a,c), reversed at "a" and "aaba".
pub fn pm_example() -> OrderingScheme {
    let a = abc();
    let mut neg = HashSet::new();
    neg.insert(enc(&a, "a"));
    neg.insert(enc(&a, "aaba"));
    OrderingScheme::plus_minus(a.clone(), perm(&a, "bac"), false, neg).unwrap()
}

/// Position-mod-3 scheme of the worked example: ((c,a,b),(b,c,a),(b,a,c)).
pub fn posmod_example() -> OrderingScheme {
    let a = abc();
    OrderingScheme::position_mod(
        a.clone(),
        vec![perm(&a, "cab"), perm(&a, "bca"), perm(&a, "bac")],
    )
    .unwrap()
}

pub fn random_perm(rng: &mut ChaCha8Rng, sigma: usize) -> Permutation {
    let mut order: Vec<Sym> = (0..sigma as u8).collect();
    order.shuffle(rng);
    Permutation::from_order(&order).unwrap()
}

fn random_ctx(rng: &mut ChaCha8Rng, sigma: usize, max_len: usize) -> Vec<Sym> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..sigma as u8)).collect()
}

/// Alphabet of `sigma` letters starting at 'a'.
pub fn letters(sigma: usize) -> Alphabet {
    let bytes: Vec<u8> = (0..sigma as u8).map(|i| b'a' + i).collect();
    Alphabet::new(&bytes).unwrap()
}

/// Random text of `body_len` symbols over `sigma - 1` letters plus the
/// reserved terminator symbol `sigma - 1` at the end.
pub fn random_text(rng: &mut ChaCha8Rng, sigma: usize, body_len: usize) -> Vec<Sym> {
    let mut text: Vec<Sym> = (0..body_len)
        .map(|_| rng.gen_range(0..(sigma - 1) as u8))
        .collect();
    text.push((sigma - 1) as u8);
    text
}

/// A random scheme of the given kind index (0..5: constant, posmod, ±,
/// local, explicit).
pub fn random_scheme(rng: &mut ChaCha8Rng, alphabet: &Alphabet, kind: usize) -> OrderingScheme {
    let sigma = alphabet.size();
    match kind {
        0 => OrderingScheme::constant(alphabet.clone(), random_perm(rng, sigma)).unwrap(),
        1 => {
            let k = rng.gen_range(1..=4usize);
            let perms = (0..k).map(|_| random_perm(rng, sigma)).collect();
            OrderingScheme::position_mod(alphabet.clone(), perms).unwrap()
        }
        2 => {
            let base = random_perm(rng, sigma);
            if rng.gen_bool(1.0 / 3.0) {
                OrderingScheme::pm_parity(alphabet.clone(), base).unwrap()
            } else {
                let mut neg = HashSet::new();
                for _ in 0..rng.gen_range(0..6usize) {
                    neg.insert(random_ctx(rng, sigma, 4));
                }
                OrderingScheme::plus_minus(alphabet.clone(), base, rng.gen_bool(0.5), neg).unwrap()
            }
        }
        3 => {
            let k = rng.gen_range(1..=3usize);
            let mut contexts = HashMap::new();
            let mut all = vec![vec![]];
            let mut level: Vec<Vec<Sym>> = vec![vec![]];
            for _ in 0..k {
                let mut next = Vec::new();
                for ctx in &level {
                    for c in 0..sigma as u8 {
                        let mut e = ctx.clone();
                        e.push(c);
                        next.push(e);
                    }
                }
                all.extend(next.iter().cloned());
                level = next;
            }
            for ctx in all {
                if rng.gen_bool(0.6) {
                    contexts.insert(ctx, random_perm(rng, sigma));
                }
            }
            OrderingScheme::local(alphabet.clone(), k, random_perm(rng, sigma), contexts).unwrap()
        }
        _ => {
            let mut contexts = HashMap::new();
            for _ in 0..rng.gen_range(0..7usize) {
                contexts.insert(random_ctx(rng, sigma, 4), random_perm(rng, sigma));
            }
            OrderingScheme::explicit(alphabet.clone(), random_perm(rng, sigma), contexts).unwrap()
        }
    }
}
