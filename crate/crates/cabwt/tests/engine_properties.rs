//! Cross-cutting invariants that tie the engines, the suffix path and the
//! oracle together on randomized inputs: range containment, evaluation-order
//! independence, the prepend bijection behind local schemes, right-shift
//! adjacency, toehold positions, and run-minimizer sanity bounds.

mod common;

use cabwt::alphabet::Sym;
use cabwt::engine::{general, local, pm, GeneralIndex, LocalIndex, PmIndex};
use cabwt::minruns;
use cabwt::oracle;
use cabwt::scheme::OrderingScheme;
use cabwt::suffix::{self, SuffixTreeView};
use common::*;
use rand::prelude::*;

fn substrings_of(text: &[Sym], max_len: usize) -> Vec<Vec<Sym>> {
    let n = text.len();
    let mut out = Vec::new();
    for start in 0..n {
        for len in 1..=max_len.min(n) {
            out.push((0..len).map(|h| text[(start + h) % n]).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn count_is_consistent_under_containment() {
    let mut rng = rng(71);
    for case in 0..60 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..48);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, case % 5);
        let out = suffix::transform(&text, &scheme).unwrap();
        let gen = GeneralIndex::new(&out.last_column, out.primary, &scheme).unwrap();
        for x in substrings_of(&text, 4) {
            let rx = gen.count(&x).unwrap();
            let mut sum = 0;
            for c in 0..sigma as u8 {
                let mut ext = x.clone();
                ext.push(c);
                let rc = gen.count(&ext).unwrap();
                sum += rc.len;
                if !rc.is_empty() {
                    assert!(
                        rc.b >= rx.b && rc.end() <= rx.end(),
                        "child range escapes parent"
                    );
                }
            }
            assert_eq!(sum, rx.len, "child lengths must add up");
        }
    }
}

#[test]
fn forward_and_backward_evaluation_agree() {
    let mut rng = rng(72);
    for case in 0..80 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..40);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, case % 5);
        let out = suffix::transform(&text, &scheme).unwrap();
        let gen = GeneralIndex::new(&out.last_column, out.primary, &scheme).unwrap();
        for _ in 0..30 {
            let len = rng.gen_range(1..=6usize);
            let pat: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..sigma as u8)).collect();
            assert_eq!(gen.count(&pat).unwrap(), gen.count_forward(&pat).unwrap());
        }
    }
}

/// Changing the permutation of a context that is not an internal-node path
/// label cannot change the transform.
#[test]
fn non_branching_contexts_are_irrelevant() {
    let mut rng = rng(73);
    for _ in 0..60 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..40);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, 4);
        let base = suffix::transform(&text, &scheme).unwrap();

        let view = SuffixTreeView::build(&text, sigma).unwrap();
        let labels: Vec<Vec<Sym>> = view
            .internal_nodes()
            .map(|id| view.context(id).to_vec())
            .collect();
        // pick a context that labels no internal node
        let junk: Vec<Sym> = loop {
            let len = rng.gen_range(0..6usize);
            let ctx: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..sigma as u8)).collect();
            if !labels.contains(&ctx) {
                break ctx;
            }
        };
        let (default, mut contexts) = match scheme.kind() {
            cabwt::scheme::SchemeKind::Explicit { default, contexts } => {
                (default.clone(), contexts.clone())
            }
            _ => unreachable!(),
        };
        contexts.insert(junk, random_perm(&mut rng, sigma));
        let perturbed = OrderingScheme::explicit(alphabet.clone(), default, contexts).unwrap();
        let out = suffix::transform(&text, &perturbed).unwrap();
        assert_eq!(out, base, "non-branching context changed the output");
    }
}

/// The prepend bijection: rows starting with x2 and ending with x1 map
/// position-by-position onto rows starting with x1 x2, for local schemes.
#[test]
fn local_prepend_bijection_is_order_preserving() {
    let mut rng = rng(74);
    for _ in 0..60 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..64);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, 3);
        if scheme.local_k() != Some(1) {
            continue;
        }
        let n = text.len();
        let matrix = oracle::sorted_rotation_matrix(&text, &scheme).unwrap();
        for x1 in 0..sigma as u8 {
            for x2 in 0..sigma as u8 {
                let ending: Vec<usize> = (1..=n)
                    .filter(|&row| {
                        matrix.row_symbols(row, 1)[0] == x2
                            && matrix.row_symbols(row, n)[n - 1] == x1
                    })
                    .collect();
                let prefixed = matrix.range_of(&[x1, x2]);
                assert_eq!(prefixed.len, ending.len());
                for (offset, &row) in ending.iter().enumerate() {
                    // prepending x1 to the rotation at `row` lands at the
                    // same offset inside R(x1 x2)
                    let start = matrix.row_start(row);
                    let prev = if start == 1 { n } else { start - 1 };
                    assert_eq!(matrix.row_of_start(prev), prefixed.b + offset);
                }
            }
        }
    }
}

/// Adjacent rows sharing first and last symbols stay adjacent after a right
/// shift under local schemes (the non-local counterexample lives in the
/// oracle unit tests).
#[test]
fn local_right_shifts_preserve_adjacency() {
    let mut rng = rng(75);
    for _ in 0..50 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..48);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, 3);
        if scheme.local_k() != Some(1) {
            continue;
        }
        let out = suffix::transform(&text, &scheme).unwrap();
        let idx = LocalIndex::new(&out.last_column, out.primary, &scheme).unwrap();
        let n = text.len();
        let matrix = oracle::sorted_rotation_matrix(&text, &scheme).unwrap();
        for row in 1..n {
            let first_eq = matrix.row_symbols(row, 1) == matrix.row_symbols(row + 1, 1);
            let last_eq = out.last_column[row - 1] == out.last_column[row];
            if first_eq && last_eq {
                assert_eq!(
                    idx.step_right(row).unwrap() + 1,
                    idx.step_right(row + 1).unwrap()
                );
            }
        }
    }
}

/// Toehold positions: the reported position starts a circular occurrence
/// and equals the start of the last row of the range.
#[test]
fn toehold_positions_match_the_matrix() {
    let mut rng = rng(76);
    for _ in 0..60 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..48);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, 3);
        let k = scheme.local_k().unwrap();
        let out = suffix::transform(&text, &scheme).unwrap();
        let mut idx = LocalIndex::new(&out.last_column, out.primary, &scheme).unwrap();
        idx.enable_toehold().unwrap();
        let matrix = oracle::sorted_rotation_matrix(&text, &scheme).unwrap();
        for pat in substrings_of(&text, 8) {
            if pat.len() < k {
                continue;
            }
            let (range, pos) = idx.count_and_locate(&pat).unwrap();
            assert_eq!(range, matrix.range_of(&pat));
            if range.is_empty() {
                assert_eq!(pos, None);
                continue;
            }
            let pos = pos.expect("nonempty range has a toehold");
            assert_eq!(pos, matrix.row_start(range.end()));
            // every row of the range resolves through sample walking
            for row in range.b..=range.end() {
                assert_eq!(idx.occurrence_position(row).unwrap(), matrix.row_start(row));
            }
        }
    }
}

/// The parity ± scheme with the standard base is the alternating transform;
/// all three engines agree with the oracle on its substring ranges.
#[test]
fn abwt_as_parity_pm_counts_agree() {
    let a = abc();
    let text = enc(&a, "aabaaabac");
    let pm_scheme =
        OrderingScheme::pm_parity(a.clone(), cabwt::alphabet::Permutation::identity(3)).unwrap();
    let out = suffix::transform(&text, &pm_scheme).unwrap();
    assert_eq!(a.decode(&out.last_column), b"baabcaaaa");
    assert_eq!(out.primary, 5);
    let matrix = oracle::sorted_rotation_matrix(&text, &pm_scheme).unwrap();
    let pmi = PmIndex::new(&out.last_column, out.primary, &pm_scheme).unwrap();
    let gen = GeneralIndex::new(&out.last_column, out.primary, &pm_scheme).unwrap();
    for pat in substrings_of(&text, 9) {
        let want = matrix.range_of(&pat);
        assert_eq!(pmi.count(&pat).unwrap(), want);
        assert_eq!(gen.count(&pat).unwrap(), want);
    }
}

/// Round trips for deeper local orders: chained counts and inversion for
/// k in {2, 3}.
#[test]
fn local_deep_orders_match_oracle() {
    let mut rng = rng(77);
    for k in [2usize, 3] {
        for _ in 0..40 {
            let sigma = rng.gen_range(2..=3usize);
            let alphabet = letters(sigma);
            let body = rng.gen_range(1..48);
            let text = random_text(&mut rng, sigma, body);
            let scheme = loop {
                let s = random_scheme(&mut rng, &alphabet, 3);
                if s.local_k() == Some(k) {
                    break s;
                }
            };
            let out = suffix::transform(&text, &scheme).unwrap();
            let oracle_out = oracle::oracle_transform(&text, &scheme).unwrap();
            assert_eq!(out, oracle_out);
            let idx = LocalIndex::new(&out.last_column, out.primary, &scheme).unwrap();
            let matrix = oracle::sorted_rotation_matrix(&text, &scheme).unwrap();
            for pat in substrings_of(&text, 8) {
                assert_eq!(idx.count(&pat).unwrap(), matrix.range_of(&pat), "{pat:?}");
            }
            assert_eq!(idx.invert().unwrap(), text);
        }
    }
}

/// Suffix-path transforms agree with the oracle on longer strings and a
/// wider alphabet than the acceptance sweep uses.
#[test]
fn transform_matches_oracle_wide() {
    let mut rng = rng(85);
    for case in 0..1000 {
        let sigma = rng.gen_range(2..=5usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..128usize);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, case % 5);
        let fast = suffix::transform(&text, &scheme).unwrap();
        let naive = oracle::oracle_transform(&text, &scheme).unwrap();
        assert_eq!(fast, naive);
    }
}

/// Primary index always points at the row whose rotation starts the text.
#[test]
fn primary_row_is_the_text_row() {
    let mut rng = rng(78);
    for case in 0..50 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(1..48);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, case % 5);
        let out = suffix::transform(&text, &scheme).unwrap();
        let matrix = oracle::sorted_rotation_matrix(&text, &scheme).unwrap();
        assert_eq!(out.primary, matrix.row_of_start(1));
    }
}

/// Doubling a text body never more than doubles the optimum (plus the
/// alphabet-size slack for the seams).
#[test]
fn min_runs_doubling_sanity() {
    let mut rng = rng(79);
    let alphabet = letters(3);
    for _ in 0..40 {
        let body_len = rng.gen_range(1..12usize);
        let body: Vec<Sym> = (0..body_len).map(|_| rng.gen_range(0..2u8)).collect();
        let mut single = body.clone();
        single.push(2);
        let mut doubled = body.clone();
        doubled.extend_from_slice(&body);
        doubled.push(2);
        let opt1 = minruns::minimize(&single, &alphabet).unwrap().opt;
        let opt2 = minruns::minimize(&doubled, &alphabet).unwrap().opt;
        assert!(
            opt2 <= 2 * opt1 + 3,
            "doubling blew up: {opt1} -> {opt2} for {body:?}"
        );
    }
}

/// Rank-query budget at small scale: at most 2p + O(1) calls, empty or not.
#[test]
fn local_count_rank_budget_small_scale() {
    let mut rng = rng(80);
    for _ in 0..40 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let body = rng.gen_range(8..64);
        let text = random_text(&mut rng, sigma, body);
        let scheme = random_scheme(&mut rng, &alphabet, 3);
        let out = suffix::transform(&text, &scheme).unwrap();
        let idx = LocalIndex::new(&out.last_column, out.primary, &scheme).unwrap();
        for _ in 0..20 {
            let len = rng.gen_range(1..=16usize);
            let pat: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..sigma as u8)).collect();
            idx.reset_rank_calls();
            idx.count(&pat).unwrap();
            assert!(idx.rank_calls() <= 2 * len as u64 + 8);
        }
    }
}

/// Parsing the canonical text form reproduces the same resolutions.
#[test]
fn scheme_text_round_trip_preserves_resolution() {
    let mut rng = rng(81);
    for case in 0..100 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let scheme = random_scheme(&mut rng, &alphabet, case % 5);
        let back = OrderingScheme::parse(&scheme.to_text()).unwrap();
        assert_eq!(back.to_text(), scheme.to_text());
        for _ in 0..40 {
            let len = rng.gen_range(0..8usize);
            let ctx: Vec<Sym> = (0..len).map(|_| rng.gen_range(0..sigma as u8)).collect();
            assert_eq!(
                back.resolve(&ctx).unwrap().order(),
                scheme.resolve(&ctx).unwrap().order()
            );
        }
    }
}

/// Garbage (L, I) pairs never panic an inverter: they either produce some
/// string or fail with a typed error. A primary index pointing at a
/// different row of a valid transform legitimately recovers a rotation,
/// which transforms back to that row.
#[test]
fn invert_survives_garbage_inputs() {
    use cabwt::Error;
    let mut rng = rng(82);
    let ok = |r: &Result<Vec<Sym>, Error>| {
        matches!(
            r,
            Ok(_) | Err(Error::InvalidTransform(_)) | Err(Error::OutOfRange { .. })
        )
    };
    for case in 0..200 {
        let sigma = rng.gen_range(2..=4usize);
        let alphabet = letters(sigma);
        let scheme = random_scheme(&mut rng, &alphabet, case % 5);
        let n = rng.gen_range(1..24usize);
        let l: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..sigma as u8)).collect();
        let primary = rng.gen_range(1..=n);
        assert!(ok(&general::invert(&l, primary, &scheme)));
        if scheme.is_plus_minus() {
            assert!(ok(&pm::invert_pm(&l, primary, &scheme)));
        }
        if scheme.local_k().is_some() {
            assert!(ok(&local::invert_local(&l, primary, &scheme)));
        }
    }
    // a wrong-but-in-range primary over a valid payload recovers a rotation
    let a = abc();
    let text = enc(&a, "aabaaabac");
    let scheme = OrderingScheme::standard(a.clone());
    let out = suffix::transform(&text, &scheme).unwrap();
    for primary in 1..=text.len() {
        let s = general::invert(&out.last_column, primary, &scheme).unwrap();
        let back = oracle::oracle_transform(&s, &scheme).unwrap();
        assert_eq!(back.last_column, out.last_column);
        assert_eq!(back.primary, primary);
    }
}
