//! Find the ordering scheme whose transform has the fewest runs, compare it
//! against the classic and alternating transforms, and replay the witness
//! scheme to confirm it achieves the optimum.
//!
//! ```text
//! cargo run --example minimize_runs
//! ```

use cabwt::alphabet::Alphabet;
use cabwt::minruns;
use cabwt::rank::run_count;
use cabwt::scheme::OrderingScheme;
use cabwt::suffix;

fn main() {
    let a = Alphabet::new(b"abc").unwrap();
    for input in ["aabaaabac", "abababababc", "aabbaabbaabbc", "bbbaaabbbaaac"] {
        // the last symbol serves as the terminator and must be unique; the
        // demo strings are chosen that way
        let text = a.encode(input.as_bytes()).unwrap();
        let result = minruns::minimize(&text, &a).unwrap();
        let std_runs = run_count(
            &suffix::transform(&text, &OrderingScheme::standard(a.clone()))
                .unwrap()
                .last_column,
        );
        let abwt_runs = run_count(
            &suffix::transform(&text, &OrderingScheme::alternating(a.clone()))
                .unwrap()
                .last_column,
        );
        println!("{input}:");
        println!(
            "  classic {std_runs} runs, alternating {abwt_runs} runs, optimum {}",
            result.opt
        );
        println!(
            "  witness output {} (I = {})",
            String::from_utf8_lossy(&a.decode(&result.output.last_column)),
            result.output.primary
        );

        // the witness is an ordinary explicit scheme: replaying it through
        // the transform reproduces the optimal output
        let scheme = result.assignment.to_scheme(&a).unwrap();
        let replay = suffix::transform(&text, &scheme).unwrap();
        assert_eq!(replay, result.output);
        assert_eq!(run_count(&replay.last_column), result.opt);
    }
}
