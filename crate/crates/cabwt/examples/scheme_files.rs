//! The textual scheme format: parse a scheme from text, resolve a few
//! contexts, and serialize it back in canonical form.
//!
//! ```text
//! cargo run --example scheme_files
//! ```

use cabwt::scheme::OrderingScheme;

fn main() {
    let text = "\
# a local ordering of order 1
kind=local k=1
alphabet=abc
default=abc
ctx:=bca        # empty context
ctx:a=bac
";
    let scheme = OrderingScheme::parse(text).unwrap();
    let a = scheme.alphabet().clone();

    println!("parsed a local scheme with k = {:?}", scheme.local_k());
    for ctx in ["", "a", "ba", "baa", "ab", "c"] {
        let syms = a.encode(ctx.as_bytes()).unwrap();
        let pi = scheme.resolve(&syms).unwrap();
        let order: Vec<u8> = pi.order().iter().map(|&r| a.byte(r)).collect();
        println!(
            "  context {:<4} -> ({})",
            if ctx.is_empty() { "ε" } else { ctx },
            String::from_utf8_lossy(&order)
        );
    }

    println!("\ncanonical form:\n{}", scheme.to_text());

    // ± schemes store a base order plus the set of reversed contexts
    let pm = OrderingScheme::parse(
        "kind=pm base=bac default=+ parity=off\nalphabet=abc\nneg:a\nneg:aaba\n",
    )
    .unwrap();
    println!("± scheme round trip:\n{}", pm.to_text());

    // alphabets with unprintable bytes use \xHH escapes
    let binary = OrderingScheme::parse("kind=const pi=\\x00ab\nalphabet=\\x00ab\n").unwrap();
    println!(
        "binary alphabet: {}",
        binary.to_text().lines().next().unwrap()
    );
}
