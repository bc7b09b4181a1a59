//! Context-adaptive Burrows-Wheeler transforms.
//!
//! The classic BWT sorts all cyclic rotations of a string in lexicographic
//! order and outputs the last column of the sorted matrix. This crate
//! implements the family of transforms obtained by letting the alphabet
//! order used to break a tie between two rotations depend on their longest
//! common prefix (the *context*), together with the machinery that makes
//! those transforms useful:
//!
//! - [`OrderingScheme`]: the rule assigning an alphabet permutation to every
//!   context. Five flavors: constant (classic BWT), position-mod-k
//!   (alternating orders by context length), ± orderings (a base permutation
//!   or its reversal per context), local orderings (permutation depends only
//!   on the last `k` context symbols), and explicit finite context maps.
//! - [`suffix`]: suffix-array based forward transform for any scheme.
//! - [`engine`]: pattern counting and inversion. The general engine works
//!   for every scheme in quadratic time; the ± engine drops a σ factor; the
//!   local engine counts in `O(p)` rank queries, inverts in linear time, and
//!   supports toehold locate from run-boundary samples.
//! - [`minruns`]: a dynamic program over the suffix tree that finds the
//!   scheme minimizing the number of runs in the output.
//! - [`oracle`]: a deliberately naive rotation-matrix implementation used to
//!   cross-check everything at small scale.
//!
//! Run `cargo run --example transform_variants` for a tour, or use the
//! `cabwt` binary for file-level transform / invert / count / locate /
//! minruns / stats operations.

pub mod alphabet;
pub mod cli;
pub mod container;
pub mod engine;
mod error;
pub mod minruns;
pub mod oracle;
pub mod rank;
pub mod scheme;
pub mod suffix;

pub use alphabet::{Alphabet, Permutation, Sym};
pub use error::Error;
pub use rank::{run_count, IndexedSequence};
pub use scheme::OrderingScheme;
pub use suffix::TransformOutput;
