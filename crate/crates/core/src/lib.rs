//! Dynamic permutation maintenance over a forest of splay trees.
//!
//! A permutation of `1..=n` is stored as one splay tree per cycle, keyed
//! implicitly by in-order position. Successor, predecessor, k-th power,
//! cycle membership, cycle length, and cyclic distance run in amortized
//! `O(log n)`; composing with a transposition (given either positions or
//! values) and reversing a cycle segment are a constant number of splits
//! and joins, also amortized `O(log n)`. The number of cycles is
//! maintained exactly under all updates.
//!
//! - [`FstPermutation`] is that structure behind the [`PermutationStore`]
//!   trait.
//! - [`oracle`] holds two deliberately naive array-based stores used as
//!   ground truth.
//! - [`harness`] generates reproducible op scripts, runs two stores
//!   differentially, and measures scaling.
//!
//! ```
//! use cyclefst::{FstPermutation, Permutation, PermutationStore};
//!
//! let perm: Permutation = "1 3 6 4 2 8 11 5 10 7 9".parse().unwrap();
//! let mut store = FstPermutation::build(&perm);
//! assert_eq!(store.apply(6).unwrap(), 8);
//! assert_eq!(store.power(7, 3).unwrap(), 10);
//! assert_eq!(store.num_cycles(), 4);
//! store.transpose_values(1, 4).unwrap();
//! assert_eq!(store.to_one_line().to_string(), "4 3 6 1 2 8 11 5 10 7 9");
//! ```

pub mod fst;
pub mod harness;
pub mod oracle;
pub mod perm;
pub mod splay;
pub mod store;

pub use fst::FstPermutation;
pub use oracle::{OneLineOracle, OneLinePlusInverseOracle};
pub use perm::{ParsePermError, PermError, Permutation};
pub use splay::{Forest, Instrumentation, NodeId};
pub use store::{Distance, ImplKind, OpError, PermutationStore};
