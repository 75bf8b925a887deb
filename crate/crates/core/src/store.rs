//! The permutation-store interface every implementation answers to, so the
//! splay forest and the naive oracles are interchangeable at runtime.

use crate::fst::FstPermutation;
use crate::oracle::{OneLineOracle, OneLinePlusInverseOracle};
use crate::perm::Permutation;
use crate::splay::Instrumentation;
use std::fmt;

/// Why an operation was refused. Mirrored exactly by every implementation
/// so differential runs can compare error outcomes too.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("element {element} out of range 1..={n}")]
    OutOfRange { element: u32, n: u32 },
    #[error("arguments must differ, both are {element}")]
    EqualArguments { element: u32 },
    #[error("elements {i} and {j} are in different cycles")]
    DifferentCycles { i: u32, j: u32 },
}

/// Steps from one element to another along its cycle; infinite across
/// cycles. Displays as the number, or `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Dynamic-permutation operations over elements `1..=n`. Queries take
/// `&mut self`: the splay-backed store restructures on every read.
pub trait PermutationStore {
    /// Number of elements n.
    fn len(&self) -> u32;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The image of `i`.
    fn apply(&mut self, i: u32) -> Result<u32, OpError>;

    /// The preimage of `j`.
    fn inverse(&mut self, j: u32) -> Result<u32, OpError>;

    /// The k-th iterate of `i`; `k` may be any signed 64-bit value.
    fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError>;

    /// Number of cycles, counting fixpoints.
    fn num_cycles(&self) -> u32;

    /// Length of the cycle containing `i`.
    fn cycle_size(&mut self, i: u32) -> Result<u32, OpError>;

    fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError>;

    /// Steps from `i` forward to `j`; 0 when `i == j`, infinite across
    /// cycles.
    fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError>;

    /// Replace the permutation by (image(i) image(j)) composed before it.
    /// Splits a shared cycle, merges two distinct ones. `i == j` is refused.
    fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError>;

    /// Replace the permutation by (i j) composed before it. `i == j` is
    /// refused.
    fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError>;

    /// Reverse the forward path from `i` to `j` inside their shared cycle.
    /// `i == j` is a no-op; distinct cycles are refused.
    fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError>;

    /// Snapshot in one-line notation. Non-mutating.
    fn to_one_line(&self) -> Permutation;

    /// Work counters, for stores that keep them.
    fn instrumentation(&self) -> Option<Instrumentation> {
        None
    }

    /// Sum of log2 subtree sizes, for stores built on trees.
    fn potential(&self) -> Option<f64> {
        None
    }
}

impl<S: PermutationStore + ?Sized> PermutationStore for Box<S> {
    fn len(&self) -> u32 {
        (**self).len()
    }

    fn is_empty(&self) -> bool {
        (**self).is_empty()
    }

    fn apply(&mut self, i: u32) -> Result<u32, OpError> {
        (**self).apply(i)
    }

    fn inverse(&mut self, j: u32) -> Result<u32, OpError> {
        (**self).inverse(j)
    }

    fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError> {
        (**self).power(i, k)
    }

    fn num_cycles(&self) -> u32 {
        (**self).num_cycles()
    }

    fn cycle_size(&mut self, i: u32) -> Result<u32, OpError> {
        (**self).cycle_size(i)
    }

    fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError> {
        (**self).same_cycle(i, j)
    }

    fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError> {
        (**self).distance(i, j)
    }

    fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        (**self).transpose_at(i, j)
    }

    fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        (**self).transpose_values(i, j)
    }

    fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        (**self).flip(i, j)
    }

    fn to_one_line(&self) -> Permutation {
        (**self).to_one_line()
    }

    fn instrumentation(&self) -> Option<Instrumentation> {
        (**self).instrumentation()
    }

    fn potential(&self) -> Option<f64> {
        (**self).potential()
    }
}

/// Which backing store to run. Selectable on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImplKind {
    Fst,
    OneLine,
    OneLineInv,
}

impl ImplKind {
    pub const ALL: [ImplKind; 3] = [ImplKind::Fst, ImplKind::OneLine, ImplKind::OneLineInv];

    pub fn name(self) -> &'static str {
        match self {
            ImplKind::Fst => "fst",
            ImplKind::OneLine => "oneline",
            ImplKind::OneLineInv => "oneline-inv",
        }
    }

    pub fn from_name(name: &str) -> Option<ImplKind> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn build(self, perm: &Permutation) -> Box<dyn PermutationStore> {
        match self {
            ImplKind::Fst => Box::new(FstPermutation::build(perm)),
            ImplKind::OneLine => Box::new(OneLineOracle::build(perm)),
            ImplKind::OneLineInv => Box::new(OneLinePlusInverseOracle::build(perm)),
        }
    }
}

impl fmt::Display for ImplKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
