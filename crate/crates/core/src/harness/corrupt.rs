//! A deliberately buggy store wrapper, used to prove the differential
//! runner actually catches disagreements.

use crate::perm::Permutation;
use crate::store::{Distance, OpError, PermutationStore};

/// Forwards everything to the inner store, but once more than
/// `healthy_ops` trait calls have been made, element-returning queries
/// (`apply`, `inverse`, `power`) start reporting the wrong element
/// (`v % n + 1` instead of `v`). Updates and snapshots stay truthful, so
/// the first lie is the exact detection point.
pub struct CorruptedStore<S> {
    inner: S,
    healthy_ops: usize,
    seen: usize,
}

impl<S: PermutationStore> CorruptedStore<S> {
    pub fn new(inner: S, healthy_ops: usize) -> Self {
        CorruptedStore { inner, healthy_ops, seen: 0 }
    }

    fn twist(&mut self, r: Result<u32, OpError>) -> Result<u32, OpError> {
        self.seen += 1;
        let lying = self.seen > self.healthy_ops;
        let n = self.inner.len();
        match r {
            Ok(v) if lying && n > 0 => Ok(v % n + 1),
            other => other,
        }
    }
}

impl<S: PermutationStore> PermutationStore for CorruptedStore<S> {
    fn len(&self) -> u32 {
        self.inner.len()
    }

    fn apply(&mut self, i: u32) -> Result<u32, OpError> {
        let r = self.inner.apply(i);
        self.twist(r)
    }

    fn inverse(&mut self, j: u32) -> Result<u32, OpError> {
        let r = self.inner.inverse(j);
        self.twist(r)
    }

    fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError> {
        let r = self.inner.power(i, k);
        self.twist(r)
    }

    fn num_cycles(&self) -> u32 {
        self.inner.num_cycles()
    }

    fn cycle_size(&mut self, i: u32) -> Result<u32, OpError> {
        self.seen += 1;
        self.inner.cycle_size(i)
    }

    fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError> {
        self.seen += 1;
        self.inner.same_cycle(i, j)
    }

    fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError> {
        self.seen += 1;
        self.inner.distance(i, j)
    }

    fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        self.seen += 1;
        self.inner.transpose_at(i, j)
    }

    fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        self.seen += 1;
        self.inner.transpose_values(i, j)
    }

    fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        self.seen += 1;
        self.inner.flip(i, j)
    }

    fn to_one_line(&self) -> Permutation {
        self.inner.to_one_line()
    }
}
