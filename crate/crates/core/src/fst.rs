//! A permutation kept as a forest of splay trees, one tree per cycle.
//!
//! The in-order sequence of a tree is some rotation of its cycle, so any
//! rotation of a cycle represents the same permutation and operations are
//! free to re-root and re-linearize as they go. Successor queries splay and
//! read a neighbor; transpositions are a split or a join; flips toggle one
//! lazy reversal flag. A cycle counter rides along and is maintained in
//! constant time.

use crate::perm::{PermError, Permutation};
use crate::splay::{Forest, Instrumentation, NodeId};
use crate::store::{Distance, OpError, PermutationStore};

pub struct FstPermutation {
    forest: Forest,
    cycles: u32,
    n: u32,
}

impl FstPermutation {
    /// One pass of cycle decomposition, then a perfectly balanced tree per
    /// cycle. Linear time; the result's potential is within a couple of
    /// bits per element of the floor.
    pub fn build(perm: &Permutation) -> FstPermutation {
        let cycles = perm.cycles();
        FstPermutation {
            forest: Forest::from_cycles(perm.len(), &cycles),
            cycles: cycles.len() as u32,
            n: perm.len(),
        }
    }

    /// Validates and builds in one step.
    pub fn from_one_line(images: Vec<u32>) -> Result<FstPermutation, PermError> {
        Ok(Self::build(&Permutation::from_one_line(images)?))
    }

    pub fn len(&self) -> u32 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Constant-time cycle count, updated by each transposition.
    pub fn num_cycles(&self) -> u32 {
        self.cycles
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn instrumentation(&self) -> Instrumentation {
        self.forest.instrumentation()
    }

    fn node(&self, i: u32) -> Result<NodeId, OpError> {
        if i == 0 || i > self.n {
            return Err(OpError::OutOfRange { element: i, n: self.n });
        }
        Ok(NodeId::element(i))
    }

    /// The image of `i`: splay it, then take the leftmost node of its right
    /// subtree, wrapping to the tree minimum when `i` is last.
    pub fn apply(&mut self, i: u32) -> Result<u32, OpError> {
        let x = self.node(i)?;
        self.forest.splay(x);
        let from = if self.forest.right(x).is_nil() { x } else { self.forest.right(x) };
        let succ = self.forest.leftmost(from);
        self.forest.splay(succ);
        Ok(succ.get())
    }

    /// The preimage of `j`: mirror image of `apply`, wrapping to the tree
    /// maximum when `j` is first.
    pub fn inverse(&mut self, j: u32) -> Result<u32, OpError> {
        let y = self.node(j)?;
        self.forest.splay(y);
        let from = if self.forest.left(y).is_nil() { y } else { self.forest.left(y) };
        let pred = self.forest.rightmost(from);
        self.forest.splay(pred);
        Ok(pred.get())
    }

    /// The k-th iterate of `i` for any signed `k`, reduced modulo the cycle
    /// length, found by one rank selection instead of k steps.
    pub fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError> {
        let x = self.node(i)?;
        self.forest.splay(x);
        let c = self.forest.subtree_count(x) as i64;
        let k = k.rem_euclid(c);
        if k == 0 {
            return Ok(i);
        }
        let right = self.forest.right(x);
        let rs = self.forest.subtree_count(right) as i64;
        let ans = if k <= rs {
            self.forest.select(right, k as u32)
        } else {
            // wraps past the end of the linearization; x is still the root
            self.forest.select(x, (k - rs) as u32)
        };
        self.forest.splay(ans);
        Ok(ans.get())
    }

    /// Length of the cycle through `i`.
    pub fn cycle_size(&mut self, i: u32) -> Result<u32, OpError> {
        let x = self.node(i)?;
        self.forest.splay(x);
        Ok(self.forest.subtree_count(x))
    }

    /// Splay `i`, splay `j`; they share a tree exactly when `i` ends up
    /// dethroned.
    pub fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError> {
        let x = self.node(i)?;
        let y = self.node(j)?;
        if x == y {
            return Ok(true);
        }
        self.forest.splay(x);
        self.forest.splay(y);
        Ok(!self.forest.parent(x).is_nil())
    }

    /// Steps from `i` forward to `j`: rotate `j` to the back of the
    /// linearization, splay `i`, count what follows it.
    pub fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError> {
        let x = self.node(i)?;
        let y = self.node(j)?;
        if x == y {
            return Ok(Distance::Finite(0));
        }
        if !self.same_cycle(i, j)? {
            return Ok(Distance::Infinite);
        }
        self.rotate_cycle_node(y);
        self.forest.splay(x);
        Ok(Distance::Finite(self.forest.subtree_count(self.forest.right(x))))
    }

    /// Re-linearizes the cycle of `i` so that `i` comes last. The
    /// represented permutation does not change.
    pub fn rotate_cycle(&mut self, i: u32) -> Result<(), OpError> {
        let x = self.node(i)?;
        self.rotate_cycle_node(x);
        Ok(())
    }

    fn rotate_cycle_node(&mut self, x: NodeId) {
        let (front, rest) = self.forest.split_after(x);
        if !rest.is_nil() {
            self.forest.join(rest, front);
        }
    }

    /// Compose the transposition (image(i) image(j)) before the
    /// permutation. A shared cycle splits in two; distinct cycles merge.
    pub fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        let x = self.node(i)?;
        let y = self.node(j)?;
        if x == y {
            return Err(OpError::EqualArguments { element: i });
        }
        if self.same_cycle(i, j)? {
            // with i last the linearization reads (A j B i); cutting right
            // after j leaves the two new cycles (A j) and (B i)
            self.rotate_cycle_node(x);
            self.forest.split_after(y);
            self.cycles += 1;
        } else {
            // (B A i) then (E D j) concatenate into one cycle (B A i E D j)
            self.rotate_cycle_node(x);
            self.rotate_cycle_node(y);
            self.forest.splay(x);
            self.forest.splay(y);
            self.forest.join(x, y);
            self.cycles -= 1;
        }
        Ok(())
    }

    /// Compose the transposition (i j) before the permutation: resolve both
    /// preimages, then transpose at those positions.
    pub fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        self.node(i)?;
        self.node(j)?;
        if i == j {
            return Err(OpError::EqualArguments { element: i });
        }
        let a = self.inverse(i)?;
        let b = self.inverse(j)?;
        self.transpose_at(a, b)
    }

    /// Reverse the forward path from `i` to `j` within their shared cycle.
    /// The segment is isolated as one subtree and its reversal flag
    /// toggled; only the boundary nodes are splayed.
    pub fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        let x = self.node(i)?;
        let y = self.node(j)?;
        if x == y {
            return Ok(());
        }
        if !self.same_cycle(i, j)? {
            return Err(OpError::DifferentCycles { i, j });
        }
        let succ_e = self.apply(j)?;
        if succ_e == i {
            // the segment is the whole cycle; reverse it where it stands
            self.forest.splay(x);
            self.forest.toggle_reverse(x);
            return Ok(());
        }
        let succ = NodeId::element(succ_e);
        let pred = NodeId::element(self.inverse(i)?);
        self.rotate_cycle_node(succ);
        self.forest.splay(succ);
        if pred == succ {
            // segment = cycle minus one element: everything left of succ
            self.forest.toggle_reverse(self.forest.left(succ));
            return Ok(());
        }
        self.forest.splay(pred);
        if self.forest.right(pred) != succ {
            // the final splay step was a zig-zig, leaving succ one level
            // down the right spine; a single rotation lifts it back
            let p = self.forest.parent(succ);
            self.forest.fix(self.forest.parent(p));
            self.forest.fix(p);
            self.forest.fix(succ);
            self.forest.rotate_edge(succ);
        }
        debug_assert_eq!(self.forest.right(pred), succ);
        self.forest.toggle_reverse(self.forest.left(succ));
        Ok(())
    }

    /// Snapshot in one-line notation: walk each tree once. Non-mutating.
    pub fn to_one_line(&self) -> Permutation {
        let mut images = vec![0u32; self.n as usize];
        for e in 1..=self.n {
            let v = NodeId::element(e);
            if !self.forest.is_root(v) {
                continue;
            }
            let cycle = self.forest.in_order(v);
            for w in cycle.windows(2) {
                images[w[0] as usize - 1] = w[1];
            }
            images[cycle[cycle.len() - 1] as usize - 1] = cycle[0];
        }
        Permutation::from_one_line(images).expect("forest always represents a permutation")
    }
}

impl PermutationStore for FstPermutation {
    fn len(&self) -> u32 {
        self.n
    }

    fn apply(&mut self, i: u32) -> Result<u32, OpError> {
        FstPermutation::apply(self, i)
    }

    fn inverse(&mut self, j: u32) -> Result<u32, OpError> {
        FstPermutation::inverse(self, j)
    }

    fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError> {
        FstPermutation::power(self, i, k)
    }

    fn num_cycles(&self) -> u32 {
        FstPermutation::num_cycles(self)
    }

    fn cycle_size(&mut self, i: u32) -> Result<u32, OpError> {
        FstPermutation::cycle_size(self, i)
    }

    fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError> {
        FstPermutation::same_cycle(self, i, j)
    }

    fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError> {
        FstPermutation::distance(self, i, j)
    }

    fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        FstPermutation::transpose_at(self, i, j)
    }

    fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        FstPermutation::transpose_values(self, i, j)
    }

    fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        FstPermutation::flip(self, i, j)
    }

    fn to_one_line(&self) -> Permutation {
        FstPermutation::to_one_line(self)
    }

    fn instrumentation(&self) -> Option<Instrumentation> {
        Some(self.forest.instrumentation())
    }

    fn potential(&self) -> Option<f64> {
        Some(self.forest.potential())
    }
}
