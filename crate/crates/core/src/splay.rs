//! Bottom-up splay forest over a flat arena with implicit keys.
//!
//! Nodes are keyed by in-order position only; no comparisons ever happen.
//! Each node stores a signed subtree size: `|size|` is the node count and a
//! negative sign marks the whole subtree as lazily reversed. `fix` resolves
//! one level of that laziness, and every descent or splay step fixes each
//! node before reading its children, so a sign is never more than one level
//! stale along any path being walked.

use std::cmp::Ordering;

/// Arena index of a node. Element `e` of the permutation lives at slot `e`;
/// slot 0 is the NIL sentinel and must stay empty.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
#[repr(transparent)]
pub struct NodeId(u32);

impl NodeId {
    pub const NIL: NodeId = NodeId(0);

    #[inline]
    pub fn element(e: u32) -> NodeId {
        debug_assert!(e > 0, "elements are 1-based");
        NodeId(e)
    }

    #[inline]
    pub fn is_nil(self) -> bool {
        self.0 == 0
    }

    /// The element this node represents. Panics on NIL.
    #[inline]
    pub fn get(self) -> u32 {
        debug_assert!(!self.is_nil());
        self.0
    }

    #[inline]
    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Debug for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_nil() {
            f.write_str("nil")
        } else {
            write!(f, "n{}", self.0)
        }
    }
}

#[derive(Clone, Copy)]
struct NodeRecord {
    parent: NodeId,
    left: NodeId,
    right: NodeId,
    // |size| = nodes in this subtree; size < 0 = pending reversal
    size: i32,
}

impl NodeRecord {
    const EMPTY: NodeRecord =
        NodeRecord { parent: NodeId::NIL, left: NodeId::NIL, right: NodeId::NIL, size: 0 };
}

/// Monotone work counters. Callers take deltas; there is no reset.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct Instrumentation {
    pub rotations: u64,
    pub splays: u64,
    pub fixes: u64,
}

impl Instrumentation {
    pub fn since(self, earlier: Instrumentation) -> Instrumentation {
        Instrumentation {
            rotations: self.rotations - earlier.rotations,
            splays: self.splays - earlier.splays,
            fixes: self.fixes - earlier.fixes,
        }
    }
}

/// A forest of splay trees over elements `1..=n`.
pub struct Forest {
    nodes: Vec<NodeRecord>,
    instr: Instrumentation,
}

impl Forest {
    /// Builds one perfectly balanced tree per cycle, in cycle order. The
    /// cycles must partition `1..=n`.
    pub fn from_cycles<C: AsRef<[u32]>>(n: u32, cycles: &[C]) -> Forest {
        let mut f = Forest {
            nodes: vec![NodeRecord::EMPTY; n as usize + 1],
            instr: Instrumentation::default(),
        };
        let mut covered = 0;
        for cycle in cycles {
            f.build_span(cycle.as_ref(), NodeId::NIL);
            covered += cycle.as_ref().len();
        }
        debug_assert_eq!(covered, n as usize, "cycles must cover every element once");
        f
    }

    fn build_span(&mut self, seq: &[u32], parent: NodeId) -> NodeId {
        if seq.is_empty() {
            return NodeId::NIL;
        }
        let mid = seq.len() / 2;
        let v = NodeId::element(seq[mid]);
        let l = self.build_span(&seq[..mid], v);
        let r = self.build_span(&seq[mid + 1..], v);
        self.nodes[v.idx()] = NodeRecord { parent, left: l, right: r, size: seq.len() as i32 };
        v
    }

    pub fn len(&self) -> u32 {
        self.nodes.len() as u32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.len() == 1
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> NodeId {
        self.nodes[v.idx()].parent
    }

    #[inline]
    pub fn left(&self, v: NodeId) -> NodeId {
        self.nodes[v.idx()].left
    }

    #[inline]
    pub fn right(&self, v: NodeId) -> NodeId {
        self.nodes[v.idx()].right
    }

    /// Signed size; negative means the subtree reads reversed.
    #[inline]
    pub fn size(&self, v: NodeId) -> i32 {
        self.nodes[v.idx()].size
    }

    /// Node count of the subtree, sign resolved. 0 for NIL.
    #[inline]
    pub fn subtree_count(&self, v: NodeId) -> u32 {
        self.nodes[v.idx()].size.unsigned_abs()
    }

    #[inline]
    pub fn is_root(&self, v: NodeId) -> bool {
        self.nodes[v.idx()].parent.is_nil()
    }

    pub fn instrumentation(&self) -> Instrumentation {
        self.instr
    }

    /// Resolves a pending reversal at `v`: negates the size, swaps the
    /// children and flags each of them. No-op on NIL or unflagged nodes;
    /// the represented sequence never changes.
    pub fn fix(&mut self, v: NodeId) {
        if self.nodes[v.idx()].size >= 0 {
            return;
        }
        let node = &mut self.nodes[v.idx()];
        node.size = -node.size;
        std::mem::swap(&mut node.left, &mut node.right);
        let (l, r) = (node.left, node.right);
        if !l.is_nil() {
            self.nodes[l.idx()].size = -self.nodes[l.idx()].size;
        }
        if !r.is_nil() {
            self.nodes[r.idx()].size = -self.nodes[r.idx()].size;
        }
        self.instr.fixes += 1;
    }

    /// Rotates `x` above its parent. `x` and its parent must be fixed; the
    /// subtree that changes sides may stay flagged. The promoted node takes
    /// over the demoted node's size `e`; the demoted one keeps `e - d + b`
    /// where `d` was the promoted size and `b` the transferred subtree.
    pub fn rotate_edge(&mut self, x: NodeId) {
        let p = self.parent(x);
        assert!(!p.is_nil(), "rotate_edge: {x:?} is a root");
        debug_assert!(self.size(x) >= 0 && self.size(p) >= 0, "rotate_edge: unfixed operands");
        let g = self.parent(p);
        let e = self.size(p);
        let d = self.size(x);
        let x_on_left = self.left(p) == x;
        let b = if x_on_left { self.right(x) } else { self.left(x) };
        if x_on_left {
            self.nodes[x.idx()].right = p;
            self.nodes[p.idx()].left = b;
        } else {
            self.nodes[x.idx()].left = p;
            self.nodes[p.idx()].right = b;
        }
        if !b.is_nil() {
            self.nodes[b.idx()].parent = p;
        }
        self.nodes[p.idx()].parent = x;
        self.nodes[x.idx()].parent = g;
        if !g.is_nil() {
            let gr = &mut self.nodes[g.idx()];
            if gr.left == p {
                gr.left = x;
            } else {
                gr.right = x;
            }
        }
        self.nodes[x.idx()].size = e;
        self.nodes[p.idx()].size = e - d + self.nodes[b.idx()].size.abs();
        self.instr.rotations += 1;
    }

    /// Splays `x` to the root of its tree. Each step fixes grandparent,
    /// parent, then `x` before rotating (a fix can swap the children the
    /// step is about to read). In a zig-zig the grandparent edge rotates
    /// first. Ends with `x` fixed so callers can read its children.
    pub fn splay(&mut self, x: NodeId) {
        debug_assert!(!x.is_nil());
        loop {
            let p = self.parent(x);
            if p.is_nil() {
                break;
            }
            let g = self.parent(p);
            self.fix(g);
            self.fix(p);
            self.fix(x);
            if g.is_nil() {
                self.rotate_edge(x);
            } else if (self.left(g) == p) == (self.left(p) == x) {
                self.rotate_edge(p);
                self.rotate_edge(x);
            } else {
                self.rotate_edge(x);
                self.rotate_edge(x);
            }
        }
        self.fix(x);
        self.instr.splays += 1;
    }

    /// Splays `x`, then detaches its right subtree. Returns the two roots:
    /// `x` keeping everything up to itself, and the remainder (may be NIL).
    pub fn split_after(&mut self, x: NodeId) -> (NodeId, NodeId) {
        self.splay(x);
        let r = self.right(x);
        if !r.is_nil() {
            self.nodes[r.idx()].parent = NodeId::NIL;
            self.nodes[x.idx()].right = NodeId::NIL;
            self.nodes[x.idx()].size -= self.nodes[r.idx()].size.abs();
        }
        (x, r)
    }

    /// Concatenates `t2`'s sequence after `t1`'s. Splays the maximum of
    /// `t1` and hangs `t2` off it. Returns the merged root.
    pub fn join(&mut self, t1: NodeId, t2: NodeId) -> NodeId {
        assert!(!t1.is_nil() && self.is_root(t1), "join: t1 must be a live root");
        if t2.is_nil() {
            return t1;
        }
        assert!(self.is_root(t2) && t1 != t2, "join: t2 must be a distinct root");
        let m = self.rightmost(t1);
        self.splay(m);
        self.nodes[m.idx()].right = t2;
        self.nodes[t2.idx()].parent = m;
        self.nodes[m.idx()].size += self.nodes[t2.idx()].size.abs();
        m
    }

    /// In-order minimum of the subtree at `from`, fixing every visited node.
    pub fn leftmost(&mut self, from: NodeId) -> NodeId {
        debug_assert!(!from.is_nil());
        let mut v = from;
        loop {
            self.fix(v);
            let l = self.left(v);
            if l.is_nil() {
                return v;
            }
            v = l;
        }
    }

    /// In-order maximum of the subtree at `from`, fixing every visited node.
    pub fn rightmost(&mut self, from: NodeId) -> NodeId {
        debug_assert!(!from.is_nil());
        let mut v = from;
        loop {
            self.fix(v);
            let r = self.right(v);
            if r.is_nil() {
                return v;
            }
            v = r;
        }
    }

    /// The `rank`-th node (1-based) of the subtree at `root`, by signed-size
    /// descent. Does not splay. Panics if `rank` is out of range.
    pub fn select(&mut self, root: NodeId, rank: u32) -> NodeId {
        assert!(
            !root.is_nil() && rank >= 1 && rank <= self.subtree_count(root),
            "select: rank {rank} out of range"
        );
        let mut v = root;
        let mut rank = rank as i32;
        loop {
            self.fix(v);
            let pivot = self.nodes[self.left(v).idx()].size.abs() + 1;
            match rank.cmp(&pivot) {
                Ordering::Equal => return v,
                Ordering::Less => v = self.left(v),
                Ordering::Greater => {
                    rank -= pivot;
                    v = self.right(v);
                }
            }
        }
    }

    /// Flags the subtree at `v` to read reversed (or unflags it). No-op on
    /// NIL. Constant time.
    pub fn toggle_reverse(&mut self, v: NodeId) {
        if !v.is_nil() {
            self.nodes[v.idx()].size = -self.nodes[v.idx()].size;
        }
    }

    /// The represented sequence of the subtree at `root`, all pending
    /// reversals resolved on the fly. Non-mutating.
    pub fn in_order(&self, root: NodeId) -> Vec<u32> {
        enum Step {
            Enter(NodeId, bool),
            Emit(NodeId),
        }
        let mut out = Vec::new();
        if root.is_nil() {
            return out;
        }
        out.reserve(self.subtree_count(root) as usize);
        let mut stack = vec![Step::Enter(root, false)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Enter(v, flip) => {
                    if v.is_nil() {
                        continue;
                    }
                    let flip = flip ^ (self.size(v) < 0);
                    let (first, second) = if flip {
                        (self.right(v), self.left(v))
                    } else {
                        (self.left(v), self.right(v))
                    };
                    stack.push(Step::Enter(second, flip));
                    stack.push(Step::Emit(v));
                    stack.push(Step::Enter(first, flip));
                }
                Step::Emit(v) => out.push(v.get()),
            }
        }
        out
    }

    /// Sum of log2 of every subtree count in the forest. Unchanged by `fix`
    /// and `toggle_reverse`; rotations move it.
    pub fn potential(&self) -> f64 {
        self.nodes[1..].iter().map(|n| (n.size.abs() as f64).log2()).sum()
    }

    /// Structural audit: sentinel untouched, sizes consistent, links mutual,
    /// trees acyclic and covering every element exactly once.
    pub fn check_invariants(&self) -> Result<(), String> {
        let s = &self.nodes[0];
        if !s.parent.is_nil() || !s.left.is_nil() || !s.right.is_nil() || s.size != 0 {
            return Err("sentinel slot clobbered".into());
        }
        for i in 1..self.nodes.len() {
            let rec = &self.nodes[i];
            if rec.size == 0 {
                return Err(format!("node {i}: zero size"));
            }
            let mut expect = 1;
            for child in [rec.left, rec.right] {
                if child.is_nil() {
                    continue;
                }
                if self.nodes[child.idx()].parent.idx() != i {
                    return Err(format!("node {i}: child {} does not point back", child.0));
                }
                expect += self.nodes[child.idx()].size.abs();
            }
            if rec.size.abs() != expect {
                return Err(format!(
                    "node {i}: size {} but children total {}",
                    rec.size,
                    expect - 1
                ));
            }
            if !rec.parent.is_nil() {
                let p = &self.nodes[rec.parent.idx()];
                if p.left.idx() != i && p.right.idx() != i {
                    return Err(format!("node {i}: parent {} disowns it", rec.parent.0));
                }
            }
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut reached = 0usize;
        let mut stack = Vec::new();
        for i in 1..self.nodes.len() {
            if !self.nodes[i].parent.is_nil() {
                continue;
            }
            stack.push(i);
            while let Some(v) = stack.pop() {
                if seen[v] {
                    return Err(format!("node {v}: reached twice"));
                }
                seen[v] = true;
                reached += 1;
                for c in [self.nodes[v].left, self.nodes[v].right] {
                    if !c.is_nil() {
                        stack.push(c.idx());
                    }
                }
            }
        }
        if reached != self.nodes.len() - 1 {
            return Err(format!("{} of {} nodes reachable from roots", reached, self.nodes.len() - 1));
        }
        Ok(())
    }
}
