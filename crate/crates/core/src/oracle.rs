//! Reference stores that are obviously correct: plain one-line arrays with
//! every cycle query answered by walking the cycle. Nothing is cached, so
//! their per-operation costs are the naive ones the forest is measured
//! against.

use crate::perm::Permutation;
use crate::store::{Distance, OpError, PermutationStore};

#[inline]
fn check(i: u32, n: u32) -> Result<(), OpError> {
    if i == 0 || i > n {
        return Err(OpError::OutOfRange { element: i, n });
    }
    Ok(())
}

#[inline]
fn at(fwd: &[u32], i: u32) -> u32 {
    fwd[i as usize - 1]
}

fn walk_inverse(fwd: &[u32], j: u32) -> u32 {
    let mut k = j;
    while at(fwd, k) != j {
        k = at(fwd, k);
    }
    k
}

fn walk_cycle_len(fwd: &[u32], i: u32) -> u32 {
    let mut len = 1;
    let mut k = at(fwd, i);
    while k != i {
        len += 1;
        k = at(fwd, k);
    }
    len
}

fn walk_power(fwd: &[u32], i: u32, k: i64) -> u32 {
    let c = walk_cycle_len(fwd, i) as i64;
    let mut steps = k.rem_euclid(c);
    let mut v = i;
    while steps > 0 {
        v = at(fwd, v);
        steps -= 1;
    }
    v
}

fn walk_same_cycle(fwd: &[u32], i: u32, j: u32) -> bool {
    if i == j {
        return true;
    }
    let mut k = at(fwd, i);
    while k != i {
        if k == j {
            return true;
        }
        k = at(fwd, k);
    }
    false
}

fn walk_distance(fwd: &[u32], i: u32, j: u32) -> Distance {
    if i == j {
        return Distance::Finite(0);
    }
    let mut steps = 1;
    let mut k = at(fwd, i);
    while k != i {
        if k == j {
            return Distance::Finite(steps);
        }
        steps += 1;
        k = at(fwd, k);
    }
    Distance::Infinite
}

fn count_cycles(fwd: &[u32]) -> u32 {
    let mut seen = vec![false; fwd.len() + 1];
    let mut cycles = 0;
    for start in 1..=fwd.len() as u32 {
        if seen[start as usize] {
            continue;
        }
        cycles += 1;
        let mut v = start;
        while !seen[v as usize] {
            seen[v as usize] = true;
            v = at(fwd, v);
        }
    }
    cycles
}

/// The image rewrites a flip performs, as (position, new image) pairs.
/// Walks the cycle from `i`; refuses if it returns to `i` before hitting
/// `j`.
fn flip_rewiring(fwd: &[u32], i: u32, j: u32) -> Result<Vec<(u32, u32)>, OpError> {
    if i == j {
        return Ok(Vec::new());
    }
    let mut seg = vec![i];
    let mut v = i;
    loop {
        v = at(fwd, v);
        if v == i {
            return Err(OpError::DifferentCycles { i, j });
        }
        seg.push(v);
        if v == j {
            break;
        }
    }
    let succ = at(fwd, j);
    let mut out = Vec::with_capacity(seg.len() + 1);
    for w in seg.windows(2) {
        out.push((w[1], w[0]));
    }
    if succ == i {
        // the segment was the whole cycle; close it the other way round
        out.push((i, j));
    } else {
        let mut pred = succ;
        while at(fwd, pred) != i {
            pred = at(fwd, pred);
        }
        out.push((pred, j));
        out.push((i, succ));
    }
    Ok(out)
}

/// One-line array only. Forward lookups are O(1); everything else walks.
pub struct OneLineOracle {
    fwd: Vec<u32>,
}

impl OneLineOracle {
    pub fn build(perm: &Permutation) -> Self {
        Self { fwd: perm.as_slice().to_vec() }
    }

    fn n(&self) -> u32 {
        self.fwd.len() as u32
    }
}

impl PermutationStore for OneLineOracle {
    fn len(&self) -> u32 {
        self.n()
    }

    fn apply(&mut self, i: u32) -> Result<u32, OpError> {
        check(i, self.n())?;
        Ok(at(&self.fwd, i))
    }

    fn inverse(&mut self, j: u32) -> Result<u32, OpError> {
        check(j, self.n())?;
        Ok(walk_inverse(&self.fwd, j))
    }

    fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError> {
        check(i, self.n())?;
        Ok(walk_power(&self.fwd, i, k))
    }

    fn num_cycles(&self) -> u32 {
        count_cycles(&self.fwd)
    }

    fn cycle_size(&mut self, i: u32) -> Result<u32, OpError> {
        check(i, self.n())?;
        Ok(walk_cycle_len(&self.fwd, i))
    }

    fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        Ok(walk_same_cycle(&self.fwd, i, j))
    }

    fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        Ok(walk_distance(&self.fwd, i, j))
    }

    fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        if i == j {
            return Err(OpError::EqualArguments { element: i });
        }
        self.fwd.swap(i as usize - 1, j as usize - 1);
        Ok(())
    }

    fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        if i == j {
            return Err(OpError::EqualArguments { element: i });
        }
        let a = walk_inverse(&self.fwd, i);
        let b = walk_inverse(&self.fwd, j);
        self.fwd.swap(a as usize - 1, b as usize - 1);
        Ok(())
    }

    fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        for (pos, img) in flip_rewiring(&self.fwd, i, j)? {
            self.fwd[pos as usize - 1] = img;
        }
        Ok(())
    }

    fn to_one_line(&self) -> Permutation {
        Permutation::from_one_line(self.fwd.clone()).expect("oracle state stays a permutation")
    }
}

/// One-line array plus its inverse array, kept in lockstep. Forward and
/// backward lookups are O(1); cycle walks stay walks.
pub struct OneLinePlusInverseOracle {
    fwd: Vec<u32>,
    bwd: Vec<u32>,
}

impl OneLinePlusInverseOracle {
    pub fn build(perm: &Permutation) -> Self {
        let fwd = perm.as_slice().to_vec();
        let mut bwd = vec![0u32; fwd.len()];
        for (k, &v) in fwd.iter().enumerate() {
            bwd[v as usize - 1] = k as u32 + 1;
        }
        Self { fwd, bwd }
    }

    fn n(&self) -> u32 {
        self.fwd.len() as u32
    }

    fn set(&mut self, pos: u32, img: u32) {
        self.fwd[pos as usize - 1] = img;
        self.bwd[img as usize - 1] = pos;
    }

    /// The two arrays must stay mutual inverses.
    #[cfg(test)]
    fn check_mirror(&self) {
        for pos in 1..=self.n() {
            assert_eq!(at(&self.bwd, at(&self.fwd, pos)), pos, "mirror broken at {pos}");
        }
    }
}

impl PermutationStore for OneLinePlusInverseOracle {
    fn len(&self) -> u32 {
        self.n()
    }

    fn apply(&mut self, i: u32) -> Result<u32, OpError> {
        check(i, self.n())?;
        Ok(at(&self.fwd, i))
    }

    fn inverse(&mut self, j: u32) -> Result<u32, OpError> {
        check(j, self.n())?;
        Ok(at(&self.bwd, j))
    }

    fn power(&mut self, i: u32, k: i64) -> Result<u32, OpError> {
        check(i, self.n())?;
        Ok(walk_power(&self.fwd, i, k))
    }

    fn num_cycles(&self) -> u32 {
        count_cycles(&self.fwd)
    }

    fn cycle_size(&mut self, i: u32) -> Result<u32, OpError> {
        check(i, self.n())?;
        Ok(walk_cycle_len(&self.fwd, i))
    }

    fn same_cycle(&mut self, i: u32, j: u32) -> Result<bool, OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        Ok(walk_same_cycle(&self.fwd, i, j))
    }

    fn distance(&mut self, i: u32, j: u32) -> Result<Distance, OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        Ok(walk_distance(&self.fwd, i, j))
    }

    fn transpose_at(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        if i == j {
            return Err(OpError::EqualArguments { element: i });
        }
        let (vi, vj) = (at(&self.fwd, i), at(&self.fwd, j));
        self.set(i, vj);
        self.set(j, vi);
        Ok(())
    }

    fn transpose_values(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        if i == j {
            return Err(OpError::EqualArguments { element: i });
        }
        let (a, b) = (at(&self.bwd, i), at(&self.bwd, j));
        self.set(a, j);
        self.set(b, i);
        Ok(())
    }

    fn flip(&mut self, i: u32, j: u32) -> Result<(), OpError> {
        check(i, self.n())?;
        check(j, self.n())?;
        for (pos, img) in flip_rewiring(&self.fwd, i, j)? {
            self.set(pos, img);
        }
        Ok(())
    }

    fn to_one_line(&self) -> Permutation {
        Permutation::from_one_line(self.fwd.clone()).expect("oracle state stays a permutation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn figure() -> Permutation {
        "1 3 6 4 2 8 11 5 10 7 9".parse().unwrap()
    }

    #[test]
    fn lookups_on_figure() {
        let mut o = OneLineOracle::build(&figure());
        assert_eq!(o.apply(6), Ok(8));
        assert_eq!(o.apply(5), Ok(2));
        assert_eq!(o.apply(4), Ok(4));
        assert_eq!(o.inverse(2), Ok(5));
        assert_eq!(o.inverse(8), Ok(6));
        assert_eq!(o.inverse(1), Ok(1));
        assert_eq!(o.num_cycles(), 4);
        assert_eq!(o.cycle_size(2), Ok(5));
        assert_eq!(o.cycle_size(4), Ok(1));
        assert_eq!(o.same_cycle(2, 8), Ok(true));
        assert_eq!(o.same_cycle(1, 4), Ok(false));
        assert_eq!(o.same_cycle(9, 9), Ok(true));
        assert_eq!(o.distance(2, 5), Ok(Distance::Finite(4)));
        assert_eq!(o.distance(5, 2), Ok(Distance::Finite(1)));
        assert_eq!(o.distance(5, 5), Ok(Distance::Finite(0)));
        assert_eq!(o.distance(1, 4), Ok(Distance::Infinite));
        assert_eq!(o.apply(0), Err(OpError::OutOfRange { element: 0, n: 11 }));
        assert_eq!(o.apply(12), Err(OpError::OutOfRange { element: 12, n: 11 }));
    }

    #[test]
    fn power_walks_any_exponent() {
        let mut o = OneLineOracle::build(&figure());
        // cycle (2 3 6 8 5)
        assert_eq!(o.power(2, 0), Ok(2));
        assert_eq!(o.power(2, 2), Ok(6));
        assert_eq!(o.power(2, 5), Ok(2));
        assert_eq!(o.power(2, -1), Ok(5));
        assert_eq!(o.power(2, -7), Ok(8));
        assert_eq!(o.power(2, i64::MAX), Ok(o.power(2, (i64::MAX % 5) as i64).unwrap()));
        assert_eq!(o.power(2, i64::MIN), Ok(o.power(2, (i64::MIN).rem_euclid(5)).unwrap()));
        assert_eq!(o.power(4, 1_000_000), Ok(4));
    }

    #[test]
    fn transpose_split_and_join() {
        // 8 2 5 3 1 7 9 4 6 is (1 8 4 3 5)(2)(6 7 9)
        let p: Permutation = "8 2 5 3 1 7 9 4 6".parse().unwrap();
        let mut o = OneLineOracle::build(&p);
        assert_eq!(o.num_cycles(), 3);
        o.transpose_at(1, 4).unwrap();
        assert_eq!(o.to_one_line().to_string(), "3 2 5 8 1 7 9 4 6");
        assert_eq!(o.num_cycles(), 4);
        o.transpose_at(3, 6).unwrap();
        assert_eq!(o.to_one_line().to_string(), "3 2 7 8 1 5 9 4 6");
        assert_eq!(o.num_cycles(), 3);
        assert_eq!(o.transpose_at(2, 2), Err(OpError::EqualArguments { element: 2 }));
    }

    #[test]
    fn transpose_values_on_figure() {
        let mut o = OneLineOracle::build(&figure());
        o.transpose_values(1, 4).unwrap();
        assert_eq!(o.to_one_line().to_string(), "4 3 6 1 2 8 11 5 10 7 9");
    }

    #[test]
    fn flip_goldens() {
        // (7 11 9 10): reversing the 11 -> 9 stretch gives (7 9 11 10)
        let mut o = OneLineOracle::build(&figure());
        o.flip(11, 9).unwrap();
        assert_eq!(o.to_one_line().to_string(), "1 3 6 4 2 8 9 5 11 7 10");

        // whole cycle (2 3 6 8 5) reverses into (5 8 6 3 2)
        let mut o = OneLineOracle::build(&figure());
        o.flip(2, 5).unwrap();
        assert_eq!(o.to_one_line().to_string(), "1 5 2 4 8 3 11 6 10 7 9");

        // cycle minus one element: (1 2 3 4) with 4 left out
        let mut o = OneLineOracle::build(&"2 3 4 1".parse().unwrap());
        o.flip(1, 3).unwrap();
        assert_eq!(o.to_one_line().to_string(), "4 1 2 3");

        // i == j is a no-op, crossing cycles is refused
        let mut o = OneLineOracle::build(&figure());
        o.flip(6, 6).unwrap();
        assert_eq!(o.to_one_line(), figure());
        assert_eq!(o.flip(1, 4), Err(OpError::DifferentCycles { i: 1, j: 4 }));
        assert_eq!(o.to_one_line(), figure());
    }

    #[test]
    fn flip_then_reverse_flip_restores() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(2..=32u32);
            let p = Permutation::random(n, rng.random());
            let mut o = OneLineOracle::build(&p);
            let i = rng.random_range(1..=n);
            let len = o.cycle_size(i).unwrap();
            let j = o.power(i, rng.random_range(0..len as i64)).unwrap();
            o.flip(i, j).unwrap();
            o.flip(j, i).unwrap();
            assert_eq!(o.to_one_line(), p);
        }
    }

    // The two oracles must be indistinguishable; the mirror array is pure
    // acceleration.
    #[test]
    fn inverse_oracle_matches_plain_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let n = rng.random_range(1..=24u32);
            let p = Permutation::random(n, rng.random());
            let mut a = OneLineOracle::build(&p);
            let mut b = OneLinePlusInverseOracle::build(&p);
            for _ in 0..200 {
                let i = rng.random_range(1..=n);
                let j = rng.random_range(1..=n);
                let k = rng.random_range(-50..=50i64);
                match rng.random_range(0..8) {
                    0 => assert_eq!(a.apply(i), b.apply(i)),
                    1 => assert_eq!(a.inverse(i), b.inverse(i)),
                    2 => assert_eq!(a.power(i, k), b.power(i, k)),
                    3 => assert_eq!(a.distance(i, j), b.distance(i, j)),
                    4 => assert_eq!(a.cycle_size(i), b.cycle_size(i)),
                    5 => assert_eq!(a.transpose_at(i, j), b.transpose_at(i, j)),
                    6 => assert_eq!(a.transpose_values(i, j), b.transpose_values(i, j)),
                    _ => assert_eq!(a.flip(i, j), b.flip(i, j)),
                }
                assert_eq!(a.to_one_line(), b.to_one_line());
                assert_eq!(a.num_cycles(), b.num_cycles());
                b.check_mirror();
            }
        }
    }

    // Independent recount: union the endpoints of every (i, image(i)) edge
    // and count the classes.
    #[test]
    fn cycle_count_matches_union_find() {
        struct Dsu(Vec<u32>);
        impl Dsu {
            fn find(&mut self, v: u32) -> u32 {
                if self.0[v as usize] != v {
                    let r = self.find(self.0[v as usize]);
                    self.0[v as usize] = r;
                }
                self.0[v as usize]
            }
            fn union(&mut self, a: u32, b: u32) {
                let (ra, rb) = (self.find(a), self.find(b));
                self.0[ra as usize] = rb;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let n = rng.random_range(1..=64u32);
            let p = Permutation::random(n, rng.random());
            let o = OneLineOracle::build(&p);
            let mut dsu = Dsu((0..=n).collect());
            for i in 1..=n {
                dsu.union(i, p.image(i));
            }
            let classes = (1..=n).filter(|&v| dsu.find(v) == v).count() as u32;
            assert_eq!(o.num_cycles(), classes);
        }
    }
}
