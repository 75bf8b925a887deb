//! Shared scenario setup for the criterion benchmarks in `benches/`.

use cyclefst::harness::{generate, Command, OpMix};
use cyclefst::{ImplKind, Permutation, PermutationStore};

/// A store over the single cycle `(1 2 ... n)` plus a reproducible batch
/// of commands drawn from a named mix. Benchmarks cycle through the
/// batch so successive iterations do varied work.
pub fn scripted(
    kind: ImplKind,
    n: u32,
    mix_name: &str,
    len: usize,
) -> (Box<dyn PermutationStore>, Vec<Command>) {
    let perm = Permutation::cyclic(n);
    let mix = OpMix::by_name(mix_name).expect("benchmarks use the named mixes");
    let script = generate(u64::from(n), n, len, &mix).expect("named mixes are generatable");
    (kind.build(&perm), script.ops)
}
