//! Differential execution: run one script against two stores, compare
//! every output, and after every update compare full one-line snapshots.

use crate::harness::report::{Check, ClassAccumulator, Divergence, RunReport};
use crate::harness::script::{execute, OpScript};
use crate::store::PermutationStore;
use std::time::Instant;

/// Runs `script` against both stores from their current (equal) states.
///
/// Execution stops at the first disagreement, either in a command's
/// output or in the one-line snapshot taken after each update. Per-class
/// wall times and instrumentation deltas cover `under_test` only;
/// `reference` is consulted solely for its answers.
///
/// Panics if the stores disagree before the first command runs.
pub fn run_differential(
    script: &OpScript,
    under_test: &mut dyn PermutationStore,
    reference: &mut dyn PermutationStore,
) -> RunReport {
    assert_eq!(under_test.len(), reference.len(), "stores must cover the same domain");
    assert_eq!(
        under_test.to_one_line(),
        reference.to_one_line(),
        "stores must start from the same permutation"
    );

    let counters_before = under_test.instrumentation();
    let mut acc = ClassAccumulator::new();
    let mut report = RunReport {
        label: format!(
            "differential seed={} n={} len={}",
            script.seed,
            script.n,
            script.ops.len()
        ),
        ..RunReport::default()
    };
    let sample_every = (script.ops.len() / 8).max(1);

    for (idx, &cmd) in script.ops.iter().enumerate() {
        let started = Instant::now();
        let got = execute(under_test, cmd);
        acc.record(cmd.kind(), started.elapsed());
        let want = execute(reference, cmd);
        report.ops_executed = idx + 1;

        if got != want {
            report.divergence = Some(Divergence {
                op_index: idx,
                command: cmd,
                lhs: got.to_string(),
                rhs: want.to_string(),
            });
            break;
        }
        if cmd.is_update() {
            let snap_got = under_test.to_one_line();
            let snap_want = reference.to_one_line();
            if snap_got != snap_want {
                report.divergence = Some(Divergence {
                    op_index: idx,
                    command: cmd,
                    lhs: snap_got.to_string(),
                    rhs: snap_want.to_string(),
                });
                break;
            }
        }
        if idx % sample_every == 0 {
            if let Some(phi) = under_test.potential() {
                report.potential_samples.push((idx, phi));
            }
        }
    }

    report.class_stats = acc.into_stats();
    report.counters = match (counters_before, under_test.instrumentation()) {
        (Some(before), Some(after)) => Some(after.since(before)),
        _ => None,
    };
    let detail = match &report.divergence {
        None => format!("{} ops, outputs and snapshots agree", report.ops_executed),
        Some(d) => format!(
            "op {} `{}`: got {} want {}",
            d.op_index, d.command, d.lhs, d.rhs
        ),
    };
    report
        .checks
        .push(Check::new("outputs agree", report.divergence.is_none(), detail));
    report
}

/// Cuts a diverging script down to the shortest prefix that still
/// diverges and confirms the divergence reproduces on fresh stores built
/// by `make_pair`. Returns `None` when the script does not diverge.
///
/// Execution is deterministic, so the eventual script is exactly the
/// prefix ending at the first offending command.
pub fn shrink_to_minimal_prefix(
    script: &OpScript,
    mut make_pair: impl FnMut() -> (Box<dyn PermutationStore>, Box<dyn PermutationStore>),
) -> Option<(OpScript, RunReport)> {
    let (mut a, mut b) = make_pair();
    let report = run_differential(script, a.as_mut(), b.as_mut());
    let idx = report.divergence.as_ref()?.op_index;

    let mut minimal = script.clone();
    minimal.ops.truncate(idx + 1);
    let (mut a, mut b) = make_pair();
    let confirm = run_differential(&minimal, a.as_mut(), b.as_mut());
    assert_eq!(
        confirm.divergence.as_ref().map(|d| d.op_index),
        Some(idx),
        "divergence must reproduce on fresh stores at the same index"
    );
    Some((minimal, confirm))
}
