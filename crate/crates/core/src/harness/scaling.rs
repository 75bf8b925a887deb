//! Build-time and per-op scaling sweeps with built-in plausibility
//! checks on potential, build-time growth, and rotation counts.

use crate::harness::report::{Check, ClassAccumulator, RunReport, ScalingRow};
use crate::harness::script::{execute, generate, OpMix};
use crate::perm::Permutation;
use crate::store::ImplKind;
use std::time::{Duration, Instant};

/// Ceiling accepted for the potential of a freshly built store on a
/// single cycle of length `n`: `2n + 10·log2(n)^2`. A balanced
/// construction sits far below it; a degenerate path-shaped build of a
/// large cycle would not.
pub fn build_potential_bound(n: u32) -> f64 {
    let lg = (n.max(2) as f64).log2();
    2.0 * n as f64 + 10.0 * lg * lg
}

/// Ceiling accepted for amortized splay rotations per op: `10·log2(n)`.
pub fn rotations_per_op_bound(n: u32) -> f64 {
    10.0 * (n.max(2) as f64).log2()
}

/// For each size, builds a store over the cyclic permutation
/// `(1 2 ... n)` `reps` times (keeping the median build time), then runs
/// `ops_per_size` freshly generated commands against it.
///
/// Scripts are deterministic: the generator seed for size `n` is `n`
/// itself, so two sweeps over the same sizes do identical work.
///
/// The report carries one scaling row per size. For instrumented stores
/// it also carries three checks: build potential under
/// [`build_potential_bound`], consecutive build-time ratios within ±25%
/// of the size ratio, and rotations per op under
/// [`rotations_per_op_bound`]. Uninstrumented oracles get timing rows
/// only.
pub fn measure_scaling(
    kind: ImplKind,
    sizes: &[u32],
    mix: &OpMix,
    reps: usize,
    ops_per_size: usize,
) -> RunReport {
    assert!(reps >= 1, "at least one build repetition is required");
    assert!(
        sizes.windows(2).all(|w| w[0] < w[1]),
        "sizes must be strictly ascending, got {sizes:?}"
    );
    let mut report = RunReport {
        label: format!("scaling impl={kind} reps={reps} ops={ops_per_size}"),
        ..RunReport::default()
    };

    for &n in sizes {
        let perm = Permutation::cyclic(n);
        let mut builds = Vec::with_capacity(reps);
        let mut store = kind.build(&perm);
        for _ in 0..reps {
            let started = Instant::now();
            store = kind.build(&perm);
            builds.push(started.elapsed());
        }
        builds.sort();
        let build_median = builds[builds.len() / 2];
        let build_potential = store.potential();

        let script = generate(u64::from(n), n, ops_per_size, mix)
            .expect("scaling mixes must be generatable");
        let before = store.instrumentation();
        let mut acc = ClassAccumulator::new();
        for &cmd in &script.ops {
            let started = Instant::now();
            execute(store.as_mut(), cmd);
            acc.record(cmd.kind(), started.elapsed());
        }
        report.ops_executed += script.ops.len();
        let rotations_per_op = match (before, store.instrumentation()) {
            (Some(b), Some(a)) if !script.ops.is_empty() => {
                Some(a.since(b).rotations as f64 / script.ops.len() as f64)
            }
            _ => None,
        };

        report.scaling.push(ScalingRow {
            n,
            build_median,
            build_potential,
            rotations_per_op,
            class_stats: acc.into_stats(),
        });
    }

    if kind == ImplKind::Fst {
        push_fst_checks(&mut report);
    }
    report
}

fn push_fst_checks(report: &mut RunReport) {
    let rows = &report.scaling;

    let mut detail = String::new();
    let mut ok = true;
    for row in rows {
        let phi = row.build_potential.unwrap_or(f64::INFINITY);
        let bound = build_potential_bound(row.n);
        ok &= phi <= bound;
        detail.push_str(&format!("n={} phi={:.1} bound={:.1}; ", row.n, phi, bound));
    }
    report.checks.push(Check::new("build potential bounded", ok, detail));

    let mut detail = String::new();
    let mut ok = true;
    for pair in rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let size_ratio = b.n as f64 / a.n as f64;
        let time_ratio = b.build_median.as_secs_f64()
            / a.build_median.as_secs_f64().max(Duration::from_micros(1).as_secs_f64());
        let (lo, hi) = (0.75 * size_ratio, 1.25 * size_ratio);
        ok &= (lo..=hi).contains(&time_ratio);
        detail.push_str(&format!(
            "n={}->{} ratio={:.2} window=[{:.2},{:.2}]; ",
            a.n, b.n, time_ratio, lo, hi
        ));
    }
    if rows.len() >= 2 {
        report.checks.push(Check::new("build time grows linearly", ok, detail));
    }

    let mut detail = String::new();
    let mut ok = true;
    for row in rows {
        if let Some(r) = row.rotations_per_op {
            let bound = rotations_per_op_bound(row.n);
            ok &= r <= bound;
            detail.push_str(&format!(
                "n={} rot/op={:.2} bound={:.2} fitted_c={:.3}; ",
                row.n,
                r,
                bound,
                r / (row.n.max(2) as f64).log2()
            ));
        }
    }
    report.checks.push(Check::new("rotations per op logarithmic", ok, detail));
}
