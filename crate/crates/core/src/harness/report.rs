//! Run summaries shared by the differential runner and the scaling
//! measurements, plus a stable line-oriented text rendering.

use crate::harness::script::{Command, OpKind};
use crate::splay::Instrumentation;
use std::fmt::Write as _;
use std::time::Duration;

/// A named pass/fail assertion with human-readable detail.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: String) -> Check {
        Check { name: name.to_string(), passed, detail }
    }
}

/// Count and accumulated wall time of one command class.
#[derive(Debug, Clone, Copy)]
pub struct ClassStat {
    pub kind: OpKind,
    pub count: u64,
    pub total: Duration,
}

/// Accumulates per-class counts/times in `OpKind::ALL` order.
#[derive(Debug, Clone)]
pub(crate) struct ClassAccumulator {
    counts: [u64; OpKind::COUNT],
    totals: [Duration; OpKind::COUNT],
}

impl ClassAccumulator {
    pub fn new() -> Self {
        ClassAccumulator {
            counts: [0; OpKind::COUNT],
            totals: [Duration::ZERO; OpKind::COUNT],
        }
    }

    pub fn record(&mut self, kind: OpKind, elapsed: Duration) {
        let idx = OpKind::ALL.iter().position(|&k| k == kind).unwrap();
        self.counts[idx] += 1;
        self.totals[idx] += elapsed;
    }

    pub fn into_stats(self) -> Vec<ClassStat> {
        OpKind::ALL
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.counts[i] > 0)
            .map(|(i, &kind)| ClassStat { kind, count: self.counts[i], total: self.totals[i] })
            .collect()
    }
}

/// First disagreement between the two stores of a differential run.
#[derive(Debug, Clone)]
pub struct Divergence {
    /// 0-based index into the script's command list.
    pub op_index: usize,
    pub command: Command,
    /// Rendered output of the store under test.
    pub lhs: String,
    /// Rendered output of the reference store.
    pub rhs: String,
}

/// One size of a scaling sweep.
#[derive(Debug, Clone)]
pub struct ScalingRow {
    pub n: u32,
    /// Median construction time over the configured repetitions.
    pub build_median: Duration,
    /// Sum-of-logs tree potential right after construction, when the store
    /// exposes one.
    pub build_potential: Option<f64>,
    /// Splay-rotation count per executed op, when instrumented.
    pub rotations_per_op: Option<f64>,
    pub class_stats: Vec<ClassStat>,
}

/// Everything a harness run produces. `passed()` is the single gate:
/// no divergence and every check green.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub label: String,
    pub ops_executed: usize,
    pub class_stats: Vec<ClassStat>,
    /// Counter deltas over the run for instrumented stores.
    pub counters: Option<Instrumentation>,
    /// (op index, potential) samples taken along the run.
    pub potential_samples: Vec<(usize, f64)>,
    pub divergence: Option<Divergence>,
    pub checks: Vec<Check>,
    pub scaling: Vec<ScalingRow>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none() && self.checks.iter().all(|c| c.passed)
    }

    /// Stable line-oriented rendering: one `key ...` line per fact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report {}", self.label);
        let _ = writeln!(out, "ops {}", self.ops_executed);
        for s in &self.class_stats {
            let avg = s.total.as_nanos().checked_div(s.count as u128).unwrap_or(0);
            let _ = writeln!(
                out,
                "class {} count={} total_ns={} avg_ns={}",
                s.kind.name(),
                s.count,
                s.total.as_nanos(),
                avg
            );
        }
        if let Some(c) = &self.counters {
            let _ = writeln!(
                out,
                "counters rotations={} splays={} fixes={}",
                c.rotations, c.splays, c.fixes
            );
        }
        for (idx, phi) in &self.potential_samples {
            let _ = writeln!(out, "potential op={idx} value={phi:.3}");
        }
        for row in &self.scaling {
            let _ = write!(
                out,
                "scaling n={} build_median_ns={}",
                row.n,
                row.build_median.as_nanos()
            );
            if let Some(phi) = row.build_potential {
                let _ = write!(out, " potential={phi:.3}");
            }
            if let Some(r) = row.rotations_per_op {
                let _ = write!(out, " rotations_per_op={r:.3}");
            }
            out.push('\n');
            for s in &row.class_stats {
                let avg = s.total.as_nanos().checked_div(s.count as u128).unwrap_or(0);
                let _ = writeln!(
                    out,
                    "scaling n={} class {} count={} avg_ns={}",
                    row.n,
                    s.kind.name(),
                    s.count,
                    avg
                );
            }
        }
        if let Some(d) = &self.divergence {
            let _ = writeln!(
                out,
                "divergence index={} command=\"{}\" got=\"{}\" want=\"{}\"",
                d.op_index, d.command, d.lhs, d.rhs
            );
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check {} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(out, "verdict {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}
