//! `cyclefst` — run operation scripts against a permutation store,
//! differential-fuzz the splay forest against the naive oracles, and
//! benchmark scaling.
//!
//! Results go to stdout, one line per query (`ok <cycles>` per update),
//! and are byte-identical across runs of the same invocation. Timing
//! reports go to stderr, or to the file named by `CYCLEFST_REPORT`.
//!
//! Exit codes: 0 success; 1 divergence or failed bench check; 2 bad
//! usage, unreadable input, or a script that fails static validation;
//! 3 a domain error raised at runtime (for example flipping across two
//! cycles), reported with its script line.

mod files;

use clap::{Parser, Subcommand, ValueEnum};
use cyclefst::harness::{
    execute, generate, measure_scaling, run_differential, shrink_to_minimal_prefix,
    CommandOutput, CorruptedStore, OpMix, OpScript,
};
use cyclefst::{ImplKind, Permutation, PermutationStore};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cyclefst",
    version,
    about = "Dynamic permutations in cycle form: script runner, differential fuzzer, benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImplArg {
    /// Forest of splay trees, one per cycle
    Fst,
    /// Array oracle walking cycles element by element
    #[value(name = "oneline")]
    OneLine,
    /// Array oracle that also mirrors the inverse
    #[value(name = "oneline-inv")]
    OneLineInv,
}

impl From<ImplArg> for ImplKind {
    fn from(a: ImplArg) -> ImplKind {
        match a {
            ImplArg::Fst => ImplKind::Fst,
            ImplArg::OneLine => ImplKind::OneLine,
            ImplArg::OneLineInv => ImplKind::OneLineInv,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a script against one store, printing one line per command
    Run {
        /// Permutation file: `n=<count>` then one-line notation
        #[arg(long)]
        perm: PathBuf,
        /// Script file: one command per line
        #[arg(long)]
        script: PathBuf,
        #[arg(long = "impl", value_enum, default_value_t = ImplArg::Fst)]
        implementation: ImplArg,
    },
    /// Run a generated script against two stores and compare every output
    Fuzz {
        /// Domain size; the initial permutation is drawn from the seed
        #[arg(long, default_value_t = 64)]
        n: u32,
        /// Number of operations to generate
        #[arg(long, default_value_t = 100_000)]
        len: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Named op mix (uniform, queries, updates, transpositions, distance)
        #[arg(long, default_value = "uniform")]
        mix: String,
        /// Store under test; the reference is a naive oracle
        #[arg(long = "impl", value_enum, default_value_t = ImplArg::Fst)]
        implementation: ImplArg,
        /// Self-test: make the store under test start lying after this
        /// many operations
        #[arg(long, value_name = "HEALTHY_OPS")]
        corrupt: Option<usize>,
        /// Re-run a previously written reproducer instead of generating
        #[arg(long, conflicts_with_all = ["n", "len", "seed", "mix"])]
        replay: Option<PathBuf>,
    },
    /// Measure build and per-op scaling over a sweep of sizes
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "100000,200000,400000")]
        sizes: Vec<u32>,
        #[arg(long, default_value = "uniform")]
        mix: String,
        /// Build repetitions per size (median is kept)
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// Operations executed per size and implementation
        #[arg(long, default_value_t = 10_000)]
        ops: usize,
        /// Restrict the sweep to one store (default: all three)
        #[arg(long = "impl", value_enum)]
        implementation: Option<ImplArg>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Run { perm, script, implementation } => {
            cmd_run(&perm, &script, implementation.into())
        }
        Cmd::Fuzz { n, len, seed, mix, implementation, corrupt, replay } => {
            cmd_fuzz(n, len, seed, &mix, implementation.into(), corrupt, replay.as_deref())
        }
        Cmd::Bench { sizes, mix, reps, ops, implementation } => {
            cmd_bench(&sizes, &mix, reps, ops, implementation.map(ImplKind::from))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cyclefst: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn resolve_mix(name: &str) -> Result<OpMix, Failure> {
    OpMix::by_name(name).ok_or_else(|| {
        fail(2, format!("unknown mix `{name}`; known mixes: {}", OpMix::NAMES.join(", ")))
    })
}

/// Writes a timing report to `CYCLEFST_REPORT` if set, else to stderr,
/// keeping stdout reserved for deterministic results.
fn emit_report(text: &str) -> CliResult {
    match std::env::var_os("CYCLEFST_REPORT") {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| fail(2, format!("writing report {}: {e}", Path::new(&path).display()))),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn cmd_run(perm_path: &Path, script_path: &Path, kind: ImplKind) -> CliResult {
    let perm = files::parse_perm_file(&read(perm_path)?)
        .map_err(|e| fail(2, format!("{}: {e}", perm_path.display())))?;
    let commands =
        files::parse_script_file(&read(script_path)?, perm.len()).map_err(|(line, msg)| {
            let at = line.map(|l| format!(":{l}")).unwrap_or_default();
            fail(2, format!("{}{at}: {msg}", script_path.display()))
        })?;

    let mut store = kind.build(&perm);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for (line, cmd) in commands {
        match execute(&mut store, cmd) {
            CommandOutput::Failed(e) => {
                drop(out);
                return Err(fail(3, format!("{}:{line}: {e}", script_path.display())));
            }
            output => {
                writeln!(out, "{output}").map_err(|e| fail(2, e.to_string()))?;
            }
        }
    }
    out.flush().map_err(|e| fail(2, e.to_string()))
}

fn cmd_fuzz(
    n: u32,
    len: usize,
    seed: u64,
    mix_name: &str,
    kind: ImplKind,
    corrupt: Option<usize>,
    replay: Option<&Path>,
) -> CliResult {
    let script = match replay {
        Some(path) => OpScript::from_text(&read(path)?)
            .map_err(|e| fail(2, format!("{}: {e}", path.display())))?,
        None => {
            let mix = resolve_mix(mix_name)?;
            generate(seed, n, len, &mix).map_err(|e| fail(2, e.to_string()))?
        }
    };
    // On replay the script header overrides the defaults.
    let (n, seed) = (script.n, script.seed);
    let perm = Permutation::random(n, seed);
    let reference =
        if kind == ImplKind::OneLineInv { ImplKind::OneLine } else { ImplKind::OneLineInv };
    let make_pair = || -> (Box<dyn PermutationStore>, Box<dyn PermutationStore>) {
        let under: Box<dyn PermutationStore> = match corrupt {
            Some(healthy) => Box::new(CorruptedStore::new(kind.build(&perm), healthy)),
            None => kind.build(&perm),
        };
        (under, reference.build(&perm))
    };

    let (mut under, mut oracle) = make_pair();
    let mut report = run_differential(&script, &mut under, &mut oracle);
    report.label = format!(
        "fuzz impl={kind} reference={reference} seed={seed} n={n} len={}",
        script.ops.len()
    );
    emit_report(&report.to_text())?;

    match &report.divergence {
        None => {
            println!("fuzz: ok, {} ops, {kind} matches {reference}", report.ops_executed);
            Ok(())
        }
        Some(d) => {
            println!(
                "fuzz: divergence at op {} `{}`: {} vs {}",
                d.op_index, d.command, d.lhs, d.rhs
            );
            let (minimal, _) = shrink_to_minimal_prefix(&script, make_pair)
                .expect("a diverging script must shrink");
            let stem = format!("cyclefst-failure-seed{seed}-n{n}");
            let reproducer = format!("{stem}.opscript");
            let perm_file = format!("{stem}.perm");
            std::fs::write(&reproducer, minimal.to_text())
                .map_err(|e| fail(1, format!("writing {reproducer}: {e}")))?;
            std::fs::write(&perm_file, files::perm_file_text(&perm))
                .map_err(|e| fail(1, format!("writing {perm_file}: {e}")))?;
            let again = corrupt.map(|k| format!(" --corrupt {k}")).unwrap_or_default();
            Err(fail(
                1,
                format!(
                    "wrote minimal reproducer ({} ops) to {reproducer} and its initial \
                     permutation to {perm_file}; replay with \
                     `cyclefst fuzz --replay {reproducer}{again}`",
                    minimal.ops.len()
                ),
            ))
        }
    }
}

fn cmd_bench(
    sizes: &[u32],
    mix_name: &str,
    reps: usize,
    ops: usize,
    only: Option<ImplKind>,
) -> CliResult {
    if sizes.is_empty() {
        return Err(fail(2, "at least one size is required"));
    }
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(fail(2, "sizes must be strictly ascending"));
    }
    if reps == 0 {
        return Err(fail(2, "at least one build repetition is required"));
    }
    let mix = resolve_mix(mix_name)?;
    let kinds: Vec<ImplKind> = match only {
        Some(kind) => vec![kind],
        None => ImplKind::ALL.to_vec(),
    };
    let mut text = String::new();
    let mut all_passed = true;
    for &kind in &kinds {
        let report = measure_scaling(kind, sizes, &mix, reps, ops);
        all_passed &= report.passed();
        text.push_str(&report.to_text());
    }
    emit_report(&text)?;
    let swept = kinds.iter().map(|k| k.name()).collect::<Vec<_>>().join(", ");
    if all_passed {
        println!("bench: ok, {} sizes x {ops} ops on {swept}", sizes.len());
        Ok(())
    } else {
        Err(fail(1, "bench checks failed; see the report"))
    }
}
