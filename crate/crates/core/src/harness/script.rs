//! The operation vocabulary: commands, their text grammar, weighted random
//! script generation, and execution against any store.
//!
//! One command per line: `apply i`, `inverse j`, `power i k`, `cycles`,
//! `size i`, `same i j`, `dist i j`, `transpose-at i j`, `transpose-val i
//! j`, `flip i j`, `oneline`. Blank lines and `#` comments are skipped.

use crate::perm::Permutation;
use crate::store::{Distance, OpError, PermutationStore};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Apply(u32),
    Inverse(u32),
    Power(u32, i64),
    Cycles,
    CycleSize(u32),
    SameCycle(u32, u32),
    Distance(u32, u32),
    TransposeAt(u32, u32),
    TransposeValues(u32, u32),
    Flip(u32, u32),
    OneLine,
}

/// Command classes, for mix weights and per-class accounting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Apply,
    Inverse,
    Power,
    Cycles,
    CycleSize,
    SameCycle,
    Distance,
    TransposeAt,
    TransposeValues,
    Flip,
    OneLine,
}

impl OpKind {
    pub const COUNT: usize = 11;
    pub const ALL: [OpKind; Self::COUNT] = [
        OpKind::Apply,
        OpKind::Inverse,
        OpKind::Power,
        OpKind::Cycles,
        OpKind::CycleSize,
        OpKind::SameCycle,
        OpKind::Distance,
        OpKind::TransposeAt,
        OpKind::TransposeValues,
        OpKind::Flip,
        OpKind::OneLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Apply => "apply",
            OpKind::Inverse => "inverse",
            OpKind::Power => "power",
            OpKind::Cycles => "cycles",
            OpKind::CycleSize => "size",
            OpKind::SameCycle => "same",
            OpKind::Distance => "dist",
            OpKind::TransposeAt => "transpose-at",
            OpKind::TransposeValues => "transpose-val",
            OpKind::Flip => "flip",
            OpKind::OneLine => "oneline",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&k| k == self).unwrap()
    }

    pub fn is_update(self) -> bool {
        matches!(self, OpKind::TransposeAt | OpKind::TransposeValues | OpKind::Flip)
    }

    /// Needs two distinct elements, so a 1-element domain cannot host it.
    fn needs_pair(self) -> bool {
        matches!(self, OpKind::TransposeAt | OpKind::TransposeValues)
    }

    /// Takes at least one element argument.
    fn needs_element(self) -> bool {
        !matches!(self, OpKind::Cycles | OpKind::OneLine)
    }
}

impl Command {
    pub fn kind(self) -> OpKind {
        match self {
            Command::Apply(_) => OpKind::Apply,
            Command::Inverse(_) => OpKind::Inverse,
            Command::Power(..) => OpKind::Power,
            Command::Cycles => OpKind::Cycles,
            Command::CycleSize(_) => OpKind::CycleSize,
            Command::SameCycle(..) => OpKind::SameCycle,
            Command::Distance(..) => OpKind::Distance,
            Command::TransposeAt(..) => OpKind::TransposeAt,
            Command::TransposeValues(..) => OpKind::TransposeValues,
            Command::Flip(..) => OpKind::Flip,
            Command::OneLine => OpKind::OneLine,
        }
    }

    pub fn is_update(self) -> bool {
        self.kind().is_update()
    }

    pub fn parse_line(line: &str) -> Result<Command, CommandParseError> {
        fn int<T: std::str::FromStr<Err = std::num::ParseIntError>>(
            tok: &str,
        ) -> Result<T, CommandParseError> {
            tok.parse().map_err(|source| CommandParseError::BadInteger {
                token: tok.to_string(),
                source,
            })
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (name, args) = toks.split_first().ok_or(CommandParseError::Empty)?;
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(CommandParseError::Arity {
                    command: name.to_string(),
                    expected: want,
                    got: args.len(),
                })
            }
        };
        let cmd = match *name {
            "apply" => {
                arity(1)?;
                Command::Apply(int(args[0])?)
            }
            "inverse" => {
                arity(1)?;
                Command::Inverse(int(args[0])?)
            }
            "power" => {
                arity(2)?;
                Command::Power(int(args[0])?, int(args[1])?)
            }
            "cycles" => {
                arity(0)?;
                Command::Cycles
            }
            "size" => {
                arity(1)?;
                Command::CycleSize(int(args[0])?)
            }
            "same" => {
                arity(2)?;
                Command::SameCycle(int(args[0])?, int(args[1])?)
            }
            "dist" => {
                arity(2)?;
                Command::Distance(int(args[0])?, int(args[1])?)
            }
            "transpose-at" => {
                arity(2)?;
                Command::TransposeAt(int(args[0])?, int(args[1])?)
            }
            "transpose-val" => {
                arity(2)?;
                Command::TransposeValues(int(args[0])?, int(args[1])?)
            }
            "flip" => {
                arity(2)?;
                Command::Flip(int(args[0])?, int(args[1])?)
            }
            "oneline" => {
                arity(0)?;
                Command::OneLine
            }
            other => return Err(CommandParseError::Unknown(other.to_string())),
        };
        Ok(cmd)
    }

    /// Static checks a command must pass before touching any store:
    /// element arguments in `1..=n` and transpose arguments distinct.
    pub fn validate(self, n: u32) -> Result<(), CommandValidateError> {
        if let Command::TransposeAt(i, j) | Command::TransposeValues(i, j) = self {
            if i == j {
                return Err(CommandValidateError::EqualTransposeArguments { element: i });
            }
        }
        let check = |a: u32| {
            if a == 0 || a > n {
                Err(CommandValidateError::OutOfRange { element: a, n })
            } else {
                Ok(())
            }
        };
        match self {
            Command::Apply(i)
            | Command::Inverse(i)
            | Command::Power(i, _)
            | Command::CycleSize(i) => check(i),
            Command::SameCycle(i, j)
            | Command::Distance(i, j)
            | Command::TransposeAt(i, j)
            | Command::TransposeValues(i, j)
            | Command::Flip(i, j) => check(i).and_then(|()| check(j)),
            Command::Cycles | Command::OneLine => Ok(()),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Apply(i) => write!(f, "apply {i}"),
            Command::Inverse(j) => write!(f, "inverse {j}"),
            Command::Power(i, k) => write!(f, "power {i} {k}"),
            Command::Cycles => f.write_str("cycles"),
            Command::CycleSize(i) => write!(f, "size {i}"),
            Command::SameCycle(i, j) => write!(f, "same {i} {j}"),
            Command::Distance(i, j) => write!(f, "dist {i} {j}"),
            Command::TransposeAt(i, j) => write!(f, "transpose-at {i} {j}"),
            Command::TransposeValues(i, j) => write!(f, "transpose-val {i} {j}"),
            Command::Flip(i, j) => write!(f, "flip {i} {j}"),
            Command::OneLine => f.write_str("oneline"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandParseError {
    #[error("empty command")]
    Empty,
    #[error("unknown command `{0}`")]
    Unknown(String),
    #[error("`{command}` takes {expected} argument(s), got {got}")]
    Arity { command: String, expected: usize, got: usize },
    #[error("bad integer `{token}`: {source}")]
    BadInteger {
        token: String,
        #[source]
        source: std::num::ParseIntError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CommandValidateError {
    #[error("element {element} out of range 1..={n}")]
    OutOfRange { element: u32, n: u32 },
    #[error("transpose arguments must differ, both are {element}")]
    EqualTransposeArguments { element: u32 },
}

/// What a command evaluated to. Rendered exactly as the command-line tool
/// prints it, so text comparison and value comparison agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommandOutput {
    Element(u32),
    Count(u32),
    Bool(bool),
    Dist(Distance),
    Updated { cycles: u32 },
    Snapshot(Permutation),
    Failed(OpError),
}

impl fmt::Display for CommandOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandOutput::Element(v) => write!(f, "{v}"),
            CommandOutput::Count(c) => write!(f, "{c}"),
            CommandOutput::Bool(b) => write!(f, "{b}"),
            CommandOutput::Dist(d) => write!(f, "{d}"),
            CommandOutput::Updated { cycles } => write!(f, "ok {cycles}"),
            CommandOutput::Snapshot(p) => write!(f, "{p}"),
            CommandOutput::Failed(e) => write!(f, "error: {e}"),
        }
    }
}

/// Runs one command. Updates report the resulting cycle count, so cycle
/// bookkeeping is compared on every update for free.
pub fn execute(store: &mut dyn PermutationStore, cmd: Command) -> CommandOutput {
    fn elem(r: Result<u32, OpError>) -> CommandOutput {
        match r {
            Ok(v) => CommandOutput::Element(v),
            Err(e) => CommandOutput::Failed(e),
        }
    }
    match cmd {
        Command::Apply(i) => elem(store.apply(i)),
        Command::Inverse(j) => elem(store.inverse(j)),
        Command::Power(i, k) => elem(store.power(i, k)),
        Command::Cycles => CommandOutput::Count(store.num_cycles()),
        Command::CycleSize(i) => match store.cycle_size(i) {
            Ok(c) => CommandOutput::Count(c),
            Err(e) => CommandOutput::Failed(e),
        },
        Command::SameCycle(i, j) => match store.same_cycle(i, j) {
            Ok(b) => CommandOutput::Bool(b),
            Err(e) => CommandOutput::Failed(e),
        },
        Command::Distance(i, j) => match store.distance(i, j) {
            Ok(d) => CommandOutput::Dist(d),
            Err(e) => CommandOutput::Failed(e),
        },
        Command::TransposeAt(i, j) => match store.transpose_at(i, j) {
            Ok(()) => CommandOutput::Updated { cycles: store.num_cycles() },
            Err(e) => CommandOutput::Failed(e),
        },
        Command::TransposeValues(i, j) => match store.transpose_values(i, j) {
            Ok(()) => CommandOutput::Updated { cycles: store.num_cycles() },
            Err(e) => CommandOutput::Failed(e),
        },
        Command::Flip(i, j) => match store.flip(i, j) {
            Ok(()) => CommandOutput::Updated { cycles: store.num_cycles() },
            Err(e) => CommandOutput::Failed(e),
        },
        Command::OneLine => CommandOutput::Snapshot(store.to_one_line()),
    }
}

/// Per-class weights for random generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpMix {
    weights: [u32; OpKind::COUNT],
}

impl OpMix {
    /// Every permutation operation at weight 1. The `oneline` snapshot is
    /// excluded: it is serialization plumbing, not an operation, and costs
    /// O(n) each.
    pub fn uniform() -> OpMix {
        let mut m = OpMix { weights: [1; OpKind::COUNT] };
        m.weights[OpKind::OneLine.index()] = 0;
        m
    }

    pub fn queries() -> OpMix {
        let mut m = OpMix { weights: [0; OpKind::COUNT] };
        for k in [
            OpKind::Apply,
            OpKind::Inverse,
            OpKind::Power,
            OpKind::Cycles,
            OpKind::CycleSize,
            OpKind::SameCycle,
            OpKind::Distance,
        ] {
            m.weights[k.index()] = 1;
        }
        m
    }

    pub fn updates() -> OpMix {
        let mut m = OpMix { weights: [0; OpKind::COUNT] };
        for k in [OpKind::TransposeAt, OpKind::TransposeValues, OpKind::Flip] {
            m.weights[k.index()] = 1;
        }
        m
    }

    pub fn only(kind: OpKind) -> OpMix {
        let mut m = OpMix { weights: [0; OpKind::COUNT] };
        m.weights[kind.index()] = 1;
        m
    }

    pub fn with_weight(mut self, kind: OpKind, weight: u32) -> OpMix {
        self.weights[kind.index()] = weight;
        self
    }

    pub fn weight(&self, kind: OpKind) -> u32 {
        self.weights[kind.index()]
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    /// The named presets the command line accepts.
    pub fn by_name(name: &str) -> Option<OpMix> {
        match name {
            "uniform" => Some(Self::uniform()),
            "queries" => Some(Self::queries()),
            "updates" => Some(Self::updates()),
            "transpositions" => Some(Self::only(OpKind::TransposeAt)),
            "distance" => Some(Self::only(OpKind::Distance)),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 5] =
        ["uniform", "queries", "updates", "transpositions", "distance"];

    fn to_csv(&self) -> String {
        self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
    }

    fn from_csv(s: &str) -> Option<OpMix> {
        let parts: Vec<u32> = s.split(',').map(|t| t.parse().ok()).collect::<Option<_>>()?;
        let weights: [u32; OpKind::COUNT] = parts.try_into().ok()?;
        Some(OpMix { weights })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenerateError {
    #[error("op mix has zero total weight")]
    EmptyMix,
    #[error("no op with positive weight is generatable for n = {n}")]
    NoFeasibleOp { n: u32 },
}

/// A reproducible operation script: regenerating with the same header
/// yields the same commands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpScript {
    pub seed: u64,
    pub n: u32,
    pub mix: OpMix,
    pub ops: Vec<Command>,
}

/// Draws `length` commands from a ChaCha8 stream seeded with `seed`.
/// Kinds follow the mix weights (kinds infeasible at this `n` drop to
/// weight 0); element arguments are uniform on `1..=n`; transpose
/// arguments are redrawn until distinct; exponents are usually near ±2n
/// with an occasional full-range value.
pub fn generate(seed: u64, n: u32, length: usize, mix: &OpMix) -> Result<OpScript, GenerateError> {
    if mix.total() == 0 {
        return Err(GenerateError::EmptyMix);
    }
    let feasible: Vec<u32> = OpKind::ALL
        .iter()
        .map(|&k| {
            let w = mix.weight(k);
            if (k.needs_pair() && n < 2) || (k.needs_element() && n == 0) {
                0
            } else {
                w
            }
        })
        .collect();
    if feasible.iter().all(|&w| w == 0) {
        return Err(GenerateError::NoFeasibleOp { n });
    }
    let dist = WeightedIndex::new(&feasible).expect("positive total weight");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ops = Vec::with_capacity(length);
    for _ in 0..length {
        let kind = OpKind::ALL[dist.sample(&mut rng)];
        let mut element = || rng.random_range(1..=n);
        let cmd = match kind {
            OpKind::Apply => Command::Apply(element()),
            OpKind::Inverse => Command::Inverse(element()),
            OpKind::Power => {
                let i = element();
                let k = if rng.random_range(0..8u32) == 0 {
                    rng.random::<i64>()
                } else {
                    let span = 2 * n as i64;
                    rng.random_range(-span..=span)
                };
                Command::Power(i, k)
            }
            OpKind::Cycles => Command::Cycles,
            OpKind::CycleSize => Command::CycleSize(element()),
            OpKind::SameCycle => Command::SameCycle(element(), element()),
            OpKind::Distance => Command::Distance(element(), element()),
            OpKind::TransposeAt | OpKind::TransposeValues => {
                let i = element();
                let mut j = element();
                while j == i {
                    j = element();
                }
                if kind == OpKind::TransposeAt {
                    Command::TransposeAt(i, j)
                } else {
                    Command::TransposeValues(i, j)
                }
            }
            OpKind::Flip => Command::Flip(element(), element()),
            OpKind::OneLine => Command::OneLine,
        };
        ops.push(cmd);
    }
    Ok(OpScript { seed, n, mix: mix.clone(), ops })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptParseError {
    #[error("missing `# opscript` header")]
    MissingHeader,
    #[error("bad header field `{0}`")]
    BadHeader(String),
    #[error("line {line}: {source}")]
    Command {
        line: usize,
        #[source]
        source: CommandParseError,
    },
}

impl OpScript {
    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out =
            format!("# opscript seed={} n={} mix={}\n", self.seed, self.n, self.mix.to_csv());
        for op in &self.ops {
            out.push_str(&op.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<OpScript, ScriptParseError> {
        let mut lines = text.lines().enumerate();
        let header = loop {
            match lines.next() {
                None => return Err(ScriptParseError::MissingHeader),
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((_, l)) => break l,
            }
        };
        let rest = header
            .strip_prefix("# opscript")
            .ok_or(ScriptParseError::MissingHeader)?;
        let (mut seed, mut n, mut mix) = (None, None, None);
        for field in rest.split_whitespace() {
            let bad = || ScriptParseError::BadHeader(field.to_string());
            let (key, val) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "seed" => seed = Some(val.parse().map_err(|_| bad())?),
                "n" => n = Some(val.parse().map_err(|_| bad())?),
                "mix" => mix = Some(OpMix::from_csv(val).ok_or_else(bad)?),
                _ => return Err(bad()),
            }
        }
        let mut ops = Vec::new();
        for (k, line) in lines {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let cmd = Command::parse_line(t)
                .map_err(|source| ScriptParseError::Command { line: k + 1, source })?;
            ops.push(cmd);
        }
        Ok(OpScript {
            seed: seed.ok_or_else(|| ScriptParseError::BadHeader("seed".into()))?,
            n: n.ok_or_else(|| ScriptParseError::BadHeader("n".into()))?,
            mix: mix.ok_or_else(|| ScriptParseError::BadHeader("mix".into()))?,
            ops,
        })
    }
}

/// Parses a plain command-per-line script, keeping 1-based line numbers
/// for later error reporting. No header is required.
pub fn parse_command_lines(text: &str) -> Result<Vec<(usize, Command)>, ScriptParseError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let cmd = Command::parse_line(t)
            .map_err(|source| ScriptParseError::Command { line: k + 1, source })?;
        out.push((k + 1, cmd));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_roundtrip() {
        let text = "apply 3\ninverse 9\npower 2 -7\ncycles\nsize 4\nsame 1 2\ndist 5 6\n\
                    transpose-at 1 4\ntranspose-val 3 8\nflip 2 5\noneline\n";
        let cmds = parse_command_lines(text).unwrap();
        assert_eq!(cmds.len(), 11);
        let rendered: String =
            cmds.iter().map(|(_, c)| format!("{c}\n")).collect();
        assert_eq!(rendered, text);
        assert_eq!(cmds[2].1, Command::Power(2, -7));
        assert_eq!(cmds[7], (8, Command::TransposeAt(1, 4)));
    }

    #[test]
    fn grammar_rejects_garbage() {
        assert!(matches!(
            Command::parse_line("frobnicate 1"),
            Err(CommandParseError::Unknown(_))
        ));
        assert!(matches!(
            Command::parse_line("apply"),
            Err(CommandParseError::Arity { expected: 1, got: 0, .. })
        ));
        assert!(matches!(
            Command::parse_line("apply 1 2"),
            Err(CommandParseError::Arity { .. })
        ));
        assert!(matches!(
            Command::parse_line("apply x"),
            Err(CommandParseError::BadInteger { .. })
        ));
        assert!(matches!(
            Command::parse_line("power 1 99999999999999999999"),
            Err(CommandParseError::BadInteger { .. })
        ));
        let err = parse_command_lines("apply 1\n\n# fine\nbad 2\n").unwrap_err();
        assert!(matches!(err, ScriptParseError::Command { line: 4, .. }));
    }

    #[test]
    fn validate_ranges_and_transpose_args() {
        assert_eq!(Command::Apply(5).validate(11), Ok(()));
        assert_eq!(
            Command::Apply(0).validate(11),
            Err(CommandValidateError::OutOfRange { element: 0, n: 11 })
        );
        assert_eq!(
            Command::Distance(3, 12).validate(11),
            Err(CommandValidateError::OutOfRange { element: 12, n: 11 })
        );
        assert_eq!(
            Command::TransposeAt(4, 4).validate(11),
            Err(CommandValidateError::EqualTransposeArguments { element: 4 })
        );
        assert_eq!(Command::Flip(4, 4).validate(11), Ok(()));
        assert_eq!(Command::Cycles.validate(0), Ok(()));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(9, 64, 5000, &OpMix::uniform()).unwrap();
        let b = generate(9, 64, 5000, &OpMix::uniform()).unwrap();
        assert_eq!(a, b);
        let c = generate(10, 64, 5000, &OpMix::uniform()).unwrap();
        assert_ne!(a.ops, c.ops);
    }

    #[test]
    fn generation_covers_all_weighted_kinds() {
        let mix = OpMix::uniform().with_weight(OpKind::OneLine, 1);
        let script = generate(1, 32, 10_000, &mix).unwrap();
        for kind in OpKind::ALL {
            assert!(
                script.ops.iter().any(|op| op.kind() == kind),
                "kind {} missing from script",
                kind.name()
            );
        }
        for op in &script.ops {
            op.validate(32).expect("generated command must validate");
        }
    }

    #[test]
    fn generation_honors_exclusive_mix() {
        let script = generate(3, 16, 500, &OpMix::only(OpKind::TransposeAt)).unwrap();
        assert!(script.ops.iter().all(|op| matches!(op, Command::TransposeAt(i, j) if i != j)));
    }

    #[test]
    fn generation_rejects_empty_and_infeasible() {
        let zero = OpMix::only(OpKind::Apply).with_weight(OpKind::Apply, 0);
        assert_eq!(generate(1, 8, 10, &zero), Err(GenerateError::EmptyMix));
        assert_eq!(
            generate(1, 1, 10, &OpMix::only(OpKind::TransposeAt)),
            Err(GenerateError::NoFeasibleOp { n: 1 })
        );
        // n = 1 still supports single-element ops
        assert!(generate(1, 1, 10, &OpMix::uniform()).is_ok());
    }

    #[test]
    fn script_text_roundtrip() {
        let script = generate(77, 24, 200, &OpMix::queries()).unwrap();
        let text = script.to_text();
        assert_eq!(OpScript::from_text(&text).unwrap(), script);
        assert!(OpScript::from_text("apply 1\n").is_err());
    }

    #[test]
    fn mix_names_resolve() {
        for name in OpMix::NAMES {
            assert!(OpMix::by_name(name).is_some(), "{name}");
        }
        assert!(OpMix::by_name("nonsense").is_none());
    }
}
