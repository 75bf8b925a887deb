//! Test and measurement machinery: a command grammar with weighted
//! random generation, a differential runner that cross-checks two stores
//! op by op, a deliberately buggy wrapper to prove the runner bites, and
//! scaling sweeps with built-in plausibility checks.

pub mod corrupt;
pub mod diff;
pub mod report;
pub mod scaling;
pub mod script;

pub use corrupt::CorruptedStore;
pub use diff::{run_differential, shrink_to_minimal_prefix};
pub use report::{Check, ClassStat, Divergence, RunReport, ScalingRow};
pub use scaling::{build_potential_bound, measure_scaling, rotations_per_op_bound};
pub use script::{
    execute, generate, parse_command_lines, Command, CommandOutput, CommandParseError,
    CommandValidateError, GenerateError, OpKind, OpMix, OpScript, ScriptParseError,
};
