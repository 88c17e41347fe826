//! Instance files, the greedy solver, verification and generators.

mod generate;
mod greedy;
mod instance;
mod reduction;
mod report;
mod solve;

pub use generate::{generate, GenKind, GenParams};
pub use greedy::{
    empty_unrooted, guess_opt, guess_values, preprocess, solution_density, solve_rooted, solve_unrooted, RootedRun,
    Stage, StageKind, UnrootedOptions, UnrootedRun,
};
pub use instance::{parse_instance, write_instance, Instance, Mode};
pub use reduction::reduce_terminals_to_uniform_2ec;
pub use report::{
    digest, parse_report, ratio_bound, verify_solution, BoundChecks, CoveredEntry, EdgeEntry, PairEntry,
    SolutionReport, StageEntry, VerifyReport,
};
pub use solve::{solve_instance, verify_report, SolveOptions};
