use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use k2vc::cycle::{
    approx_min_density_nontrivial_cycle, avg_density_cycle_deletion, avg_density_cycle_recursive,
    min_density_cycle_parametric,
};
use k2vc::dens2vc::dens_2vc;
use k2vc::driver::{
    generate, parse_instance, parse_report, solve_instance, verify_report, write_instance, GenKind, GenParams,
    Instance, SolutionReport, SolveOptions, UnrootedOptions,
};
use k2vc::numeric::{format_scaled, parse_scaled};
use k2vc::oracle::{
    brute_dens2vc, brute_k2vc, brute_min_density_nontrivial_cycle, brute_unrooted_dens2vc, OracleBudget,
};
use k2vc::prune::{prune, PruneParams};
use k2vc::{Cycle, Error, Graph};

#[derive(Parser)]
#[command(name = "k2vc", version, about = "Minimum-cost 2-vertex-connected subgraphs with a terminal-weight target")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random 2-connected instance to stdout.
    Gen(GenArgs),
    /// Solve an instance and print a JSON report.
    Solve(SolveArgs),
    /// Run the density subroutine for a root.
    Dens2vc {
        #[arg(long)]
        root: usize,
        file: PathBuf,
    },
    /// Extract a low-density cycle with at least two terminals.
    Cycle {
        #[arg(long, value_enum, default_value_t = CycleMethod::Parametric)]
        method: CycleMethod,
        file: PathBuf,
    },
    /// Prune the whole graph down to target weight `k`.
    Prune {
        #[arg(long)]
        root: usize,
        #[arg(long)]
        k: String,
        #[arg(long = "L")]
        l: String,
        file: PathBuf,
    },
    /// Exact answers by exhaustive search (small instances only).
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        file: PathBuf,
    },
    /// Independently check a solution report against an instance.
    Verify { file: PathBuf, solution: PathBuf },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long = "type", default_value = "random-2conn")]
    kind: GenKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long)]
    terminals: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    max_cost: i64,
    #[arg(long, default_value_t = 1)]
    max_weight: i64,
    /// Target weight in natural units.
    #[arg(long)]
    k: Option<i64>,
    /// Adds an `r` line, making the instance rooted.
    #[arg(long)]
    root: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// Solve the rooted problem for this root, overriding the file.
    #[arg(long)]
    rooted: Option<usize>,
    /// Use a single cost guess instead of trying all of them.
    #[arg(long, conflicts_with = "auto_guess")]
    opt_guess: Option<String>,
    /// Try every cost guess (the default).
    #[arg(long)]
    auto_guess: bool,
    #[arg(long, default_value_t = 200)]
    pairs_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    file: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum CycleMethod {
    Recursive,
    Deletion,
    Parametric,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    K2vc,
    Cycle,
    Dens2vc,
}

/// Errors carry the exit code they map to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MalformedInput { .. } | Error::InvalidGraph(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn vertex(g: &Graph, id: usize) -> Result<usize, Failure> {
    match id.checked_sub(1) {
        Some(v) if g.contains_vertex(v) => Ok(v),
        _ => Err(malformed(format!("vertex {id} does not exist"))),
    }
}

fn scaled(text: &str) -> Result<i64, Failure> {
    parse_scaled(text).map_err(malformed)
}

fn print(value: &impl serde::Serialize) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")));
}

// a closed pipe is not an error for a filter-style tool
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn cycle_json(g: &Graph, c: &Cycle) -> Value {
    json!({
        "vertices": c.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
        "edges": c.edges.iter().map(|e| e + 1).collect::<Vec<_>>(),
        "cost": format_scaled(c.cost),
        "weight": format_scaled(c.weight),
        "density": c.density().map(|d| d.to_f64()).ok(),
        "graph_density": g.density().map(|d| d.to_f64()).ok(),
    })
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Gen(a) => {
            let mut p = GenParams::new(a.kind, a.n, a.m, a.terminals, a.seed);
            p.max_cost = a.max_cost;
            p.max_weight = a.max_weight;
            p.k = a.k;
            let mut inst = generate(&p);
            if let Some(r) = a.root {
                inst.root = Some(vertex(&inst.graph, r)?);
                inst.mode = k2vc::driver::Mode::Rooted;
            }
            emit(&write_instance(&inst));
            Ok(0)
        }
        Command::Solve(a) => {
            let inst = read_instance(&a.file)?;
            let root = a.rooted.map(|r| vertex(&inst.graph, r)).transpose()?;
            let guess = a.opt_guess.as_deref().map(scaled).transpose()?;
            let opts =
                SolveOptions { root, guess, unrooted: UnrootedOptions { guess, pairs_cap: a.pairs_cap, seed: a.seed } };
            let report = solve_instance(&inst, &opts)?;
            if report.bounds.heuristic {
                eprintln!("note: k2ec-terminal instance solved heuristically; no approximation ratio is claimed");
            }
            print(&report);
            Ok(0)
        }
        Command::Dens2vc { root, file } => {
            let inst = read_instance(&file)?;
            let r = vertex(&inst.graph, root)?;
            let mut g = inst.graph.clone();
            g.set_weight(r, 0)?;
            let out = dens_2vc(&g, r)?;
            let mut report = SolutionReport::new(&Instance::new(g, 0, Some(r)), &out.solution);
            report.digest = k2vc::driver::digest(&inst);
            print(&json!({
                "density": out.density.to_f64(),
                "lp_density": out.lp_density,
                "rounding_lp": out.rounding_lp,
                "bucket": out.bucket.index,
                "bound_per_bucket": out.bound.per_bucket,
                "bound_logarithmic": out.bound.logarithmic,
                "solution": report,
            }));
            Ok(0)
        }
        Command::Cycle { method, file } => {
            let inst = read_instance(&file)?;
            let g = &inst.graph;
            let c = match method {
                CycleMethod::Recursive => avg_density_cycle_recursive(g)?,
                CycleMethod::Deletion => avg_density_cycle_deletion(g)?,
                CycleMethod::Parametric => min_density_cycle_parametric(g)?,
                CycleMethod::Approx => approx_min_density_nontrivial_cycle(g)?,
            };
            print(&cycle_json(g, &c));
            Ok(0)
        }
        Command::Prune { root, k, l, file } => {
            let inst = read_instance(&file)?;
            let r = vertex(&inst.graph, root)?;
            let mut g = inst.graph.clone();
            g.set_weight(r, 0)?;
            let rho = g.density()?;
            let params = PruneParams { k: scaled(&k)?, rho, l_bound: scaled(&l)?, root: r };
            let out = prune(&g, &params)?;
            let mut report = SolutionReport::new(&Instance::new(g, params.k, Some(r)), &out.solution);
            report.digest = k2vc::driver::digest(&inst);
            print(&json!({
                "rho": rho.to_f64(),
                "cost_bound": params.cost_bound().to_f64() / k2vc::SCALE as f64,
                "within_bound": out.within_bound,
                "selected_cluster": out.selected,
                "solution": report,
            }));
            Ok(0)
        }
        Command::Oracle { problem, file } => {
            let inst = read_instance(&file)?;
            let g = &inst.graph;
            let budget = OracleBudget::default();
            match problem {
                OracleProblem::K2vc => {
                    let sol = brute_k2vc(g, inst.k, inst.root, &budget)?;
                    print(&SolutionReport::new(&inst, &sol));
                }
                OracleProblem::Cycle => {
                    let c = brute_min_density_nontrivial_cycle(g, &budget)?;
                    print(&cycle_json(g, &c));
                }
                OracleProblem::Dens2vc => {
                    let (d, sol) = match inst.root {
                        Some(r) => {
                            let mut h = g.clone();
                            h.set_weight(r, 0)?;
                            brute_dens2vc(&h, r, &budget)?
                        }
                        None => brute_unrooted_dens2vc(g, &budget)?,
                    };
                    print(&json!({ "density": d.to_f64(), "solution": SolutionReport::new(&inst, &sol) }));
                }
            }
            Ok(0)
        }
        Command::Verify { file, solution } => {
            let inst = read_instance(&file)?;
            let text = fs::read_to_string(&solution).map_err(|e| malformed(format!("{}: {e}", solution.display())))?;
            let report = parse_report(&text)?;
            let out = verify_report(&inst, &report);
            print(&out);
            Ok(if out.pass { 0 } else { 1 })
        }
    }
}
