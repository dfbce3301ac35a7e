//! `tfes`: solve, verify, generate and inspect temporal feedback set
//! instances.
//!
//! Exit codes: 0 success or YES, 1 NO or invalid solution, 2 usage error,
//! 3 input error, 4 resource guard.

mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tfes_core::branch::{BranchSolver, ProblemVariant, Solution, Target};
use tfes_core::dp::{dp_solve, DpError};
use tfes_core::exhaustive::{ExhaustiveError, ExhaustiveSolver};
use tfes_core::graph::TemporalGraph;
use tfes_core::reach::{shortest_cycle, PathModel};
use tfes_core::reduce::{
    multicut_dag_to_tfes, random_simple_temporal_graph, random_temporal_graph, sat_to_nonstrict, sat_to_strict,
    static_to_three_layers, ReductionOutput,
};

use format::{parse_cnf, parse_dag, parse_instance, parse_solution, parse_static_graph, serialize_instance};

#[derive(Parser)]
#[command(name = "tfes", version, about = "Temporal feedback edge and connection set solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum feedback set, or a YES/NO decision with --k.
    Solve {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        input: PathBuf,
    },
    /// Check a solution file against an instance.
    Verify {
        #[arg(long, value_enum)]
        variant: Variant,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Write a generated instance to stdout.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Size, simplicity and shortest cycle lengths.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// From a DIMACS CNF formula.
    Sat3 {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        /// Fill short clauses by repeating their last literal.
        #[arg(long)]
        pad: bool,
    },
    /// From a DAG with terminal pairs.
    Multicut {
        #[arg(long)]
        dag: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Every edge of a static graph at labels 1, 2 and 3.
    Layers3 {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Seeded random temporal graph.
    Random {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        tau: u32,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        /// At most one label per vertex pair.
        #[arg(long)]
        simple: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Tfes,
    Stfes,
    Tfcs,
    Stfcs,
}

impl Variant {
    fn problem(self) -> ProblemVariant {
        match self {
            Variant::Tfes => ProblemVariant::TFES,
            Variant::Stfes => ProblemVariant::STFES,
            Variant::Tfcs => ProblemVariant::TFCS,
            Variant::Stfcs => ProblemVariant::STFCS,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Branch,
    Dp,
    Exhaustive,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Strict,
    Nonstrict,
}

/// Failure with its exit code.
enum Failure {
    Usage(String),
    Input(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
            Failure::Guard(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Guard(m) => m,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<TemporalGraph, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn guard_dp(e: DpError) -> Failure {
    Failure::Guard(e.to_string())
}

fn guard_exhaustive(e: ExhaustiveError) -> Failure {
    Failure::Guard(e.to_string())
}

fn pick(algo: Algo, variant: ProblemVariant, g: &TemporalGraph) -> Result<Algo, Failure> {
    match algo {
        Algo::Auto if variant.target == Target::EdgeSet && g.n() <= 4 && g.is_simple() => Ok(Algo::Dp),
        Algo::Auto => Ok(Algo::Branch),
        Algo::Dp if variant.target == Target::ConnectionSet => {
            Err(Failure::Usage("dp solves only the edge-set variants".into()))
        }
        Algo::Dp => {
            if !g.is_simple() {
                eprintln!("warning: dp on a non-simple graph may overcount parallel time-edges");
            }
            Ok(Algo::Dp)
        }
        other => Ok(other),
    }
}

/// Minimum solution, or `None` when `cap` is given and exceeded.
fn minimum(algo: Algo, variant: ProblemVariant, g: &TemporalGraph, cap: Option<usize>) -> Result<Option<Solution>, Failure> {
    Ok(match algo {
        Algo::Dp => {
            let sol = dp_solve(g, variant.model).map_err(guard_dp)?;
            Some(Solution::Edges(sol.witness)).filter(|s| cap.is_none_or(|k| s.size() <= k))
        }
        Algo::Exhaustive => {
            let solver = ExhaustiveSolver {
                cap,
                ..ExhaustiveSolver::new(variant.model)
            };
            match variant.target {
                Target::EdgeSet => solver.edges(g),
                Target::ConnectionSet => solver.connections(g),
            }
            .map_err(guard_exhaustive)?
        }
        Algo::Branch | Algo::Auto => {
            let solver = BranchSolver::new(variant);
            match cap {
                Some(k) => solver.solve(g, k).solution,
                None => solver.optimum(g),
            }
        }
    })
}

fn solve(variant: Variant, algo: Algo, k: Option<usize>, input: &Path) -> Result<u8, Failure> {
    let g = load_instance(input)?;
    let variant = variant.problem();
    let algo = pick(algo, variant, &g)?;
    let found = minimum(algo, variant, &g, k)?;
    match (k, found) {
        (Some(_), None) => {
            println!("NO");
            Ok(1)
        }
        (Some(_), Some(s)) => {
            print!("YES\n{}", format::serialize_solution(&s));
            Ok(0)
        }
        (None, Some(s)) => {
            print!("{}", format::serialize_solution(&s));
            Ok(0)
        }
        (None, None) => Err(Failure::Input("no feedback set exists".into())),
    }
}

fn verify(variant: Variant, input: &Path, solution: &Path) -> Result<u8, Failure> {
    let g = load_instance(input)?;
    let variant = variant.problem();
    let sol = parse_solution(&read(solution)?).map_err(|e| Failure::Input(format!("{}: {e}", solution.display())))?;
    // an empty file parses as an empty edge set
    let sol = match (&sol, variant.target) {
        (Solution::Edges(e), Target::ConnectionSet) if e.is_empty() => Solution::empty(Target::ConnectionSet),
        _ => sol,
    };
    if sol.target() != variant.target {
        return Err(Failure::Input(format!("solution kind does not match {}", variant.name())));
    }
    match &sol {
        Solution::Edges(es) => {
            if let Some(e) = es.iter().find(|e| !g.contains(e)) {
                return Err(Failure::Input(format!("{e} is not a time-edge of the instance")));
            }
        }
        Solution::Connections(cs) => {
            let under = g.underlying();
            if let Some(c) = cs.iter().find(|c| !under.contains(**c)) {
                return Err(Failure::Input(format!("{c} is not a connection of the instance")));
            }
        }
    }
    if sol.is_feasible(&g, variant.model) {
        println!("VALID {}", sol.size());
        Ok(0)
    } else {
        println!("INVALID");
        Ok(1)
    }
}

fn emit(out: &ReductionOutput) {
    println!("c k {}", out.k);
    for (v, role) in &out.legend {
        println!("c vertex {v} {role}");
    }
    print!("{}", serialize_instance(&out.graph));
}

fn generate(family: Family) -> Result<u8, Failure> {
    let input = |e: &dyn std::fmt::Display| Failure::Input(e.to_string());
    match family {
        Family::Sat3 { cnf, model, pad } => {
            let phi = parse_cnf(&read(&cnf)?).map_err(|e| input(&e))?;
            let phi = if pad { phi.padded() } else { phi };
            let out = match model {
                Model::Strict => sat_to_strict(&phi),
                Model::Nonstrict => sat_to_nonstrict(&phi),
            }
            .map_err(|e| input(&e))?;
            emit(&out);
        }
        Family::Multicut { dag, k } => {
            let (d, pairs) = parse_dag(&read(&dag)?).map_err(|e| input(&e))?;
            emit(&multicut_dag_to_tfes(&d, &pairs, k).map_err(|e| input(&e))?);
        }
        Family::Layers3 { graph } => {
            let g = parse_static_graph(&read(&graph)?).map_err(|e| input(&e))?;
            print!("{}", serialize_instance(&static_to_three_layers(&g)));
        }
        Family::Random { n, tau, p, seed, simple } => {
            let g = if simple {
                random_simple_temporal_graph(n, tau, p, seed)
            } else {
                random_temporal_graph(n, tau, p, seed)
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            println!("c seed {seed}");
            print!("{}", serialize_instance(&g));
        }
    }
    Ok(0)
}

fn stats(input: &Path) -> Result<u8, Failure> {
    let g = load_instance(input)?;
    let cycle = |m| shortest_cycle(&g, m).map_or("none".to_string(), |c| c.len().to_string());
    println!("n {}", g.n());
    println!("edges {}", g.num_edges());
    println!("tau {}", g.tau());
    println!("simple {}", if g.is_simple() { "yes" } else { "no" });
    println!("shortest_strict_cycle {}", cycle(PathModel::Strict));
    println!("shortest_nonstrict_cycle {}", cycle(PathModel::NonStrict));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve { variant, algo, k, input } => solve(variant, algo, k, &input),
        Command::Verify {
            variant,
            input,
            solution,
        } => verify(variant, &input, &solution),
        Command::Generate { family } => generate(family),
        Command::Stats { input } => stats(&input),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
