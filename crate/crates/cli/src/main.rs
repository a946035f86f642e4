//! `domset` — solve, verify, reduce, generate, and batch-validate
//! d-distance m-tuple (l, r)-domination instances.
//!
//! Exit codes: 0 success (optimal/feasible), 1 usage or input error,
//! 2 infeasible verdict (or experiment violations), 3 node budget
//! exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use domset_cli::experiment::{canonical_report_json, run_experiment, GridConfig};
use domset_core::{
    build_gadget_a, build_gadget_b, generate_random_graph, solve_bruteforce, solve_exact,
    solve_greedy, validate_params, validate_params_allowing_large_r, Graph, OptResult, Params,
    SolveStatus, ValidParams, VertexSet,
};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "domset",
    about = "d-distance m-tuple (l,r)-domination: solvers, verifier, reduction gadgets",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly, greedily, or by brute force.
    Solve(SolveArgs),
    /// Check whether a vertex set is a feasible dominating set.
    Verify(VerifyArgs),
    /// Build a reduction gadget graph and its vertex-role map.
    Reduce(ReduceArgs),
    /// Generate a seeded random graph in edge-list format.
    Gen(GenArgs),
    /// Run the claim-validation experiment grid.
    Experiment(ExperimentArgs),
}

#[derive(Args, Clone, Copy)]
struct ParamFlags {
    /// Distance radius d.
    #[arg(long)]
    d: u32,
    /// Per-vertex multiplicity m.
    #[arg(long)]
    m: u32,
    /// Per-subset coverage l.
    #[arg(long)]
    l: u32,
    /// Subset size r.
    #[arg(long)]
    r: u32,
    /// Lift the soft cap on r (condition (ii) enumerates C(n, r) subsets).
    #[arg(long)]
    allow_large_r: bool,
}

impl ParamFlags {
    fn validated(&self, g: &Graph) -> Result<ValidParams> {
        let raw = Params::new(self.d, self.m, self.l, self.r);
        let validated = if self.allow_large_r {
            validate_params_allowing_large_r(raw, g)
        } else {
            validate_params(raw, g)
        };
        validated.map_err(|e| anyhow!(e))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolveMode {
    Exact,
    Greedy,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, value_enum, default_value = "exact")]
    mode: SolveMode,
    /// Node budget for the exact solver.
    #[arg(long)]
    budget: Option<u64>,
    /// Brute-force size cap (overrides DOMSET_ORACLE_CAP and the default).
    #[arg(long)]
    oracle_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
    /// Input graph in edge-list format.
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, value_enum, default_value = "json")]
    output: OutputFormat,
    /// Input graph in edge-list format.
    graph: PathBuf,
    /// Candidate set: one vertex label per line.
    set: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GadgetChoice {
    A,
    B,
}

#[derive(Args)]
struct ReduceArgs {
    /// Which construction to build.
    #[arg(long, value_enum)]
    kind: GadgetChoice,
    /// Multiplicity m recorded in the gadget instance (kind a).
    #[arg(long)]
    m: Option<u32>,
    /// Coverage l: clique block size is l-1 (kind a).
    #[arg(long)]
    l: Option<u32>,
    /// Tail block size r (kind a).
    #[arg(long)]
    r: Option<u32>,
    /// Pendant path length is d-1 (kind b).
    #[arg(long)]
    d: Option<u32>,
    /// Where to write the gadget edge list.
    #[arg(long)]
    out_graph: PathBuf,
    /// Where to write the vertex-role map as JSON.
    #[arg(long)]
    out_map: PathBuf,
    /// Input graph in edge-list format.
    graph: PathBuf,
}

#[derive(Args)]
struct GenArgs {
    /// Vertex count.
    #[arg(long)]
    n: usize,
    /// Edge probability in [0, 1].
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Retry (then force via a random spanning tree) until connected.
    #[arg(long)]
    connected: bool,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Grid config JSON; the built-in default grid when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the canonicalized report (wall times stripped, sorted keys).
    #[arg(long)]
    canonical: bool,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read graph file {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_vertex_set(path: &Path, g: &Graph) -> Result<VertexSet> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read set file {}", path.display()))?;
    let mut set = VertexSet::empty(g.n());
    for (lineno, raw) in text.lines().enumerate() {
        let token = raw.trim();
        if token.is_empty() || token.starts_with('#') {
            continue;
        }
        let v = g
            .vertex_by_label(token)
            .ok_or_else(|| anyhow!("line {}: unknown vertex label {token:?}", lineno + 1))?;
        set.insert(v);
    }
    Ok(set)
}

fn oracle_cap(explicit: Option<usize>) -> Option<usize> {
    explicit.or_else(|| {
        std::env::var("DOMSET_ORACLE_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn print_result(g: &Graph, result: &OptResult, output: OutputFormat) -> Result<()> {
    match output {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(result)?),
        OutputFormat::Table => {
            println!("status          {}", status_name(result.status));
            println!("size            {}", result.size);
            let labels: Vec<String> = result.set.iter().map(|v| g.display_label(v)).collect();
            println!("set             {}", labels.join(" "));
            println!("nodes_explored  {}", result.nodes_explored);
            println!("wall_time_ms    {}", result.wall_time.as_millis());
        }
    }
    Ok(())
}

fn status_name(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Optimal => "optimal",
        SolveStatus::FeasibleOnly => "feasible-only",
        SolveStatus::Infeasible => "infeasible",
        SolveStatus::BudgetExhausted => "budget-exhausted",
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<u8> {
    let g = read_graph(&args.graph)?;
    let p = args.params.validated(&g)?;
    let result = match args.mode {
        SolveMode::Exact => solve_exact(&g, p, args.budget),
        SolveMode::Greedy => solve_greedy(&g, p),
        SolveMode::Oracle => solve_bruteforce(&g, p, oracle_cap(args.oracle_cap))?,
    };
    print_result(&g, &result, args.output)?;
    Ok(match result.status {
        SolveStatus::Optimal | SolveStatus::FeasibleOnly => EXIT_OK,
        SolveStatus::Infeasible => EXIT_INFEASIBLE,
        SolveStatus::BudgetExhausted => EXIT_BUDGET,
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let g = read_graph(&args.graph)?;
    let p = args.params.validated(&g)?;
    let set = read_vertex_set(&args.set, &g)?;
    let report = domset_core::verify(&g, p, &set);
    match args.output {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        OutputFormat::Table => {
            println!("feasible          {}", report.feasible);
            println!("cond1_violations  {}", report.cond1_violations.len());
            println!("cond2_violations  {}", report.cond2_violations.len());
            println!("checked_subsets   {}", report.checked_subsets);
            for v in report.cond1_violations.iter().take(5) {
                println!("  vertex {} has {} dominators", g.display_label(v.vertex), v.count);
            }
            for v in report.cond2_violations.iter().take(5) {
                let labels: Vec<String> =
                    v.subset.iter().map(|&u| g.display_label(u)).collect();
                println!("  subset {{{}}} covered by {}", labels.join(", "), v.count);
            }
        }
    }
    Ok(if report.feasible { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn cmd_reduce(args: &ReduceArgs) -> Result<u8> {
    let g = read_graph(&args.graph)?;
    let (gadget, map) = match args.kind {
        GadgetChoice::A => {
            let (m, l, r) = match (args.m, args.l, args.r) {
                (Some(m), Some(l), Some(r)) => (m, l, r),
                _ => bail!("gadget a needs --m, --l, and --r"),
            };
            build_gadget_a(&g, m, l, r)?
        }
        GadgetChoice::B => {
            let d = args.d.ok_or_else(|| anyhow!("gadget b needs --d"))?;
            build_gadget_b(&g, d)?
        }
    };
    let mut graph_out = Vec::new();
    gadget.write_edge_list(&mut graph_out)?;
    fs::write(&args.out_graph, graph_out)
        .with_context(|| format!("writing {}", args.out_graph.display()))?;
    fs::write(&args.out_map, serde_json::to_string_pretty(&map)?)
        .with_context(|| format!("writing {}", args.out_map.display()))?;
    Ok(EXIT_OK)
}

fn cmd_gen(args: &GenArgs) -> Result<u8> {
    if args.n < 1 {
        bail!("--n must be at least 1");
    }
    if !(0.0..=1.0).contains(&args.p) {
        bail!("--p must lie in [0, 1]");
    }
    let g = generate_random_graph(args.n, args.p, args.seed, args.connected);
    let mut out = Vec::new();
    g.write_edge_list(&mut out)?;
    match &args.out {
        Some(path) => fs::write(path, out).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&out)?,
    }
    Ok(EXIT_OK)
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<u8> {
    let config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))?;
            serde_json::from_str::<GridConfig>(&text)
                .with_context(|| format!("parsing {}", path.display()))?
        }
        None => GridConfig::default_grid(),
    };
    let report = run_experiment(&config, args.seed).map_err(|e| anyhow!(e))?;
    let value = serde_json::to_value(&report)?;
    let text = if args.canonical {
        canonical_report_json(&value)
    } else {
        serde_json::to_string_pretty(&value)?
    };
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => println!("{text}"),
    }
    eprintln!(
        "{} instances, {} solver runs ({} disagreements), {} claim checks ({} violations)",
        report.summary.instances,
        report.summary.solver_runs,
        report.summary.solver_disagreements,
        report.summary.claim_checks,
        report.summary.claim_violations,
    );
    Ok(if report.violation_free() { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is a
            // usage error (exit 1, not clap's default 2, which is reserved
            // for the infeasible verdict).
            let _ = err.print();
            return if err.exit_code() == 0 {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_ERROR)
            };
        }
    };
    let outcome = match &cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Experiment(args) => cmd_experiment(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
