//! Command-line front end behind the `agmon` binary.
//!
//! Exit codes: 0 success (all requested bounds hold), 1 bound violation,
//! 2 input error, 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::agmon::{agmon_distance, fmt_distance, AgmonField};
use crate::bounds::{verify_refined_with, verify_theorem_with, TargetDistances, DEFAULT_TOL_VERIFY};
use crate::error::{Error, Result};
use crate::experiments::{check_level_recurrence, compare_decay_rates, run_tree_experiment};
use crate::graph::{gen_cycle, gen_grid, gen_path, gen_random_connected, gen_tree_hub, Graph, Potential};
use crate::io::{load_edge_list, load_graph, save_graph, write_atomic};
use crate::report::{
    eigenpairs_from_json, eigenpairs_to_json, AgmonExport, ExperimentExport, VerifyReport, WalkExport, WalkOutcome,
};
use crate::spectral::{assemble, eig_all_with, eig_smallest_with, EigOptions, EigenPair, DEFAULT_TOL_EIG};
use crate::stochastic::{verify_walk_bound_with, WalkBound};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Agmon-type decay bounds for eigenvectors of graph Schrödinger operators.
#[derive(Debug, Parser)]
#[command(name = "agmon", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph file.
    Gen(GenArgs),
    /// Compute eigenpairs of L + W.
    Solve(SolveArgs),
    /// Agmon distance (and optionally the edge-cost comparison distance).
    Agmon(AgmonArgs),
    /// Check the decay bounds for one eigenpair.
    Verify(VerifyArgs),
    /// Random-walk bound with Monte Carlo cross-check.
    RwBound(RwArgs),
    /// Run the tree-with-hub sharpness experiment.
    TreeDemo(TreeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Grid,
    TreeHub,
    Random,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated potential values (default: all zero).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub potential: Option<Vec<f64>>,
    /// tree-hub only: W = 0 on the hub and this value elsewhere.
    #[arg(long)]
    pub w_mag: Option<f64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Graph input: a JSON graph file, or an edge list with `--potential-file`.
#[derive(Debug, Args)]
pub struct GraphInput {
    pub graph: PathBuf,
    #[arg(long)]
    pub potential_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Number of lowest pairs (iterative solver); all pairs when omitted.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOL_EIG)]
    pub tol_eig: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PairSelection {
    /// Eigenpairs file from `solve`; computed on the fly when omitted.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Index of the eigenpair (0 = ground state).
    #[arg(long, default_value_t = 0)]
    pub pair: usize,
    #[arg(long, default_value_t = DEFAULT_TOL_EIG)]
    pub tol_eig: f64,
}

#[derive(Debug, Args)]
pub struct AgmonArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub selection: PairSelection,
    /// Explicit energy instead of an eigenvalue.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Added to the selected energy.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub shift: f64,
    /// Also compute the edge-cost comparison distance.
    #[arg(long)]
    pub fmt: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub selection: PairSelection,
    /// Also check the target-refined bound.
    #[arg(long)]
    pub refined: bool,
    /// Also check the random-walk bound.
    #[arg(long)]
    pub rw: bool,
    #[arg(long, default_value_t = DEFAULT_TOL_VERIFY)]
    pub tol_verify: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RwArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[command(flatten)]
    pub selection: PairSelection,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL_VERIFY)]
    pub tol_verify: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub w_mag: f64,
    /// Experiment record (JSON).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Level profile (CSV).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error that aborted a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ConvergenceFailure { .. }
        | Error::SizeCapExceeded { .. }
        | Error::StepCapExceeded { .. }
        | Error::GreedyStalled(_) => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}

pub fn execute(config: &RunConfig) -> Result<i32> {
    match &config.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Agmon(a) => cmd_agmon(a),
        Command::Verify(a) => cmd_verify(a),
        Command::RwBound(a) => cmd_rw_bound(a),
        Command::TreeDemo(a) => cmd_tree_demo(a),
    }
}

fn require<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameter(format!("{family} requires --{flag}")))
}

fn positive(value: f64, name: &str) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")));
    }
    Ok(())
}

fn distinct(input: &Path, output: Option<&PathBuf>) -> Result<()> {
    if output.is_some_and(|o| o == input) {
        return Err(Error::InvalidParameter(format!("output path {} is the input path", input.display())));
    }
    Ok(())
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            let newline = if text.ends_with('\n') { "" } else { "\n" };
            match write!(out, "{text}{newline}").and_then(|_| out.flush()) {
                // a closed pipe (`| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(crate::io::io_error(Path::new("<stdout>"), e))
                }
                _ => Ok(()),
            }
        }
    }
}

pub fn cmd_gen(a: &GenArgs) -> Result<i32> {
    let (graph, hub): (Graph, Option<usize>) = match a.family {
        Family::Path => (gen_path(require(a.n, "n", "path")?)?, None),
        Family::Cycle => (gen_cycle(require(a.n, "n", "cycle")?)?, None),
        Family::Grid => (gen_grid(require(a.rows, "rows", "grid")?, require(a.cols, "cols", "grid")?)?, None),
        Family::TreeHub => {
            let (g, hub) = gen_tree_hub(require(a.q, "q", "tree-hub")?, require(a.k, "k", "tree-hub")?)?;
            (g, Some(hub))
        }
        Family::Random => gen_random_connected(require(a.n, "n", "random")?, require(a.p, "p", "random")?, a.seed)
            .map(|g| (g, None))?,
    };
    let potential = match (&a.potential, a.w_mag, hub) {
        (Some(_), Some(_), _) => {
            return Err(Error::InvalidParameter("--potential and --w-mag are exclusive".into()));
        }
        (Some(values), None, _) => {
            if values.len() != graph.n() {
                return Err(Error::SizeMismatch { graph: graph.n(), other: values.len() });
            }
            Potential::new(values.clone())?
        }
        (None, Some(w), Some(hub)) => {
            let mut values = vec![w; graph.n()];
            values[hub] = 0.0;
            Potential::new(values)?
        }
        (None, Some(_), None) => {
            return Err(Error::InvalidParameter("--w-mag applies to tree-hub only".into()));
        }
        (None, None, _) => Potential::zeros(graph.n()),
    };
    match &a.output {
        Some(path) => save_graph(&graph, &potential, path)?,
        None => emit(None, &crate::io::graph_to_json(&graph, &potential)?)?,
    }
    Ok(EXIT_OK)
}

fn load_input(input: &GraphInput) -> Result<(Graph, Potential)> {
    match &input.potential_file {
        Some(p) => load_edge_list(&input.graph, p),
        None => load_graph(&input.graph),
    }
}

fn eig_options(tol_eig: f64) -> Result<EigOptions> {
    positive(tol_eig, "tol-eig")?;
    Ok(EigOptions { tol_eig, ..Default::default() })
}

pub fn cmd_solve(a: &SolveArgs) -> Result<i32> {
    distinct(&a.input.graph, a.output.as_ref())?;
    let (graph, potential) = load_input(&a.input)?;
    let opts = eig_options(a.tol_eig)?;
    let h = assemble(&graph, &potential)?;
    let pairs = match a.count {
        Some(count) => eig_smallest_with(&h, count, &opts)?,
        None => eig_all_with(&h, &opts)?,
    };
    emit(a.output.as_ref(), &eigenpairs_to_json(&pairs)?)?;
    Ok(EXIT_OK)
}

fn select_pair(graph: &Graph, potential: &Potential, sel: &PairSelection) -> Result<EigenPair> {
    if let Some(path) = &sel.pairs {
        let text = std::fs::read_to_string(path).map_err(|e| crate::io::io_error(path, e))?;
        let mut pairs = eigenpairs_from_json(&text)?;
        if sel.pair >= pairs.len() {
            return Err(Error::InvalidParameter(format!(
                "pair index {} but the file holds {} pairs",
                sel.pair,
                pairs.len()
            )));
        }
        let pair = pairs.swap_remove(sel.pair);
        if pair.eigenvector.len() != graph.n() {
            return Err(Error::SizeMismatch { graph: graph.n(), other: pair.eigenvector.len() });
        }
        return Ok(pair);
    }
    let opts = eig_options(sel.tol_eig)?;
    let h = assemble(graph, potential)?;
    if sel.pair >= graph.n() {
        return Err(Error::TooManyEigenpairs { requested: sel.pair + 1, n: graph.n() });
    }
    let mut pairs = if graph.n() <= opts.dense_cap {
        eig_all_with(&h, &opts)?
    } else {
        eig_smallest_with(&h, sel.pair + 1, &opts)?
    };
    Ok(pairs.swap_remove(sel.pair))
}

/// Warns when a supplied pair is not an eigenpair to solver accuracy.
fn check_residual(graph: &Graph, potential: &Potential, pair: &mut EigenPair, tol_eig: f64) -> Result<()> {
    let h = assemble(graph, potential)?;
    pair.residual = h.residual(&pair.eigenvector, pair.eigenvalue);
    let tol = tol_eig * h.norm_inf().max(1.0);
    if pair.residual > tol {
        eprintln!(
            "warning: eigen-residual {:e} exceeds {:e}; the bounds assume an exact eigenpair",
            pair.residual, tol
        );
    }
    Ok(())
}

pub fn cmd_agmon(a: &AgmonArgs) -> Result<i32> {
    distinct(&a.input.graph, a.output.as_ref())?;
    let (graph, potential) = load_input(&a.input)?;
    let base = match a.energy {
        Some(e) => e,
        None => select_pair(&graph, &potential, &a.selection)?.eigenvalue,
    };
    let energy = base + a.shift;
    let (field, fmt) = match agmon_distance(&graph, &potential, energy) {
        Ok(field) => {
            let fmt = if a.fmt { Some(fmt_distance(&graph, &potential, energy)?) } else { None };
            (field, fmt)
        }
        Err(Error::EmptyAllowedRegion { .. }) => {
            eprintln!("warning: allowed region is empty at E = {energy}; all distances are infinite");
            let field = AgmonField::unreachable(&graph, &potential, energy);
            let fmt = a.fmt.then(|| vec![f64::INFINITY; graph.n()]);
            (field, fmt)
        }
        Err(e) => return Err(e),
    };
    let export = AgmonExport { field: &field, potential: &potential, fmt: fmt.as_deref() };
    let text = match a.format {
        Format::Json => export.to_json()?,
        Format::Csv => export.to_csv()?,
    };
    emit(a.output.as_ref(), &text)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    distinct(&a.input.graph, a.output.as_ref())?;
    positive(a.tol_verify, "tol-verify")?;
    let (graph, potential) = load_input(&a.input)?;
    let mut pair = select_pair(&graph, &potential, &a.selection)?;
    check_residual(&graph, &potential, &mut pair, a.selection.tol_eig)?;
    let energy = pair.eigenvalue;

    let field = agmon_distance(&graph, &potential, energy)?;
    let theorem = verify_theorem_with(&graph, &potential, &pair, &field, a.tol_verify)?;
    let refined = if a.refined {
        let targets = TargetDistances::compute(&graph, &potential, energy)?;
        Some(verify_refined_with(&graph, &potential, &pair, &targets, a.tol_verify)?)
    } else {
        None
    };
    let walk = if a.rw {
        match WalkBound::compute(&graph, &potential, energy) {
            Ok(walk) => WalkOutcome::Checked {
                delta: walk.delta,
                report: verify_walk_bound_with(&graph, &potential, &pair, &walk, a.tol_verify)?,
            },
            Err(Error::NoForbiddenRegion) => WalkOutcome::Vacuous,
            Err(e) => return Err(e),
        }
    } else {
        WalkOutcome::NotRequested
    };

    let report = VerifyReport::new(a.selection.pair, &pair, &theorem, refined.as_ref(), &walk);
    let text = match a.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    emit(a.output.as_ref(), &text)?;

    if report.all_hold() {
        return Ok(EXIT_OK);
    }
    let mut worst = vec![];
    if !theorem.holds {
        worst.push(("theorem", &theorem));
    }
    if let Some(r) = refined.as_ref().filter(|r| !r.holds) {
        worst.push(("refined", r));
    }
    if let WalkOutcome::Checked { report, .. } = &walk {
        if !report.holds {
            worst.push(("random-walk", report));
        }
    }
    for (name, r) in worst {
        eprintln!(
            "{name} bound violated: worst vertex {} with slack {:e} (tolerance {:e})",
            r.worst_vertex(),
            r.min_slack(),
            r.tolerance
        );
    }
    Ok(EXIT_VIOLATION)
}

pub fn cmd_rw_bound(a: &RwArgs) -> Result<i32> {
    distinct(&a.input.graph, a.output.as_ref())?;
    positive(a.tol_verify, "tol-verify")?;
    let (graph, potential) = load_input(&a.input)?;
    let pair = select_pair(&graph, &potential, &a.selection)?;
    let walk = WalkBound::compute(&graph, &potential, pair.eigenvalue)?
        .with_monte_carlo(&graph, &potential, a.samples, a.seed)?;
    let report = verify_walk_bound_with(&graph, &potential, &pair, &walk, a.tol_verify)?;
    let export = WalkExport { walk: &walk, report: &report };
    let text = match a.format {
        Format::Json => export.to_json()?,
        Format::Csv => export.to_csv()?,
    };
    emit(a.output.as_ref(), &text)?;
    if report.holds {
        Ok(EXIT_OK)
    } else {
        eprintln!("random-walk bound violated at vertex {} (slack {:e})", report.worst_vertex(), report.min_slack());
        Ok(EXIT_VIOLATION)
    }
}

pub fn cmd_tree_demo(a: &TreeArgs) -> Result<i32> {
    let exp = run_tree_experiment(a.q, a.k, a.w_mag)?;
    let field = agmon_distance(&exp.graph, &exp.potential, exp.lambda1)?;
    let comparison = compare_decay_rates(&exp, &field)?;
    let export = ExperimentExport {
        experiment: &exp,
        comparison: &comparison,
        recurrence_residual: check_level_recurrence(&exp),
    };
    emit(a.output.as_ref(), &export.to_json()?)?;
    if let Some(path) = &a.csv {
        write_atomic(path, export.level_csv()?.as_bytes())?;
    }
    Ok(EXIT_OK)
}
