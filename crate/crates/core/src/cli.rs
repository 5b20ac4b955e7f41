//! Command-line surface.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 scale-guard refusal,
//! 3 when a search finds a conjecture candidate failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::coloring::{
    check_admissible_with, conditional_greedy_with, parse_coloring, FreeVertexSemantics, GreedyOptions,
    PartialColoring,
};
use crate::density::{density_with, DensityOptions};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::harness::{
    fat_triangle_grid, fat_triangle_sample, generate, random_specs, run_experiment, standard_sweep,
    thick_ring_grid, ExperimentConfig, Family, InstanceSpec, KPolicy,
};
use crate::oracles::{chromatic_index_with, validate_coloring};
use crate::ordering::{reorder_with, TieBreak};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SCALE_GUARD: i32 = 2;
pub const EXIT_CANDIDATE_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "edgecolor", version, about = "Multigraph edge-coloring laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance from a spec such as `fat_triangle:2,2,2`.
    Gen {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the density omega and a maximising vertex set.
    Density {
        file: PathBuf,
        #[arg(long)]
        force: bool,
        /// Evaluate even subsets too.
        #[arg(long)]
        no_prune: bool,
    },
    /// Exact chromatic index.
    Chi {
        file: PathBuf,
        #[arg(long)]
        force: bool,
        /// Write the optimal coloring here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the vertex and edge orderings used by the greedy.
    Reorder {
        file: PathBuf,
        #[arg(long)]
        shuffle_ties: Option<u64>,
    },
    /// Run the conditional greedy.
    Color {
        file: PathBuf,
        #[command(flatten)]
        run: RunFlags,
        /// Write the per-step trace (JSON lines).
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the final coloring.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file for properness and admissibility.
    Check {
        file: PathBuf,
        coloring: PathBuf,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Sweep a family of instances and report the greedy outcome on each.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct RunFlags {
    /// Palette size: omega, fractional (max of degree and omega) or an integer.
    #[arg(long, default_value = "omega")]
    k: String,
    #[arg(long)]
    force: bool,
    /// Count only free vertices whose free edge lies inside the subset.
    #[arg(long)]
    strict_free_vertices: bool,
    /// Break ordering ties at random with this seed.
    #[arg(long)]
    shuffle_ties: Option<u64>,
}

impl RunFlags {
    fn semantics(&self) -> FreeVertexSemantics {
        if self.strict_free_vertices {
            FreeVertexSemantics::Strict
        } else {
            FreeVertexSemantics::Verbatim
        }
    }

    fn tie_break(&self) -> TieBreak {
        self.shuffle_ties.map_or(TieBreak::Deterministic, TieBreak::Seeded)
    }
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// fat_triangle, thick_ring, random, named or sweep.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 2)]
    min_mult: usize,
    #[arg(long, default_value_t = 4)]
    max_mult: usize,
    /// Ring lengths for thick_ring.
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    lengths: Vec<usize>,
    /// Number of sampled instances; without it fat_triangle enumerates the grid.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertex count for random instances.
    #[arg(long, default_value_t = 7)]
    n: usize,
    /// Base edge probability for random instances.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Names for the named family.
    #[arg(long, value_delimiter = ',')]
    names: Vec<String>,
    #[command(flatten)]
    run: RunFlags,
    /// Report CSV; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for candidate-failure bundles.
    #[arg(long)]
    artifacts: Option<PathBuf>,
    /// Directory receiving one trace per instance.
    #[arg(long)]
    traces: Option<PathBuf>,
    /// Add a wall-time column to the report.
    #[arg(long)]
    timing: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_scale_guard() {
                EXIT_SCALE_GUARD
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    Multigraph::parse(&fs::read_to_string(path)?)
}

fn resolve_k(g: &Multigraph, flags: &RunFlags) -> Result<u32> {
    let policy: KPolicy = flags.k.parse()?;
    if let KPolicy::Explicit(k) = policy {
        return Ok(k);
    }
    let d = density_with(g, DensityOptions { force: flags.force, ..Default::default() })?;
    Ok(policy.resolve(d.omega, d.fractional_index))
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen { spec, seed, out } => {
            let spec = spec.parse::<InstanceSpec>()?.with_seed(seed);
            let text = generate(&spec)?.serialize();
            match out {
                Some(path) => fs::write(path, text)?,
                None => stdout.write_all(text.as_bytes())?,
            }
        }
        Command::Density { file, force, no_prune } => {
            let g = read_graph(&file)?;
            let d = density_with(&g, DensityOptions { prune_even: !no_prune, force })?;
            writeln!(stdout, "omega {}", d.omega)?;
            writeln!(stdout, "witness {}", join(d.witness.iter()))?;
            writeln!(stdout, "witness_edges {}", d.witness_edges)?;
            writeln!(stdout, "fractional_index {}", d.fractional_index)?;
        }
        Command::Chi { file, force, out } => {
            let g = read_graph(&file)?;
            let r = chromatic_index_with(&g, force)?;
            writeln!(stdout, "chi {}", r.chi_prime)?;
            if let Some(path) = out {
                let mut buf = Vec::new();
                r.optimal_coloring.write_to(&mut buf)?;
                fs::write(path, buf)?;
            }
        }
        Command::Reorder { file, shuffle_ties } => {
            let g = read_graph(&file)?;
            let order = reorder_with(&g, shuffle_ties.map_or(TieBreak::Deterministic, TieBreak::Seeded))?;
            writeln!(stdout, "vertices {}", join(order.vertex_order.iter()))?;
            writeln!(stdout, "edges {}", join(order.edge_order.iter()))?;
        }
        Command::Color { file, run, trace, out } => return color(&file, &run, trace, out, stdout),
        Command::Check { file, coloring, run } => {
            let g = read_graph(&file)?;
            let k = resolve_k(&g, &run)?;
            let colors = parse_coloring(&fs::read_to_string(coloring)?, g.m())?;
            let proper = validate_coloring(&g, &colors);
            writeln!(stdout, "k {k}")?;
            writeln!(stdout, "proper {}", yes_no(proper))?;
            writeln!(stdout, "complete {}", yes_no(colors.iter().all(Option::is_some)))?;
            if !proper {
                return Ok(EXIT_OK);
            }
            let phi = PartialColoring::new(&g, k, colors)?;
            match check_admissible_with(&g, &phi, run.semantics()) {
                None => writeln!(stdout, "admissible yes")?,
                Some(v) => writeln!(stdout, "admissible no {v}")?,
            }
        }
        Command::Search(args) => return search(args, stdout, stderr),
    }
    Ok(EXIT_OK)
}

/// Colors each component with edges separately under the palette computed
/// for the whole graph.
fn color(
    file: &Path,
    run: &RunFlags,
    trace_path: Option<PathBuf>,
    out: Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<i32> {
    let g = read_graph(file)?;
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let k = resolve_k(&g, run)?;
    let opts = GreedyOptions { semantics: run.semantics() };
    let components: Vec<_> = g.connected_components().into_iter().filter(|c| c.len() >= 2).collect();
    let mut assignment = vec![None; g.m()];
    let mut trace_buf = Vec::new();
    let mut all_complete = true;
    writeln!(stdout, "k {k}")?;
    for (idx, comp) in components.iter().enumerate() {
        let (sub, vertex_map, edge_map) = g.induced_subgraph(*comp);
        let order = reorder_with(&sub, run.tie_break())?;
        let t = conditional_greedy_with(&sub, k, &order, opts)?;
        if components.len() == 1 {
            t.write_jsonl(&mut trace_buf)?;
        } else {
            t.write_jsonl_mapped(&mut trace_buf, idx, &vertex_map, &edge_map)?;
        }
        for (e, c) in t.final_coloring.assignment().iter().enumerate() {
            assignment[edge_map[e]] = *c;
        }
        let label = if components.len() == 1 { String::new() } else { format!("component {idx} ") };
        match (t.complete, t.halt_step(), t.halt_violation()) {
            (true, _, _) => writeln!(stdout, "{label}complete {} edges", sub.m())?,
            (false, Some(step), Some(v)) => writeln!(stdout, "{label}halted at step {step} {v}")?,
            (false, step, _) => writeln!(stdout, "{label}halted at step {}", step.unwrap_or(0))?,
        }
        all_complete &= t.complete;
    }
    writeln!(stdout, "result {}", if all_complete { "complete" } else { "halted" })?;
    if let Some(path) = trace_path {
        fs::write(path, trace_buf)?;
    }
    if let Some(path) = out {
        let mut buf = Vec::new();
        PartialColoring::new(&g, k, assignment)?.write_to(&mut buf)?;
        fs::write(path, buf)?;
    }
    Ok(EXIT_OK)
}

fn search_specs(args: &SearchArgs) -> Result<Vec<InstanceSpec>> {
    let (lo, hi) = (args.min_mult, args.max_mult);
    if lo < 1 || lo > hi {
        return Err(Error::InvalidParameter(format!("multiplicity range {lo}..={hi} is empty")));
    }
    let specs = match args.family.as_str() {
        "fat_triangle" => match args.count {
            Some(count) => fat_triangle_sample(lo, hi, count, args.seed),
            None => fat_triangle_grid(lo, hi),
        },
        "thick_ring" => thick_ring_grid(&args.lengths, lo, hi),
        "random" => random_specs(args.n, args.p, args.max_mult, args.count.unwrap_or(50), args.seed),
        "named" => {
            if args.names.is_empty() {
                return Err(Error::InvalidParameter("--names is required for the named family".into()));
            }
            args.names.iter().map(|n| InstanceSpec::new(Family::Named(n.clone()))).collect()
        }
        "sweep" => standard_sweep(),
        other => return Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
    };
    Ok(specs)
}

fn search(args: SearchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = ExperimentConfig {
        k_policy: args.run.k.parse()?,
        semantics: args.run.semantics(),
        tie_break: args.run.tie_break(),
        force: args.run.force,
        verify_prefixes: true,
    };
    let specs = search_specs(&args)?;
    let report = run_experiment(&specs, &cfg)?;

    let mut csv_buf = Vec::new();
    report.write_csv(&mut csv_buf, args.timing)?;
    let mut summary_buf = Vec::new();
    report.write_summary_csv(&mut summary_buf)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &csv_buf)?;
            fs::write(path.with_extension("summary.csv"), &summary_buf)?;
        }
        None => stdout.write_all(&csv_buf)?,
    }
    if let Some(dir) = &args.traces {
        fs::create_dir_all(dir)?;
        for run in &report.runs {
            let mut buf = Vec::new();
            run.trace.write_jsonl(&mut buf)?;
            fs::write(dir.join(format!("{:04}.jsonl", run.row.id)), buf)?;
        }
    }

    let s = report.summary();
    let log: &mut dyn Write = if args.out.is_some() { stdout } else { stderr };
    writeln!(
        log,
        "instances {} applicable {} completions {} halts {} candidate_failures {} chi_neq_omega {} prefix_failures {}",
        s.instances, s.applicable, s.completions, s.halts, s.candidate_failures, s.chi_neq_omega, s.prefix_failures
    )?;
    if s.candidate_failures == 0 {
        return Ok(EXIT_OK);
    }
    let dir = args.artifacts.clone().unwrap_or_else(|| match &args.out {
        Some(path) => path.with_extension("artifacts"),
        None => PathBuf::from("artifacts"),
    });
    for bundle in report.write_artifacts(&dir, &cfg)? {
        writeln!(log, "{} {}", crate::harness::CANDIDATE_FAILURE, bundle.display())?;
    }
    Ok(EXIT_CANDIDATE_FAILURE)
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
