//! Instance generators and the conjecture-testing experiment driver.
//!
//! An instance is identified by an [`InstanceSpec`]: a family with its
//! parameters plus a seed for the randomised families. Specs have a compact
//! text form (`fat_triangle:2,3,4`, `thick_ring:5,3`, `random:7,0.5,3`,
//! `named:petersen`, `file:path/to/g.mg`) that is written into every report
//! row so that each row can be regenerated.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{conditional_greedy_with, Color, FreeVertexSemantics, GreedyOptions, RunTrace};
use crate::density::{density_with, DensityOptions};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::oracles::{chromatic_index_with, naive_admissible_with, validate_coloring, NAIVE_MAX_VERTICES};
use crate::ordering::{reorder_with, TieBreak};

/// Attempts at drawing a connected base graph before giving up.
pub const SAMPLE_ATTEMPTS: usize = 100;

pub const CANDIDATE_FAILURE: &str = "CONJECTURE-CANDIDATE-FAILURE";
pub const DENSITY_MISMATCH: &str = "CHI-NEQ-OMEGA";

pub const NAMED: &[&str] = &["k2", "k3", "k4", "path3", "star3", "c5", "petersen", "shannon"];

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// Triangle with multiplicities `p` on 0-1, `q` on 0-2 and `r` on 1-2.
    FatTriangle { p: usize, q: usize, r: usize },
    /// Cycle of odd `length` with every edge repeated `mult` times.
    ThickRing { length: usize, mult: usize },
    /// Connected `G(n, prob)` base graph, each edge repeated `1..=max_mult`
    /// times uniformly.
    Random { n: usize, prob: f64, max_mult: usize },
    Named(String),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub family: Family,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(family: Family) -> Self {
        InstanceSpec { family, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn is_random(&self) -> bool {
        matches!(self.family, Family::Random { .. })
    }

    /// Label used as the instance name: the spec text, plus the seed for
    /// random instances.
    pub fn label(&self) -> String {
        if self.is_random() {
            format!("{self}@{}", self.seed)
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::FatTriangle { p, q, r } => write!(f, "fat_triangle:{p},{q},{r}"),
            Family::ThickRing { length, mult } => write!(f, "thick_ring:{length},{mult}"),
            Family::Random { n, prob, max_mult } => write!(f, "random:{n},{prob},{max_mult}"),
            Family::Named(name) => write!(f, "named:{name}"),
            Family::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.family.fmt(f)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse instance spec `{s}`"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums = |count: usize| -> Result<Vec<&str>> {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            if parts.len() == count { Ok(parts) } else { Err(bad()) }
        };
        let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let family = match kind {
            "fat_triangle" => {
                let a = nums(3)?;
                Family::FatTriangle { p: int(a[0])?, q: int(a[1])?, r: int(a[2])? }
            }
            "thick_ring" => {
                let a = nums(2)?;
                Family::ThickRing { length: int(a[0])?, mult: int(a[1])? }
            }
            "random" => {
                let a = nums(3)?;
                let prob = a[1].parse::<f64>().map_err(|_| bad())?;
                Family::Random { n: int(a[0])?, prob, max_mult: int(a[2])? }
            }
            "named" => Family::Named(args.to_string()),
            "file" => Family::File(PathBuf::from(args)),
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(InstanceSpec::new(s.parse()?))
    }
}

pub fn generate(spec: &InstanceSpec) -> Result<Multigraph> {
    let g = match &spec.family {
        Family::FatTriangle { p, q, r } => {
            if [p, q, r].iter().any(|&&x| x < 1) {
                return Err(Error::InvalidParameter("fat triangle multiplicities must be at least 1".into()));
            }
            let mut edges = Vec::new();
            edges.extend(std::iter::repeat_n((0, 1), *p));
            edges.extend(std::iter::repeat_n((0, 2), *q));
            edges.extend(std::iter::repeat_n((1, 2), *r));
            Multigraph::build(3, edges)?
        }
        Family::ThickRing { length, mult } => {
            if *length < 3 || length % 2 == 0 {
                return Err(Error::InvalidParameter(format!("ring length {length} must be odd and at least 3")));
            }
            if *mult < 1 {
                return Err(Error::InvalidParameter("ring multiplicity must be at least 1".into()));
            }
            let edges = (0..*length).flat_map(|i| std::iter::repeat_n((i, (i + 1) % length), *mult)).collect();
            Multigraph::build(*length, edges)?
        }
        Family::Random { n, prob, max_mult } => random_multigraph(*n, *prob, *max_mult, spec.seed)?,
        Family::Named(name) => named(name)?,
        Family::File(path) => {
            let g = Multigraph::parse(&fs::read_to_string(path)?)?;
            if g.name().is_some() {
                return Ok(g);
            }
            g
        }
    };
    Ok(g.with_name(spec.label()))
}

fn random_multigraph(n: usize, prob: f64, max_mult: usize, seed: u64) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("random instances need at least 2 vertices".into()));
    }
    if n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: crate::graph::MAX_VERTICES });
    }
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidParameter(format!("edge probability {prob} is outside [0, 1]")));
    }
    if max_mult < 1 {
        return Err(Error::InvalidParameter("maximum multiplicity must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLE_ATTEMPTS {
        let mut base = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(prob) {
                    base.push((u, v));
                }
            }
        }
        let candidate = Multigraph::build(n, base.clone())?;
        if !candidate.is_connected() {
            continue;
        }
        let mut edges = Vec::new();
        for pair in base {
            let mult = rng.gen_range(1..=max_mult);
            edges.extend(std::iter::repeat_n(pair, mult));
        }
        return Multigraph::build(n, edges);
    }
    Err(Error::SamplingFailed { attempts: SAMPLE_ATTEMPTS, seed })
}

fn named(name: &str) -> Result<Multigraph> {
    let (n, edges): (usize, Vec<(usize, usize)>) = match name {
        "k2" => (2, vec![(0, 1)]),
        "k3" => (3, vec![(0, 1), (0, 2), (1, 2)]),
        "k4" => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        "path3" => (3, vec![(0, 1), (1, 2)]),
        "star3" => (4, vec![(0, 1), (0, 2), (0, 3)]),
        "c5" => (5, (0..5).map(|i| (i, (i + 1) % 5)).collect()),
        "petersen" => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            (10, edges)
        }
        "shannon" => (3, vec![(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown named instance `{other}` (known: {})",
                NAMED.join(", ")
            )))
        }
    };
    Multigraph::build(n, edges)
}

/// Palette size used for the greedy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum KPolicy {
    /// The density `omega`.
    #[default]
    Omega,
    /// `max(Delta, omega)`.
    Fractional,
    Explicit(Color),
}

impl KPolicy {
    pub fn resolve(self, omega: usize, fractional: usize) -> Color {
        match self {
            KPolicy::Omega => omega as Color,
            KPolicy::Fractional => fractional as Color,
            KPolicy::Explicit(k) => k,
        }
    }
}

impl FromStr for KPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" => Ok(KPolicy::Omega),
            "fractional" => Ok(KPolicy::Fractional),
            other => match other.parse::<Color>() {
                Ok(k) if k >= 1 => Ok(KPolicy::Explicit(k)),
                _ => Err(Error::InvalidParameter(format!("--k expects omega, fractional or a positive integer, got `{s}`"))),
            },
        }
    }
}

impl fmt::Display for KPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KPolicy::Omega => write!(f, "omega"),
            KPolicy::Fractional => write!(f, "fractional"),
            KPolicy::Explicit(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExperimentConfig {
    pub k_policy: KPolicy,
    pub semantics: FreeVertexSemantics,
    pub tie_break: TieBreak,
    /// Lift the oracle scale guards.
    pub force: bool,
    /// Re-check every intermediate coloring with the unpruned checker.
    pub verify_prefixes: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            k_policy: KPolicy::Omega,
            semantics: FreeVertexSemantics::Verbatim,
            tie_break: TieBreak::Deterministic,
            force: false,
            verify_prefixes: true,
        }
    }
}

/// One report row.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceRow {
    pub id: usize,
    pub spec: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub max_multiplicity: usize,
    pub omega: usize,
    pub chi: usize,
    pub k: Color,
    /// `chi > Delta + 1`.
    pub applicable: bool,
    pub chi_equals_omega: bool,
    /// `max(Delta, omega) <= chi <= Delta + p`.
    pub sandwich_ok: bool,
    pub greedy_complete: bool,
    pub halt_step: Option<usize>,
    pub violation: Option<String>,
    /// Output coloring proper with colors in `1..=k`.
    pub coloring_valid: bool,
    /// Intermediate colorings the unpruned checker rejects.
    pub prefix_failures: usize,
    pub flags: Vec<&'static str>,
    pub wall_ms: u128,
}

impl InstanceRow {
    pub fn is_candidate_failure(&self) -> bool {
        self.flags.contains(&CANDIDATE_FAILURE)
    }
}

/// A row together with the objects needed to bundle or replay it.
#[derive(Clone, Debug)]
pub struct InstanceRun {
    pub spec: InstanceSpec,
    pub row: InstanceRow,
    pub graph: Multigraph,
    pub trace: RunTrace,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub instances: usize,
    pub applicable: usize,
    pub completions: usize,
    pub halts: usize,
    pub candidate_failures: usize,
    pub chi_neq_omega: usize,
    pub sandwich_failures: usize,
    pub invalid_colorings: usize,
    pub prefix_failures: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentReport {
    pub config_k: String,
    pub runs: Vec<InstanceRun>,
}

pub fn run_instance(id: usize, spec: &InstanceSpec, cfg: &ExperimentConfig) -> Result<InstanceRun> {
    let started = Instant::now();
    let g = generate(spec)?;
    g.require_connected()?;
    let stats = g.stats();
    let dens = density_with(&g, DensityOptions { force: cfg.force, ..Default::default() })?;
    let chi = chromatic_index_with(&g, cfg.force)?.chi_prime;
    let k = cfg.k_policy.resolve(dens.omega, dens.fractional_index);
    let order = reorder_with(&g, cfg.tie_break)?;
    let trace = conditional_greedy_with(&g, k, &order, GreedyOptions { semantics: cfg.semantics })?;

    let colors = trace.final_coloring.assignment();
    let coloring_valid = validate_coloring(&g, colors) && colors.iter().flatten().all(|&c| c >= 1 && c <= k);
    let prefix_failures = if cfg.verify_prefixes && g.n() <= NAIVE_MAX_VERTICES {
        let mut failures = 0;
        for phi in trace.prefixes() {
            if naive_admissible_with(&g, &phi, cfg.semantics)?.is_some() {
                failures += 1;
            }
        }
        failures
    } else {
        0
    };

    let applicable = chi > stats.max_degree + 1;
    let chi_equals_omega = chi == dens.omega;
    let sandwich_ok = dens.fractional_index <= chi && chi <= stats.max_degree + stats.max_multiplicity;
    let mut flags = Vec::new();
    if applicable && !trace.complete {
        flags.push(CANDIDATE_FAILURE);
    }
    if applicable && !chi_equals_omega {
        flags.push(DENSITY_MISMATCH);
    }
    let row = InstanceRow {
        id,
        spec: spec.to_string(),
        seed: spec.seed,
        n: g.n(),
        m: g.m(),
        max_degree: stats.max_degree,
        max_multiplicity: stats.max_multiplicity,
        omega: dens.omega,
        chi,
        k,
        applicable,
        chi_equals_omega,
        sandwich_ok,
        greedy_complete: trace.complete,
        halt_step: trace.halt_step(),
        violation: trace.halt_violation().map(|v| v.to_string()),
        coloring_valid,
        prefix_failures,
        flags,
        wall_ms: started.elapsed().as_millis(),
    };
    Ok(InstanceRun { spec: spec.clone(), row, graph: g, trace })
}

/// Runs every spec in order. Instances are independent; the report keeps spec
/// order.
pub fn run_experiment(specs: &[InstanceSpec], cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let runs = specs
        .iter()
        .enumerate()
        .map(|(id, spec)| run_instance(id, spec, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport { config_k: cfg.k_policy.to_string(), runs })
}

impl ExperimentReport {
    pub fn rows(&self) -> impl Iterator<Item = &InstanceRow> {
        self.runs.iter().map(|r| &r.row)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for row in self.rows() {
            s.instances += 1;
            s.applicable += row.applicable as usize;
            if row.greedy_complete {
                s.completions += 1;
            } else {
                s.halts += 1;
            }
            s.candidate_failures += row.is_candidate_failure() as usize;
            s.chi_neq_omega += row.flags.contains(&DENSITY_MISMATCH) as usize;
            s.sandwich_failures += !row.sandwich_ok as usize;
            s.invalid_colorings += !row.coloring_valid as usize;
            s.prefix_failures += row.prefix_failures;
        }
        s
    }

    pub fn candidate_failures(&self) -> impl Iterator<Item = &InstanceRun> {
        self.runs.iter().filter(|r| r.row.is_candidate_failure())
    }

    /// Per-instance CSV. Wall time is only written when `timing` is set, so
    /// that reports are reproducible byte for byte by default.
    pub fn write_csv<W: Write>(&self, w: W, timing: bool) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec![
            "id",
            "spec",
            "seed",
            "n",
            "m",
            "delta",
            "p",
            "omega",
            "chi",
            "k",
            "applicable",
            "chi_eq_omega",
            "sandwich_ok",
            "greedy_complete",
            "halt_step",
            "violation",
            "coloring_valid",
            "prefix_failures",
            "flags",
        ];
        if timing {
            header.push("wall_ms");
        }
        out.write_record(&header)?;
        for r in self.rows() {
            let mut rec = vec![
                r.id.to_string(),
                r.spec.clone(),
                r.seed.to_string(),
                r.n.to_string(),
                r.m.to_string(),
                r.max_degree.to_string(),
                r.max_multiplicity.to_string(),
                r.omega.to_string(),
                r.chi.to_string(),
                r.k.to_string(),
                r.applicable.to_string(),
                r.chi_equals_omega.to_string(),
                r.sandwich_ok.to_string(),
                r.greedy_complete.to_string(),
                r.halt_step.map(|s| s.to_string()).unwrap_or_default(),
                r.violation.clone().unwrap_or_default(),
                r.coloring_valid.to_string(),
                r.prefix_failures.to_string(),
                r.flags.join(";"),
            ];
            if timing {
                rec.push(r.wall_ms.to_string());
            }
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_summary_csv<W: Write>(&self, w: W) -> Result<()> {
        let s = self.summary();
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["metric", "value"])?;
        for (name, value) in [
            ("instances", s.instances),
            ("applicable", s.applicable),
            ("completions", s.completions),
            ("halts", s.halts),
            ("candidate_failures", s.candidate_failures),
            ("chi_neq_omega", s.chi_neq_omega),
            ("sandwich_failures", s.sandwich_failures),
            ("invalid_colorings", s.invalid_colorings),
            ("prefix_failures", s.prefix_failures),
        ] {
            out.write_record([name.to_string(), value.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Writes one directory per candidate failure holding the instance, its
    /// trace and a replay script. Returns the directories written.
    pub fn write_artifacts(&self, dir: &Path, cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for run in self.candidate_failures() {
            let sub = dir.join(artifact_dir_name(&run.row));
            fs::create_dir_all(&sub)?;
            fs::write(sub.join("instance.mg"), run.graph.serialize())?;
            let mut trace = Vec::new();
            run.trace.write_jsonl(&mut trace)?;
            fs::write(sub.join("trace.jsonl"), trace)?;
            fs::write(sub.join("replay.sh"), replay_script(run, cfg.semantics, cfg.tie_break))?;
            written.push(sub);
        }
        Ok(written)
    }
}

fn artifact_dir_name(row: &InstanceRow) -> String {
    let spec: String =
        row.spec.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '-' }).collect();
    format!("{:04}-{spec}-s{}", row.id, row.seed)
}

fn replay_script(run: &InstanceRun, semantics: FreeVertexSemantics, tie_break: TieBreak) -> String {
    let strict = if semantics == FreeVertexSemantics::Strict { " --strict-free-vertices" } else { "" };
    let tie = match tie_break {
        TieBreak::Deterministic => String::new(),
        TieBreak::Seeded(seed) => format!(" --shuffle-ties {seed}"),
    };
    format!(
        "#!/bin/sh\n\
         # regenerate the instance from its spec and replay the greedy run\n\
         set -e\n\
         edgecolor gen '{spec}' --seed {seed} --out regenerated.mg\n\
         cmp regenerated.mg instance.mg\n\
         edgecolor color instance.mg --k {k}{strict}{tie} --trace replayed.jsonl\n\
         cmp replayed.jsonl trace.jsonl\n",
        spec = run.row.spec,
        seed = run.row.seed,
        k = run.row.k,
    )
}

/// All `fat_triangle:p,q,r` with multiplicities in `lo..=hi`.
pub fn fat_triangle_grid(lo: usize, hi: usize) -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    for p in lo..=hi {
        for q in lo..=hi {
            for r in lo..=hi {
                out.push(InstanceSpec::new(Family::FatTriangle { p, q, r }));
            }
        }
    }
    out
}

/// `count` fat triangles with multiplicities drawn uniformly from `lo..=hi`.
pub fn fat_triangle_sample(lo: usize, hi: usize, count: usize, seed: u64) -> Vec<InstanceSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = rng.gen_range(lo..=hi);
            let q = rng.gen_range(lo..=hi);
            let r = rng.gen_range(lo..=hi);
            InstanceSpec::new(Family::FatTriangle { p, q, r }).with_seed(seed)
        })
        .collect()
}

pub fn thick_ring_grid(lengths: &[usize], lo: usize, hi: usize) -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    for &length in lengths {
        for mult in lo..=hi {
            out.push(InstanceSpec::new(Family::ThickRing { length, mult }));
        }
    }
    out
}

/// Random instances; instance `i` uses seed `seed + i`.
pub fn random_specs(n: usize, prob: f64, max_mult: usize, count: usize, seed: u64) -> Vec<InstanceSpec> {
    (0..count as u64)
        .map(|i| InstanceSpec::new(Family::Random { n, prob, max_mult }).with_seed(seed.wrapping_add(i)))
        .collect()
}

/// Fat triangles with multiplicities 2..=4 followed by thick rings of length
/// 3, 5, 7 with multiplicities 2..=4.
pub fn standard_sweep() -> Vec<InstanceSpec> {
    let mut specs = fat_triangle_grid(2, 4);
    specs.extend(thick_ring_grid(&[3, 5, 7], 2, 4));
    specs
}

/// Replays a trace's intermediate colorings through the unpruned checker and
/// returns the index of the first inadmissible one.
pub fn first_inadmissible_prefix(g: &Multigraph, trace: &RunTrace) -> Result<Option<usize>> {
    for (i, phi) in trace.prefixes().iter().enumerate() {
        if naive_admissible_with(g, phi, trace.semantics)?.is_some() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
