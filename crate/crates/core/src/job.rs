//! Serializable job descriptions and their execution.
//!
//! Exit codes: 0 success or confirmed, 1 usage or I/O error, 2 refuted,
//! 3 budget exhausted.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::evaluate_bounds;
use crate::coloring::{pentagon, EdgeColoring, TargetGraph};
use crate::constructions::{layered_lower_bound, matching_extremal, p3_forest_lower_bound, paley_coloring, rook_coloring};
use crate::corpus::{random_gallai, write_corpus};
use crate::detect::{find_mono, max_mono_star};
use crate::format::{export_dot, parse_coloring, serialize, write_atomic, DotOptions};
use crate::partition::{find_gallai_partition, GallaiPartition};
use crate::reduction::{extract_reduction, verify_reduced_condition, ReducedVerdict, ReductionOutcome};
use crate::search::{
    gallai_ramsey_number, ramsey_number, run_search, verify_value, Checkpoint, Outcome, RunOptions, SearchConfig,
    SearchError, SearchProblem, Symmetry, ValueReport, Verdict, DEFAULT_BUDGET,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitStatus {
    Success = 0,
    Usage = 1,
    Refuted = 2,
    Budget = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Generator for the `construct` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Pentagon,
    Paley { q: usize },
    Rook { side: usize },
    /// `base` is `pentagon`, `paley:<q>`, `rook:<side>`, or a coloring file.
    Layered { base: String, target: TargetGraph, k: usize },
    Matching { sizes: Vec<usize> },
    P3Forest { sizes: Vec<usize> },
    RandomGallai { n: usize, k: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Command {
    /// One target for every color, or one per color.
    Detect { input: PathBuf, targets: Vec<TargetGraph> },
    Partition { input: PathBuf },
    Reduce { input: PathBuf, target: TargetGraph, r: usize },
    Construct { construction: Construction },
    Bounds { target: TargetGraph, k: usize, r: Option<u64> },
    SearchRamsey { targets: [TargetGraph; 2], n_hint: usize },
    SearchGr { targets: Vec<TargetGraph>, n_hint: usize },
    /// One decision problem; the only command that checkpoints.
    SearchExists { n: usize, targets: Vec<TargetGraph>, gallai: bool, all_colors: bool },
    Verify { targets: Vec<TargetGraph>, claimed: usize },
    VerifyReduced { target: TargetGraph, r: usize },
    Corpus { seed: u64, count: usize },
    Dot { input: PathBuf, clusters: bool },
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: Command,
    /// File or directory the command writes to, depending on the command.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Second output for `partition`: the DOT rendering with part clusters.
    #[serde(default)]
    pub dot: Option<PathBuf>,
    #[serde(default)]
    pub force: bool,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "one")]
    pub threads: usize,
    #[serde(default)]
    pub max_n: Option<usize>,
    #[serde(default)]
    pub checkpoint: Option<PathBuf>,
    #[serde(default)]
    pub resume: Option<PathBuf>,
    #[serde(default)]
    pub no_symmetry: bool,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            output: None,
            dot: None,
            force: false,
            budget: DEFAULT_BUDGET,
            threads: 1,
            max_n: None,
            checkpoint: None,
            resume: None,
            no_symmetry: false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn search_config(&self) -> SearchConfig {
        let mut cfg = SearchConfig {
            budget: self.budget,
            threads: self.threads.max(1),
            ..SearchConfig::default()
        };
        if let Some(m) = self.max_n {
            cfg.max_n = m;
        }
        if self.no_symmetry {
            cfg.symmetry = Symmetry::off();
        }
        cfg
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobResult {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
    pub written: Vec<PathBuf>,
}

struct Run<'a> {
    cfg: &'a JobConfig,
    out: String,
    written: Vec<PathBuf>,
}

type Step = Result<ExitStatus, (ExitStatus, String)>;

fn usage<E: std::fmt::Display>(e: E) -> (ExitStatus, String) {
    (ExitStatus::Usage, e.to_string())
}

fn search_failure(e: SearchError) -> (ExitStatus, String) {
    let status = match e {
        SearchError::BudgetExceeded { .. } | SearchError::NoThreshold { .. } | SearchError::Infeasible { .. } => {
            ExitStatus::Budget
        }
        SearchError::InvalidProblem(_) | SearchError::Checkpoint(_) => ExitStatus::Usage,
    };
    (status, e.to_string())
}

pub fn load_coloring(path: &Path) -> Result<EdgeColoring, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_coloring(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn build_base(base: &str) -> Result<EdgeColoring, String> {
    if base == "pentagon" {
        return Ok(pentagon());
    }
    if let Some(q) = base.strip_prefix("paley:") {
        let q = q.parse().map_err(|_| format!("bad Paley order `{q}`"))?;
        return paley_coloring(q).map_err(|e| e.to_string());
    }
    if let Some(s) = base.strip_prefix("rook:") {
        let s = s.parse().map_err(|_| format!("bad rook side `{s}`"))?;
        return rook_coloring(s).map_err(|e| e.to_string());
    }
    load_coloring(Path::new(base))
}

pub fn build_construction(c: &Construction) -> Result<EdgeColoring, String> {
    let r = match c {
        Construction::Pentagon => Ok(pentagon()),
        Construction::Paley { q } => paley_coloring(*q),
        Construction::Rook { side } => rook_coloring(*side),
        Construction::Layered { base, target, k } => layered_lower_bound(&build_base(base)?, target, *k),
        Construction::Matching { sizes } => matching_extremal(sizes),
        Construction::P3Forest { sizes } => p3_forest_lower_bound(sizes),
        Construction::RandomGallai { n, k, seed } => {
            use rand::SeedableRng;
            if *n == 0 || *n > crate::coloring::MAX_VERTICES || *k == 0 || *k > crate::coloring::MAX_COLORS {
                return Err(format!("random Gallai coloring needs 1 <= n <= 64 and 1 <= k <= 32, got n={n}, k={k}"));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            return Ok(random_gallai(&mut rng, *n, *k));
        }
    };
    r.map_err(|e| e.to_string())
}

impl<'a> Run<'a> {
    fn write(&mut self, path: &Path, contents: &str) -> Result<(), (ExitStatus, String)> {
        write_atomic(path, contents, self.cfg.force).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        self.written.push(path.to_path_buf());
        Ok(())
    }

    /// Writes to `--output` when given, else appends to stdout.
    fn emit(&mut self, contents: &str) -> Result<(), (ExitStatus, String)> {
        match self.cfg.output.clone() {
            Some(p) => self.write(&p, contents),
            None => {
                self.out.push_str(contents);
                Ok(())
            }
        }
    }

    fn output_dir(&self) -> Result<Option<PathBuf>, (ExitStatus, String)> {
        if let Some(d) = &self.cfg.output {
            std::fs::create_dir_all(d).map_err(|e| usage(format!("{}: {e}", d.display())))?;
        }
        Ok(self.cfg.output.clone())
    }

    fn value_report(&mut self, label: &str, r: &ValueReport) -> Step {
        let _ = writeln!(self.out, "{label} = {}", r.value);
        if let Some(l) = &r.lower {
            let _ = writeln!(self.out, "lower: WITNESS at n = {} ({} nodes)", l.problem.n, l.stats.nodes);
        }
        let _ = writeln!(
            self.out,
            "upper: EXHAUSTED at n = {} ({} nodes)",
            r.upper.problem.n, r.upper.stats.nodes
        );
        if let Some(dir) = self.output_dir()? {
            if let Some(l) = &r.lower {
                self.write(&dir.join("lower.json"), &l.to_json())?;
            }
            self.write(&dir.join("upper.json"), &r.upper.to_json())?;
        }
        Ok(ExitStatus::Success)
    }

    fn dispatch(&mut self) -> Step {
        let cfg = self.cfg;
        match &cfg.command {
            Command::Detect { input, targets } => {
                let c = load_coloring(input).map_err(usage)?;
                let per_color: Vec<TargetGraph> = match targets.len() {
                    1 => vec![targets[0]; c.k()],
                    n if n == c.k() => targets.clone(),
                    n => return Err(usage(format!("{n} targets for a {}-color palette", c.k()))),
                };
                let _ = writeln!(self.out, "n = {}, k = {}", c.n(), c.k());
                match c.find_rainbow_triangle() {
                    Some(t) => {
                        let _ = writeln!(self.out, "rainbow triangle {t:?}");
                    }
                    None => self.out.push_str("gallai: yes\n"),
                }
                let star = max_mono_star(&c);
                let _ = writeln!(
                    self.out,
                    "largest mono star: center {} color {} with {} leaves",
                    star.center, star.color, star.leaves
                );
                for (i, t) in per_color.iter().enumerate() {
                    match find_mono(&c, i as u8, t).map_err(usage)? {
                        Some(w) => {
                            w.validate(&c).map_err(usage)?;
                            let _ = writeln!(self.out, "color {i}: {t} PRESENT {:?}", w.embedding);
                        }
                        None => {
                            let _ = writeln!(self.out, "color {i}: {t} ABSENT");
                        }
                    }
                }
                Ok(ExitStatus::Success)
            }
            Command::Partition { input } => {
                let c = load_coloring(input).map_err(usage)?;
                let p = find_gallai_partition(&c).map_err(usage)?;
                let mut text = format!("reduced colors {:?}\n", p.reduced_colors);
                for (i, part) in p.parts.iter().enumerate() {
                    let _ = writeln!(text, "part {i}: {part:?}");
                }
                self.emit(&text)?;
                if let Some(dot) = cfg.dot.clone() {
                    self.write_dot(&c, Some(&p), &dot)?;
                }
                Ok(ExitStatus::Success)
            }
            Command::Reduce { input, target, r } => {
                let c = load_coloring(input).map_err(usage)?;
                match extract_reduction(&c, target, *r).map_err(usage)? {
                    ReductionOutcome::MonoWitness(w) => {
                        let _ = writeln!(self.out, "monochromatic {} in color {}: {:?}", w.target, w.color, w.embedding);
                    }
                    ReductionOutcome::Reduced(red) => {
                        let _ = writeln!(
                            self.out,
                            "T = {:?}\nreturned = {:?}\npair colors = {:?}\n|G'| = {} (floor {})\nparts = {:?}",
                            red.t_set,
                            red.returned,
                            red.pair_colors,
                            red.g_prime.n(),
                            red.size_floor,
                            red.partition.parts
                        );
                        if let Some(p) = cfg.output.clone() {
                            self.write(&p, &serialize(&red.g_prime))?;
                        }
                    }
                }
                Ok(ExitStatus::Success)
            }
            Command::Construct { construction } => {
                let c = build_construction(construction).map_err(usage)?;
                self.emit(&serialize(&c))?;
                Ok(ExitStatus::Success)
            }
            Command::Bounds { target, k, r } => {
                let report = evaluate_bounds(target, *k, *r).map_err(usage)?;
                self.emit(&report.to_text())?;
                Ok(ExitStatus::Success)
            }
            Command::SearchRamsey { targets, n_hint } => {
                let r = ramsey_number(*targets, *n_hint, &cfg.search_config()).map_err(search_failure)?;
                self.value_report(&format!("R({}, {})", targets[0], targets[1]), &r)
            }
            Command::SearchGr { targets, n_hint } => {
                let r = gallai_ramsey_number(targets, *n_hint, &cfg.search_config()).map_err(search_failure)?;
                let names: Vec<String> = targets.iter().map(|t| t.to_string()).collect();
                self.value_report(&format!("gr_{}(K3 : {})", targets.len(), names.join(", ")), &r)
            }
            Command::SearchExists {
                n,
                targets,
                gallai,
                all_colors,
            } => {
                let sc = cfg.search_config();
                let p = SearchProblem {
                    n: *n,
                    k: targets.len(),
                    targets: targets.clone(),
                    gallai: *gallai,
                    require_all_colors: *all_colors,
                    budget: sc.budget,
                    symmetry: sc.symmetry.clone(),
                    blow_up: None,
                };
                let resume = match &cfg.resume {
                    Some(path) => Some(Checkpoint::load(path).map_err(search_failure)?),
                    None => None,
                };
                let opts = RunOptions {
                    threads: sc.threads,
                    checkpoint: cfg.checkpoint.clone(),
                    resume,
                    ..RunOptions::default()
                };
                let cert = run_search(&p, &opts).map_err(search_failure)?;
                let _ = writeln!(
                    self.out,
                    "{:?} at n = {} ({} nodes, {} ms)",
                    cert.outcome, cert.problem.n, cert.stats.nodes, cert.stats.wall_ms
                );
                if let Some(cp) = &cfg.checkpoint {
                    if cert.outcome == Outcome::BudgetExceeded {
                        let _ = writeln!(self.out, "checkpoint written to {}", cp.display());
                    }
                }
                if let Some(p) = cfg.output.clone() {
                    self.write(&p, &cert.to_json())?;
                }
                Ok(match cert.outcome {
                    Outcome::BudgetExceeded => ExitStatus::Budget,
                    _ => ExitStatus::Success,
                })
            }
            Command::Verify { targets, claimed } => {
                let v = verify_value(targets, *claimed, &cfg.search_config()).map_err(search_failure)?;
                let _ = writeln!(self.out, "claimed {}: {:?}", v.claimed, v.verdict);
                let seed = v.lower.seed.clone().unwrap_or_else(|| "search".to_string());
                let _ = writeln!(self.out, "lower: {:?} at n = {} ({seed})", v.lower.outcome, v.lower.problem.n);
                if let Some(u) = &v.upper {
                    let _ = writeln!(self.out, "upper: {:?} at n = {} ({} nodes)", u.outcome, u.problem.n, u.stats.nodes);
                }
                if let Some(dir) = self.output_dir()? {
                    self.write(&dir.join("lower.json"), &v.lower.to_json())?;
                    if let Some(u) = &v.upper {
                        self.write(&dir.join("upper.json"), &u.to_json())?;
                    }
                }
                Ok(match v.verdict {
                    Verdict::Confirmed => ExitStatus::Success,
                    Verdict::TooHigh | Verdict::TooLow => ExitStatus::Refuted,
                    Verdict::BudgetExceeded => ExitStatus::Budget,
                })
            }
            Command::VerifyReduced { target, r } => {
                let cert = verify_reduced_condition(target, *r, &cfg.search_config()).map_err(search_failure)?;
                let _ = writeln!(
                    self.out,
                    "{target} at R = {r}, parts <= {}: {:?} ({} multisets, {} nodes)",
                    cert.cap,
                    cert.verdict,
                    cert.runs.len(),
                    cert.stats.nodes
                );
                if let Some(c) = &cert.counterexample {
                    self.out.push_str(&serialize(c));
                }
                if let Some(p) = cfg.output.clone() {
                    let json = serde_json::to_string_pretty(&cert).map_err(usage)?;
                    self.write(&p, &json)?;
                }
                Ok(match cert.verdict {
                    ReducedVerdict::Pass => ExitStatus::Success,
                    ReducedVerdict::Counterexample => ExitStatus::Refuted,
                    ReducedVerdict::BudgetExceeded => ExitStatus::Budget,
                })
            }
            Command::Corpus { seed, count } => {
                let dir = cfg.output.clone().ok_or_else(|| usage("corpus needs an output directory"))?;
                let m = write_corpus(&dir, *seed, *count, cfg.force).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
                let _ = writeln!(self.out, "wrote {} colorings to {}", m.files.len(), dir.display());
                self.written.extend(m.files.iter().map(|f| dir.join(f)));
                Ok(ExitStatus::Success)
            }
            Command::Dot { input, clusters } => {
                let c = load_coloring(input).map_err(usage)?;
                let p = if *clusters { Some(find_gallai_partition(&c).map_err(usage)?) } else { None };
                let text = dot_text(&c, p.as_ref()).map_err(usage)?;
                self.emit(&text)?;
                Ok(ExitStatus::Success)
            }
        }
    }

    fn write_dot(&mut self, c: &EdgeColoring, p: Option<&GallaiPartition>, path: &Path) -> Result<(), (ExitStatus, String)> {
        let text = dot_text(c, p).map_err(usage)?;
        self.write(path, &text)
    }
}

fn dot_text(c: &EdgeColoring, p: Option<&GallaiPartition>) -> Result<String, crate::format::FormatError> {
    export_dot(
        c,
        &DotOptions {
            numeric_fallback: true,
            clusters: p.map(|p| p.parts.clone()),
        },
    )
}

/// Runs a job. Never overwrites an existing file unless `force` is set.
pub fn run_job(cfg: &JobConfig) -> JobResult {
    let mut run = Run {
        cfg,
        out: String::new(),
        written: Vec::new(),
    };
    let (status, stderr) = match run.dispatch() {
        Ok(s) => (s, String::new()),
        Err((s, msg)) => (s, format!("error: {msg}\n")),
    };
    JobResult {
        status,
        stdout: run.out,
        stderr,
        written: run.written,
    }
}
