use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gallai_core::job::{run_job, Command, Construction, JobConfig};
use gallai_core::search::DEFAULT_BUDGET;
use gallai_core::TargetGraph;

/// Gallai colorings, monochromatic bipartite targets and small
/// Gallai-Ramsey numbers.
///
/// Exit codes: 0 success or confirmed, 1 usage or I/O error, 2 refuted,
/// 3 budget exhausted.
#[derive(Parser)]
#[command(name = "gallai", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    /// Write a seeded corpus of colorings to this directory and exit.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Args)]
struct Global {
    /// Search node budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Largest order a value scan may try.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    force: bool,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    #[arg(long, global = true)]
    resume: Option<PathBuf>,
    /// Disable vertex and color symmetry breaking.
    #[arg(long, global = true)]
    no_symmetry: bool,
    /// Print the job as JSON instead of running it.
    #[arg(long, global = true)]
    emit_job: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report rainbow triangles, the largest mono star and each color's target.
    Detect {
        input: PathBuf,
        /// One target for all colors, or one per color (`K3,3`, `C4`, `2P3`, ..).
        #[arg(short, long = "target", required = true)]
        targets: Vec<TargetGraph>,
    },
    /// Find a Gallai partition.
    Partition {
        input: PathBuf,
        /// Also write a DOT rendering with one cluster per part.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Extract the reduced 3-colored blow-up; `--output` receives it.
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        target: TargetGraph,
        #[arg(long)]
        r: usize,
    },
    /// Build a known coloring.
    Construct {
        #[command(subcommand)]
        kind: ConstructCmd,
    },
    /// Closed-form bounds on gr_k(K3 : H).
    Bounds {
        #[arg(short, long)]
        target: TargetGraph,
        #[arg(short, long)]
        k: usize,
        /// Value of R(H, H) when it is not built in.
        #[arg(long)]
        r: Option<u64>,
    },
    /// Exhaustive search.
    Search {
        #[command(subcommand)]
        kind: SearchCmd,
    },
    /// Confirm or refute a claimed gr_k value.
    Verify {
        #[command(flatten)]
        targets: Targets,
        #[arg(long)]
        claimed: usize,
    },
    /// Check the reduced 3-colored family at order R.
    VerifyReduced {
        #[arg(short, long)]
        target: TargetGraph,
        #[arg(long)]
        r: usize,
    },
    /// Write a seeded corpus to `--output`.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Render a coloring as DOT.
    Dot {
        input: PathBuf,
        /// Group vertices by a Gallai partition.
        #[arg(long)]
        clusters: bool,
    },
    /// Run a saved job file.
    Job { file: PathBuf },
}

#[derive(Args)]
struct Targets {
    /// One target per color, or a single target with `--k`.
    #[arg(short, long = "target", required = true)]
    targets: Vec<TargetGraph>,
    #[arg(short, long)]
    k: Option<usize>,
}

impl Targets {
    fn expand(self) -> Result<Vec<TargetGraph>, String> {
        match (self.targets.len(), self.k) {
            (1, Some(k)) => Ok(vec![self.targets[0]; k]),
            (n, Some(k)) if n != k => Err(format!("{n} targets given with --k {k}")),
            _ => Ok(self.targets),
        }
    }
}

#[derive(Subcommand)]
enum ConstructCmd {
    Pentagon,
    Paley {
        q: usize,
    },
    Rook {
        side: usize,
    },
    /// Base plus `s(H) - 1` apex vertices per extra color.
    Layered {
        /// `pentagon`, `paley:<q>`, `rook:<side>` or a coloring file.
        #[arg(long)]
        base: String,
        #[arg(short, long)]
        target: TargetGraph,
        #[arg(short, long)]
        k: usize,
    },
    Matching {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    P3Forest {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    RandomGallai {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Two-color Ramsey number R(H1, H2).
    Ramsey {
        #[arg(short, long = "target", required = true, num_args = 1..=2)]
        targets: Vec<TargetGraph>,
        #[arg(long, default_value_t = 0)]
        n_hint: usize,
    },
    /// Gallai-Ramsey number gr_k(K3 : H1, .., Hk).
    Gr {
        #[command(flatten)]
        targets: Targets,
        #[arg(long, default_value_t = 0)]
        n_hint: usize,
    },
    /// Does some coloring of K_n avoid every target? Supports checkpoints.
    Exists {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        targets: Targets,
        /// Forbid rainbow triangles.
        #[arg(long)]
        gallai: bool,
        /// Require every color to be used.
        #[arg(long)]
        all_colors: bool,
    },
}

fn to_command(cmd: Cmd) -> Result<Command, String> {
    Ok(match cmd {
        Cmd::Detect { input, targets } => Command::Detect { input, targets },
        Cmd::Partition { input, .. } => Command::Partition { input },
        Cmd::Reduce { input, target, r } => Command::Reduce { input, target, r },
        Cmd::Construct { kind } => Command::Construct {
            construction: match kind {
                ConstructCmd::Pentagon => Construction::Pentagon,
                ConstructCmd::Paley { q } => Construction::Paley { q },
                ConstructCmd::Rook { side } => Construction::Rook { side },
                ConstructCmd::Layered { base, target, k } => Construction::Layered { base, target, k },
                ConstructCmd::Matching { sizes } => Construction::Matching { sizes },
                ConstructCmd::P3Forest { sizes } => Construction::P3Forest { sizes },
                ConstructCmd::RandomGallai { n, k, seed } => Construction::RandomGallai { n, k, seed },
            },
        },
        Cmd::Bounds { target, k, r } => Command::Bounds { target, k, r },
        Cmd::Search { kind } => match kind {
            SearchCmd::Ramsey { targets, n_hint } => Command::SearchRamsey {
                targets: [targets[0], *targets.last().expect("at least one target")],
                n_hint,
            },
            SearchCmd::Gr { targets, n_hint } => Command::SearchGr {
                targets: targets.expand()?,
                n_hint,
            },
            SearchCmd::Exists {
                n,
                targets,
                gallai,
                all_colors,
            } => Command::SearchExists {
                n,
                targets: targets.expand()?,
                gallai,
                all_colors,
            },
        },
        Cmd::Verify { targets, claimed } => Command::Verify {
            targets: targets.expand()?,
            claimed,
        },
        Cmd::VerifyReduced { target, r } => Command::VerifyReduced { target, r },
        Cmd::Corpus { seed, count } => Command::Corpus { seed, count },
        Cmd::Dot { input, clusters } => Command::Dot { input, clusters },
        Cmd::Job { .. } => unreachable!("handled before conversion"),
    })
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let g = cli.global;
    let mut job = match (cli.command, cli.corpus) {
        (Some(Cmd::Job { file }), _) => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            };
            match JobConfig::from_json(&text) {
                Ok(j) => j,
                Err(e) => return fail(format!("{}: {e}", file.display())),
            }
        }
        (Some(cmd), _) => {
            let dot = match &cmd {
                Cmd::Partition { dot, .. } => dot.clone(),
                _ => None,
            };
            let mut job = match to_command(cmd) {
                Ok(c) => JobConfig::new(c),
                Err(e) => return fail(e),
            };
            job.dot = dot;
            job.output = g.output.clone();
            job
        }
        (None, Some(dir)) => {
            let mut job = JobConfig::new(Command::Corpus { seed: 0, count: 200 });
            job.output = Some(dir);
            job
        }
        (None, None) => return fail("no command given (see --help)"),
    };
    // flags given on the command line override a job file
    if g.budget != DEFAULT_BUDGET {
        job.budget = g.budget;
    }
    if g.threads != 1 {
        job.threads = g.threads;
    }
    job.max_n = g.max_n.or(job.max_n);
    job.force |= g.force;
    job.no_symmetry |= g.no_symmetry;
    job.checkpoint = g.checkpoint.or(job.checkpoint);
    job.resume = g.resume.or(job.resume);
    if g.output.is_some() {
        job.output = g.output;
    }
    if g.emit_job {
        println!("{}", job.to_json());
        return ExitCode::SUCCESS;
    }
    let res = run_job(&job);
    print!("{}", res.stdout);
    eprint!("{}", res.stderr);
    ExitCode::from(res.status.code() as u8)
}
