use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use umhs::eval::sweep;
use umhs::experiment::{self, DataSource, ExperimentConfig, Method};
use umhs::generators::{self, SbmParams, TreeFamilyParams};
use umhs::io::{self as uio, LabelMap};
use umhs::oracle::{self, KernelOutcome, OracleLimits};
use umhs::recovery::DEFAULT_ITERATIONS;

#[derive(Parser)]
#[command(name = "umhs", version, about = "Planted hitting set recovery in hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run recovery methods on a dataset and score them against its core.
    Recover(RecoverArgs),
    /// Write a synthetic hypergraph and its core.
    Generate {
        #[command(subcommand)]
        model: GenerateModel,
    },
    /// Exact quantities for small inputs: k*, alpha, U(k), kernelization.
    Oracle(OracleArgs),
    /// UMHS union size and core recovery per iteration.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

impl Output {
    fn open(&self) -> Result<Box<dyn Write>> {
        let Format::Csv = self.format;
        Ok(match &self.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Args)]
struct RecoverArgs {
    /// Hyperedge list, one edge per line.
    #[arg(long, required_unless_present = "sbm", requires = "core")]
    input: Option<PathBuf>,
    /// Core node list, one token per line.
    #[arg(long)]
    core: Option<PathBuf>,
    /// Generate the dataset instead: CORE,FRINGE,R,P,Q (uses --seed).
    #[arg(long, conflicts_with = "input")]
    sbm: Option<String>,
    /// Evaluate on these uniform slices (repeatable or comma separated).
    #[arg(long, value_delimiter = ',')]
    r: Vec<usize>,
    /// Methods to run (comma separated); all when omitted.
    #[arg(long, value_delimiter = ',')]
    methods: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drop edges the core misses instead of failing.
    #[arg(long)]
    allow_unhit: bool,
    /// Dataset id in the output; defaults to the input file stem.
    #[arg(long)]
    dataset: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum GenerateModel {
    /// Core-fringe block model.
    Sbm {
        #[arg(long)]
        core_size: usize,
        #[arg(long)]
        fringe_size: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hypergraph file to write.
        #[arg(long)]
        output: PathBuf,
        /// Core file; defaults to the output path with ".core" appended.
        #[arg(long)]
        core: Option<PathBuf>,
    },
    /// Disjoint complete b-ary trees with r levels, edges are root-to-leaf
    /// paths; the core is a random consistent-labeling hitting set.
    Tree {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        core: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    /// Optional core; reports the membership checks when given.
    #[arg(long)]
    core: Option<PathBuf>,
    /// Size bound for U(k) and kernelization; defaults to k*.
    #[arg(long)]
    k: Option<usize>,
    /// Also run sunflower kernelization for k.
    #[arg(long)]
    kernelize: bool,
    #[arg(long, default_value_t = OracleLimits::default().max_nodes)]
    limits_max_nodes: usize,
    #[arg(long, default_value_t = OracleLimits::default().max_k)]
    limits_max_k: usize,
    /// Wall-clock budget per exact computation, in seconds.
    #[arg(long, default_value_t = OracleLimits::default().time_budget.as_secs_f64())]
    time_budget: f64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    core: PathBuf,
    /// Restrict to the r-uniform slice.
    #[arg(long)]
    r: Option<usize>,
    /// Largest iteration count.
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    allow_unhit: bool,
    #[command(flatten)]
    out: Output,
}

fn parse_sbm(spec: &str, seed: u64) -> Result<SbmParams> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [c, f, r, p, q] = parts[..] else {
        bail!("--sbm expects CORE,FRINGE,R,P,Q (got {spec:?})");
    };
    Ok(SbmParams {
        core_size: c.parse().context("core size")?,
        fringe_size: f.parse().context("fringe size")?,
        r: r.parse().context("r")?,
        p: p.parse().context("p")?,
        q: q.parse().context("q")?,
        seed,
    })
}

fn recover(args: RecoverArgs) -> Result<()> {
    let source = match (&args.input, &args.sbm) {
        (Some(input), _) => DataSource::Files {
            input: input.clone(),
            core: args.core.clone().context("--input needs --core")?,
        },
        (None, Some(spec)) => DataSource::Sbm(parse_sbm(spec, args.seed)?),
        (None, None) => bail!("give --input and --core, or --sbm"),
    };
    let mut cfg = ExperimentConfig::new(source);
    cfg.dataset = args.dataset;
    cfg.r = args.r;
    if !args.methods.is_empty() {
        let mut methods = args.methods.iter().map(|m| m.parse()).collect::<Result<Vec<Method>, _>>()?;
        methods.sort_unstable();
        methods.dedup();
        cfg.methods = methods;
    }
    cfg.iterations = args.iterations;
    cfg.seed = args.seed;
    cfg.allow_unhit = args.allow_unhit;
    let out = experiment::run_experiment(&cfg)?;
    let mut w = args.out.open()?;
    experiment::write_results(&out, &mut w)?;
    w.flush()?;
    Ok(())
}

fn default_core_path(output: &Path, core: Option<PathBuf>) -> PathBuf {
    core.unwrap_or_else(|| {
        let mut s = output.as_os_str().to_owned();
        s.push(".core");
        PathBuf::from(s)
    })
}

fn generate(model: GenerateModel) -> Result<()> {
    match model {
        GenerateModel::Sbm { core_size, fringe_size, r, p, q, seed, output, core } => {
            let params = SbmParams { core_size, fringe_size, r, p, q, seed };
            let lg = generators::sbm_hypergraph(&params)?;
            let labels = LabelMap::numeric(lg.graph().node_count());
            let core_path = default_core_path(&output, core);
            uio::write_hypergraph(&output, lg.graph(), &labels)?;
            uio::write_core(&core_path, lg.core(), &labels)?;
            eprintln!(
                "wrote {} edges to {} and core to {}",
                lg.graph().edge_count(),
                output.display(),
                core_path.display()
            );
        }
        GenerateModel::Tree { b, r, seed, output, core } => {
            let params = TreeFamilyParams { b, r };
            let family = generators::tree_family(params)?;
            let set = generators::consistent_labeling_hitting_set(params, seed)?;
            let labels = LabelMap::numeric(family.graph.node_count());
            let core_path = default_core_path(&output, core);
            uio::write_hypergraph(&output, &family.graph, &labels)?;
            uio::write_core(&core_path, &set, &labels)?;
            eprintln!(
                "wrote {} edges (k = {}) to {} and core to {}",
                family.graph.edge_count(),
                family.k,
                output.display(),
                core_path.display()
            );
        }
    }
    Ok(())
}

fn join_labels(nodes: impl Iterator<Item = usize>, labels: &LabelMap) -> String {
    nodes.map(|v| labels.label(v).to_string()).collect::<Vec<_>>().join(" ")
}

fn run_oracle(args: OracleArgs) -> Result<()> {
    if !args.time_budget.is_finite() || args.time_budget <= 0.0 {
        bail!("--time-budget must be positive");
    }
    let limits = OracleLimits {
        max_nodes: args.limits_max_nodes,
        max_k: args.limits_max_k,
        time_budget: Duration::from_secs_f64(args.time_budget),
    };
    limits.validate()?;
    let (g, labels) = uio::read_hypergraph(&args.input)?;
    let min = oracle::min_hitting_set(&g, &limits)?;
    let k_star = min.len();
    let k = args.k.unwrap_or(k_star);

    let mut rows: Vec<(String, String)> = vec![
        ("nodes".into(), g.node_count().to_string()),
        ("edges".into(), g.edge_count().to_string()),
        ("rank".into(), g.rank().to_string()),
        ("k_star".into(), k_star.to_string()),
        ("min_hitting_set".into(), join_labels(min.iter(), &labels)),
        ("alpha".into(), oracle::independence_number(&g, &limits)?.to_string()),
        ("k".into(), k.to_string()),
    ];
    let sets = oracle::enumerate_minimal_hitting_sets(&g, k, &limits)?;
    let mut union = umhs::HittingSet::new();
    for s in &sets {
        union.union_with(s);
    }
    rows.push(("minimal_hitting_sets".into(), sets.len().to_string()));
    rows.push(("union_size".into(), union.len().to_string()));
    rows.push(("union".into(), join_labels(union.iter(), &labels)));

    if args.kernelize {
        let rep = oracle::kernelize(&g, k, &limits)?;
        rows.push(("kernel_threshold".into(), rep.threshold.to_string()));
        rows.push(("kernel_phases".into(), rep.phases.to_string()));
        rows.push(("kernel_edges".into(), rep.kernel.edge_count().to_string()));
        let outcome = match rep.outcome {
            KernelOutcome::Complete => "complete",
            KernelOutcome::NoSmallHittingSet => "no-hitting-set-of-size-k",
            KernelOutcome::Incomplete => "incomplete",
        };
        rows.push(("kernel_outcome".into(), outcome.into()));
    }

    if let Some(core_path) = &args.core {
        let (core, _) = uio::read_core(core_path, &labels)?;
        let lg = umhs::LabeledHypergraph::new(g.clone(), core)?;
        let rep = oracle::check_membership_lemmas(&lg, &limits)?;
        rows.push(("core_size".into(), lg.core().len().to_string()));
        rows.push(("core_outside_adjacent".into(), join_labels(rep.outside.iter().copied(), &labels)));
        rows.push(("core_interior".into(), join_labels(rep.interior.iter().copied(), &labels)));
        rows.push((
            "core_interior_adjacent".into(),
            join_labels(rep.interior_adjacent.iter().copied(), &labels),
        ));
        rows.push(("membership_violations".into(), join_labels(rep.violations.iter().copied(), &labels)));
    }

    let mut w = args.out.open()?;
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut w);
    csv.write_record(["quantity", "value"])?;
    for (q, v) in rows {
        csv.write_record([q, v])?;
    }
    csv.flush()?;
    drop(csv);
    w.flush()?;
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<()> {
    let mut cfg =
        ExperimentConfig::new(DataSource::Files { input: args.input.clone(), core: args.core.clone() });
    cfg.allow_unhit = args.allow_unhit;
    let (lg, _, _) = experiment::load(&cfg)?;
    let s = experiment::slice(&lg, args.r);
    if s.core.is_empty() {
        bail!("the selected slice has no edges");
    }
    let records = sweep(&s.graph, &s.core, args.iterations, args.seed);
    let metadata = vec![
        ("umhs-version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("input".into(), args.input.display().to_string()),
        ("r".into(), args.r.map_or("all".into(), |r| r.to_string())),
        ("seed".into(), args.seed.to_string()),
        ("core-size".into(), s.core.len().to_string()),
    ];
    let mut w = args.out.open()?;
    experiment::write_sweep(&records, &metadata, &mut w)?;
    w.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Recover(args) => recover(args),
        Command::Generate { model } => generate(model),
        Command::Oracle(args) => run_oracle(args),
        Command::Sweep(args) => run_sweep(args),
    }
}
