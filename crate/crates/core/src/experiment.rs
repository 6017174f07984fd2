//! The evaluation harness: load or generate a labeled hypergraph, run the
//! selected methods on each uniform slice, score them and emit CSV.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::baselines::{self, CentralityResult, IterationParams};
use crate::error::{Error, Result};
use crate::eval::{auprc, precision_at_core_size};
use crate::generators::{sbm_hypergraph, SbmParams};
use crate::hypergraph::{HittingSet, Hypergraph, LabeledHypergraph};
use crate::io;
use crate::ranking::Ranking;
use crate::recovery::{rank_nodes, umhs_parallel, UmhsConfig, DEFAULT_ITERATIONS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Umhs,
    Degree,
    CliqueEigen,
    ZEigen,
    HEigen,
    BorgattiEverett,
    KCore,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Umhs,
        Method::Degree,
        Method::CliqueEigen,
        Method::ZEigen,
        Method::HEigen,
        Method::BorgattiEverett,
        Method::KCore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Umhs => "umhs",
            Method::Degree => "degree",
            Method::CliqueEigen => "clique-eigen",
            Method::ZEigen => "z-eigen",
            Method::HEigen => "h-eigen",
            Method::BorgattiEverett => "borgatti-everett",
            Method::KCore => "k-core",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
            Error::InvalidParameter(format!("unknown method {s:?} (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DataSource {
    Files { input: PathBuf, core: PathBuf },
    Sbm(SbmParams),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub source: DataSource,
    /// Dataset id for the output; derived from the source when `None`.
    pub dataset: Option<String>,
    /// Uniform slices to evaluate; empty means the whole hypergraph.
    pub r: Vec<usize>,
    pub methods: Vec<Method>,
    pub iterations: usize,
    pub seed: u64,
    /// Drop edges the core misses instead of failing.
    pub allow_unhit: bool,
    pub iteration_params: IterationParams,
}

impl ExperimentConfig {
    pub fn new(source: DataSource) -> Self {
        Self {
            source,
            dataset: None,
            r: Vec::new(),
            methods: Method::ALL.to_vec(),
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
            allow_unhit: false,
            iteration_params: IterationParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("select at least one method".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("UMHS needs at least one iteration".into()));
        }
        if let Some(&r) = self.r.iter().find(|&&r| r < 2) {
            return Err(Error::InvalidParameter(format!("uniformity filter r = {r} is below 2")));
        }
        self.iteration_params.validate()
    }

    fn dataset_id(&self) -> String {
        if let Some(d) = &self.dataset {
            return d.clone();
        }
        match &self.source {
            DataSource::Files { input, .. } => input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| input.display().to_string()),
            DataSource::Sbm(p) => format!("sbm-c{}-f{}-r{}-s{}", p.core_size, p.fringe_size, p.r, p.seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    /// `None` for the whole hypergraph.
    pub r: Option<usize>,
    pub method: Method,
    pub precision_at_core: f64,
    pub auprc: f64,
    /// UMHS: size of the recovered union. Baselines: number of ranked nodes.
    pub output_size: usize,
    pub wall_time: Duration,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub rows: Vec<ResultRow>,
    /// `key: value` pairs emitted as `#` lines before the CSV header.
    pub metadata: Vec<(String, String)>,
}

/// Loads the labeled hypergraph named by the config. Returns the number of
/// edges dropped under `allow_unhit`.
pub fn load(cfg: &ExperimentConfig) -> Result<(LabeledHypergraph, usize, Vec<String>)> {
    match &cfg.source {
        DataSource::Sbm(p) => Ok((sbm_hypergraph(p)?, 0, Vec::new())),
        DataSource::Files { input, core } => {
            let (g, labels) = io::read_hypergraph(input)?;
            let (c, unknown) = io::read_core(core, &labels)?;
            if cfg.allow_unhit {
                let (lg, dropped) = LabeledHypergraph::dropping_unhit(g, c)?;
                if dropped > 0 {
                    log::warn!("dropped {dropped} edge(s) not hit by the core");
                }
                Ok((lg, dropped, unknown))
            } else {
                Ok((LabeledHypergraph::new(g, c)?, 0, unknown))
            }
        }
    }
}

/// A slice of the dataset that methods are evaluated on.
pub struct Slice {
    pub r: Option<usize>,
    pub graph: Hypergraph,
    pub core: HittingSet,
}

/// The whole hypergraph, or its `r`-uniform sub-hypergraph on the nodes it
/// touches with the core restricted accordingly.
pub fn slice(lg: &LabeledHypergraph, r: Option<usize>) -> Slice {
    match r {
        None => Slice { r, graph: lg.graph().clone(), core: lg.core().clone() },
        Some(r) => {
            let (graph, old_of_new) = lg.graph().uniform_subhypergraph(r);
            let core = old_of_new
                .iter()
                .enumerate()
                .filter(|&(_, &old)| lg.core().contains(old))
                .map(|(new, _)| new)
                .collect();
            Slice { r: Some(r), graph, core }
        }
    }
}

/// Runs one method on a slice: its ranking and the method's output size.
pub fn run_method(
    method: Method,
    g: &Hypergraph,
    iterations: usize,
    seed: u64,
    it: &IterationParams,
) -> Result<(Ranking, usize, bool)> {
    let centrality = |res: CentralityResult| {
        let n = res.ranking.len();
        (res.ranking, n, res.converged)
    };
    Ok(match method {
        Method::Umhs => {
            let result = umhs_parallel(g, &UmhsConfig::new(iterations, seed), None);
            (rank_nodes(g, &result.union_set), result.union_set.len(), true)
        }
        Method::Degree => centrality(baselines::degree_result(g)),
        Method::CliqueEigen => centrality(baselines::clique_eigen_ranking(g, it)?),
        Method::ZEigen => centrality(baselines::z_eigen_ranking(g, it)?),
        Method::HEigen => centrality(baselines::h_eigen_ranking(g, it)?),
        Method::BorgattiEverett => centrality(baselines::borgatti_everett_ranking(g, it)?),
        Method::KCore => centrality(baselines::kcore_result(g)),
    })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    let dataset = cfg.dataset_id();
    let (lg, dropped, unknown) = load(cfg)?;

    let mut metadata: Vec<(String, String)> = vec![
        ("umhs-version".into(), env!("CARGO_PKG_VERSION").into()),
        ("dataset".into(), dataset.clone()),
        ("seed".into(), cfg.seed.to_string()),
        ("umhs-iterations".into(), cfg.iterations.to_string()),
        ("methods".into(), cfg.methods.iter().map(|m| m.name()).collect::<Vec<_>>().join(" ")),
        ("nodes".into(), lg.graph().node_count().to_string()),
        ("edges".into(), lg.graph().edge_count().to_string()),
        ("core-size".into(), lg.core().len().to_string()),
        ("auprc".into(), "average precision".into()),
        ("borgatti-everett".into(), "continuous".into()),
        (
            "iteration-params".into(),
            format!(
                "tolerance={} max_iters={}",
                cfg.iteration_params.tolerance, cfg.iteration_params.max_iters
            ),
        ),
    ];
    if let DataSource::Sbm(p) = &cfg.source {
        metadata.push((
            "sbm".into(),
            format!(
                "core={} fringe={} r={} p={} q={} seed={}",
                p.core_size, p.fringe_size, p.r, p.p, p.q, p.seed
            ),
        ));
    }
    if cfg.allow_unhit {
        metadata.push(("dropped-unhit-edges".into(), dropped.to_string()));
    }
    if !unknown.is_empty() {
        metadata.push(("unknown-core-tokens".into(), unknown.join(" ")));
    }

    let mut slices = Vec::new();
    let targets: Vec<Option<usize>> =
        if cfg.r.is_empty() { vec![None] } else { cfg.r.iter().map(|&r| Some(r)).collect() };
    for r in targets {
        let s = slice(&lg, r);
        if s.core.is_empty() {
            let r = r.map_or("all".into(), |r| r.to_string());
            log::warn!("slice r={r} has no edges; skipped");
            metadata.push((format!("skipped-r{r}"), "no edges".into()));
            continue;
        }
        slices.push(s);
    }

    let cells: Vec<(usize, Method)> =
        (0..slices.len()).flat_map(|i| cfg.methods.iter().map(move |&m| (i, m))).collect();
    let mut rows = cells
        .into_par_iter()
        .map(|(i, method)| {
            let s = &slices[i];
            let start = Instant::now();
            let (ranking, output_size, converged) =
                run_method(method, &s.graph, cfg.iterations, cfg.seed, &cfg.iteration_params)?;
            let wall_time = start.elapsed();
            Ok(ResultRow {
                dataset: dataset.clone(),
                r: s.r,
                method,
                precision_at_core: precision_at_core_size(&ranking, &s.core)?,
                auprc: auprc(&ranking, &s.core)?.0,
                output_size,
                wall_time,
                converged,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| (&a.dataset, a.r, a.method).cmp(&(&b.dataset, b.r, b.method)));
    rows.dedup_by(|a, b| (&a.dataset, a.r, a.method) == (&b.dataset, b.r, b.method));

    for row in &rows {
        let r = row.r.map_or("all".into(), |r| r.to_string());
        metadata.push((
            format!("wall-time-ms {} r={} {}", row.dataset, r, row.method),
            format!("{:.3}", row.wall_time.as_secs_f64() * 1e3),
        ));
        if !row.converged {
            metadata.push((format!("not-converged {} r={} {}", row.dataset, r, row.method), "true".into()));
        }
    }
    Ok(ExperimentOutput { rows, metadata })
}

pub const RESULT_HEADER: [&str; 6] = ["dataset", "r", "method", "precision_at_core", "auprc", "output_size"];

/// Writes the metadata block, then the header and rows.
pub fn write_results(out: &ExperimentOutput, w: &mut impl Write) -> Result<()> {
    for (k, v) in &out.metadata {
        writeln!(w, "# {k}: {v}").map_err(|e| Error::io("<output>", e))?;
    }
    write_result_body(&out.rows, w)
}

/// Header and rows only; deterministic for a fixed config.
pub fn write_result_body(rows: &[ResultRow], w: &mut impl Write) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    csv.write_record(RESULT_HEADER)?;
    for row in rows {
        csv.write_record([
            row.dataset.clone(),
            row.r.map_or("all".into(), |r| r.to_string()),
            row.method.name().to_string(),
            format!("{:.6}", row.precision_at_core),
            format!("{:.6}", row.auprc),
            row.output_size.to_string(),
        ])?;
    }
    csv.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

pub const SWEEP_HEADER: [&str; 3] = ["iteration", "union_size", "recovered_fraction"];

pub fn write_sweep(
    records: &[crate::eval::SweepRecord],
    metadata: &[(String, String)],
    w: &mut impl Write,
) -> Result<()> {
    for (k, v) in metadata {
        writeln!(w, "# {k}: {v}").map_err(|e| Error::io("<output>", e))?;
    }
    let mut csv = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    csv.write_record(SWEEP_HEADER)?;
    for rec in records {
        csv.write_record([
            rec.iteration.to_string(),
            rec.union_size.to_string(),
            format!("{:.6}", rec.recovered_fraction),
        ])?;
    }
    csv.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}
