use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use wre_core::centrality::parse_metric_list;
use wre_core::curve_io::{read_curve, write_attack_curve, write_decomposition, write_mda_curve, FILTERED, RAW};
use wre_core::dataset::{
    build_empirical_corpus, build_synthetic_corpus, read_manifest, validate_corpus, verify_labels, DatasetManifest,
    LabelOptions, Split, DEFAULT_RATIOS,
};
use wre_core::graph::{read_edge_list, write_relabel_map, LoadedGraph};
use wre_core::plot::{render_svg, series_csv, Series};
use wre_core::rationality::{mr_experiment, mr_stats_csv, stack_rational, strategy_curves, MrExperiment, MrStats, Seeding};
use wre_core::{
    compare::compare_curves, decompose, destruction, generate, simulate_removal, stack, worst_robustness,
    CentralityParams, GeneratorConfig, Metric, Model, TieRule,
};

#[derive(Parser, Debug)]
#[command(name = "wre", version, about = "Worst-case robustness of networks under stacked attacks")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for batch verbs (dataset, rationality).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output path.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Generate a synthetic network as an edge list.
    Generate(GenerateArgs),
    /// Simulate one attack and write its curve.
    Attack(AttackArgs),
    /// Stack several attacks into the most destructive curve.
    Mda(MdaArgs),
    /// Maximum-rationality statistics over random instances.
    Rationality(RationalityArgs),
    /// Build or check a labelled corpus.
    #[command(subcommand)]
    Dataset(DatasetVerb),
    /// Compare a simulated curve with a predicted one.
    Compare(CompareArgs),
    /// Draw curves as SVG, with the plotted data as CSV next to it.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    model: Model,
    #[arg(long)]
    n: usize,
    /// Mean degree.
    #[arg(long)]
    k: usize,
    /// Rewiring probability for ws.
    #[arg(long)]
    rewire: Option<f64>,
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Edge-list file.
    graph: PathBuf,
    /// Also write the label-to-id map used when reading the edge list.
    #[arg(long)]
    relabel_map: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CentralityArgs {
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    #[arg(long, default_value_t = 2)]
    ci_radius: usize,
    #[arg(long, default_value_t = 10)]
    max_cycle_len: usize,
}

impl CentralityArgs {
    fn params(&self) -> CentralityParams {
        CentralityParams {
            damping: self.damping,
            ci_radius: self.ci_radius,
            max_cycle_len: self.max_cycle_len,
            ..CentralityParams::default()
        }
    }
}

#[derive(Args, Debug)]
struct AttackArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Centrality to rank by.
    #[arg(long, conflicts_with = "order", required_unless_present = "order")]
    strategy: Option<Metric>,
    /// File with a removal order, one node id per line.
    #[arg(long)]
    order: Option<PathBuf>,
    /// `id-ascending` or `shuffle:SEED`.
    #[arg(long, default_value = "id-ascending")]
    tie_rule: TieRule,
    #[command(flatten)]
    centrality: CentralityArgs,
}

#[derive(Args, Debug)]
struct MdaArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Comma-separated metrics; `baseline` and `extended` name the standard sets.
    #[arg(long, default_value = "baseline")]
    strategies: String,
    /// Write the per-strategy decomposition here.
    #[arg(long)]
    decomposition: Option<PathBuf>,
    /// Record winners from the rationality assignment and print MR.
    #[arg(long)]
    rational: bool,
    #[arg(long, default_value = "id-ascending")]
    tie_rule: TieRule,
    #[command(flatten)]
    centrality: CentralityArgs,
}

#[derive(Args, Debug)]
struct RationalityArgs {
    /// Comma-separated families.
    #[arg(long, default_value = "ba,er,regular")]
    models: String,
    /// Comma-separated mean degrees.
    #[arg(long, default_value = "4,6,8")]
    k: String,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 20)]
    instances: usize,
    /// Strategy set to score; repeat to compare sets on the same instances.
    #[arg(long = "strategies", default_value = "baseline")]
    strategy_sets: Vec<String>,
    /// Give every strategy set its own instances.
    #[arg(long)]
    fresh: bool,
    #[command(flatten)]
    centrality: CentralityArgs,
}

#[derive(Subcommand, Debug)]
enum DatasetVerb {
    /// Label generated networks.
    Synthetic(SyntheticArgs),
    /// Label connected samples drawn from real networks.
    Empirical(EmpiricalArgs),
    /// Check an existing corpus.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
struct LabelArgs {
    #[arg(long, default_value = "baseline")]
    strategies: String,
    /// Train, validation and test fractions.
    #[arg(long, default_value = "0.8,0.1,0.1")]
    split: String,
    #[command(flatten)]
    centrality: CentralityArgs,
}

#[derive(Args, Debug)]
struct SyntheticArgs {
    #[arg(long, default_value = "ba,er,ws,regular")]
    models: String,
    #[arg(long, default_value = "4,6,8")]
    k: String,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    /// Instances per (model, k).
    #[arg(long, default_value_t = 10)]
    instances: usize,
    #[command(flatten)]
    label: LabelArgs,
}

#[derive(Args, Debug)]
struct EmpiricalArgs {
    /// Source edge lists.
    #[arg(required = true)]
    sources: Vec<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    sample_size: usize,
    /// Samples drawn from each source.
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[command(flatten)]
    label: LabelArgs,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    corpus: PathBuf,
    /// Re-simulate this fraction of labels and compare.
    #[arg(long)]
    verify: Option<f64>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    simulated: PathBuf,
    predicted: PathBuf,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Curve files; the first is drawn as a line, the rest as dots.
    #[arg(required = true)]
    curves: Vec<PathBuf>,
    #[arg(long, default_value = "")]
    title: String,
    /// Draw raw predictions too, not only the filtered block.
    #[arg(long)]
    raw: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let batch = matches!(cli.verb, Verb::Rationality(_) | Verb::Dataset(_));
    let threads = if batch { cli.jobs.unwrap_or(0) } else { 1 };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("starting worker pool")?;
    let out = cli.out.as_deref();
    match &cli.verb {
        Verb::Generate(a) => cmd_generate(a, cli.seed, out),
        Verb::Attack(a) => cmd_attack(a, out),
        Verb::Mda(a) => cmd_mda(a, out),
        Verb::Rationality(a) => cmd_rationality(a, cli.seed, out),
        Verb::Dataset(d) => cmd_dataset(d, cli.seed, out),
        Verb::Compare(a) => cmd_compare(a, out),
        Verb::Plot(a) => cmd_plot(a, out),
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

/// Writes to `out` when given, otherwise prints.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_out(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require_out(out: Option<&Path>, what: &str) -> Result<PathBuf> {
    match out {
        Some(p) => Ok(p.to_path_buf()),
        None => bail!("{what} needs an output path (-o)"),
    }
}

fn load_graph(input: &GraphInput) -> Result<LoadedGraph> {
    let loaded = read_edge_list(&input.graph).with_context(|| format!("reading {}", input.graph.display()))?;
    if let Some(p) = &input.relabel_map {
        write_relabel_map(&loaded, p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(loaded)
}

fn graph_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned())
}

fn parse_strategies(list: &str) -> Result<Vec<Metric>> {
    let metrics = match list.trim() {
        "baseline" => Metric::BASELINE.to_vec(),
        "extended" => Metric::EXTENDED.to_vec(),
        other => parse_metric_list(other)?,
    };
    if metrics.is_empty() {
        bail!("empty strategy list");
    }
    Ok(metrics)
}

fn parse_list<T: std::str::FromStr>(list: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow::anyhow!("bad {what} `{s}`: {e}")))
        .collect()
}

fn cmd_generate(a: &GenerateArgs, seed: u64, out: Option<&Path>) -> Result<()> {
    let mut config = GeneratorConfig::new(a.model, a.n, a.k, seed);
    if let Some(p) = a.rewire {
        config.ws_rewire_prob = p;
    }
    let g = generate(&config)?;
    emit(out, &g.to_edge_list())?;
    eprintln!("{} nodes, {} edges, mean degree {:.3}", g.node_count(), g.edge_count(), g.mean_degree());
    Ok(())
}

fn cmd_attack(a: &AttackArgs, out: Option<&Path>) -> Result<()> {
    let g = load_graph(&a.input)?.graph;
    let curve = match (&a.strategy, &a.order) {
        (Some(m), _) => strategy_curves(&g, &[*m], &a.centrality.params(), a.tie_rule)?.remove(0),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let order: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse().with_context(|| format!("bad node id `{t}`")))
                .collect::<Result<_>>()?;
            simulate_removal(&g, &order)?
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    if let Some(p) = out {
        write_out(p, &write_attack_curve(&curve, &graph_id(&a.input.graph)))?;
    }
    println!("strategy: {}", curve.strategy);
    println!("R: {:.6}", curve.robustness());
    Ok(())
}

fn cmd_mda(a: &MdaArgs, out: Option<&Path>) -> Result<()> {
    let g = load_graph(&a.input)?.graph;
    let metrics = parse_strategies(&a.strategies)?;
    let curves = strategy_curves(&g, &metrics, &a.centrality.params(), a.tie_rule)?;
    let (mda, mr) = if a.rational {
        let (mda, report) = stack_rational(&curves)?;
        (mda, Some(report))
    } else {
        (stack(&curves)?, None)
    };
    let id = graph_id(&a.input.graph);
    if let Some(p) = out {
        write_out(p, &write_mda_curve(&mda, &id))?;
    }
    if let Some(p) = &a.decomposition {
        write_out(p, &write_decomposition(&decompose(&mda)))?;
    }
    let rw = worst_robustness(&mda);
    println!("graph: {id} ({} nodes)", mda.n);
    for c in &curves {
        println!("R {:<12} {:.6}", c.strategy.to_string(), c.robustness());
    }
    println!("R_W: {rw:.6}");
    println!("D: {:.6}", destruction(&mda, mda.initial_relative()));
    if let Some(r) = mr {
        println!("MR: {:.4} (u0 = {}, {} passes)", r.mr, r.u0, r.iterations);
    }
    Ok(())
}

fn print_mr_table(stats: &[MrStats]) {
    println!(
        "{:<8} {:>3} {:>3} {:>7} {:>7} {:>7}  {:>5} {:>5} {:>5} {:>5} {:>5} {:>5}",
        "family", "k", "q", "max", "min", "mean", ">.95", ">.90", ">.85", ">.80", ">.75", ">.70"
    );
    for s in stats {
        let b = s.bands;
        println!(
            "{:<8} {:>3} {:>3} {:>7.4} {:>7.4} {:>7.4}  {:>5} {:>5} {:>5} {:>5} {:>5} {:>5}",
            s.family.as_str(),
            s.mean_degree,
            s.q,
            s.max,
            s.min,
            s.mean,
            b[0],
            b[1],
            b[2],
            b[3],
            b[4],
            b[5]
        );
    }
}

fn cmd_rationality(a: &RationalityArgs, seed: u64, out: Option<&Path>) -> Result<()> {
    let models: Vec<Model> = parse_list(&a.models, "model")?;
    let ks: Vec<usize> = parse_list(&a.k, "mean degree")?;
    let sets = a.strategy_sets.iter().map(|s| parse_strategies(s)).collect::<Result<Vec<_>>>()?;
    let mut all = Vec::new();
    for &model in &models {
        for &k in &ks {
            let exp = MrExperiment {
                params: a.centrality.params(),
                seeding: if a.fresh { Seeding::Fresh } else { Seeding::Shared },
                ..MrExperiment::new(model, a.n, k, a.instances, seed).with_strategy_sets(sets.clone())
            };
            all.extend(mr_experiment(&exp).with_context(|| format!("{model} k={k}"))?);
        }
    }
    print_mr_table(&all);
    if let Some(p) = out {
        write_out(p, &mr_stats_csv(&all))?;
    }
    Ok(())
}

fn label_options(l: &LabelArgs, seed: u64) -> Result<LabelOptions> {
    let r: Vec<f64> = parse_list(&l.split, "split fraction")?;
    let ratios = match r.as_slice() {
        [] => DEFAULT_RATIOS,
        [a, b, c] => (*a, *b, *c),
        _ => bail!("--split takes three fractions"),
    };
    Ok(LabelOptions {
        strategy_set: parse_strategies(&l.strategies)?,
        params: l.centrality.params(),
        ratios,
        seed,
    })
}

fn summarize(m: &DatasetManifest) {
    println!(
        "{} samples (train {}, val {}, test {}), {} failures",
        m.samples.len(),
        m.count(Split::Train),
        m.count(Split::Val),
        m.count(Split::Test),
        m.failures.len()
    );
}

fn cmd_dataset(d: &DatasetVerb, seed: u64, out: Option<&Path>) -> Result<()> {
    match d {
        DatasetVerb::Synthetic(a) => {
            let root = require_out(out, "dataset synthetic")?;
            let opts = label_options(&a.label, seed)?;
            let models: Vec<Model> = parse_list(&a.models, "model")?;
            let ks: Vec<usize> = parse_list(&a.k, "mean degree")?;
            let families: Vec<GeneratorConfig> = models
                .iter()
                .flat_map(|&m| ks.iter().map(move |&k| GeneratorConfig::new(m, a.n, k, 0)))
                .collect();
            summarize(&build_synthetic_corpus(&root, &families, a.instances, &opts)?);
        }
        DatasetVerb::Empirical(a) => {
            let root = require_out(out, "dataset empirical")?;
            let opts = label_options(&a.label, seed)?;
            let sources = a
                .sources
                .iter()
                .map(|p| {
                    let g = read_edge_list(p).with_context(|| format!("reading {}", p.display()))?.graph;
                    Ok((graph_id(p), g))
                })
                .collect::<Result<Vec<_>>>()?;
            summarize(&build_empirical_corpus(&root, &sources, a.sample_size, a.samples, &opts)?);
        }
        DatasetVerb::Validate(a) => {
            let manifest = read_manifest(&a.corpus)?;
            validate_corpus(&a.corpus, &manifest)?;
            summarize(&manifest);
            if let Some(f) = a.verify {
                let checked = verify_labels(&a.corpus, &manifest, f, seed)?;
                println!("{checked} labels re-simulated, all match");
            }
        }
    }
    Ok(())
}

fn read_values(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let values = read_curve(&text)
        .with_context(|| format!("parsing {}", path.display()))?
        .preferred_values();
    if values.is_empty() {
        bail!("{} holds no curve points", path.display());
    }
    Ok(values)
}

fn cmd_compare(a: &CompareArgs, out: Option<&Path>) -> Result<()> {
    let report = compare_curves(&read_values(&a.simulated)?, &read_values(&a.predicted)?)?;
    println!("{report}");
    if let Some(p) = out {
        let mut json = serde_json::to_string_pretty(&report)?;
        json.push('\n');
        write_out(p, &json)?;
    }
    Ok(())
}

fn cmd_plot(a: &PlotArgs, out: Option<&Path>) -> Result<()> {
    let svg_path = require_out(out, "plot")?;
    let mut series = Vec::new();
    for (i, path) in a.curves.iter().enumerate() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let table = read_curve(&text).with_context(|| format!("parsing {}", path.display()))?;
        let name = table.meta.get("strategy").cloned().unwrap_or_else(|| graph_id(path));
        let make = |label: String, values: Vec<f64>| {
            if i == 0 {
                Series::line(label, values)
            } else {
                Series::dots(label, values)
            }
        };
        let tags = table.provenances();
        if a.raw && tags.iter().any(|t| t.is_some_and(|t| t.ends_with(RAW))) {
            for t in tags.into_iter().flatten().filter(|t| t.ends_with(RAW) || t.ends_with(FILTERED)) {
                series.push(make(format!("{name} {t}"), table.values_for(Some(t))));
            }
        } else {
            series.push(make(name, table.preferred_values()));
        }
    }
    write_out(&svg_path, &render_svg(&a.title, &series))?;
    write_out(&svg_path.with_extension("csv"), &series_csv(&series))?;
    Ok(())
}
