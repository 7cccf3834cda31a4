//! Training corpora: graphs paired with their stacked attack curves.
//!
//! Layout under the corpus root:
//!
//! ```text
//! graphs/<id>.edges    edge list
//! labels/<id>.csv      stacked curve, one row per removal step
//! manifest.json        sample index; paths relative to the root
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityParams, Metric};
use crate::curve_io::{read_curve, write_label_curve};
use crate::error::{Error, Result};
use crate::filter::RealCurve;
use crate::generate::{generate, GeneratorConfig};
use crate::graph::{read_edge_list, Graph};
use crate::mda::stack;
use crate::rank::TieRule;
use crate::rationality::{instance_seeds, strategy_curves};
use crate::sample::sample_connected_subgraph;

pub const SCHEMA_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub id: String,
    pub graph: String,
    pub label: String,
    /// Generator model, or the source network's name for sampled graphs.
    pub family: String,
    /// Target mean degree; absent for sampled graphs.
    pub k: Option<usize>,
    pub n: usize,
    pub seed: u64,
    pub split: Split,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub id: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub schema_version: u32,
    pub strategy_set: Vec<Metric>,
    pub samples: Vec<Sample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

impl DatasetManifest {
    pub fn count(&self, split: Split) -> usize {
        self.samples.iter().filter(|s| s.split == split).count()
    }
}

/// Default train/validation/test proportions.
pub const DEFAULT_RATIOS: (f64, f64, f64) = (0.8, 0.1, 0.1);

#[derive(Debug, Clone, PartialEq)]
pub struct LabelOptions {
    pub strategy_set: Vec<Metric>,
    pub params: CentralityParams,
    pub ratios: (f64, f64, f64),
    pub seed: u64,
}

impl Default for LabelOptions {
    fn default() -> Self {
        LabelOptions {
            strategy_set: Metric::BASELINE.to_vec(),
            params: CentralityParams::default(),
            ratios: DEFAULT_RATIOS,
            seed: 0,
        }
    }
}

/// Stacked-curve label file contents for `g`.
pub fn label_graph(g: &Graph, id: &str, strategies: &[Metric], params: &CentralityParams) -> Result<String> {
    let curves = strategy_curves(g, strategies, params, TieRule::IdAscending)?;
    Ok(write_label_curve(&stack(&curves)?, id))
}

struct Job {
    /// Index of the template or source network this sample comes from.
    source: usize,
    id: String,
    family: String,
    k: Option<usize>,
    seed: u64,
}

/// Builds, labels and writes one sample per job. Failed jobs are returned
/// separately; more than 10% failures aborts the build.
fn run_jobs<F>(root: &Path, jobs: Vec<Job>, opts: &LabelOptions, make_graph: F) -> Result<DatasetManifest>
where
    F: Fn(&Job) -> Result<Graph> + Sync,
{
    fs::create_dir_all(root.join("graphs"))?;
    fs::create_dir_all(root.join("labels"))?;
    let total = jobs.len();
    let results: Vec<std::result::Result<Sample, Failure>> = jobs
        .into_par_iter()
        .map(|job| {
            let build = || -> Result<Sample> {
                let g = make_graph(&job)?;
                let graph = format!("graphs/{}.edges", job.id);
                let label = format!("labels/{}.csv", job.id);
                let text = label_graph(&g, &job.id, &opts.strategy_set, &opts.params)?;
                g.write_edge_list(root.join(&graph))?;
                fs::write(root.join(&label), text)?;
                Ok(Sample {
                    id: job.id.clone(),
                    graph,
                    label,
                    family: job.family.clone(),
                    k: job.k,
                    n: g.node_count(),
                    seed: job.seed,
                    split: Split::Train,
                })
            };
            build().map_err(|e| {
                log::warn!("sample {} failed: {e}", job.id);
                Failure {
                    id: job.id.clone(),
                    error: e.to_string(),
                }
            })
        })
        .collect();
    let mut samples = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(s) => samples.push(s),
            Err(f) => failures.push(f),
        }
    }
    if failures.len() * 10 > total {
        return Err(Error::Dataset(format!(
            "{} of {total} samples failed; first error: {}",
            failures.len(),
            failures[0].error
        )));
    }
    let manifest = DatasetManifest {
        schema_version: SCHEMA_VERSION,
        strategy_set: opts.strategy_set.clone(),
        samples,
        failures,
    };
    let manifest = split(&manifest, opts.ratios, opts.seed)?;
    write_manifest(root, &manifest)?;
    Ok(manifest)
}

/// Generates `instances_per_config` graphs for each template (template seeds
/// are ignored; instance seeds derive from `opts.seed`).
pub fn build_synthetic_corpus(
    root: &Path,
    families: &[GeneratorConfig],
    instances_per_config: usize,
    opts: &LabelOptions,
) -> Result<DatasetManifest> {
    if families.is_empty() {
        return Err(Error::InvalidParam("at least one family is required".into()));
    }
    if instances_per_config == 0 {
        return Err(Error::InvalidParam("instances per config must be at least 1".into()));
    }
    let mut seen = std::collections::BTreeSet::new();
    for f in families {
        f.validate()?;
        if !seen.insert((f.model, f.n, f.mean_degree)) {
            return Err(Error::InvalidParam(format!(
                "family {} n={} k={} listed twice",
                f.model, f.n, f.mean_degree
            )));
        }
    }
    let mut jobs = Vec::new();
    for (t, template) in families.iter().enumerate() {
        for (i, seed) in instance_seeds(opts.seed, t as u64 + 1, instances_per_config)
            .into_iter()
            .enumerate()
        {
            jobs.push(Job {
                source: t,
                id: format!("{}_n{}_k{}_{i:04}", template.model, template.n, template.mean_degree),
                family: template.model.to_string(),
                k: Some(template.mean_degree),
                seed,
            });
        }
    }
    run_jobs(root, jobs, opts, |job| {
        generate(&families[job.source].with_seed(job.seed))
    })
}

/// Draws `samples_per_source` connected subgraphs of `sample_size` nodes from
/// each named source. Sources without a large enough component are skipped.
pub fn build_empirical_corpus(
    root: &Path,
    sources: &[(String, Graph)],
    sample_size: usize,
    samples_per_source: usize,
    opts: &LabelOptions,
) -> Result<DatasetManifest> {
    let mut jobs = Vec::new();
    for (s, (name, g)) in sources.iter().enumerate() {
        if g.largest_component_size() < sample_size || sample_size == 0 {
            log::warn!(
                "skipping source {name}: largest component has {} nodes, need {sample_size}",
                g.largest_component_size()
            );
            continue;
        }
        for (i, seed) in instance_seeds(opts.seed, s as u64 + 1, samples_per_source)
            .into_iter()
            .enumerate()
        {
            jobs.push(Job {
                source: s,
                id: format!("{}_s{sample_size}_{i:04}", sanitize(name)),
                family: name.clone(),
                k: None,
                seed,
            });
        }
    }
    run_jobs(root, jobs, opts, |job| {
        sample_connected_subgraph(&sources[job.source].1, sample_size, job.seed)
    })
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect()
}

fn check_ratios(ratios: (f64, f64, f64)) -> Result<()> {
    let (a, b, c) = ratios;
    if [a, b, c].iter().any(|r| !(0.0..=1.0).contains(r)) || (a + b + c - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParam(format!(
            "split ratios must be in [0, 1] and sum to 1, got ({a}, {b}, {c})"
        )));
    }
    Ok(())
}

/// Seeded, stratified split: each (family, k) group is shuffled and cut at
/// the given ratios, rounded. Failures are carried over untouched.
pub fn split(manifest: &DatasetManifest, ratios: (f64, f64, f64), seed: u64) -> Result<DatasetManifest> {
    check_ratios(ratios)?;
    let mut groups: BTreeMap<(String, Option<usize>), Vec<usize>> = BTreeMap::new();
    for (i, s) in manifest.samples.iter().enumerate() {
        groups.entry((s.family.clone(), s.k)).or_default().push(i);
    }
    let mut out = manifest.clone();
    let nonzero = [ratios.0, ratios.1, ratios.2].iter().filter(|&&r| r > 0.0).count();
    for (stream, ((family, k), mut members)) in groups.into_iter().enumerate() {
        let size = members.len();
        if size < nonzero {
            log::warn!("group {family}/{k:?} has {size} samples, too few for every split");
        }
        members.sort_by(|&a, &b| manifest.samples[a].id.cmp(&manifest.samples[b].id));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream as u64);
        members.shuffle(&mut rng);
        let train = ((ratios.0 * size as f64).round() as usize).min(size);
        let val = ((ratios.1 * size as f64).round() as usize).min(size - train);
        for (pos, &i) in members.iter().enumerate() {
            out.samples[i].split = if pos < train {
                Split::Train
            } else if pos < train + val {
                Split::Val
            } else {
                Split::Test
            };
        }
    }
    Ok(out)
}

pub fn write_manifest(root: &Path, manifest: &DatasetManifest) -> Result<()> {
    let mut text = serde_json::to_string_pretty(manifest)?;
    text.push('\n');
    fs::write(root.join(MANIFEST_FILE), text)?;
    Ok(())
}

pub fn read_manifest(root: &Path) -> Result<DatasetManifest> {
    let manifest: DatasetManifest = serde_json::from_str(&fs::read_to_string(root.join(MANIFEST_FILE))?)?;
    if manifest.schema_version != SCHEMA_VERSION {
        return Err(Error::Dataset(format!(
            "unsupported schema version {}",
            manifest.schema_version
        )));
    }
    Ok(manifest)
}

/// Reads a sample's label curve as relative values.
pub fn read_label(root: &Path, sample: &Sample) -> Result<RealCurve> {
    let table = read_curve(&fs::read_to_string(root.join(&sample.label))?)?;
    Ok(RealCurve::from(table.preferred_values()))
}

/// Every file exists and parses, graph sizes match, labels have one valid
/// entry per node, and sample ids are unique.
pub fn validate_corpus(root: &Path, manifest: &DatasetManifest) -> Result<()> {
    let mut ids = std::collections::BTreeSet::new();
    for s in &manifest.samples {
        if !ids.insert(&s.id) {
            return Err(Error::Dataset(format!("duplicate sample id {}", s.id)));
        }
        let g = read_edge_list(root.join(&s.graph))?;
        if g.graph.node_count() != s.n {
            return Err(Error::Dataset(format!(
                "{}: graph has {} nodes, manifest says {}",
                s.id,
                g.graph.node_count(),
                s.n
            )));
        }
        let label = read_label(root, s)?;
        if label.values.len() != s.n || !label.is_valid() {
            return Err(Error::Dataset(format!("{}: label is not a valid curve of length {}", s.id, s.n)));
        }
    }
    Ok(())
}

/// Re-simulates the labels of a seeded random `fraction` of samples (at
/// least one) and checks they match the stored files exactly.
pub fn verify_labels(root: &Path, manifest: &DatasetManifest, fraction: f64, seed: u64) -> Result<usize> {
    let mut picks: Vec<&Sample> = manifest.samples.iter().collect();
    picks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let count = ((fraction * picks.len() as f64).ceil() as usize).clamp(1.min(picks.len()), picks.len());
    for s in &picks[..count] {
        let g = read_edge_list(root.join(&s.graph))?.graph;
        let expected = label_graph(&g, &s.id, &manifest.strategy_set, &CentralityParams::default())?;
        if fs::read_to_string(root.join(&s.label))? != expected {
            return Err(Error::Dataset(format!("{}: label does not match re-simulation", s.id)));
        }
    }
    Ok(count)
}
