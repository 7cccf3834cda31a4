//! Node centralities used as static attack strategies.
//!
//! Every metric here is computed once on the intact graph; higher scores are
//! removed first.

mod cycle_ratio;
mod influence;
mod local;
mod paths;
mod spectral;

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use cycle_ratio::{cycle_ratio, shortest_cycle_set};
pub use influence::collective_influence;
pub use local::{coreness, degree, h_index};
pub use paths::{betweenness, closeness, load};
pub use spectral::{eigenvector, hits, pagerank, subgraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Degree,
    HIndex,
    Coreness,
    Closeness,
    Betweenness,
    Eigenvector,
    PageRank,
    CycleRatio,
    Hits,
    Subgraph,
    Load,
    #[serde(rename = "ci")]
    CollectiveInfluence,
}

impl Metric {
    /// The eight standard attack strategies, in stacking order.
    pub const BASELINE: [Metric; 8] = [
        Metric::Degree,
        Metric::HIndex,
        Metric::Coreness,
        Metric::Closeness,
        Metric::Betweenness,
        Metric::Eigenvector,
        Metric::PageRank,
        Metric::CycleRatio,
    ];

    /// Baseline plus HITS, subgraph, load and collective influence.
    pub const EXTENDED: [Metric; 12] = [
        Metric::Degree,
        Metric::HIndex,
        Metric::Coreness,
        Metric::Closeness,
        Metric::Betweenness,
        Metric::Eigenvector,
        Metric::PageRank,
        Metric::CycleRatio,
        Metric::Hits,
        Metric::Subgraph,
        Metric::Load,
        Metric::CollectiveInfluence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::HIndex => "hindex",
            Metric::Coreness => "coreness",
            Metric::Closeness => "closeness",
            Metric::Betweenness => "betweenness",
            Metric::Eigenvector => "eigenvector",
            Metric::PageRank => "pagerank",
            Metric::CycleRatio => "cycleratio",
            Metric::Hits => "hits",
            Metric::Subgraph => "subgraph",
            Metric::Load => "load",
            Metric::CollectiveInfluence => "ci",
        }
    }

    /// True for metrics whose scores are integers.
    pub fn is_integral(self) -> bool {
        matches!(self, Metric::Degree | Metric::HIndex | Metric::Coreness)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Metric> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        Metric::EXTENDED
            .into_iter()
            .find(|m| m.as_str() == key)
            .or(match key.as_str() {
                "h" => Some(Metric::HIndex),
                "kcore" | "kshell" => Some(Metric::Coreness),
                "collectiveinfluence" => Some(Metric::CollectiveInfluence),
                "subgraphcentrality" => Some(Metric::Subgraph),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

/// Parses a comma-separated metric list such as `degree,hindex,ci`.
pub fn parse_metric_list(list: &str) -> Result<Vec<Metric>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralityParams {
    pub damping: f64,
    pub pagerank_tolerance: f64,
    pub pagerank_max_iterations: usize,
    /// Convergence threshold for eigenvector and HITS power iteration
    /// (infinity-norm change of the unit-normalized iterate).
    pub power_tolerance: f64,
    pub power_max_iterations: usize,
    pub ci_radius: usize,
    pub max_cycle_len: usize,
    /// Number of series terms for subgraph centrality.
    pub subgraph_terms: usize,
}

impl Default for CentralityParams {
    fn default() -> Self {
        CentralityParams {
            damping: 0.85,
            pagerank_tolerance: 1e-10,
            pagerank_max_iterations: 200,
            power_tolerance: 1e-10,
            power_max_iterations: 20_000,
            ci_radius: 2,
            max_cycle_len: 10,
            subgraph_terms: 20,
        }
    }
}

impl CentralityParams {
    pub fn validate(&self, metric: Metric) -> Result<()> {
        match metric {
            Metric::PageRank if !(self.damping > 0.0 && self.damping < 1.0) => Err(
                Error::InvalidParam(format!("damping must lie in (0, 1), got {}", self.damping)),
            ),
            Metric::CollectiveInfluence if self.ci_radius < 1 => {
                Err(Error::InvalidParam("CI radius must be at least 1".into()))
            }
            Metric::CycleRatio if self.max_cycle_len < 3 => Err(Error::InvalidParam(format!(
                "max cycle length must be at least 3, got {}",
                self.max_cycle_len
            ))),
            _ => Ok(()),
        }
    }

    /// `key=value` summary of the parameters that affect `metric`.
    pub fn describe(&self, metric: Metric) -> String {
        match metric {
            Metric::PageRank => format!(
                "damping={} tolerance={:e} max_iterations={}",
                self.damping, self.pagerank_tolerance, self.pagerank_max_iterations
            ),
            Metric::Eigenvector | Metric::Hits => format!(
                "tolerance={:e} max_iterations={}",
                self.power_tolerance, self.power_max_iterations
            ),
            Metric::CollectiveInfluence => format!("radius={}", self.ci_radius),
            Metric::CycleRatio => format!("max_cycle_len={}", self.max_cycle_len),
            Metric::Subgraph => format!("terms={}", self.subgraph_terms),
            _ => String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub metric: Metric,
    pub values: Vec<f64>,
    pub params: CentralityParams,
}

impl CentralityScores {
    /// `# metric=... params` header, `node_id,score` column row, one row per node.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# metric={} {}",
            self.metric,
            self.params.describe(self.metric)
        );
        out.push_str("node_id,score\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{i},{v}");
        }
        out
    }
}

pub fn compute_centrality(g: &Graph, metric: Metric, params: &CentralityParams) -> Result<CentralityScores> {
    if g.node_count() == 0 {
        return Err(Error::InvalidParam("graph has no nodes".into()));
    }
    params.validate(metric)?;
    let as_f64 = |v: Vec<usize>| v.into_iter().map(|x| x as f64).collect::<Vec<f64>>();
    let values = match metric {
        Metric::Degree => as_f64(degree(g)),
        Metric::HIndex => as_f64(h_index(g)),
        Metric::Coreness => as_f64(coreness(g)),
        Metric::Closeness => closeness(g),
        Metric::Betweenness => betweenness(g),
        Metric::Eigenvector => eigenvector(g, params.power_tolerance, params.power_max_iterations)?.0,
        Metric::PageRank => pagerank(
            g,
            params.damping,
            params.pagerank_tolerance,
            params.pagerank_max_iterations,
        )?,
        Metric::CycleRatio => cycle_ratio(g, params.max_cycle_len),
        Metric::Hits => hits(g, params.power_tolerance, params.power_max_iterations)?,
        Metric::Subgraph => subgraph(g, params.subgraph_terms),
        Metric::Load => load(g),
        Metric::CollectiveInfluence => collective_influence(g, params.ci_radius),
    };
    debug_assert_eq!(values.len(), g.node_count());
    Ok(CentralityScores {
        metric,
        values,
        params: *params,
    })
}

/// Looks the metric up by name first; unknown names are an error.
pub fn compute_centrality_by_name(g: &Graph, name: &str, params: &CentralityParams) -> Result<CentralityScores> {
    compute_centrality(g, name.parse()?, params)
}
