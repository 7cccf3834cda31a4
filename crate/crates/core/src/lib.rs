//! Worst-case connectivity robustness of networks.
//!
//! Static attack strategies ranked by node centrality are simulated on a
//! graph, stacked into a pointwise-minimum curve (the most destructive attack
//! known for that graph), and summarized by its mean relative giant-component
//! size. The crate also scores how often the stacked curve reuses nodes,
//! repairs predicted curves, and writes labelled training corpora.

pub mod attack;
pub mod centrality;
pub mod compare;
pub mod curve_io;
pub mod dataset;
pub mod error;
pub mod filter;
pub mod generate;
pub mod graph;
pub mod mda;
pub mod plot;
pub mod rank;
pub mod rationality;
pub mod sample;

pub use attack::{attack_by_strategy, naive_curve_oracle, simulate_removal, AttackCurve, Strategy};
pub use centrality::{compute_centrality, CentralityParams, CentralityScores, Metric};
pub use error::{Error, Result};
pub use filter::{apply_filter, RealCurve};
pub use generate::{generate, GeneratorConfig, Model};
pub use graph::Graph;
pub use mda::{decompose, destruction, stack, worst_robustness, MdaCurve};
pub use rank::{rank, Ranking, TieRule};
pub use rationality::{maximum_rationality, MrReport};
