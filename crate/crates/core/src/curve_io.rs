//! CSV formats for attack curves, stacked curves and their decompositions.
//!
//! Every curve file starts with a `# key=value ...` metadata line, then a
//! column header. Curve rows are `step,node,gcc_size,relative` with steps
//! counted from 1; predicted curves leave `node` and `gcc_size` empty and add
//! a `provenance` column.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::attack::AttackCurve;
use crate::error::{Error, Result};
use crate::filter::RealCurve;
use crate::mda::{MdaCurve, Segment};

pub const CURVE_HEADER: &str = "step,node,gcc_size,relative";
pub const MDA_HEADER: &str = "step,relative,winner_strategy,winner_node,alternative_count";
pub const DECOMPOSITION_HEADER: &str = "strategy,positions";

/// Provenance tags used in curve files.
pub const SIMULATED: &str = "simulated";
pub const RAW: &str = "raw";
pub const FILTERED: &str = "filtered";

/// Decimal rendering with 12 significant digits, trailing zeros trimmed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Whitespace would break the metadata line.
fn meta_value(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join("_")
}

pub fn write_attack_curve(curve: &AttackCurve, graph_id: &str) -> String {
    let mut out = format!(
        "# n={} strategy={} graph_id={}\n{CURVE_HEADER}\n",
        curve.n,
        meta_value(&curve.strategy.to_string()),
        meta_value(graph_id)
    );
    let n = curve.n as f64;
    for (i, (&node, &size)) in curve.order.iter().zip(&curve.gcc_sizes).enumerate() {
        let _ = writeln!(out, "{},{node},{size},{}", i + 1, format_sig(size as f64 / n));
    }
    out
}

/// Stacked curve in the plain curve layout, with the recorded winner as the
/// node column. Used for training labels.
pub fn write_label_curve(mda: &MdaCurve, graph_id: &str) -> String {
    let mut out = format!(
        "# n={} strategy=mda graph_id={}\n{CURVE_HEADER}\n",
        mda.n,
        meta_value(graph_id)
    );
    let n = mda.n as f64;
    for (i, p) in mda.positions.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            i + 1,
            p.winner.node,
            p.gcc_size,
            format_sig(p.gcc_size as f64 / n)
        );
    }
    out
}

/// Real-valued curves (e.g. predictions before and after filtering), one
/// block of rows per provenance tag.
pub fn write_real_curves(strategy: &str, graph_id: &str, curves: &[(&str, &RealCurve)]) -> String {
    let n = curves.first().map_or(0, |(_, c)| c.values.len());
    let mut out = format!(
        "# n={n} strategy={} graph_id={}\n{CURVE_HEADER},provenance\n",
        meta_value(strategy),
        meta_value(graph_id)
    );
    for (tag, curve) in curves {
        for (i, &v) in curve.values.iter().enumerate() {
            let _ = writeln!(out, "{},,,{},{tag}", i + 1, format_sig(v));
        }
    }
    out
}

pub fn write_mda_curve(mda: &MdaCurve, graph_id: &str) -> String {
    let strategies: Vec<String> = mda.source_strategies.iter().map(|s| meta_value(&s.to_string())).collect();
    let mut out = format!(
        "# n={} strategies={} graph_id={}\n{MDA_HEADER}\n",
        mda.n,
        strategies.join(";"),
        meta_value(graph_id)
    );
    let n = mda.n as f64;
    for (i, p) in mda.positions.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            i + 1,
            format_sig(p.gcc_size as f64 / n),
            mda.source_strategies[p.winner.strategy],
            p.winner.node,
            p.alternatives.len()
        );
    }
    out
}

/// One row per strategy; positions as 1-based inclusive ranges joined by `;`
/// (`1-4;9-9`). Strategies that win nowhere get an empty field.
pub fn write_decomposition(segments: &[Segment]) -> String {
    let mut out = format!("{DECOMPOSITION_HEADER}\n");
    for s in segments {
        let ranges: Vec<String> = s
            .ranges
            .iter()
            .map(|r| format!("{}-{}", r.start + 1, r.end))
            .collect();
        let _ = writeln!(out, "{},{}", s.strategy, ranges.join(";"));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub step: usize,
    pub node: Option<usize>,
    pub gcc_size: Option<u32>,
    pub relative: f64,
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CurveTable {
    pub meta: BTreeMap<String, String>,
    pub rows: Vec<CurveRow>,
}

impl CurveTable {
    /// Provenance tags present, in order of first appearance.
    pub fn provenances(&self) -> Vec<Option<&str>> {
        let mut tags: Vec<Option<&str>> = Vec::new();
        for r in &self.rows {
            let t = r.provenance.as_deref();
            if !tags.contains(&t) {
                tags.push(t);
            }
        }
        tags
    }

    pub fn values_for(&self, provenance: Option<&str>) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.provenance.as_deref() == provenance)
            .map(|r| r.relative)
            .collect()
    }

    /// The curve a comparison should use: a filtered block if there is one,
    /// else a simulated block, else the first block in the file.
    pub fn preferred_values(&self) -> Vec<f64> {
        let tags = self.provenances();
        let pick = tags
            .iter()
            .find(|t| t.is_some_and(|t| t.ends_with(FILTERED)))
            .or_else(|| tags.iter().find(|t| t.is_some_and(|t| t == SIMULATED)))
            .or_else(|| tags.first());
        pick.map_or_else(Vec::new, |&t| self.values_for(t))
    }
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::CurveFormat(format!("line {line}: {}", message.into()))
}

/// Reads any file with a `relative` column: attack curves, labels,
/// predictions, or stacked-curve files.
pub fn read_curve(text: &str) -> Result<CurveTable> {
    let mut table = CurveTable::default();
    let mut header: Option<Vec<&str>> = None;
    let mut next_step: BTreeMap<Option<String>, usize> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            for token in comment.split_whitespace() {
                if let Some((k, v)) = token.split_once('=') {
                    table.meta.insert(k.to_string(), v.to_string());
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let Some(cols) = &header else {
            if !fields.contains(&"relative") {
                return Err(bad(line_no, "header has no `relative` column"));
            }
            header = Some(fields);
            continue;
        };
        if fields.len() != cols.len() {
            return Err(bad(line_no, format!("expected {} fields, found {}", cols.len(), fields.len())));
        }
        let get = |name: &str| cols.iter().position(|c| *c == name).map(|i| fields[i]).filter(|f| !f.is_empty());
        let parse_opt = |name: &str| -> Result<Option<u64>> {
            get(name)
                .map(|f| f.parse::<u64>().map_err(|_| bad(line_no, format!("bad {name} `{f}`"))))
                .transpose()
        };
        let relative_text = get("relative").ok_or_else(|| bad(line_no, "missing relative value"))?;
        let relative: f64 = relative_text
            .parse()
            .map_err(|_| bad(line_no, format!("bad relative value `{relative_text}`")))?;
        let provenance = get("provenance").map(str::to_string);
        let expected = next_step.entry(provenance.clone()).or_insert(1);
        let step = match parse_opt("step")? {
            Some(s) if s as usize != *expected => {
                return Err(bad(line_no, format!("step {s} out of sequence, expected {expected}")))
            }
            _ => *expected,
        };
        *expected += 1;
        table.rows.push(CurveRow {
            step,
            node: parse_opt("node")?.map(|v| v as usize),
            gcc_size: parse_opt("gcc_size")?.map(|v| v as u32),
            relative,
            provenance,
        });
    }
    if header.is_none() {
        return Err(Error::CurveFormat("no header row".into()));
    }
    Ok(table)
}
