//! Trace file reading and writing.
//!
//! Text form: one record per line, `step from to reason before after
//! reward`, positions as `x,y`, absent values as `-`, `#` comments
//! allowed. Structured form: a JSON document with the same fields.

use anyhow::{bail, Context, Result};
use pbss_core::grid::Position;
use pbss_core::solver::{DecisionRecord, Reason, SolveTrace};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct TraceDoc {
    pub solved: bool,
    pub total_steps: usize,
    pub records: Vec<DecisionRecord>,
}

impl From<&SolveTrace> for TraceDoc {
    fn from(trace: &SolveTrace) -> Self {
        TraceDoc {
            solved: trace.solved,
            total_steps: trace.total_steps,
            records: trace.records.clone(),
        }
    }
}

fn value_text(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn parse_value(s: &str) -> Result<Option<usize>> {
    if s == "-" {
        return Ok(None);
    }
    Ok(Some(s.parse()?))
}

fn parse_position(s: &str) -> Result<Position> {
    let (x, y) = s
        .split_once(',')
        .with_context(|| format!("expected `x,y`, got `{s}`"))?;
    Ok(Position::new(x.parse()?, y.parse()?))
}

pub fn render_text(trace: &SolveTrace) -> String {
    let mut out = String::new();
    out.push_str("# step from to reason value_before value_after reward\n");
    out.push_str(&format!(
        "# solved={} total_steps={}\n",
        trace.solved, trace.total_steps
    ));
    for r in &trace.records {
        out.push_str(&format!(
            "{} {},{} {},{} {} {} {} {}\n",
            r.step,
            r.escort_from.x,
            r.escort_from.y,
            r.escort_to.x,
            r.escort_to.y,
            r.reason.token(),
            value_text(r.value_before),
            value_text(r.value_after),
            r.reward
        ));
    }
    out
}

pub fn render_json(trace: &SolveTrace) -> Result<String> {
    Ok(serde_json::to_string_pretty(&TraceDoc::from(trace))? + "\n")
}

/// Reads either form, sniffing JSON by its leading brace.
pub fn parse(text: &str) -> Result<Vec<DecisionRecord>> {
    if text.trim_start().starts_with('{') {
        let doc: TraceDoc = serde_json::from_str(text)?;
        return Ok(doc.records);
    }
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            bail!("trace line {}: expected 7 fields, got {}", i + 1, fields.len());
        }
        records.push(DecisionRecord {
            step: fields[0].parse().context("step")?,
            escort_from: parse_position(fields[1])?,
            escort_to: parse_position(fields[2])?,
            reason: fields[3].parse::<Reason>().map_err(anyhow::Error::msg)?,
            value_before: parse_value(fields[4])?,
            value_after: parse_value(fields[5])?,
            reward: fields[6].parse().context("reward")?,
        });
    }
    Ok(records)
}
