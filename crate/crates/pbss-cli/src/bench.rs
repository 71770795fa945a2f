//! The standard 9x9 multi-item benchmark.

use anyhow::Result;
use pbss_core::baseline::{standard_multi_item_specs, MULTI_SUITE_BASELINE_MEAN_STEPS};
use pbss_core::generator::generate;
use pbss_core::solver::{solve, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub case: String,
    pub escorts: usize,
    pub targets: usize,
    pub steps: usize,
    pub solved: bool,
    pub seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub mean_steps: f64,
    pub mean_seconds: f64,
    pub baseline_mean_steps: f64,
}

pub fn run_bench(seed: u64, max_steps: Option<usize>) -> Result<BenchReport> {
    run_cases(&standard_multi_item_specs(seed), max_steps)
}

pub fn run_cases(
    specs: &[(String, pbss_core::generator::GeneratorSpec)],
    max_steps: Option<usize>,
) -> Result<BenchReport> {
    let rows: Vec<BenchRow> = specs
        .par_iter()
        .map(|(name, spec)| {
            let grid = generate(spec).expect("generate");
            let mut config = SolverConfig::for_grid(&grid, spec.rng_seed);
            if let Some(cap) = max_steps {
                config.max_steps = cap;
            }
            let started = Instant::now();
            let trace = solve(&grid, &config).expect("solve");
            BenchRow {
                case: name.clone(),
                escorts: spec.n_escorts,
                targets: spec.n_targets,
                steps: trace.total_steps,
                solved: trace.solved,
                seconds: started.elapsed().as_secs_f64(),
            }
        })
        .collect();
    let n = rows.len().max(1) as f64;
    let mean_steps = rows.iter().map(|r| r.steps).sum::<usize>() as f64 / n;
    let mean_seconds = rows.iter().map(|r| r.seconds).sum::<f64>() / n;
    Ok(BenchReport {
        rows,
        mean_steps,
        mean_seconds,
        baseline_mean_steps: MULTI_SUITE_BASELINE_MEAN_STEPS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_case_list_gives_empty_report() {
        let report = run_cases(&[], None).unwrap();
        assert!(report.rows.is_empty());
        assert_eq!(report.mean_steps, 0.0);
    }

    #[test]
    fn aggregates_are_recomputable_from_rows() {
        let specs = pbss_core::baseline::standard_multi_item_specs(5)[..3].to_vec();
        let report = run_cases(&specs, None).unwrap();
        let mean = report.rows.iter().map(|r| r.steps).sum::<usize>() as f64
            / report.rows.len() as f64;
        assert_eq!(report.mean_steps, mean);
    }
}

pub fn render_text(report: &BenchReport) -> String {
    let mut out = String::new();
    out.push_str("case   escorts targets  steps solved   time(s)\n");
    for r in &report.rows {
        out.push_str(&format!(
            "{:<6} {:>7} {:>7} {:>6} {:>6} {:>9.3}\n",
            r.case, r.escorts, r.targets, r.steps, r.solved, r.seconds
        ));
    }
    out.push_str(&format!(
        "mean steps {:.2} (baseline mean {:.0}); mean time {:.3}s\n",
        report.mean_steps, report.baseline_mean_steps, report.mean_seconds
    ));
    out
}
