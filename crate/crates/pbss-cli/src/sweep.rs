//! The 9x5 corner-line benchmark sweep.

use anyhow::Result;
use pbss_core::baseline::{
    baseline_at, corner_line_instance, optimal_at, sweep_item_cells, BASELINE_GAPS,
    SWEEP_HEIGHT, SWEEP_WIDTH,
};
use pbss_core::oracle::{gap_of_means, optimal_steps, OracleLimits, OracleOutcome};
use pbss_core::solver::{solve, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct SweepCell {
    pub x: usize,
    pub y: usize,
    pub runs: Vec<usize>,
    pub mean: f64,
    /// Live search result; `None` when the node cap was hit.
    pub oracle: Option<usize>,
    /// Golden per-cell optimum.
    pub reference_optimal: usize,
    /// Step count the baseline heuristic reported for this cell.
    pub reference_baseline: usize,
}

#[derive(Debug, Serialize)]
pub struct SweepEscortReport {
    pub escorts: usize,
    pub cells: Vec<SweepCell>,
    /// Mean relative excess over the oracle across cells with an oracle
    /// answer, in percent.
    pub gap_percent: Option<f64>,
    pub reference_gap_percent: f64,
    pub oracle_exhausted_cells: usize,
    /// Cells whose mean landed outside `[optimal, baseline]`.
    pub off_band_cells: usize,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub seeds_per_case: usize,
    pub reports: Vec<SweepEscortReport>,
}

pub fn run_sweep(
    escort_counts: &[usize],
    seeds_per_case: usize,
    seed_base: u64,
    oracle_limit: usize,
) -> Result<SweepReport> {
    let limits = OracleLimits {
        max_expanded_states: oracle_limit,
        max_depth: 4096,
    };
    let mut reports = Vec::new();
    for &k in escort_counts {
        anyhow::ensure!((1..=6).contains(&k), "escort count {k} outside 1..=6");
        let cells: Vec<SweepCell> = sweep_item_cells(k)
            .par_iter()
            .map(|&p| {
                let inst = corner_line_instance(k, p);
                let runs: Vec<usize> = (0..seeds_per_case)
                    .map(|i| {
                        let seed = seed_base.wrapping_add(11 * (i as u64 + 1));
                        let trace =
                            solve(&inst, &SolverConfig::for_grid(&inst, seed)).expect("solve");
                        assert!(trace.solved, "sweep cell {p} unsolved");
                        trace.total_steps
                    })
                    .collect();
                let mean = runs.iter().sum::<usize>() as f64 / runs.len() as f64;
                let oracle = match optimal_steps(&inst, &limits).expect("oracle") {
                    OracleOutcome::Optimal(n) => Some(n),
                    _ => None,
                };
                SweepCell {
                    x: p.x,
                    y: p.y,
                    runs,
                    mean,
                    oracle,
                    reference_optimal: optimal_at(k, p).unwrap(),
                    reference_baseline: baseline_at(k, p).unwrap(),
                }
            })
            .collect();

        let with_oracle: Vec<(f64, usize)> = cells
            .iter()
            .filter_map(|c| c.oracle.map(|o| (c.mean, o)))
            .collect();
        let gap_percent = if with_oracle.is_empty() {
            None
        } else {
            Some(gap_of_means(&with_oracle)?)
        };
        let oracle_exhausted_cells = cells.iter().filter(|c| c.oracle.is_none()).count();
        let off_band_cells = cells
            .iter()
            .filter(|c| {
                c.mean < c.reference_optimal as f64 || c.mean > c.reference_baseline as f64
            })
            .count();
        reports.push(SweepEscortReport {
            escorts: k,
            cells,
            gap_percent,
            reference_gap_percent: BASELINE_GAPS[k - 1],
            oracle_exhausted_cells,
            off_band_cells,
        });
    }
    Ok(SweepReport {
        seeds_per_case,
        reports,
    })
}

fn grid_lines(report: &SweepEscortReport, pick: impl Fn(&SweepCell) -> String) -> Vec<String> {
    let mut grid = vec![vec!["     .".to_string(); SWEEP_WIDTH]; SWEEP_HEIGHT];
    for c in &report.cells {
        grid[c.y][c.x] = format!("{:>6}", pick(c));
    }
    grid.into_iter().map(|row| row.join(" ")).collect()
}

pub fn render_text(report: &SweepReport) -> String {
    // columns: x rightward, rows: y downward, matching rendered maps

    let mut out = String::new();
    for r in &report.reports {
        out.push_str(&format!(
            "== {} escorts ({} runs per cell) ==\n",
            r.escorts, report.seeds_per_case
        ));
        out.push_str("heuristic mean steps per item cell (`.` marks escort starts):\n");
        for line in grid_lines(r, |c| format!("{:.1}", c.mean)) {
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("exact optimum per item cell (`?` when the search hit its cap):\n");
        for line in grid_lines(r, |c| {
            c.oracle.map_or_else(|| "?".to_string(), |o| o.to_string())
        }) {
            out.push_str(&line);
            out.push('\n');
        }
        match r.gap_percent {
            Some(g) => out.push_str(&format!(
                "gap = {g:.2}% (baseline gap {:.2}%)",
                r.reference_gap_percent
            )),
            None => out.push_str("gap unavailable: every oracle search hit its cap"),
        }
        if r.oracle_exhausted_cells > 0 {
            out.push_str(&format!(
                "; warning: {} cells excluded (search cap)",
                r.oracle_exhausted_cells
            ));
        }
        out.push('\n');
        out.push_str(&format!(
            "cells outside the [optimal, baseline] band: {}\n\n",
            r.off_band_cells
        ));
    }
    out
}
