//! Exact minimal step counts by best-first search, and the gap metric.

use crate::grid::{manhattan, GridState};
use crate::solver::SolveError;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

/// Resource caps for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Maximum number of states expanded (popped and branched on).
    pub max_expanded_states: usize,
    /// Maximum search depth in actions.
    pub max_depth: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_expanded_states: 2_000_000,
            max_depth: 4096,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Proven minimal number of actions.
    Optimal(usize),
    /// A limit was hit before the search finished; no bound is reported.
    Exhausted,
    /// The whole reachable space was searched and no goal exists.
    Unsolvable,
}

impl OracleOutcome {
    pub fn optimal(&self) -> Option<usize> {
        match self {
            OracleOutcome::Optimal(n) => Some(*n),
            _ => None,
        }
    }
}

/// Admissible lower bound: every target still needs at least its distance
/// to the nearest IO, IOs shared freely, and one action moves one item one
/// cell at most.
fn lower_bound(state: &GridState) -> usize {
    let ios = state.io_positions();
    state
        .target_positions()
        .iter()
        .map(|&m| ios.iter().map(|&io| manhattan(m, io)).min().unwrap_or(0))
        .sum()
}

/// Exact minimal action count to retrieve every target item, by best-first
/// search with duplicate detection on the canonical encoding. Answers are
/// either exact or explicitly exhausted; the search never degrades to an
/// approximation.
pub fn optimal_steps(initial: &GridState, limits: &OracleLimits) -> Result<OracleOutcome, SolveError> {
    if initial.target_count() > initial.io_positions().len() {
        return Err(SolveError::Infeasible {
            items: initial.target_count(),
            ios: initial.io_positions().len(),
        });
    }
    if initial.is_solved() {
        return Ok(OracleOutcome::Optimal(0));
    }

    let mut best_g: HashMap<Vec<u8>, usize> = HashMap::new();
    // Ordered by f ascending, then deeper g first.
    let mut open: BinaryHeap<(Reverse<usize>, usize, usize)> = BinaryHeap::new();
    let mut arena: Vec<GridState> = Vec::new();

    best_g.insert(initial.canonical_key(), 0);
    arena.push(initial.clone());
    open.push((Reverse(lower_bound(initial)), 0, 0));

    let mut expanded = 0usize;
    while let Some((Reverse(_), g, idx)) = open.pop() {
        let state = arena[idx].clone();
        let key = state.canonical_key();
        if best_g.get(&key) != Some(&g) {
            continue; // stale entry
        }
        if state.is_solved() {
            return Ok(OracleOutcome::Optimal(g));
        }
        if expanded >= limits.max_expanded_states {
            return Ok(OracleOutcome::Exhausted);
        }
        expanded += 1;
        if g >= limits.max_depth {
            continue;
        }
        for action in state.legal_actions() {
            let next = state.apply(action)?;
            let next_g = g + 1;
            let next_key = next.canonical_key();
            match best_g.get(&next_key) {
                Some(&seen) if seen <= next_g => continue,
                _ => {}
            }
            best_g.insert(next_key, next_g);
            let f = next_g + lower_bound(&next);
            arena.push(next);
            open.push((Reverse(f), next_g, arena.len() - 1));
        }
    }
    Ok(OracleOutcome::Unsolvable)
}

/// Mean relative step excess in percent over a set of
/// `(heuristic, optimal)` pairs. Every optimal count must be positive and
/// no heuristic count may undercut it.
pub fn gap(pairs: &[(usize, usize)]) -> Result<f64, SolveError> {
    gap_of_means(&pairs
        .iter()
        .map(|&(h, o)| (h as f64, o))
        .collect::<Vec<_>>())
}

/// Same as [`gap`] but heuristic counts may be means over repeated runs.
pub fn gap_of_means(pairs: &[(f64, usize)]) -> Result<f64, SolveError> {
    if pairs.is_empty() {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for &(h, o) in pairs {
        if o == 0 || h < o as f64 {
            return Err(SolveError::BadGapPair {
                heuristic: h as usize,
                optimal: o,
            });
        }
        sum += 100.0 * (h - o as f64) / o as f64;
    }
    Ok(sum / pairs.len() as f64)
}
