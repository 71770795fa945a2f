//! Optimal distribution of IOs to target items.
//!
//! Every remaining target item is matched with a distinct IO so that the
//! summed Manhattan distance is minimal. All minimizing assignments are
//! kept: an item may have several candidate IOs and later analysis uses the
//! whole set.

use crate::grid::{manhattan, GridState};
use crate::solver::SolveError;
use serde::{Deserialize, Serialize};

/// An injective map from item index (row-major order of remaining target
/// items) to IO index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AssignmentPlan {
    pub mapping: Vec<usize>,
}

impl AssignmentPlan {
    /// IO index assigned to item `item`.
    pub fn io_for(&self, item: usize) -> usize {
        self.mapping[item]
    }
}

/// All distance-minimizing assignments for a state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentPlanSet {
    /// The minimal total item-to-IO Manhattan distance.
    pub total_distance: usize,
    /// Every minimizing plan, in lexicographic order of `mapping`.
    pub plans: Vec<AssignmentPlan>,
}

impl AssignmentPlanSet {
    pub fn plan_count(&self) -> usize {
        self.plans.len()
    }

    /// IO indices assigned to `item` across all optimal plans, deduplicated
    /// and sorted.
    pub fn target_ios_for(&self, item: usize) -> Vec<usize> {
        let mut ios: Vec<usize> = self.plans.iter().map(|p| p.io_for(item)).collect();
        ios.sort_unstable();
        ios.dedup();
        ios
    }
}

/// Total Manhattan distance of one plan.
pub fn plan_distance(state: &GridState, plan: &AssignmentPlan) -> Result<usize, SolveError> {
    let items = state.target_positions();
    let ios = state.io_positions();
    if plan.mapping.len() != items.len() {
        return Err(SolveError::InvalidPlan {
            items: items.len(),
            mapped: plan.mapping.len(),
        });
    }
    let mut total = 0;
    for (j, &io_idx) in plan.mapping.iter().enumerate() {
        let io = *ios.get(io_idx).ok_or(SolveError::InvalidPlan {
            items: items.len(),
            mapped: io_idx,
        })?;
        total += manhattan(items[j], io);
    }
    Ok(total)
}

/// Enumerates every injective item-to-IO assignment and returns the minimal
/// total distance together with the complete set of minimizing plans.
///
/// With zero items the result is distance 0 and a single empty plan. More
/// items than IOs is infeasible.
pub fn optimal_assignments(state: &GridState) -> Result<AssignmentPlanSet, SolveError> {
    let items = state.target_positions();
    let ios = state.io_positions();
    if items.len() > ios.len() {
        return Err(SolveError::Infeasible {
            items: items.len(),
            ios: ios.len(),
        });
    }

    let dist: Vec<Vec<usize>> = items
        .iter()
        .map(|&m| ios.iter().map(|&io| manhattan(m, io)).collect())
        .collect();

    let mut best = usize::MAX;
    let mut plans: Vec<AssignmentPlan> = Vec::new();
    let mut used = vec![false; ios.len()];
    let mut current = Vec::with_capacity(items.len());

    // Depth-first over io choices per item; visits mappings in
    // lexicographic order, so tied plans come out already sorted.
    fn recurse(
        item: usize,
        running: usize,
        dist: &[Vec<usize>],
        used: &mut [bool],
        current: &mut Vec<usize>,
        best: &mut usize,
        plans: &mut Vec<AssignmentPlan>,
    ) {
        if running > *best {
            return;
        }
        if item == dist.len() {
            if running < *best {
                *best = running;
                plans.clear();
            }
            plans.push(AssignmentPlan {
                mapping: current.clone(),
            });
            return;
        }
        for io in 0..used.len() {
            if used[io] {
                continue;
            }
            used[io] = true;
            current.push(io);
            recurse(item + 1, running + dist[item][io], dist, used, current, best, plans);
            current.pop();
            used[io] = false;
        }
    }

    recurse(0, 0, &dist, &mut used, &mut current, &mut best, &mut plans);
    let total_distance = if best == usize::MAX { 0 } else { best };
    Ok(AssignmentPlanSet {
        total_distance,
        plans,
    })
}
