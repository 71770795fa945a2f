//! Escort demand and escort target positions.
//!
//! For each item/IO pair the route "corridor" is the axis-aligned rectangle
//! spanned by the two cells. Escorts already inside it reduce how many more
//! must be brought in; cells next to an item that bring it strictly closer
//! to one of its candidate IOs are where escorts should be routed.

use crate::assignment::{AssignmentPlan, AssignmentPlanSet};
use crate::grid::{manhattan, CellKind, GridState, Position};
use std::collections::BTreeSet;

/// Escort demand of one assignment plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscortDemand {
    /// Required escorts per item, clamped at zero, in item index order.
    pub per_item: Vec<usize>,
    /// Sum of `per_item`.
    pub total: usize,
}

/// Number of escorts inside the rectangle spanned by `a` and `b`, both
/// corner cells included.
pub fn escorts_in_rectangle(state: &GridState, a: Position, b: Position) -> usize {
    let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
    let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
    let mut count = 0;
    for y in y0..=y1 {
        for x in x0..=x1 {
            if state.cell(Position::new(x, y)) == CellKind::Escort {
                count += 1;
            }
        }
    }
    count
}

/// Escorts still needed to carry `item` to `io`: the Manhattan distance
/// minus the escorts already inside the rectangle, never negative.
pub fn required_escorts(state: &GridState, item: Position, io: Position) -> usize {
    manhattan(item, io).saturating_sub(escorts_in_rectangle(state, item, io))
}

/// Per-item and total escort demand under one plan.
pub fn plan_escort_demand(state: &GridState, plan: &AssignmentPlan) -> EscortDemand {
    let items = state.target_positions();
    let ios = state.io_positions();
    let per_item: Vec<usize> = plan
        .mapping
        .iter()
        .enumerate()
        .map(|(j, &io)| required_escorts(state, items[j], ios[io]))
        .collect();
    let total = per_item.iter().sum();
    EscortDemand { per_item, total }
}

/// Minimal total escort demand across all optimal plans.
pub fn min_required_escorts(state: &GridState, plans: &AssignmentPlanSet) -> usize {
    plans
        .plans
        .iter()
        .map(|p| plan_escort_demand(state, p).total)
        .min()
        .unwrap_or(0)
}

/// True when moving the item at `item` onto the adjacent cell `p` strictly
/// shortens its distance to `io`.
fn shortens(item: Position, p: Position, io: Position) -> bool {
    let sx = (io.x as isize - item.x as isize) * (p.x as isize - item.x as isize);
    let sy = (io.y as isize - item.y as isize) * (p.y as isize - item.y as isize);
    sx > 0 || sy > 0
}

/// Cells adjacent to a target item onto which moving that item strictly
/// shortens its distance to one of its candidate IOs (an IO assigned to it
/// in at least one optimal plan).
///
/// Cells holding another target item are excluded; cells already holding an
/// escort are included (the item-advancing swap is then available at once).
pub fn escort_target_positions(
    state: &GridState,
    plans: &AssignmentPlanSet,
) -> BTreeSet<Position> {
    let items = state.target_positions();
    let ios = state.io_positions();
    let mut targets = BTreeSet::new();
    for (j, &item) in items.iter().enumerate() {
        let candidate_ios = plans.target_ios_for(j);
        for p in state.neighbors(item) {
            if state.cell(p) == CellKind::TargetItem {
                continue;
            }
            if candidate_ios.iter().any(|&i| shortens(item, p, ios[i])) {
                targets.insert(p);
            }
        }
    }
    targets
}

/// Items for which `p` is an escort target position, with each item's
/// candidate IO indices. Shared with the distance estimator.
pub(crate) fn items_served_by(
    state: &GridState,
    plans: &AssignmentPlanSet,
    p: Position,
) -> Vec<(Position, Vec<usize>)> {
    let items = state.target_positions();
    let ios = state.io_positions();
    items
        .iter()
        .enumerate()
        .filter(|&(_, &item)| manhattan(item, p) == 1 && state.cell(p) != CellKind::TargetItem)
        .filter_map(|(j, &item)| {
            let candidate_ios = plans.target_ios_for(j);
            candidate_ios
                .iter()
                .any(|&i| shortens(item, p, ios[i]))
                .then_some((item, candidate_ios))
        })
        .collect()
}
