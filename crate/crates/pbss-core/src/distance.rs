//! Estimated escort travel costs to escort target positions.
//!
//! The estimate for one escort/target pair is Manhattan distance plus two
//! corrections: a detour correction when every monotone (staircase) path is
//! cut by a target item, and a reuse correction when delivering the item
//! through that target position would leave the corridor short of escorts
//! and force the same escort to loop around.

use crate::assignment::AssignmentPlanSet;
use crate::escort::{escorts_in_rectangle, items_served_by};
use crate::grid::{in_rectangle, manhattan, CellKind, GridState, Position};
use std::collections::BTreeSet;

/// Cost breakdown for one escort/target-position pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceEstimate {
    /// Manhattan distance from escort to target position.
    pub base: usize,
    /// Detour correction: 0 or 2.
    pub detour: usize,
    /// Reuse correction: a nonnegative even number.
    pub reuse: usize,
    /// `base + detour + reuse`.
    pub total: usize,
}

/// Minimal estimated escort cost per target position, plus the overall
/// minimum used as a status index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproachCosts {
    /// `(target position, minimal estimate over all escorts)` in position
    /// order. A target position already holding an escort costs 0.
    pub per_target: Vec<(Position, usize)>,
    /// Minimum over `per_target`; `None` when there are no target
    /// positions.
    pub min_cost: Option<usize>,
}

/// Detour correction: 2 when every monotone lattice path from `escort` to
/// `tpos` is blocked by a target item (the escort's own cell never blocks),
/// otherwise 0.
pub fn detour_correction(state: &GridState, escort: Position, tpos: Position) -> usize {
    if clear_monotone_path_exists(state, escort, tpos) {
        0
    } else {
        2
    }
}

fn clear_monotone_path_exists(state: &GridState, from: Position, to: Position) -> bool {
    // Fast path: no target item inside the bounding rectangle means no
    // monotone path can be blocked.
    let any_target_inside = state
        .target_positions()
        .iter()
        .any(|&t| t != from && in_rectangle(t, from, to));
    if !any_target_inside {
        return true;
    }

    // Monotone reachability over the rectangle, stepping from `from`
    // toward `to` one axis at a time.
    let dx = to.x as isize - from.x as isize;
    let dy = to.y as isize - from.y as isize;
    let sx = dx.signum();
    let sy = dy.signum();
    let nx = dx.unsigned_abs();
    let ny = dy.unsigned_abs();

    let passable = |p: Position| p == from || state.cell(p) != CellKind::TargetItem;
    let mut reach = vec![false; (nx + 1) * (ny + 1)];
    for j in 0..=ny {
        for i in 0..=nx {
            let p = Position::new(
                (from.x as isize + sx * i as isize) as usize,
                (from.y as isize + sy * j as isize) as usize,
            );
            let r = if i == 0 && j == 0 {
                true
            } else {
                let from_left = i > 0 && reach[j * (nx + 1) + (i - 1)];
                let from_up = j > 0 && reach[(j - 1) * (nx + 1) + i];
                (from_left || from_up) && passable(p)
            };
            reach[j * (nx + 1) + i] = r;
        }
    }
    reach[ny * (nx + 1) + nx]
}

/// Escort shortfall of the corridor from `tpos` to `io`: the item headed
/// through `tpos` needs one escort use per remaining step plus one, against
/// the escorts already inside the rectangle. Negative means surplus.
pub fn escort_shortfall(state: &GridState, tpos: Position, io: Position) -> isize {
    manhattan(tpos, io) as isize - escorts_in_rectangle(state, tpos, io) as isize + 1
}

/// Unavoidable same-direction adjacent pairs in any rook walk from `a` to
/// `b`. A relay loop around a straight advance is two steps longer than
/// around a turn, so short corridors pay extra for each of these.
pub fn forced_straight_runs(a: Position, b: Position) -> usize {
    let dx = a.x.abs_diff(b.x);
    let dy = a.y.abs_diff(b.y);
    if dx.min(dy) == 0 {
        dx.max(dy).saturating_sub(1)
    } else {
        dx.abs_diff(dy).saturating_sub(1)
    }
}

/// Reuse correction for moving `escort` to `tpos`.
///
/// Only an escort already inside a `tpos -> io` corridor is at reuse risk:
/// spending it to fetch the item removes it from the corridor's stock, so
/// its shortfall is evaluated with the escort excluded. An escort arriving
/// from outside leaves the corridor stock untouched and gets no penalty.
/// Each missing escort costs one relay loop (two steps), and a loop around
/// a forced straight advance costs two more, up to one per missing escort.
/// Per served item the cheapest candidate IO counts; across served items
/// the worst case counts.
pub fn reuse_correction(
    state: &GridState,
    escort: Position,
    tpos: Position,
    plans: &AssignmentPlanSet,
) -> usize {
    let ios = state.io_positions();
    let mut worst: usize = 0;
    for (_, candidate_ios) in items_served_by(state, plans, tpos) {
        let best_for_item = candidate_ios
            .iter()
            .map(|&i| {
                let io = ios[i];
                if in_rectangle(escort, tpos, io) {
                    let short = (escort_shortfall(state, tpos, io) + 1).max(0) as usize;
                    short + forced_straight_runs(tpos, io).min(short)
                } else {
                    0
                }
            })
            .min()
            .unwrap_or(0);
        worst = worst.max(best_for_item);
    }
    2 * worst
}

/// Full estimate for one escort/target-position pair.
pub fn estimate(
    state: &GridState,
    escort: Position,
    tpos: Position,
    plans: &AssignmentPlanSet,
) -> DistanceEstimate {
    let base = manhattan(escort, tpos);
    let detour = detour_correction(state, escort, tpos);
    let reuse = reuse_correction(state, escort, tpos, plans);
    DistanceEstimate {
        base,
        detour,
        reuse,
        total: base + detour + reuse,
    }
}

/// Minimal estimated cost per escort target position. A position already
/// holding an escort reports 0; otherwise the minimum of [`estimate`] over
/// all escorts.
pub fn approach_costs(
    state: &GridState,
    targets: &BTreeSet<Position>,
    plans: &AssignmentPlanSet,
) -> ApproachCosts {
    let escorts = state.escort_positions();
    let per_target: Vec<(Position, usize)> = targets
        .iter()
        .map(|&tpos| {
            if state.cell(tpos) == CellKind::Escort {
                return (tpos, 0);
            }
            let q = escorts
                .iter()
                .map(|&e| estimate(state, e, tpos, plans).total)
                .min()
                .unwrap_or(usize::MAX);
            (tpos, q)
        })
        .collect();
    let min_cost = per_target.iter().map(|&(_, q)| q).min();
    ApproachCosts {
        per_target,
        min_cost,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::optimal_assignments;
    use crate::map::parse_map;
    use rand::prelude::*;

    #[test]
    fn one_step_path_is_clear() {
        let g = parse_map("3 1\nIO 0,0\n#.T\n").unwrap();
        assert_eq!(
            detour_correction(&g, Position::new(1, 0), Position::new(0, 0)),
            0
        );
    }

    #[test]
    fn collinear_block_forces_detour() {
        // Target item sits on the only monotone path.
        let g = parse_map("4 2\nIO 0,0\n#T#.\n####\n").unwrap();
        assert_eq!(
            detour_correction(&g, Position::new(3, 0), Position::new(0, 0)),
            2
        );
    }

    #[test]
    fn one_clear_staircase_path_suffices() {
        // Two of the three paths blocked, the third clear.
        let g = parse_map("3 2\nIO 0,0\n#T.\n#T#\n").unwrap();
        // escort (2,0) -> (0,1): paths through (1,0) and (1,1) are blocked
        // except the one hugging the bottom... enumerate: monotone moves are
        // left/down; cells (1,0),(1,1) both hold targets, so every path is
        // blocked here.
        assert_eq!(
            detour_correction(&g, Position::new(2, 0), Position::new(0, 1)),
            2
        );
        // Clear variant: free the bottom cell.
        let g = parse_map("3 2\nIO 0,0\n#T.\n###\n").unwrap();
        assert_eq!(
            detour_correction(&g, Position::new(2, 0), Position::new(0, 1)),
            0
        );
    }

    #[test]
    fn own_cell_never_blocks() {
        let g = parse_map("2 1\nIO 0,0\n#.\n").unwrap();
        assert_eq!(
            detour_correction(&g, Position::new(1, 0), Position::new(0, 0)),
            0
        );
    }

    /// Exhaustive path enumeration is the reference for the reachability
    /// DP on every offset with |dx| + |dy| <= 8.
    #[test]
    fn detour_matches_exhaustive_path_enumeration() {
        fn all_paths_blocked(
            state: &GridState,
            from: Position,
            to: Position,
        ) -> bool {
            // enumerate every monotone path recursively
            fn walk(state: &GridState, at: Position, from: Position, to: Position) -> bool {
                if at != from && state.cell(at) == CellKind::TargetItem {
                    return false;
                }
                if at == to {
                    return true;
                }
                let mut any = false;
                if at.x != to.x {
                    let nx = if to.x > at.x { at.x + 1 } else { at.x - 1 };
                    any |= walk(state, Position::new(nx, at.y), from, to);
                }
                if !any && at.y != to.y {
                    let ny = if to.y > at.y { at.y + 1 } else { at.y - 1 };
                    any |= walk(state, Position::new(at.x, ny), from, to);
                }
                any
            }
            !walk(state, from, from, to)
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..300 {
            let width = rng.gen_range(2..9);
            let height = rng.gen_range(2..9);
            let cells: Vec<CellKind> = (0..width * height)
                .map(|_| {
                    if rng.gen_bool(0.25) {
                        CellKind::TargetItem
                    } else {
                        CellKind::OtherItem
                    }
                })
                .collect();
            let g = GridState::new(width, height, cells, vec![]).unwrap();
            let from = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            let to = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            if manhattan(from, to) > 8 {
                continue;
            }
            let expected = if all_paths_blocked(&g, from, to) { 2 } else { 0 };
            assert_eq!(detour_correction(&g, from, to), expected, "{from} -> {to}");
        }
    }

    #[test]
    fn detour_is_zero_without_targets_in_rectangle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..100 {
            let width = 6;
            let height = 6;
            let cells: Vec<CellKind> = (0..width * height)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        CellKind::TargetItem
                    } else {
                        CellKind::OtherItem
                    }
                })
                .collect();
            let g = GridState::new(width, height, cells, vec![]).unwrap();
            let from = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            let to = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            let target_inside = g
                .target_positions()
                .iter()
                .any(|&t| t != from && in_rectangle(t, from, to));
            if !target_inside {
                assert_eq!(detour_correction(&g, from, to), 0);
            }
        }
    }

    #[test]
    fn shortfall_counts_corridor_stock() {
        // distance 4 corridor holding 4 escorts: one short.
        let g = parse_map("5 2\nIO 0,0\n..#..\n#####\n").unwrap();
        assert_eq!(
            escort_shortfall(&g, Position::new(4, 0), Position::new(0, 0)),
            1
        );
        // target position on an empty IO: distance 0, one escort, surplus.
        let g = parse_map("2 1\nIO 0,0\n.T\n").unwrap();
        assert_eq!(
            escort_shortfall(&g, Position::new(0, 0), Position::new(0, 0)),
            0
        );
    }

    #[test]
    fn shortfall_matches_direct_recount() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let width = 6;
            let height = 5;
            let cells: Vec<CellKind> = (0..width * height)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        CellKind::Escort
                    } else {
                        CellKind::OtherItem
                    }
                })
                .collect();
            let g = GridState::new(width, height, cells, vec![Position::new(0, 0)]).unwrap();
            let t = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            let io = Position::new(0, 0);
            let scan = g
                .positions()
                .filter(|&p| g.cell(p) == CellKind::Escort && in_rectangle(p, t, io))
                .count();
            assert_eq!(
                escort_shortfall(&g, t, io),
                manhattan(t, io) as isize - scan as isize + 1
            );
        }
    }

    /// The two-escort setup behind the reuse rule: the adjacent escort
    /// inside the corridor must be penalized past the farther escort
    /// outside it, or the solver routes the wrong one.
    #[test]
    fn corridor_escort_is_penalized_outsider_is_not() {
        // IO (0,0), item (2,0), target position (1,0); escort E on the IO
        // (inside the corridor), escort D behind the item (outside).
        let g = parse_map("4 4\nIO 0,0\n.#T.\n####\n####\n####\n").unwrap();
        let plans = optimal_assignments(&g).unwrap();
        let tpos = Position::new(1, 0);
        let e = Position::new(0, 0);
        let d = Position::new(3, 0);

        // corridor {(0,0),(1,0)}: distance 1, stock 1; E excluded -> short 2.
        assert_eq!(reuse_correction(&g, e, tpos, &plans), 4);
        let ce = estimate(&g, e, tpos, &plans);
        assert_eq!((ce.base, ce.detour, ce.reuse, ce.total), (1, 0, 4, 5));

        // D approaches from outside: no reuse penalty; its straight path is
        // cut by the item, so the detour fires instead.
        assert_eq!(reuse_correction(&g, d, tpos, &plans), 0);
        let cd = estimate(&g, d, tpos, &plans);
        assert_eq!((cd.base, cd.detour, cd.reuse, cd.total), (2, 2, 0, 4));
    }

    #[test]
    fn shortfall_one_costs_one_loop() {
        // IO (0,0), item (2,1), target position (1,1); the corridor
        // {(0,0)..(1,1)} holds three escorts, one short of the four uses
        // once the chosen escort is spent reaching the target position.
        let g = parse_map("4 3\nIO 0,0\n..##\n.#T#\n####\n").unwrap();
        let plans = optimal_assignments(&g).unwrap();
        let e = Position::new(0, 0);
        assert_eq!(escort_shortfall(&g, Position::new(1, 1), Position::new(0, 0)), 0);
        assert_eq!(reuse_correction(&g, e, Position::new(1, 1), &plans), 2);
    }

    #[test]
    fn surplus_corridor_has_no_reuse_penalty() {
        // Five escorts inside the (2,1)->(0,0) corridor against four uses:
        // surplus even after spending the chosen one.
        let g = parse_map("4 3\nIO 0,0\n...#\n..#T\n####\n").unwrap();
        let plans = optimal_assignments(&g).unwrap();
        for e in g.escort_positions() {
            assert_eq!(reuse_correction(&g, e, Position::new(2, 1), &plans), 0);
        }
    }

    #[test]
    fn estimate_never_undercuts_manhattan() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let g = random_state(&mut rng);
            let plans = match optimal_assignments(&g) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let targets = crate::escort::escort_target_positions(&g, &plans);
            for e in g.escort_positions() {
                for &t in &targets {
                    let est = estimate(&g, e, t, &plans);
                    assert!(est.total >= manhattan(e, t));
                    assert!(est.detour == 0 || est.detour == 2);
                    assert_eq!(est.reuse % 2, 0);
                    assert_eq!(est.total, est.base + est.detour + est.reuse);
                }
            }
        }
    }

    #[test]
    fn escort_standing_on_target_position_costs_zero() {
        let g = parse_map("3 1\nIO 0,0\n#.T\n").unwrap();
        let plans = optimal_assignments(&g).unwrap();
        let targets = crate::escort::escort_target_positions(&g, &plans);
        let costs = approach_costs(&g, &targets, &plans);
        assert_eq!(costs.min_cost, Some(0));
    }

    #[test]
    fn no_target_positions_yield_no_minimum() {
        let g = parse_map("2 1\nIO 0,0\n..\n").unwrap();
        let plans = optimal_assignments(&g).unwrap();
        let targets = crate::escort::escort_target_positions(&g, &plans);
        assert!(targets.is_empty());
        assert_eq!(approach_costs(&g, &targets, &plans).min_cost, None);
    }

    fn random_state(rng: &mut impl Rng) -> GridState {
        let width = rng.gen_range(3..7);
        let height = rng.gen_range(3..7);
        let cells: Vec<CellKind> = (0..width * height)
            .map(|_| match rng.gen_range(0..8) {
                0 => CellKind::TargetItem,
                1 | 2 | 3 => CellKind::Escort,
                _ => CellKind::OtherItem,
            })
            .collect();
        let mut ios = Vec::new();
        while ios.len() < 3 {
            let p = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            if !ios.contains(&p) {
                ios.push(p);
            }
        }
        GridState::new(width, height, cells, ios).unwrap()
    }

    /// The per-target minima must equal the column minima of the fully
    /// materialized escort-by-target matrix.
    #[test]
    fn per_target_minima_match_full_matrix() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for _ in 0..150 {
            let g = random_state(&mut rng);
            let plans = match optimal_assignments(&g) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let targets = crate::escort::escort_target_positions(&g, &plans);
            let got = approach_costs(&g, &targets, &plans);

            let escorts = g.escort_positions();
            let matrix: Vec<Vec<usize>> = escorts
                .iter()
                .map(|&e| {
                    targets
                        .iter()
                        .map(|&t| estimate(&g, e, t, &plans).total)
                        .collect()
                })
                .collect();
            let expected: Vec<(Position, usize)> = targets
                .iter()
                .enumerate()
                .map(|(j, &t)| {
                    if g.cell(t) == CellKind::Escort {
                        (t, 0)
                    } else {
                        (
                            t,
                            matrix
                                .iter()
                                .map(|row| row[j])
                                .min()
                                .unwrap_or(usize::MAX),
                        )
                    }
                })
                .collect();
            assert_eq!(got.per_target, expected);
            assert_eq!(got.min_cost, expected.iter().map(|&(_, q)| q).min());
        }
    }
}
