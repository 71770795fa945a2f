//! Golden benchmark data.
//!
//! The 9x5 corner-line layout: one IO at (0,0), k escorts lined along the
//! bottom row starting at the corner, one target item somewhere else, every
//! other cell an obstacle. The tables below carry, per escort count, the
//! known optimal step count for each item cell and the step counts a
//! baseline run of this heuristic reported on the same cells, with the
//! baseline's mean gaps. The sweep command and the acceptance suite diff
//! against them.
//!
//! Table layout: `[y][x]`, `y` growing downward exactly as rendered maps
//! do, with the IO corner at the bottom-left (x=0, y=4). Escort start
//! cells hold no item and are `None`.

use crate::generator::GeneratorSpec;
use crate::grid::{CellKind, GridState, Position};

pub const SWEEP_WIDTH: usize = 9;
pub const SWEEP_HEIGHT: usize = 5;
pub const SWEEP_MAX_ESCORTS: usize = 6;

/// The corner IO cell, in map coordinates (bottom-left).
pub const SWEEP_IO: Position = Position { x: 0, y: 4 };

/// Escort start cells for `k` escorts: the bottom row, corner outward.
pub fn sweep_escort_cells(k: usize) -> Vec<Position> {
    (0..k).map(|x| Position::new(x, SWEEP_HEIGHT - 1)).collect()
}

/// Builds the 9x5 corner-line instance with `escorts` escorts and the
/// target item at `item` (map coordinates). Panics if `item` collides with
/// an escort start cell or leaves the grid.
pub fn corner_line_instance(escorts: usize, item: Position) -> GridState {
    assert!((1..=SWEEP_MAX_ESCORTS).contains(&escorts));
    assert!(item.x < SWEEP_WIDTH && item.y < SWEEP_HEIGHT);
    let mut cells = vec![CellKind::OtherItem; SWEEP_WIDTH * SWEEP_HEIGHT];
    for p in sweep_escort_cells(escorts) {
        assert_ne!(p, item, "item cell collides with an escort start cell");
        cells[p.y * SWEEP_WIDTH + p.x] = CellKind::Escort;
    }
    cells[item.y * SWEEP_WIDTH + item.x] = CellKind::TargetItem;
    GridState::new(SWEEP_WIDTH, SWEEP_HEIGHT, cells, vec![SWEEP_IO]).unwrap()
}

/// Item cells of the `k`-escort sweep in row-major order.
pub fn sweep_item_cells(k: usize) -> Vec<Position> {
    let starts = sweep_escort_cells(k);
    (0..SWEEP_HEIGHT)
        .flat_map(|y| (0..SWEEP_WIDTH).map(move |x| Position::new(x, y)))
        .filter(|p| !starts.contains(p))
        .collect()
}

type Grid = [[Option<usize>; SWEEP_WIDTH]; SWEEP_HEIGHT];

const fn g(v: usize) -> Option<usize> {
    Some(v)
}
const N: Option<usize> = None;

/// Known optimal step counts, `[escorts - 1]` then `[y][x]`.
pub const OPTIMAL_STEPS: [Grid; SWEEP_MAX_ESCORTS] = [
    // one escort
    [
        [g(19), g(21), g(23), g(25), g(29), g(33), g(39), g(45), g(51)],
        [g(13), g(15), g(17), g(21), g(25), g(31), g(37), g(43), g(49)],
        [g(7), g(9), g(13), g(17), g(23), g(29), g(35), g(41), g(47)],
        [g(1), g(5), g(9), g(15), g(21), g(27), g(33), g(39), g(45)],
        [N, g(1), g(7), g(13), g(19), g(25), g(31), g(37), g(43)],
    ],
    // two escorts
    [
        [g(16), g(16), g(18), g(22), g(26), g(30), g(34), g(40), g(46)],
        [g(10), g(10), g(14), g(18), g(22), g(26), g(32), g(38), g(44)],
        [g(4), g(6), g(10), g(14), g(18), g(24), g(30), g(36), g(42)],
        [g(1), g(2), g(6), g(10), g(16), g(22), g(28), g(34), g(40)],
        [N, N, g(2), g(8), g(14), g(20), g(26), g(32), g(38)],
    ],
    // three escorts
    [
        [g(15), g(15), g(16), g(19), g(23), g(27), g(31), g(35), g(41)],
        [g(9), g(10), g(11), g(15), g(19), g(23), g(27), g(33), g(39)],
        [g(4), g(5), g(7), g(11), g(15), g(19), g(25), g(31), g(37)],
        [g(1), g(2), g(3), g(7), g(11), g(17), g(23), g(29), g(35)],
        [N, N, N, g(3), g(9), g(15), g(21), g(27), g(33)],
    ],
    // four escorts
    [
        [g(15), g(15), g(16), g(17), g(20), g(24), g(28), g(32), g(36)],
        [g(9), g(10), g(11), g(12), g(16), g(20), g(24), g(28), g(34)],
        [g(4), g(5), g(6), g(8), g(12), g(16), g(20), g(26), g(32)],
        [g(1), g(2), g(3), g(4), g(8), g(12), g(18), g(24), g(30)],
        [N, N, N, N, g(4), g(10), g(16), g(22), g(28)],
    ],
    // five escorts
    [
        [g(15), g(15), g(16), g(17), g(18), g(21), g(25), g(29), g(33)],
        [g(9), g(10), g(11), g(12), g(13), g(17), g(21), g(25), g(29)],
        [g(4), g(5), g(6), g(7), g(9), g(13), g(17), g(21), g(27)],
        [g(1), g(2), g(3), g(4), g(5), g(9), g(13), g(19), g(25)],
        [N, N, N, N, N, g(5), g(11), g(17), g(23)],
    ],
    // six escorts
    [
        [g(15), g(15), g(16), g(17), g(18), g(19), g(22), g(26), g(30)],
        [g(9), g(10), g(11), g(12), g(13), g(14), g(18), g(22), g(26)],
        [g(4), g(5), g(6), g(7), g(8), g(10), g(14), g(18), g(22)],
        [g(1), g(2), g(3), g(4), g(5), g(6), g(10), g(14), g(20)],
        [N, N, N, N, N, N, g(6), g(12), g(18)],
    ],
];

/// Step counts the baseline heuristic reported per cell. Equal to
/// [`OPTIMAL_STEPS`] everywhere except the cells where the baseline was
/// suboptimal.
pub const BASELINE_STEPS: [Grid; SWEEP_MAX_ESCORTS] = [
    // one escort
    [
        [g(19), g(21), g(23), g(25), g(29), g(33), g(39), g(45), g(51)],
        [g(13), g(15), g(17), g(21), g(25), g(31), g(37), g(43), g(49)],
        [g(7), g(9), g(13), g(17), g(23), g(29), g(35), g(41), g(47)],
        [g(1), g(5), g(9), g(15), g(21), g(27), g(33), g(39), g(45)],
        [N, g(1), g(7), g(13), g(19), g(25), g(31), g(37), g(43)],
    ],
    // two escorts
    [
        [g(16), g(16), g(18), g(22), g(26), g(30), g(34), g(40), g(46)],
        [g(10), g(10), g(14), g(18), g(22), g(26), g(32), g(38), g(44)],
        [g(4), g(6), g(10), g(14), g(18), g(24), g(30), g(36), g(42)],
        [g(1), g(2), g(6), g(10), g(16), g(22), g(28), g(34), g(40)],
        [N, N, g(2), g(8), g(14), g(20), g(26), g(32), g(38)],
    ],
    // three escorts
    [
        [g(15), g(15), g(17), g(19), g(23), g(27), g(31), g(36), g(41)],
        [g(9), g(11), g(11), g(15), g(19), g(23), g(27), g(33), g(39)],
        [g(4), g(5), g(7), g(11), g(15), g(19), g(25), g(31), g(37)],
        [g(1), g(2), g(3), g(7), g(11), g(17), g(23), g(29), g(35)],
        [N, N, N, g(3), g(9), g(15), g(21), g(27), g(33)],
    ],
    // four escorts
    [
        [g(15), g(15), g(16), g(18), g(20), g(24), g(28), g(32), g(38)],
        [g(9), g(11), g(12), g(12), g(16), g(20), g(24), g(28), g(34)],
        [g(4), g(5), g(6), g(8), g(12), g(16), g(20), g(26), g(32)],
        [g(1), g(2), g(3), g(4), g(8), g(12), g(18), g(24), g(30)],
        [N, N, N, N, g(4), g(10), g(16), g(22), g(28)],
    ],
    // five escorts
    [
        [g(15), g(15), g(16), g(17), g(19), g(21), g(25), g(29), g(33)],
        [g(9), g(11), g(12), g(13), g(13), g(17), g(21), g(25), g(29)],
        [g(4), g(5), g(6), g(7), g(9), g(13), g(17), g(21), g(27)],
        [g(1), g(2), g(3), g(4), g(5), g(9), g(13), g(19), g(25)],
        [N, N, N, N, N, g(5), g(11), g(17), g(23)],
    ],
    // six escorts
    [
        [g(15), g(15), g(16), g(17), g(19), g(20), g(22), g(26), g(30)],
        [g(9), g(11), g(12), g(13), g(14), g(14), g(18), g(22), g(26)],
        [g(4), g(5), g(6), g(7), g(8), g(10), g(14), g(18), g(22)],
        [g(1), g(2), g(3), g(4), g(5), g(6), g(10), g(14), g(20)],
        [N, N, N, N, N, N, g(6), g(12), g(18)],
    ],
];

/// The baseline's mean gap per escort count, in percent.
pub const BASELINE_GAPS: [f64; SWEEP_MAX_ESCORTS] = [0.0, 0.0, 0.45, 0.74, 0.82, 1.18];

/// The baseline's mean step count on the standard 9x9 multi-item suite.
pub const MULTI_SUITE_BASELINE_MEAN_STEPS: f64 = 39.0;

/// Optimal step count for one cell of the `k`-escort sweep, in map
/// coordinates.
pub fn optimal_at(k: usize, p: Position) -> Option<usize> {
    OPTIMAL_STEPS[k - 1][p.y][p.x]
}

/// Baseline heuristic step count for one cell of the `k`-escort sweep.
pub fn baseline_at(k: usize, p: Position) -> Option<usize> {
    BASELINE_STEPS[k - 1][p.y][p.x]
}

/// The standard 9x9 multi-item benchmark suite: fifteen cases over three
/// escort tiers and the published IO sets, deterministic in `seed_base`.
pub fn standard_multi_item_specs(seed_base: u64) -> Vec<(String, GeneratorSpec)> {
    let io = |x: usize, y: usize| Position::new(x, y);
    let rows: Vec<(usize, usize, Vec<Position>)> = vec![
        (9, 3, vec![io(0, 0), io(0, 8), io(8, 8)]),
        (9, 3, vec![io(0, 0), io(0, 8), io(8, 8)]),
        (9, 3, vec![io(4, 0), io(8, 8), io(0, 8)]),
        (9, 3, vec![io(4, 0), io(8, 8), io(0, 8)]),
        (9, 3, vec![io(0, 8), io(8, 8), io(8, 0)]),
        (15, 4, vec![io(0, 0), io(0, 8), io(8, 8), io(8, 0)]),
        (15, 4, vec![io(0, 0), io(0, 8), io(8, 8), io(8, 0)]),
        (15, 4, vec![io(4, 0), io(8, 4), io(4, 8), io(0, 4)]),
        (15, 4, vec![io(4, 0), io(8, 4), io(4, 8), io(0, 4)]),
        (15, 4, vec![io(0, 4), io(0, 8), io(8, 8), io(8, 4)]),
        (20, 4, vec![io(0, 0), io(8, 0), io(8, 8), io(0, 8)]),
        (20, 4, vec![io(0, 0), io(8, 0), io(8, 8), io(0, 8)]),
        (20, 4, vec![io(4, 0), io(8, 4), io(4, 8), io(0, 4)]),
        (20, 4, vec![io(4, 0), io(8, 4), io(4, 8), io(0, 4)]),
        (20, 4, vec![io(4, 0), io(8, 4), io(4, 8), io(0, 4)]),
    ];
    rows.into_iter()
        .enumerate()
        .map(|(i, (n_escorts, n_targets, io_positions))| {
            (
                format!("9-{}", i + 1),
                GeneratorSpec {
                    width: 9,
                    height: 9,
                    n_escorts,
                    n_targets,
                    io_positions,
                    rng_seed: seed_base.wrapping_add(i as u64),
                },
            )
        })
        .collect()
}
