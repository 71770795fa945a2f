//! The storage grid: cells, escort moves, and retrieval semantics.
//!
//! A PBSS map is a dense rectangle where every cell holds a unit load or is
//! empty (an escort). Loads travel by swapping with an adjacent escort; a
//! target item that lands on an IO cell is retrieved and leaves an escort
//! behind.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A cell coordinate. `x` is the column, `y` the row; the origin is the
/// top-left corner of the rendered map and `y` grows downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub x: usize,
    pub y: usize,
}

impl Position {
    pub fn new(x: usize, y: usize) -> Self {
        Position { x, y }
    }
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Manhattan distance between two cells.
pub fn manhattan(a: Position, b: Position) -> usize {
    a.x.abs_diff(b.x) + a.y.abs_diff(b.y)
}

/// True when `p` lies inside the axis-aligned rectangle spanned by `a` and
/// `b`, both corners included.
pub fn in_rectangle(p: Position, a: Position, b: Position) -> bool {
    let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
    let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
    (x0..=x1).contains(&p.x) && (y0..=y1).contains(&p.y)
}

/// What a cell holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellKind {
    /// A load that must be delivered to an IO.
    TargetItem,
    /// A load that is in the way but never delivered.
    OtherItem,
    /// An empty cell.
    Escort,
}

impl CellKind {
    fn code(self) -> u8 {
        match self {
            CellKind::TargetItem => 0,
            CellKind::OtherItem => 1,
            CellKind::Escort => 2,
        }
    }
}

/// One escort move: the escort at `escort_from` swaps with the load at the
/// 4-adjacent cell `escort_to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveAction {
    pub escort_from: Position,
    pub escort_to: Position,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("grid dimensions {width}x{height} do not match {cells} cells")]
    DimensionMismatch {
        width: usize,
        height: usize,
        cells: usize,
    },
    #[error("IO position {0} is out of bounds")]
    IoOutOfBounds(Position),
    #[error("duplicate IO position {0}")]
    DuplicateIo(Position),
    #[error("illegal action {from} -> {to}: {why}")]
    IllegalAction {
        from: Position,
        to: Position,
        why: &'static str,
    },
}

/// Neighbor offsets in the fixed evaluation order: up, down, left, right.
const DIRECTIONS: [(isize, isize); 4] = [(0, -1), (0, 1), (-1, 0), (1, 0)];

/// An immutable snapshot of the warehouse. All operations that change the
/// grid return a new value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridState {
    width: usize,
    height: usize,
    cells: Vec<CellKind>,
    ios: Vec<Position>,
    retrieved: usize,
}

impl GridState {
    /// Builds a state from row-major cells and an ordered IO list.
    pub fn new(
        width: usize,
        height: usize,
        cells: Vec<CellKind>,
        ios: Vec<Position>,
    ) -> Result<Self, GridError> {
        if width == 0 || height == 0 || cells.len() != width * height {
            return Err(GridError::DimensionMismatch {
                width,
                height,
                cells: cells.len(),
            });
        }
        for (i, &io) in ios.iter().enumerate() {
            if io.x >= width || io.y >= height {
                return Err(GridError::IoOutOfBounds(io));
            }
            if ios[..i].contains(&io) {
                return Err(GridError::DuplicateIo(io));
            }
        }
        Ok(GridState {
            width,
            height,
            cells,
            ios,
            retrieved: 0,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Count of target items retrieved so far.
    pub fn retrieved(&self) -> usize {
        self.retrieved
    }

    pub fn io_positions(&self) -> &[Position] {
        &self.ios
    }

    pub fn is_io(&self, p: Position) -> bool {
        self.ios.contains(&p)
    }

    pub fn in_bounds(&self, p: Position) -> bool {
        p.x < self.width && p.y < self.height
    }

    fn index(&self, p: Position) -> usize {
        p.y * self.width + p.x
    }

    pub fn cell(&self, p: Position) -> CellKind {
        self.cells[self.index(p)]
    }

    /// All cell positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.height).flat_map(move |y| (0..self.width).map(move |x| Position::new(x, y)))
    }

    fn positions_of(&self, kind: CellKind) -> Vec<Position> {
        self.positions().filter(|&p| self.cell(p) == kind).collect()
    }

    /// Remaining target item positions in row-major order. This ordering is
    /// the item index space used by assignment plans.
    pub fn target_positions(&self) -> Vec<Position> {
        self.positions_of(CellKind::TargetItem)
    }

    pub fn escort_positions(&self) -> Vec<Position> {
        self.positions_of(CellKind::Escort)
    }

    pub fn target_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|&&c| c == CellKind::TargetItem)
            .count()
    }

    pub fn escort_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == CellKind::Escort).count()
    }

    pub fn other_count(&self) -> usize {
        self.cells
            .iter()
            .filter(|&&c| c == CellKind::OtherItem)
            .count()
    }

    /// True once every target item has been retrieved.
    pub fn is_solved(&self) -> bool {
        self.target_count() == 0
    }

    /// In-bounds 4-neighbors of `p` in up, down, left, right order.
    pub fn neighbors(&self, p: Position) -> impl Iterator<Item = Position> + '_ {
        DIRECTIONS.iter().filter_map(move |&(dx, dy)| {
            let x = p.x.checked_add_signed(dx)?;
            let y = p.y.checked_add_signed(dy)?;
            let q = Position::new(x, y);
            self.in_bounds(q).then_some(q)
        })
    }

    /// Every legal escort move: an escort swapping with an adjacent load.
    /// Escort-to-escort pairs are not moves (nothing would change).
    ///
    /// The order is deterministic: row-major by the escort cell, then
    /// up, down, left, right.
    pub fn legal_actions(&self) -> Vec<MoveAction> {
        let mut actions = Vec::new();
        for from in self.positions() {
            if self.cell(from) != CellKind::Escort {
                continue;
            }
            for to in self.neighbors(from) {
                if self.cell(to) != CellKind::Escort {
                    actions.push(MoveAction {
                        escort_from: from,
                        escort_to: to,
                    });
                }
            }
        }
        actions
    }

    /// Applies one escort move: swaps the two cells, then retrieves any
    /// target item now sitting on an IO (the cell becomes an escort and the
    /// retrieval tally goes up).
    pub fn apply(&self, action: MoveAction) -> Result<GridState, GridError> {
        let MoveAction {
            escort_from: from,
            escort_to: to,
        } = action;
        if !self.in_bounds(from) || !self.in_bounds(to) {
            return Err(GridError::IllegalAction {
                from,
                to,
                why: "out of bounds",
            });
        }
        if manhattan(from, to) != 1 {
            return Err(GridError::IllegalAction {
                from,
                to,
                why: "cells are not 4-adjacent",
            });
        }
        if self.cell(from) != CellKind::Escort {
            return Err(GridError::IllegalAction {
                from,
                to,
                why: "source does not hold an escort",
            });
        }
        if self.cell(to) == CellKind::Escort {
            return Err(GridError::IllegalAction {
                from,
                to,
                why: "destination holds an escort",
            });
        }

        let mut next = self.clone();
        let (i, j) = (self.index(from), self.index(to));
        next.cells.swap(i, j);
        for k in 0..next.ios.len() {
            let io = next.ios[k];
            let idx = next.index(io);
            if next.cells[idx] == CellKind::TargetItem {
                next.cells[idx] = CellKind::Escort;
                next.retrieved += 1;
            }
        }
        Ok(next)
    }

    /// Canonical byte encoding: row-major cell codes with the retrieval
    /// tally appended. Duplicate detection in the oracle and the solver's
    /// cycle memory both key on this.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(self.cells.len() + 8);
        key.extend(self.cells.iter().map(|c| c.code()));
        key.extend(self.retrieved.to_le_bytes());
        key
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_from(rows: &[&str], ios: &[(usize, usize)]) -> GridState {
        let height = rows.len();
        let width = rows[0].len();
        let cells = rows
            .iter()
            .flat_map(|r| r.chars())
            .map(|ch| match ch {
                'T' => CellKind::TargetItem,
                '#' => CellKind::OtherItem,
                '.' => CellKind::Escort,
                _ => panic!("bad glyph {ch}"),
            })
            .collect();
        let ios = ios.iter().map(|&(x, y)| Position::new(x, y)).collect();
        GridState::new(width, height, cells, ios).unwrap()
    }

    #[test]
    fn manhattan_basics() {
        assert_eq!(manhattan(Position::new(0, 0), Position::new(0, 0)), 0);
        assert_eq!(manhattan(Position::new(1, 0), Position::new(0, 0)), 1);
        // Distance-3 item/IO pair used throughout the escort-demand tests.
        assert_eq!(manhattan(Position::new(2, 1), Position::new(0, 0)), 3);
    }

    #[test]
    fn no_actions_on_single_cell_grid() {
        let g = grid_from(&["."], &[]);
        assert!(g.legal_actions().is_empty());
    }

    #[test]
    fn single_swap_on_1x2_grid() {
        let g = grid_from(&[".#"], &[]);
        let actions = g.legal_actions();
        assert_eq!(actions.len(), 1);
        assert_eq!(
            actions[0],
            MoveAction {
                escort_from: Position::new(0, 0),
                escort_to: Position::new(1, 0),
            }
        );
    }

    #[test]
    fn central_escort_has_four_actions_in_fixed_order() {
        // One escort surrounded by loads on a 4x4 board: exactly four
        // adjacent statuses, in up/down/left/right order.
        let g = grid_from(&["####", "#.##", "####", "####"], &[]);
        let actions = g.legal_actions();
        let from = Position::new(1, 1);
        let to: Vec<Position> = actions.iter().map(|a| a.escort_to).collect();
        assert_eq!(actions.len(), 4);
        assert!(actions.iter().all(|a| a.escort_from == from));
        assert_eq!(
            to,
            vec![
                Position::new(1, 0),
                Position::new(1, 2),
                Position::new(0, 1),
                Position::new(2, 1),
            ]
        );
    }

    #[test]
    fn apply_swaps_contents() {
        let g = grid_from(&[".#"], &[]);
        let next = g.apply(g.legal_actions()[0]).unwrap();
        assert_eq!(next.cell(Position::new(0, 0)), CellKind::OtherItem);
        assert_eq!(next.cell(Position::new(1, 0)), CellKind::Escort);
        assert_eq!(next.retrieved(), 0);
    }

    #[test]
    fn target_reaching_io_is_retrieved_and_leaves_escort() {
        // Escort sits on the IO; pulling the adjacent target onto it
        // retrieves the item and leaves two escorts.
        let g = grid_from(&[".T"], &[(0, 0)]);
        let next = g
            .apply(MoveAction {
                escort_from: Position::new(0, 0),
                escort_to: Position::new(1, 0),
            })
            .unwrap();
        assert_eq!(next.cell(Position::new(0, 0)), CellKind::Escort);
        assert_eq!(next.cell(Position::new(1, 0)), CellKind::Escort);
        assert_eq!(next.retrieved(), 1);
        assert!(next.is_solved());
    }

    #[test]
    fn illegal_actions_are_rejected() {
        let g = grid_from(&[".#T"], &[]);
        let err = g
            .apply(MoveAction {
                escort_from: Position::new(0, 0),
                escort_to: Position::new(2, 0),
            })
            .unwrap_err();
        assert!(matches!(err, GridError::IllegalAction { .. }));
        // escort-to-escort
        let g = grid_from(&["..#"], &[]);
        assert!(g
            .apply(MoveAction {
                escort_from: Position::new(0, 0),
                escort_to: Position::new(1, 0),
            })
            .is_err());
        // source not an escort
        assert!(g
            .apply(MoveAction {
                escort_from: Position::new(2, 0),
                escort_to: Position::new(1, 0),
            })
            .is_err());
    }

    #[test]
    fn duplicate_or_out_of_bounds_ios_rejected() {
        let cells = vec![CellKind::Escort; 4];
        assert!(matches!(
            GridState::new(2, 2, cells.clone(), vec![Position::new(5, 0)]),
            Err(GridError::IoOutOfBounds(_))
        ));
        assert!(matches!(
            GridState::new(
                2,
                2,
                cells,
                vec![Position::new(0, 0), Position::new(0, 0)]
            ),
            Err(GridError::DuplicateIo(_))
        ));
    }

    #[test]
    fn conservation_swap_locality_and_reversibility() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let width = rng.gen_range(2..6);
            let height = rng.gen_range(2..6);
            let io = Position::new(rng.gen_range(0..width), rng.gen_range(0..height));
            let cells: Vec<CellKind> = (0..width * height)
                .map(|i| match rng.gen_range(0..5) {
                    // a target born on the IO would retire on the first
                    // sweep; start from settled states
                    0 if Position::new(i % width, i / width) != io => CellKind::TargetItem,
                    1 | 2 => CellKind::Escort,
                    _ => CellKind::OtherItem,
                })
                .collect();
            let g = GridState::new(width, height, cells, vec![io]).unwrap();
            let actions = g.legal_actions();
            if actions.is_empty() {
                continue;
            }
            let a = actions[rng.gen_range(0..actions.len())];
            let next = g.apply(a).unwrap();

            // Conservation laws.
            assert_eq!(
                next.target_count() + next.retrieved(),
                g.target_count() + g.retrieved()
            );
            assert_eq!(next.other_count(), g.other_count());
            assert_eq!(
                next.escort_count() - next.retrieved(),
                g.escort_count() - g.retrieved()
            );

            if next.retrieved() == g.retrieved() {
                // Swap locality: exactly two cells differ.
                let diff = g
                    .positions()
                    .filter(|&p| g.cell(p) != next.cell(p))
                    .count();
                assert_eq!(diff, 2);
                // Reversibility: the mirrored action restores the state.
                let back = next
                    .apply(MoveAction {
                        escort_from: a.escort_to,
                        escort_to: a.escort_from,
                    })
                    .unwrap();
                assert_eq!(back, g);
            }

            // Every advertised action satisfies apply's precondition.
            for &a in &actions {
                assert!(g.apply(a).is_ok());
            }
        }
    }

    #[test]
    fn canonical_key_distinguishes_retrieval_tally() {
        let g = grid_from(&[".T"], &[(0, 0)]);
        let solved = g
            .apply(MoveAction {
                escort_from: Position::new(0, 0),
                escort_to: Position::new(1, 0),
            })
            .unwrap();
        let twin = grid_from(&[".."], &[(0, 0)]);
        assert_ne!(solved.canonical_key(), twin.canonical_key());
        assert_eq!(solved.canonical_key().len(), twin.canonical_key().len());
    }
}
