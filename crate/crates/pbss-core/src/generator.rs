//! Seeded random instance generation.

use crate::grid::{CellKind, GridState, Position};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parameters for one random instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub width: usize,
    pub height: usize,
    pub n_escorts: usize,
    pub n_targets: usize,
    pub io_positions: Vec<Position>,
    pub rng_seed: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("{placed} cells to place exceed the {cells}-cell grid")]
    TooManyPieces { placed: usize, cells: usize },
    #[error("{targets} targets exceed {ios} IOs")]
    TooManyTargets { targets: usize, ios: usize },
    #[error("{targets} targets do not fit outside the {ios} IO cells")]
    NoRoomOffIos { targets: usize, ios: usize },
    #[error("bad IO list: {0}")]
    BadIos(#[from] crate::grid::GridError),
}

/// Places escorts and target items uniformly at random, deterministic in
/// the seed. Targets spawn only off the IO cells (a target born on an IO
/// would be retrieved without travel); escorts may spawn anywhere,
/// including IOs. Remaining cells hold other items.
pub fn generate(spec: &GeneratorSpec) -> Result<GridState, GenerateError> {
    let cells_total = spec.width * spec.height;
    if spec.n_escorts + spec.n_targets > cells_total {
        return Err(GenerateError::TooManyPieces {
            placed: spec.n_escorts + spec.n_targets,
            cells: cells_total,
        });
    }
    if spec.n_targets > spec.io_positions.len() {
        return Err(GenerateError::TooManyTargets {
            targets: spec.n_targets,
            ios: spec.io_positions.len(),
        });
    }
    // Validate the IO list through the grid constructor early.
    GridState::new(
        spec.width,
        spec.height,
        vec![CellKind::OtherItem; cells_total],
        spec.io_positions.clone(),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let is_io = |i: usize| {
        spec.io_positions
            .contains(&Position::new(i % spec.width, i / spec.width))
    };

    let mut off_io: Vec<usize> = (0..cells_total).filter(|&i| !is_io(i)).collect();
    if spec.n_targets > off_io.len() {
        return Err(GenerateError::NoRoomOffIos {
            targets: spec.n_targets,
            ios: spec.io_positions.len(),
        });
    }
    off_io.shuffle(&mut rng);
    let mut cells = vec![CellKind::OtherItem; cells_total];
    for &i in off_io.iter().take(spec.n_targets) {
        cells[i] = CellKind::TargetItem;
    }
    let mut open: Vec<usize> = (0..cells_total)
        .filter(|&i| cells[i] == CellKind::OtherItem)
        .collect();
    open.shuffle(&mut rng);
    for &i in open.iter().take(spec.n_escorts) {
        cells[i] = CellKind::Escort;
    }

    Ok(GridState::new(
        spec.width,
        spec.height,
        cells,
        spec.io_positions.clone(),
    )?)
}
