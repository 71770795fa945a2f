//! Text serialization for grid states.
//!
//! ```text
//! W H
//! IO x1,y1 x2,y2 ...
//! <H rows of W glyphs>
//! ```
//!
//! Glyphs: `.` escort, `#` other item, `T` target item. Row `y` increases
//! downward, column `x` rightward. This is the fixture format used by every
//! test corpus and by the CLI.

use crate::grid::{CellKind, GridState, Position};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {kind}")]
pub struct MapError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column number.
    pub col: usize,
    pub kind: MapErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapErrorKind {
    #[error("expected `W H` header with positive integers")]
    BadHeader,
    #[error("expected `IO` line")]
    BadIoLine,
    #[error("malformed IO coordinate `{0}`")]
    BadIoCoordinate(String),
    #[error("IO position ({0}, {1}) is out of bounds")]
    IoOutOfBounds(usize, usize),
    #[error("duplicate IO position ({0}, {1})")]
    DuplicateIo(usize, usize),
    #[error("unexpected end of input: expected {0} map rows")]
    MissingRows(usize),
    #[error("row has {got} glyphs, expected {expected}")]
    RaggedRow { expected: usize, got: usize },
    #[error("bad glyph `{0}`")]
    BadGlyph(char),
    #[error("unexpected trailing content")]
    TrailingContent,
}

fn err(line: usize, col: usize, kind: MapErrorKind) -> MapError {
    MapError { line, col, kind }
}

/// Parses the map format back into a state. Inverse of [`render_map`].
pub fn parse_map(text: &str) -> Result<GridState, MapError> {
    let mut lines = text.lines().enumerate();

    let (ln, header) = lines
        .next()
        .ok_or_else(|| err(1, 1, MapErrorKind::BadHeader))?;
    let mut parts = header.split_whitespace();
    let width: usize = parts
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|&w| w > 0)
        .ok_or_else(|| err(ln + 1, 1, MapErrorKind::BadHeader))?;
    let height: usize = parts
        .next()
        .and_then(|h| h.parse().ok())
        .filter(|&h| h > 0)
        .ok_or_else(|| err(ln + 1, 1, MapErrorKind::BadHeader))?;
    if parts.next().is_some() {
        return Err(err(ln + 1, 1, MapErrorKind::BadHeader));
    }

    let (ln, io_line) = lines
        .next()
        .ok_or_else(|| err(2, 1, MapErrorKind::BadIoLine))?;
    let mut fields = io_line.split_whitespace();
    if fields.next() != Some("IO") {
        return Err(err(ln + 1, 1, MapErrorKind::BadIoLine));
    }
    let mut ios: Vec<Position> = Vec::new();
    for field in fields {
        let (x, y) = field
            .split_once(',')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| err(ln + 1, 1, MapErrorKind::BadIoCoordinate(field.to_string())))?;
        if x >= width || y >= height {
            return Err(err(ln + 1, 1, MapErrorKind::IoOutOfBounds(x, y)));
        }
        let p = Position::new(x, y);
        if ios.contains(&p) {
            return Err(err(ln + 1, 1, MapErrorKind::DuplicateIo(x, y)));
        }
        ios.push(p);
    }

    let mut cells = Vec::with_capacity(width * height);
    for row in 0..height {
        let (ln, text_row) = lines
            .next()
            .ok_or_else(|| err(3 + row, 1, MapErrorKind::MissingRows(height)))?;
        let glyphs: Vec<char> = text_row.chars().collect();
        if glyphs.len() != width {
            return Err(err(
                ln + 1,
                glyphs.len().min(width) + 1,
                MapErrorKind::RaggedRow {
                    expected: width,
                    got: glyphs.len(),
                },
            ));
        }
        for (col, ch) in glyphs.into_iter().enumerate() {
            cells.push(match ch {
                '.' => CellKind::Escort,
                '#' => CellKind::OtherItem,
                'T' => CellKind::TargetItem,
                other => return Err(err(ln + 1, col + 1, MapErrorKind::BadGlyph(other))),
            });
        }
    }

    for (ln, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(err(ln + 1, 1, MapErrorKind::TrailingContent));
        }
    }

    // Bounds and duplicates were validated above, so this cannot fail.
    Ok(GridState::new(width, height, cells, ios).expect("validated map"))
}

/// Renders a state in the map format, ending with a newline.
pub fn render_map(state: &GridState) -> String {
    let mut out = format!("{} {}\n", state.width(), state.height());
    out.push_str("IO");
    for io in state.io_positions() {
        out.push_str(&format!(" {},{}", io.x, io.y));
    }
    out.push('\n');
    for y in 0..state.height() {
        for x in 0..state.width() {
            out.push(match state.cell(Position::new(x, y)) {
                CellKind::Escort => '.',
                CellKind::OtherItem => '#',
                CellKind::TargetItem => 'T',
            });
        }
        out.push('\n');
    }
    out
}
