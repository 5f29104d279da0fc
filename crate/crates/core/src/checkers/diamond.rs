//! The diamond view: the checkerboard read at 45 degrees.
//!
//! Playable square `(x, y)` becomes cell `(u, v) = ((x + y) / 2, (y - x) / 2 + k)`
//! with `k = (width - 1) / 2`, which keeps `v` nonnegative. Diagonal steps
//! become unit steps along `u` (the `x = y` diagonal) or `v` (the anti-diagonal),
//! and jumps move two cells, so both coordinate parities are invariant.

use std::collections::BTreeMap;

use crate::board::Coord;
use crate::error::CheckersError;

use super::{CheckersPosition, Color, Piece};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondBoard {
    std_width: i32,
    std_height: i32,
    k: i32,
    mover: Color,
    pieces: BTreeMap<Coord, Piece>,
}

/// Unit steps of the diamond grid: +u, -u, +v, -v.
pub const AXIS_STEPS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl DiamondBoard {
    pub fn to_cell(&self, sq: Coord) -> Coord {
        Coord::new((sq.x + sq.y) / 2, (sq.y - sq.x) / 2 + self.k)
    }

    pub fn to_square(&self, cell: Coord) -> Coord {
        Coord::new(cell.x - cell.y + self.k, cell.x + cell.y - self.k)
    }

    /// Cell exists on the board.
    pub fn is_cell(&self, cell: Coord) -> bool {
        let sq = self.to_square(cell);
        sq.x >= 0 && sq.y >= 0 && sq.x < self.std_width && sq.y < self.std_height
    }

    /// Bounding box of the cells, `(u_count, v_count)`.
    pub fn dimensions(&self) -> (i32, i32) {
        let u = (self.std_width - 1 + self.std_height - 1) / 2 + 1;
        let v = (self.std_height - 1) / 2 + self.k + 1;
        (u, v)
    }

    pub fn mover(&self) -> Color {
        self.mover
    }

    pub fn pieces(&self) -> &BTreeMap<Coord, Piece> {
        &self.pieces
    }

    pub fn piece_at(&self, cell: Coord) -> Option<Piece> {
        self.pieces.get(&cell).copied()
    }

    pub fn is_king_row(&self, color: Color, cell: Coord) -> bool {
        let y = cell.x + cell.y - self.k;
        match color {
            Color::Black => y == self.std_height - 1,
            Color::White => y == 0,
        }
    }

    /// Steps available to `piece`. Forward for Black is +u and +v; for White
    /// it is -u and -v.
    pub fn steps(piece: Piece) -> &'static [(i32, i32)] {
        match (piece.king, piece.color) {
            (true, _) => &AXIS_STEPS,
            (false, Color::Black) => &[(1, 0), (0, 1)],
            (false, Color::White) => &[(-1, 0), (0, -1)],
        }
    }
}

pub fn to_diamond(pos: &CheckersPosition) -> Result<DiamondBoard, CheckersError> {
    let mut d = DiamondBoard {
        std_width: pos.width(),
        std_height: pos.height(),
        k: (pos.width() - 1) / 2,
        mover: pos.mover(),
        pieces: BTreeMap::new(),
    };
    for (&sq, &p) in pos.pieces() {
        if (sq.x + sq.y) % 2 != 0 {
            return Err(CheckersError::LightSquare { x: sq.x, y: sq.y });
        }
        let cell = d.to_cell(sq);
        d.pieces.insert(cell, p);
    }
    Ok(d)
}

pub fn from_diamond(d: &DiamondBoard) -> CheckersPosition {
    let pieces = d.pieces.iter().map(|(&c, &p)| (d.to_square(c), p));
    CheckersPosition::new(d.std_width, d.std_height, d.mover, pieces)
        .expect("diamond cells map to playable squares")
}
