//! Single-move analysis for Checkers: can a man king, and can one move jump
//! every opposing piece?
//!
//! Positions use ordinary board coordinates: `x` is the file, `y` the rank,
//! playable squares have `x + y` even, Black moves towards `y = height - 1`
//! and White towards `y = 0`. The analysis itself runs on the diamond view
//! ([`diamond`]), where diagonal moves become orthogonal.

pub mod analyzer;
pub mod diamond;
pub mod graph;
pub mod oracle;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;

use crate::board::Coord;
use crate::error::CheckersError;

pub use analyzer::{
    can_king, has_one_move_win, AnalyzerRegistry, BruteForce, JumpGraphAnalyzer, KingVerdict,
    MoveAnalyzer, PieceDiagnostic, WinVerdict,
};
pub use diamond::{from_diamond, to_diamond, DiamondBoard};
pub use graph::{build_jump_graph, JumpGraph, Vertex};
pub use oracle::brute_force_oracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opponent(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    /// Rank change of a forward move.
    pub fn forward(self) -> i32 {
        match self {
            Color::Black => 1,
            Color::White => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Black => "black",
            Color::White => "white",
        }
    }

    pub fn parse(s: &str) -> Option<Color> {
        match s {
            "black" | "b" => Some(Color::Black),
            "white" | "w" => Some(Color::White),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub color: Color,
    pub king: bool,
}

impl Piece {
    fn glyph(self) -> char {
        match (self.color, self.king) {
            (Color::Black, false) => 'b',
            (Color::Black, true) => 'B',
            (Color::White, false) => 'w',
            (Color::White, true) => 'W',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckersPosition {
    width: i32,
    height: i32,
    pieces: BTreeMap<Coord, Piece>,
    mover: Color,
}

impl CheckersPosition {
    /// Pieces must sit on playable squares, and men may not stand on their
    /// own king row.
    pub fn new(
        width: i32,
        height: i32,
        mover: Color,
        pieces: impl IntoIterator<Item = (Coord, Piece)>,
    ) -> Result<Self, CheckersError> {
        if width < 2 || height < 2 {
            return Err(CheckersError::Parse {
                line: 1,
                column: 1,
                message: format!("bad size {width}x{height}"),
            });
        }
        let pos = CheckersPosition {
            width,
            height,
            pieces: pieces.into_iter().collect(),
            mover,
        };
        for (&c, &p) in &pos.pieces {
            if !pos.on_board(c) {
                return Err(CheckersError::PieceNotFound { x: c.x, y: c.y });
            }
            if (c.x + c.y) % 2 != 0 {
                return Err(CheckersError::LightSquare { x: c.x, y: c.y });
            }
            if !p.king && pos.is_king_row(p.color, c) {
                return Err(CheckersError::AlreadyKing { x: c.x, y: c.y });
            }
        }
        Ok(pos)
    }

    /// Standard 8x8 board with nothing on it.
    pub fn empty_standard(mover: Color) -> Self {
        CheckersPosition {
            width: 8,
            height: 8,
            pieces: BTreeMap::new(),
            mover,
        }
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn mover(&self) -> Color {
        self.mover
    }

    pub fn pieces(&self) -> &BTreeMap<Coord, Piece> {
        &self.pieces
    }

    pub fn piece_at(&self, c: Coord) -> Option<Piece> {
        self.pieces.get(&c).copied()
    }

    pub fn on_board(&self, c: Coord) -> bool {
        c.x >= 0 && c.y >= 0 && c.x < self.width && c.y < self.height
    }

    pub fn is_king_row(&self, color: Color, c: Coord) -> bool {
        match color {
            Color::Black => c.y == self.height - 1,
            Color::White => c.y == 0,
        }
    }

    pub fn pieces_of(&self, color: Color) -> impl Iterator<Item = (Coord, Piece)> + '_ {
        self.pieces
            .iter()
            .filter(move |(_, p)| p.color == color)
            .map(|(&c, &p)| (c, p))
    }

    /// Diagonal steps available to `piece`: all four for kings, the two
    /// forward ones for men.
    pub fn step_dirs(piece: Piece) -> Vec<(i32, i32)> {
        let f = piece.color.forward();
        if piece.king {
            vec![(1, 1), (-1, 1), (1, -1), (-1, -1)]
        } else {
            vec![(1, f), (-1, f)]
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("checkers {} {} {}\n", self.width, self.height, self.mover);
        for y in (0..self.height).rev() {
            for x in 0..self.width {
                s.push(
                    self.pieces
                        .get(&Coord::new(x, y))
                        .map_or('.', |p| p.glyph()),
                );
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CheckersError> {
        let perr = |line: usize, column: usize, message: String| CheckersError::Parse {
            line,
            column,
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| perr(1, 1, "empty input".into()))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "checkers" {
            return Err(perr(1, 1, "expected `checkers <W> <H> <mover>`".into()));
        }
        let dim = |t: &str| {
            t.parse::<i32>()
                .map_err(|_| perr(1, 1, format!("bad dimension `{t}`")))
        };
        let (width, height) = (dim(toks[1])?, dim(toks[2])?);
        let mover =
            Color::parse(toks[3]).ok_or_else(|| perr(1, 1, format!("bad mover `{}`", toks[3])))?;
        let rows: Vec<(usize, &str)> = lines.collect();
        if rows.len() != height as usize {
            return Err(perr(
                1,
                1,
                format!("expected {height} rows, got {}", rows.len()),
            ));
        }
        let mut pieces = Vec::new();
        for (r, (ln, row)) in rows.iter().enumerate() {
            let row = row.trim();
            if row.chars().count() != width as usize {
                return Err(perr(ln + 1, 1, format!("expected {width} cells")));
            }
            let y = height - 1 - r as i32;
            for (x, ch) in row.chars().enumerate() {
                let piece = match ch {
                    '.' => continue,
                    'b' => Piece {
                        color: Color::Black,
                        king: false,
                    },
                    'B' => Piece {
                        color: Color::Black,
                        king: true,
                    },
                    'w' => Piece {
                        color: Color::White,
                        king: false,
                    },
                    'W' => Piece {
                        color: Color::White,
                        king: true,
                    },
                    other => return Err(perr(ln + 1, x + 1, format!("unexpected `{other}`"))),
                };
                pieces.push((Coord::new(x as i32, y), piece));
            }
        }
        CheckersPosition::new(width, height, mover, pieces)
    }

    /// Plays the jumps of `from` landing on each of `landings` in turn and
    /// returns the captured pieces. Captured pieces stay on the board until
    /// the move ends; a man that reaches its king row must stop there.
    pub fn replay_jumps(
        &self,
        from: Coord,
        landings: &[Coord],
    ) -> Result<Vec<Coord>, CheckersError> {
        let piece = self.piece_at(from).ok_or(CheckersError::PieceNotFound {
            x: from.x,
            y: from.y,
        })?;
        let illegal = |c: Coord| CheckersError::Parse {
            line: 0,
            column: 0,
            message: format!("illegal jump to ({},{})", c.x, c.y),
        };
        let dirs = Self::step_dirs(piece);
        let mut at = from;
        let mut captured: Vec<Coord> = Vec::new();
        for (i, &to) in landings.iter().enumerate() {
            if !piece.king && i > 0 && self.is_king_row(piece.color, at) {
                return Err(illegal(to));
            }
            let d = ((to.x - at.x) / 2, (to.y - at.y) / 2);
            if to.x - at.x != 2 * d.0 || to.y - at.y != 2 * d.1 || !dirs.contains(&d) {
                return Err(illegal(to));
            }
            let over = at.offset(d.0, d.1);
            let jumpable = self.piece_at(over).is_some_and(|q| q.color != piece.color)
                && !captured.contains(&over);
            let vacant = self.on_board(to) && (to == from || self.piece_at(to).is_none());
            if !jumpable || !vacant {
                return Err(illegal(to));
            }
            captured.push(over);
            at = to;
        }
        Ok(captured)
    }
}

impl fmt::Display for CheckersPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Random position on a board of `width x height` with 1 to 3 pieces of the
/// mover and up to `max_opponents` opposing pieces. Men never start on their
/// own king row.
pub fn random_position<R: Rng>(
    rng: &mut R,
    width: i32,
    height: i32,
    max_opponents: usize,
) -> CheckersPosition {
    let mover = if rng.gen_bool(0.5) {
        Color::Black
    } else {
        Color::White
    };
    let squares: Vec<Coord> = (0..height)
        .flat_map(|y| (0..width).map(move |x| Coord::new(x, y)))
        .filter(|c| (c.x + c.y) % 2 == 0)
        .collect();
    let friends = rng.gen_range(1..=3);
    let foes = rng.gen_range(0..=max_opponents);
    let mut used = BTreeSet::new();
    let mut pieces = Vec::new();
    for (color, count) in [(mover, friends), (mover.opponent(), foes)] {
        for _ in 0..count {
            if used.len() == squares.len() {
                break;
            }
            let c = loop {
                let c = squares[rng.gen_range(0..squares.len())];
                if used.insert(c) {
                    break c;
                }
            };
            let on_king_row = match color {
                Color::Black => c.y == height - 1,
                Color::White => c.y == 0,
            };
            let king = on_king_row || rng.gen_bool(0.3);
            pieces.push((c, Piece { color, king }));
        }
    }
    CheckersPosition::new(width, height, mover, pieces)
        .expect("random pieces sit on playable squares")
}
