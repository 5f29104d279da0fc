//! Phutball positions and jump mechanics.
//!
//! The side to move attacks row `height - 1`; its own goal line is row 0.
//! A jump sequence wins when its last landing is on row `height - 1` or
//! beyond it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::BoardError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub x: i32,
    pub y: i32,
}

impl Coord {
    pub const fn new(x: i32, y: i32) -> Self {
        Coord { x, y }
    }

    pub fn step(self, d: Direction) -> Self {
        let (dx, dy) = d.delta();
        Coord::new(self.x + dx, self.y + dy)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Coord::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// The eight king-move directions, listed in canonical search order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    N,
    NE,
    E,
    SE,
    S,
    SW,
    W,
    NW,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    pub const ORTHOGONAL: [Direction; 4] = [Direction::N, Direction::E, Direction::S, Direction::W];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::N => (0, 1),
            Direction::NE => (1, 1),
            Direction::E => (1, 0),
            Direction::SE => (1, -1),
            Direction::S => (0, -1),
            Direction::SW => (-1, -1),
            Direction::W => (-1, 0),
            Direction::NW => (-1, 1),
        }
    }

    pub fn from_delta(dx: i32, dy: i32) -> Option<Direction> {
        Direction::ALL.into_iter().find(|d| d.delta() == (dx, dy))
    }

    pub fn is_orthogonal(self) -> bool {
        let (dx, dy) = self.delta();
        dx == 0 || dy == 0
    }

    pub fn opposite(self) -> Direction {
        let (dx, dy) = self.delta();
        Direction::from_delta(-dx, -dy).unwrap()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    width: i32,
    height: i32,
    ball: Coord,
    men: BTreeSet<Coord>,
}

/// Result of a single jump from the current ball position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpOutcome {
    pub landing: Coord,
    /// Men jumped, nearest first.
    pub removed: Vec<Coord>,
    pub winning: bool,
}

impl Board {
    pub fn new(
        width: i32,
        height: i32,
        ball: Coord,
        men: impl IntoIterator<Item = Coord>,
    ) -> Result<Self, BoardError> {
        if width < 1 || height < 2 {
            return Err(BoardError::BadDimensions { width, height });
        }
        let men: BTreeSet<Coord> = men.into_iter().collect();
        let b = Board {
            width,
            height,
            ball,
            men,
        };
        if !b.on_board(ball) {
            return Err(BoardError::OffBoard {
                what: "ball",
                at: ball,
            });
        }
        if let Some(&m) = b.men.iter().find(|&&m| !b.on_board(m)) {
            return Err(BoardError::OffBoard { what: "man", at: m });
        }
        if b.men.contains(&ball) {
            return Err(BoardError::BallOnMan(ball));
        }
        Ok(b)
    }

    pub fn width(&self) -> i32 {
        self.width
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn ball(&self) -> Coord {
        self.ball
    }

    pub fn men(&self) -> &BTreeSet<Coord> {
        &self.men
    }

    pub fn is_man(&self, c: Coord) -> bool {
        self.men.contains(&c)
    }

    pub fn on_board(&self, c: Coord) -> bool {
        c.x >= 0 && c.x < self.width && c.y >= 0 && c.y < self.height
    }

    /// Where a run ending just before `landing` may put the ball.
    /// `None` means the jump is illegal, `Some(true)` means it wins.
    pub fn landing_status(&self, landing: Coord) -> Option<bool> {
        landing_status(self.width, self.height, landing)
    }

    /// Mirror across the vertical axis.
    pub fn mirrored(&self) -> Board {
        let flip = |c: Coord| Coord::new(self.width - 1 - c.x, c.y);
        Board {
            width: self.width,
            height: self.height,
            ball: flip(self.ball),
            men: self.men.iter().map(|&c| flip(c)).collect(),
        }
    }

    pub fn with_ball(&self, ball: Coord) -> Result<Board, BoardError> {
        Board::new(self.width, self.height, ball, self.men.iter().copied())
    }

    pub fn without_men<'a>(&self, gone: impl IntoIterator<Item = &'a Coord>) -> Board {
        let mut men = self.men.clone();
        for c in gone {
            men.remove(c);
        }
        Board {
            men,
            ..self.clone()
        }
    }
}

/// Landing legality shared by the board model and the indexed solver.
///
/// Landings off a side edge or behind the mover's own goal line are illegal.
/// Landing on or beyond row `height - 1` wins.
pub fn landing_status(width: i32, height: i32, landing: Coord) -> Option<bool> {
    if landing.x < 0 || landing.x >= width || landing.y < 0 {
        return None;
    }
    Some(landing.y >= height - 1)
}

/// All legal jumps from the ball, in canonical direction order.
pub fn legal_jumps(b: &Board) -> Vec<(Direction, JumpOutcome)> {
    Direction::ALL
        .into_iter()
        .filter_map(|d| jump_in(b, d).map(|o| (d, o)))
        .collect()
}

fn jump_in(b: &Board, d: Direction) -> Option<JumpOutcome> {
    let mut cur = b.ball.step(d);
    let mut removed = Vec::new();
    while b.is_man(cur) {
        removed.push(cur);
        cur = cur.step(d);
    }
    if removed.is_empty() {
        return None;
    }
    let winning = b.landing_status(cur)?;
    Some(JumpOutcome {
        landing: cur,
        removed,
        winning,
    })
}

/// Performs a non-winning jump.
pub fn apply_jump(b: &Board, d: Direction) -> Result<Board, BoardError> {
    let outcome = jump_in(b, d).ok_or(BoardError::IllegalDirection(d))?;
    if outcome.winning {
        return Err(BoardError::WinningJump(d));
    }
    let mut men = b.men.clone();
    for c in &outcome.removed {
        men.remove(c);
    }
    Ok(Board {
        men,
        ball: outcome.landing,
        ..b.clone()
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct JumpSequence {
    pub landings: Vec<Coord>,
}

impl JumpSequence {
    pub fn new(landings: Vec<Coord>) -> Self {
        JumpSequence { landings }
    }

    pub fn len(&self) -> usize {
        self.landings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.landings.is_empty()
    }

    /// Parses space-separated `x,y` landings.
    pub fn parse(text: &str) -> Result<Self, BoardError> {
        let mut landings = Vec::new();
        for (line_idx, line) in text.lines().enumerate() {
            let mut column = 1;
            for tok in line.split(' ') {
                if !tok.is_empty() {
                    let (xs, ys) = tok.split_once(',').ok_or_else(|| {
                        BoardError::parse(
                            line_idx + 1,
                            column,
                            format!("expected x,y, got `{tok}`"),
                        )
                    })?;
                    let x = xs.trim().parse().map_err(|_| {
                        BoardError::parse(line_idx + 1, column, format!("bad x in `{tok}`"))
                    })?;
                    let y = ys.trim().parse().map_err(|_| {
                        BoardError::parse(line_idx + 1, column, format!("bad y in `{tok}`"))
                    })?;
                    landings.push(Coord::new(x, y));
                }
                column += tok.len() + 1;
            }
        }
        Ok(JumpSequence { landings })
    }
}

impl fmt::Display for JumpSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.landings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ValidWinning,
    ValidNonwinning,
    /// 1-based index of the first landing that is not a legal jump.
    InvalidAtStep(usize),
}

/// Replays a jump sequence, checking every landing against the legal jumps of
/// the position it is played from. Each step costs one scan per direction
/// plus the length of the jumped run, so the whole check is
/// `O(len * (8 + men))`.
pub fn verify_sequence(b: &Board, s: &JumpSequence) -> Verdict {
    replay(b, s).0
}

/// Like [`verify_sequence`] but also returns every man removed along the way,
/// in jump order.
pub fn replay(b: &Board, s: &JumpSequence) -> (Verdict, Vec<Coord>) {
    let mut cur = b.clone();
    let mut removed = Vec::new();
    for (i, &landing) in s.landings.iter().enumerate() {
        let step = i + 1;
        let Some(d) = direction_towards(cur.ball, landing) else {
            return (Verdict::InvalidAtStep(step), removed);
        };
        let Some(outcome) = jump_in(&cur, d) else {
            return (Verdict::InvalidAtStep(step), removed);
        };
        if outcome.landing != landing {
            return (Verdict::InvalidAtStep(step), removed);
        }
        removed.extend_from_slice(&outcome.removed);
        if outcome.winning {
            if step == s.landings.len() {
                return (Verdict::ValidWinning, removed);
            }
            return (Verdict::InvalidAtStep(step + 1), removed);
        }
        cur = apply_jump(&cur, d).expect("checked above");
    }
    (Verdict::ValidNonwinning, removed)
}

/// Direction of the straight line from `from` to `to`, if they are collinear
/// along one of the eight directions and distinct.
pub fn direction_towards(from: Coord, to: Coord) -> Option<Direction> {
    let dx = to.x - from.x;
    let dy = to.y - from.y;
    if (dx, dy) == (0, 0) || (dx != 0 && dy != 0 && dx.abs() != dy.abs()) {
        return None;
    }
    Direction::from_delta(dx.signum(), dy.signum())
}

/// Text form: a `phutball W H` header, then `H` rows of `W` glyphs with the
/// opponent's goal line (row `H - 1`) first.
pub fn render_board(b: &Board) -> String {
    let mut out = format!("phutball {} {}\n", b.width, b.height);
    for y in (0..b.height).rev() {
        for x in 0..b.width {
            let c = Coord::new(x, y);
            out.push(if c == b.ball {
                '@'
            } else if b.is_man(c) {
                'O'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

pub fn parse_board(text: &str) -> Result<Board, BoardError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| BoardError::parse(1, 1, "empty input"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "phutball" {
        return Err(BoardError::parse(1, 1, "expected `phutball <W> <H>`"));
    }
    let width: i32 = parts[1]
        .parse()
        .map_err(|_| BoardError::parse(1, 10, "bad width"))?;
    let height: i32 = parts[2]
        .parse()
        .map_err(|_| BoardError::parse(1, 10, "bad height"))?;
    if width < 1 || height < 2 {
        return Err(BoardError::BadDimensions { width, height });
    }
    let mut ball = None;
    let mut men = Vec::new();
    let rows: Vec<&str> = lines.collect();
    let rows: Vec<&str> = match rows.iter().rposition(|r| !r.trim().is_empty()) {
        Some(last) => rows[..=last].to_vec(),
        None => Vec::new(),
    };
    if rows.len() != height as usize {
        return Err(BoardError::parse(
            rows.len() + 2,
            1,
            format!("expected {height} rows, found {}", rows.len()),
        ));
    }
    for (i, row) in rows.iter().enumerate() {
        let line = i + 2;
        let y = height - 1 - i as i32;
        let glyphs: Vec<char> = row.trim_end_matches('\r').chars().collect();
        if glyphs.len() != width as usize {
            return Err(BoardError::parse(
                line,
                glyphs.len().min(width as usize) + 1,
                format!("expected {width} glyphs, found {}", glyphs.len()),
            ));
        }
        for (x, g) in glyphs.into_iter().enumerate() {
            let c = Coord::new(x as i32, y);
            match g {
                '.' => {}
                'O' => men.push(c),
                '@' => {
                    if ball.replace(c).is_some() {
                        return Err(BoardError::parse(line, x + 1, "multiple balls"));
                    }
                }
                other => {
                    return Err(BoardError::parse(
                        line,
                        x + 1,
                        format!("unknown glyph `{other}`"),
                    ))
                }
            }
        }
    }
    let ball = ball.ok_or_else(|| BoardError::parse(1, 1, "no ball on the board"))?;
    Board::new(width, height, ball, men)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: i32, y: i32) -> Coord {
        Coord::new(x, y)
    }

    #[test]
    fn jump_over_two_men() {
        let b = Board::new(5, 5, c(0, 2), [c(1, 2), c(2, 2)]).unwrap();
        let jumps = legal_jumps(&b);
        assert_eq!(jumps.len(), 1);
        let (d, o) = &jumps[0];
        assert_eq!(*d, Direction::E);
        assert_eq!(o.landing, c(3, 2));
        assert_eq!(o.removed, vec![c(1, 2), c(2, 2)]);
        assert!(!o.winning);
        let after = apply_jump(&b, Direction::E).unwrap();
        assert_eq!(after.ball(), c(3, 2));
        assert!(after.men().is_empty());
    }

    #[test]
    fn jump_past_goal_line_wins() {
        let b = Board::new(3, 4, c(1, 1), [c(1, 2), c(1, 3)]).unwrap();
        let jumps = legal_jumps(&b);
        assert_eq!(jumps.len(), 1);
        assert_eq!(jumps[0].1.landing, c(1, 4));
        assert!(jumps[0].1.winning);
        assert_eq!(
            apply_jump(&b, Direction::N),
            Err(BoardError::WinningJump(Direction::N))
        );
    }

    #[test]
    fn landing_on_goal_row_wins() {
        let b = Board::new(3, 4, c(1, 1), [c(1, 2)]).unwrap();
        assert!(legal_jumps(&b)[0].1.winning);
    }

    #[test]
    fn side_edge_and_own_goal_overshoot_are_illegal() {
        let b = Board::new(3, 3, c(1, 1), [c(0, 1)]).unwrap();
        assert!(legal_jumps(&b).is_empty());
        let b = Board::new(3, 3, c(1, 1), [c(1, 0)]).unwrap();
        assert!(legal_jumps(&b).is_empty());
        // stepping onto the own goal line is fine
        let b = Board::new(3, 4, c(1, 2), [c(1, 1)]).unwrap();
        assert_eq!(legal_jumps(&b)[0].1.landing, c(1, 0));
    }

    #[test]
    fn diagonal_jump() {
        let b = Board::new(4, 4, c(0, 0), [c(1, 1)]).unwrap();
        let after = apply_jump(&b, Direction::NE).unwrap();
        assert_eq!(after.ball(), c(2, 2));
        assert!(after.men().is_empty());
        assert_eq!(
            apply_jump(&b, Direction::E),
            Err(BoardError::IllegalDirection(Direction::E))
        );
    }

    #[test]
    fn verify_examples() {
        let b = Board::new(3, 3, c(1, 1), [c(1, 2)]).unwrap();
        assert_eq!(
            verify_sequence(&b, &JumpSequence::new(vec![c(1, 3)])),
            Verdict::ValidWinning
        );
        assert_eq!(
            verify_sequence(&b, &JumpSequence::default()),
            Verdict::ValidNonwinning
        );
        assert_eq!(
            verify_sequence(&b, &JumpSequence::new(vec![c(2, 3)])),
            Verdict::InvalidAtStep(1)
        );
        // continuing after a win is not allowed
        assert_eq!(
            verify_sequence(&b, &JumpSequence::new(vec![c(1, 3), c(1, 5)])),
            Verdict::InvalidAtStep(2)
        );
    }

    #[test]
    fn verify_rejects_short_landing() {
        let b = Board::new(5, 5, c(0, 2), [c(1, 2), c(2, 2)]).unwrap();
        let s = JumpSequence::new(vec![c(2, 2)]);
        assert_eq!(verify_sequence(&b, &s), Verdict::InvalidAtStep(1));
    }

    #[test]
    fn text_round_trip() {
        let b = Board::new(2, 2, c(0, 0), []).unwrap();
        let text = render_board(&b);
        assert_eq!(text, "phutball 2 2\n..\n@.\n");
        assert_eq!(parse_board(&text).unwrap(), b);
    }

    #[test]
    fn parse_errors() {
        let err = parse_board("phutball 2 2\n@@\n..\n").unwrap_err();
        assert_eq!(err, BoardError::parse(2, 2, "multiple balls"));
        let err = parse_board("phutball 2 2\n.x\n@.\n").unwrap_err();
        assert!(matches!(
            err,
            BoardError::Parse {
                line: 2,
                column: 2,
                ..
            }
        ));
        let err = parse_board("phutball 3 2\n...\n@.\n").unwrap_err();
        assert!(matches!(err, BoardError::Parse { line: 3, .. }));
        assert!(parse_board("phutball 2 2\n..\n..\n").is_err());
        assert!(parse_board("phutball 2 3\n..\n@.\n").is_err());
    }

    #[test]
    fn sequence_text() {
        let s = JumpSequence::parse("3,2 3,5\n").unwrap();
        assert_eq!(s.landings, vec![c(3, 2), c(3, 5)]);
        assert_eq!(s.to_string(), "3,2 3,5");
        assert!(JumpSequence::parse("").unwrap().is_empty());
        assert!(JumpSequence::parse("3;2").is_err());
    }

    #[test]
    fn direction_towards_lines() {
        assert_eq!(direction_towards(c(0, 0), c(0, 5)), Some(Direction::N));
        assert_eq!(direction_towards(c(0, 0), c(-3, -3)), Some(Direction::SW));
        assert_eq!(direction_towards(c(0, 0), c(1, 2)), None);
        assert_eq!(direction_towards(c(1, 1), c(1, 1)), None);
    }
}
