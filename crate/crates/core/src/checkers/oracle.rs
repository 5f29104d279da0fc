use crate::board::Coord;
use crate::error::CheckersError;

use super::CheckersPosition;

/// All maximal jump sequences of the piece at `p`, as landing lists in board
/// coordinates, in depth-first order over diagonal steps `(1,1), (-1,1),
/// (1,-1), (-1,-1)` (forward steps only for men).
///
/// Jumped pieces stay on the board, blocking landings, until the move ends.
/// A man that lands on its king row stops. A piece with no jump yields the
/// single empty sequence.
pub fn brute_force_oracle(
    pos: &CheckersPosition,
    p: Coord,
    cap: usize,
) -> Result<Vec<Vec<Coord>>, CheckersError> {
    let piece = pos
        .piece_at(p)
        .ok_or(CheckersError::PieceNotFound { x: p.x, y: p.y })?;
    let dirs = CheckersPosition::step_dirs(piece);
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut captured = Vec::new();
    let mut cx = Ctx {
        pos,
        origin: p,
        piece_king: piece.king,
        color: piece.color,
        dirs: &dirs,
        cap,
    };
    cx.rec(p, &mut path, &mut captured, &mut out)?;
    Ok(out)
}

struct Ctx<'a> {
    pos: &'a CheckersPosition,
    origin: Coord,
    piece_king: bool,
    color: super::Color,
    dirs: &'a [(i32, i32)],
    cap: usize,
}

impl Ctx<'_> {
    fn rec(
        &mut self,
        at: Coord,
        path: &mut Vec<Coord>,
        captured: &mut Vec<Coord>,
        out: &mut Vec<Vec<Coord>>,
    ) -> Result<(), CheckersError> {
        let kinged = !self.piece_king && !path.is_empty() && self.pos.is_king_row(self.color, at);
        let mut extended = false;
        if !kinged {
            for &(dx, dy) in self.dirs {
                let over = at.offset(dx, dy);
                let to = at.offset(2 * dx, 2 * dy);
                let jumpable = self
                    .pos
                    .piece_at(over)
                    .is_some_and(|q| q.color != self.color)
                    && !captured.contains(&over);
                let vacant =
                    self.pos.on_board(to) && (to == self.origin || self.pos.piece_at(to).is_none());
                if !jumpable || !vacant {
                    continue;
                }
                extended = true;
                path.push(to);
                captured.push(over);
                self.rec(to, path, captured, out)?;
                path.pop();
                captured.pop();
            }
        }
        if !extended {
            if out.len() >= self.cap {
                return Err(CheckersError::Explosion { cap: self.cap });
            }
            out.push(path.clone());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_jump_gives_empty_sequence() {
        let pos = CheckersPosition::parse("checkers 4 4 black\n....\n....\n....\nb...\n").unwrap();
        assert_eq!(
            brute_force_oracle(&pos, Coord::new(0, 0), 10).unwrap(),
            vec![Vec::<Coord>::new()]
        );
    }

    #[test]
    fn king_branches() {
        // king in the middle with two opponents to jump in different directions
        let pos =
            CheckersPosition::parse("checkers 5 5 white\n.....\n...b.\n..W..\n.b...\n.....\n")
                .unwrap();
        let seqs = brute_force_oracle(&pos, Coord::new(2, 2), 10).unwrap();
        assert_eq!(seqs, vec![vec![Coord::new(4, 4)], vec![Coord::new(0, 0)]]);
    }

    #[test]
    fn cap_is_enforced() {
        let pos =
            CheckersPosition::parse("checkers 5 5 white\n.....\n...b.\n..W..\n.b...\n.....\n")
                .unwrap();
        assert_eq!(
            brute_force_oracle(&pos, Coord::new(2, 2), 1).unwrap_err(),
            CheckersError::Explosion { cap: 1 }
        );
    }
}
