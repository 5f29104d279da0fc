use crate::board::Coord;
use crate::error::CheckersError;

use super::graph::{build_jump_graph, JumpGraph};
use super::oracle::brute_force_oracle;
use super::{CheckersPosition, Color};

/// Cap on oracle output per piece.
pub const ORACLE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KingVerdict {
    pub can_king: bool,
    /// Landing squares of a kinging move.
    pub witness: Option<Vec<Coord>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceDiagnostic {
    pub piece: Coord,
    pub covers_all: bool,
    pub connected: bool,
    pub euler_ok: bool,
    pub cells: usize,
    pub jumpable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinVerdict {
    pub wins: bool,
    /// Winning piece and its landing squares.
    pub witness: Option<(Coord, Vec<Coord>)>,
    pub diagnostics: Vec<PieceDiagnostic>,
}

pub trait MoveAnalyzer: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn can_king(&self, pos: &CheckersPosition, p: Coord) -> Result<KingVerdict, CheckersError>;
    fn one_move_win(
        &self,
        pos: &CheckersPosition,
        color: Color,
    ) -> Result<WinVerdict, CheckersError>;
}

pub struct AnalyzerRegistry {
    analyzers: Vec<Box<dyn MoveAnalyzer>>,
}

impl AnalyzerRegistry {
    pub fn with_defaults() -> Self {
        AnalyzerRegistry {
            analyzers: vec![
                Box::new(JumpGraphAnalyzer),
                Box::new(BruteForce { cap: ORACLE_CAP }),
            ],
        }
    }

    pub fn register(&mut self, a: Box<dyn MoveAnalyzer>) {
        self.analyzers.retain(|x| x.name() != a.name());
        self.analyzers.push(a);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MoveAnalyzer, CheckersError> {
        self.analyzers
            .iter()
            .find(|a| a.name() == name)
            .map(|a| a.as_ref())
            .ok_or_else(|| CheckersError::UnknownAnalyzer(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.analyzers.iter().map(|a| a.name()).collect()
    }
}

fn man_of_mover(pos: &CheckersPosition, p: Coord) -> Result<(), CheckersError> {
    let piece = pos
        .piece_at(p)
        .ok_or(CheckersError::PieceNotFound { x: p.x, y: p.y })?;
    if piece.color != pos.mover() {
        return Err(CheckersError::NotMover { x: p.x, y: p.y });
    }
    if piece.king {
        return Err(CheckersError::AlreadyKing { x: p.x, y: p.y });
    }
    Ok(())
}

/// Analysis through the jump graph: one graph per piece, then a
/// reachability or Euler-path test.
pub struct JumpGraphAnalyzer;

impl MoveAnalyzer for JumpGraphAnalyzer {
    fn name(&self) -> &'static str {
        "jump-graph"
    }

    fn description(&self) -> &'static str {
        "reachability and Euler paths in the per-piece jump graph"
    }

    fn can_king(&self, pos: &CheckersPosition, p: Coord) -> Result<KingVerdict, CheckersError> {
        man_of_mover(pos, p)?;
        let g = build_jump_graph(pos, p)?;
        let witness = g.path_to_king_row().map(|path| g.landings(&path));
        Ok(KingVerdict {
            can_king: witness.is_some(),
            witness,
        })
    }

    fn one_move_win(
        &self,
        pos: &CheckersPosition,
        color: Color,
    ) -> Result<WinVerdict, CheckersError> {
        let pos = with_mover(pos, color);
        let opponents = pos.pieces_of(color.opponent()).count();
        let mut diagnostics = Vec::new();
        let mut witness = None;
        for (p, _) in pos.pieces_of(color) {
            let g = build_jump_graph(&pos, p)?;
            let d = diagnose(&g, p, opponents);
            if witness.is_none() && opponents > 0 && d.covers_all && d.connected && d.euler_ok {
                witness = Some((p, g.landings(&g.euler_path())));
            }
            diagnostics.push(d);
        }
        Ok(WinVerdict {
            wins: witness.is_some(),
            witness,
            diagnostics,
        })
    }
}

fn diagnose(g: &JumpGraph, p: Coord, opponents: usize) -> PieceDiagnostic {
    PieceDiagnostic {
        piece: p,
        covers_all: g.jumpable.len() == opponents,
        connected: g.is_connected(),
        euler_ok: g.euler_degrees_ok(),
        cells: g.cells.len(),
        jumpable: g.jumpable.len(),
    }
}

fn with_mover(pos: &CheckersPosition, color: Color) -> CheckersPosition {
    if pos.mover() == color {
        return pos.clone();
    }
    CheckersPosition::new(
        pos.width(),
        pos.height(),
        color,
        pos.pieces().iter().map(|(&c, &p)| (c, p)),
    )
    .expect("same pieces")
}

/// Exhaustive enumeration of maximal jump sequences.
pub struct BruteForce {
    pub cap: usize,
}

impl MoveAnalyzer for BruteForce {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn description(&self) -> &'static str {
        "enumerates every maximal jump sequence (exponential; for validation)"
    }

    fn can_king(&self, pos: &CheckersPosition, p: Coord) -> Result<KingVerdict, CheckersError> {
        man_of_mover(pos, p)?;
        let color = pos.mover();
        let witness = brute_force_oracle(pos, p, self.cap)?
            .into_iter()
            .find(|s| s.last().is_some_and(|&c| pos.is_king_row(color, c)));
        Ok(KingVerdict {
            can_king: witness.is_some(),
            witness,
        })
    }

    fn one_move_win(
        &self,
        pos: &CheckersPosition,
        color: Color,
    ) -> Result<WinVerdict, CheckersError> {
        let opponents = pos.pieces_of(color.opponent()).count();
        let mut witness = None;
        if opponents > 0 {
            for (p, _) in pos.pieces_of(color) {
                let seqs = brute_force_oracle(pos, p, self.cap)?;
                if let Some(s) = seqs.into_iter().find(|s| s.len() == opponents) {
                    witness = Some((p, s));
                    break;
                }
            }
        }
        Ok(WinVerdict {
            wins: witness.is_some(),
            witness,
            diagnostics: vec![],
        })
    }
}

pub fn can_king(pos: &CheckersPosition, p: Coord) -> Result<KingVerdict, CheckersError> {
    JumpGraphAnalyzer.can_king(pos, p)
}

pub fn has_one_move_win(pos: &CheckersPosition, color: Color) -> Result<WinVerdict, CheckersError> {
    JumpGraphAnalyzer.one_move_win(pos, color)
}
