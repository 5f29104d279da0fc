//! Mate-in-one search: does the ball have a jump sequence that ends on or over
//! the opponent's goal line?
//!
//! Search strategies implement [`WinSolver`] and are looked up by name in a
//! [`SolverRegistry`], so the CLI and the test harness can swap the memoized
//! search for the memo-free reference without touching call sites.

use std::collections::HashSet;

use crate::board::{
    landing_status, verify_sequence, Board, Coord, Direction, JumpSequence, Verdict,
};
use crate::error::SearchError;

pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Only consider N/E/S/W jumps.
    pub orthogonal_only: bool,
    /// Maximum number of expanded states, at least 1.
    pub node_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            orthogonal_only: false,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

impl SearchOptions {
    /// Directions tried at every node, in canonical order (N, NE, E, SE, S,
    /// SW, W, NW, or the orthogonal subsequence).
    pub fn directions(&self) -> &'static [Direction] {
        if self.orthogonal_only {
            &Direction::ORTHOGONAL
        } else {
            &Direction::ALL
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub found: Option<JumpSequence>,
    pub nodes_expanded: u64,
    /// True when the whole reachable space was explored (or a win was found
    /// before the limit).
    pub exhausted: bool,
}

pub trait WinSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn solve(&self, board: &Board, opts: &SearchOptions) -> SearchResult;
}

pub struct SolverRegistry {
    entries: Vec<Box<dyn WinSolver>>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        SolverRegistry {
            entries: Vec::new(),
        }
    }

    pub fn with_defaults() -> Self {
        let mut r = SolverRegistry::empty();
        r.register(Box::new(MemoDfs));
        r.register(Box::new(PlainDfs));
        r
    }

    /// Registers a solver, replacing any existing one with the same name.
    pub fn register(&mut self, solver: Box<dyn WinSolver>) {
        self.entries.retain(|s| s.name() != solver.name());
        self.entries.push(solver);
    }

    pub fn get(&self, name: &str) -> Option<&dyn WinSolver> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}

impl Default for SolverRegistry {
    fn default() -> Self {
        SolverRegistry::with_defaults()
    }
}

/// Depth-first search memoized on (ball, removed men).
pub struct MemoDfs;

/// Depth-first search with no memo table; the reference the memoized search
/// is checked against.
pub struct PlainDfs;

impl WinSolver for MemoDfs {
    fn name(&self) -> &'static str {
        "memo-dfs"
    }

    fn description(&self) -> &'static str {
        "depth-first search with a (ball, removed-set) transposition table"
    }

    fn solve(&self, board: &Board, opts: &SearchOptions) -> SearchResult {
        find_winning_sequence(board, opts)
    }
}

impl WinSolver for PlainDfs {
    fn name(&self) -> &'static str {
        "plain-dfs"
    }

    fn description(&self) -> &'static str {
        "exhaustive depth-first search without memoization"
    }

    fn solve(&self, board: &Board, opts: &SearchOptions) -> SearchResult {
        let ix = IndexedBoard::new(board);
        let mut removed = ix.empty_set();
        let mut path = Vec::new();
        let mut nodes = 0;
        let outcome = plain_search(&ix, board.ball(), &mut removed, &mut path, opts, &mut nodes);
        finish(board, outcome, nodes)
    }
}

enum Outcome {
    Win(Vec<Coord>),
    None,
    Limit,
}

fn finish(board: &Board, outcome: Outcome, nodes: u64) -> SearchResult {
    match outcome {
        Outcome::Win(landings) => {
            let seq = JumpSequence::new(landings);
            assert_eq!(
                verify_sequence(board, &seq),
                Verdict::ValidWinning,
                "solver produced an invalid witness"
            );
            SearchResult {
                found: Some(seq),
                nodes_expanded: nodes,
                exhausted: true,
            }
        }
        Outcome::None => SearchResult {
            found: None,
            nodes_expanded: nodes,
            exhausted: true,
        },
        Outcome::Limit => SearchResult {
            found: None,
            nodes_expanded: nodes,
            exhausted: false,
        },
    }
}

fn plain_search(
    ix: &IndexedBoard,
    ball: Coord,
    removed: &mut Vec<u64>,
    path: &mut Vec<Coord>,
    opts: &SearchOptions,
    nodes: &mut u64,
) -> Outcome {
    if *nodes >= opts.node_limit {
        return Outcome::Limit;
    }
    *nodes += 1;
    for jump in ix.jumps(ball, removed, opts.directions()) {
        if jump.winning {
            let mut w = path.clone();
            w.push(jump.landing);
            return Outcome::Win(w);
        }
        for &i in &jump.jumped {
            set_bit(removed, i);
        }
        path.push(jump.landing);
        let r = plain_search(ix, jump.landing, removed, path, opts, nodes);
        path.pop();
        for &i in &jump.jumped {
            clear_bit(removed, i);
        }
        match r {
            Outcome::None => {}
            other => return other,
        }
    }
    Outcome::None
}

/// Memoized depth-first search for a winning jump sequence. Returns the first
/// win in canonical direction order.
pub fn find_winning_sequence(board: &Board, opts: &SearchOptions) -> SearchResult {
    let ix = IndexedBoard::new(board);
    let dirs = opts.directions();
    let mut visited: HashSet<(Coord, Vec<u64>)> = HashSet::new();

    struct Frame {
        ball: Coord,
        removed: Vec<u64>,
        jumps: Vec<IndexedJump>,
        next: usize,
    }

    let root_removed = ix.empty_set();
    visited.insert((board.ball(), root_removed.clone()));
    let mut nodes: u64 = 1;
    let mut stack = vec![Frame {
        ball: board.ball(),
        jumps: ix.jumps(board.ball(), &root_removed, dirs),
        removed: root_removed,
        next: 0,
    }];

    while let Some(top) = stack.last_mut() {
        if top.next >= top.jumps.len() {
            stack.pop();
            continue;
        }
        let jump = top.jumps[top.next].clone();
        top.next += 1;
        if jump.winning {
            let mut landings: Vec<Coord> = stack[1..].iter().map(|f| f.ball).collect();
            landings.push(jump.landing);
            return finish(board, Outcome::Win(landings), nodes);
        }
        let mut removed = top.removed.clone();
        for &i in &jump.jumped {
            set_bit(&mut removed, i);
        }
        let key = (jump.landing, removed);
        if visited.contains(&key) {
            continue;
        }
        if nodes >= opts.node_limit {
            return finish(board, Outcome::Limit, nodes);
        }
        nodes += 1;
        let (ball, removed) = key;
        visited.insert((ball, removed.clone()));
        stack.push(Frame {
            ball,
            jumps: ix.jumps(ball, &removed, dirs),
            removed,
            next: 0,
        });
    }
    finish(board, Outcome::None, nodes)
}

/// One sequence produced by [`enumerate_sequences`], with the state it ends in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedSequence {
    pub sequence: JumpSequence,
    pub ball: Coord,
    pub removed: Vec<Coord>,
    pub winning: bool,
}

/// Every jump sequence of length at most `max_len`, including the empty one
/// and every prefix (the mover may stop after any jump). Winning jumps end a
/// sequence. Output is in depth-first preorder with canonical direction order.
pub fn enumerate_sequences(
    board: &Board,
    max_len: usize,
    cap: usize,
) -> Result<Vec<EnumeratedSequence>, SearchError> {
    enumerate_with(board, max_len, cap, &Direction::ALL)
}

pub fn enumerate_with(
    board: &Board,
    max_len: usize,
    cap: usize,
    dirs: &[Direction],
) -> Result<Vec<EnumeratedSequence>, SearchError> {
    let ix = IndexedBoard::new(board);
    let mut out = Vec::new();
    let mut removed = ix.empty_set();
    let mut path = Vec::new();
    enumerate_rec(
        &ix,
        board.ball(),
        &mut removed,
        &mut path,
        max_len,
        cap,
        dirs,
        &mut out,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    ix: &IndexedBoard,
    ball: Coord,
    removed: &mut Vec<u64>,
    path: &mut Vec<Coord>,
    max_len: usize,
    cap: usize,
    dirs: &[Direction],
    out: &mut Vec<EnumeratedSequence>,
) -> Result<(), SearchError> {
    let mut record = |path: &[Coord], ball: Coord, removed: &[u64], winning: bool| {
        if out.len() >= cap {
            return Err(SearchError::TooManySequences { cap });
        }
        out.push(EnumeratedSequence {
            sequence: JumpSequence::new(path.to_vec()),
            ball,
            removed: ix.coords_of(removed),
            winning,
        });
        Ok(())
    };
    record(path, ball, removed, false)?;
    if path.len() >= max_len {
        return Ok(());
    }
    for jump in ix.jumps(ball, removed, dirs) {
        for &i in &jump.jumped {
            set_bit(removed, i);
        }
        path.push(jump.landing);
        if jump.winning {
            let r = {
                if out.len() >= cap {
                    Err(SearchError::TooManySequences { cap })
                } else {
                    out.push(EnumeratedSequence {
                        sequence: JumpSequence::new(path.clone()),
                        ball: jump.landing,
                        removed: ix.coords_of(removed),
                        winning: true,
                    });
                    Ok(())
                }
            };
            path.pop();
            for &i in &jump.jumped {
                clear_bit(removed, i);
            }
            r?;
            continue;
        }
        let r = enumerate_rec(ix, jump.landing, removed, path, max_len, cap, dirs, out);
        path.pop();
        for &i in &jump.jumped {
            clear_bit(removed, i);
        }
        r?;
    }
    Ok(())
}

#[derive(Clone, Debug)]
struct IndexedJump {
    landing: Coord,
    jumped: Vec<u32>,
    winning: bool,
}

/// Board with men numbered in row-major scan order (y, then x), so a removed
/// set is a bitset over those indices.
struct IndexedBoard {
    width: i32,
    height: i32,
    grid: Vec<u32>,
    men: Vec<Coord>,
}

const NO_MAN: u32 = u32::MAX;

impl IndexedBoard {
    fn new(b: &Board) -> Self {
        let mut grid = vec![NO_MAN; (b.width() * b.height()) as usize];
        let mut men: Vec<Coord> = b.men().iter().copied().collect();
        men.sort_by_key(|c| (c.y, c.x));
        for (i, c) in men.iter().enumerate() {
            grid[(c.y * b.width() + c.x) as usize] = i as u32;
        }
        IndexedBoard {
            width: b.width(),
            height: b.height(),
            grid,
            men,
        }
    }

    fn empty_set(&self) -> Vec<u64> {
        vec![0; self.men.len().div_ceil(64)]
    }

    fn man_at(&self, c: Coord, removed: &[u64]) -> Option<u32> {
        if c.x < 0 || c.y < 0 || c.x >= self.width || c.y >= self.height {
            return None;
        }
        let i = self.grid[(c.y * self.width + c.x) as usize];
        (i != NO_MAN && !test_bit(removed, i)).then_some(i)
    }

    fn jumps(&self, ball: Coord, removed: &[u64], dirs: &[Direction]) -> Vec<IndexedJump> {
        let mut out = Vec::new();
        for &d in dirs {
            let mut cur = ball.step(d);
            let mut jumped = Vec::new();
            while let Some(i) = self.man_at(cur, removed) {
                jumped.push(i);
                cur = cur.step(d);
            }
            if jumped.is_empty() {
                continue;
            }
            if let Some(winning) = landing_status(self.width, self.height, cur) {
                out.push(IndexedJump {
                    landing: cur,
                    jumped,
                    winning,
                });
            }
        }
        out
    }

    fn coords_of(&self, removed: &[u64]) -> Vec<Coord> {
        (0..self.men.len() as u32)
            .filter(|&i| test_bit(removed, i))
            .map(|i| self.men[i as usize])
            .collect()
    }
}

fn set_bit(set: &mut [u64], i: u32) {
    set[(i / 64) as usize] |= 1 << (i % 64);
}

fn clear_bit(set: &mut [u64], i: u32) {
    set[(i / 64) as usize] &= !(1 << (i % 64));
}

fn test_bit(set: &[u64], i: u32) -> bool {
    set[(i / 64) as usize] >> (i % 64) & 1 == 1
}
