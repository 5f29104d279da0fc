//! The jump graph `G_p` of a single piece.
//!
//! Vertices are the vacant cells `p` can reach by jumping (plus its origin)
//! and the opposing pieces it can jump. Each jump `c -> l` over `q` gives
//! edges `c - q` and `q - l`; for men the edges point forward.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::board::Coord;
use crate::error::CheckersError;

use super::diamond::{to_diamond, DiamondBoard};
use super::{CheckersPosition, Piece};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Cell(Coord),
    Piece(Coord),
}

impl Vertex {
    pub fn coord(self) -> Coord {
        match self {
            Vertex::Cell(c) | Vertex::Piece(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpGraph {
    pub diamond: DiamondBoard,
    /// Origin cell, in diamond coordinates.
    pub origin: Coord,
    pub piece: Piece,
    pub cells: BTreeSet<Coord>,
    pub jumpable: BTreeSet<Coord>,
    /// Directed `(from, to)` for men; for kings each undirected edge appears
    /// once with the smaller vertex first.
    pub edges: BTreeSet<(Vertex, Vertex)>,
    pub directed: bool,
}

pub fn build_jump_graph(pos: &CheckersPosition, p: Coord) -> Result<JumpGraph, CheckersError> {
    let piece = pos
        .piece_at(p)
        .ok_or(CheckersError::PieceNotFound { x: p.x, y: p.y })?;
    if piece.color != pos.mover() {
        return Err(CheckersError::NotMover { x: p.x, y: p.y });
    }
    let d = to_diamond(pos)?;
    let origin = d.to_cell(p);
    let vacant = |c: Coord| c == origin || d.piece_at(c).is_none();
    let mut cells = BTreeSet::from([origin]);
    let mut jumpable = BTreeSet::new();
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([origin]);
    while let Some(c) = queue.pop_front() {
        if !piece.king && c != origin && d.is_king_row(piece.color, c) {
            // a man stops on reaching its king row
            continue;
        }
        for &(du, dv) in DiamondBoard::steps(piece) {
            let q = c.offset(du, dv);
            let l = c.offset(2 * du, 2 * dv);
            let opposing = d.piece_at(q).is_some_and(|x| x.color != piece.color);
            if !opposing || !d.is_cell(l) || !vacant(l) {
                continue;
            }
            jumpable.insert(q);
            let (a, b, e) = (Vertex::Cell(c), Vertex::Piece(q), Vertex::Cell(l));
            if piece.king {
                edges.insert((a.min(b), a.max(b)));
                edges.insert((b.min(e), b.max(e)));
            } else {
                edges.insert((a, b));
                edges.insert((b, e));
            }
            if cells.insert(l) {
                queue.push_back(l);
            }
        }
    }
    Ok(JumpGraph {
        diamond: d,
        origin,
        piece,
        cells,
        jumpable,
        edges,
        directed: !piece.king,
    })
}

impl JumpGraph {
    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|(a, b)| *a == v || *b == v)
            .count()
    }

    /// `(out, in)` degrees; for undirected graphs both equal the degree.
    pub fn out_in(&self, v: Vertex) -> (usize, usize) {
        if !self.directed {
            let d = self.degree(v);
            return (d, d);
        }
        let out = self.edges.iter().filter(|(a, _)| *a == v).count();
        let inn = self.edges.iter().filter(|(_, b)| *b == v).count();
        (out, inn)
    }

    /// Every jumpable piece has degree two.
    pub fn degree_law_holds(&self) -> bool {
        self.jumpable
            .iter()
            .all(|&q| self.degree(Vertex::Piece(q)) == 2)
    }

    /// Every cell shares both coordinate parities with the origin.
    pub fn parity_law_holds(&self) -> bool {
        let par = |c: Coord| (c.x.rem_euclid(2), c.y.rem_euclid(2));
        self.cells.iter().all(|&c| par(c) == par(self.origin))
    }

    fn neighbours(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            if !self.directed {
                adj.entry(b).or_default().push(a);
            }
        }
        for list in adj.values_mut() {
            list.sort();
        }
        adj
    }

    /// Underlying undirected graph over edge-incident vertices plus the
    /// origin is connected.
    pub fn is_connected(&self) -> bool {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let start = Vertex::Cell(self.origin);
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        adj.keys().all(|v| seen.contains(v))
    }

    /// Degree condition for an Euler path starting at the origin. Undirected:
    /// at most one odd vertex besides the origin. Directed: balanced except
    /// the origin (out - in = 1) and one sink (in - out = 1), or all balanced.
    pub fn euler_degrees_ok(&self) -> bool {
        let origin = Vertex::Cell(self.origin);
        let mut vertices: BTreeSet<Vertex> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vertices.insert(origin);
        if !self.directed {
            let odd: Vec<Vertex> = vertices
                .iter()
                .copied()
                .filter(|&v| self.degree(v) % 2 == 1)
                .collect();
            return odd.iter().filter(|&&v| v != origin).count() <= 1;
        }
        let mut sinks = 0;
        let mut balanced = true;
        let mut origin_surplus = 0i64;
        for &v in &vertices {
            let (o, i) = self.out_in(v);
            let diff = o as i64 - i as i64;
            if v == origin {
                origin_surplus = diff;
            } else if diff == -1 {
                sinks += 1;
            } else if diff != 0 {
                balanced = false;
            }
        }
        balanced && ((origin_surplus == 1 && sinks == 1) || (origin_surplus == 0 && sinks == 0))
    }

    /// Euler path from the origin by Hierholzer's algorithm, visiting
    /// neighbours in vertex order. Meaningful only when
    /// [`JumpGraph::euler_degrees_ok`] and [`JumpGraph::is_connected`] hold.
    pub fn euler_path(&self) -> Vec<Vertex> {
        let adj = self.neighbours();
        let mut used: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        let key = |a: Vertex, b: Vertex| {
            if self.directed {
                (a, b)
            } else {
                (a.min(b), a.max(b))
            }
        };
        let mut next: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut stack = vec![Vertex::Cell(self.origin)];
        let mut path = Vec::new();
        while let Some(&v) = stack.last() {
            let list = adj.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            let i = next.entry(v).or_insert(0);
            while *i < list.len() && used.contains(&key(v, list[*i])) {
                *i += 1;
            }
            if *i < list.len() {
                let w = list[*i];
                used.insert(key(v, w));
                stack.push(w);
            } else {
                path.push(v);
                stack.pop();
            }
        }
        path.reverse();
        path
    }

    /// Shortest directed path from the origin to a cell on the piece's king
    /// row, as a vertex list.
    pub fn path_to_king_row(&self) -> Option<Vec<Vertex>> {
        let adj = self.neighbours();
        let start = Vertex::Cell(self.origin);
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if let Vertex::Cell(c) = v {
                if v != start && self.diamond.is_king_row(self.piece.color, c) {
                    let mut path = vec![v];
                    let mut cur = v;
                    while let Some(&p) = parent.get(&cur) {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
            }
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Landing squares, in board coordinates, of a vertex path.
    pub fn landings(&self, path: &[Vertex]) -> Vec<Coord> {
        path.iter()
            .skip(1)
            .filter_map(|v| match v {
                Vertex::Cell(c) => Some(self.diamond.to_square(*c)),
                Vertex::Piece(_) => None,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(text: &str) -> CheckersPosition {
        CheckersPosition::parse(text).unwrap()
    }

    #[test]
    fn lone_king_has_single_vertex() {
        let p = pos("checkers 4 4 black\n....\n....\n....\nB...\n");
        let g = build_jump_graph(&p, Coord::new(0, 0)).unwrap();
        assert_eq!(g.cells.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn smallest_jump_has_three_vertices() {
        let p = pos("checkers 4 4 white\n....\n....\n.b..\nW...\n");
        let g = build_jump_graph(&p, Coord::new(0, 0)).unwrap();
        assert_eq!(g.cells.len() + g.jumpable.len(), 3);
        assert_eq!(
            g.degree(Vertex::Piece(*g.jumpable.iter().next().unwrap())),
            2
        );
        assert!(g.degree_law_holds() && g.parity_law_holds());
    }

    #[test]
    fn men_edges_point_forward() {
        // white man at (2,2) may jump down over (1,1) but not up over (3,3)
        let p = pos("checkers 4 4 white\n...B\n..w.\n.b..\n....\n");
        let g = build_jump_graph(&p, Coord::new(2, 2)).unwrap();
        assert_eq!(g.jumpable.len(), 1);
        assert_eq!(g.landings(&g.euler_path()), vec![Coord::new(0, 0)]);
        assert!(g.euler_degrees_ok());
    }

    #[test]
    fn blocked_landing_excludes_piece() {
        let p = pos("checkers 4 4 black\n....\n..w.\n.w..\nb...\n");
        let g = build_jump_graph(&p, Coord::new(0, 0)).unwrap();
        assert!(g.jumpable.is_empty());
    }

    #[test]
    fn wrong_side_is_rejected() {
        let p = pos("checkers 4 4 black\n....\n....\n.w..\nb...\n");
        assert_eq!(
            build_jump_graph(&p, Coord::new(1, 1)).unwrap_err(),
            CheckersError::NotMover { x: 1, y: 1 }
        );
        assert_eq!(
            build_jump_graph(&p, Coord::new(2, 2)).unwrap_err(),
            CheckersError::PieceNotFound { x: 2, y: 2 }
        );
    }
}
