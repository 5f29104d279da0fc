//! Compiles a 3-CNF formula into a Phutball position whose winning jump
//! sequences correspond to satisfying assignments.
//!
//! The ball first runs up through one pair of horizontal lines per variable,
//! taking the lower line for false and the upper line for true. It then
//! walks the clauses, going down or up one of three vertical lines per
//! clause. A vertical line meets the line of its own literal's false
//! direction at an interaction, so it is passable only when that line was
//! not taken, i.e. when the literal is true. Every other meeting is a
//! crossing.
//!
//! Rows: the bottom clause row is 0, variable `i` has its lower line at
//! `3 + 6i` and upper line at `6 + 6i`, the top clause row is `6n + 3`, and
//! the goal row is `6n + 6`. Columns: side columns at 0 and `W - 1`, clause
//! lines three apart starting at 3, plus a return line when the clause walk
//! ends on the bottom row.

pub mod gadget;
pub mod layout;

use std::collections::{BTreeMap, BTreeSet};

use crate::board::{Board, Coord};
use crate::error::ReductionError;
use crate::sat::{order_clause_variables, CnfFormula, Literal};

use gadget::{GadgetTemplate, Transform};
pub use layout::{ClauseLines, CrossingEntry, CrossingKind, LayoutPlan, Side, VarLines, C_C, C_R};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledInstance {
    pub board: Board,
    pub plan: LayoutPlan,
}

impl CompiledInstance {
    /// The formula as laid out; literal order within clauses may differ from
    /// the input.
    pub fn formula(&self) -> CnfFormula {
        self.plan.formula()
    }
}

struct Canvas {
    width: i32,
    height: i32,
    men: BTreeSet<Coord>,
    vacant: BTreeSet<Coord>,
    // cell -> (gadget label, cell is a landing)
    owned: BTreeMap<Coord, (String, bool)>,
    tracks: Vec<(Coord, Coord)>,
}

impl Canvas {
    fn new(width: i32, height: i32) -> Self {
        Canvas {
            width,
            height,
            men: BTreeSet::new(),
            vacant: BTreeSet::new(),
            owned: BTreeMap::new(),
            tracks: Vec::new(),
        }
    }

    fn place(&mut self, t: &GadgetTemplate, anchor: Coord) -> Result<(), ReductionError> {
        let label = t.kind.name().to_string();
        let landings: BTreeSet<Coord> = t
            .landings
            .iter()
            .map(|c| c.offset(anchor.x, anchor.y))
            .collect();
        for cell in t.footprint_cells() {
            let at = cell.offset(anchor.x, anchor.y);
            if at.x < 0 || at.y < 0 || at.x >= self.width || at.y >= self.height {
                return Err(ReductionError::OutOfBounds {
                    gadget: label,
                    anchor,
                    at,
                });
            }
            if let Some((_, other_landing)) = self.owned.get(&at) {
                // adjacent fans may share a landing cell
                if !(*other_landing && landings.contains(&at)) {
                    return Err(ReductionError::Overlap {
                        gadget: label,
                        anchor,
                        at,
                    });
                }
            }
        }
        for cell in t.footprint_cells() {
            let at = cell.offset(anchor.x, anchor.y);
            let is_landing = landings.contains(&at);
            self.owned
                .entry(at)
                .or_insert_with(|| (label.clone(), is_landing));
        }
        self.men
            .extend(t.men.iter().map(|c| c.offset(anchor.x, anchor.y)));
        self.vacant.extend(landings);
        Ok(())
    }

    fn track(&mut self, a: Coord, b: Coord) {
        debug_assert!(a.x == b.x || a.y == b.y);
        self.tracks.push((a, b));
    }

    fn finish(mut self, ball: Coord) -> Result<Board, ReductionError> {
        for &(a, b) in &self.tracks {
            self.vacant.insert(a);
            self.vacant.insert(b);
        }
        for &(a, b) in &self.tracks {
            let (dx, dy) = ((b.x - a.x).signum(), (b.y - a.y).signum());
            let mut c = a.offset(dx, dy);
            while c != b {
                if !self.owned.contains_key(&c) && !self.vacant.contains(&c) {
                    self.men.insert(c);
                }
                c = c.offset(dx, dy);
            }
        }
        if let Some(&at) = self.men.intersection(&self.vacant).next() {
            return Err(ReductionError::Overlap {
                gadget: "track".into(),
                anchor: at,
                at,
            });
        }
        Ok(Board::new(self.width, self.height, ball, self.men)?)
    }
}

fn lower_row(i: usize) -> i32 {
    3 + 6 * i as i32
}

fn upper_row(i: usize) -> i32 {
    6 + 6 * i as i32
}

/// Column positions and liveness for every clause term, left to right.
///
/// Two interactions on the same row three columns apart would leave adjacent
/// landings, so a term whose literal equals its live left neighbour's is
/// either dropped (when the literal is live elsewhere in its clause) or moved
/// one column further right.
fn place_columns(clauses: &[[Literal; 3]], first: i32) -> (Vec<[i32; 3]>, Vec<[bool; 3]>, usize) {
    let mut xs = Vec::with_capacity(clauses.len());
    let mut live = Vec::with_capacity(clauses.len());
    let mut widened = 0;
    let mut x = first;
    let mut prev: Option<Literal> = None;
    for (k, lits) in clauses.iter().enumerate() {
        let mut cx = [0; 3];
        let mut cl = [true; 3];
        for j in 0..3 {
            if k > 0 || j > 0 {
                x += 3;
            }
            let l = lits[j];
            if prev == Some(l) {
                let elsewhere = (0..3).any(|o| o != j && lits[o] == l && (o > j || cl[o]));
                if elsewhere {
                    cl[j] = false;
                } else {
                    x += 1;
                    widened += 1;
                }
            }
            cx[j] = x;
            prev = if cl[j] { Some(l) } else { None };
        }
        xs.push(cx);
        live.push(cl);
    }
    (xs, live, widened)
}

/// Builds the position for `formula`. Literals inside each clause are first
/// reordered with [`order_clause_variables`]; the plan records the order
/// actually used.
pub fn compile(formula: &CnfFormula) -> Result<CompiledInstance, ReductionError> {
    let n = formula.num_vars();
    let m = formula.num_clauses();
    if n == 0 {
        // the empty formula: a straight two-man run to the goal
        let board = Board::new(1, 4, Coord::new(0, 0), [Coord::new(0, 1), Coord::new(0, 2)])?;
        let plan = LayoutPlan {
            width: 1,
            height: 4,
            left_col: 0,
            right_col: 0,
            bottom_row: 0,
            top_row: 0,
            ball: Coord::new(0, 0),
            vars: vec![],
            clauses: vec![],
            return_col: None,
            goal: Coord::new(0, 0),
            order: vec![],
            exit_side: Side::Left,
            widened: 0,
            crossings: vec![],
        };
        return Ok(CompiledInstance { board, plan });
    }

    let ordered = order_clause_variables(formula).formula;
    let lits: Vec<[Literal; 3]> = ordered.clauses().iter().map(|c| *c.literals()).collect();
    let exit_side = if n % 2 == 1 { Side::Right } else { Side::Left };
    let needs_return = m % 2 == 1;
    let return_left = needs_return && exit_side == Side::Right;
    let first_line = if return_left { 6 } else { 3 };
    let (xs, live, widened) = place_columns(&lits, first_line);

    let left = 0;
    let (return_col, right) = if m == 0 {
        (None, 3)
    } else {
        let last_line = xs[m - 1][2];
        if !needs_return {
            (None, last_line + 3)
        } else if return_left {
            (Some(3), last_line + 3)
        } else {
            (Some(last_line + 3), last_line + 6)
        }
    };
    let width = right + 1;
    let bottom = 0;
    let top = 6 * n as i32 + 3;
    let height = if m == 0 { 6 * n as i32 + 4 } else { top + 4 };
    let ball = Coord::new(left, lower_row(0));
    let side_x = |s: Side| if s == Side::Left { left } else { right };

    let mut canvas = Canvas::new(width, height);

    // variable phase
    for i in 0..n {
        let entry = if i % 2 == 0 { Side::Left } else { Side::Right };
        let (ex, ox) = if entry == Side::Left {
            (left, right)
        } else {
            (right, left)
        };
        let mirror = if entry == Side::Left {
            Transform::IDENTITY
        } else {
            Transform::MIRROR_X
        };
        canvas.place(
            &GadgetTemplate::fan_out2().transformed(mirror),
            Coord::new(ex, lower_row(i)),
        )?;
        canvas.place(
            &GadgetTemplate::fan_in2().transformed(mirror),
            Coord::new(ox, lower_row(i)),
        )?;
        canvas.track(
            Coord::new(left, lower_row(i)),
            Coord::new(right, lower_row(i)),
        );
        canvas.track(
            Coord::new(left, upper_row(i)),
            Coord::new(right, upper_row(i)),
        );
        if i + 1 < n {
            canvas.track(
                Coord::new(ox, upper_row(i)),
                Coord::new(ox, lower_row(i + 1)),
            );
        }
    }

    // vertical lines and their meetings with variable lines
    let mut crossings = Vec::new();
    for (k, clause) in lits.iter().enumerate() {
        for j in 0..3 {
            if !live[k][j] {
                continue;
            }
            let x = xs[k][j];
            let l = clause[j];
            for i in 0..n {
                for upper in [false, true] {
                    let y = if upper { upper_row(i) } else { lower_row(i) };
                    // the literal's false line blocks it
                    let kind = if l.variable == i && upper == l.negated {
                        CrossingKind::Interaction
                    } else {
                        CrossingKind::Crossing
                    };
                    let t = match kind {
                        CrossingKind::Crossing => GadgetTemplate::crossing(),
                        CrossingKind::Interaction => GadgetTemplate::interaction(),
                    };
                    canvas.place(&t, Coord::new(x, y))?;
                    crossings.push(CrossingEntry {
                        var: i,
                        upper,
                        clause: k,
                        term: j,
                        kind,
                        at: Coord::new(x, y),
                    });
                }
            }
            canvas.track(Coord::new(x, bottom), Coord::new(x, top));
        }
    }
    if let Some(rx) = return_col {
        for i in 0..n {
            canvas.place(&GadgetTemplate::crossing(), Coord::new(rx, lower_row(i)))?;
            canvas.place(&GadgetTemplate::crossing(), Coord::new(rx, upper_row(i)))?;
        }
        canvas.track(Coord::new(rx, bottom), Coord::new(rx, top));
    }

    // clause phase
    let sx = side_x(exit_side);
    let last_upper = Coord::new(sx, upper_row(n - 1));
    let order: Vec<usize> = match exit_side {
        Side::Left => (0..m).collect(),
        Side::Right => (0..m).rev().collect(),
    };
    let goal = if m == 0 {
        canvas.place(&GadgetTemplate::goal_path(), last_upper)?;
        last_upper
    } else {
        let along = if exit_side == Side::Left {
            Transform::IDENTITY
        } else {
            Transform::MIRROR_X
        };
        let walk = |k: usize| -> [i32; 3] {
            let c = xs[k];
            if exit_side == Side::Left {
                c
            } else {
                [c[2], c[1], c[0]]
            }
        };
        canvas.track(last_upper, Coord::new(sx, top));
        canvas.track(Coord::new(sx, top), Coord::new(walk(order[0])[0], top));
        for (t, &k) in order.iter().enumerate() {
            let w = walk(k);
            let (d1, d2) = ((w[1] - w[0]).abs(), (w[2] - w[1]).abs());
            let down = t % 2 == 0;
            let (top_t, bottom_t) = if down {
                (
                    GadgetTemplate::fan_out3(d1, d2).transformed(along),
                    GadgetTemplate::fan_in3(d1, d2).transformed(along),
                )
            } else {
                let flip = along.then(Transform::MIRROR_Y);
                (
                    GadgetTemplate::fan_in3(d1, d2).transformed(flip),
                    GadgetTemplate::fan_out3(d1, d2).transformed(flip),
                )
            };
            canvas.place(&top_t, Coord::new(w[0], top))?;
            canvas.place(&bottom_t, Coord::new(w[0], bottom))?;
            let row = if down { bottom } else { top };
            if t + 1 < m {
                canvas.track(
                    Coord::new(w[2], row),
                    Coord::new(walk(order[t + 1])[0], row),
                );
            }
        }
        let far = walk(order[m - 1])[2];
        let goal = match return_col {
            Some(rx) => {
                canvas.track(Coord::new(far, bottom), Coord::new(rx, bottom));
                Coord::new(rx, top)
            }
            None => Coord::new(far, top),
        };
        canvas.place(&GadgetTemplate::goal_path(), goal)?;
        goal
    };

    let board = canvas.finish(ball)?;
    let vars = (0..n)
        .map(|i| VarLines {
            upper: upper_row(i),
            lower: lower_row(i),
        })
        .collect();
    let clauses = (0..m)
        .map(|k| ClauseLines {
            xs: xs[k],
            literals: lits[k],
            live: live[k],
        })
        .collect();
    let plan = LayoutPlan {
        width,
        height,
        left_col: left,
        right_col: right,
        bottom_row: bottom,
        top_row: top,
        ball,
        vars,
        clauses,
        return_col,
        goal,
        order,
        exit_side,
        widened,
        crossings,
    };
    Ok(CompiledInstance { board, plan })
}

#[cfg(test)]
mod tests;
