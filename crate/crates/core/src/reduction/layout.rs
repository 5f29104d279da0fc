//! Coordinates of every line in a compiled instance, and their text manifest.

use std::fmt::Write;

use crate::board::Coord;
use crate::error::ReductionError;
use crate::sat::{Clause, CnfFormula, Literal};

/// Rows used beyond six per variable: the bottom path row, the rows between
/// it and the first variable, the clause row and the goal path.
pub const C_R: i32 = 7;
/// Columns used beyond nine per clause: the two side columns, the return
/// line and their margins.
pub const C_C: i32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarLines {
    /// Row of the line taken when the variable is true.
    pub upper: i32,
    /// Row of the line taken when the variable is false.
    pub lower: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClauseLines {
    pub xs: [i32; 3],
    pub literals: [Literal; 3],
    /// A dead term has no vertical line, only its landing on the fan rows.
    /// Used when a literal repeats in adjacent columns.
    pub live: [bool; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrossingKind {
    Crossing,
    Interaction,
}

/// One meeting of a horizontal variable line with a vertical clause line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingEntry {
    pub var: usize,
    pub upper: bool,
    pub clause: usize,
    pub term: usize,
    pub kind: CrossingKind,
    pub at: Coord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutPlan {
    pub width: i32,
    pub height: i32,
    pub left_col: i32,
    pub right_col: i32,
    pub bottom_row: i32,
    pub top_row: i32,
    pub ball: Coord,
    pub vars: Vec<VarLines>,
    pub clauses: Vec<ClauseLines>,
    pub return_col: Option<i32>,
    /// Landing just below the goal path's two men.
    pub goal: Coord,
    /// Clause indices in traversal order.
    pub order: Vec<usize>,
    /// Side column where the variable phase ends.
    pub exit_side: Side,
    /// Columns widened to four units to keep interactions apart.
    pub widened: usize,
    pub crossings: Vec<CrossingEntry>,
}

impl LayoutPlan {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Board dimensions, checked against `H <= 6n + C_R` and
    /// `W <= 9m + C_C + widened`.
    pub fn dimensions(&self) -> (i32, i32) {
        let n = self.vars.len() as i32;
        let m = self.clauses.len() as i32;
        assert!(
            self.height <= 6 * n + C_R,
            "height {} exceeds 6n+{C_R}",
            self.height
        );
        assert!(
            self.width <= 9 * m + C_C + self.widened as i32,
            "width {} exceeds 9m+{C_C}+{}",
            self.width,
            self.widened
        );
        (self.width, self.height)
    }

    /// The formula the layout encodes, in layout clause order.
    pub fn formula(&self) -> CnfFormula {
        let clauses = self
            .clauses
            .iter()
            .map(|c| Clause::new(c.literals))
            .collect();
        CnfFormula::new(self.vars.len(), clauses).expect("plan literals are in range")
    }

    pub fn crossing_at(&self, at: Coord) -> Option<&CrossingEntry> {
        self.crossings.iter().find(|c| c.at == at)
    }

    pub fn to_manifest(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "layout 1");
        let _ = writeln!(s, "size {} {}", self.width, self.height);
        let _ = writeln!(s, "constants {C_R} {C_C}");
        let _ = writeln!(s, "columns {} {}", self.left_col, self.right_col);
        let _ = writeln!(s, "rows {} {}", self.bottom_row, self.top_row);
        let _ = writeln!(s, "ball {} {}", self.ball.x, self.ball.y);
        let _ = writeln!(s, "goal {} {}", self.goal.x, self.goal.y);
        let _ = writeln!(s, "exit {}", self.exit_side.name());
        match self.return_col {
            Some(x) => {
                let _ = writeln!(s, "return {x}");
            }
            None => {
                let _ = writeln!(s, "return none");
            }
        }
        let _ = writeln!(s, "widened {}", self.widened);
        let order: Vec<String> = self.order.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(s, "order {}", order.join(" "));
        for (i, v) in self.vars.iter().enumerate() {
            let _ = writeln!(s, "var {i} {} {}", v.upper, v.lower);
        }
        for (k, c) in self.clauses.iter().enumerate() {
            let _ = writeln!(
                s,
                "clause {k} {} {} {} {} {} {} {} {} {}",
                c.xs[0],
                c.xs[1],
                c.xs[2],
                c.literals[0].to_dimacs(),
                c.literals[1].to_dimacs(),
                c.literals[2].to_dimacs(),
                c.live[0] as u8,
                c.live[1] as u8,
                c.live[2] as u8
            );
        }
        for e in &self.crossings {
            let _ = writeln!(
                s,
                "crossing {} {} {} {} {} {} {}",
                e.var,
                if e.upper { "upper" } else { "lower" },
                e.clause,
                e.term,
                match e.kind {
                    CrossingKind::Crossing => "crossing",
                    CrossingKind::Interaction => "interaction",
                },
                e.at.x,
                e.at.y
            );
        }
        s
    }

    pub fn from_manifest(text: &str) -> Result<Self, ReductionError> {
        let mut p = ManifestParser::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            p.line(i + 1, line)?;
        }
        p.finish()
    }
}

#[derive(Default)]
struct ManifestParser {
    version: bool,
    size: Option<(i32, i32)>,
    columns: Option<(i32, i32)>,
    rows: Option<(i32, i32)>,
    ball: Option<Coord>,
    goal: Option<Coord>,
    exit: Option<Side>,
    return_col: Option<Option<i32>>,
    widened: usize,
    order: Vec<usize>,
    vars: Vec<VarLines>,
    clauses: Vec<ClauseLines>,
    crossings: Vec<CrossingEntry>,
    last_line: usize,
}

fn err(line: usize, message: impl Into<String>) -> ReductionError {
    ReductionError::Manifest {
        line,
        message: message.into(),
    }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ReductionError> {
    tok.parse()
        .map_err(|_| err(line, format!("bad number `{tok}`")))
}

fn lit(line: usize, tok: &str) -> Result<Literal, ReductionError> {
    Literal::from_dimacs(num(line, tok)?).ok_or_else(|| err(line, format!("bad literal `{tok}`")))
}

impl ManifestParser {
    fn line(&mut self, ln: usize, line: &str) -> Result<(), ReductionError> {
        self.last_line = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let want = |n: usize| {
            if toks.len() == n {
                Ok(())
            } else {
                Err(err(
                    ln,
                    format!(
                        "`{}` takes {} fields, got {}",
                        toks[0],
                        n - 1,
                        toks.len() - 1
                    ),
                ))
            }
        };
        match toks[0] {
            "layout" => {
                want(2)?;
                if toks[1] != "1" {
                    return Err(err(ln, format!("unsupported layout version {}", toks[1])));
                }
                self.version = true;
            }
            "size" => {
                want(3)?;
                self.size = Some((num(ln, toks[1])?, num(ln, toks[2])?));
            }
            "constants" => {
                want(3)?;
                if num::<i32>(ln, toks[1])? != C_R || num::<i32>(ln, toks[2])? != C_C {
                    return Err(err(ln, "constants do not match this build"));
                }
            }
            "columns" => {
                want(3)?;
                self.columns = Some((num(ln, toks[1])?, num(ln, toks[2])?));
            }
            "rows" => {
                want(3)?;
                self.rows = Some((num(ln, toks[1])?, num(ln, toks[2])?));
            }
            "ball" => {
                want(3)?;
                self.ball = Some(Coord::new(num(ln, toks[1])?, num(ln, toks[2])?));
            }
            "goal" => {
                want(3)?;
                self.goal = Some(Coord::new(num(ln, toks[1])?, num(ln, toks[2])?));
            }
            "exit" => {
                want(2)?;
                self.exit = Some(match toks[1] {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    other => return Err(err(ln, format!("bad side `{other}`"))),
                });
            }
            "return" => {
                want(2)?;
                self.return_col = Some(match toks[1] {
                    "none" => None,
                    x => Some(num(ln, x)?),
                });
            }
            "widened" => {
                want(2)?;
                self.widened = num(ln, toks[1])?;
            }
            "order" => {
                self.order = toks[1..]
                    .iter()
                    .map(|t| num(ln, t))
                    .collect::<Result<_, _>>()?;
            }
            "var" => {
                want(4)?;
                let i: usize = num(ln, toks[1])?;
                if i != self.vars.len() {
                    return Err(err(ln, format!("expected var {}", self.vars.len())));
                }
                self.vars.push(VarLines {
                    upper: num(ln, toks[2])?,
                    lower: num(ln, toks[3])?,
                });
            }
            "clause" => {
                want(11)?;
                let k: usize = num(ln, toks[1])?;
                if k != self.clauses.len() {
                    return Err(err(ln, format!("expected clause {}", self.clauses.len())));
                }
                let mut xs = [0; 3];
                let mut literals = [Literal::positive(0); 3];
                let mut live = [true; 3];
                for j in 0..3 {
                    xs[j] = num(ln, toks[2 + j])?;
                    literals[j] = lit(ln, toks[5 + j])?;
                    live[j] = match toks[8 + j] {
                        "1" => true,
                        "0" => false,
                        other => return Err(err(ln, format!("bad live flag `{other}`"))),
                    };
                }
                self.clauses.push(ClauseLines { xs, literals, live });
            }
            "crossing" => {
                want(8)?;
                let upper = match toks[2] {
                    "upper" => true,
                    "lower" => false,
                    other => return Err(err(ln, format!("bad line `{other}`"))),
                };
                let kind = match toks[5] {
                    "crossing" => CrossingKind::Crossing,
                    "interaction" => CrossingKind::Interaction,
                    other => return Err(err(ln, format!("bad crossing kind `{other}`"))),
                };
                self.crossings.push(CrossingEntry {
                    var: num(ln, toks[1])?,
                    upper,
                    clause: num(ln, toks[3])?,
                    term: num(ln, toks[4])?,
                    kind,
                    at: Coord::new(num(ln, toks[6])?, num(ln, toks[7])?),
                });
            }
            other => return Err(err(ln, format!("unknown record `{other}`"))),
        }
        Ok(())
    }

    fn finish(self) -> Result<LayoutPlan, ReductionError> {
        let ln = self.last_line;
        let missing = |what: &str| err(ln, format!("missing `{what}` record"));
        if !self.version {
            return Err(missing("layout"));
        }
        let (width, height) = self.size.ok_or_else(|| missing("size"))?;
        let (left_col, right_col) = self.columns.ok_or_else(|| missing("columns"))?;
        let (bottom_row, top_row) = self.rows.ok_or_else(|| missing("rows"))?;
        let n = self.vars.len();
        for c in &self.clauses {
            if c.literals.iter().any(|l| l.variable >= n) {
                return Err(err(ln, "clause literal refers to a missing variable"));
            }
        }
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != (0..self.clauses.len()).collect::<Vec<_>>() {
            return Err(err(ln, "order is not a permutation of the clauses"));
        }
        for e in &self.crossings {
            if e.var >= n || e.clause >= self.clauses.len() || e.term >= 3 {
                return Err(err(ln, "crossing refers to a missing line"));
            }
        }
        Ok(LayoutPlan {
            width,
            height,
            left_col,
            right_col,
            bottom_row,
            top_row,
            ball: self.ball.ok_or_else(|| missing("ball"))?,
            vars: self.vars,
            clauses: self.clauses,
            return_col: self.return_col.ok_or_else(|| missing("return"))?,
            goal: self.goal.ok_or_else(|| missing("goal"))?,
            order: self.order,
            exit_side: self.exit.ok_or_else(|| missing("exit"))?,
            widened: self.widened,
            crossings: self.crossings,
        })
    }
}
