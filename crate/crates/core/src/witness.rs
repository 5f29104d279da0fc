//! Translation between satisfying assignments and winning jump sequences on
//! compiled instances.

use std::collections::BTreeSet;

use crate::board::{
    apply_jump, direction_towards, legal_jumps, replay, Coord, JumpSequence, Verdict,
};
use crate::error::WitnessError;
use crate::reduction::{CompiledInstance, LayoutPlan, Side};
use crate::sat::{evaluate, Assignment};

/// Which line the ball takes in every variable pair and clause triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathChoice {
    pub upper: Vec<bool>,
    /// Term index per clause, in clause index order.
    pub term: Vec<usize>,
}

impl PathChoice {
    pub fn assignment(&self) -> Assignment {
        Assignment::new(self.upper.clone())
    }
}

/// Lines whose men a sequence removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineUsage {
    /// `(lower used, upper used)` per variable.
    pub vars: Vec<(bool, bool)>,
    /// Used terms per clause.
    pub clauses: Vec<Vec<usize>>,
}

impl LineUsage {
    pub fn is_simple(&self) -> bool {
        self.vars.iter().all(|&(l, u)| l != u) && self.clauses.iter().all(|c| c.len() == 1)
    }
}

/// Lowest live term satisfied by `a` in each clause.
pub fn choose_terms(plan: &LayoutPlan, a: &Assignment) -> Result<Vec<usize>, WitnessError> {
    plan.clauses
        .iter()
        .enumerate()
        .map(|(k, c)| {
            (0..3)
                .find(|&j| c.live[j] && c.literals[j].holds(a))
                .ok_or(WitnessError::Unsatisfied(k))
        })
        .collect()
}

pub fn assignment_to_sequence(
    inst: &CompiledInstance,
    a: &Assignment,
) -> Result<JumpSequence, WitnessError> {
    let plan = &inst.plan;
    if a.len() != plan.num_vars() {
        return Err(WitnessError::AssignmentLength {
            expected: plan.num_vars(),
            got: a.len(),
        });
    }
    if let Some(k) = plan
        .formula()
        .clauses()
        .iter()
        .position(|c| !c.satisfied_by(a))
    {
        return Err(WitnessError::Unsatisfied(k));
    }
    let choice = PathChoice {
        upper: a.values().to_vec(),
        term: choose_terms(plan, a)?,
    };
    sequence_for_choice(inst, &choice)
}

/// Corner points of the path selected by `choice`, ending on the goal row.
pub fn waypoints(plan: &LayoutPlan, choice: &PathChoice) -> Vec<Coord> {
    let n = plan.num_vars();
    let (left, right) = (plan.left_col, plan.right_col);
    let mut w = Vec::new();
    let win = Coord::new(plan.goal.x, plan.height - 1);
    if n == 0 {
        w.push(win);
        return w;
    }
    for (i, v) in plan.vars.iter().enumerate() {
        let (ex, ox) = if i % 2 == 0 {
            (left, right)
        } else {
            (right, left)
        };
        w.push(Coord::new(ex, v.lower));
        if choice.upper[i] {
            w.push(Coord::new(ex, v.upper));
            w.push(Coord::new(ox, v.upper));
        } else {
            w.push(Coord::new(ox, v.lower));
            w.push(Coord::new(ox, v.upper));
        }
    }
    if plan.num_clauses() == 0 {
        w.push(win);
        return w;
    }
    let sx = if plan.exit_side == Side::Left {
        left
    } else {
        right
    };
    let (top, bottom) = (plan.top_row, plan.bottom_row);
    w.push(Coord::new(sx, top));
    for (t, &k) in plan.order.iter().enumerate() {
        let c = &plan.clauses[k];
        let x = c.xs[choice.term[k]];
        let far = if plan.exit_side == Side::Left {
            c.xs[2]
        } else {
            c.xs[0]
        };
        let (from, to) = if t % 2 == 0 {
            (top, bottom)
        } else {
            (bottom, top)
        };
        w.push(Coord::new(x, from));
        w.push(Coord::new(x, to));
        w.push(Coord::new(far, to));
    }
    if let Some(rx) = plan.return_col {
        w.push(Coord::new(rx, bottom));
        w.push(Coord::new(rx, top));
    }
    w.push(win);
    w
}

pub fn sequence_for_choice(
    inst: &CompiledInstance,
    choice: &PathChoice,
) -> Result<JumpSequence, WitnessError> {
    follow_waypoints(inst, &waypoints(&inst.plan, choice))
}

/// Jumps straight towards each waypoint in turn. Every jump must be
/// orthogonal and may not overshoot; the last waypoint must be reached by a
/// winning jump.
pub fn follow_waypoints(
    inst: &CompiledInstance,
    points: &[Coord],
) -> Result<JumpSequence, WitnessError> {
    let mut board = inst.board.clone();
    let mut landings = Vec::new();
    for (idx, &target) in points.iter().enumerate() {
        let last = idx + 1 == points.len();
        while board.ball() != target {
            let at = board.ball();
            let fail = WitnessError::Route { at, target };
            let d = direction_towards(at, target)
                .filter(|d| d.is_orthogonal())
                .ok_or(fail.clone())?;
            let (_, out) = legal_jumps(&board)
                .into_iter()
                .find(|(jd, _)| *jd == d)
                .ok_or(fail.clone())?;
            let overshoot = (out.landing.x - target.x) * (at.x - target.x) < 0
                || (out.landing.y - target.y) * (at.y - target.y) < 0;
            if overshoot {
                return Err(fail);
            }
            landings.push(out.landing);
            if out.winning {
                if last && out.landing == target {
                    return Ok(JumpSequence::new(landings));
                }
                return Err(fail);
            }
            board = apply_jump(&board, d).map_err(|_| fail)?;
        }
    }
    Err(WitnessError::NotWinning(
        "path ends before the goal line".into(),
    ))
}

/// Classifies lines by the men the sequence removes: a line is used if it
/// loses a man that belongs to no other line.
pub fn line_usage(inst: &CompiledInstance, s: &JumpSequence) -> Result<LineUsage, WitnessError> {
    let (verdict, removed) = replay(&inst.board, s);
    if verdict != Verdict::ValidWinning {
        return Err(WitnessError::NotWinning(format!("{verdict:?}")));
    }
    let removed: BTreeSet<Coord> = removed.into_iter().collect();
    let plan = &inst.plan;
    let mut columns: BTreeSet<i32> = plan
        .clauses
        .iter()
        .flat_map(|c| (0..3).filter(|&j| c.live[j]).map(|j| c.xs[j]))
        .collect();
    columns.extend(plan.return_col);
    let rows: BTreeSet<i32> = plan.vars.iter().flat_map(|v| [v.lower, v.upper]).collect();
    let row_used = |y: i32| {
        removed.iter().any(|c| {
            c.y == y && c.x > plan.left_col && c.x < plan.right_col && !columns.contains(&c.x)
        })
    };
    let column_used = |x: i32| {
        removed.iter().any(|c| {
            c.x == x && c.y > plan.bottom_row && c.y < plan.top_row && !rows.contains(&c.y)
        })
    };
    let vars = plan
        .vars
        .iter()
        .map(|v| (row_used(v.lower), row_used(v.upper)))
        .collect();
    let clauses = plan
        .clauses
        .iter()
        .map(|c| {
            (0..3)
                .filter(|&j| c.live[j] && column_used(c.xs[j]))
                .collect()
        })
        .collect();
    Ok(LineUsage { vars, clauses })
}

pub fn sequence_to_assignment(
    inst: &CompiledInstance,
    s: &JumpSequence,
) -> Result<Assignment, WitnessError> {
    let usage = line_usage(inst, s)?;
    let mut values = Vec::with_capacity(usage.vars.len());
    for (i, &(lower, upper)) in usage.vars.iter().enumerate() {
        if lower == upper {
            let what = if lower { "both lines" } else { "neither line" };
            return Err(WitnessError::Manifest(format!(
                "sequence uses {what} of variable {i}"
            )));
        }
        values.push(upper);
    }
    let a = Assignment::new(values);
    if !evaluate(&inst.plan.formula(), &a) {
        return Err(WitnessError::Manifest(
            "extracted assignment does not satisfy the formula".into(),
        ));
    }
    Ok(a)
}

/// Rewrites a winning sequence to use one line per variable pair and clause
/// triple, by extracting the choices and regenerating the path.
pub fn simplify_sequence(
    inst: &CompiledInstance,
    s: &JumpSequence,
) -> Result<JumpSequence, WitnessError> {
    let usage = line_usage(inst, s)?;
    if usage.is_simple() {
        return Ok(s.clone());
    }
    let a = sequence_to_assignment(inst, s)?;
    let fallback = choose_terms(&inst.plan, &a)?;
    let term = usage
        .clauses
        .iter()
        .zip(fallback)
        .map(|(used, lowest)| if used.len() == 1 { used[0] } else { lowest })
        .collect();
    sequence_for_choice(
        inst,
        &PathChoice {
            upper: a.values().to_vec(),
            term,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::verify_sequence;
    use crate::reduction::compile;
    use crate::sat::{parse_dimacs, CnfFormula};
    use crate::solver::{find_winning_sequence, SearchOptions};

    fn two_clause_instance() -> CompiledInstance {
        compile(&parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap()).unwrap()
    }

    #[test]
    fn assignment_round_trip() {
        let inst = two_clause_instance();
        let a = Assignment::parse("T F F").unwrap();
        let s = assignment_to_sequence(&inst, &a).unwrap();
        assert_eq!(verify_sequence(&inst.board, &s), Verdict::ValidWinning);
        assert!(s.len() <= inst.board.men().len());
        assert_eq!(sequence_to_assignment(&inst, &s).unwrap(), a);
        let usage = line_usage(&inst, &s).unwrap();
        assert!(usage.is_simple());
    }

    #[test]
    fn every_satisfying_assignment_round_trips() {
        let inst = two_clause_instance();
        for idx in 0..8 {
            let a = Assignment::from_index(3, idx);
            match assignment_to_sequence(&inst, &a) {
                Ok(s) => assert_eq!(sequence_to_assignment(&inst, &s).unwrap(), a),
                Err(e) => {
                    assert!(!evaluate(&inst.formula(), &a));
                    assert!(matches!(e, WitnessError::Unsatisfied(_)));
                }
            }
        }
    }

    #[test]
    fn unsatisfying_assignment_names_the_clause() {
        let inst = two_clause_instance();
        let err = assignment_to_sequence(&inst, &Assignment::parse("T T T").unwrap()).unwrap_err();
        assert_eq!(err, WitnessError::Unsatisfied(1));
    }

    #[test]
    fn empty_formula_uses_only_the_goal_path() {
        let inst = compile(&CnfFormula::new(0, vec![]).unwrap()).unwrap();
        let s = assignment_to_sequence(&inst, &Assignment::new(vec![])).unwrap();
        assert_eq!(s.landings, vec![Coord::new(0, 3)]);
    }

    #[test]
    fn solver_witness_gives_satisfying_assignment() {
        let inst = two_clause_instance();
        let s = find_winning_sequence(&inst.board, &SearchOptions::default())
            .found
            .unwrap();
        let a = sequence_to_assignment(&inst, &s).unwrap();
        assert!(evaluate(&inst.formula(), &a));
        let simple = simplify_sequence(&inst, &s).unwrap();
        assert_eq!(simplify_sequence(&inst, &simple).unwrap(), simple);
    }

    #[test]
    fn three_line_clause_walk_simplifies() {
        // x0 | x1 | x2 with everything true: down line 0, up line 1, down line 2
        let inst = compile(&parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap()).unwrap();
        let plan = &inst.plan;
        let near = if plan.exit_side == Side::Left { 0 } else { 2 };
        let choice = PathChoice {
            upper: vec![true; 3],
            term: vec![near],
        };
        let mut pts = waypoints(plan, &choice);
        let c = &plan.clauses[0];
        assert!(c.live.iter().all(|&l| l));
        let walk: Vec<i32> = if plan.exit_side == Side::Left {
            c.xs.to_vec()
        } else {
            c.xs.iter().rev().copied().collect()
        };
        let (top, bottom) = (plan.top_row, plan.bottom_row);
        let start = pts
            .iter()
            .position(|&p| p == Coord::new(walk[0], top))
            .unwrap();
        pts.splice(
            start..start + 3,
            [
                Coord::new(walk[0], top),
                Coord::new(walk[0], bottom),
                Coord::new(walk[1], bottom),
                Coord::new(walk[1], top),
                Coord::new(walk[2], top),
                Coord::new(walk[2], bottom),
            ],
        );
        let s = follow_waypoints(&inst, &pts).unwrap();
        assert_eq!(verify_sequence(&inst.board, &s), Verdict::ValidWinning);
        let usage = line_usage(&inst, &s).unwrap();
        assert_eq!(usage.clauses[0].len(), 3);
        let simple = simplify_sequence(&inst, &s).unwrap();
        assert_ne!(simple, s);
        assert_eq!(verify_sequence(&inst.board, &simple), Verdict::ValidWinning);
        assert!(line_usage(&inst, &simple).unwrap().is_simple());
        assert_eq!(
            sequence_to_assignment(&inst, &simple).unwrap(),
            Assignment::new(vec![true; 3])
        );
    }
}
