//! Seeded random suites.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)` and is drawn
//! with `gen_range` / `gen_bool` in a fixed order, so a seed names one suite.

use std::fmt;
use std::ops::RangeInclusive;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checkers::analyzer::ORACLE_CAP;
use crate::checkers::{
    build_jump_graph, random_position, BruteForce, CheckersPosition, JumpGraphAnalyzer,
    MoveAnalyzer,
};
use crate::reduction::{compile, C_C, C_R};
use crate::sat::{brute_force_sat, evaluate, Clause, CnfFormula, Literal};
use crate::solver::{find_winning_sequence, SearchOptions};
use crate::witness::sequence_to_assignment;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` clauses over `n` variables. Each clause has three distinct variables
/// when `n >= 3` and variables drawn with replacement otherwise; signs are
/// fair coin flips.
pub fn random_3cnf<R: Rng>(rng: &mut R, n: usize, m: usize) -> CnfFormula {
    assert!(n > 0 || m == 0, "clauses need variables");
    let clauses = (0..m)
        .map(|_| {
            let vars: Vec<usize> = if n >= 3 {
                sample(rng, n, 3).into_vec()
            } else {
                (0..3).map(|_| rng.gen_range(0..n)).collect()
            };
            let lits: Vec<Literal> = vars
                .into_iter()
                .map(|v| Literal {
                    variable: v,
                    negated: rng.gen_bool(0.5),
                })
                .collect();
            Clause::normalized(&lits).expect("three literals")
        })
        .collect();
    CnfFormula::new(n, clauses).expect("variables in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteFilter {
    All,
    SatOnly,
    UnsatOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub seed: u64,
    pub count: usize,
    pub vars: RangeInclusive<usize>,
    pub clauses: RangeInclusive<usize>,
    pub node_limit: u64,
    /// Also solve with orthogonal jumps only and compare.
    pub compare_orthogonal: bool,
    pub filter: SuiteFilter,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: 1,
            count: 100,
            vars: 1..=6,
            clauses: 1..=8,
            node_limit: SearchOptions::default().node_limit,
            compare_orthogonal: false,
            filter: SuiteFilter::All,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Win,
    NoWin,
    Limit,
}

impl SolveStatus {
    fn label(self) -> &'static str {
        match self {
            SolveStatus::Win => "win",
            SolveStatus::NoWin => "no-win",
            SolveStatus::Limit => "limit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripRow {
    pub index: usize,
    pub formula: CnfFormula,
    pub satisfiable: bool,
    pub status: SolveStatus,
    pub orthogonal: Option<SolveStatus>,
    pub width: i32,
    pub height: i32,
    pub men: usize,
    pub nodes: u64,
    pub witness_len: Option<usize>,
    /// The solver's witness decodes to a satisfying assignment.
    pub witness_ok: Option<bool>,
}

impl RoundtripRow {
    pub fn agrees(&self) -> bool {
        let expect = if self.satisfiable {
            SolveStatus::Win
        } else {
            SolveStatus::NoWin
        };
        self.status == expect && self.orthogonal.is_none_or(|o| o == expect)
    }

    pub fn within_bounds(&self) -> bool {
        let n = self.formula.num_vars() as i32;
        let m = self.formula.num_clauses() as i32;
        self.height <= 6 * n + C_R && self.width <= 9 * m + C_C
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub params: SuiteParams,
    pub rows: Vec<RoundtripRow>,
}

impl RoundtripReport {
    pub fn agreements(&self) -> usize {
        self.rows.iter().filter(|r| r.agrees()).count()
    }

    pub fn all_agree(&self) -> bool {
        self.agreements() == self.rows.len()
    }

    pub fn hit_limit(&self) -> bool {
        self.rows
            .iter()
            .any(|r| r.status == SolveStatus::Limit || r.orthogonal == Some(SolveStatus::Limit))
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "# roundtrip seed={} count={} vars={}..{} clauses={}..{} C_r={C_R} C_c={C_C}",
            p.seed,
            p.count,
            p.vars.start(),
            p.vars.end(),
            p.clauses.start(),
            p.clauses.end()
        )?;
        writeln!(
            f,
            "{:>5} {:>2} {:>3} {:>6} {:>6} {:>6} {:>4} {:>4} {:>5} {:>10} {:>5} {:>4} {:>5}",
            "inst",
            "n",
            "m",
            "sat",
            "solve",
            "orth",
            "W",
            "H",
            "men",
            "nodes",
            "wlen",
            "wok",
            "agree"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>5} {:>2} {:>3} {:>6} {:>6} {:>6} {:>4} {:>4} {:>5} {:>10} {:>5} {:>4} {:>5}",
                r.index,
                r.formula.num_vars(),
                r.formula.num_clauses(),
                if r.satisfiable { "sat" } else { "unsat" },
                r.status.label(),
                r.orthogonal.map_or("-", |o| o.label()),
                r.width,
                r.height,
                r.men,
                r.nodes,
                r.witness_len.map_or("-".to_string(), |l| l.to_string()),
                r.witness_ok.map_or("-", |ok| if ok { "yes" } else { "no" }),
                if r.agrees() { "yes" } else { "NO" }
            )?;
        }
        let bounds = self.rows.iter().filter(|r| r.within_bounds()).count();
        writeln!(
            f,
            "RESULT: roundtrip agree={}/{} bounds={}/{} limit={}",
            self.agreements(),
            self.rows.len(),
            bounds,
            self.rows.len(),
            if self.hit_limit() { "hit" } else { "none" }
        )
    }
}

fn status(found: bool, exhausted: bool) -> SolveStatus {
    match (found, exhausted) {
        (true, _) => SolveStatus::Win,
        (false, true) => SolveStatus::NoWin,
        (false, false) => SolveStatus::Limit,
    }
}

/// Generates formulas, then compares the oracle with compile + solve on each.
pub fn roundtrip_suite(params: &SuiteParams) -> RoundtripReport {
    let mut rng = rng_for(params.seed);
    let mut rows = Vec::with_capacity(params.count);
    let mut attempts = 0usize;
    let max_attempts = params.count.saturating_mul(1000).max(1000);
    while rows.len() < params.count && attempts < max_attempts {
        attempts += 1;
        let n = rng.gen_range(params.vars.clone());
        let m = rng.gen_range(params.clauses.clone());
        let formula = random_3cnf(&mut rng, n, m);
        let satisfiable = brute_force_sat(&formula)
            .expect("suite variable counts stay small")
            .is_some();
        match params.filter {
            SuiteFilter::SatOnly if !satisfiable => continue,
            SuiteFilter::UnsatOnly if satisfiable => continue,
            _ => {}
        }
        rows.push(run_instance(rows.len(), formula, satisfiable, params));
    }
    RoundtripReport {
        params: params.clone(),
        rows,
    }
}

fn run_instance(
    index: usize,
    formula: CnfFormula,
    satisfiable: bool,
    params: &SuiteParams,
) -> RoundtripRow {
    let inst = compile(&formula).expect("random formulas compile");
    let opts = SearchOptions {
        orthogonal_only: false,
        node_limit: params.node_limit,
    };
    let res = find_winning_sequence(&inst.board, &opts);
    let witness_ok = res
        .found
        .as_ref()
        .map(|s| sequence_to_assignment(&inst, s).is_ok_and(|a| evaluate(&formula, &a)));
    let orthogonal = params.compare_orthogonal.then(|| {
        let r = find_winning_sequence(
            &inst.board,
            &SearchOptions {
                orthogonal_only: true,
                ..opts
            },
        );
        status(r.found.is_some(), r.exhausted)
    });
    RoundtripRow {
        index,
        satisfiable,
        status: status(res.found.is_some(), res.exhausted),
        orthogonal,
        width: inst.board.width(),
        height: inst.board.height(),
        men: inst.board.men().len(),
        nodes: res.nodes_expanded,
        witness_len: res.found.as_ref().map(|s| s.len()),
        witness_ok,
        formula,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_formula() {
        let a = random_3cnf(&mut rng_for(7), 5, 4);
        let b = random_3cnf(&mut rng_for(7), 5, 4);
        assert_eq!(a, b);
        assert_eq!(a.num_clauses(), 4);
        for c in a.clauses() {
            let mut vars: Vec<usize> = c.literals().iter().map(|l| l.variable).collect();
            vars.dedup();
            assert_eq!(vars.len(), 3);
        }
    }

    #[test]
    fn empty_suite_reports_nothing() {
        let report = roundtrip_suite(&SuiteParams {
            count: 0,
            ..SuiteParams::default()
        });
        assert!(report.rows.is_empty());
        assert!(report
            .to_string()
            .ends_with("RESULT: roundtrip agree=0/0 bounds=0/0 limit=none\n"));
    }

    #[test]
    fn small_suite_agrees() {
        let params = SuiteParams {
            count: 12,
            vars: 1..=4,
            clauses: 1..=5,
            ..SuiteParams::default()
        };
        let report = roundtrip_suite(&params);
        assert!(report.all_agree(), "{report}");
        assert_eq!(report.to_string(), roundtrip_suite(&params).to_string());
    }

    #[test]
    fn unsat_only_suite_has_no_wins() {
        let params = SuiteParams {
            count: 5,
            vars: 1..=2,
            clauses: 3..=6,
            filter: SuiteFilter::UnsatOnly,
            ..SuiteParams::default()
        };
        let report = roundtrip_suite(&params);
        assert_eq!(report.rows.len(), 5);
        assert!(report.rows.iter().all(|r| r.status == SolveStatus::NoWin));
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckersParams {
    pub seed: u64,
    pub count: usize,
    /// Board sides are drawn from this range.
    pub sizes: RangeInclusive<i32>,
    pub max_opponents: usize,
}

impl Default for CheckersParams {
    fn default() -> Self {
        CheckersParams {
            seed: 1,
            count: 500,
            sizes: 3..=8,
            max_opponents: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckersRow {
    pub index: usize,
    pub position: CheckersPosition,
    /// Men of the mover whose kinging verdicts were compared.
    pub men_checked: usize,
    pub king_agree: bool,
    pub win_graph: bool,
    pub win_oracle: bool,
    pub witnesses_replay: bool,
    pub degree_law: bool,
    pub parity_law: bool,
}

impl CheckersRow {
    pub fn agrees(&self) -> bool {
        self.king_agree && self.win_graph == self.win_oracle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckersReport {
    pub params: CheckersParams,
    pub rows: Vec<CheckersRow>,
}

impl CheckersReport {
    pub fn agreements(&self) -> usize {
        self.rows.iter().filter(|r| r.agrees()).count()
    }

    pub fn laws_hold(&self) -> bool {
        self.rows.iter().all(|r| r.degree_law && r.parity_law)
    }

    pub fn witnesses_replay(&self) -> bool {
        self.rows.iter().all(|r| r.witnesses_replay)
    }
}

impl fmt::Display for CheckersReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        writeln!(
            f,
            "# checkers seed={} count={} sizes={}..{} max_opponents={}",
            p.seed,
            p.count,
            p.sizes.start(),
            p.sizes.end(),
            p.max_opponents
        )?;
        writeln!(
            f,
            "{:>5} {:>3} {:>3} {:>6} {:>4} {:>4} {:>5} {:>6} {:>6} {:>6} {:>6} {:>5}",
            "pos",
            "W",
            "H",
            "mover",
            "own",
            "opp",
            "men",
            "king",
            "graph",
            "oracle",
            "laws",
            "agree"
        )?;
        for r in &self.rows {
            let pos = &r.position;
            writeln!(
                f,
                "{:>5} {:>3} {:>3} {:>6} {:>4} {:>4} {:>5} {:>6} {:>6} {:>6} {:>6} {:>5}",
                r.index,
                pos.width(),
                pos.height(),
                pos.mover().name(),
                pos.pieces_of(pos.mover()).count(),
                pos.pieces_of(pos.mover().opponent()).count(),
                r.men_checked,
                if r.king_agree { "same" } else { "DIFF" },
                if r.win_graph { "win" } else { "-" },
                if r.win_oracle { "win" } else { "-" },
                if r.degree_law && r.parity_law {
                    "ok"
                } else {
                    "BROKEN"
                },
                if r.agrees() { "yes" } else { "NO" }
            )?;
        }
        let laws = self
            .rows
            .iter()
            .filter(|r| r.degree_law && r.parity_law)
            .count();
        let replay = self.rows.iter().filter(|r| r.witnesses_replay).count();
        writeln!(
            f,
            "RESULT: checkers agree={}/{} laws={}/{} replay={}/{}",
            self.agreements(),
            self.rows.len(),
            laws,
            self.rows.len(),
            replay,
            self.rows.len()
        )
    }
}

/// Random positions compared between the jump-graph analysis and the
/// brute-force oracle.
pub fn checkers_suite(params: &CheckersParams) -> CheckersReport {
    let mut rng = rng_for(params.seed);
    let graph = JumpGraphAnalyzer;
    let oracle = BruteForce { cap: ORACLE_CAP };
    let rows = (0..params.count)
        .map(|index| {
            let w = rng.gen_range(params.sizes.clone());
            let h = rng.gen_range(params.sizes.clone());
            let position = random_position(&mut rng, w, h, params.max_opponents);
            let mover = position.mover();
            let mut row = CheckersRow {
                index,
                men_checked: 0,
                king_agree: true,
                win_graph: false,
                win_oracle: false,
                witnesses_replay: true,
                degree_law: true,
                parity_law: true,
                position: position.clone(),
            };
            for (p, piece) in position.pieces_of(mover) {
                let g = build_jump_graph(&position, p).expect("mover's piece");
                row.degree_law &= g.degree_law_holds();
                row.parity_law &= g.parity_law_holds();
                if piece.king {
                    continue;
                }
                row.men_checked += 1;
                let a = graph.can_king(&position, p).expect("mover's man");
                let b = oracle.can_king(&position, p).expect("small position");
                row.king_agree &= a.can_king == b.can_king;
                if let Some(w) = &a.witness {
                    let ok = position.replay_jumps(p, w).is_ok()
                        && w.last().is_some_and(|&c| position.is_king_row(mover, c));
                    row.witnesses_replay &= ok;
                }
            }
            let a = graph
                .one_move_win(&position, mover)
                .expect("valid position");
            let b = oracle
                .one_move_win(&position, mover)
                .expect("small position");
            row.win_graph = a.wins;
            row.win_oracle = b.wins;
            if let Some((p, w)) = &a.witness {
                let foes = position.pieces_of(mover.opponent()).count();
                row.witnesses_replay &= position.replay_jumps(*p, w).is_ok_and(|c| c.len() == foes);
            }
            row
        })
        .collect();
    CheckersReport {
        params: params.clone(),
        rows,
    }
}

#[cfg(test)]
mod checkers_tests {
    use super::*;

    #[test]
    fn small_checkers_suite_agrees() {
        let params = CheckersParams {
            count: 60,
            ..CheckersParams::default()
        };
        let report = checkers_suite(&params);
        assert_eq!(report.agreements(), 60, "{report}");
        assert!(report.laws_hold() && report.witnesses_replay());
    }
}
