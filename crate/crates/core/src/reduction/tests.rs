use super::*;
use crate::board::{render_board, verify_sequence, Verdict};
use crate::sat::{brute_force_sat, parse_dimacs};
use crate::solver::{find_winning_sequence, SearchOptions};

fn cnf(text: &str) -> CnfFormula {
    parse_dimacs(text).unwrap()
}

fn solve(inst: &CompiledInstance) -> Option<crate::board::JumpSequence> {
    let r = find_winning_sequence(&inst.board, &SearchOptions::default());
    assert!(r.exhausted || r.found.is_some());
    r.found
}

#[test]
fn empty_formula_is_a_two_man_run() {
    let inst = compile(&CnfFormula::new(0, vec![]).unwrap()).unwrap();
    assert_eq!(inst.board.men().len(), 2);
    assert_eq!((inst.board.width(), inst.board.height()), (1, 4));
    let s = solve(&inst).unwrap();
    assert_eq!(s.len(), 1);
}

#[test]
fn single_variable_without_clauses_wins() {
    let inst = compile(&CnfFormula::new(1, vec![]).unwrap()).unwrap();
    assert_eq!(inst.plan.dimensions(), (4, 10));
    assert!(solve(&inst).is_some());
}

#[test]
fn two_clause_example_is_winnable() {
    let f = cnf("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    let inst = compile(&f).unwrap();
    let (w, h) = inst.plan.dimensions();
    assert!(h <= 6 * 3 + C_R && w <= 9 * 2 + C_C);
    let s = solve(&inst).expect("satisfiable formula must give a win");
    assert_eq!(verify_sequence(&inst.board, &s), Verdict::ValidWinning);
}

#[test]
fn contradiction_is_not_winnable() {
    let f = cnf("p cnf 1 2\n1 0\n-1 0\n");
    let inst = compile(&f).unwrap();
    assert!(solve(&inst).is_none(), "\n{}", render_board(&inst.board));
}

#[test]
fn small_formulas_match_the_oracle() {
    let cases = [
        "p cnf 1 1\n1 0\n",
        "p cnf 1 1\n-1 0\n",
        "p cnf 2 2\n1 2 0\n-1 0\n",
        "p cnf 2 3\n1 2 0\n-1 0\n-2 0\n",
        "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n",
        "p cnf 3 3\n1 1 2 0\n-2 3 0\n-3 -1 0\n",
        "p cnf 3 2\n1 -1 2 0\n2 2 2 0\n",
    ];
    for text in cases {
        let f = cnf(text);
        let inst = compile(&f).unwrap();
        inst.plan.dimensions();
        let sat = brute_force_sat(&f).unwrap().is_some();
        assert_eq!(
            solve(&inst).is_some(),
            sat,
            "{text}\n{}",
            render_board(&inst.board)
        );
    }
}

#[test]
fn manifest_round_trips() {
    let f = cnf("p cnf 3 3\n1 2 3 0\n-1 -2 -3 0\n1 -2 0\n");
    let inst = compile(&f).unwrap();
    let text = inst.plan.to_manifest();
    let back = LayoutPlan::from_manifest(&text).unwrap();
    assert_eq!(back, inst.plan);
    assert_eq!(back.formula(), inst.formula());
}

#[test]
fn manifest_errors_carry_line_numbers() {
    let err = LayoutPlan::from_manifest("layout 1\nsize 3\n").unwrap_err();
    assert_eq!(
        err,
        ReductionError::Manifest {
            line: 2,
            message: "`size` takes 2 fields, got 1".into()
        }
    );
}

#[test]
fn repeated_literals_leave_blank_columns() {
    let (xs, live, widened) = place_columns(
        &[[
            Literal::positive(0),
            Literal::positive(0),
            Literal::positive(1),
        ]],
        3,
    );
    assert_eq!(xs, vec![[3, 6, 9]]);
    assert_eq!(live, vec![[true, false, true]]);
    assert_eq!(widened, 0);
    let (xs, _, widened) = place_columns(
        &[
            [
                Literal::positive(0),
                Literal::positive(1),
                Literal::positive(2),
            ],
            [
                Literal::positive(2),
                Literal::positive(3),
                Literal::positive(4),
            ],
        ],
        3,
    );
    assert_eq!(xs, vec![[3, 6, 9], [13, 16, 19]]);
    assert_eq!(widened, 1);
}
