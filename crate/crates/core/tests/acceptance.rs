//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::time::{Duration, Instant};

use rand::Rng;

use phutball_core::board::{verify_sequence, Board, Coord, JumpSequence, Verdict};
use phutball_core::experiment::{
    checkers_suite, rng_for, roundtrip_suite, CheckersParams, SolveStatus, SuiteParams,
};
use phutball_core::reduction::gadget::{
    check_gadget, shipped_templates, GadgetContract, GadgetKind,
};
use phutball_core::reduction::{compile, C_C, C_R};
use phutball_core::sat::{evaluate, parse_dimacs, Assignment};
use phutball_core::solver::{enumerate_sequences, find_winning_sequence, SearchOptions};
use phutball_core::witness::{assignment_to_sequence, sequence_to_assignment};

const SEED: u64 = 1;

struct Outcome {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn criterion(id: u32, name: &'static str, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        id,
        name,
        pass,
        detail: detail.into(),
    }
}

fn roundtrip_params() -> SuiteParams {
    SuiteParams {
        seed: SEED,
        count: 200,
        vars: 1..=8,
        clauses: 1..=10,
        compare_orthogonal: true,
        ..SuiteParams::default()
    }
}

fn checkers_params() -> CheckersParams {
    CheckersParams {
        seed: SEED,
        count: 500,
        sizes: 3..=8,
        max_opponents: 6,
    }
}

fn suite_criteria() -> Vec<Outcome> {
    let report = roundtrip_suite(&roundtrip_params());
    let total = report.rows.len();
    let agree = report.rows.iter().filter(|r| r.agrees()).count();
    let exhaustive = !report.rows.iter().any(|r| r.status == SolveStatus::Limit);
    let witnesses = report.rows.iter().all(|r| r.witness_ok != Some(false));
    let bounds = report.rows.iter().filter(|r| r.within_bounds()).count();
    let orth = report
        .rows
        .iter()
        .filter(|r| r.orthogonal == Some(r.status))
        .count();
    let sat = report.rows.iter().filter(|r| r.satisfiable).count();
    vec![
        criterion(
            1,
            "round-trip reduction equivalence",
            total >= 200 && agree == total && exhaustive && witnesses,
            format!("{agree}/{total} instances agree ({sat} sat, {} unsat), n 1..8, m 1..10, seed {SEED}", total - sat),
        ),
        criterion(
            3,
            "dimension bound",
            total >= 200 && bounds == total,
            format!("{bounds}/{total} boards within H <= 6n+{C_R}, W <= 9m+{C_C}"),
        ),
        criterion(
            4,
            "orthogonality",
            total >= 200 && orth == total,
            format!("{orth}/{total} boards give the same answer with orthogonal jumps only"),
        ),
    ]
}

fn two_clauses() -> Outcome {
    let f = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
    let inst = compile(&f).unwrap();
    let res = find_winning_sequence(&inst.board, &SearchOptions::default());
    let Some(s) = res.found else {
        return criterion(2, "two-clause instance", false, "solver found no win");
    };
    let valid = verify_sequence(&inst.board, &s) == Verdict::ValidWinning;
    match sequence_to_assignment(&inst, &s) {
        Ok(a) => criterion(
            2,
            "two-clause instance",
            valid && evaluate(&f, &a),
            format!(
                "{}x{} board, {} jumps, decoded assignment {a} satisfies (a|b|c)&(!a|!b|!c)",
                inst.board.width(),
                inst.board.height(),
                s.len()
            ),
        ),
        Err(e) => criterion(
            2,
            "two-clause instance",
            false,
            format!("decode failed: {e}"),
        ),
    }
}

fn gadgets() -> Outcome {
    let mut cases = 0;
    let mut failed = Vec::new();
    let mut required = [
        (
            GadgetKind::Crossing,
            "vertical line still passes after the horizontal jump, via a pair of jumps",
            false,
        ),
        (
            GadgetKind::Interaction,
            "vertical line blocked after the horizontal jump",
            false,
        ),
        (
            GadgetKind::FanOut3,
            "path entering from the side exits only through the three lines",
            false,
        ),
    ];
    let templates = shipped_templates();
    for (label, t) in &templates {
        let report = check_gadget(t, &GadgetContract::for_template(t));
        for c in &report.cases {
            cases += 1;
            if !c.passed {
                failed.push(format!("{label}: {}", c.name));
            }
            for r in required.iter_mut() {
                if r.0 == t.kind && r.1 == c.name && c.passed {
                    r.2 = true;
                }
            }
        }
    }
    let all_required = required.iter().all(|r| r.2);
    let detail = if failed.is_empty() {
        format!(
            "{} template orientations, {cases} exhaustive cases",
            templates.len()
        )
    } else {
        format!("failing: {}", failed.join("; "))
    };
    criterion(
        5,
        "gadget contracts",
        failed.is_empty() && all_required,
        detail,
    )
}

fn random_board<R: Rng>(rng: &mut R) -> Board {
    let w = rng.gen_range(2..=7);
    let h = rng.gen_range(2..=7);
    let ball = Coord::new(rng.gen_range(0..w), rng.gen_range(0..h));
    let k = rng.gen_range(0..=10);
    let men: Vec<Coord> = (0..k)
        .map(|_| Coord::new(rng.gen_range(0..w), rng.gen_range(0..h)))
        .filter(|&c| c != ball)
        .collect();
    Board::new(w, h, ball, men).unwrap()
}

/// Ball at the bottom of a column of single men separated by gaps: `k`
/// one-man jumps reach the goal.
fn ladder(k: i32) -> (Board, JumpSequence) {
    let men = (0..k).map(|i| Coord::new(0, 2 * i + 1));
    let b = Board::new(1, 2 * k + 1, Coord::new(0, 0), men).unwrap();
    let s = JumpSequence::new((1..=k).map(|i| Coord::new(0, 2 * i)).collect());
    (b, s)
}

fn time_verify(k: i32) -> Duration {
    let (b, s) = ladder(k);
    (0..5)
        .map(|_| {
            let t = Instant::now();
            assert_eq!(verify_sequence(&b, &s), Verdict::ValidWinning);
            t.elapsed()
        })
        .min()
        .unwrap()
}

fn certificate_bound() -> Outcome {
    let mut rng = rng_for(SEED);
    let mut accepted = 0usize;
    let mut violations = 0usize;
    for _ in 0..400 {
        let b = random_board(&mut rng);
        let men = b.men().len();
        for s in enumerate_sequences(&b, 64, 1_000_000).unwrap() {
            let expect = if s.winning {
                Verdict::ValidWinning
            } else {
                Verdict::ValidNonwinning
            };
            if verify_sequence(&b, &s.sequence) != expect {
                violations += 1;
            }
            accepted += 1;
            if s.sequence.len() > men {
                violations += 1;
            }
        }
        // random landing lists: whatever verifies must respect the bound
        for _ in 0..20 {
            let len = rng.gen_range(1..=men + 2);
            let landings = (0..len)
                .map(|_| {
                    Coord::new(
                        rng.gen_range(0..b.width()),
                        rng.gen_range(0..b.height() + 1),
                    )
                })
                .collect();
            let s = JumpSequence::new(landings);
            match verify_sequence(&b, &s) {
                Verdict::ValidWinning | Verdict::ValidNonwinning => {
                    accepted += 1;
                    if s.len() > men {
                        violations += 1;
                    }
                }
                Verdict::InvalidAtStep(i) => {
                    if i == 0 || i > s.len() {
                        violations += 1;
                    }
                }
            }
        }
    }
    // each step scans eight directions and copies the man set, so the fitted
    // exponent over an 8x range of lengths must stay at most cubic, and the
    // longest run must not be faster than the shortest
    let sizes = [100, 200, 400, 800];
    let times: Vec<Duration> = sizes.iter().map(|&k| time_verify(k)).collect();
    let floor = Duration::from_micros(50);
    let exponent = ((times[3].max(floor)).as_secs_f64() / (times[0].max(floor)).as_secs_f64()).ln()
        / 8f64.ln();
    let poly = exponent <= 3.0 && times[3] >= times[0];
    let micros: Vec<String> = times
        .iter()
        .map(|t| format!("{}us", t.as_micros()))
        .collect();
    criterion(
        6,
        "NP-certificate bound",
        violations == 0 && poly,
        format!(
            "{accepted} accepted sequences, {violations} violations; verify time for 100/200/400/800 jumps: {} (exponent {exponent:.2})",
            micros.join(" ")
        ),
    )
}

fn checkers_criteria() -> Vec<Outcome> {
    let report = checkers_suite(&checkers_params());
    let n = report.rows.len();
    let agree = report.agreements();
    let men: usize = report.rows.iter().map(|r| r.men_checked).sum();
    let wins = report.rows.iter().filter(|r| r.win_oracle).count();
    let degree = report.rows.iter().filter(|r| r.degree_law).count();
    let parity = report.rows.iter().filter(|r| r.parity_law).count();
    vec![
        criterion(
            7,
            "checkers oracle equivalence",
            n >= 500 && agree == n && report.witnesses_replay(),
            format!("{agree}/{n} positions agree ({men} kinging queries, {wins} one-move wins), boards 3..8, <= 6 opponents"),
        ),
        criterion(
            8,
            "degree-2 and parity laws",
            n >= 500 && degree == n && parity == n,
            format!("degree law {degree}/{n}, parity law {parity}/{n}"),
        ),
    ]
}

fn determinism() -> Outcome {
    let small = SuiteParams {
        count: 40,
        ..roundtrip_params()
    };
    let rt = roundtrip_suite(&small).to_string() == roundtrip_suite(&small).to_string();
    let ck = checkers_suite(&checkers_params()).to_string()
        == checkers_suite(&checkers_params()).to_string();
    let f = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n").unwrap();
    let witness = || {
        let inst = compile(&f).unwrap();
        let a = assignment_to_sequence(&inst, &Assignment::new(vec![true, false, false])).unwrap();
        let s = find_winning_sequence(&inst.board, &SearchOptions::default());
        format!("{}\n{a}\n{:?}", inst.plan.to_manifest(), s)
    };
    let wt = witness() == witness();
    let gadget_text = || {
        shipped_templates()
            .iter()
            .map(|(_, t)| check_gadget(t, &GadgetContract::for_template(t)).to_string())
            .collect::<String>()
    };
    let gd = gadget_text() == gadget_text();
    criterion(
        9,
        "determinism",
        rt && ck && wt && gd,
        format!("roundtrip report {rt}, checkers report {ck}, witnesses {wt}, gadget report {gd}"),
    )
}

fn main() {
    let started = Instant::now();
    let handles = vec![
        std::thread::spawn(suite_criteria),
        std::thread::spawn(|| vec![two_clauses()]),
        std::thread::spawn(|| vec![gadgets()]),
        std::thread::spawn(|| vec![certificate_bound()]),
        std::thread::spawn(checkers_criteria),
        std::thread::spawn(|| vec![determinism()]),
    ];
    let mut outcomes: Vec<Outcome> = handles
        .into_iter()
        .flat_map(|h| h.join().expect("criterion panicked"))
        .collect();
    outcomes.sort_by_key(|o| o.id);
    println!();
    println!("acceptance criteria (C_r = {C_R}, C_c = {C_C})");
    for o in &outcomes {
        println!(
            "criterion {} {:<34} {}  {}",
            o.id,
            o.name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!(
        "acceptance: {}/{} criteria pass in {:.1?}",
        outcomes.len() - failed,
        outcomes.len(),
        started.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
