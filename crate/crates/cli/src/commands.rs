use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use phutball_core::board::{
    parse_board, render_board, replay, Board, Coord, JumpSequence, Verdict,
};
use phutball_core::checkers::{AnalyzerRegistry, CheckersPosition, Color};
use phutball_core::error::CheckersError;
use phutball_core::experiment::{
    checkers_suite, roundtrip_suite, CheckersParams, SuiteFilter, SuiteParams,
};
use phutball_core::reduction::gadget::{check_gadget, shipped_templates, GadgetContract};
use phutball_core::reduction::{compile, CompiledInstance, LayoutPlan};
use phutball_core::sat::{parse_dimacs, Assignment};
use phutball_core::solver::{SearchOptions, SolverRegistry};
use phutball_core::svg::render_svg;
use phutball_core::witness::{assignment_to_sequence, sequence_to_assignment, simplify_sequence};

use crate::{CheckersTest, Command, Filter, Format, SearchArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Yes,
    No,
    Limit,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Yes => 0,
            Status::No => 1,
            Status::Limit => 3,
        }
    }

    fn from_bool(b: bool) -> Status {
        if b {
            Status::Yes
        } else {
            Status::No
        }
    }
}

/// Exit code for an error: resource caps map to 3, anything else is an
/// input error.
pub fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<CheckersError>() {
        Some(CheckersError::Explosion { .. }) => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_board(path: &Path) -> Result<Board> {
    parse_board(&read(path)?).with_context(|| format!("parsing board {}", path.display()))
}

fn load_sequence(path: &Path) -> Result<JumpSequence> {
    JumpSequence::parse(&read(path)?)
        .with_context(|| format!("parsing sequence {}", path.display()))
}

fn parse_coord(s: &str) -> Result<Coord> {
    let (x, y) = s
        .split_once(',')
        .with_context(|| format!("expected X,Y, got `{s}`"))?;
    Ok(Coord::new(
        x.trim()
            .parse()
            .with_context(|| format!("bad x in `{s}`"))?,
        y.trim()
            .parse()
            .with_context(|| format!("bad y in `{s}`"))?,
    ))
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".manifest");
    PathBuf::from(p)
}

pub fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Reduce {
            input,
            out,
            manifest,
        } => reduce(&input, out.as_deref(), manifest.as_deref()),
        Command::Solve { board, search, out } => solve(&board, &search, out.as_deref()),
        Command::Verify { board, sequence } => verify(&board, &sequence),
        Command::Witness {
            board,
            manifest,
            assignment,
            sequence,
            simplify,
            out,
        } => witness(
            &board,
            &manifest,
            assignment.as_deref(),
            sequence.as_deref(),
            simplify,
            out.as_deref(),
        ),
        Command::Roundtrip {
            seed,
            count,
            vars,
            clauses,
            node_limit,
            orthogonal_only,
            filter,
            out,
        } => {
            let params = SuiteParams {
                seed,
                count,
                vars,
                clauses,
                node_limit: node_limit.max(1),
                compare_orthogonal: orthogonal_only,
                filter: match filter {
                    Filter::All => SuiteFilter::All,
                    Filter::Sat => SuiteFilter::SatOnly,
                    Filter::Unsat => SuiteFilter::UnsatOnly,
                },
            };
            let report = roundtrip_suite(&params);
            emit(out.as_deref(), &report.to_string())?;
            Ok(if report.hit_limit() {
                Status::Limit
            } else {
                Status::from_bool(report.all_agree())
            })
        }
        Command::GadgetCheck { out } => {
            let mut text = String::new();
            let mut ok = true;
            for (label, t) in shipped_templates() {
                let report = check_gadget(&t, &GadgetContract::for_template(&t));
                ok &= report.passed();
                text.push_str(&format!("# {label}\n{report}"));
            }
            text.push_str(&format!(
                "RESULT: gadgets {}\n",
                if ok { "pass" } else { "fail" }
            ));
            emit(out.as_deref(), &text)?;
            Ok(Status::from_bool(ok))
        }
        Command::Checkers {
            position,
            test,
            analyzer,
        } => checkers(&position, &test, &analyzer),
        Command::CheckersSuite {
            seed,
            count,
            sizes,
            max_opponents,
            out,
        } => {
            let lo = i32::try_from(*sizes.start()).context("size out of range")?;
            let hi = i32::try_from(*sizes.end()).context("size out of range")?;
            if lo < 2 {
                bail!("board sides must be at least 2");
            }
            let report = checkers_suite(&CheckersParams {
                seed,
                count,
                sizes: lo..=hi,
                max_opponents,
            });
            emit(out.as_deref(), &report.to_string())?;
            Ok(Status::from_bool(
                report.agreements() == report.rows.len()
                    && report.laws_hold()
                    && report.witnesses_replay(),
            ))
        }
        Command::Render {
            board,
            format,
            sequence,
            out,
        } => {
            let b = load_board(&board)?;
            let seq = sequence.as_deref().map(load_sequence).transpose()?;
            let text = match format {
                Format::Ascii => render_board(&b),
                Format::Svg => render_svg(&b, seq.as_ref()),
            };
            emit(out.as_deref(), &text)?;
            Ok(Status::Yes)
        }
    }
}

fn reduce(input: &Path, out: Option<&Path>, manifest: Option<&Path>) -> Result<Status> {
    let f = parse_dimacs(&read(input)?).with_context(|| format!("parsing {}", input.display()))?;
    let inst = compile(&f)?;
    emit(out, &render_board(&inst.board))?;
    let manifest = manifest
        .map(Path::to_path_buf)
        .or_else(|| out.map(manifest_path));
    if let Some(m) = manifest {
        fs::write(&m, inst.plan.to_manifest())
            .with_context(|| format!("writing {}", m.display()))?;
    }
    eprintln!(
        "{} variables, {} clauses -> {}x{} board with {} men",
        f.num_vars(),
        f.num_clauses(),
        inst.board.width(),
        inst.board.height(),
        inst.board.men().len()
    );
    Ok(Status::Yes)
}

fn solve(board: &Path, search: &SearchArgs, out: Option<&Path>) -> Result<Status> {
    let b = load_board(board)?;
    let registry = SolverRegistry::with_defaults();
    let Some(solver) = registry.get(&search.solver) else {
        bail!(
            "unknown solver `{}` (known: {})",
            search.solver,
            registry.names().join(", ")
        );
    };
    let opts = SearchOptions {
        orthogonal_only: search.orthogonal_only,
        node_limit: search.node_limit.max(1),
    };
    let res = solver.solve(&b, &opts);
    match &res.found {
        Some(s) => {
            println!("win {s}");
            println!("nodes {}", res.nodes_expanded);
            if let Some(p) = out {
                fs::write(p, format!("{s}\n"))
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            Ok(Status::Yes)
        }
        None if res.exhausted => {
            println!("no-win");
            println!("nodes {}", res.nodes_expanded);
            Ok(Status::No)
        }
        None => {
            println!("limit");
            println!("nodes {}", res.nodes_expanded);
            Ok(Status::Limit)
        }
    }
}

fn verify(board: &Path, sequence: &Path) -> Result<Status> {
    let b = load_board(board)?;
    let s = load_sequence(sequence)?;
    let (verdict, removed) = replay(&b, &s);
    match verdict {
        Verdict::ValidWinning => {
            println!(
                "valid winning, {} jumps, {} men removed",
                s.len(),
                removed.len()
            );
            Ok(Status::Yes)
        }
        Verdict::ValidNonwinning => {
            println!(
                "valid non-winning, {} jumps, {} men removed",
                s.len(),
                removed.len()
            );
            Ok(Status::No)
        }
        Verdict::InvalidAtStep(k) => {
            println!("invalid at step {k}");
            Ok(Status::No)
        }
    }
}

fn witness(
    board: &Path,
    manifest: &Path,
    assignment: Option<&str>,
    sequence: Option<&Path>,
    simplify: bool,
    out: Option<&Path>,
) -> Result<Status> {
    let board = load_board(board)?;
    let plan = LayoutPlan::from_manifest(&read(manifest)?)
        .with_context(|| format!("parsing {}", manifest.display()))?;
    if (board.width(), board.height()) != (plan.width, plan.height) {
        bail!(
            "board is {}x{} but the manifest describes {}x{}",
            board.width(),
            board.height(),
            plan.width,
            plan.height
        );
    }
    let inst = CompiledInstance { board, plan };
    if let Some(text) = assignment {
        let a = Assignment::parse(text)?;
        if a.len() != inst.plan.num_vars() {
            bail!(
                "assignment has {} values, formula has {} variables",
                a.len(),
                inst.plan.num_vars()
            );
        }
        return match assignment_to_sequence(&inst, &a) {
            Ok(s) => {
                emit(out, &format!("{s}\n"))?;
                Ok(Status::Yes)
            }
            Err(e) => {
                println!("no witness: {e}");
                Ok(Status::No)
            }
        };
    }
    let s = load_sequence(sequence.expect("clap requires one of the two"))?;
    match sequence_to_assignment(&inst, &s) {
        Ok(a) => {
            let mut text = format!("{a}\n");
            if simplify {
                text.push_str(&format!("{}\n", simplify_sequence(&inst, &s)?));
            }
            emit(out, &text)?;
            Ok(Status::Yes)
        }
        Err(e) => {
            println!("no assignment: {e}");
            Ok(Status::No)
        }
    }
}

fn checkers(position: &Path, test: &CheckersTest, analyzer: &str) -> Result<Status> {
    let pos = CheckersPosition::parse(&read(position)?)
        .with_context(|| format!("parsing {}", position.display()))?;
    let registry = AnalyzerRegistry::with_defaults();
    let a = registry
        .get(analyzer)
        .with_context(|| format!("known analyzers: {}", registry.names().join(", ")))?;
    let landings = |l: &[Coord]| l.iter().map(Coord::to_string).collect::<Vec<_>>().join(" ");
    match test {
        CheckersTest::KingTest { coord } => {
            let v = a.can_king(&pos, parse_coord(coord)?)?;
            match &v.witness {
                Some(w) => println!("can king: {}", landings(w)),
                None => println!("cannot king"),
            }
            Ok(Status::from_bool(v.can_king))
        }
        CheckersTest::WinTest { color } => {
            let color = Color::parse(color).with_context(|| format!("unknown color `{color}`"))?;
            let v = a.one_move_win(&pos, color)?;
            match &v.witness {
                Some((p, w)) => println!("win: {p} -> {}", landings(w)),
                None => println!("no win"),
            }
            for d in &v.diagnostics {
                println!(
                    "  piece {}: cells {} jumpable {} covers-all {} connected {} euler {}",
                    d.piece, d.cells, d.jumpable, d.covers_all, d.connected, d.euler_ok
                );
            }
            Ok(Status::from_bool(v.wins))
        }
    }
}
