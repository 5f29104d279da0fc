//! Local men configurations used by the compiler, and their behavioural
//! contracts.
//!
//! Lines are rows or columns of men broken by single vacant landing cells; the
//! ball runs along a line by jumping from landing to landing. Gadgets are the
//! places where lines meet:
//!
//! * `Crossing`: a plus of five men. A jump along either line clears the
//!   centre, which leaves a one-cell gap in the other line that the ball
//!   crosses with two jumps.
//! * `Interaction`: a single shared man with landings on all four sides. A
//!   jump along either line removes it, leaving a two-cell gap in the other
//!   line that no jump can bridge.
//! * `FanOut2`/`FanIn2`, `FanOut3`/`FanIn3`: split a path into two or three
//!   parallel lines and merge them again.
//! * `GoalPath`: two men below the goal row.

use std::collections::BTreeSet;
use std::fmt;

use crate::board::{Board, Coord, Direction, JumpSequence};
use crate::error::ReductionError;
use crate::solver::{enumerate_sequences, EnumeratedSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetKind {
    FanOut3,
    FanIn3,
    FanOut2,
    FanIn2,
    Crossing,
    Interaction,
    GoalPath,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 7] = [
        GadgetKind::FanOut3,
        GadgetKind::FanIn3,
        GadgetKind::FanOut2,
        GadgetKind::FanIn2,
        GadgetKind::Crossing,
        GadgetKind::Interaction,
        GadgetKind::GoalPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::FanOut3 => "fan-out-3",
            GadgetKind::FanIn3 => "fan-in-3",
            GadgetKind::FanOut2 => "fan-out-2",
            GadgetKind::FanIn2 => "fan-in-2",
            GadgetKind::Crossing => "crossing",
            GadgetKind::Interaction => "interaction",
            GadgetKind::GoalPath => "goal-path",
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What occupies a port's boundary cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortCell {
    /// A vacant landing; the line continues outward with a man.
    Landing,
    /// The last man of a run; the line continues outward with a landing.
    Man,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Port {
    pub name: &'static str,
    pub cell: Coord,
    /// Direction pointing out of the gadget along the attached line.
    pub dir: Direction,
    pub cell_kind: PortCell,
}

impl Port {
    /// The first landing outside the gadget on the attached line.
    pub fn outer(&self) -> Coord {
        match self.cell_kind {
            PortCell::Landing => self.cell.step(self.dir).step(self.dir),
            PortCell::Man => self.cell.step(self.dir),
        }
    }

    /// Men outside the gadget connecting the port to [`Port::outer`].
    pub fn stub_men(&self) -> Vec<Coord> {
        match self.cell_kind {
            PortCell::Landing => vec![self.cell.step(self.dir)],
            PortCell::Man => vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetTemplate {
    pub kind: GadgetKind,
    /// Men, relative to the anchor.
    pub men: Vec<Coord>,
    /// Cells inside the footprint that must stay vacant.
    pub landings: Vec<Coord>,
    pub ports: Vec<Port>,
    /// Inclusive bounding box `(min, max)`.
    pub footprint: (Coord, Coord),
}

/// Integer linear map applied to template offsets and directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transform {
    m: [[i32; 2]; 2],
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        m: [[1, 0], [0, 1]],
    };
    pub const MIRROR_X: Transform = Transform {
        m: [[-1, 0], [0, 1]],
    };
    pub const MIRROR_Y: Transform = Transform {
        m: [[1, 0], [0, -1]],
    };
    pub const ROTATE_180: Transform = Transform {
        m: [[-1, 0], [0, -1]],
    };

    pub fn apply(self, c: Coord) -> Coord {
        Coord::new(
            self.m[0][0] * c.x + self.m[0][1] * c.y,
            self.m[1][0] * c.x + self.m[1][1] * c.y,
        )
    }

    pub fn apply_dir(self, d: Direction) -> Direction {
        let (dx, dy) = d.delta();
        let c = self.apply(Coord::new(dx, dy));
        Direction::from_delta(c.x, c.y).expect("transforms map unit steps to unit steps")
    }

    pub fn then(self, other: Transform) -> Transform {
        let a = other.m;
        let b = self.m;
        let mut m = [[0; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Transform { m }
    }
}

fn bbox(cells: impl IntoIterator<Item = Coord>) -> (Coord, Coord) {
    let mut lo = Coord::new(i32::MAX, i32::MAX);
    let mut hi = Coord::new(i32::MIN, i32::MIN);
    for c in cells {
        lo = Coord::new(lo.x.min(c.x), lo.y.min(c.y));
        hi = Coord::new(hi.x.max(c.x), hi.y.max(c.y));
    }
    (lo, hi)
}

fn port(name: &'static str, x: i32, y: i32, dir: Direction, cell_kind: PortCell) -> Port {
    Port {
        name,
        cell: Coord::new(x, y),
        dir,
        cell_kind,
    }
}

impl GadgetTemplate {
    fn build(kind: GadgetKind, men: Vec<Coord>, landings: Vec<Coord>, ports: Vec<Port>) -> Self {
        let footprint = bbox(men.iter().chain(landings.iter()).copied());
        GadgetTemplate {
            kind,
            men,
            landings,
            ports,
            footprint,
        }
    }

    /// Plus of five men centred on the anchor.
    pub fn crossing() -> Self {
        use Direction::*;
        let men = vec![
            Coord::new(-1, 0),
            Coord::new(0, 0),
            Coord::new(1, 0),
            Coord::new(0, -1),
            Coord::new(0, 1),
        ];
        let landings = corners();
        let ports = vec![
            port("west", -1, 0, W, PortCell::Man),
            port("east", 1, 0, E, PortCell::Man),
            port("south", 0, -1, S, PortCell::Man),
            port("north", 0, 1, N, PortCell::Man),
        ];
        Self::build(GadgetKind::Crossing, men, landings, ports)
    }

    /// One shared man with landings on all four sides.
    pub fn interaction() -> Self {
        use Direction::*;
        let mut landings = corners();
        landings.extend([
            Coord::new(-1, 0),
            Coord::new(1, 0),
            Coord::new(0, -1),
            Coord::new(0, 1),
        ]);
        let ports = vec![
            port("west", -1, 0, W, PortCell::Landing),
            port("east", 1, 0, E, PortCell::Landing),
            port("south", 0, -1, S, PortCell::Landing),
            port("north", 0, 1, N, PortCell::Landing),
        ];
        Self::build(
            GadgetKind::Interaction,
            vec![Coord::new(0, 0)],
            landings,
            ports,
        )
    }

    /// Path enters moving north into `(0,0)`; it leaves eastward along the
    /// lower line from `(0,0)` or along the upper line from `(0,3)`.
    pub fn fan_out2() -> Self {
        use Direction::*;
        Self::build(
            GadgetKind::FanOut2,
            vec![Coord::new(0, 1), Coord::new(0, 2)],
            vec![Coord::new(0, 0), Coord::new(0, 3)],
            vec![
                port("in", 0, 0, S, PortCell::Landing),
                port("lower", 0, 0, E, PortCell::Landing),
                port("upper", 0, 3, E, PortCell::Landing),
            ],
        )
    }

    /// Lines arrive moving east into `(0,0)` and `(0,3)`; the path leaves
    /// northward from `(0,3)`.
    pub fn fan_in2() -> Self {
        use Direction::*;
        Self::build(
            GadgetKind::FanIn2,
            vec![Coord::new(0, 1), Coord::new(0, 2)],
            vec![Coord::new(0, 0), Coord::new(0, 3)],
            vec![
                port("lower", 0, 0, W, PortCell::Landing),
                port("upper", 0, 3, W, PortCell::Landing),
                port("out", 0, 3, N, PortCell::Landing),
            ],
        )
    }

    /// Path enters moving east into `(0,0)`; three lines leave southward from
    /// `(0,0)`, `(d1,0)` and `(d1+d2,0)`.
    pub fn fan_out3(d1: i32, d2: i32) -> Self {
        use Direction::*;
        let (men, landings) = row_with_landings(&[0, d1, d1 + d2]);
        Self::build(
            GadgetKind::FanOut3,
            men,
            landings,
            vec![
                port("in", 0, 0, W, PortCell::Landing),
                port("out0", 0, 0, S, PortCell::Landing),
                port("out1", d1, 0, S, PortCell::Landing),
                port("out2", d1 + d2, 0, S, PortCell::Landing),
            ],
        )
    }

    /// Three lines arrive moving south into `(0,0)`, `(d1,0)` and
    /// `(d1+d2,0)`; the path leaves eastward from `(d1+d2,0)`.
    pub fn fan_in3(d1: i32, d2: i32) -> Self {
        use Direction::*;
        let (men, landings) = row_with_landings(&[0, d1, d1 + d2]);
        Self::build(
            GadgetKind::FanIn3,
            men,
            landings,
            vec![
                port("in0", 0, 0, N, PortCell::Landing),
                port("in1", d1, 0, N, PortCell::Landing),
                port("in2", d1 + d2, 0, N, PortCell::Landing),
                port("out", d1 + d2, 0, E, PortCell::Landing),
            ],
        )
    }

    /// Path enters at `(0,0)`; two men lead to `(0,3)`, which must be on the
    /// goal row.
    pub fn goal_path() -> Self {
        use Direction::*;
        Self::build(
            GadgetKind::GoalPath,
            vec![Coord::new(0, 1), Coord::new(0, 2)],
            vec![Coord::new(0, 0), Coord::new(0, 3)],
            vec![
                port("in", 0, 0, S, PortCell::Landing),
                port("goal", 0, 3, N, PortCell::Landing),
            ],
        )
    }

    /// Template with the default three-unit spacing for `kind`.
    pub fn standard(kind: GadgetKind) -> Self {
        match kind {
            GadgetKind::FanOut3 => Self::fan_out3(3, 3),
            GadgetKind::FanIn3 => Self::fan_in3(3, 3),
            GadgetKind::FanOut2 => Self::fan_out2(),
            GadgetKind::FanIn2 => Self::fan_in2(),
            GadgetKind::Crossing => Self::crossing(),
            GadgetKind::Interaction => Self::interaction(),
            GadgetKind::GoalPath => Self::goal_path(),
        }
    }

    pub fn transformed(&self, t: Transform) -> Self {
        let men: Vec<Coord> = self.men.iter().map(|&c| t.apply(c)).collect();
        let landings: Vec<Coord> = self.landings.iter().map(|&c| t.apply(c)).collect();
        let ports = self
            .ports
            .iter()
            .map(|p| Port {
                cell: t.apply(p.cell),
                dir: t.apply_dir(p.dir),
                ..p.clone()
            })
            .collect();
        Self::build(self.kind, men, landings, ports)
    }

    pub fn port(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }

    pub fn footprint_cells(&self) -> impl Iterator<Item = Coord> + '_ {
        let (lo, hi) = self.footprint;
        (lo.y..=hi.y).flat_map(move |y| (lo.x..=hi.x).map(move |x| Coord::new(x, y)))
    }
}

fn corners() -> Vec<Coord> {
    vec![
        Coord::new(-1, -1),
        Coord::new(1, -1),
        Coord::new(-1, 1),
        Coord::new(1, 1),
    ]
}

fn row_with_landings(xs: &[i32]) -> (Vec<Coord>, Vec<Coord>) {
    let last = *xs.last().unwrap();
    let landings: Vec<Coord> = xs.iter().map(|&x| Coord::new(x, 0)).collect();
    let men = (0..=last)
        .filter(|x| !xs.contains(x))
        .map(|x| Coord::new(x, 0))
        .collect();
    (men, landings)
}

/// Adds a template's men to a board at `anchor`.
///
/// The footprint must lie on the board, and existing men may only sit where
/// the template also puts a man on a port cell (lines continuing through a
/// shared boundary).
pub fn stamp(board: &Board, t: &GadgetTemplate, anchor: Coord) -> Result<Board, ReductionError> {
    let gadget = t.kind.name().to_string();
    for cell in t.footprint_cells() {
        let at = Coord::new(anchor.x + cell.x, anchor.y + cell.y);
        if !board.on_board(at) {
            return Err(ReductionError::OutOfBounds { gadget, anchor, at });
        }
        let shared = t
            .ports
            .iter()
            .any(|p| p.cell == cell && p.cell_kind == PortCell::Man);
        if board.is_man(at) && !shared {
            return Err(ReductionError::Overlap { gadget, anchor, at });
        }
    }
    let mut men: BTreeSet<Coord> = board.men().clone();
    for m in &t.men {
        let at = Coord::new(anchor.x + m.x, anchor.y + m.y);
        if at == board.ball() {
            return Err(ReductionError::Overlap { gadget, anchor, at });
        }
        men.insert(at);
    }
    Ok(Board::new(
        board.width(),
        board.height(),
        board.ball(),
        men,
    )?)
}

/// Expected behaviour of one probe run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// Some sequence reaches the port's outer landing, optionally using
    /// exactly `jumps` jumps for the first such sequence found.
    Reach {
        port: &'static str,
        jumps: Option<usize>,
    },
    /// No sequence lands on the port's outer landing.
    Blocked { port: &'static str },
    /// No sequence lands on this template-relative cell.
    BlockedCell { cell: Coord, label: &'static str },
    /// Some sequence wins.
    Win,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractCase {
    pub name: &'static str,
    /// Traverse from the first port to the second before probing.
    pub prior: Option<(&'static str, &'static str)>,
    pub entry: &'static str,
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetContract {
    pub kind: GadgetKind,
    /// Template-relative men that model the neighbouring structure.
    pub context_men: Vec<Coord>,
    pub cases: Vec<ContractCase>,
}

impl GadgetContract {
    /// Contract for `t`, parameterised by its actual port geometry.
    pub fn for_template(t: &GadgetTemplate) -> Self {
        use Expectation::*;
        let reach = |port| Reach { port, jumps: None };
        let blocked = |port| Blocked { port };
        let (context_men, cases) = match t.kind {
            GadgetKind::Crossing => (
                vec![],
                vec![
                    ContractCase {
                        name: "horizontal line passes and stays horizontal",
                        prior: None,
                        entry: "west",
                        expect: vec![reach("east"), blocked("north"), blocked("south")],
                    },
                    ContractCase {
                        name: "vertical line passes and stays vertical",
                        prior: None,
                        entry: "south",
                        expect: vec![reach("north"), blocked("east"), blocked("west")],
                    },
                    ContractCase {
                        name: "vertical line still passes after the horizontal jump, via a pair of jumps",
                        prior: Some(("west", "east")),
                        entry: "south",
                        expect: vec![
                            Reach { port: "north", jumps: Some(2) },
                            blocked("east"),
                            blocked("west"),
                        ],
                    },
                    ContractCase {
                        name: "horizontal line still passes after the vertical jump",
                        prior: Some(("south", "north")),
                        entry: "west",
                        expect: vec![Reach { port: "east", jumps: Some(2) }],
                    },
                ],
            ),
            GadgetKind::Interaction => (
                vec![],
                vec![
                    ContractCase {
                        name: "horizontal line passes and stays horizontal",
                        prior: None,
                        entry: "west",
                        expect: vec![reach("east"), blocked("north"), blocked("south")],
                    },
                    ContractCase {
                        name: "vertical line passes and stays vertical",
                        prior: None,
                        entry: "south",
                        expect: vec![reach("north"), blocked("east"), blocked("west")],
                    },
                    ContractCase {
                        name: "vertical line blocked after the horizontal jump",
                        prior: Some(("west", "east")),
                        entry: "south",
                        expect: vec![blocked("north"), blocked("east"), blocked("west")],
                    },
                    ContractCase {
                        name: "horizontal line blocked after the vertical jump",
                        prior: Some(("south", "north")),
                        entry: "west",
                        expect: vec![blocked("east")],
                    },
                ],
            ),
            GadgetKind::FanOut2 => {
                let top = t.port("upper").unwrap().cell;
                let up = t.port("in").unwrap().dir.opposite();
                let next = top.step(up).step(up).step(up);
                (
                    vec![next.step(up)],
                    vec![ContractCase {
                        name: "entering path picks exactly one of the two lines",
                        prior: None,
                        entry: "in",
                        expect: vec![
                            reach("lower"),
                            reach("upper"),
                            blocked("in"),
                            BlockedCell { cell: next, label: "next pair" },
                        ],
                    }],
                )
            }
            GadgetKind::FanIn2 => {
                let low = t.port("lower").unwrap().cell;
                let down = t.port("out").unwrap().dir.opposite();
                let prev = low.step(down).step(down).step(down);
                (
                    vec![prev.step(down)],
                    vec![
                        ContractCase {
                            name: "lower line merges into the exit",
                            prior: None,
                            entry: "lower",
                            expect: vec![reach("out"), BlockedCell { cell: prev, label: "previous pair" }],
                        },
                        ContractCase {
                            name: "upper line merges into the exit",
                            prior: None,
                            entry: "upper",
                            expect: vec![reach("out"), BlockedCell { cell: prev, label: "previous pair" }],
                        },
                    ],
                )
            }
            GadgetKind::FanOut3 => {
                let far = t.port("out2").unwrap().cell;
                let along = t.port("in").unwrap().dir.opposite();
                let next = far.step(along).step(along).step(along);
                (
                    vec![next.step(along)],
                    vec![ContractCase {
                        name: "path entering from the side exits only through the three lines",
                        prior: None,
                        entry: "in",
                        expect: vec![
                            reach("out0"),
                            reach("out1"),
                            reach("out2"),
                            blocked("in"),
                            BlockedCell { cell: next, label: "beyond the row" },
                        ],
                    }],
                )
            }
            GadgetKind::FanIn3 => {
                let near = t.port("in0").unwrap().cell;
                let back = t.port("out").unwrap().dir.opposite();
                let prev = near.step(back).step(back).step(back);
                let mk = |name, entry| ContractCase {
                    name,
                    prior: None,
                    entry,
                    expect: vec![reach("out"), BlockedCell { cell: prev, label: "behind the row" }],
                };
                (
                    vec![prev.step(back)],
                    vec![
                        mk("first line merges into the exit", "in0"),
                        mk("second line merges into the exit", "in1"),
                        mk("third line merges into the exit", "in2"),
                    ],
                )
            }
            GadgetKind::GoalPath => (
                vec![],
                vec![ContractCase { name: "path reaches the goal line", prior: None, entry: "in", expect: vec![Win] }],
            ),
        };
        GadgetContract {
            kind: t.kind,
            context_men,
            cases,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectationResult {
    pub expectation: Expectation,
    pub passed: bool,
    /// A sequence demonstrating the reach, or a counterexample to a block.
    pub witness: Option<JumpSequence>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of sequences enumerated; for blocked expectations this is the
    /// exhaustion proof.
    pub explored: usize,
    pub results: Vec<ExpectationResult>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetReport {
    pub kind: GadgetKind,
    pub cases: Vec<CaseResult>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }
}

impl fmt::Display for GadgetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for case in &self.cases {
            writeln!(
                f,
                "{:<12} {:<4} {:>6} seqs  {}",
                self.kind.name(),
                if case.passed { "PASS" } else { "FAIL" },
                case.explored,
                case.name
            )?;
            if let Some(e) = &case.error {
                writeln!(f, "             error: {e}")?;
            }
            for r in &case.results {
                let w = r
                    .witness
                    .as_ref()
                    .map(|w| format!(" [{w}]"))
                    .unwrap_or_default();
                writeln!(
                    f,
                    "             {} {:?}{}",
                    if r.passed { "ok " } else { "BAD" },
                    r.expectation,
                    w
                )?;
            }
        }
        Ok(())
    }
}

const PROBE_MAX_LEN: usize = 64;
const PROBE_CAP: usize = 200_000;

/// A template placed alone on a padded board with a stub of line attached to
/// every port.
struct ProbeBoard {
    board: Board,
    shift: Coord,
}

fn probe_board(t: &GadgetTemplate, context: &[Coord]) -> ProbeBoard {
    let mut men: BTreeSet<Coord> = t.men.iter().copied().collect();
    men.extend(context.iter().copied());
    let goal = t.port("goal");
    let mut cells: Vec<Coord> = t.footprint_cells().collect();
    cells.extend(context.iter().copied());
    for p in &t.ports {
        if goal.is_some_and(|g| g.name == p.name) {
            continue;
        }
        men.extend(p.stub_men());
        cells.push(p.outer());
    }
    let (lo, hi) = bbox(cells);
    let pad = 2;
    let shift = Coord::new(pad - lo.x, pad - lo.y);
    let width = hi.x - lo.x + 1 + 2 * pad;
    let height = match goal {
        Some(g) => g.cell.y + shift.y + 1,
        None => hi.y - lo.y + 1 + 2 * pad,
    };
    let men: Vec<Coord> = men
        .into_iter()
        .map(|c| Coord::new(c.x + shift.x, c.y + shift.y))
        .collect();
    // ball parked in a corner; every probe places it explicitly
    let park = Coord::new(0, 0);
    let board = Board::new(width, height, park, men).expect("probe board is well formed");
    ProbeBoard { board, shift }
}

impl ProbeBoard {
    fn abs(&self, c: Coord) -> Coord {
        Coord::new(c.x + self.shift.x, c.y + self.shift.y)
    }
}

fn outer_of(t: &GadgetTemplate, name: &str) -> Option<Coord> {
    t.port(name).map(|p| p.outer())
}

/// Exhaustively checks a template against its contract.
pub fn check_gadget(t: &GadgetTemplate, c: &GadgetContract) -> GadgetReport {
    let probe = probe_board(t, &c.context_men);
    let cases = c
        .cases
        .iter()
        .map(|case| run_case(t, &probe, case))
        .collect();
    GadgetReport {
        kind: t.kind,
        cases,
    }
}

fn run_case(t: &GadgetTemplate, probe: &ProbeBoard, case: &ContractCase) -> CaseResult {
    let fail = |msg: String| CaseResult {
        name: case.name,
        passed: false,
        explored: 0,
        results: vec![],
        error: Some(msg),
    };
    let mut board = probe.board.clone();
    if let Some((from, to)) = case.prior {
        let (Some(start), Some(target)) = (outer_of(t, from), outer_of(t, to)) else {
            return fail(format!("unknown port in prior traversal {from}->{to}"));
        };
        let start = probe.abs(start);
        let target = probe.abs(target);
        let b = match board.with_ball(start) {
            Ok(b) => b,
            Err(e) => return fail(e.to_string()),
        };
        let seqs = match enumerate_sequences(&b, PROBE_MAX_LEN, PROBE_CAP) {
            Ok(s) => s,
            Err(e) => return fail(e.to_string()),
        };
        let Some(done) = seqs.iter().find(|s| s.ball == target) else {
            return fail(format!("prior traversal {from}->{to} impossible"));
        };
        board = b.without_men(&done.removed);
    }
    let Some(entry) = outer_of(t, case.entry) else {
        return fail(format!("unknown entry port {}", case.entry));
    };
    let board = match board.with_ball(probe.abs(entry)) {
        Ok(b) => b,
        Err(e) => return fail(e.to_string()),
    };
    let seqs = match enumerate_sequences(&board, PROBE_MAX_LEN, PROBE_CAP) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let results: Vec<ExpectationResult> = case
        .expect
        .iter()
        .map(|e| evaluate_expectation(t, probe, &seqs, e))
        .collect();
    CaseResult {
        name: case.name,
        passed: results.iter().all(|r| r.passed),
        explored: seqs.len(),
        results,
        error: None,
    }
}

fn evaluate_expectation(
    t: &GadgetTemplate,
    probe: &ProbeBoard,
    seqs: &[EnumeratedSequence],
    e: &Expectation,
) -> ExpectationResult {
    let lands_on = |cell: Coord| seqs.iter().find(|s| s.sequence.landings.contains(&cell));
    let (passed, witness) = match e {
        Expectation::Reach { port, jumps } => match outer_of(t, port) {
            Some(cell) => {
                let cell = probe.abs(cell);
                match seqs.iter().find(|s| s.ball == cell) {
                    Some(s) => (
                        jumps.is_none_or(|j| s.sequence.len() == j),
                        Some(s.sequence.clone()),
                    ),
                    None => (false, None),
                }
            }
            None => (false, None),
        },
        Expectation::Blocked { port } => match outer_of(t, port) {
            Some(cell) => match lands_on(probe.abs(cell)) {
                Some(s) => (false, Some(s.sequence.clone())),
                None => (true, None),
            },
            None => (false, None),
        },
        Expectation::BlockedCell { cell, .. } => match lands_on(probe.abs(*cell)) {
            Some(s) => (false, Some(s.sequence.clone())),
            None => (true, None),
        },
        Expectation::Win => match seqs.iter().find(|s| s.winning) {
            Some(s) => (true, Some(s.sequence.clone())),
            None => (false, None),
        },
    };
    ExpectationResult {
        expectation: e.clone(),
        passed,
        witness,
    }
}

/// Every template orientation the compiler uses, each checked against its
/// contract.
pub fn shipped_templates() -> Vec<(String, GadgetTemplate)> {
    let mut out = Vec::new();
    let orientations = [
        ("", Transform::IDENTITY),
        (" mirrored-x", Transform::MIRROR_X),
        (" mirrored-y", Transform::MIRROR_Y),
        (" rotated-180", Transform::ROTATE_180),
    ];
    for kind in GadgetKind::ALL {
        let bases: Vec<(String, GadgetTemplate)> = match kind {
            GadgetKind::FanOut3 => vec![
                ("3,3".into(), GadgetTemplate::fan_out3(3, 3)),
                ("3,4".into(), GadgetTemplate::fan_out3(3, 4)),
                ("4,3".into(), GadgetTemplate::fan_out3(4, 3)),
            ],
            GadgetKind::FanIn3 => vec![
                ("3,3".into(), GadgetTemplate::fan_in3(3, 3)),
                ("3,4".into(), GadgetTemplate::fan_in3(3, 4)),
                ("4,3".into(), GadgetTemplate::fan_in3(4, 3)),
            ],
            _ => vec![(String::new(), GadgetTemplate::standard(kind))],
        };
        for (params, base) in bases {
            for (oname, tr) in orientations {
                if kind == GadgetKind::GoalPath && !oname.is_empty() {
                    continue;
                }
                let label = if params.is_empty() {
                    format!("{kind}{oname}")
                } else {
                    format!("{kind}({params}){oname}")
                };
                out.push((label, base.transformed(tr)));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_shipped_template_meets_its_contract() {
        for (label, t) in shipped_templates() {
            let report = check_gadget(&t, &GadgetContract::for_template(&t));
            assert!(report.passed(), "{label}\n{report}");
        }
    }

    #[test]
    fn crossing_gap_takes_two_jumps() {
        let t = GadgetTemplate::crossing();
        let report = check_gadget(&t, &GadgetContract::for_template(&t));
        let case = &report.cases[2];
        let reach = &case.results[0];
        assert!(reach.passed);
        assert_eq!(reach.witness.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn interaction_is_not_a_crossing() {
        // the crossing's contract must fail for the interaction template
        let t = GadgetTemplate::interaction();
        let mut c = GadgetContract::for_template(&GadgetTemplate::crossing());
        c.kind = GadgetKind::Interaction;
        let report = check_gadget(&t, &c);
        assert!(!report.cases[2].passed);
    }

    #[test]
    fn ports_lie_on_footprint_boundary() {
        for (label, t) in shipped_templates() {
            let (lo, hi) = t.footprint;
            for p in &t.ports {
                let c = p.cell;
                assert!(
                    c.x >= lo.x && c.x <= hi.x && c.y >= lo.y && c.y <= hi.y,
                    "{label}"
                );
                let outward = c.step(p.dir);
                assert!(
                    outward.x < lo.x || outward.x > hi.x || outward.y < lo.y || outward.y > hi.y,
                    "{label} port {} does not face outward",
                    p.name
                );
            }
        }
    }

    #[test]
    fn stamp_on_empty_board() {
        let b = Board::new(9, 9, Coord::new(0, 0), []).unwrap();
        let t = GadgetTemplate::crossing();
        let out = stamp(&b, &t, Coord::new(4, 4)).unwrap();
        let expect: BTreeSet<Coord> = t.men.iter().map(|c| Coord::new(c.x + 4, c.y + 4)).collect();
        assert_eq!(out.men(), &expect);
    }

    #[test]
    fn disjoint_stamps_commute() {
        let b = Board::new(12, 9, Coord::new(0, 0), []).unwrap();
        let x = GadgetTemplate::crossing();
        let i = GadgetTemplate::interaction();
        let ab = stamp(
            &stamp(&b, &x, Coord::new(3, 4)).unwrap(),
            &i,
            Coord::new(7, 4),
        )
        .unwrap();
        let ba = stamp(
            &stamp(&b, &i, Coord::new(7, 4)).unwrap(),
            &x,
            Coord::new(3, 4),
        )
        .unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn overlapping_stamps_fail() {
        let b = Board::new(9, 9, Coord::new(0, 0), []).unwrap();
        let t = GadgetTemplate::crossing();
        let once = stamp(&b, &t, Coord::new(4, 4)).unwrap();
        let err = stamp(&once, &GadgetTemplate::interaction(), Coord::new(5, 4)).unwrap_err();
        assert!(matches!(err, ReductionError::Overlap { .. }), "{err:?}");
        let err = stamp(&b, &t, Coord::new(0, 4)).unwrap_err();
        assert!(matches!(err, ReductionError::OutOfBounds { .. }));
    }

    #[test]
    fn transforms_compose() {
        let t = Transform::MIRROR_X.then(Transform::MIRROR_Y);
        assert_eq!(t, Transform::ROTATE_180);
        assert_eq!(Transform::MIRROR_X.apply_dir(Direction::NE), Direction::NW);
    }
}
