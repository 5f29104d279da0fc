use thiserror::Error;

use crate::board::{Coord, Direction};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("empty clause")]
    EmptyClause,
    #[error("clause has {0} distinct literals; at most 3 are supported")]
    TooManyLiterals(usize),
    #[error("clause {clause} mentions variable {variable} but the formula has {num_vars}")]
    VariableOutOfRange {
        clause: usize,
        variable: usize,
        num_vars: usize,
    },
    #[error("oracle limited to {limit} variables, formula has {num_vars}")]
    OracleLimit { num_vars: usize, limit: usize },
    #[error("bad assignment token `{0}`")]
    BadAssignmentToken(String),
}

impl SatError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        SatError::Syntax {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("board must be at least 1 wide and 2 tall, got {width}x{height}")]
    BadDimensions { width: i32, height: i32 },
    #[error("{what} at {at} is off the board")]
    OffBoard { what: &'static str, at: Coord },
    #[error("ball at {0} sits on a man")]
    BallOnMan(Coord),
    #[error("no legal jump towards {0}")]
    IllegalDirection(Direction),
    #[error("jump towards {0} wins the game; a finished game has no successor board")]
    WinningJump(Direction),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl BoardError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        BoardError::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("enumeration exceeded the cap of {cap} sequences")]
    TooManySequences { cap: usize },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("gadget {gadget} at {anchor} overlaps existing men at {at}")]
    Overlap {
        gadget: String,
        anchor: Coord,
        at: Coord,
    },
    #[error("gadget {gadget} at {anchor} leaves the board at {at}")]
    OutOfBounds {
        gadget: String,
        anchor: Coord,
        at: Coord,
    },
    #[error("line spacing cannot separate interactions at column {column}")]
    SpacingInfeasible { column: i32 },
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("assignment has {got} values, formula has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment leaves clause {0} unsatisfied")]
    Unsatisfied(usize),
    #[error("sequence is not a winning jump sequence ({0})")]
    NotWinning(String),
    #[error("manifest inconsistency: {0}")]
    Manifest(String),
    #[error("route step to {target} failed at {at}")]
    Route { at: Coord, target: Coord },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CheckersError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("piece at ({x},{y}) stands on a light square")]
    LightSquare { x: i32, y: i32 },
    #[error("no piece at ({x},{y})")]
    PieceNotFound { x: i32, y: i32 },
    #[error("piece at ({x},{y}) does not belong to the side to move")]
    NotMover { x: i32, y: i32 },
    #[error("piece at ({x},{y}) is already a king")]
    AlreadyKing { x: i32, y: i32 },
    #[error("oracle exceeded the cap of {cap} sequences")]
    Explosion { cap: usize },
    #[error("unknown analyzer `{0}`")]
    UnknownAnalyzer(String),
}
