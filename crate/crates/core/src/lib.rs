//! Phutball endgame hardness toolkit.
//!
//! * [`sat`]: 3-CNF formulas and a brute-force oracle.
//! * [`board`], [`svg`]: Phutball positions, jump rules and rendering.
//! * [`solver`]: mate-in-one search over jump sequences.
//! * [`reduction`]: compiles a 3-CNF formula into a Phutball position whose
//!   winning jump sequences correspond to satisfying assignments.
//! * [`witness`]: translates assignments and winning sequences into each other.
//! * [`checkers`]: polynomial-time single-move analysis for Checkers.
//! * [`experiment`]: seeded random suites used by the CLI and the acceptance tests.

pub mod board;
pub mod checkers;
pub mod error;
pub mod experiment;
pub mod reduction;
pub mod sat;
pub mod solver;
pub mod svg;
pub mod witness;
