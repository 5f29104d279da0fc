use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Phutball mate-in-one tools: 3-SAT reduction, jump search, witnesses and
/// Checkers jump analysis.
///
/// Exit codes: 0 affirmative or valid, 1 negative, 2 input error, 3 resource
/// limit reached.
#[derive(Parser, Debug)]
#[command(name = "phutball", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Sat,
    Unsat,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SearchArgs {
    /// Maximum number of search states to expand.
    #[arg(long, default_value_t = phutball_core::solver::DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
    /// Only consider orthogonal jumps.
    #[arg(long)]
    pub orthogonal_only: bool,
    /// Search strategy, by registry name.
    #[arg(long, default_value = "memo-dfs")]
    pub solver: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a DIMACS 3-CNF file into a board and a layout manifest.
    Reduce {
        input: PathBuf,
        /// Board output; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Manifest output; defaults to `<out>.manifest` when --out is given.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Search a board for a winning jump sequence.
    Solve {
        board: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the winning sequence here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a jump sequence against a board.
    Verify { board: PathBuf, sequence: PathBuf },
    /// Translate an assignment to a winning sequence, or a winning sequence
    /// back to an assignment.
    Witness {
        board: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
        /// Assignment such as `T F T`.
        #[arg(
            long,
            conflicts_with = "sequence",
            required_unless_present = "sequence"
        )]
        assignment: Option<String>,
        /// File holding a jump sequence.
        #[arg(long)]
        sequence: Option<PathBuf>,
        /// With --sequence, also print the simplified sequence.
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random 3-CNF suite: SAT oracle against compile and solve.
    Roundtrip {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value = "1..6", value_parser = parse_range)]
        vars: RangeInclusive<usize>,
        #[arg(long, default_value = "1..8", value_parser = parse_range)]
        clauses: RangeInclusive<usize>,
        #[arg(long, default_value_t = phutball_core::solver::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// Also solve every board with orthogonal jumps only and compare.
        #[arg(long)]
        orthogonal_only: bool,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check every shipped gadget template against its contract.
    GadgetCheck {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyse a Checkers position.
    Checkers {
        position: PathBuf,
        #[command(subcommand)]
        test: CheckersTest,
        /// Analysis strategy, by registry name.
        #[arg(long, default_value = "jump-graph", global = true)]
        analyzer: String,
    },
    /// Random Checkers suite: jump-graph analysis against the brute-force
    /// oracle.
    CheckersSuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value = "3..8", value_parser = parse_range)]
        sizes: RangeInclusive<usize>,
        #[arg(long, default_value_t = 6)]
        max_opponents: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a board as text or SVG.
    Render {
        board: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Jump sequence to overlay.
        #[arg(long)]
        sequence: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckersTest {
    /// Can the man at X,Y become a king in one move?
    KingTest { coord: String },
    /// Can COLOR capture every opposing piece in one move?
    WinTest { color: String },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got `{s}`"))?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in `{s}`"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in `{s}`"))?;
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::error_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_both_spellings() {
        assert_eq!(parse_range("1..8").unwrap(), 1..=8);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("7").is_err());
    }
}
