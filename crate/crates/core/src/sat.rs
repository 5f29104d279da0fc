//! 3-CNF formulas: DIMACS I/O, evaluation, clause ordering and a brute-force
//! satisfiability oracle.
//!
//! Every clause is stored with exactly three literal slots. Input clauses with
//! one or two distinct literals are padded by repeating literals, so slot `j`
//! always corresponds to the `j`-th vertical line of the clause in a compiled
//! board.

use std::fmt;

use crate::error::SatError;

/// Largest variable count accepted by [`brute_force_sat`].
pub const ORACLE_VAR_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(variable: usize) -> Self {
        Literal {
            variable,
            negated: false,
        }
    }

    pub fn negative(variable: usize) -> Self {
        Literal {
            variable,
            negated: true,
        }
    }

    /// Signed, 1-based DIMACS encoding.
    pub fn to_dimacs(self) -> i64 {
        let v = self.variable as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn from_dimacs(code: i64) -> Option<Self> {
        if code == 0 {
            return None;
        }
        Some(Literal {
            variable: (code.unsigned_abs() - 1) as usize,
            negated: code < 0,
        })
    }

    pub fn holds(self, a: &Assignment) -> bool {
        a.get(self.variable) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x{}", self.variable)
        } else {
            write!(f, "x{}", self.variable)
        }
    }
}

/// A clause with exactly three ordered slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: [Literal; 3],
}

impl Clause {
    pub fn new(literals: [Literal; 3]) -> Self {
        Clause { literals }
    }

    /// Builds a clause from 1–3 distinct literals (duplicates are dropped
    /// first, keeping the first occurrence) and pads it to three slots.
    ///
    /// Padding cycles through the distinct literals, so `[a]` becomes
    /// `[a, a, a]` and `[a, b]` becomes `[a, b, a]`.
    pub fn normalized(input: &[Literal]) -> Result<Self, SatError> {
        let mut distinct: Vec<Literal> = Vec::with_capacity(3);
        for &lit in input {
            if !distinct.contains(&lit) {
                distinct.push(lit);
            }
        }
        match distinct.len() {
            0 => Err(SatError::EmptyClause),
            1..=3 => {
                let k = distinct.len();
                Ok(Clause::new([distinct[0], distinct[1 % k], distinct[2 % k]]))
            }
            n => Err(SatError::TooManyLiterals(n)),
        }
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.literals
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        self.literals.iter().any(|l| l.holds(a))
    }

    pub fn distinct_literals(&self) -> Vec<Literal> {
        let mut out: Vec<Literal> = Vec::with_capacity(3);
        for &l in &self.literals {
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, SatError> {
        for (k, c) in clauses.iter().enumerate() {
            for l in c.literals() {
                if l.variable >= num_vars {
                    return Err(SatError::VariableOutOfRange {
                        clause: k,
                        variable: l.variable,
                        num_vars,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Writes the formula in DIMACS CNF form, three literals per clause.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c.literals() {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "T");
        }
        for (k, c) in self.clauses.iter().enumerate() {
            if k > 0 {
                write!(f, " & ")?;
            }
            let [a, b, d] = c.literals();
            write!(f, "({a} | {b} | {d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Assignment number `index` in the oracle's enumeration order:
    /// variable 0 is the most significant bit.
    pub fn from_index(num_vars: usize, index: u64) -> Self {
        let values = (0..num_vars)
            .map(|i| (index >> (num_vars - 1 - i)) & 1 == 1)
            .collect();
        Assignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, variable: usize) -> bool {
        self.values[variable]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Parses `T`/`F`/`1`/`0` tokens separated by whitespace or commas.
    pub fn parse(text: &str) -> Result<Self, SatError> {
        let mut values = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            match tok {
                "" => {}
                "T" | "t" | "1" | "true" => values.push(true),
                "F" | "f" | "0" | "false" => values.push(false),
                other => return Err(SatError::BadAssignmentToken(other.to_string())),
            }
        }
        Ok(Assignment { values })
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .values
            .iter()
            .map(|&v| if v { "T" } else { "F" })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Parses DIMACS CNF. Literal order inside each clause is preserved.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(SatError::syntax(line_no, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(SatError::syntax(
                    line_no,
                    "expected `p cnf <vars> <clauses>`",
                ));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| SatError::syntax(line_no, "bad variable count"))?;
            let m = parts[3]
                .parse()
                .map_err(|_| SatError::syntax(line_no, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let (num_vars, _) =
            header.ok_or_else(|| SatError::syntax(line_no, "clause before header"))?;
        for tok in line.split_whitespace() {
            let code: i64 = tok
                .parse()
                .map_err(|_| SatError::syntax(line_no, format!("bad literal `{tok}`")))?;
            if pending.is_empty() {
                pending_line = line_no;
            }
            match Literal::from_dimacs(code) {
                None => {
                    let clause = Clause::normalized(&pending).map_err(|e| match e {
                        SatError::EmptyClause => {
                            SatError::syntax(pending_line.max(line_no), "empty clause")
                        }
                        SatError::TooManyLiterals(k) => SatError::syntax(
                            pending_line,
                            format!("clause has {k} distinct literals; only 3-SAT is supported"),
                        ),
                        other => other,
                    })?;
                    clauses.push(clause);
                    pending.clear();
                }
                Some(lit) => {
                    if lit.variable >= num_vars {
                        return Err(SatError::syntax(
                            line_no,
                            format!("literal {code} exceeds declared variable count {num_vars}"),
                        ));
                    }
                    pending.push(lit);
                }
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| SatError::syntax(0, "missing header"))?;
    if !pending.is_empty() {
        return Err(SatError::syntax(pending_line, "clause not terminated by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(SatError::syntax(
            0,
            format!(
                "header declares {num_clauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(num_vars, clauses)
}

pub fn evaluate(formula: &CnfFormula, a: &Assignment) -> bool {
    assert_eq!(a.len(), formula.num_vars(), "assignment must be total");
    formula.clauses().iter().all(|c| c.satisfied_by(a))
}

/// Lexicographically first satisfying assignment (false < true, variable 0
/// most significant), or `None` when unsatisfiable.
pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Assignment>, SatError> {
    let n = formula.num_vars();
    if n > ORACLE_VAR_LIMIT {
        return Err(SatError::OracleLimit {
            num_vars: n,
            limit: ORACLE_VAR_LIMIT,
        });
    }
    for index in 0..(1u64 << n) {
        let a = Assignment::from_index(n, index);
        if evaluate(formula, &a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Result of [`order_clause_variables`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseOrdering {
    pub formula: CnfFormula,
    /// `pair_ok[k]` is true when clause `k + 1` starts with a variable other
    /// than the last variable of clause `k`.
    pub pair_ok: Vec<bool>,
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Reorders literals inside each clause so that consecutive clauses do not
/// meet on the same variable (first of clause `k` vs. last of clause `k-1`).
///
/// Candidates are ranked by, in order: the cross-clause variable constraint,
/// the weaker literal-level version of it, no equal literals in adjacent
/// slots, and a one-clause lookahead that keeps the last literal away from the
/// next clause's literal when that clause has only one distinct literal.
/// The first best permutation in a fixed order wins, so already-good clauses
/// keep their order.
pub fn order_clause_variables(formula: &CnfFormula) -> ClauseOrdering {
    let clauses = formula.clauses();
    let mut out: Vec<Clause> = Vec::with_capacity(clauses.len());
    let mut pair_ok = Vec::with_capacity(clauses.len().saturating_sub(1));

    for (k, clause) in clauses.iter().enumerate() {
        let prev_last = out.last().map(|c: &Clause| c.literals()[2]);
        let next_single = clauses.get(k + 1).and_then(|c| {
            let d = c.distinct_literals();
            (d.len() == 1).then(|| d[0])
        });
        let lits = clause.literals();
        let mut best: Option<([Literal; 3], u32)> = None;
        for perm in PERMUTATIONS {
            let cand = [lits[perm[0]], lits[perm[1]], lits[perm[2]]];
            let mut score = 0u32;
            if let Some(p) = prev_last {
                if cand[0].variable != p.variable {
                    score += 8;
                }
                if cand[0] != p {
                    score += 4;
                }
            } else {
                score += 12;
            }
            if cand[0] != cand[1] && cand[1] != cand[2] {
                score += 2;
            }
            if next_single.is_none_or(|s| cand[2] != s) {
                score += 1;
            }
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((cand, score));
            }
        }
        let (chosen, _) = best.expect("six permutations");
        if let Some(p) = prev_last {
            pair_ok.push(chosen[0].variable != p.variable);
        }
        out.push(Clause::new(chosen));
    }

    ClauseOrdering {
        formula: CnfFormula {
            num_vars: formula.num_vars,
            clauses: out,
        },
        pair_ok,
    }
}
