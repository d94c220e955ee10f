//! Propositional data model: variables, literals, clauses, formulas and
//! restrictions under partial assignments.

mod dimacs;
mod trail;

pub use dimacs::{parse_dimacs, write_dimacs, DimacsError, DimacsWarning, ParsedDimacs};
pub use trail::{Reason, Trail, TrailEntry, TrailError};

use std::collections::HashSet;
use std::fmt;
use std::ops::Not;

use thiserror::Error;

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    /// Panics on index 0.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// Zero-based position, for indexing dense per-variable tables.
    #[inline]
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }

    pub fn lit(self, value: bool) -> Literal {
        Literal::new(self, value)
    }

    pub fn positive(self) -> Literal {
        Literal::new(self, true)
    }

    pub fn negative(self) -> Literal {
        Literal::new(self, false)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `x^a`: the literal made true by the assignment `x = a`.
///
/// Packed as `(index << 1) | polarity`, so the derived ordering sorts by
/// variable first and puts the negative literal before the positive one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Variable, polarity: bool) -> Self {
        Literal((var.0 << 1) | polarity as u32)
    }

    /// Signed DIMACS integer. Panics on 0.
    pub fn from_dimacs(value: i32) -> Self {
        assert!(value != 0, "0 is not a literal");
        Literal::new(Variable::new(value.unsigned_abs()), value > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().0 as i32;
        if self.polarity() {
            v
        } else {
            -v
        }
    }

    #[inline]
    pub fn var(self) -> Variable {
        Variable(self.0 >> 1)
    }

    /// The value `a` such that `x = a` satisfies this literal.
    #[inline]
    pub fn polarity(self) -> bool {
        self.0 & 1 == 1
    }

    /// Dense code usable as an index into per-literal tables.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize - 2
    }
}

impl Not for Literal {
    type Output = Literal;

    #[inline]
    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Index of a clause inside a formula or clause database.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseId(pub usize);

impl fmt::Display for ClauseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of literals kept in canonical sorted order.
///
/// Tautologies (a literal together with its negation) are representable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut lits: Vec<Literal> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new() }
    }

    /// Builds a clause from signed DIMACS integers. Panics on 0.
    pub fn from_dimacs(lits: &[i32]) -> Self {
        Clause::new(lits.iter().map(|&l| Literal::from_dimacs(l)))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn contains_var(&self, var: Variable) -> bool {
        self.contains(var.positive()) || self.contains(var.negative())
    }

    pub fn is_tautology(&self) -> bool {
        // sorted order places x̄ immediately before x
        self.lits.windows(2).any(|w| w[0].var() == w[1].var())
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        let mut last = None;
        self.lits.iter().filter_map(move |l| {
            let v = l.var();
            if last == Some(v) {
                None
            } else {
                last = Some(v);
                Some(v)
            }
        })
    }

    pub fn max_var(&self) -> Option<Variable> {
        self.lits.last().map(|l| l.var())
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&l| other.contains(l))
    }

    /// The clause with `lit` removed; unchanged if `lit` is absent.
    pub fn without(&self, lit: Literal) -> Clause {
        Clause {
            lits: self.lits.iter().copied().filter(|&l| l != lit).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.lits.iter().copied()
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        Clause::new(iter)
    }
}

/// Renders the DIMACS clause line, including the terminating `0`.
impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lits {
            write!(f, "{} ", l)?;
        }
        write!(f, "0")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("literal {literal} refers to a variable outside 1..={num_vars}")]
    VariableOutOfRange { literal: i32, num_vars: usize },
}

/// A set of clauses over the variables `1..=num_vars`.
///
/// Clause identifiers are positions in insertion order; inserting a clause
/// that is already present is a no-op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    seen: HashSet<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize) -> Self {
        CnfFormula {
            num_vars,
            clauses: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn from_clauses(
        num_vars: usize,
        clauses: impl IntoIterator<Item = Clause>,
    ) -> Result<Self, FormulaError> {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            f.add_clause(c)?;
        }
        Ok(f)
    }

    /// Returns whether the clause was new.
    pub fn add_clause(&mut self, clause: Clause) -> Result<bool, FormulaError> {
        if let Some(v) = clause.max_var() {
            if v.index() as usize > self.num_vars {
                let literal = clause.lits.last().unwrap().to_dimacs();
                return Err(FormulaError::VariableOutOfRange {
                    literal,
                    num_vars: self.num_vars,
                });
            }
        }
        if self.seen.contains(&clause) {
            return Ok(false);
        }
        self.seen.insert(clause.clone());
        self.clauses.push(clause);
        Ok(true)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.seen.contains(clause)
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id.0]
    }

    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        self.clauses.iter().all(|c| model.satisfies(c))
    }

    /// `F|_α` as a formula over the same universe: satisfied clauses are
    /// dropped and falsified literals removed.
    pub fn restrict(&self, assignment: &impl Assignment) -> CnfFormula {
        let mut out = CnfFormula::new(self.num_vars);
        for (_, residual) in residual_formula(self.clauses(), assignment) {
            out.add_clause(residual).expect("restriction keeps variables in range");
        }
        out
    }
}

/// A clause list over a fixed variable universe; clause ids are positions.
pub trait ClauseSet {
    fn num_vars(&self) -> usize;
    fn clauses(&self) -> &[Clause];
}

impl ClauseSet for CnfFormula {
    fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

/// Anything that maps variables to optional truth values.
pub trait Assignment {
    fn value(&self, var: Variable) -> Option<bool>;

    fn lit_value(&self, lit: Literal) -> Option<bool> {
        self.value(lit.var()).map(|v| v == lit.polarity())
    }
}

/// A dense partial assignment over `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn new(num_vars: usize) -> Self {
        PartialAssignment {
            values: vec![None; num_vars],
        }
    }

    pub fn from_literals(num_vars: usize, lits: impl IntoIterator<Item = Literal>) -> Self {
        let mut a = PartialAssignment::new(num_vars);
        for l in lits {
            a.set(l.var(), l.polarity());
        }
        a
    }

    pub fn set(&mut self, var: Variable, value: bool) {
        self.values[var.slot()] = Some(value);
    }

    pub fn unset(&mut self, var: Variable) {
        self.values[var.slot()] = None;
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }
}

impl Assignment for PartialAssignment {
    fn value(&self, var: Variable) -> Option<bool> {
        self.values.get(var.slot()).copied().flatten()
    }
}

/// A total assignment; `values[i]` is the value of variable `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn satisfies(&self, clause: &Clause) -> bool {
        clause
            .iter()
            .any(|l| self.values.get(l.var().slot()) == Some(&l.polarity()))
    }
}

impl Assignment for Model {
    fn value(&self, var: Variable) -> Option<bool> {
        self.values.get(var.slot()).copied()
    }
}

/// The `v ... 0` model line used by SAT competition output.
impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v")?;
        for (i, &v) in self.values.iter().enumerate() {
            let idx = i as i64 + 1;
            write!(f, " {}", if v { idx } else { -idx })?;
        }
        write!(f, " 0")
    }
}

/// Result of restricting a clause by a partial assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Restriction {
    Satisfied,
    /// Remaining literals; empty means the clause is falsified.
    Residual(Clause),
}

impl Restriction {
    pub fn is_falsified(&self) -> bool {
        matches!(self, Restriction::Residual(c) if c.is_empty())
    }

    pub fn unit(&self) -> Option<Literal> {
        match self {
            Restriction::Residual(c) if c.width() == 1 => Some(c.literals()[0]),
            _ => None,
        }
    }
}

pub fn restrict_clause(clause: &Clause, assignment: &impl Assignment) -> Restriction {
    let mut rest = Vec::with_capacity(clause.width());
    for l in clause.iter() {
        match assignment.lit_value(l) {
            Some(true) => return Restriction::Satisfied,
            Some(false) => {}
            None => rest.push(l),
        }
    }
    // already sorted and deduplicated
    Restriction::Residual(Clause { lits: rest })
}

/// `D|_α`: the residual of every clause not satisfied by the assignment,
/// tagged with the id of the clause it came from.
pub fn residual_formula(clauses: &[Clause], assignment: &impl Assignment) -> Vec<(ClauseId, Clause)> {
    clauses
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match restrict_clause(c, assignment) {
            Restriction::Satisfied => None,
            Restriction::Residual(r) => Some((ClauseId(i), r)),
        })
        .collect()
}
