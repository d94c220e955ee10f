//! The four-mode clause-learning solver.
//!
//! A round starts from the empty trail (DEFAULT), extends it by unit
//! propagation (UNIT) and decisions (DECISION) until a clause is falsified
//! (CONFLICT) or all variables are set. Every conflict learns a clause; after
//! every `restart_interval`-th conflict the trail is cleared, otherwise the
//! solver backjumps and continues.

mod analyze;
mod db;
mod decide;
mod propagate;
mod round;
mod trace;

pub use analyze::{
    analyze_conflict, backjump_after_learn, is_asserting, vars_at_max_level, AnalysisError,
    BackjumpError, ConflictAnalysis,
};
pub use db::{ClauseDb, DuplicateClause};
pub use decide::{lowest_index_decision, random_decision, DecisionError};
pub use propagate::{unit_propagate, PropagationResult};
pub use round::{
    replay_decisions, run_complete_round, validate_round, Mode, RoundError, RoundOutcome,
    RoundStatus, RoundTrace,
};
pub use trace::{write_trace, TraceEvent, VerdictTag};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Clause, ClauseId, ClauseSet, CnfFormula, Model, Reason, Trail};
use propagate::Propagator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Decision,
    FirstUip,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Decision => "decision",
            Scheme::FirstUip => "1uip",
        }
    }
}

/// Decision rule for non-random rounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    LowestIndex { value: bool },
}

impl Default for Heuristic {
    fn default() -> Self {
        Heuristic::LowestIndex { value: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub scheme: Scheme,
    /// Restart after every `restart_interval` conflicts.
    pub restart_interval: u64,
    /// Round `j` (the number of conflicts so far) decides at random when
    /// `j % random_decision_period == 0`, otherwise with `heuristic`.
    pub random_decision_period: u64,
    pub heuristic: Heuristic,
    pub seed: u64,
    pub max_conflicts: Option<u64>,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            scheme: Scheme::Decision,
            restart_interval: 1,
            random_decision_period: 1,
            heuristic: Heuristic::default(),
            seed: 0,
            max_conflicts: None,
            record_trace: true,
        }
    }
}

impl SolverConfig {
    pub fn new(scheme: Scheme, seed: u64) -> Self {
        SolverConfig {
            scheme,
            seed,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Sat(Model),
    Unsat,
    /// The conflict budget ran out first.
    Indeterminate,
}

impl Verdict {
    pub fn tag(&self) -> VerdictTag {
        match self {
            Verdict::Sat(_) => VerdictTag::Sat,
            Verdict::Unsat => VerdictTag::Unsat,
            Verdict::Indeterminate => VerdictTag::Unknown,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, Verdict::Unsat)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub conflicts: u64,
    pub restarts: u64,
    pub decisions: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub stats: Stats,
    pub trace: Vec<TraceEvent>,
}

impl SolveResult {
    pub fn trace_text(&self) -> String {
        write_trace(&self.trace)
    }
}

/// State handed to an observer right before a learned clause is added.
pub struct LearnEvent<'a> {
    pub db: &'a ClauseDb,
    pub trail: &'a Trail,
    pub analysis: &'a ConflictAnalysis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Progress {
    Restarted,
    Finished(Verdict),
}

pub struct Solver {
    config: SolverConfig,
    db: ClauseDb,
    trail: Trail,
    propagator: Propagator,
    rng: ChaCha8Rng,
    stats: Stats,
    trace: Vec<TraceEvent>,
    logged: usize,
    pending: Option<ClauseId>,
    verdict: Option<Verdict>,
}

impl Solver {
    /// # Panics
    /// If `restart_interval` or `random_decision_period` is zero.
    pub fn new(formula: &CnfFormula, config: SolverConfig) -> Self {
        assert!(config.restart_interval >= 1, "restart interval must be positive");
        assert!(config.random_decision_period >= 1, "random decision period must be positive");
        let db = ClauseDb::new(formula);
        let mut propagator = Propagator::new(db.num_vars(), db.clauses());
        let trail = Trail::new(db.num_vars());
        let pending = propagator.rescan(db.clauses(), &trail, None);
        Solver {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            config,
            db,
            trail,
            propagator,
            stats: Stats::default(),
            trace: Vec::new(),
            logged: 0,
            pending,
            verdict: None,
        }
    }

    pub fn db(&self) -> &ClauseDb {
        &self.db
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn stats(&self) -> Stats {
        Stats {
            propagations: self.propagator.propagations,
            ..self.stats
        }
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    fn log(&mut self, event: TraceEvent) {
        if self.config.record_trace {
            self.trace.push(event);
        }
    }

    fn log_assignments(&mut self) {
        if self.config.record_trace {
            for e in &self.trail.entries()[self.logged..] {
                self.trace.push(TraceEvent::Assign(*e));
            }
        }
        self.logged = self.trail.len();
    }

    fn finish(&mut self, verdict: Verdict) -> Progress {
        self.log(TraceEvent::Verdict(verdict.tag()));
        self.verdict = Some(verdict.clone());
        Progress::Finished(verdict)
    }

    fn decide(&mut self) -> crate::cnf::Literal {
        let round = self.stats.conflicts;
        let random = round.is_multiple_of(self.config.random_decision_period);
        let lit = if random {
            random_decision(&self.trail, &mut self.rng)
        } else {
            match self.config.heuristic {
                Heuristic::LowestIndex { value } => lowest_index_decision(&self.trail, value),
            }
        };
        lit.expect("decisions happen only on incomplete trails")
    }

    /// Runs until the next restart or a final verdict.
    pub fn run_until_restart(&mut self, observer: &mut dyn FnMut(&LearnEvent<'_>)) -> Progress {
        if let Some(v) = &self.verdict {
            return Progress::Finished(v.clone());
        }
        loop {
            let conflict = self
                .pending
                .take()
                .or_else(|| self.propagator.propagate(self.db.clauses(), &mut self.trail));
            self.log_assignments();
            if let Some(id) = conflict {
                if let Some(p) = self.on_conflict(id, observer) {
                    return p;
                }
                continue;
            }
            if self.trail.is_complete() {
                let model = self.trail.to_model().expect("complete trail");
                assert!(
                    self.db.original().iter().all(|c| model.satisfies(c)),
                    "model fails an input clause"
                );
                return self.finish(Verdict::Sat(model));
            }
            let lit = self.decide();
            self.stats.decisions += 1;
            self.pending =
                self.propagator
                    .assign(self.db.clauses(), &mut self.trail, lit, Reason::Decision);
        }
    }

    fn on_conflict(&mut self, id: ClauseId, observer: &mut dyn FnMut(&LearnEvent<'_>)) -> Option<Progress> {
        self.stats.conflicts += 1;
        self.log(TraceEvent::Conflict(id));
        if self.db.clause(id).is_empty() {
            return Some(self.finish(Verdict::Unsat));
        }
        let analysis = analyze_conflict(self.db.clauses(), &self.trail, id, self.config.scheme)
            .expect("solver trails are well formed");
        self.log(TraceEvent::Learned(analysis.learned.clone()));
        observer(&LearnEvent {
            db: &self.db,
            trail: &self.trail,
            analysis: &analysis,
        });
        let learned = analysis.learned;
        let learned_id = match self.db.add_learned(learned.clone()) {
            Ok(lid) => lid,
            Err(DuplicateClause(c)) => panic!("clause {c} learned twice"),
        };
        self.propagator.add_clause(learned_id, &learned);
        if learned.is_empty() {
            return Some(self.finish(Verdict::Unsat));
        }
        if self.config.max_conflicts.is_some_and(|m| self.stats.conflicts >= m) {
            return Some(self.finish(Verdict::Indeterminate));
        }
        if self.stats.conflicts.is_multiple_of(self.config.restart_interval) {
            self.trail.clear();
            self.logged = 0;
            self.stats.restarts += 1;
            self.log(TraceEvent::Restart);
            self.pending = self.propagator.rescan(self.db.clauses(), &self.trail, None);
            return Some(Progress::Restarted);
        }
        backjump_after_learn(&mut self.trail, &learned).expect("learned clauses are falsified");
        self.logged = self.trail.len();
        self.pending = self
            .propagator
            .rescan(self.db.clauses(), &self.trail, Some(learned_id));
        None
    }

    pub fn solve_with_observer(&mut self, observer: &mut dyn FnMut(&LearnEvent<'_>)) -> Verdict {
        loop {
            if let Progress::Finished(v) = self.run_until_restart(observer) {
                return v;
            }
        }
    }

    pub fn solve(&mut self) -> Verdict {
        self.solve_with_observer(&mut |_| {})
    }

    pub fn into_result(self) -> SolveResult {
        SolveResult {
            stats: self.stats(),
            verdict: self.verdict.unwrap_or(Verdict::Indeterminate),
            trace: self.trace,
        }
    }

    /// The learned clauses so far, in learning order.
    pub fn learned(&self) -> &[Clause] {
        self.db.learned()
    }
}

pub fn solve(formula: &CnfFormula, config: &SolverConfig) -> SolveResult {
    let mut s = Solver::new(formula, config.clone());
    s.solve();
    s.into_result()
}

pub fn solve_with_observer(
    formula: &CnfFormula,
    config: &SolverConfig,
    observer: &mut dyn FnMut(&LearnEvent<'_>),
) -> SolveResult {
    let mut s = Solver::new(formula, config.clone());
    s.solve_with_observer(observer);
    s.into_result()
}
