use crate::absorption::{absorbed, AbsorptionError};
use crate::cnf::{Clause, CnfFormula};
use crate::solver::{Progress, Solver, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackOutcome {
    /// Number of restarts completed when the clause set first absorbed the
    /// target (0: before any run).
    AbsorbedAt(u64),
    NotAbsorbedWithinBudget { restarts: u64 },
}

/// Runs the solver with a restart after every conflict and checks, before
/// the first round and after every restart, whether the current clause set
/// absorbs `target`. The final clause set is checked once more when the
/// run ends.
pub fn track_absorption(
    formula: &CnfFormula,
    target: &Clause,
    config: &SolverConfig,
    max_restarts: u64,
) -> Result<TrackOutcome, AbsorptionError> {
    let cfg = SolverConfig {
        restart_interval: 1,
        record_trace: false,
        ..config.clone()
    };
    let mut solver = Solver::new(formula, cfg);
    if absorbed(solver.db(), target)? {
        return Ok(TrackOutcome::AbsorbedAt(0));
    }
    loop {
        let progress = solver.run_until_restart(&mut |_| {});
        let restarts = solver.stats().restarts;
        if absorbed(solver.db(), target)? {
            return Ok(TrackOutcome::AbsorbedAt(restarts));
        }
        if matches!(progress, Progress::Finished(_)) || restarts >= max_restarts {
            return Ok(TrackOutcome::NotAbsorbedWithinBudget { restarts });
        }
    }
}
