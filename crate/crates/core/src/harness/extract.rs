use crate::cnf::{Assignment, CnfFormula, Model, PartialAssignment, Variable};
use crate::resolution::{simulation_bound, BoundKind, BoundQuery};
use crate::solver::{solve, SolverConfig, Verdict};

use super::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractionOutcome {
    /// A model that was checked against every clause.
    Model(Model),
    Unsat,
    /// The assembled assignment failed verification.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionReport {
    pub outcome: ExtractionOutcome,
    pub solver_runs: u64,
    pub budget: u64,
}

enum Probe {
    Refuted,
    Satisfiable,
    Unknown,
}

struct Prober<'a> {
    template: &'a SolverConfig,
    repeats: u64,
    budget: u64,
    runs: u64,
}

impl Prober<'_> {
    /// Up to `repeats` budgeted runs; the first definitive answer wins,
    /// since both Sat and Unsat verdicts are sound.
    fn probe(&mut self, formula: &CnfFormula) -> Probe {
        for _ in 0..self.repeats {
            let cfg = SolverConfig {
                seed: self.template.seed.wrapping_add(self.runs),
                max_conflicts: Some(self.budget),
                record_trace: false,
                ..self.template.clone()
            };
            self.runs += 1;
            match solve(formula, &cfg).verdict {
                Verdict::Unsat => return Probe::Refuted,
                Verdict::Sat(_) => return Probe::Satisfiable,
                Verdict::Indeterminate => {}
            }
        }
        Probe::Unknown
    }
}

/// Builds a model one variable at a time: tentatively `x = 0`, probe the
/// restricted formula `⌈log₂ n⌉ + 1` times, and switch to `x = 1` when a
/// probe refutes it. Each run is budgeted by the width-only bound for `k`.
///
/// Requires every clause of `formula` to have width at most `k`, a property
/// preserved by restriction.
pub fn extract_model(
    formula: &CnfFormula,
    k: usize,
    config: &SolverConfig,
) -> Result<ExtractionReport, HarnessError> {
    let width = formula.max_width();
    if width > k {
        return Err(HarnessError::WidthPrecondition { width, k });
    }
    let n = formula.num_vars();
    let bound = simulation_bound(&BoundQuery {
        kind: BoundKind::WidthOnly,
        m: None,
        n: n.max(1) as u64,
        k: k.max(1) as u64,
    })?;
    let scale = (config.restart_interval * config.random_decision_period) as f64;
    let mut prober = Prober {
        template: config,
        repeats: n.max(1).next_power_of_two().trailing_zeros() as u64 + 1,
        budget: (bound * scale).ceil() as u64,
        runs: 0,
    };
    let report = |outcome, prober: &Prober| ExtractionReport {
        outcome,
        solver_runs: prober.runs,
        budget: prober.budget,
    };

    if let Probe::Refuted = prober.probe(formula) {
        return Ok(report(ExtractionOutcome::Unsat, &prober));
    }
    let mut assignment = PartialAssignment::new(n);
    for i in 1..=n as u32 {
        let x = Variable::new(i);
        assignment.set(x, false);
        if let Probe::Refuted = prober.probe(&formula.restrict(&assignment)) {
            assignment.set(x, true);
        }
    }
    let model = Model::new(
        (1..=n as u32)
            .map(|i| assignment.value(Variable::new(i)).unwrap_or(false))
            .collect(),
    );
    let outcome = if formula.is_satisfied_by(&model) {
        ExtractionOutcome::Model(model)
    } else {
        ExtractionOutcome::Inconclusive
    };
    Ok(report(outcome, &prober))
}
