use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cnf::CnfFormula;
use crate::resolution::{saturate_bounded_width, simulation_bound, BoundKind, BoundQuery};
use crate::solver::{solve, Scheme, SolverConfig, Verdict, VerdictTag};

use super::HarnessError;

pub const TRIALS_CSV_HEADER: &str = "trial,seed,verdict,conflicts,restarts,decisions,bound,within_bound";
pub const SUMMARY_CSV_HEADER: &str =
    "family,params,scheme,trials,successes,fraction,p50_conflicts,p90_conflicts";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundPolicy {
    /// Certify the smallest width `k ≤ max_width` with a saturation
    /// refutation and budget each trial by the matching closed form.
    Certify { max_width: usize },
    /// No bound; trials run with the configuration's own budget.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedBound {
    pub kind: BoundKind,
    /// Length of the certified refutation.
    pub m: u64,
    pub n: u64,
    pub k: u64,
    /// Closed-form value, scaled by `restart_interval · random_decision_period`.
    pub value: f64,
    pub ceiling: u64,
}

pub fn bound_kind(scheme: Scheme) -> BoundKind {
    match scheme {
        Scheme::Decision => BoundKind::DecisionScheme,
        Scheme::FirstUip => BoundKind::AssertingScheme,
    }
}

/// Certifies `(m, k)` by saturation and evaluates the bound for `config`.
pub fn certify_bound(
    formula: &CnfFormula,
    config: &SolverConfig,
    max_width: usize,
) -> Result<CertifiedBound, HarnessError> {
    for k in 1..=max_width {
        if let Some(proof) = saturate_bounded_width(formula, k).refutation() {
            let kind = bound_kind(config.scheme);
            let q = BoundQuery {
                kind,
                m: Some(proof.length() as u64),
                n: formula.num_vars().max(1) as u64,
                k: k as u64,
            };
            let scale = (config.restart_interval * config.random_decision_period) as f64;
            let value = simulation_bound(&q)? * scale;
            return Ok(CertifiedBound {
                kind,
                m: proof.length() as u64,
                n: q.n,
                k: q.k,
                value,
                ceiling: value.ceil() as u64,
            });
        }
    }
    Err(HarnessError::BoundUnavailable { max_width })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub verdict: VerdictTag,
    pub conflicts: u64,
    pub restarts: u64,
    pub decisions: u64,
    pub bound: Option<u64>,
    /// Unsat within the budget; `None` without a bound.
    pub within_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialSet {
    pub scheme: Scheme,
    pub bound: Option<CertifiedBound>,
    pub records: Vec<TrialRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSummary {
    pub family: String,
    pub params: String,
    pub scheme: Scheme,
    pub trials: usize,
    /// Trials ending in a definitive verdict (Unsat within the bound, when
    /// there is one).
    pub successes: usize,
    pub fraction: f64,
    pub p50_conflicts: u64,
    pub p90_conflicts: u64,
}

fn nearest_rank(sorted: &[u64], q: f64) -> u64 {
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

impl TrialSet {
    pub fn successes(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.verdict != VerdictTag::Unknown && r.within_bound != Some(false))
            .count()
    }

    pub fn summary(&self, family: &str, params: &str) -> ExperimentSummary {
        let mut conflicts: Vec<u64> = self.records.iter().map(|r| r.conflicts).collect();
        conflicts.sort_unstable();
        let successes = self.successes();
        ExperimentSummary {
            family: family.to_string(),
            params: params.to_string(),
            scheme: self.scheme,
            trials: self.records.len(),
            successes,
            fraction: successes as f64 / self.records.len() as f64,
            p50_conflicts: nearest_rank(&conflicts, 0.5),
            p90_conflicts: nearest_rank(&conflicts, 0.9),
        }
    }
}

/// Runs `trials` independent solver runs with seeds `base_seed + i`.
pub fn run_trials(
    formula: &CnfFormula,
    config: &SolverConfig,
    trials: usize,
    base_seed: u64,
    policy: BoundPolicy,
) -> Result<TrialSet, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::InvalidTrialCount);
    }
    let bound = match policy {
        BoundPolicy::Certify { max_width } => Some(certify_bound(formula, config, max_width)?),
        BoundPolicy::None => None,
    };
    let records = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let seed = base_seed.wrapping_add(trial as u64);
            let cfg = SolverConfig {
                seed,
                record_trace: false,
                max_conflicts: bound.map(|b| b.ceiling).or(config.max_conflicts),
                ..config.clone()
            };
            let r = solve(formula, &cfg);
            TrialRecord {
                trial,
                seed,
                verdict: r.verdict.tag(),
                conflicts: r.stats.conflicts,
                restarts: r.stats.restarts,
                decisions: r.stats.decisions,
                bound: bound.map(|b| b.ceiling),
                within_bound: bound.map(|_| r.verdict == Verdict::Unsat),
            }
        })
        .collect();
    Ok(TrialSet {
        scheme: config.scheme,
        bound,
        records,
    })
}

fn or_na<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

pub fn write_trials_csv(records: &[TrialRecord]) -> String {
    let mut out = String::new();
    writeln!(out, "{TRIALS_CSV_HEADER}").unwrap();
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            r.verdict,
            r.conflicts,
            r.restarts,
            r.decisions,
            or_na(r.bound),
            or_na(r.within_bound)
        )
        .unwrap();
    }
    out
}

pub fn write_summary_csv(summaries: &[ExperimentSummary]) -> String {
    let mut out = String::new();
    writeln!(out, "{SUMMARY_CSV_HEADER}").unwrap();
    for s in summaries {
        writeln!(
            out,
            "{},{},{},{},{},{:.4},{},{}",
            s.family,
            s.params,
            s.scheme.name(),
            s.trials,
            s.successes,
            s.fraction,
            s.p50_conflicts,
            s.p90_conflicts
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{generate_formula, FormulaFamily};

    #[test]
    fn chain_trials_reach_unsat() {
        let f = generate_formula(&FormulaFamily::ChainUnsat { n: 10 }).unwrap();
        let cfg = SolverConfig::new(Scheme::Decision, 0);
        let set = run_trials(&f, &cfg, 100, 1, BoundPolicy::Certify { max_width: 2 }).unwrap();
        let b = set.bound.unwrap();
        assert_eq!(b.k, 2);
        assert_eq!(b.n, 10);
        let s = set.summary("chain", "n=10");
        assert!(s.fraction >= 0.39);
        assert_eq!(s.trials, 100);
        let mean = set.records.iter().filter(|r| r.within_bound == Some(true)).count() as f64 / 100.0;
        assert_eq!(s.fraction, mean);
    }

    #[test]
    fn satisfiable_formula_has_no_bound() {
        let f = generate_formula(&FormulaFamily::ChainSat { n: 6 }).unwrap();
        let cfg = SolverConfig::new(Scheme::FirstUip, 0);
        let set = run_trials(&f, &cfg, 10, 0, BoundPolicy::None).unwrap();
        assert!(set.records.iter().all(|r| r.verdict == VerdictTag::Sat && r.within_bound.is_none()));
        assert_eq!(set.successes(), 10);
        let csv = write_trials_csv(&set.records);
        assert!(csv.lines().nth(1).unwrap().ends_with(",NA,NA"));
        assert_eq!(
            run_trials(&f, &cfg, 10, 0, BoundPolicy::Certify { max_width: 2 }),
            Err(HarnessError::BoundUnavailable { max_width: 2 })
        );
    }

    #[test]
    fn zero_trials_rejected() {
        let f = generate_formula(&FormulaFamily::ChainUnsat { n: 3 }).unwrap();
        let cfg = SolverConfig::default();
        assert_eq!(run_trials(&f, &cfg, 0, 0, BoundPolicy::None), Err(HarnessError::InvalidTrialCount));
    }

    #[test]
    fn reruns_are_identical() {
        let f = generate_formula(&FormulaFamily::Pigeonhole { pigeons: 3 }).unwrap();
        let cfg = SolverConfig::new(Scheme::FirstUip, 0);
        let a = run_trials(&f, &cfg, 20, 5, BoundPolicy::None).unwrap();
        let b = run_trials(&f, &cfg, 20, 5, BoundPolicy::None).unwrap();
        assert_eq!(write_trials_csv(&a.records), write_trials_csv(&b.records));
    }

    #[test]
    fn csv_layout() {
        let s = ExperimentSummary {
            family: "chain".into(),
            params: "n=3".into(),
            scheme: Scheme::Decision,
            trials: 4,
            successes: 3,
            fraction: 0.75,
            p50_conflicts: 1,
            p90_conflicts: 2,
        };
        assert_eq!(
            write_summary_csv(&[s]),
            format!("{SUMMARY_CSV_HEADER}\nchain,n=3,decision,4,3,0.7500,1,2\n")
        );
        assert_eq!(nearest_rank(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], 0.9), 9);
        assert_eq!(nearest_rank(&[4], 0.5), 4);
    }
}
