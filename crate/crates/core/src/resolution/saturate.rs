use std::collections::HashSet;

use crate::cnf::{Clause, CnfFormula, Literal, Variable};

use super::{resolve_on, ProofStep, Refutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Saturation {
    /// A refutation of width at most `k`, pruned to the ancestors of `∅`.
    Refuted {
        refutation: Refutation,
        excluded_axioms: Vec<Clause>,
    },
    /// Every resolvent of width at most `k` was derived without reaching `∅`.
    Saturated {
        clauses: usize,
        excluded_axioms: Vec<Clause>,
    },
}

impl Saturation {
    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Saturation::Refuted { refutation, .. } => Some(refutation),
            Saturation::Saturated { .. } => None,
        }
    }

    pub fn excluded_axioms(&self) -> &[Clause] {
        match self {
            Saturation::Refuted { excluded_axioms, .. }
            | Saturation::Saturated { excluded_axioms, .. } => excluded_axioms,
        }
    }
}

/// Width-`k` resolution closure of `formula`.
///
/// Axioms wider than `k` are left out and reported. Clause pairs are
/// combined in FIFO order: each new clause `j` is resolved against every
/// earlier clause `i < j`, by increasing `i` and then pivot. Tautological
/// resolvents are dropped. Output is deterministic for a fixed clause order.
pub fn saturate_bounded_width(formula: &CnfFormula, k: usize) -> Saturation {
    let num_lits = 2 * formula.num_vars();
    let mut steps: Vec<ProofStep> = Vec::new();
    let mut seen: HashSet<Clause> = HashSet::new();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); num_lits];
    let mut excluded = Vec::new();

    let push = |step: ProofStep,
                steps: &mut Vec<ProofStep>,
                occurs: &mut Vec<Vec<usize>>,
                seen: &mut HashSet<Clause>| {
        let idx = steps.len();
        for l in step.clause.iter() {
            occurs[l.code()].push(idx);
        }
        seen.insert(step.clause.clone());
        steps.push(step);
        idx
    };

    for c in formula.clauses() {
        if c.width() > k {
            excluded.push(c.clone());
            continue;
        }
        let idx = push(ProofStep::axiom(c.clone()), &mut steps, &mut occurs, &mut seen);
        if c.is_empty() {
            return Saturation::Refuted {
                refutation: prune(&steps, idx),
                excluded_axioms: excluded,
            };
        }
    }

    let mut j = 0;
    while j < steps.len() {
        let mut pairs: Vec<(usize, Literal)> = Vec::new();
        for l in steps[j].clause.iter() {
            // earlier clauses holding the complement of l; pivot is taken
            // from the earlier clause's side
            for &i in occurs[(!l).code()].iter().take_while(|&&i| i < j) {
                pairs.push((i, !l));
            }
        }
        pairs.sort_unstable();
        for (i, pivot) in pairs {
            let r = resolve_on(&steps[i].clause, &steps[j].clause, pivot)
                .expect("occurrence lists guarantee a clash");
            if r.width() > k || r.is_tautology() || seen.contains(&r) {
                continue;
            }
            let empty = r.is_empty();
            let var: Variable = pivot.var();
            let idx = push(ProofStep::resolvent(r, i, j, var), &mut steps, &mut occurs, &mut seen);
            if empty {
                return Saturation::Refuted {
                    refutation: prune(&steps, idx),
                    excluded_axioms: excluded,
                };
            }
        }
        j += 1;
    }
    Saturation::Saturated {
        clauses: steps.len(),
        excluded_axioms: excluded,
    }
}

/// Keeps only the ancestors of `root`, renumbering premises.
fn prune(steps: &[ProofStep], root: usize) -> Refutation {
    let mut keep = vec![false; root + 1];
    keep[root] = true;
    for i in (0..=root).rev() {
        if !keep[i] {
            continue;
        }
        if let super::Justification::Resolvent { left, right, .. } = steps[i].justification {
            keep[left] = true;
            keep[right] = true;
        }
    }
    let mut new_index = vec![usize::MAX; root + 1];
    let mut out = Vec::new();
    for i in 0..=root {
        if !keep[i] {
            continue;
        }
        new_index[i] = out.len();
        let mut step = steps[i].clone();
        if let super::Justification::Resolvent { left, right, .. } = &mut step.justification {
            *left = new_index[*left];
            *right = new_index[*right];
        }
        out.push(step);
    }
    Refutation::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{clause_count_bound, verify_refutation, ProofCheck};

    fn c(lits: &[i32]) -> Clause {
        Clause::from_dimacs(lits)
    }

    fn f4() -> CnfFormula {
        CnfFormula::from_clauses(2, [c(&[1, 2]), c(&[-1, 2]), c(&[1, -2]), c(&[-1, -2])]).unwrap()
    }

    #[test]
    fn refutes_f4_at_width_two() {
        let f = f4();
        let s = saturate_bounded_width(&f, 2);
        let r = s.refutation().expect("F4 has a width-2 refutation");
        assert!(r.steps.last().unwrap().clause.is_empty());
        assert_eq!(r.width(), 2);
        assert!(verify_refutation(&f, r).is_valid());
        assert!(r.length() as u128 <= clause_count_bound(2, 2).unwrap());
    }

    #[test]
    fn complementary_units() {
        let f = CnfFormula::from_clauses(1, [c(&[1]), c(&[-1])]).unwrap();
        let r = saturate_bounded_width(&f, 1).refutation().cloned().unwrap();
        assert_eq!(r.length(), 3);
        assert_eq!(verify_refutation(&f, &r), ProofCheck::Valid { length: 3, width: 1 });
    }

    #[test]
    fn f4_at_width_one_saturates_with_nothing_admitted() {
        let s = saturate_bounded_width(&f4(), 1);
        assert_eq!(
            s,
            Saturation::Saturated { clauses: 0, excluded_axioms: f4().clauses().to_vec() }
        );
    }

    #[test]
    fn empty_axiom_is_a_one_step_refutation() {
        let f = CnfFormula::from_clauses(2, [c(&[1, 2]), Clause::empty()]).unwrap();
        let r = saturate_bounded_width(&f, 1);
        assert_eq!(r.refutation().unwrap().length(), 1);
        assert_eq!(r.excluded_axioms(), &[c(&[1, 2])]);
    }

    #[test]
    fn satisfiable_formula_saturates() {
        let f = CnfFormula::from_clauses(3, [c(&[1, 2]), c(&[-1, 3]), c(&[-2, 3])]).unwrap();
        assert!(matches!(saturate_bounded_width(&f, 3), Saturation::Saturated { .. }));
    }

    #[test]
    fn deterministic() {
        let f = f4();
        assert_eq!(saturate_bounded_width(&f, 2), saturate_bounded_width(&f, 2));
    }
}
