mod common;

use cdclwidth_core::absorption::{
    absorbed, absorbed_at, absorbed_at_oracle, absorption_witness, beneficial_check, empowering_at, entails,
    find_beneficial_round, AbsorptionError,
};
use cdclwidth_core::cnf::{Assignment, Clause, CnfFormula};
use cdclwidth_core::resolution::resolve_on;
use cdclwidth_core::solver::{analyze_conflict, replay_decisions, validate_round, RoundStatus, Scheme};
use common::{clause, random_small_db};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_db(seed: u64) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 3 + (seed % 4) as usize;
    random_small_db(&mut rng, n, 2 * n)
}

/// Resolvent on the first clashing literal of `a`.
fn resolvent(a: &Clause, b: &Clause) -> Option<Clause> {
    let pivot = a.iter().find(|&l| b.contains(!l))?;
    resolve_on(a, b, pivot).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    // a non-absorbed resolvent of two absorbed clauses always has a
    // beneficial round, and the round passes the direct check
    #[test]
    fn non_absorbed_resolvents_have_beneficial_rounds(seed in any::<u64>()) {
        let db = small_db(seed);
        let clauses = db.clauses().to_vec();
        for a in &clauses {
            for b in &clauses {
                let Some(c) = resolvent(a, b) else { continue };
                if c.is_empty() || c.is_tautology() || absorbed(&db, &c).unwrap() {
                    continue;
                }
                let w = find_beneficial_round(&db, &c).unwrap();
                prop_assert!(w.is_some(), "no beneficial round for {} in {:?}", c, clauses);
                let w = w.unwrap();
                let (trail, conflict) = replay_decisions(db.clauses(), db.num_vars(), &w.decisions).unwrap();
                prop_assert!(conflict.is_none());
                prop_assert_eq!(beneficial_check(&db, &c, w.literal, &trail), Ok(true));
            }
        }
    }

    // learning by DECISION from a beneficial round absorbs the clause
    #[test]
    fn decision_learning_after_beneficial_round_absorbs(seed in any::<u64>()) {
        let db = small_db(seed);
        let clauses = db.clauses().to_vec();
        for a in &clauses {
            for b in &clauses {
                let Some(c) = resolvent(a, b) else { continue };
                if c.is_empty() || c.is_tautology() || absorbed(&db, &c).unwrap() {
                    continue;
                }
                let Some(w) = find_beneficial_round(&db, &c).unwrap() else { continue };
                let mut decisions = w.decisions.clone();
                decisions.push(!w.literal);
                let (trail, conflict) = replay_decisions(db.clauses(), db.num_vars(), &decisions).unwrap();
                let conflict = conflict.expect("extension is conclusive");
                let analysis = analyze_conflict(db.clauses(), &trail, conflict, Scheme::Decision).unwrap();
                prop_assert!(analysis.learned.is_subset_of(&c));
                let mut next = db.clone();
                next.add_clause(analysis.learned.clone()).unwrap();
                prop_assert!(absorbed(&next, &c).unwrap());
            }
        }
    }

    #[test]
    fn empowering_is_entailed_and_not_absorbed(seed in any::<u64>(), width in 1usize..=3) {
        let db = small_db(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let c = common::random_clause(&mut rng, db.num_vars(), width);
        for l in c.iter() {
            let e = empowering_at(&db, &c, l).unwrap();
            let expected = entails(&db, &c).unwrap() && !absorbed_at_oracle(&db, &c, l).unwrap().absorbed;
            prop_assert_eq!(e, expected);
        }
    }

    #[test]
    fn witnesses_are_inconclusive_rounds_against_absorption(seed in any::<u64>(), width in 1usize..=3) {
        let db = small_db(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xab5);
        let c = common::random_clause(&mut rng, db.num_vars(), width);
        for l in c.iter() {
            match absorption_witness(&db, &c, l).unwrap() {
                None => prop_assert!(absorbed_at(&db, &c, l).unwrap()),
                Some(trail) => {
                    prop_assert_eq!(validate_round(db.clauses(), &trail), Ok(RoundStatus::Inconclusive));
                    prop_assert!(c.without(l).iter().all(|x| trail.lit_value(x) == Some(false)));
                    prop_assert!(trail.lit_value(l) != Some(true));
                }
            }
        }
    }
}

#[test]
fn members_are_absorbed_and_entailed() {
    for seed in 0..200 {
        let db = small_db(seed);
        for c in db.clauses() {
            if c.is_empty() || c.is_tautology() {
                continue;
            }
            assert!(absorbed(&db, c).unwrap(), "{c}");
            assert!(entails(&db, c).unwrap(), "{c}");
        }
    }
}

#[test]
fn errors_are_reported() {
    let db = common::formula(2, &[&[1, 2]]);
    assert_eq!(absorbed(&db, &clause(&[])), Err(AbsorptionError::EmptyClause));
    assert!(matches!(
        absorbed_at(&db, &clause(&[1, 3]), cdclwidth_core::Literal::from_dimacs(1)),
        Err(AbsorptionError::VariableOutOfRange { .. })
    ));
    assert_eq!(
        absorbed_at(&db, &clause(&[1, -1, 2]), cdclwidth_core::Literal::from_dimacs(2)),
        Err(AbsorptionError::IllDefinedAlpha(cdclwidth_core::Literal::from_dimacs(2)))
    );
}

#[test]
fn beneficial_search_is_exercised() {
    let mut found = 0;
    for seed in 0..300 {
        let db = small_db(seed);
        for a in db.clauses() {
            for b in db.clauses() {
                let Some(c) = resolvent(a, b) else { continue };
                if !c.is_empty() && !c.is_tautology() && !absorbed(&db, &c).unwrap() {
                    assert!(find_beneficial_round(&db, &c).unwrap().is_some());
                    found += 1;
                }
            }
        }
    }
    assert!(found >= 50, "only {found} non-absorbed resolvents");
}
