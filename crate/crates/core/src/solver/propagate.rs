use std::collections::VecDeque;

use crate::cnf::{Assignment, Clause, ClauseId, Literal, Reason, Trail};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationResult {
    Fixpoint,
    Conflict(ClauseId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ClauseStatus {
    Satisfied,
    Falsified,
    Unit(Literal),
    Open,
}

pub(crate) fn status(clause: &Clause, trail: &Trail) -> ClauseStatus {
    let mut unassigned = None;
    let mut count = 0;
    for l in clause.iter() {
        match trail.lit_value(l) {
            Some(true) => return ClauseStatus::Satisfied,
            Some(false) => {}
            None => {
                count += 1;
                unassigned = Some(l);
            }
        }
    }
    match count {
        0 => ClauseStatus::Falsified,
        // a tautology with its variable unset leaves two literals here
        1 => ClauseStatus::Unit(unassigned.unwrap()),
        _ => ClauseStatus::Open,
    }
}

/// Occurrence-list unit propagation.
///
/// After every single assignment the clauses containing the newly falsified
/// literal are inspected in id order: the first falsified one stops
/// propagation, unit ones join a FIFO queue. Units are consumed from the
/// queue one assignment at a time.
#[derive(Debug, Clone)]
pub(crate) struct Propagator {
    occurs: Vec<Vec<ClauseId>>,
    queue: VecDeque<ClauseId>,
    pub propagations: u64,
}

impl Propagator {
    pub fn new(num_vars: usize, clauses: &[Clause]) -> Self {
        let mut p = Propagator {
            occurs: vec![Vec::new(); 2 * num_vars],
            queue: VecDeque::new(),
            propagations: 0,
        };
        for (i, c) in clauses.iter().enumerate() {
            p.add_clause(ClauseId(i), c);
        }
        p
    }

    pub fn add_clause(&mut self, id: ClauseId, clause: &Clause) {
        for l in clause.iter() {
            self.occurs[l.code()].push(id);
        }
    }

    /// Full scan in id order: returns the first falsified clause, or queues
    /// every unit clause. `first` is queued ahead of the scan.
    pub fn rescan(&mut self, clauses: &[Clause], trail: &Trail, first: Option<ClauseId>) -> Option<ClauseId> {
        self.queue.clear();
        self.queue.extend(first);
        for (i, c) in clauses.iter().enumerate() {
            match status(c, trail) {
                ClauseStatus::Falsified => {
                    self.queue.clear();
                    return Some(ClauseId(i));
                }
                ClauseStatus::Unit(_) => self.queue.push_back(ClauseId(i)),
                _ => {}
            }
        }
        None
    }

    /// Pushes `lit` and inspects the clauses it falsifies.
    pub fn assign(&mut self, clauses: &[Clause], trail: &mut Trail, lit: Literal, reason: Reason) -> Option<ClauseId> {
        trail.push(lit, reason).expect("assigned variables are unassigned");
        for &id in &self.occurs[(!lit).code()] {
            match status(&clauses[id.0], trail) {
                ClauseStatus::Falsified => {
                    self.queue.clear();
                    return Some(id);
                }
                ClauseStatus::Unit(_) => self.queue.push_back(id),
                _ => {}
            }
        }
        None
    }

    pub fn propagate(&mut self, clauses: &[Clause], trail: &mut Trail) -> Option<ClauseId> {
        while let Some(id) = self.queue.pop_front() {
            if let ClauseStatus::Unit(l) = status(&clauses[id.0], trail) {
                self.propagations += 1;
                if let Some(conflict) = self.assign(clauses, trail, l, Reason::Implied(id)) {
                    return Some(conflict);
                }
            }
        }
        None
    }
}

/// Extends `trail` by unit propagation over `clauses` until no clause is
/// unit (fixpoint) or some clause is falsified.
///
/// Assignments already on the trail are taken as given; a clause they
/// falsify is reported as the conflict without further propagation.
pub fn unit_propagate(clauses: &[Clause], trail: &mut Trail) -> PropagationResult {
    let mut p = Propagator::new(trail.num_vars(), clauses);
    let conflict = p
        .rescan(clauses, trail, None)
        .or_else(|| p.propagate(clauses, trail));
    match conflict {
        Some(id) => PropagationResult::Conflict(id),
        None => PropagationResult::Fixpoint,
    }
}
