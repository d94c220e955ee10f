use std::fmt;

use crate::cnf::{Clause, ClauseId, TrailEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictTag {
    Sat,
    Unsat,
    Unknown,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::Sat => "SAT",
            VerdictTag::Unsat => "UNSAT",
            VerdictTag::Unknown => "UNKNOWN",
        })
    }
}

/// One line of the solver log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// Decision or implied assignment, printed as `D var val` / `I var val reason`.
    Assign(TrailEntry),
    Conflict(ClauseId),
    Learned(Clause),
    Restart,
    Verdict(VerdictTag),
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Assign(e) => write!(f, "{e}"),
            TraceEvent::Conflict(id) => write!(f, "C {id}"),
            TraceEvent::Learned(c) => write!(f, "L {c}"),
            TraceEvent::Restart => f.write_str("R"),
            TraceEvent::Verdict(v) => write!(f, "V {v}"),
        }
    }
}

pub fn write_trace(events: &[TraceEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}
