use thiserror::Error;

/// Which closed-form bound on conflicts and restarts to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `4·m·ln(4m)·n^k`, for the DECISION learning scheme.
    DecisionScheme,
    /// `4·k·m·ln(4·k·n·m)·n^(k+1)`, for any asserting learning scheme.
    AssertingScheme,
    /// `16·k·(k+1)·ln(16·k·n)·n^(2k+1)`, with the length eliminated.
    WidthOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundQuery {
    pub kind: BoundKind,
    /// Refutation length; unused for [`BoundKind::WidthOnly`].
    pub m: Option<u64>,
    pub n: u64,
    pub k: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("parameter {name} = {value} is outside its domain")]
    Domain { name: &'static str, value: u64 },
    #[error("refutation length m is required for this bound")]
    MissingLength,
}

fn at_least(name: &'static str, value: u64, min: u64) -> Result<(), BoundError> {
    if value < min {
        Err(BoundError::Domain { name, value })
    } else {
        Ok(())
    }
}

/// Upper bound on conflicts and restarts, natural logarithm throughout.
pub fn simulation_bound(q: &BoundQuery) -> Result<f64, BoundError> {
    at_least("n", q.n, 1)?;
    at_least("k", q.k, 1)?;
    let n = q.n as f64;
    let k = q.k as f64;
    let length = || -> Result<f64, BoundError> {
        let m = q.m.ok_or(BoundError::MissingLength)?;
        at_least("m", m, 1)?;
        Ok(m as f64)
    };
    Ok(match q.kind {
        BoundKind::DecisionScheme => {
            let m = length()?;
            4.0 * m * (4.0 * m).ln() * n.powf(k)
        }
        BoundKind::AssertingScheme => {
            let m = length()?;
            4.0 * k * m * (4.0 * k * n * m).ln() * n.powf(k + 1.0)
        }
        BoundKind::WidthOnly => 16.0 * k * (k + 1.0) * (16.0 * k * n).ln() * n.powf(2.0 * k + 1.0),
    })
}

/// `4·n^k`, the cap on distinct clauses of width at most `k` over `n`
/// variables. Requires `n ≥ 2`.
pub fn clause_count_bound(n: u64, k: u64) -> Result<u128, BoundError> {
    at_least("n", n, 2)?;
    at_least("k", k, 1)?;
    let k = u32::try_from(k).map_err(|_| BoundError::Domain { name: "k", value: k })?;
    (n as u128)
        .checked_pow(k)
        .and_then(|p| p.checked_mul(4))
        .ok_or(BoundError::Domain { name: "k", value: k as u64 })
}

/// `Σ_{i=0..k} 2^i·C(n,i)`, the exact number of non-tautological clauses
/// of width at most `k` over `n` variables.
pub fn width_bounded_clause_count(n: u64, k: u64) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1; // C(n, 0)
    for i in 0..=k.min(n) {
        if i > 0 {
            binom = binom * (n - i + 1) as u128 / i as u128;
        }
        total += binom << i;
    }
    total
}
