//! Reported figures of merit.

use std::fmt;

use crate::error::{Error, Result};

/// Tolerance for the variational preconditions and the gap-closed guard.
pub const METRIC_TOLERANCE: f64 = 1e-9;

/// Outcome of [`relative_improvement`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Improvement {
    Ratio(f64),
    /// The transformed run reached the ground energy; the ratio is unbounded.
    GapClosed,
}

impl Improvement {
    pub fn ratio(self) -> Option<f64> {
        match self {
            Improvement::Ratio(r) => Some(r),
            Improvement::GapClosed => None,
        }
    }

    /// Ratio, with a closed gap mapped to `+∞`.
    pub fn value(self) -> f64 {
        self.ratio().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Improvement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Improvement::Ratio(r) => write!(f, "{r}"),
            Improvement::GapClosed => f.write_str("gap_closed"),
        }
    }
}

/// `η = (E₀ − E_baseline) / (E₀ − E_transformed)`.
pub fn relative_improvement(e0: f64, e_baseline: f64, e_clapton: f64) -> Result<Improvement> {
    for (name, e) in [("baseline", e_baseline), ("transformed", e_clapton)] {
        if !e.is_finite() || e < e0 - METRIC_TOLERANCE {
            return Err(Error::InvalidInput(format!("{name} energy {e} lies below the ground energy {e0}")));
        }
    }
    let denominator = e0 - e_clapton;
    if denominator.abs() < METRIC_TOLERANCE {
        return Ok(Improvement::GapClosed);
    }
    Ok(Improvement::Ratio((e0 - e_baseline) / denominator))
}

/// `(e − E₀) / (E_mixed − E₀)`: 0 at the ground energy, 1 at the fully mixed state.
pub fn normalized_energy(e: f64, e0: f64, e_mixed: f64) -> Result<f64> {
    if (e_mixed - e0).abs() < METRIC_TOLERANCE {
        return Err(Error::InvalidInput(format!("degenerate normalization: E_mixed = E0 = {e0}")));
    }
    Ok((e - e0) / (e_mixed - e0))
}
