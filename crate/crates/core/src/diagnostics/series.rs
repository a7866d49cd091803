//! Windowed convergence classification of nonnegative series.
//!
//! Infinite sums are judged from the trailing half of a finite sample. A
//! fitted geometric decay rate below `1 - RATIO_MARGIN` that is stable
//! across the window means convergence; terms that grow, or that neither
//! decay nor fall below `LOWER_BOUND_EPS` times the largest term, mean
//! divergence. Anything else is reported as inconclusive rather than
//! guessed. Measuring the floor against the largest term keeps verdicts
//! unchanged when every term is rescaled.

use libm::{exp, fabs, log};

use crate::numeric::{log_sum_exp, ols_slope};
use crate::{Error, Result};

pub const MIN_TERMS: usize = 32;
pub const RATIO_MARGIN: f64 = 1e-3;
pub const LOWER_BOUND_EPS: f64 = 1e-8;
/// Allowed drift of the fitted log-slope between the two halves of the
/// window, relative to the overall slope.
pub const SLOPE_DRIFT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Verdict {
    Convergent,
    Divergent,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Convergent => "convergent",
            Verdict::Divergent => "divergent",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SeriesClassification {
    pub verdict: Verdict,
    /// Sum of all supplied terms (may be `inf` for fast-growing terms).
    pub partial_sum: f64,
    /// Fitted ratio of consecutive terms over the evidence window.
    pub tail_ratio: f64,
    /// Half-open index range `[start, end)` used for the verdict.
    pub evidence_window: (usize, usize),
}

/// Classifies `Σ terms`; terms must be nonnegative.
pub fn classify_series(terms: &[f64]) -> Result<SeriesClassification> {
    if let Some((index, &value)) = terms.iter().enumerate().find(|(_, v)| v.is_nan() || **v < 0.0) {
        return Err(Error::NegativeTerm { index, value });
    }
    let logs: alloc::vec::Vec<f64> = terms.iter().map(|&t| log(t)).collect();
    classify_log_series(&logs)
}

/// Classifies `Σ exp(log_terms)`; `-inf` entries stand for zero terms.
pub fn classify_log_series(log_terms: &[f64]) -> Result<SeriesClassification> {
    let n = log_terms.len();
    if n < MIN_TERMS {
        return Err(Error::InsufficientTerms {
            required: MIN_TERMS,
            got: n,
        });
    }
    if let Some((index, &value)) = log_terms
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_nan() || **v == f64::INFINITY)
    {
        return Err(Error::NegativeTerm { index, value });
    }
    let partial_sum = exp(log_sum_exp(log_terms));
    let start = n / 2;
    let window = (start, n);
    let points = |lo: usize, hi: usize| {
        (lo..hi)
            .filter(|&i| log_terms[i].is_finite())
            .map(|i| (i as f64, log_terms[i]))
    };

    let positive = points(start, n).count();
    if positive < 4 {
        // the tail is (almost) all zeros
        return Ok(SeriesClassification {
            verdict: Verdict::Convergent,
            partial_sum,
            tail_ratio: 0.0,
            evidence_window: window,
        });
    }

    let slope = ols_slope(points(start, n)).unwrap_or(0.0);
    let mid = start + (n - start) / 2;
    let early = ols_slope(points(start, mid)).unwrap_or(slope);
    let late = ols_slope(points(mid, n)).unwrap_or(slope);
    let tail_ratio = exp(slope);
    let floor = log_terms[start..].iter().copied().fold(f64::INFINITY, f64::min);
    let peak = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let decaying = tail_ratio < 1.0 - RATIO_MARGIN && exp(late) < 1.0 - RATIO_MARGIN;
    let geometric = fabs(early - late) <= SLOPE_DRIFT * fabs(slope);
    let verdict = if decaying && geometric {
        Verdict::Convergent
    } else if tail_ratio >= 1.0 + RATIO_MARGIN
        || (tail_ratio >= 1.0 - RATIO_MARGIN && floor - peak >= log(LOWER_BOUND_EPS))
    {
        Verdict::Divergent
    } else {
        Verdict::Inconclusive
    };

    Ok(SeriesClassification {
        verdict,
        partial_sum,
        tail_ratio,
        evidence_window: window,
    })
}
