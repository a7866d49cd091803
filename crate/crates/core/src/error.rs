use core::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Positivity bounds that a reverse-engineered equilibrium must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Bound {
    /// Old endowment bound of the fundamental construction:
    /// `e_o > w [β G^{1/σ} (1 + r/p)]^{1/γ}`.
    OldEndowment,
    /// Price-level bound of the bubbly construction:
    /// `p > (w - (βG)^{-1/γ} e_o) / (1 + (β G^{1-γ})^{-1/γ})`.
    PriceLevel,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::OldEndowment => {
                f.write_str("old-endowment bound e_o > w*[beta*G^(1/sigma)*(1+r/p)]^(1/gamma)")
            }
            Bound::PriceLevel => f.write_str(
                "price-level bound p > (w - (beta*G)^(-1/gamma)*e_o)/(1 + (beta*G^(1-gamma))^(-1/gamma))",
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(&'static str),
    #[error("{bound} violated (required {required}, got {actual})")]
    BoundViolated {
        bound: Bound,
        required: f64,
        actual: f64,
    },
    #[error("young endowment is not positive on [{first_valid}, {horizon}] for any start period ({detail})")]
    NoValidStart {
        first_valid: usize,
        horizon: usize,
        detail: &'static str,
    },
    #[error("series needs at least {required} terms, got {got}")]
    InsufficientTerms { required: usize, got: usize },
    #[error("series term {index} is negative ({value})")]
    NegativeTerm { index: usize, value: f64 },
    #[error("period {period} is outside the stored path [{first}, {last}]")]
    PeriodOutOfRange {
        period: usize,
        first: usize,
        last: usize,
    },
    #[error(
        "transfer epsilon = {epsilon} is infeasible at period {period} (young consumption {consumption})"
    )]
    InfeasibleTransfer {
        period: usize,
        epsilon: f64,
        consumption: f64,
    },
    #[error("difference quotient dominated by rounding at h = {h} (step {step})")]
    IllConditioned { h: f64, step: f64 },
}
