//! Additively separable CRRA preferences `U(y, z) = u(y) + β u(z)`.

use libm::{exp, expm1, log, log1p, pow};

use crate::numeric::is_unit;
use crate::{Error, Result};

/// Discount factor `β` and relative risk aversion `γ`.
///
/// `γ` within the unit guard band selects `u = ln c` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CrraParams {
    beta: f64,
    gamma: f64,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "positive consumption",
        })
    }
}

impl CrraParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Domain {
                name: "beta",
                value: beta,
                expected: "beta > 0",
            });
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Domain {
                name: "gamma",
                value: gamma,
                expected: "gamma > 0",
            });
        }
        Ok(Self { beta, gamma })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_log(&self) -> bool {
        is_unit(self.gamma)
    }

    /// Period utility `u(c)`.
    pub fn period_utility(&self, c: f64) -> f64 {
        if self.is_log() {
            log(c)
        } else {
            pow(c, 1.0 - self.gamma) / (1.0 - self.gamma)
        }
    }

    /// `u(c + dc) - u(c)` without cancellation for small `dc`.
    pub fn period_utility_change(&self, c: f64, dc: f64) -> f64 {
        let rel = log1p(dc / c);
        if self.is_log() {
            rel
        } else {
            let k = 1.0 - self.gamma;
            pow(c, k) * expm1(k * rel) / k
        }
    }

    /// `U(y, z) = u(y) + β u(z)`.
    pub fn lifetime_utility(&self, y: f64, z: f64) -> f64 {
        self.period_utility(y) + self.beta * self.period_utility(z)
    }

    /// `U_1(y, z) = y^{-γ}`.
    pub fn marginal_young(&self, y: f64) -> f64 {
        pow(y, -self.gamma)
    }

    /// `U_2(y, z) = β z^{-γ}`.
    pub fn marginal_old(&self, z: f64) -> f64 {
        self.beta * pow(z, -self.gamma)
    }

    /// Young consumption at which the marginal rate of substitution against
    /// old consumption `z` equals `rate`: `y = z (β rate)^{-1/γ}`.
    pub fn young_for_rate(&self, z: f64, rate: f64) -> f64 {
        z * exp(-log(self.beta * rate) / self.gamma)
    }
}

/// Marginal rate of substitution `U_1/U_2 = (1/β)(y/z)^{-γ}`, the gross
/// risk-free rate supported by the allocation `(y, z)`.
pub fn mrs(y: f64, z: f64, pref: &CrraParams) -> Result<f64> {
    let y = positive("y", y)?;
    let z = positive("z", z)?;
    Ok(exp(-pref.gamma * (log(y) - log(z)) - log(pref.beta)))
}

/// Elasticity `-y φ''(y) / φ'(y)` of the indifference curve `z = φ(y)`
/// through `(y, z)`; equals `γ (1 + y m / z)` with `m` the MRS.
pub fn indifference_elasticity(y: f64, z: f64, pref: &CrraParams) -> Result<f64> {
    let m = mrs(y, z, pref)?;
    Ok(pref.gamma * (1.0 + y * m / z))
}
