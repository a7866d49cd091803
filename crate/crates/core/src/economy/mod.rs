//! Production and preference primitives.

mod preferences;
mod production;

pub use preferences::{indifference_elasticity, mrs, CrraParams};
pub use production::{
    asymptotics, ces_output, elasticity_of_substitution, factor_prices_at, labor_share, ln_factor_prices_at,
    sigma_numeric, Asymptotics, CesParams, FactorPrices, LogFactorPrices,
};

use libm::log;

use crate::{Error, Result};

/// Population `N_t = G^t`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Demography {
    growth: f64,
}

impl Demography {
    pub fn new(growth: f64) -> Result<Self> {
        if !(growth.is_finite() && growth > 0.0) {
            return Err(Error::Domain {
                name: "G",
                value: growth,
                expected: "G > 0",
            });
        }
        Ok(Self { growth })
    }

    /// Gross population growth factor `G`.
    pub fn growth(&self) -> f64 {
        self.growth
    }

    pub fn ln_growth(&self) -> f64 {
        log(self.growth)
    }

    /// `ln N_t = t ln G`.
    pub fn ln_population(&self, t: usize) -> f64 {
        t as f64 * self.ln_growth()
    }

    /// Land-economy constructions need a growing population.
    pub fn require_growing(&self) -> Result<()> {
        if self.growth > 1.0 {
            Ok(())
        } else {
            Err(Error::UnsupportedRegime("land economy requires G > 1"))
        }
    }
}
