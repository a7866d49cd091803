//! CES technology `F(H, X)` over labor `H` and land `X`.

use libm::{exp, fabs, log, pow};

use super::Demography;
use crate::numeric::{is_unit, log_add_exp, UNIT_GUARD};
use crate::{Error, Result};

/// Technology parameters `(A, α, σ)`.
///
/// `σ` within [`UNIT_GUARD`] of one selects the Cobb-Douglas branch
/// `A H^α X^{1-α}`; the general branch is never evaluated there.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CesParams {
    a: f64,
    alpha: f64,
    sigma: f64,
}

/// Wage and land rent, in goods per unit of input.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FactorPrices {
    pub w: f64,
    pub r: f64,
}

/// Logarithms of [`FactorPrices`]; finite even where the linear rent is not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogFactorPrices {
    pub ln_w: f64,
    pub ln_r: f64,
}

impl LogFactorPrices {
    pub fn linear(&self) -> FactorPrices {
        FactorPrices {
            w: exp(self.ln_w),
            r: exp(self.ln_r),
        }
    }
}

/// Long-run wage level, rent coefficient and rent growth factor for `σ > 1`:
/// `w_t → wage`, `r_t ~ rent_coefficient · G^{t/σ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Asymptotics {
    pub wage: f64,
    pub rent_coefficient: f64,
    pub rent_growth: f64,
}

impl CesParams {
    pub fn new(a: f64, alpha: f64, sigma: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain {
                name: "A",
                value: a,
                expected: "A > 0",
            });
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain {
                name: "alpha",
                value: alpha,
                expected: "0 < alpha < 1",
            });
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::Domain {
                name: "sigma",
                value: sigma,
                expected: "sigma > 0",
            });
        }
        Ok(Self { a, alpha, sigma })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn is_cobb_douglas(&self) -> bool {
        is_unit(self.sigma)
    }

    /// Same technology with productivity `A` replaced.
    pub fn with_a(&self, a: f64) -> Result<Self> {
        Self::new(a, self.alpha, self.sigma)
    }

    /// `ln F(H, X)` from log inputs.
    pub fn ln_output(&self, ln_h: f64, ln_x: f64) -> f64 {
        let (a, alpha) = (self.a, self.alpha);
        if self.is_cobb_douglas() {
            return log(a) + alpha * ln_h + (1.0 - alpha) * ln_x;
        }
        let rho = 1.0 - 1.0 / self.sigma;
        log(a) + self.ln_aggregate(ln_h, ln_x) / rho
    }

    /// `(ln F_H, ln F_X)` from log inputs.
    pub fn ln_marginal_products(&self, ln_h: f64, ln_x: f64) -> (f64, f64) {
        let (a, alpha, sigma) = (self.a, self.alpha, self.sigma);
        if self.is_cobb_douglas() {
            let ln_fh = log(a) + log(alpha) + (alpha - 1.0) * ln_h + (1.0 - alpha) * ln_x;
            let ln_fx = log(a) + log(1.0 - alpha) + alpha * ln_h - alpha * ln_x;
            return (ln_fh, ln_fx);
        }
        let common = log(a) + self.ln_aggregate(ln_h, ln_x) / (sigma - 1.0);
        (
            common + log(alpha) - ln_h / sigma,
            common + log(1.0 - alpha) - ln_x / sigma,
        )
    }

    // ln(α H^ρ + (1-α) X^ρ), ρ = 1 - 1/σ
    fn ln_aggregate(&self, ln_h: f64, ln_x: f64) -> f64 {
        let rho = 1.0 - 1.0 / self.sigma;
        log_add_exp(log(self.alpha) + rho * ln_h, log(1.0 - self.alpha) + rho * ln_x)
    }
}

fn positive_input(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "positive finite input",
        })
    }
}

/// Output `F(H, X)`.
pub fn ces_output(h: f64, x: f64, ces: &CesParams) -> Result<f64> {
    let h = positive_input("H", h)?;
    let x = positive_input("X", x)?;
    Ok(exp(ces.ln_output(log(h), log(x))))
}

/// Log wage and rent at `(H, X) = (G^t, 1)`.
pub fn ln_factor_prices_at(t: usize, ces: &CesParams, demo: &Demography) -> LogFactorPrices {
    let (ln_w, ln_r) = ces.ln_marginal_products(demo.ln_population(t), 0.0);
    LogFactorPrices { ln_w, ln_r }
}

/// Wage and rent at `(H, X) = (G^t, 1)`.
pub fn factor_prices_at(t: usize, ces: &CesParams, demo: &Demography) -> FactorPrices {
    ln_factor_prices_at(t, ces, demo).linear()
}

/// Closed-form long-run wage and rent behavior; valid for `σ > 1`, `G > 1`.
pub fn asymptotics(ces: &CesParams, demo: &Demography) -> Result<Asymptotics> {
    let sigma = ces.sigma();
    if sigma <= 1.0 + UNIT_GUARD {
        return Err(Error::UnsupportedRegime(
            "wage/rent asymptotics require sigma > 1",
        ));
    }
    demo.require_growing()?;
    let (a, alpha) = (ces.a(), ces.alpha());
    Ok(Asymptotics {
        wage: a * pow(alpha, sigma / (sigma - 1.0)),
        rent_coefficient: a * pow(alpha, 1.0 / (sigma - 1.0)) * (1.0 - alpha),
        rent_growth: pow(demo.growth(), 1.0 / sigma),
    })
}

/// Labor share `H F_H(H,1) / F(H,1)`.
pub fn labor_share(h: f64, ces: &CesParams) -> Result<f64> {
    let h = positive_input("H", h)?;
    if ces.is_cobb_douglas() {
        return Ok(ces.alpha());
    }
    // α H^ρ / (α H^ρ + 1 - α) written as a logistic in ln H
    let rho = 1.0 - 1.0 / ces.sigma();
    let z = log((1.0 - ces.alpha()) / ces.alpha()) - rho * log(h);
    Ok(1.0 / (1.0 + exp(z)))
}

/// Relative step of the central difference used by [`sigma_numeric`].
pub const SIGMA_STEP: f64 = 1e-5;

/// Estimates `σ(h) = -d h / d ln(w/r)` by a central difference of a log
/// factor-price ratio given as a function of `h = ln(H/X)`.
pub fn elasticity_of_substitution<F>(h: f64, log_price_ratio: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !h.is_finite() {
        return Err(Error::Domain {
            name: "h",
            value: h,
            expected: "finite log input ratio",
        });
    }
    let step = SIGMA_STEP * fabs(h).max(1.0);
    let hi = log_price_ratio(h + step);
    let lo = log_price_ratio(h - step);
    let diff = hi - lo;
    let scale = fabs(hi).max(fabs(lo)).max(f64::MIN_POSITIVE);
    if !diff.is_finite() || fabs(diff) <= 1e3 * f64::EPSILON * scale {
        return Err(Error::IllConditioned { h, step });
    }
    Ok(-2.0 * step / diff)
}

/// Numerical elasticity of substitution of the CES technology at
/// `h = ln(H/X)`, evaluated with `X = 1`.
pub fn sigma_numeric(h: f64, ces: &CesParams) -> Result<f64> {
    elasticity_of_substitution(h, |h| {
        let (ln_w, ln_r) = ces.ln_marginal_products(h, 0.0);
        ln_w - ln_r
    })
}
