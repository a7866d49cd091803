use libm::{log, pow};

use crate::economy::{asymptotics, CesParams, CrraParams, Demography};
use crate::{Bound, Error, Result};

/// Default last stored period.
pub const DEFAULT_HORIZON: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PathKind {
    /// `P_t = p G^{t/σ}`: land price grows with rent.
    Fundamental,
    /// `P_t = p G^t`: land price grows with the economy.
    Bubbly,
}

impl PathKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PathKind::Fundamental => "fundamental",
            PathKind::Bubbly => "bubbly",
        }
    }
}

/// Conjectured land price path.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PricePathSpec {
    kind: PathKind,
    p: f64,
}

impl PricePathSpec {
    pub fn new(kind: PathKind, p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::Domain {
                name: "p",
                value: p,
                expected: "p > 0",
            });
        }
        Ok(Self { kind, p })
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `ln P_t`.
    pub fn ln_price(&self, t: usize, ces: &CesParams, demo: &Demography) -> f64 {
        let ln_growth = match self.kind {
            PathKind::Fundamental => demo.ln_growth() / ces.sigma(),
            PathKind::Bubbly => demo.ln_growth(),
        };
        log(self.p) + t as f64 * ln_growth
    }
}

/// Everything needed to reverse-engineer one equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScenarioConfig {
    pub ces: CesParams,
    pub pref: CrraParams,
    pub demo: Demography,
    /// Constant old endowment per capita.
    pub e_o: f64,
    pub price: PricePathSpec,
    /// Last stored period.
    pub horizon: usize,
    /// Start period to use instead of the smallest feasible one.
    pub t0_override: Option<usize>,
}

impl ScenarioConfig {
    pub fn new(
        ces: CesParams,
        pref: CrraParams,
        demo: Demography,
        e_o: f64,
        price: PricePathSpec,
        horizon: usize,
    ) -> Result<Self> {
        if !(e_o.is_finite() && e_o >= 0.0) {
            return Err(Error::Domain {
                name: "e_o",
                value: e_o,
                expected: "e_o >= 0",
            });
        }
        if horizon < 1 {
            return Err(Error::Domain {
                name: "horizon",
                value: horizon as f64,
                expected: "horizon >= 1",
            });
        }
        Ok(Self {
            ces,
            pref,
            demo,
            e_o,
            price,
            horizon,
            t0_override: None,
        })
    }

    /// Inefficient fundamental example: β = 1, γ = 1, G = 1.2, σ = 3/2,
    /// A = 1, α = 1/2, p = 3, e_o = 1.
    pub fn fig1() -> Self {
        Self::preset(PathKind::Fundamental, 3.0)
    }

    /// Asymptotically bubbly example: same economy with `P_t = 0.5 G^t`.
    pub fn fig2() -> Self {
        Self::preset(PathKind::Bubbly, 0.5)
    }

    fn preset(kind: PathKind, p: f64) -> Self {
        Self {
            ces: CesParams::new(1.0, 0.5, 1.5).expect("preset technology"),
            pref: CrraParams::new(1.0, 1.0).expect("preset preferences"),
            demo: Demography::new(1.2).expect("preset demography"),
            e_o: 1.0,
            price: PricePathSpec::new(kind, p).expect("preset price path"),
            horizon: DEFAULT_HORIZON,
            t0_override: None,
        }
    }

    pub fn with_price_level(mut self, p: f64) -> Result<Self> {
        self.price = PricePathSpec::new(self.price.kind(), p)?;
        Ok(self)
    }

    pub fn with_kind(mut self, kind: PathKind) -> Self {
        self.price = PricePathSpec::new(kind, self.price.p()).expect("price level already validated");
        self
    }

    pub fn with_horizon(mut self, horizon: usize) -> Result<Self> {
        if horizon < 1 {
            return Err(Error::Domain {
                name: "horizon",
                value: horizon as f64,
                expected: "horizon >= 1",
            });
        }
        self.horizon = horizon;
        Ok(self)
    }

    pub fn kind(&self) -> PathKind {
        self.price.kind()
    }

    pub fn p(&self) -> f64 {
        self.price.p()
    }

    /// Land-economy constructions need `G > 1` and `σ > 1`.
    pub fn require_land_regime(&self) -> Result<()> {
        self.demo.require_growing()?;
        asymptotics(&self.ces, &self.demo).map(|_| ())
    }
}

/// Right-hand side of the old-endowment bound of the fundamental
/// construction, `w [β G^{1/σ}(1 + r/p)]^{1/γ}`.
pub fn old_endowment_bound(cfg: &ScenarioConfig) -> Result<f64> {
    let asy = asymptotics(&cfg.ces, &cfg.demo)?;
    let (beta, gamma) = (cfg.pref.beta(), cfg.pref.gamma());
    let natural = asy.rent_growth * (1.0 + asy.rent_coefficient / cfg.p());
    Ok(asy.wage * pow(beta * natural, 1.0 / gamma))
}

/// Right-hand side of the price-level bound of the bubbly construction,
/// `(w - (βG)^{-1/γ} e_o) / (1 + (β G^{1-γ})^{-1/γ})`.
pub fn price_level_bound(cfg: &ScenarioConfig) -> Result<f64> {
    let asy = asymptotics(&cfg.ces, &cfg.demo)?;
    let (beta, gamma, g) = (cfg.pref.beta(), cfg.pref.gamma(), cfg.demo.growth());
    let num = asy.wage - pow(beta * g, -1.0 / gamma) * cfg.e_o;
    let den = 1.0 + pow(beta * pow(g, 1.0 - gamma), -1.0 / gamma);
    Ok(num / den)
}

/// Checks the positivity bound that matches the config's path kind.
pub fn check_construction_bound(cfg: &ScenarioConfig) -> Result<()> {
    cfg.require_land_regime()?;
    match cfg.kind() {
        PathKind::Fundamental => {
            let required = old_endowment_bound(cfg)?;
            if cfg.e_o > required {
                Ok(())
            } else {
                Err(Error::BoundViolated {
                    bound: Bound::OldEndowment,
                    required,
                    actual: cfg.e_o,
                })
            }
        }
        PathKind::Bubbly => {
            let required = price_level_bound(cfg)?;
            if cfg.p() > required {
                Ok(())
            } else {
                Err(Error::BoundViolated {
                    bound: Bound::PriceLevel,
                    required,
                    actual: cfg.p(),
                })
            }
        }
    }
}
