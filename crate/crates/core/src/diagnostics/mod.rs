//! Bubble, efficiency and threshold diagnostics for constructed paths.
//!
//! Asymptotic statements are checked on the trailing half of the path via
//! [`classify_series`]; an `Inconclusive` verdict is passed through as is.

mod series;

use alloc::vec::Vec;

use libm::{exp, log, pow};

pub use series::{
    classify_log_series, classify_series, SeriesClassification, Verdict, LOWER_BOUND_EPS, MIN_TERMS,
    RATIO_MARGIN, SLOPE_DRIFT,
};

use crate::economy::{asymptotics, indifference_elasticity, mrs, CrraParams};
use crate::equilibrium::{
    detrend, old_endowment_bound, price_level_bound, young_endowment_limit, EquilibriumPath, ScenarioConfig,
};
use crate::numeric::ols_slope;
use crate::{Error, Result};

/// Young consumption below which the elasticity bound is flagged as
/// degenerate.
pub const CONSUMPTION_FLOOR: f64 = 1e-8;

/// Relative half-width and resolution of the neighbourhood searched along
/// each indifference curve by [`mu_bound`].
pub const MU_SPREAD: f64 = 0.1;
pub const MU_POINTS: usize = 9;

fn trailing_window(len: usize) -> (usize, usize) {
    (len / 2, len)
}

/// Dividend-price series `Σ r_t / P_t`: convergent means a bubble.
pub fn classify_bubble(path: &EquilibriumPath) -> Result<SeriesClassification> {
    let mut logs = Vec::with_capacity(path.len());
    for (&r, &p) in path.r.iter().zip(&path.price) {
        if p.is_nan() || p <= 0.0 {
            return Err(Error::Domain {
                name: "P_t",
                value: p,
                expected: "P_t > 0",
            });
        }
        logs.push(log(r) - log(p));
    }
    classify_log_series(&logs)
}

/// Cass series `Σ 1 / (q_t G^t)`: divergent means the criterion holds.
pub fn cass_check(path: &EquilibriumPath) -> Result<SeriesClassification> {
    let logs: Vec<f64> = path
        .periods()
        .zip(&path.log_q)
        .map(|(t, &lq)| -lq - path.demo.ln_population(t))
        .collect();
    classify_log_series(&logs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct AsymptoticBubbliness {
    pub flag: bool,
    /// Minimum of `P_t / G^t` over the trailing window.
    pub tail_infimum: f64,
}

/// A bubble whose detrended price stays above [`LOWER_BOUND_EPS`].
pub fn asymptotically_bubbly_check(path: &EquilibriumPath) -> Result<AsymptoticBubbliness> {
    let bubble = classify_bubble(path)?;
    let (start, end) = trailing_window(path.len());
    let tail_infimum = (start..end)
        .map(|i| exp(log(path.price[i]) - path.demo.ln_population(path.t0 + i)))
        .fold(f64::INFINITY, f64::min);
    Ok(AsymptoticBubbliness {
        flag: bubble.verdict == Verdict::Convergent && tail_infimum > LOWER_BOUND_EPS,
        tail_infimum,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NecessityCheck {
    /// Rate supported by the limiting endowments without the asset.
    pub natural_rate: f64,
    /// `G^{1/σ}`
    pub rent_growth: f64,
    pub growth: f64,
    /// `natural_rate < rent_growth < growth`
    pub holds: bool,
}

/// Rate `U_1/U_2` at the endowment point; zero when the old have nothing.
pub fn natural_rate(young: f64, old: f64, pref: &CrraParams) -> Result<f64> {
    if old == 0.0 && young > 0.0 {
        return Ok(0.0);
    }
    mrs(young, old, pref)
}

/// Checks whether the limiting endowments force every equilibrium to be
/// asymptotically bubbly.
pub fn necessity_check(cfg: &ScenarioConfig) -> Result<NecessityCheck> {
    let asy = asymptotics(&cfg.ces, &cfg.demo)?;
    let young = young_endowment_limit(cfg)? + asy.wage;
    let natural_rate = natural_rate(young, cfg.e_o, &cfg.pref)?;
    let growth = cfg.demo.growth();
    let rent_growth = asy.rent_growth;
    Ok(NecessityCheck {
        natural_rate,
        rent_growth,
        growth,
        holds: natural_rate < rent_growth && rent_growth < growth,
    })
}

/// Closed-form thresholds of the constructions and whether the config
/// satisfies them.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ConstructionBounds {
    /// Fundamental path needs `e_o` above this.
    pub eo_bound: f64,
    /// Bubbly path needs `p` above this.
    pub p_bound: f64,
    /// Bubbly path with `p` above this has a natural rate below `G^{1/σ}`.
    pub necessity2_bound: f64,
    /// Fundamental path is efficient iff `p <= p_star`.
    pub p_star: f64,
    pub eo_satisfied: bool,
    pub p_satisfied: bool,
    pub necessity2_satisfied: bool,
    pub efficient_side: bool,
}

pub fn construction_bounds(cfg: &ScenarioConfig) -> Result<ConstructionBounds> {
    let asy = asymptotics(&cfg.ces, &cfg.demo)?;
    let (beta, gamma, g) = (cfg.pref.beta(), cfg.pref.gamma(), cfg.demo.growth());
    let eo_bound = old_endowment_bound(cfg)?;
    let p_bound = price_level_bound(cfg)?;
    let inv = |x: f64| pow(x, -1.0 / gamma);
    let necessity2_bound =
        (inv(beta * asy.rent_growth) - inv(beta * g)) / (1.0 + inv(beta * pow(g, 1.0 - gamma))) * cfg.e_o;
    let p_star = asy.rent_coefficient / (g / asy.rent_growth - 1.0);
    let p = cfg.p();
    Ok(ConstructionBounds {
        eo_bound,
        p_bound,
        necessity2_bound,
        p_star,
        eo_satisfied: cfg.e_o > eo_bound,
        p_satisfied: p > p_bound,
        necessity2_satisfied: p > necessity2_bound,
        efficient_side: p <= p_star,
    })
}

/// Present value of aggregate endowment,
/// `Σ q_t (G^t (e_y + w) + G^{t-1} e_o + r_t)`.
pub fn pv_endowment(path: &EquilibriumPath) -> Result<SeriesClassification> {
    let d = detrend(path);
    let logs: Vec<f64> = path
        .periods()
        .enumerate()
        .map(|(i, t)| path.log_q[i] + path.demo.ln_population(t) + log(d.resources[i]))
        .collect();
    classify_log_series(&logs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MuBound {
    /// Half the smallest indifference elasticity found; the supremum of
    /// admissible `μ`.
    pub mu: f64,
    pub min_elasticity: f64,
    /// Consumption near zero or an indifference curve leaving the interior.
    pub degenerate: bool,
    /// Generations (as path indices) examined.
    pub window: (usize, usize),
}

/// Old consumption on the indifference curve through `(y, z)` at young
/// consumption `y1`, or `None` if the curve leaves the positive orthant.
fn indifference_partner(pref: &CrraParams, y: f64, z: f64, y1: f64) -> Option<f64> {
    let beta = pref.beta();
    if pref.is_log() {
        return Some(exp(log(z) + (log(y) - log(y1)) / beta));
    }
    let e = 1.0 - pref.gamma();
    let v = pow(z, e) + (pow(y, e) - pow(y1, e)) / beta;
    (v > 0.0).then(|| pow(v, 1.0 / e))
}

/// Lower bound on the indifference elasticity over the trailing window,
/// each generation's curve sampled on `y (1 ± MU_SPREAD)`.
pub fn mu_bound(path: &EquilibriumPath, pref: &CrraParams) -> Result<MuBound> {
    let window = trailing_window(path.len());
    let mut min_elasticity = f64::INFINITY;
    let mut degenerate = false;
    for i in window.0..window.1 {
        let y = path.y[i];
        let z = path.old_consumption_of(i);
        if !(y > CONSUMPTION_FLOOR && z > CONSUMPTION_FLOOR) {
            degenerate = true;
            continue;
        }
        for k in 0..MU_POINTS {
            let s = -MU_SPREAD + 2.0 * MU_SPREAD * k as f64 / (MU_POINTS - 1) as f64;
            let y1 = y * (1.0 + s);
            match indifference_partner(pref, y, z, y1) {
                Some(z1) if z1 > CONSUMPTION_FLOOR && z1.is_finite() => {
                    min_elasticity = min_elasticity.min(indifference_elasticity(y1, z1, pref)?);
                }
                _ => degenerate = true,
            }
        }
    }
    if !min_elasticity.is_finite() {
        degenerate = true;
        min_elasticity = 0.0;
    }
    Ok(MuBound {
        mu: min_elasticity / 2.0,
        min_elasticity,
        degenerate,
        window,
    })
}

/// Fitted growth factor of rent over the trailing window, for comparison
/// with the analytic `G^{1/σ}`.
pub fn rent_growth_estimate(path: &EquilibriumPath) -> Option<f64> {
    let (start, end) = trailing_window(path.len());
    ols_slope(
        (start..end)
            .filter(|&i| path.r[i] > 0.0)
            .map(|i| (i as f64, log(path.r[i]))),
    )
    .map(exp)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DiagnosticsReport {
    pub bubble: SeriesClassification,
    pub cass: SeriesClassification,
    pub asymptotically_bubbly: AsymptoticBubbliness,
    pub natural_rate: f64,
    pub rent_growth: f64,
    pub rent_growth_estimate: Option<f64>,
    pub growth: f64,
    pub necessity_holds: bool,
    pub thresholds: ConstructionBounds,
    pub pv_endowment: SeriesClassification,
    /// Finite present value of endowments rules out a bubble.
    pub pv_rules_out_bubble: bool,
    pub mu: MuBound,
}

impl DiagnosticsReport {
    /// `Some(true)` for a bubble, `Some(false)` for none, `None` when the
    /// series test is inconclusive.
    pub fn has_bubble(&self) -> Option<bool> {
        match self.bubble.verdict {
            Verdict::Convergent => Some(true),
            Verdict::Divergent => Some(false),
            Verdict::Inconclusive => None,
        }
    }

    /// `Some(true)` when the Cass series diverges.
    pub fn cass_holds(&self) -> Option<bool> {
        match self.cass.verdict {
            Verdict::Divergent => Some(true),
            Verdict::Convergent => Some(false),
            Verdict::Inconclusive => None,
        }
    }

    /// Both halves of the efficiency argument: Cass holds and the
    /// elasticity bound is positive on a non-degenerate window.
    pub fn efficiency_certified(&self) -> bool {
        self.cass_holds() == Some(true) && self.mu.mu > 0.0 && !self.mu.degenerate
    }
}

pub fn diagnose(path: &EquilibriumPath, cfg: &ScenarioConfig) -> Result<DiagnosticsReport> {
    let necessity = necessity_check(cfg)?;
    let pv = pv_endowment(path)?;
    Ok(DiagnosticsReport {
        bubble: classify_bubble(path)?,
        cass: cass_check(path)?,
        asymptotically_bubbly: asymptotically_bubbly_check(path)?,
        natural_rate: necessity.natural_rate,
        rent_growth: necessity.rent_growth,
        rent_growth_estimate: rent_growth_estimate(path),
        growth: necessity.growth,
        necessity_holds: necessity.holds,
        thresholds: construction_bounds(cfg)?,
        pv_rules_out_bubble: pv.verdict == Verdict::Convergent,
        pv_endowment: pv,
        mu: mu_bound(path, &cfg.pref)?,
    })
}
