//! Reverse engineering: fix the land price path, then choose young
//! endowments so that the first-order condition holds every period.

use alloc::vec::Vec;

use libm::{exp, log};

use super::config::check_construction_bound;
use super::path::{date0_prices, EquilibriumPath, NextPeriod};
use super::{PathKind, ScenarioConfig};
use crate::economy::ln_factor_prices_at;
use crate::{Error, Result};

/// Per-period quantities of the construction at absolute period `t`.
#[derive(Debug, Clone, Copy)]
struct PeriodState {
    w: f64,
    r: f64,
    price: f64,
    rate: f64,
    /// Old consumption of generation `t`, `z_{t+1}`.
    z_next: f64,
    y: f64,
    e_y: f64,
}

fn period_state(cfg: &ScenarioConfig, t: usize) -> PeriodState {
    let (ces, demo) = (&cfg.ces, &cfg.demo);
    let now = ln_factor_prices_at(t, ces, demo);
    let next = ln_factor_prices_at(t + 1, ces, demo);
    let ln_p = cfg.price.ln_price(t, ces, demo);
    let ln_p_next = cfg.price.ln_price(t + 1, ces, demo);
    let ln_n = demo.ln_population(t);

    // R_t = (P_{t+1} + r_{t+1}) / P_t
    let rate = exp(ln_p_next - ln_p) + exp(next.ln_r - ln_p);
    // z_{t+1} = e_o + (P_{t+1} + r_{t+1}) / N_t
    let z_next = cfg.e_o + exp(ln_p_next - ln_n) + exp(next.ln_r - ln_n);
    let y = cfg.pref.young_for_rate(z_next, rate);
    let w = exp(now.ln_w);
    let savings = exp(ln_p - ln_n);
    PeriodState {
        w,
        r: exp(now.ln_r),
        price: exp(ln_p),
        rate,
        z_next,
        y,
        e_y: y - w + savings,
    }
}

/// Land-economy young endowment `e_t^y` that supports the conjectured price
/// path at period `t`.
pub fn young_endowment_at(cfg: &ScenarioConfig, t: usize) -> f64 {
    period_state(cfg, t).e_y
}

/// First period from which the reverse-engineered young endowment stays
/// positive through the horizon.
///
/// The construction bound guarantees a positive limit, so the scan only
/// has to find where the finite path enters the positive region.
pub fn find_t0(cfg: &ScenarioConfig) -> Result<usize> {
    check_construction_bound(cfg)?;
    let last_bad = (0..=cfg.horizon)
        .rev()
        .find(|&t| young_endowment_at(cfg, t) <= 0.0);
    let t0 = last_bad.map_or(0, |t| t + 1);
    if t0 > cfg.horizon {
        return Err(Error::NoValidStart {
            first_valid: t0,
            horizon: cfg.horizon,
            detail: "extend the horizon",
        });
    }
    if let Some(start) = cfg.t0_override {
        if start < t0 || start > cfg.horizon {
            return Err(Error::NoValidStart {
                first_valid: t0,
                horizon: cfg.horizon,
                detail: "start override precedes the first valid period",
            });
        }
        return Ok(start);
    }
    Ok(t0)
}

/// Builds the equilibrium of the config's path kind on `[t0, horizon]`.
pub fn build(cfg: &ScenarioConfig) -> Result<EquilibriumPath> {
    let t0 = find_t0(cfg)?;
    let states: Vec<PeriodState> = (t0..=cfg.horizon).map(|t| period_state(cfg, t)).collect();
    let n = states.len();
    let demo = cfg.demo;
    let g = demo.growth();

    let first = &states[0];
    // the initial old at t0 hold the whole land stock bought at t0 - 1
    let z_initial = cfg.e_o + (first.price + first.r) * exp(log(g) - demo.ln_population(t0));

    let mut z = Vec::with_capacity(n);
    z.push(z_initial);
    z.extend(states[..n - 1].iter().map(|s| s.z_next));

    let rate: Vec<f64> = states.iter().map(|s| s.rate).collect();
    let mut log_q = date0_prices(&rate[..n - 1]);
    log_q.truncate(n);

    let after = ln_factor_prices_at(cfg.horizon + 1, &cfg.ces, &demo);
    let next = NextPeriod {
        w: exp(after.ln_w),
        r: exp(after.ln_r),
        price: exp(cfg.price.ln_price(cfg.horizon + 1, &cfg.ces, &demo)),
        z: states[n - 1].z_next,
    };

    Ok(EquilibriumPath {
        kind: cfg.kind(),
        demo,
        e_o: cfg.e_o,
        t0,
        w: states.iter().map(|s| s.w).collect(),
        r: states.iter().map(|s| s.r).collect(),
        price: states.iter().map(|s| s.price).collect(),
        e_y: states.iter().map(|s| s.e_y).collect(),
        y: states.iter().map(|s| s.y).collect(),
        z,
        rate,
        log_q,
        x: (t0..=cfg.horizon).map(|t| exp(-demo.ln_population(t))).collect(),
        next,
    })
}

/// Fundamental equilibrium `P_t = p G^{t/σ}` at the config's price level.
pub fn build_fundamental(cfg: &ScenarioConfig) -> Result<EquilibriumPath> {
    build(&cfg.with_kind(PathKind::Fundamental))
}

/// Asymptotically bubbly equilibrium `P_t = p G^t` at the config's price level.
pub fn build_bubbly(cfg: &ScenarioConfig) -> Result<EquilibriumPath> {
    build(&cfg.with_kind(PathKind::Bubbly))
}

/// Limit of the young endowment, `e^y` for the config's path kind.
pub fn young_endowment_limit(cfg: &ScenarioConfig) -> Result<f64> {
    let asy = crate::economy::asymptotics(&cfg.ces, &cfg.demo)?;
    let (beta, gamma, g, p) = (cfg.pref.beta(), cfg.pref.gamma(), cfg.demo.growth(), cfg.p());
    Ok(match cfg.kind() {
        PathKind::Fundamental => {
            let natural = asy.rent_growth * (1.0 + asy.rent_coefficient / p);
            cfg.e_o * exp(-log(beta * natural) / gamma) - asy.wage
        }
        PathKind::Bubbly => (cfg.e_o + g * p) * exp(-log(beta * g) / gamma) - asy.wage + p,
    })
}
