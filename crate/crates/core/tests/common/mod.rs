#![allow(dead_code)]

use olg_land_core::equilibrium::{old_endowment_bound, price_level_bound};
use olg_land_core::{CesParams, CrraParams, Demography, PathKind, PricePathSpec, ScenarioConfig};

/// Draws in `[0, 1)` mapped onto a config inside the construction bounds.
///
/// `u_bound` sets how far `e_o` (fundamental) or `p` (bubbly) sits above
/// its bound; `u_free` sets the other level.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub sigma: f64,
    pub gamma: f64,
    pub beta: f64,
    pub growth: f64,
    pub alpha: f64,
    pub bubbly: bool,
    pub u_bound: f64,
    pub u_free: f64,
}

pub fn config(d: Draw) -> ScenarioConfig {
    let ces = CesParams::new(1.0, d.alpha, d.sigma).unwrap();
    let pref = CrraParams::new(d.beta, d.gamma).unwrap();
    let demo = Demography::new(d.growth).unwrap();
    let kind = if d.bubbly {
        PathKind::Bubbly
    } else {
        PathKind::Fundamental
    };
    let free = 0.2 + 2.0 * d.u_free;
    let margin = 1.2 + 2.0 * d.u_bound;
    if d.bubbly {
        let cfg =
            ScenarioConfig::new(ces, pref, demo, free, PricePathSpec::new(kind, 1.0).unwrap(), 400).unwrap();
        let p = price_level_bound(&cfg).unwrap().max(0.01) * margin;
        cfg.with_price_level(p).unwrap()
    } else {
        let mut cfg =
            ScenarioConfig::new(ces, pref, demo, 1.0, PricePathSpec::new(kind, free).unwrap(), 400).unwrap();
        cfg.e_o = old_endowment_bound(&cfg).unwrap() * margin;
        cfg
    }
}

pub fn rel_close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs())
}

fn utility(c: f64, gamma: f64) -> f64 {
    if gamma == 1.0 {
        c.ln()
    } else {
        c.powf(1.0 - gamma) / (1.0 - gamma)
    }
}

/// Old consumption keeping `u(y1) + β u(z1)` at its value at `(y, z)`,
/// by bisection on `ln z1`.
fn indifference_curve(y: f64, z: f64, y1: f64, beta: f64, gamma: f64) -> f64 {
    let target = utility(y, gamma) + beta * utility(z, gamma);
    let (mut lo, mut hi) = (z.ln() - 40.0, z.ln() + 40.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if utility(y1, gamma) + beta * utility(mid.exp(), gamma) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// `-y φ''(y) / φ'(y)` for the indifference curve `φ` through `(y, z)`,
/// by five-point finite differences, halving the step until two
/// successive estimates agree.
pub fn fd_indifference_elasticity(y: f64, z: f64, beta: f64, gamma: f64) -> f64 {
    let estimate = |h: f64| {
        let phi = |k: f64| indifference_curve(y, z, y + k * h, beta, gamma);
        let (m2, m1, c, p1, p2) = (phi(-2.0), phi(-1.0), phi(0.0), phi(1.0), phi(2.0));
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
        -y * d2 / d1
    };
    let mut h = 5e-2 * y;
    let mut prev = estimate(h);
    for _ in 0..16 {
        h /= 2.0;
        let next = estimate(h);
        if (next - prev).abs() < 1e-7 * next.abs() {
            return next;
        }
        prev = next;
    }
    prev
}
