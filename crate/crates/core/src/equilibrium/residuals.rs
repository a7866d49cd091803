use alloc::vec::Vec;

use libm::fabs;

use super::{EquilibriumPath, ScenarioConfig};
use crate::economy::{mrs, CrraParams};

/// Largest equilibrium-condition violations along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Residuals {
    /// `max |(-U_1 P_t + U_2 (P_{t+1} + r_{t+1})) / (U_1 P_t)|`
    pub max_foc: f64,
    pub worst_foc_period: usize,
    /// Goods-market imbalance relative to detrended aggregate resources.
    pub max_clearing: f64,
    pub worst_clearing_period: usize,
}

/// Relative first-order-condition residual of each generation.
///
/// Dividing `-U_1 P_t + U_2 (P_{t+1} + r_{t+1})` by `U_1 P_t` leaves
/// `(P_{t+1} + r_{t+1}) / (P_t · MRS) - 1`.
pub fn foc_residuals(path: &EquilibriumPath, pref: &CrraParams) -> Vec<f64> {
    (0..path.len())
        .map(|i| {
            let z_next = path.old_consumption_of(i);
            let gross = (path.price_next(i) + path.rent_next(i)) / path.price[i];
            match mrs(path.y[i], z_next, pref) {
                Ok(m) => gross / m - 1.0,
                Err(_) => f64::INFINITY,
            }
        })
        .collect()
}

/// Relative goods-market residual of each period, with aggregates divided
/// by `G^t`: `y_t + z_t / G` against `e_y + w + e_o / G + r_t / G^t`.
pub fn clearing_residuals(path: &EquilibriumPath) -> Vec<f64> {
    let g = path.demo.growth();
    (0..path.len())
        .map(|i| {
            let consumption = path.y[i] + path.z[i] / g;
            let resources = path.young_endowment_total(i) + path.e_o / g + path.r[i] * path.x[i];
            (consumption - resources) / resources
        })
        .collect()
}

fn worst(values: &[f64], t0: usize) -> (f64, usize) {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| (fabs(*v), t0 + i))
        .fold((0.0, t0), |best, cur| {
            if cur.0 > best.0 || cur.0.is_nan() {
                cur
            } else {
                best
            }
        })
}

/// Maximum first-order and market-clearing residuals over the whole path.
pub fn verify_residuals(path: &EquilibriumPath, cfg: &ScenarioConfig) -> Residuals {
    let (max_foc, worst_foc_period) = worst(&foc_residuals(path, &cfg.pref), path.t0);
    let (max_clearing, worst_clearing_period) = worst(&clearing_residuals(path), path.t0);
    Residuals {
        max_foc,
        worst_foc_period,
        max_clearing,
        worst_clearing_period,
    }
}
