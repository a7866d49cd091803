//! Pareto-improvement test by intergenerational transfers.
//!
//! From period `T` on every young pays `ε` and every old receives `G ε`,
//! which balances because there are `G` young per old. When the interest
//! rate stays below `G`, each generation gains from paying in young and
//! collecting old.

use alloc::vec::Vec;

use libm::fabs;

use crate::economy::CrraParams;
use crate::equilibrium::EquilibriumPath;
use crate::{Error, Result};

/// Utility changes within this band of zero count as zero.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TransferScheme {
    pub epsilon: f64,
    pub t_start: usize,
}

impl TransferScheme {
    pub fn new(epsilon: f64, t_start: usize) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::Domain {
                name: "epsilon",
                value: epsilon,
                expected: "epsilon >= 0",
            });
        }
        Ok(Self { epsilon, t_start })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WelfareVerdict {
    Improvement,
    NoImprovementFound,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ImprovementReport {
    pub scheme: TransferScheme,
    /// Generation of `deltas[0]`.
    pub first_generation: usize,
    /// Lifetime utility change of generations `t0..=horizon`. The last
    /// generation's old age lies beyond the horizon; it counts toward "no
    /// one loses" but not toward "someone gains".
    pub deltas: Vec<f64>,
    /// Old-age utility change of the old alive at `t_start`.
    pub old_at_start: f64,
    /// Smallest change among generations touched by the scheme.
    pub min_affected_delta: f64,
    /// Largest relative goods-market imbalance after the transfer.
    pub resource_residual: f64,
    pub verdict: WelfareVerdict,
}

impl ImprovementReport {
    pub fn delta_of(&self, generation: usize) -> Option<f64> {
        generation
            .checked_sub(self.first_generation)
            .and_then(|i| self.deltas.get(i).copied())
    }
}

/// Marginal lifetime-utility effect on generation `t` of paying one unit
/// young and receiving `G` units old: `-U_1 + G U_2`.
pub fn first_order_gain(path: &EquilibriumPath, t: usize, pref: &CrraParams) -> Result<f64> {
    let i = path.index_of(t)?;
    let y = path.y[i];
    let z = path.old_consumption_of(i);
    Ok(-pref.marginal_young(y) + path.demo.growth() * pref.marginal_old(z))
}

pub fn apply_transfer(
    path: &EquilibriumPath,
    scheme: TransferScheme,
    pref: &CrraParams,
) -> Result<ImprovementReport> {
    let TransferScheme { epsilon, t_start } = scheme;
    let start = path.index_of(t_start)?;
    if let Some(i) = (start..path.len()).find(|&i| epsilon >= path.y[i]) {
        return Err(Error::InfeasibleTransfer {
            period: path.t0 + i,
            epsilon,
            consumption: path.y[i],
        });
    }
    let g = path.demo.growth();
    let beta = pref.beta();
    let old_gain = g * epsilon;
    let taxed = |i: usize| i >= start;

    let deltas: Vec<f64> = (0..path.len())
        .map(|i| {
            // generation at index i is taxed at i and paid at i + 1
            let young = if taxed(i) {
                pref.period_utility_change(path.y[i], -epsilon)
            } else {
                0.0
            };
            let old = if taxed(i + 1) {
                beta * pref.period_utility_change(path.old_consumption_of(i), old_gain)
            } else {
                0.0
            };
            young + old
        })
        .collect();
    let old_at_start = beta * pref.period_utility_change(path.z[start], old_gain);

    let resource_residual = (0..path.len())
        .map(|i| {
            let tau = if taxed(i) { epsilon } else { 0.0 };
            let consumption = (path.y[i] - tau) + (path.z[i] + g * tau) / g;
            let resources = path.young_endowment_total(i) + path.e_o / g + path.r[i] * path.x[i];
            fabs(consumption - resources) / resources
        })
        .fold(0.0, f64::max);

    let affected_from = start.saturating_sub(1);
    let min_affected_delta = deltas[affected_from..]
        .iter()
        .copied()
        .fold(old_at_start, f64::min);
    let no_loss = min_affected_delta >= -ZERO_TOL;
    let last = deltas.len() - 1;
    let some_gain = old_at_start > ZERO_TOL || deltas[..last].iter().any(|&d| d > ZERO_TOL);
    let verdict = if no_loss && some_gain {
        WelfareVerdict::Improvement
    } else {
        WelfareVerdict::NoImprovementFound
    };

    Ok(ImprovementReport {
        scheme,
        first_generation: path.t0,
        deltas,
        old_at_start,
        min_affected_delta,
        resource_residual,
        verdict,
    })
}

/// Candidate transfer sizes and start periods.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchGrid {
    pub epsilons: Vec<f64>,
    /// Start periods are `t0, t0 + stride, ...` up to the horizon.
    pub start_stride: usize,
}

impl Default for SearchGrid {
    fn default() -> Self {
        Self {
            epsilons: alloc::vec![1e-4, 1e-3, 1e-2, 5e-2],
            start_stride: 4,
        }
    }
}

/// Summary of one evaluated grid point; `min_affected_delta` is `None`
/// when the transfer is infeasible.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GridPoint {
    pub scheme: TransferScheme,
    pub min_affected_delta: Option<f64>,
    pub improvement: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchOutcome {
    pub verdict: WelfareVerdict,
    /// Improving scheme with the largest smallest gain.
    pub best: Option<ImprovementReport>,
    /// Improving scheme with the earliest start (smallest `ε` on ties).
    pub earliest: Option<ImprovementReport>,
    /// Every grid point, in grid order (start-major, then `ε`).
    pub points: Vec<GridPoint>,
}

pub fn improvement_search(path: &EquilibriumPath, pref: &CrraParams, grid: &SearchGrid) -> SearchOutcome {
    let stride = grid.start_stride.max(1);
    let mut best: Option<ImprovementReport> = None;
    let mut earliest: Option<ImprovementReport> = None;
    let mut points = Vec::new();
    for t_start in (path.t0..=path.horizon()).step_by(stride) {
        for &epsilon in &grid.epsilons {
            let report = TransferScheme::new(epsilon, t_start).and_then(|s| apply_transfer(path, s, pref));
            let Ok(report) = report else {
                points.push(GridPoint {
                    scheme: TransferScheme { epsilon, t_start },
                    min_affected_delta: None,
                    improvement: false,
                });
                continue;
            };
            let improvement = report.verdict == WelfareVerdict::Improvement;
            points.push(GridPoint {
                scheme: report.scheme,
                min_affected_delta: Some(report.min_affected_delta),
                improvement,
            });
            if !improvement {
                continue;
            }
            if best
                .as_ref()
                .is_none_or(|b| report.min_affected_delta > b.min_affected_delta)
            {
                best = Some(report.clone());
            }
            if earliest.is_none() {
                earliest = Some(report);
            }
        }
    }
    SearchOutcome {
        verdict: if best.is_some() {
            WelfareVerdict::Improvement
        } else {
            WelfareVerdict::NoImprovementFound
        },
        best,
        earliest,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{build, ScenarioConfig};

    fn path(cfg: &ScenarioConfig) -> EquilibriumPath {
        build(cfg).unwrap()
    }

    #[test]
    fn first_order_gain_limits() {
        let cfg = ScenarioConfig::fig1();
        let p = path(&cfg);
        let gain = first_order_gain(&p, 399, &cfg.pref).unwrap();
        assert!((gain - (1.2 - 1.176292)).abs() < 1e-5, "gain = {gain}");

        let cfg = ScenarioConfig::fig2();
        let p = path(&cfg);
        for t in p.periods().take(p.len() - 1) {
            assert!(first_order_gain(&p, t, &cfg.pref).unwrap() < 0.0);
        }
    }

    #[test]
    fn first_order_gain_vanishes_when_rate_equals_growth() {
        let cfg = ScenarioConfig::fig1();
        let mut p = path(&cfg);
        // log utility: -1/y + G/z = 0 at z = G y
        for i in 0..p.len() {
            p.y[i] = 1.0;
            p.z[i] = 1.2;
        }
        p.next.z = 1.2;
        assert!(first_order_gain(&p, 100, &cfg.pref).unwrap().abs() < 1e-15);
    }

    #[test]
    fn null_transfer_changes_nothing() {
        let cfg = ScenarioConfig::fig1();
        let p = path(&cfg);
        let r = apply_transfer(&p, TransferScheme::new(0.0, 24).unwrap(), &cfg.pref).unwrap();
        assert!(r.deltas.iter().all(|&d| d == 0.0));
        assert_eq!(r.old_at_start, 0.0);
        assert_eq!(r.verdict, WelfareVerdict::NoImprovementFound);
    }

    #[test]
    fn late_small_transfer_improves_fig1() {
        let cfg = ScenarioConfig::fig1();
        let p = path(&cfg);
        let r = apply_transfer(&p, TransferScheme::new(1e-4, 24).unwrap(), &cfg.pref).unwrap();
        assert_eq!(r.verdict, WelfareVerdict::Improvement);
        assert!(r.deltas[..23].iter().all(|&d| d == 0.0));
        assert!(r.old_at_start > 0.0);
        assert_eq!(r.delta_of(23), Some(r.old_at_start));
        assert!(r.resource_residual < 1e-14);
    }

    #[test]
    fn fig2_never_improves() {
        let cfg = ScenarioConfig::fig2();
        let p = path(&cfg);
        let r = apply_transfer(&p, TransferScheme::new(0.01, 24).unwrap(), &cfg.pref).unwrap();
        assert_eq!(r.verdict, WelfareVerdict::NoImprovementFound);
        assert!(r.deltas.iter().any(|&d| d < 0.0));
        let s = improvement_search(&p, &cfg.pref, &SearchGrid::default());
        assert_eq!(s.verdict, WelfareVerdict::NoImprovementFound);
        assert!(s.points.iter().all(|g| !g.improvement));
    }

    #[test]
    fn small_transfers_follow_first_order_gain() {
        let cfg = ScenarioConfig::fig1();
        let p = path(&cfg);
        let eps = 1e-6;
        let r = apply_transfer(&p, TransferScheme::new(eps, 40).unwrap(), &cfg.pref).unwrap();
        for t in 40..399 {
            let d = r.delta_of(t).unwrap();
            let lin = eps * first_order_gain(&p, t, &cfg.pref).unwrap();
            assert!((d - lin).abs() < 10.0 * eps * eps, "t = {t}: {d} vs {lin}");
        }
    }

    #[test]
    fn search_finds_early_improvement_on_fig1() {
        let cfg = ScenarioConfig::fig1();
        let p = path(&cfg);
        let s = improvement_search(&p, &cfg.pref, &SearchGrid::default());
        assert_eq!(s.verdict, WelfareVerdict::Improvement);
        let early = s.earliest.unwrap();
        assert!(early.scheme.t_start <= 30);
        assert!(s.best.unwrap().min_affected_delta >= early.min_affected_delta);
    }

    #[test]
    fn search_below_threshold_price_finds_nothing() {
        let cfg = ScenarioConfig::fig1().with_price_level(1.0).unwrap();
        let p = path(&cfg);
        let s = improvement_search(&p, &cfg.pref, &SearchGrid::default());
        assert_eq!(s.verdict, WelfareVerdict::NoImprovementFound);
    }

    #[test]
    fn infeasible_tax_names_the_period() {
        let cfg = ScenarioConfig::fig1();
        let p = path(&cfg);
        let err = apply_transfer(&p, TransferScheme::new(1e3, 10).unwrap(), &cfg.pref).unwrap_err();
        assert!(matches!(err, Error::InfeasibleTransfer { period: 10, .. }));
        assert!(TransferScheme::new(-0.1, 10).is_err());
        assert!(apply_transfer(&p, TransferScheme::new(0.01, 401).unwrap(), &cfg.pref).is_err());
    }
}
