use alloc::vec::Vec;

use libm::{exp, log};

use super::PathKind;
use crate::economy::Demography;
use crate::numeric::NeumaierSum;
use crate::{Error, Result};

/// Values of period `horizon + 1` needed by the last generation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NextPeriod {
    pub w: f64,
    pub r: f64,
    pub price: f64,
    /// Old consumption of generation `horizon`.
    pub z: f64,
}

/// A constructed equilibrium on periods `[t0, horizon]`.
///
/// Every vector is indexed by `t - t0`. `z[i]` is old consumption at period
/// `t0 + i` (the initial old at `i = 0`); generation `t` consumes
/// `(y_t, z_{t+1})`, with `z_{horizon+1}` held in [`NextPeriod`].
///
/// `e_y` is the land-economy young endowment, excluding the wage; the
/// endowment-economy value is `e_y + w`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EquilibriumPath {
    pub kind: PathKind,
    pub demo: Demography,
    pub e_o: f64,
    pub t0: usize,
    pub w: Vec<f64>,
    /// Land rent, the dividend of the endowment-economy view.
    pub r: Vec<f64>,
    pub price: Vec<f64>,
    pub e_y: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    /// Gross risk-free rate between `t` and `t + 1`.
    pub rate: Vec<f64>,
    /// Log date-0 prices, zero at `t0`.
    pub log_q: Vec<f64>,
    /// Per-capita land holdings `1 / G^t`.
    pub x: Vec<f64>,
    pub next: NextPeriod,
}

impl EquilibriumPath {
    pub fn len(&self) -> usize {
        self.price.len()
    }

    pub fn is_empty(&self) -> bool {
        self.price.is_empty()
    }

    /// Last stored period.
    pub fn horizon(&self) -> usize {
        self.t0 + self.len() - 1
    }

    pub fn periods(&self) -> impl Iterator<Item = usize> + '_ {
        self.t0..=self.horizon()
    }

    pub fn index_of(&self, t: usize) -> Result<usize> {
        if t < self.t0 || t > self.horizon() {
            return Err(Error::PeriodOutOfRange {
                period: t,
                first: self.t0,
                last: self.horizon(),
            });
        }
        Ok(t - self.t0)
    }

    /// Per-capita savings `P_t x_t = P_t / G^t`.
    pub fn savings(&self, i: usize) -> f64 {
        self.price[i] * self.x[i]
    }

    /// `P_{t+1}` for the period at index `i`.
    pub fn price_next(&self, i: usize) -> f64 {
        self.price.get(i + 1).copied().unwrap_or(self.next.price)
    }

    /// `r_{t+1}` for the period at index `i`.
    pub fn rent_next(&self, i: usize) -> f64 {
        self.r.get(i + 1).copied().unwrap_or(self.next.r)
    }

    /// `z_{t+1}`: old-age consumption of the generation born at index `i`.
    pub fn old_consumption_of(&self, i: usize) -> f64 {
        self.z.get(i + 1).copied().unwrap_or(self.next.z)
    }

    /// Young endowment in the endowment-economy view, `e_y + w`.
    pub fn young_endowment_total(&self, i: usize) -> f64 {
        self.e_y[i] + self.w[i]
    }
}

/// Log date-0 prices from gross rates: `ln q_0 = 0`,
/// `ln q_{s+1} = ln q_s - ln R_s`. Returns `rates.len() + 1` values.
pub fn date0_prices(rates: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(rates.len() + 1);
    let mut acc = NeumaierSum::default();
    out.push(0.0);
    for &r in rates {
        acc.add(-log(r));
        out.push(acc.value());
    }
    out
}

/// Truncated present value of dividends and the residual price term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalValue {
    /// `(1/q_t) Σ_{s=t+1}^{T} q_s r_s`
    pub value: f64,
    /// `q_T P_T / q_t`
    pub tail: f64,
}

/// Present value at `t` of rents paid on `(t, horizon_t]`, with the
/// leftover price term; `value + tail = P_t` on an equilibrium path.
pub fn fundamental_value(path: &EquilibriumPath, t: usize, horizon_t: usize) -> Result<FundamentalValue> {
    let i = path.index_of(t)?;
    let j = path.index_of(horizon_t)?;
    if j <= i {
        return Err(Error::PeriodOutOfRange {
            period: horizon_t,
            first: t + 1,
            last: path.horizon(),
        });
    }
    let base = path.log_q[i];
    let value: NeumaierSum = (i + 1..=j)
        .filter(|&s| path.r[s] > 0.0)
        .map(|s| exp(path.log_q[s] - base + log(path.r[s])))
        .collect();
    let tail = exp(path.log_q[j] - base + log(path.price[j]));
    Ok(FundamentalValue {
        value: value.value(),
        tail,
    })
}

/// Series divided by `a_t = G^t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Detrended {
    pub price: Vec<f64>,
    /// `N_t (e_y + w) / a_t`
    pub young_endowment: Vec<f64>,
    /// `N_{t-1} e_o / a_t`
    pub old_endowment: Vec<f64>,
    pub dividend: Vec<f64>,
    /// Aggregate resources `(N_t (e_y + w) + N_{t-1} e_o + r_t) / a_t`.
    pub resources: Vec<f64>,
}

/// Detrends a path by `a_t = G^t`.
pub fn detrend(path: &EquilibriumPath) -> Detrended {
    let demo: &Demography = &path.demo;
    let g = demo.growth();
    let n = path.len();
    let mut out = Detrended {
        price: Vec::with_capacity(n),
        young_endowment: Vec::with_capacity(n),
        old_endowment: Vec::with_capacity(n),
        dividend: Vec::with_capacity(n),
        resources: Vec::with_capacity(n),
    };
    for (i, t) in path.periods().enumerate() {
        let ln_a = demo.ln_population(t);
        let young = path.young_endowment_total(i);
        let old = path.e_o / g;
        let dividend = exp(log(path.r[i]) - ln_a);
        out.price.push(exp(log(path.price[i]) - ln_a));
        out.young_endowment.push(young);
        out.old_endowment.push(old);
        out.dividend.push(dividend);
        out.resources.push(young + old + dividend);
    }
    out
}
