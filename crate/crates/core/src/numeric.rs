//! Small numerical helpers shared by the other modules.

use libm::{exp, fabs, log, log1p};

/// Half-width of the band around `σ = 1` and `γ = 1` that selects the
/// Cobb-Douglas and log branches.
pub const UNIT_GUARD: f64 = 1e-9;

/// Default relative tolerance for closed-form identity checks.
pub const IDENTITY_RTOL: f64 = 1e-10;

pub(crate) fn is_unit(x: f64) -> bool {
    fabs(x - 1.0) < UNIT_GUARD
}

/// `ln(e^a + e^b)` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + log1p(exp(lo - hi))
}

/// `ln(Σ e^{x_i})` over a slice; `-inf` for an empty slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY || !max.is_finite() {
        return max;
    }
    let mut acc = NeumaierSum::default();
    for &x in xs {
        acc.add(exp(x - max));
    }
    max + log(acc.value())
}

/// Compensated (Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if fabs(self.sum) >= fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl core::iter::FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = NeumaierSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Ordinary least-squares slope of `ys` against `xs`.
///
/// Returns `None` for fewer than two points or a degenerate abscissa.
pub fn ols_slope(points: impl Iterator<Item = (f64, f64)> + Clone) -> Option<f64> {
    let (n, sx, sy) = points
        .clone()
        .fold((0usize, 0.0, 0.0), |(n, sx, sy), (x, y)| (n + 1, sx + x, sy + y));
    if n < 2 {
        return None;
    }
    let mx = sx / n as f64;
    let my = sy / n as f64;
    let (sxy, sxx) = points.fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        let dx = x - mx;
        (sxy + dx * (y - my), sxx + dx * dx)
    });
    if sxx <= 0.0 {
        return None;
    }
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_exp_matches_direct() {
        let v = log_add_exp(log(2.0), log(3.0));
        assert!((v - log(5.0)).abs() < 1e-15);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.5), 1.5);
        // would overflow linearly
        let big = log_add_exp(800.0, 800.0);
        assert!((big - (800.0 + log(2.0))).abs() < 1e-12);
    }

    #[test]
    fn neumaier_recovers_small_terms() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn slope_of_line() {
        let pts = (0..10).map(|i| (i as f64, 3.0 - 0.5 * i as f64));
        assert!((ols_slope(pts).unwrap() + 0.5).abs() < 1e-14);
        assert!(ols_slope(core::iter::once((1.0, 1.0))).is_none());
    }

    #[test]
    fn log_sum_exp_empty_and_values() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        let v = log_sum_exp(&[0.0, 0.0, 0.0, 0.0]);
        assert!((v - log(4.0)).abs() < 1e-15);
    }
}
