//! Reverse-engineered fundamental and bubbly equilibria of the land economy.

mod build;
mod config;
mod path;
mod residuals;

pub use build::{build, build_bubbly, build_fundamental, find_t0, young_endowment_at, young_endowment_limit};
pub use config::{
    check_construction_bound, old_endowment_bound, price_level_bound, PathKind, PricePathSpec,
    ScenarioConfig, DEFAULT_HORIZON,
};
pub use path::{
    date0_prices, detrend, fundamental_value, Detrended, EquilibriumPath, FundamentalValue, NextPeriod,
};
pub use residuals::{clearing_residuals, foc_residuals, verify_residuals, Residuals};
