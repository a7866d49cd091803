//! Equilibrium construction and efficiency diagnostics for two-period
//! overlapping generations economies with land.
//!
//! The crate is `no_std` (with `alloc`) and free of IO. It covers:
//!
//! - [`economy`]: CES production, factor prices along `H = G^t`, CRRA
//!   preferences and the curvature of their indifference curves.
//! - [`equilibrium`]: reverse-engineered fundamental and bubbly equilibria,
//!   date-0 prices, fundamental values and residual checks.
//! - [`diagnostics`]: bubble and Cass classifications, threshold bounds and
//!   the indifference-curvature bound used for efficiency.
//! - [`welfare`]: the young-tax / old-transfer scheme and a grid search over
//!   it.
//!
//! Large growth factors (`G^t`, `G^{t/σ}`, date-0 prices) are handled in log
//! space; linear values are only formed where they stay representable.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod diagnostics;
pub mod economy;
pub mod equilibrium;
mod error;
pub mod numeric;
pub mod welfare;

pub use error::{Bound, Error, Result};

pub use diagnostics::{
    asymptotically_bubbly_check, cass_check, classify_bubble, classify_series, construction_bounds, diagnose,
    mu_bound, necessity_check, pv_endowment, AsymptoticBubbliness, ConstructionBounds, DiagnosticsReport,
    MuBound, NecessityCheck, SeriesClassification, Verdict,
};
pub use economy::{
    asymptotics, ces_output, factor_prices_at, indifference_elasticity, labor_share, mrs, sigma_numeric,
    Asymptotics, CesParams, CrraParams, Demography, FactorPrices,
};
pub use equilibrium::{
    build, build_bubbly, build_fundamental, date0_prices, detrend, find_t0, fundamental_value,
    verify_residuals, EquilibriumPath, PathKind, PricePathSpec, Residuals, ScenarioConfig,
};
pub use welfare::{
    apply_transfer, first_order_gain, improvement_search, GridPoint, ImprovementReport, SearchGrid,
    SearchOutcome, TransferScheme, WelfareVerdict,
};

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
