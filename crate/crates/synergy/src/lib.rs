//! Variability, correlation, complementarity, and hybrid energy-yield
//! analytics for paired wind/solar hourly resource series.
//!
//! The crate ingests per-site hourly records (wind speed at 100 m and 10 m,
//! surface solar irradiance, air temperature), derives wind and solar power
//! densities, and evaluates:
//!
//! - classical and robust variability metrics (`cv`, MAD-based `rcv`,
//!   `mav`/`iav`, monthly/seasonal spread, percentiles) at hourly through
//!   annual time scales ([`variability`]);
//! - a joint coefficient of variation for the paired resources
//!   ([`variability::jcv`]);
//! - three correlation estimators (Pearson, Kendall tau-b, and a robust
//!   median correlation) with a cross-estimator agreement table
//!   ([`association`]);
//! - event-based complementarity: availability thresholds, the
//!   WCS/SCW/UWS/SWS indices, and run-length persistence durations
//!   ([`events`]);
//! - turbine and floating-PV power models with monthly energy yield
//!   ([`power`]);
//! - a manifest-driven, deterministic parallel pipeline over many sites with
//!   CSV and PNG map outputs ([`pipeline`]).
//!
//! Start with the runnable programs under `examples/`; each one exercises a
//! single capability end to end on synthetic data. The `synergy` binary wraps
//! the pipeline for batch use.

pub mod association;
pub mod error;
pub mod events;
pub mod pipeline;
pub mod power;
pub mod report;
pub mod series;
pub mod variability;

pub use error::{Error, Result};
pub use events::{EventReport, Thresholds};
pub use power::{AirDensity, DeviceConfig, MonthlyEnergyTable, PowerCurve, PvFarmConfig};
pub use series::{AggregatedSeries, ResourceSeries, TimeAxis, TimeScale};
pub use variability::{MetricCell, VariabilitySummary};
