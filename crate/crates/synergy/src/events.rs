//! Threshold-event classification, complementarity/synergy indices, and
//! persistence-duration statistics.
//!
//! An hour makes a resource "available" when its power density strictly
//! exceeds the threshold; hours at or below it count as unavailable. Off-runs
//! are maximal blocks of consecutive unavailable hours scanned over the whole
//! series (runs are not split at month or year boundaries).

use crate::error::{Error, Result};

/// Availability cut-offs in W/m².
///
/// Defaults: 280 (upper limit of the poor wind power class) and 125 (upper
/// limit of the NREL poor solar class).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub wp_l: f64,
    pub sp_l: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            wp_l: 280.0,
            sp_l: 125.0,
        }
    }
}

impl Thresholds {
    pub fn new(wp_l: f64, sp_l: f64) -> Result<Self> {
        if wp_l < 0.0 || sp_l < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "thresholds must be non-negative (wp_l={wp_l}, sp_l={sp_l})"
            )));
        }
        Ok(Thresholds { wp_l, sp_l })
    }
}

/// Per-hour availability flags for both resources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventFlags {
    /// Wind power density strictly above its threshold.
    pub wind_on: Vec<bool>,
    /// Solar power density strictly above its threshold.
    pub solar_on: Vec<bool>,
}

impl EventFlags {
    pub fn len(&self) -> usize {
        self.wind_on.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wind_on.is_empty()
    }
}

/// Classify each hour of aligned WP/SP series against the thresholds.
/// Availability is strict `>`; the boundary value counts as unavailable.
pub fn classify_events(wp: &[f64], sp: &[f64], thresholds: Thresholds) -> Result<EventFlags> {
    if wp.len() != sp.len() {
        return Err(Error::LengthMismatch {
            left: wp.len(),
            right: sp.len(),
        });
    }
    Ok(EventFlags {
        wind_on: wp.iter().map(|&v| v > thresholds.wp_l).collect(),
        solar_on: sp.iter().map(|&v| v > thresholds.sp_l).collect(),
    })
}

/// Hour counts of the four cells of the 2x2 availability table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EventCounts {
    pub wind_only: u64,
    pub solar_only: u64,
    pub neither: u64,
    pub both: u64,
    pub total: u64,
}

/// Empirical complementarity/synergy indices.
///
/// `wcs` = wind available while solar is not, `scw` the reverse, `uws` joint
/// non-availability, `both_available` the remaining cell, and `sws` the
/// synergy (exactly one available), constructed as `wcs + scw`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplementarityIndices {
    pub wcs: f64,
    pub scw: f64,
    pub uws: f64,
    pub both_available: f64,
    pub sws: f64,
    pub counts: EventCounts,
}

/// Relative frequencies of the 2x2 availability cells.
pub fn indices(flags: &EventFlags) -> Result<ComplementarityIndices> {
    if flags.is_empty() {
        return Err(Error::EmptySeries);
    }
    let mut counts = EventCounts {
        wind_only: 0,
        solar_only: 0,
        neither: 0,
        both: 0,
        total: flags.len() as u64,
    };
    for (&w, &s) in flags.wind_on.iter().zip(&flags.solar_on) {
        match (w, s) {
            (true, false) => counts.wind_only += 1,
            (false, true) => counts.solar_only += 1,
            (false, false) => counts.neither += 1,
            (true, true) => counts.both += 1,
        }
    }
    let total = counts.total as f64;
    let wcs = counts.wind_only as f64 / total;
    let scw = counts.solar_only as f64 / total;
    Ok(ComplementarityIndices {
        wcs,
        scw,
        uws: counts.neither as f64 / total,
        both_available: counts.both as f64 / total,
        sws: wcs + scw,
        counts,
    })
}

/// Site eligibility: overall mean power density strictly above the threshold.
pub fn eligibility(wp: &[f64], sp: &[f64], thresholds: Thresholds) -> Result<(bool, bool)> {
    if wp.is_empty() || sp.is_empty() {
        return Err(Error::EmptySeries);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    Ok((mean(wp) > thresholds.wp_l, mean(sp) > thresholds.sp_l))
}

/// Run-length statistics of one off-event stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunStats {
    /// Number of maximal off-runs.
    pub runs: usize,
    /// Total off-hours (sum of run lengths).
    pub total_off_hours: usize,
    /// Mean run length in hours; absent when there are no runs.
    pub mean_hours: Option<f64>,
    /// Longest run in hours; absent when there are no runs.
    pub max_hours: Option<usize>,
}

/// Scan maximal runs of `true` in an off-mask and summarize their lengths.
fn run_stats<I: Iterator<Item = bool>>(off: I) -> RunStats {
    let mut runs = 0usize;
    let mut total = 0usize;
    let mut max = 0usize;
    let mut current = 0usize;
    for is_off in off {
        if is_off {
            current += 1;
        } else if current > 0 {
            runs += 1;
            total += current;
            max = max.max(current);
            current = 0;
        }
    }
    if current > 0 {
        runs += 1;
        total += current;
        max = max.max(current);
    }
    RunStats {
        runs,
        total_off_hours: total,
        mean_hours: (runs > 0).then(|| total as f64 / runs as f64),
        max_hours: (runs > 0).then_some(max),
    }
}

/// Persistence durations of the no-wind, no-solar, and joint off events.
///
/// Each stream is reported only where the corresponding eligibility holds
/// (the joint stream needs both); ineligible streams are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DurationReport {
    pub no_wind: Option<RunStats>,
    pub no_solar: Option<RunStats>,
    pub joint: Option<RunStats>,
}

/// Run-length durations of below-threshold stretches, gated by eligibility.
pub fn durations(flags: &EventFlags, eligible_wind: bool, eligible_solar: bool) -> Result<DurationReport> {
    if flags.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(DurationReport {
        no_wind: eligible_wind.then(|| run_stats(flags.wind_on.iter().map(|&w| !w))),
        no_solar: eligible_solar.then(|| run_stats(flags.solar_on.iter().map(|&s| !s))),
        joint: (eligible_wind && eligible_solar).then(|| {
            run_stats(
                flags
                    .wind_on
                    .iter()
                    .zip(&flags.solar_on)
                    .map(|(&w, &s)| !w && !s),
            )
        }),
    })
}

/// Complementarity indices plus duration statistics for one site.
#[derive(Debug, Clone)]
pub struct EventReport {
    pub thresholds: Thresholds,
    pub indices: ComplementarityIndices,
    pub eligible_wind: bool,
    pub eligible_solar: bool,
    pub durations: DurationReport,
    /// Hours examined.
    pub hours: usize,
}

/// Hours in a non-leap year; the minimum span for a meaningful event report.
pub const MIN_REPORT_HOURS: usize = 8760;

/// Full event-based report over aligned hourly WP/SP series.
///
/// Requires at least one year of hours so that the mean-annual eligibility
/// comparison and the duration statistics are meaningful.
pub fn event_report(wp: &[f64], sp: &[f64], thresholds: Thresholds) -> Result<EventReport> {
    if wp.len() != sp.len() {
        return Err(Error::LengthMismatch {
            left: wp.len(),
            right: sp.len(),
        });
    }
    if wp.len() < MIN_REPORT_HOURS {
        return Err(Error::InsufficientSpan(format!(
            "event report needs at least one year of hours ({MIN_REPORT_HOURS}), got {}",
            wp.len()
        )));
    }
    let flags = classify_events(wp, sp, thresholds)?;
    let (eligible_wind, eligible_solar) = eligibility(wp, sp, thresholds)?;
    Ok(EventReport {
        thresholds,
        indices: indices(&flags)?,
        eligible_wind,
        eligible_solar,
        durations: durations(&flags, eligible_wind, eligible_solar)?,
        hours: wp.len(),
    })
}
