//! Univariate and joint variability metrics.
//!
//! Classical (`cv`), robust (`rcv` from the median absolute deviation),
//! calendar-based (`mav`, `iav`, `mv`/`sv`), and joint (`jcv`) coefficients
//! of variation, plus percentile summaries. All sample statistics use the
//! N−1 denominator; the MAD carries no consistency scaling factor.

use std::collections::BTreeMap;

use chrono::Datelike;

use crate::error::{Error, Result};
use crate::series::{aggregate, Season, TimeAxis, TimeScale};

/// Default percentile set reported in summaries.
pub const DEFAULT_PERCENTILES: [u8; 4] = [50, 75, 90, 95];

/// A metric value, or the reason it has no value on this input.
///
/// Grid outputs render `Undefined` as an `undefined:<reason>` status cell
/// instead of NaN text.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricCell {
    Value(f64),
    Undefined(String),
}

impl MetricCell {
    pub fn value(&self) -> Option<f64> {
        match self {
            MetricCell::Value(v) => Some(*v),
            MetricCell::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, MetricCell::Value(_))
    }
}

impl From<Result<f64>> for MetricCell {
    fn from(result: Result<f64>) -> Self {
        match result {
            Ok(v) => MetricCell::Value(v),
            Err(e) => MetricCell::Undefined(match e {
                Error::Undefined(reason) => reason,
                other => other.to_string(),
            }),
        }
    }
}

impl std::fmt::Display for MetricCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricCell::Value(v) => write!(f, "{v:.6}"),
            MetricCell::Undefined(reason) => write!(f, "undefined ({reason})"),
        }
    }
}

// ---------------------------------------------------------------------------
// Order statistics
// ---------------------------------------------------------------------------

/// Median via quickselect; even lengths take the midpoint of the two central
/// order statistics, written as `lo + 0.5 * (hi - lo)` so it agrees bit-for-bit
/// with the type-7 quantile at q = 50.
fn median_in_place(values: &mut [f64]) -> f64 {
    let n = values.len();
    debug_assert!(n > 0);
    let k = n / 2;
    let (lower, kth, _) = values.select_nth_unstable_by(k, |a, b| a.total_cmp(b));
    let upper = *kth;
    if n % 2 == 1 {
        upper
    } else {
        let lower_max = lower
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        lower_max + 0.5 * (upper - lower_max)
    }
}

/// Median and (unscaled) median absolute deviation.
pub fn median_and_mad(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    let mut scratch = values.to_vec();
    let median = median_in_place(&mut scratch);
    for (slot, &v) in scratch.iter_mut().zip(values) {
        *slot = (v - median).abs();
    }
    let mad = median_in_place(&mut scratch);
    Ok((median, mad))
}

/// Type-7 quantile (linear interpolation between closest order statistics)
/// of pre-sorted data, `q` in percent.
pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = (n - 1) as f64 * (q / 100.0);
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if frac == 0.0 || lo + 1 == n {
        sorted[lo.min(n - 1)]
    } else {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    }
}

/// Percentiles of `values` at the requested integer percents.
///
/// Uses linear interpolation between the closest order statistics; the 50th
/// percentile equals [`median_and_mad`]'s median exactly.
pub fn percentiles(values: &[f64], qs: &[u8]) -> Result<BTreeMap<u8, f64>> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    for &q in qs {
        if q > 100 {
            return Err(Error::InvalidInput(format!("percentile {q} out of range")));
        }
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| a.total_cmp(b));
    Ok(qs
        .iter()
        .map(|&q| (q, quantile_sorted(&sorted, q as f64)))
        .collect())
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample variance with the N−1 denominator (two-pass).
pub(crate) fn sample_variance(values: &[f64]) -> f64 {
    debug_assert!(values.len() >= 2);
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64
}

pub(crate) fn sample_std(values: &[f64]) -> f64 {
    sample_variance(values).sqrt()
}

fn sample_covariance(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mx = mean(x);
    let my = mean(y);
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / (x.len() - 1) as f64
}

// ---------------------------------------------------------------------------
// Coefficients of variation
// ---------------------------------------------------------------------------

/// Robust coefficient of variation: MAD divided by the median.
pub fn rcv(values: &[f64]) -> Result<f64> {
    let (median, mad) = median_and_mad(values)?;
    if median == 0.0 {
        return Err(Error::undefined("zero median"));
    }
    Ok(mad / median)
}

/// Classical coefficient of variation: sample standard deviation over mean.
pub fn cv(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    if values.len() < 2 {
        return Err(Error::InsufficientSpan("cv needs at least 2 values".into()));
    }
    let m = mean(values);
    if m == 0.0 {
        return Err(Error::undefined("zero mean"));
    }
    Ok(sample_std(values) / m)
}

/// Complete calendar years of the axis as (label, hour-range) periods.
fn complete_years(axis: &TimeAxis) -> Result<Vec<crate::series::Period>> {
    let years: Vec<_> = crate::series::partition(axis, TimeScale::Annual)?
        .into_iter()
        .filter(|p| p.complete)
        .collect();
    if years.is_empty() {
        return Err(Error::InsufficientSpan(
            "no complete calendar year in axis".into(),
        ));
    }
    Ok(years)
}

/// Mean annual variability: the per-year ratio of hourly standard deviation
/// to mean, averaged over complete years.
pub fn mav(values: &[f64], axis: &TimeAxis) -> Result<f64> {
    check_len(values, axis)?;
    let years = complete_years(axis)?;
    let mut acc = 0.0;
    for year in &years {
        let slice = &values[year.range.clone()];
        let m = mean(slice);
        if m == 0.0 {
            return Err(Error::undefined(format!("zero mean in year {}", year.label)));
        }
        acc += sample_std(slice) / m;
    }
    Ok(acc / years.len() as f64)
}

/// Inter-annual variability: standard deviation of the annual means divided
/// by the overall mean of the complete years' hourly values.
pub fn iav(values: &[f64], axis: &TimeAxis) -> Result<f64> {
    check_len(values, axis)?;
    let years = complete_years(axis)?;
    if years.len() < 2 {
        return Err(Error::InsufficientSpan(
            "iav needs at least 2 complete years".into(),
        ));
    }
    let annual_means: Vec<f64> = years
        .iter()
        .map(|y| mean(&values[y.range.clone()]))
        .collect();
    let mut sum = 0.0;
    let mut hours = 0usize;
    for y in &years {
        sum += values[y.range.clone()].iter().sum::<f64>();
        hours += y.hours();
    }
    let overall = sum / hours as f64;
    if overall == 0.0 {
        return Err(Error::undefined("zero overall mean"));
    }
    Ok(sample_std(&annual_means) / overall)
}

/// Monthly and seasonal variability: the spread of the climatological
/// monthly (seasonal) means normalized by the overall mean.
///
/// Climatological means pool the hourly values of every complete calendar
/// year by month (by meteorological season); the normalizer is the mean over
/// the same span. Months refine seasons, so `mv >= sv` always.
pub fn mv_sv(values: &[f64], axis: &TimeAxis) -> Result<(f64, f64)> {
    check_len(values, axis)?;
    let years = complete_years(axis)?;

    let mut month_sum = [0.0f64; 12];
    let mut month_hours = [0usize; 12];
    let mut season_sum = [0.0f64; 4];
    let mut season_hours = [0usize; 4];
    let mut total = 0.0;
    let mut total_hours = 0usize;

    for year in &years {
        for i in year.range.clone() {
            let ts = axis.timestamp(i);
            let m = ts.month0() as usize;
            let s = match Season::of_month(ts.month()) {
                Season::Djf => 0,
                Season::Mam => 1,
                Season::Jja => 2,
                Season::Son => 3,
            };
            month_sum[m] += values[i];
            month_hours[m] += 1;
            season_sum[s] += values[i];
            season_hours[s] += 1;
            total += values[i];
            total_hours += 1;
        }
    }

    let overall = total / total_hours as f64;
    if overall == 0.0 {
        return Err(Error::undefined("zero overall mean"));
    }

    let spread = |sums: &[f64], hours: &[usize]| -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (&s, &h) in sums.iter().zip(hours) {
            if h == 0 {
                continue;
            }
            let m = s / h as f64;
            lo = lo.min(m);
            hi = hi.max(m);
        }
        hi - lo
    };

    Ok((
        spread(&month_sum, &month_hours) / overall,
        spread(&season_sum, &season_hours) / overall,
    ))
}

/// Relative-degeneracy threshold for the joint coefficient of variation.
const JCV_DEGENERACY: f64 = 1e-12;

/// Joint (bivariate) coefficient of variation of two paired series.
///
/// `sqrt((sx²sy² − sxy²) / (x̄²sy² − 2x̄ȳsxy + ȳ²sx²))`. Perfect linear
/// dependence drives the numerator to zero and yields 0; a denominator that
/// vanishes relative to its own terms (e.g. both means zero) is reported as
/// undefined rather than divided through.
pub fn jcv(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(Error::InsufficientSpan("jcv needs at least 3 pairs".into()));
    }
    let xbar = mean(x);
    let ybar = mean(y);
    let sx2 = sample_variance(x);
    let sy2 = sample_variance(y);
    let sxy = sample_covariance(x, y);

    let numerator = sx2 * sy2 - sxy * sxy;
    let num_scale = sx2 * sy2;
    // Cauchy-Schwarz bounds the true numerator below by 0; anything at
    // rounding level means (near-)perfect linear dependence.
    if numerator <= JCV_DEGENERACY * num_scale {
        return Ok(0.0);
    }

    let denominator = xbar * xbar * sy2 - 2.0 * xbar * ybar * sxy + ybar * ybar * sx2;
    let den_scale =
        xbar * xbar * sy2 + (2.0 * xbar * ybar * sxy).abs() + ybar * ybar * sx2;
    if denominator <= JCV_DEGENERACY * den_scale {
        return Err(Error::undefined(
            "singular jcv denominator (sample covariance degenerate along the mean vector)",
        ));
    }
    Ok((numerator / denominator).sqrt())
}

fn check_len(values: &[f64], axis: &TimeAxis) -> Result<()> {
    if values.len() != axis.len() {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: axis.len(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Summary
// ---------------------------------------------------------------------------

/// Variability metrics of one hourly column evaluated at one time scale.
///
/// `cv`, `rcv`, and the percentiles describe the values *at* `scale` (the
/// hourly series itself, or the per-period means); `mav`, `iav`, `mv`, and
/// `sv` are calendar metrics of the underlying hourly series and do not
/// change with `scale`.
#[derive(Debug, Clone)]
pub struct VariabilitySummary {
    pub scale: TimeScale,
    /// Number of values at `scale` the summary describes.
    pub n: usize,
    pub mean: MetricCell,
    pub cv: MetricCell,
    pub rcv: MetricCell,
    pub mav: MetricCell,
    pub iav: MetricCell,
    pub mv: MetricCell,
    pub sv: MetricCell,
    pub percentiles: BTreeMap<u8, f64>,
}

/// Compute a [`VariabilitySummary`] for one hourly column at one scale.
pub fn summarize(values: &[f64], axis: &TimeAxis, scale: TimeScale) -> Result<VariabilitySummary> {
    check_len(values, axis)?;
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }

    let at_scale: Vec<f64> = match scale {
        TimeScale::Hourly => values.to_vec(),
        other => aggregate(values, axis, other)?.values,
    };

    let (mv_cell, sv_cell) = match mv_sv(values, axis) {
        Ok((mv, sv)) => (MetricCell::Value(mv), MetricCell::Value(sv)),
        Err(e) => {
            let cell = MetricCell::from(Err(e));
            (cell.clone(), cell)
        }
    };

    Ok(VariabilitySummary {
        scale,
        n: at_scale.len(),
        mean: MetricCell::Value(mean(&at_scale)),
        cv: cv(&at_scale).into(),
        rcv: rcv(&at_scale).into(),
        mav: mav(values, axis).into(),
        iav: iav(values, axis).into(),
        mv: mv_cell,
        sv: sv_cell,
        percentiles: percentiles(&at_scale, &DEFAULT_PERCENTILES)?,
    })
}
