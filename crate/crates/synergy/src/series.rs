//! Hourly resource series: time axis, unit normalization, calendar
//! aggregation, and CSV ingestion.
//!
//! Everything downstream (variability, correlation, events, energy) consumes
//! the types defined here. A [`ResourceSeries`] is a gap-free hourly record of
//! wind speed at 100 m, surface solar irradiance, ambient temperature, and
//! wind speed at 10 m, all validated at load time.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, Datelike, Duration, Timelike, Utc};

use crate::error::{Error, Result};

/// Seconds per hour; also the J/m² → W/m² conversion divisor for
/// hourly-accumulated irradiance.
pub const SECONDS_PER_HOUR: f64 = 3600.0;

// ---------------------------------------------------------------------------
// Time axis
// ---------------------------------------------------------------------------

/// A strictly increasing, gap-free hourly time grid in UTC.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimeAxis {
    start: DateTime<Utc>,
    len: usize,
}

impl TimeAxis {
    /// Build an axis of `len` whole hours starting at `start`.
    ///
    /// `start` must sit exactly on an hour boundary.
    pub fn new(start: DateTime<Utc>, len: usize) -> Result<Self> {
        if start.minute() != 0 || start.second() != 0 || start.nanosecond() != 0 {
            return Err(Error::InvalidInput(format!(
                "axis start {start} is not a whole hour"
            )));
        }
        if len == 0 {
            return Err(Error::EmptySeries);
        }
        Ok(TimeAxis { start, len })
    }

    pub fn start(&self) -> DateTime<Utc> {
        self.start
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Timestamp of hour `i` (0-based).
    pub fn timestamp(&self, i: usize) -> DateTime<Utc> {
        self.start + Duration::hours(i as i64)
    }

    /// Iterator over all timestamps on the axis.
    pub fn iter(&self) -> impl Iterator<Item = DateTime<Utc>> + '_ {
        (0..self.len).map(|i| self.timestamp(i))
    }
}

// ---------------------------------------------------------------------------
// Time scales and seasons
// ---------------------------------------------------------------------------

/// Aggregation time scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TimeScale {
    Hourly,
    Daily,
    Monthly,
    Seasonal,
    Annual,
}

impl TimeScale {
    pub const ALL: [TimeScale; 5] = [
        TimeScale::Hourly,
        TimeScale::Daily,
        TimeScale::Monthly,
        TimeScale::Seasonal,
        TimeScale::Annual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TimeScale::Hourly => "hourly",
            TimeScale::Daily => "daily",
            TimeScale::Monthly => "monthly",
            TimeScale::Seasonal => "seasonal",
            TimeScale::Annual => "annual",
        }
    }
}

impl fmt::Display for TimeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TimeScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hourly" => Ok(TimeScale::Hourly),
            "daily" => Ok(TimeScale::Daily),
            "monthly" => Ok(TimeScale::Monthly),
            "seasonal" => Ok(TimeScale::Seasonal),
            "annual" => Ok(TimeScale::Annual),
            other => Err(Error::InvalidConfig(format!("unknown time scale `{other}`"))),
        }
    }
}

/// Meteorological season. December belongs to the *following* year's DJF.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Season {
    Djf,
    Mam,
    Jja,
    Son,
}

impl Season {
    pub const ALL: [Season; 4] = [Season::Djf, Season::Mam, Season::Jja, Season::Son];

    pub fn of_month(month: u32) -> Season {
        match month {
            12 | 1 | 2 => Season::Djf,
            3..=5 => Season::Mam,
            6..=8 => Season::Jja,
            9..=11 => Season::Son,
            _ => unreachable!("month out of range: {month}"),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Season::Djf => "DJF",
            Season::Mam => "MAM",
            Season::Jja => "JJA",
            Season::Son => "SON",
        }
    }
}

impl fmt::Display for Season {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Season-year of a timestamp: December rolls into the next year's DJF.
pub fn season_year(ts: DateTime<Utc>) -> (i32, Season) {
    let season = Season::of_month(ts.month());
    let year = if ts.month() == 12 {
        ts.year() + 1
    } else {
        ts.year()
    };
    (year, season)
}

fn is_leap_year(year: i32) -> bool {
    chrono::NaiveDate::from_ymd_opt(year, 2, 29).is_some()
}

fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 => {
            if is_leap_year(year) {
                29
            } else {
                28
            }
        }
        _ => unreachable!("month out of range: {month}"),
    }
}

fn hours_in_year(year: i32) -> usize {
    if is_leap_year(year) {
        8784
    } else {
        8760
    }
}

fn hours_in_season(year: i32, season: Season) -> usize {
    // DJF of `year` spans Dec (year-1) + Jan/Feb (year).
    let months: [(i32, u32); 3] = match season {
        Season::Djf => [(year - 1, 12), (year, 1), (year, 2)],
        Season::Mam => [(year, 3), (year, 4), (year, 5)],
        Season::Jja => [(year, 6), (year, 7), (year, 8)],
        Season::Son => [(year, 9), (year, 10), (year, 11)],
    };
    months
        .iter()
        .map(|&(y, m)| days_in_month(y, m) as usize * 24)
        .sum()
}

// ---------------------------------------------------------------------------
// Calendar partitioning
// ---------------------------------------------------------------------------

/// One calendar period on an axis: a contiguous hour range plus a
/// completeness flag (whether the axis covers the whole calendar period).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Period {
    pub label: String,
    pub range: Range<usize>,
    pub complete: bool,
}

impl Period {
    pub fn hours(&self) -> usize {
        self.range.len()
    }
}

/// Cheap per-hour period key; labels are only materialized at boundaries.
fn period_key(ts: DateTime<Utc>, scale: TimeScale) -> i64 {
    match scale {
        TimeScale::Daily => {
            ts.year() as i64 * 10_000 + ts.month() as i64 * 100 + ts.day() as i64
        }
        TimeScale::Monthly => ts.year() as i64 * 100 + ts.month() as i64,
        TimeScale::Seasonal => {
            let (year, season) = season_year(ts);
            year as i64 * 10 + season as i64
        }
        TimeScale::Annual => ts.year() as i64,
        TimeScale::Hourly => unreachable!("hourly has no periods"),
    }
}

/// Label and calendar hour count of the period containing `ts`.
fn period_meta(ts: DateTime<Utc>, scale: TimeScale) -> (String, usize) {
    match scale {
        TimeScale::Daily => (
            format!("{:04}-{:02}-{:02}", ts.year(), ts.month(), ts.day()),
            24,
        ),
        TimeScale::Monthly => (
            format!("{:04}-{:02}", ts.year(), ts.month()),
            days_in_month(ts.year(), ts.month()) as usize * 24,
        ),
        TimeScale::Seasonal => {
            let (year, season) = season_year(ts);
            (format!("{year:04}-{season}"), hours_in_season(year, season))
        }
        TimeScale::Annual => (format!("{:04}", ts.year()), hours_in_year(ts.year())),
        TimeScale::Hourly => unreachable!("hourly has no periods"),
    }
}

/// Partition an axis into calendar periods at `scale`.
///
/// Every hour lands in exactly one period; periods are returned in time
/// order. Completeness compares the covered hour count against the calendar
/// length of the period (24 for a day, 744 for July, 8784 for a leap year,
/// and so on).
pub fn partition(axis: &TimeAxis, scale: TimeScale) -> Result<Vec<Period>> {
    if scale == TimeScale::Hourly {
        return Err(Error::InvalidInput(
            "hourly partition is the identity; aggregate only at coarser scales".into(),
        ));
    }

    let mut periods: Vec<Period> = Vec::new();
    let mut ts = axis.timestamp(0);
    let mut cur_key = period_key(ts, scale);
    let mut cur_start = 0usize;
    let close = |start: usize, end: usize, periods: &mut Vec<Period>| {
        let (label, expected) = period_meta(axis.timestamp(start), scale);
        periods.push(Period {
            label,
            range: start..end,
            complete: end - start == expected,
        });
    };

    for i in 1..axis.len() {
        ts += Duration::hours(1);
        let key = period_key(ts, scale);
        if key != cur_key {
            close(cur_start, i, &mut periods);
            cur_key = key;
            cur_start = i;
        }
    }
    close(cur_start, axis.len(), &mut periods);

    Ok(periods)
}

/// Seasonal partition of the axis: one bucket per (year, season), December
/// assigned to the following year's DJF. Incomplete edge seasons are flagged.
pub fn season_partition(axis: &TimeAxis) -> Result<Vec<Period>> {
    partition(axis, TimeScale::Seasonal)
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

/// Per-period mean values of an hourly quantity at one time scale.
///
/// Only calendar-complete periods contribute values; incomplete leading or
/// trailing periods are listed in `dropped`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedSeries {
    pub scale: TimeScale,
    pub labels: Vec<String>,
    pub values: Vec<f64>,
    /// Hour count of each kept period.
    pub hours: Vec<usize>,
    /// Labels of incomplete periods that were dropped.
    pub dropped: Vec<String>,
}

impl AggregatedSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Mean of `values[range]`.
fn range_mean(values: &[f64], range: &Range<usize>) -> f64 {
    let slice = &values[range.clone()];
    slice.iter().sum::<f64>() / slice.len() as f64
}

/// Aggregate an hourly column to per-period means at `scale`.
///
/// Incomplete calendar periods at the edges are dropped from `values` and
/// reported in `dropped`. Errors with "insufficient span" when the axis does
/// not cover a single complete period.
pub fn aggregate(values: &[f64], axis: &TimeAxis, scale: TimeScale) -> Result<AggregatedSeries> {
    if values.len() != axis.len() {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: axis.len(),
        });
    }
    let periods = partition(axis, scale)?;

    let mut out = AggregatedSeries {
        scale,
        labels: Vec::new(),
        values: Vec::new(),
        hours: Vec::new(),
        dropped: Vec::new(),
    };
    for period in &periods {
        if period.complete {
            out.labels.push(period.label.clone());
            out.values.push(range_mean(values, &period.range));
            out.hours.push(period.hours());
        } else {
            out.dropped.push(period.label.clone());
        }
    }
    if out.values.is_empty() {
        return Err(Error::InsufficientSpan(format!(
            "no complete {scale} period in {} hours starting {}",
            axis.len(),
            axis.start()
        )));
    }
    Ok(out)
}

/// Yearly means of each season, keyed by season.
///
/// Used by the seasonal correlation and seasonal per-season metrics: for each
/// of DJF/MAM/JJA/SON this returns the per-year mean values of that season,
/// complete seasons only, in year order.
pub fn seasonal_yearly_means(
    values: &[f64],
    axis: &TimeAxis,
) -> Result<BTreeMap<Season, Vec<(i32, f64)>>> {
    if values.len() != axis.len() {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: axis.len(),
        });
    }
    let mut map: BTreeMap<Season, Vec<(i32, f64)>> = BTreeMap::new();
    for period in season_partition(axis)? {
        if !period.complete {
            continue;
        }
        // Re-derive year/season from the first hour instead of parsing the label.
        let (year, season) = season_year(axis.timestamp(period.range.start));
        map.entry(season)
            .or_default()
            .push((year, range_mean(values, &period.range)));
    }
    if map.is_empty() {
        return Err(Error::InsufficientSpan(
            "no complete season in axis".into(),
        ));
    }
    Ok(map)
}

// ---------------------------------------------------------------------------
// Unit normalization
// ---------------------------------------------------------------------------

/// Declared unit of the irradiance column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SsrdUnits {
    /// Hourly-accumulated energy; divided by 3600 at load time.
    JPerM2,
    /// Already a mean power density; passed through.
    #[default]
    WPerM2,
}

impl FromStr for SsrdUnits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "J_per_m2" => Ok(SsrdUnits::JPerM2),
            "W_per_m2" => Ok(SsrdUnits::WPerM2),
            other => Err(Error::InvalidConfig(format!(
                "unknown ssrd_units `{other}` (expected J_per_m2 or W_per_m2)"
            ))),
        }
    }
}

/// Declared unit of the temperature column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TempUnits {
    #[default]
    Celsius,
    Kelvin,
}

impl FromStr for TempUnits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "C" => Ok(TempUnits::Celsius),
            "K" => Ok(TempUnits::Kelvin),
            other => Err(Error::InvalidConfig(format!(
                "unknown t2m_units `{other}` (expected C or K)"
            ))),
        }
    }
}

/// Column unit declarations for a series file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UnitDecls {
    pub ssrd: SsrdUnits,
    pub t2m: TempUnits,
}

/// Convert hourly-accumulated irradiance (J/m²) to mean power (W/m²).
///
/// Each output value is `input / 3600`. Negative inputs are an ingestion
/// error naming the offending row.
pub fn normalize_irradiance(raw: &[f64]) -> Result<Vec<f64>> {
    raw.iter()
        .enumerate()
        .map(|(row, &v)| {
            if v < 0.0 {
                Err(Error::InvalidInput(format!(
                    "negative accumulated irradiance {v} at row {row}"
                )))
            } else {
                Ok(v / SECONDS_PER_HOUR)
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Resource series
// ---------------------------------------------------------------------------

/// Aligned hourly resource columns over a shared [`TimeAxis`].
///
/// Units after construction: `u100`/`u10` in m/s, `ssrd` in W/m², `t2m` in °C.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceSeries {
    axis: TimeAxis,
    u100: Vec<f64>,
    ssrd: Vec<f64>,
    t2m: Vec<f64>,
    u10: Vec<f64>,
    /// True when the irradiance column was converted from J/m² at load time.
    ssrd_converted: bool,
}

impl ResourceSeries {
    /// Assemble a series from already-normalized columns, validating the
    /// domain invariants (equal lengths, non-negative speeds and irradiance,
    /// finite values).
    pub fn new(
        axis: TimeAxis,
        u100: Vec<f64>,
        ssrd: Vec<f64>,
        t2m: Vec<f64>,
        u10: Vec<f64>,
    ) -> Result<Self> {
        let n = axis.len();
        for (name, col) in [("u100", &u100), ("ssrd", &ssrd), ("t2m", &t2m), ("u10", &u10)] {
            if col.len() != n {
                return Err(Error::LengthMismatch {
                    left: col.len(),
                    right: n,
                });
            }
            if let Some(row) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "non-finite {name} value at row {row}"
                )));
            }
        }
        for (name, col) in [("u100", &u100), ("ssrd", &ssrd), ("u10", &u10)] {
            if let Some(row) = col.iter().position(|&v| v < 0.0) {
                return Err(Error::InvalidInput(format!(
                    "negative {name} value at row {row}"
                )));
            }
        }
        Ok(ResourceSeries {
            axis,
            u100,
            ssrd,
            t2m,
            u10,
            ssrd_converted: false,
        })
    }

    pub fn axis(&self) -> &TimeAxis {
        &self.axis
    }

    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    /// Wind speed at 100 m, m/s.
    pub fn u100(&self) -> &[f64] {
        &self.u100
    }

    /// Surface solar irradiance, W/m².
    pub fn ssrd(&self) -> &[f64] {
        &self.ssrd
    }

    /// Ambient air temperature, °C.
    pub fn t2m(&self) -> &[f64] {
        &self.t2m
    }

    /// Wind speed at 10 m, m/s.
    pub fn u10(&self) -> &[f64] {
        &self.u10
    }

    /// Whether irradiance was converted from accumulated J/m² at load time.
    pub fn ssrd_converted(&self) -> bool {
        self.ssrd_converted
    }
}

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

const SERIES_HEADER: [&str; 5] = ["timestamp", "u100", "ssrd", "t2m", "u10"];

/// Leading `# key: value` block of a series or manifest file.
struct SidecarHeader {
    pairs: Vec<(String, String)>,
    /// Byte offset where the CSV data begins.
    data_offset: usize,
    /// Number of sidecar lines consumed.
    lines: usize,
}

fn parse_sidecar_header(text: &str, path: &Path) -> Result<SidecarHeader> {
    let mut header = SidecarHeader {
        pairs: Vec::new(),
        data_offset: 0,
        lines: 0,
    };
    for line in text.lines() {
        if !line.starts_with('#') {
            break;
        }
        let body = line.trim_start_matches('#').trim();
        if let Some((key, value)) = body.split_once(':') {
            header
                .pairs
                .push((key.trim().to_string(), value.trim().to_string()));
        } else if !body.is_empty() {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: header.lines + 1,
                msg: format!("expected `# key: value`, got `{line}`"),
            });
        }
        header.data_offset += line.len() + 1;
        header.lines += 1;
    }
    header.data_offset = header.data_offset.min(text.len());
    Ok(header)
}

/// Load one per-point series file.
///
/// Format: optional `# key: value` sidecar lines (ssrd_units, t2m_units),
/// then a CSV with header `timestamp,u100,ssrd,t2m,u10`. Timestamps are
/// ISO-8601 UTC on a strictly hourly, gap-free grid. `defaults` supplies the
/// unit declarations when the file has no sidecar (typically from the grid
/// manifest); sidecar declarations win.
pub fn load_series_csv(path: &Path, defaults: UnitDecls) -> Result<ResourceSeries> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let sidecar = parse_sidecar_header(&text, path)?;
    let header_lines = sidecar.lines;

    let mut units = defaults;
    for (key, value) in &sidecar.pairs {
        match key.as_str() {
            "ssrd_units" => units.ssrd = value.parse()?,
            "t2m_units" => units.t2m = value.parse()?,
            _ => {
                // Unknown sidecar keys are tolerated (room for provenance notes).
            }
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(&text.as_bytes()[sidecar.data_offset..]);

    {
        let headers = reader.headers().map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line: header_lines + 1,
            msg: e.to_string(),
        })?;
        let got: Vec<&str> = headers.iter().collect();
        if got != SERIES_HEADER {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: header_lines + 1,
                msg: format!(
                    "bad header `{}` (expected `{}`)",
                    got.join(","),
                    SERIES_HEADER.join(",")
                ),
            });
        }
    }

    let mut timestamps: Vec<DateTime<Utc>> = Vec::new();
    let mut u100 = Vec::new();
    let mut ssrd_raw = Vec::new();
    let mut t2m = Vec::new();
    let mut u10 = Vec::new();

    for (i, record) in reader.records().enumerate() {
        // +1 header line, +1 one-based
        let line = header_lines + i + 2;
        let record = record.map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line,
            msg: e.to_string(),
        })?;
        if record.len() != 5 {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line,
                msg: format!("expected 5 fields, got {}", record.len()),
            });
        }
        let ts = DateTime::parse_from_rfc3339(&record[0])
            .map_err(|e| Error::Malformed {
                path: path.to_path_buf(),
                line,
                msg: format!("bad timestamp `{}`: {e}", &record[0]),
            })?
            .with_timezone(&Utc);
        let field = |idx: usize, name: &str| -> Result<f64> {
            record[idx].parse::<f64>().map_err(|e| Error::Malformed {
                path: path.to_path_buf(),
                line,
                msg: format!("bad {name} `{}`: {e}", &record[idx]),
            })
        };
        timestamps.push(ts);
        u100.push(field(1, "u100")?);
        ssrd_raw.push(field(2, "ssrd")?);
        t2m.push(field(3, "t2m")?);
        u10.push(field(4, "u10")?);
    }

    if timestamps.is_empty() {
        return Err(Error::EmptySeries);
    }

    // Strictly hourly, gap-free grid; gaps are a load error, not fill material.
    let axis = TimeAxis::new(timestamps[0], timestamps.len()).map_err(|e| Error::Malformed {
        path: path.to_path_buf(),
        line: header_lines + 2,
        msg: e.to_string(),
    })?;
    for (i, &ts) in timestamps.iter().enumerate() {
        let expected = axis.timestamp(i);
        if ts != expected {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: header_lines + i + 2,
                msg: format!("expected {expected} on the hourly grid, got {ts}"),
            });
        }
    }

    let ssrd = match units.ssrd {
        SsrdUnits::JPerM2 => normalize_irradiance(&ssrd_raw).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::Malformed {
                path: path.to_path_buf(),
                line: 0,
                msg,
            },
            other => other,
        })?,
        SsrdUnits::WPerM2 => ssrd_raw,
    };
    let t2m = match units.t2m {
        TempUnits::Celsius => t2m,
        TempUnits::Kelvin => t2m.iter().map(|k| k - 273.15).collect(),
    };

    let mut series = ResourceSeries::new(axis, u100, ssrd, t2m, u10).map_err(|e| match e {
        Error::InvalidInput(msg) => Error::Malformed {
            path: path.to_path_buf(),
            line: 0,
            msg,
        },
        other => other,
    })?;
    series.ssrd_converted = units.ssrd == SsrdUnits::JPerM2;
    Ok(series)
}
