//! Manifest-driven grid execution: load every point's series, evaluate the
//! metric registry, event reports, and energy tables in parallel, and
//! persist the results.
//!
//! Determinism contract: results are keyed by manifest order and computed
//! independently per point, so output files are byte-identical for any
//! worker count. A failing point (unreadable or invalid series) is isolated:
//! it is reported in the failure list and its cells render as
//! `failed:<reason>`, leaving every other point's bytes untouched.

mod config;
mod manifest;
mod output;
mod registry;

pub use config::{load_config, EnergySelection, OutputFormat, PipelineConfig};
pub use manifest::{load_manifest, GridManifest, GridPoint};
pub use output::{
    write_energy_csv, write_events_csv, write_maps, write_metric_grid, write_metrics_csv,
    write_outputs, RasterFiles,
};
pub use registry::{joint_column_name, JointKind, Metric, SpanKind, UniKind, Variable};

use rayon::prelude::*;

use crate::association::{kendall_tau, pearson, r_cmed};
use crate::error::{Error, Result};
use crate::events::{event_report, EventReport};
use crate::power::{monthly_energy, wind_power_density_series, MonthlyEnergyTable};
use crate::series::{
    aggregate, load_series_csv, seasonal_yearly_means, Season, TimeScale,
};
use crate::variability::{cv, iav, jcv, mav, mean, mv_sv, rcv, MetricCell};

/// Per-grid-point values of one named metric at one time scale.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGrid {
    pub metric: String,
    pub scale: TimeScale,
    /// One cell per manifest point, in manifest order.
    pub cells: Vec<MetricCell>,
}

/// A point whose series could not be processed at all.
#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub id: String,
    pub reason: String,
}

/// Everything a grid run produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub grids: Vec<MetricGrid>,
    /// Per point: the event report, or the reason it is unavailable.
    pub events: Vec<std::result::Result<EventReport, String>>,
    /// Per point: a monthly energy table for points selected in the config.
    pub energy: Vec<Option<MonthlyEnergyTable>>,
    pub failures: Vec<PointFailure>,
}

impl RunOutput {
    pub fn all_points_failed(&self, manifest: &GridManifest) -> bool {
        self.failures.len() == manifest.len()
    }
}

/// The (metric, scale) columns a config produces, in output order.
///
/// Identical for every point: per-season joint columns always cover all four
/// seasons, and whole-series calendar metrics always report under the hourly
/// scale.
fn column_schema(cfg: &PipelineConfig) -> Vec<(String, TimeScale)> {
    let mut columns = Vec::new();
    for &scale in &cfg.scales {
        for metric in &cfg.metrics {
            match *metric {
                Metric::Uni(var, kind) => {
                    columns.push((format!("{}_{}", var.prefix(), uni_suffix(kind)), scale));
                }
                Metric::Joint(kind) if scale == TimeScale::Seasonal => {
                    for season in Season::ALL {
                        columns.push((joint_column_name(kind, scale, Some(season)), scale));
                    }
                }
                Metric::Joint(kind) => {
                    columns.push((joint_column_name(kind, scale, None), scale));
                }
                Metric::Span(..) => {}
            }
        }
    }
    for metric in &cfg.metrics {
        if let Metric::Span(var, kind) = *metric {
            columns.push((
                format!("{}_{}", var.prefix(), span_suffix(kind)),
                TimeScale::Hourly,
            ));
        }
    }
    columns
}

fn uni_suffix(kind: UniKind) -> &'static str {
    match kind {
        UniKind::Mean => "mean",
        UniKind::Cv => "cv",
        UniKind::Rcv => "rcv",
        UniKind::P50 => "p50",
        UniKind::P75 => "p75",
        UniKind::P90 => "p90",
        UniKind::P95 => "p95",
    }
}

fn span_suffix(kind: SpanKind) -> &'static str {
    match kind {
        SpanKind::Mav => "mav",
        SpanKind::Iav => "iav",
        SpanKind::Mv => "mv",
        SpanKind::Sv => "sv",
    }
}

/// Results of one successfully loaded point.
struct PointResult {
    /// Cells in `column_schema` order.
    cells: Vec<MetricCell>,
    events: std::result::Result<EventReport, String>,
    energy: Option<MonthlyEnergyTable>,
}

enum PointOutcome {
    Computed(Box<PointResult>),
    Failed(String),
}

fn wants_energy(cfg: &PipelineConfig, id: &str) -> bool {
    match &cfg.energy {
        EnergySelection::None => false,
        EnergySelection::All => true,
        EnergySelection::Points(ids) => ids.iter().any(|p| p == id),
    }
}

fn compute_point(
    point: &GridPoint,
    manifest: &GridManifest,
    cfg: &PipelineConfig,
    schema: &[(String, TimeScale)],
) -> Result<PointResult> {
    let series = load_series_csv(&point.series_path, manifest.units)?;
    let axis = series.axis();
    let wp = wind_power_density_series(series.u100(), cfg.air_density)?;
    let sp = series.ssrd();

    let needs_percentiles = cfg
        .metrics
        .iter()
        .any(|m| matches!(m, Metric::Uni(_, k) if k.percentile().is_some()));

    let mut cells: Vec<MetricCell> = Vec::with_capacity(schema.len());
    for &scale in &cfg.scales {
        // Values at this scale, shared by every univariate metric.
        let at_scale: std::result::Result<(Vec<f64>, Vec<f64>), String> =
            if scale == TimeScale::Hourly {
                Ok((wp.clone(), sp.to_vec()))
            } else {
                match (aggregate(&wp, axis, scale), aggregate(sp, axis, scale)) {
                    (Ok(a), Ok(b)) => Ok((a.values, b.values)),
                    (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                }
            };
        // One shared sort per variable covers all percentile metrics.
        let sorted: Option<(Vec<f64>, Vec<f64>)> = match (&at_scale, needs_percentiles) {
            (Ok((wp_at, sp_at)), true) => {
                let mut ws = wp_at.clone();
                let mut ss = sp_at.clone();
                ws.sort_unstable_by(f64::total_cmp);
                ss.sort_unstable_by(f64::total_cmp);
                Some((ws, ss))
            }
            _ => None,
        };

        for metric in &cfg.metrics {
            match *metric {
                Metric::Uni(var, kind) => {
                    let cell = match &at_scale {
                        Err(reason) => MetricCell::Undefined(reason.clone()),
                        Ok((wp_at, sp_at)) => {
                            if let Some(q) = kind.percentile() {
                                let (ws, ss) = sorted.as_ref().expect("sorted when needed");
                                let data = match var {
                                    Variable::Wind => ws,
                                    Variable::Solar => ss,
                                };
                                MetricCell::Value(crate::variability::quantile_sorted(
                                    data, q as f64,
                                ))
                            } else {
                                let values = match var {
                                    Variable::Wind => wp_at,
                                    Variable::Solar => sp_at,
                                };
                                uni_cell(kind, values)
                            }
                        }
                    };
                    cells.push(cell);
                }
                Metric::Joint(kind) if scale == TimeScale::Seasonal => {
                    cells.extend(seasonal_joint_cells(kind, &wp, sp, axis));
                }
                Metric::Joint(kind) => {
                    let cell = match &at_scale {
                        Err(reason) => MetricCell::Undefined(reason.clone()),
                        Ok((wp_at, sp_at)) => joint_cell(kind, wp_at, sp_at),
                    };
                    cells.push(cell);
                }
                Metric::Span(..) => {}
            }
        }
    }
    for metric in &cfg.metrics {
        if let Metric::Span(var, kind) = *metric {
            let values = match var {
                Variable::Wind => &wp,
                Variable::Solar => sp,
            };
            let cell: MetricCell = match kind {
                SpanKind::Mav => mav(values, axis).into(),
                SpanKind::Iav => iav(values, axis).into(),
                SpanKind::Mv => mv_sv(values, axis).map(|(mv, _)| mv).into(),
                SpanKind::Sv => mv_sv(values, axis).map(|(_, sv)| sv).into(),
            };
            cells.push(cell);
        }
    }
    debug_assert_eq!(cells.len(), schema.len());

    let events = event_report(&wp, sp, cfg.thresholds).map_err(|e| e.to_string());
    let energy = if wants_energy(cfg, &point.id) {
        // validate() guarantees a device when energy is selected.
        let device = cfg.device.as_ref().expect("validated config");
        Some(monthly_energy(&series, device)?)
    } else {
        None
    };

    Ok(PointResult {
        cells,
        events,
        energy,
    })
}

fn uni_cell(kind: UniKind, values: &[f64]) -> MetricCell {
    match kind {
        UniKind::Mean => {
            if values.is_empty() {
                MetricCell::Undefined("empty series".into())
            } else {
                MetricCell::Value(mean(values))
            }
        }
        UniKind::Cv => cv(values).into(),
        UniKind::Rcv => rcv(values).into(),
        _ => unreachable!("percentile kinds are computed from the shared sort"),
    }
}

fn joint_cell(kind: JointKind, x: &[f64], y: &[f64]) -> MetricCell {
    match kind {
        JointKind::Jcv => jcv(x, y).into(),
        JointKind::Pearson => pearson(x, y).into(),
        JointKind::Kendall => kendall_tau(x, y).into(),
        JointKind::Cmed => r_cmed(x, y).into(),
    }
}

/// One cell per season, DJF..SON, for a joint metric at the seasonal scale.
fn seasonal_joint_cells(
    kind: JointKind,
    wp: &[f64],
    sp: &[f64],
    axis: &crate::series::TimeAxis,
) -> Vec<MetricCell> {
    let pairs = match (seasonal_yearly_means(wp, axis), seasonal_yearly_means(sp, axis)) {
        (Ok(a), Ok(b)) => Some((a, b)),
        _ => None,
    };
    Season::ALL
        .iter()
        .map(|season| match &pairs {
            None => MetricCell::Undefined("no complete season in axis".into()),
            Some((wp_seasons, sp_seasons)) => {
                match (wp_seasons.get(season), sp_seasons.get(season)) {
                    (Some(xv), Some(yv)) if xv.len() >= 3 => {
                        let x: Vec<f64> = xv.iter().map(|&(_, v)| v).collect();
                        let y: Vec<f64> = yv.iter().map(|&(_, v)| v).collect();
                        joint_cell(kind, &x, &y)
                    }
                    (Some(xv), Some(_)) => MetricCell::Undefined(format!(
                        "only {} complete {} season(s)",
                        xv.len(),
                        season.label()
                    )),
                    _ => MetricCell::Undefined(format!(
                        "no complete {} season in axis",
                        season.label()
                    )),
                }
            }
        })
        .collect()
}

/// Run every requested computation over the manifest.
///
/// Points are processed in parallel on `cfg.workers` threads; results are
/// gathered in manifest order, so the output is identical for any worker
/// count. Per-point failures are isolated and reported, never fatal.
pub fn run(manifest: &GridManifest, cfg: &PipelineConfig) -> Result<RunOutput> {
    cfg.validate()?;
    if let EnergySelection::Points(ids) = &cfg.energy {
        for id in ids {
            if manifest.find(id).is_none() {
                return Err(Error::InvalidConfig(format!(
                    "energy point `{id}` is not in the manifest"
                )));
            }
        }
    }

    let schema = column_schema(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build worker pool: {e}")))?;

    let outcomes: Vec<PointOutcome> = pool.install(|| {
        manifest
            .points
            .par_iter()
            .map(|point| match compute_point(point, manifest, cfg, &schema) {
                Ok(result) => PointOutcome::Computed(Box::new(result)),
                Err(e) => PointOutcome::Failed(e.to_string()),
            })
            .collect()
    });

    let mut grids: Vec<MetricGrid> = schema
        .iter()
        .map(|(metric, scale)| MetricGrid {
            metric: metric.clone(),
            scale: *scale,
            cells: Vec::with_capacity(manifest.len()),
        })
        .collect();
    let mut events = Vec::with_capacity(manifest.len());
    let mut energy = Vec::with_capacity(manifest.len());
    let mut failures = Vec::new();

    for (point, outcome) in manifest.points.iter().zip(outcomes) {
        match outcome {
            PointOutcome::Computed(result) => {
                for (grid, cell) in grids.iter_mut().zip(result.cells) {
                    grid.cells.push(cell);
                }
                events.push(result.events);
                energy.push(result.energy);
            }
            PointOutcome::Failed(reason) => {
                for grid in grids.iter_mut() {
                    grid.cells.push(MetricCell::Undefined(format!(
                        "point failed: {reason}"
                    )));
                }
                events.push(Err(format!("point failed: {reason}")));
                energy.push(None);
                failures.push(PointFailure {
                    id: point.id.clone(),
                    reason,
                });
            }
        }
    }

    Ok(RunOutput {
        grids,
        events,
        energy,
        failures,
    })
}
