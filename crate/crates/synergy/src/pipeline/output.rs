//! Result persistence: long-format CSVs and optional PNG rasters.
//!
//! Data files carry no timestamps, so identical runs are byte-identical;
//! wall-clock information goes to `run.log` only.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::events::EventReport;
use crate::variability::MetricCell;

use super::config::{OutputFormat, PipelineConfig};
use super::manifest::GridManifest;
use super::{MetricGrid, RunOutput};

/// Render a float the shortest way that round-trips.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn status_of(cell: &MetricCell) -> (String, String) {
    match cell {
        MetricCell::Value(v) => (fmt_f64(*v), "ok".to_string()),
        MetricCell::Undefined(reason) => {
            (String::new(), format!("undefined:{}", sanitize(reason)))
        }
    }
}

/// Keep status reasons CSV-safe on one line.
fn sanitize(reason: &str) -> String {
    reason
        .chars()
        .map(|c| match c {
            ',' => ';',
            '\n' | '\r' => ' ',
            c => c,
        })
        .collect()
}

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    Ok(std::io::BufWriter::new(
        std::fs::File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

/// Append one grid's rows (`point_id,lat,lon,metric,scale,value,status`) to a writer.
pub fn append_metric_rows<W: Write>(
    grid: &MetricGrid,
    manifest: &GridManifest,
    w: &mut W,
) -> Result<()> {
    for (point, cell) in manifest.points.iter().zip(&grid.cells) {
        let (value, status) = status_of(cell);
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            point.id,
            fmt_f64(point.lat),
            fmt_f64(point.lon),
            grid.metric,
            grid.scale,
            value,
            status
        )
        .map_err(|e| Error::io("<metric rows>", e))?;
    }
    Ok(())
}

/// Files produced by rasterizing one grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterFiles {
    pub image: PathBuf,
    pub legend: PathBuf,
}

/// Regular lat/lon raster layout of a manifest, if it has one.
struct RasterLayout {
    /// Latitudes, north to south (image rows).
    lats: Vec<f64>,
    /// Longitudes, west to east (image columns).
    lons: Vec<f64>,
    /// Manifest point index -> (row, col).
    placement: Vec<(usize, usize)>,
}

fn raster_layout(manifest: &GridManifest) -> Option<RasterLayout> {
    let mut lats: Vec<f64> = Vec::new();
    let mut lons: Vec<f64> = Vec::new();
    for p in &manifest.points {
        if !lats.contains(&p.lat) {
            lats.push(p.lat);
        }
        if !lons.contains(&p.lon) {
            lons.push(p.lon);
        }
    }
    if lats.len() * lons.len() != manifest.len() {
        return None;
    }
    lats.sort_unstable_by(|a, b| b.total_cmp(a)); // north up
    lons.sort_unstable_by(|a, b| a.total_cmp(b));

    let row_of: HashMap<u64, usize> =
        lats.iter().enumerate().map(|(i, v)| (v.to_bits(), i)).collect();
    let col_of: HashMap<u64, usize> =
        lons.iter().enumerate().map(|(i, v)| (v.to_bits(), i)).collect();

    let mut seen = vec![false; manifest.len()];
    let mut placement = Vec::with_capacity(manifest.len());
    for p in &manifest.points {
        let row = *row_of.get(&p.lat.to_bits())?;
        let col = *col_of.get(&p.lon.to_bits())?;
        let slot = row * lons.len() + col;
        if seen[slot] {
            return None; // duplicate cell
        }
        seen[slot] = true;
        placement.push((row, col));
    }
    Some(RasterLayout {
        lats,
        lons,
        placement,
    })
}

/// Grayscale ramp for defined cells; undefined cells are red.
const UNDEFINED_COLOR: [u8; 3] = [255, 0, 0];

/// Rasterize one grid to `maps/<metric>_<scale>.png` plus a legend sidecar.
///
/// Returns `Ok(None)` when the manifest points do not form a regular lat/lon
/// grid (CSV output still covers them). Values map linearly onto black..white
/// between the grid's min and max; undefined cells render red.
pub fn write_metric_grid(
    grid: &MetricGrid,
    manifest: &GridManifest,
    maps_dir: &Path,
) -> Result<Option<RasterFiles>> {
    let Some(layout) = raster_layout(manifest) else {
        return Ok(None);
    };
    std::fs::create_dir_all(maps_dir).map_err(|e| Error::io(maps_dir, e))?;

    let defined: Vec<f64> = grid.cells.iter().filter_map(|c| c.value()).collect();
    let (min, max) = defined.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY),
        |(lo, hi), &v| (lo.min(v), hi.max(v)),
    );

    let width = layout.lons.len() as u32;
    let height = layout.lats.len() as u32;
    let mut image = image::RgbImage::from_pixel(width, height, image::Rgb(UNDEFINED_COLOR));
    for (point_idx, &(row, col)) in layout.placement.iter().enumerate() {
        if let Some(v) = grid.cells[point_idx].value() {
            let gray = if max > min {
                ((v - min) / (max - min) * 255.0).round().clamp(0.0, 255.0) as u8
            } else {
                128
            };
            image.put_pixel(col as u32, row as u32, image::Rgb([gray, gray, gray]));
        }
    }

    let stem = format!("{}_{}", grid.metric, grid.scale);
    let image_path = maps_dir.join(format!("{stem}.png"));
    image
        .save(&image_path)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", image_path.display())))?;

    let mut legend = String::new();
    let _ = writeln!(legend, "metric: {}", grid.metric);
    let _ = writeln!(legend, "scale: {}", grid.scale);
    if defined.is_empty() {
        let _ = writeln!(legend, "values: none defined (image is all red)");
    } else {
        let _ = writeln!(legend, "min: {} (black)", fmt_f64(min));
        let _ = writeln!(legend, "max: {} (white)", fmt_f64(max));
        let _ = writeln!(legend, "scaling: linear grayscale between min and max");
    }
    let _ = writeln!(legend, "undefined: red (255,0,0)");
    let _ = writeln!(
        legend,
        "rows: latitude {} (north, top) to {} (south, bottom)",
        fmt_f64(layout.lats[0]),
        fmt_f64(*layout.lats.last().unwrap())
    );
    let _ = writeln!(
        legend,
        "cols: longitude {} (west, left) to {} (east, right)",
        fmt_f64(layout.lons[0]),
        fmt_f64(*layout.lons.last().unwrap())
    );
    let legend_path = maps_dir.join(format!("{stem}.legend.txt"));
    std::fs::write(&legend_path, legend).map_err(|e| Error::io(&legend_path, e))?;

    Ok(Some(RasterFiles {
        image: image_path,
        legend: legend_path,
    }))
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

const EVENTS_HEADER: &str = "point_id,lat,lon,status,hours,wp_l,sp_l,wcs,scw,uws,both_available,sws,\
eligible_wind,eligible_solar,d_nw_runs,d_nw_mean_h,d_nw_max_h,\
d_ns_runs,d_ns_mean_h,d_ns_max_h,d_joint_runs,d_joint_mean_h,d_joint_max_h";

fn event_row(
    point: &super::manifest::GridPoint,
    report: &std::result::Result<EventReport, String>,
) -> String {
    let head = format!("{},{},{}", point.id, fmt_f64(point.lat), fmt_f64(point.lon));
    match report {
        Err(reason) => format!("{head},undefined:{},{}", sanitize(reason), ",".repeat(18)),
        Ok(r) => {
            let idx = &r.indices;
            let dur = |stats: Option<crate::events::RunStats>| -> String {
                match stats {
                    None => ",,".to_string(),
                    Some(s) => format!(
                        "{},{},{}",
                        s.runs,
                        opt_f64(s.mean_hours),
                        opt(s.max_hours)
                    ),
                }
            };
            format!(
                "{head},ok,{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.hours,
                fmt_f64(r.thresholds.wp_l),
                fmt_f64(r.thresholds.sp_l),
                fmt_f64(idx.wcs),
                fmt_f64(idx.scw),
                fmt_f64(idx.uws),
                fmt_f64(idx.both_available),
                fmt_f64(idx.sws),
                r.eligible_wind,
                r.eligible_solar,
                dur(r.durations.no_wind),
                dur(r.durations.no_solar),
                dur(r.durations.joint),
            )
        }
    }
}

/// Write `metrics.csv` (long format, one row per point x metric x scale).
pub fn write_metrics_csv(
    output: &RunOutput,
    manifest: &GridManifest,
    cfg: &PipelineConfig,
) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let path = cfg.out_dir.join("metrics.csv");
    let mut w = create(&path)?;
    writeln!(w, "point_id,lat,lon,metric,scale,value,status").map_err(|e| Error::io(&path, e))?;
    for grid in &output.grids {
        append_metric_rows(grid, manifest, &mut w)?;
    }
    Ok(path)
}

/// Write `events.csv` (one row per manifest point).
pub fn write_events_csv(
    output: &RunOutput,
    manifest: &GridManifest,
    cfg: &PipelineConfig,
) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let path = cfg.out_dir.join("events.csv");
    let mut w = create(&path)?;
    writeln!(w, "{EVENTS_HEADER}").map_err(|e| Error::io(&path, e))?;
    for (point, report) in manifest.points.iter().zip(&output.events) {
        writeln!(w, "{}", event_row(point, report)).map_err(|e| Error::io(&path, e))?;
    }
    Ok(path)
}

/// Write `energy.csv` (one row per month for each selected point).
pub fn write_energy_csv(
    output: &RunOutput,
    manifest: &GridManifest,
    cfg: &PipelineConfig,
) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::io(&cfg.out_dir, e))?;
    let path = cfg.out_dir.join("energy.csv");
    let mut w = create(&path)?;
    writeln!(w, "point_id,year,month,wind_gwh,solar_gwh,combined_gwh,complete")
        .map_err(|e| Error::io(&path, e))?;
    for (point, table) in manifest.points.iter().zip(&output.energy) {
        let Some(table) = table else { continue };
        for row in &table.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                point.id,
                row.year,
                row.month,
                fmt_f64(row.wind_gwh),
                fmt_f64(row.solar_gwh),
                fmt_f64(row.combined_gwh),
                row.complete
            )
            .map_err(|e| Error::io(&path, e))?;
        }
    }
    Ok(path)
}

/// Rasterize every grid into `<out_dir>/maps/` (regular grids only).
pub fn write_maps(
    output: &RunOutput,
    manifest: &GridManifest,
    cfg: &PipelineConfig,
) -> Result<Vec<PathBuf>> {
    let maps_dir = cfg.out_dir.join("maps");
    let mut written = Vec::new();
    for grid in &output.grids {
        if let Some(files) = write_metric_grid(grid, manifest, &maps_dir)? {
            written.push(files.image);
            written.push(files.legend);
        }
    }
    Ok(written)
}

/// Write `metrics.csv`, `events.csv`, `energy.csv`, and (for `csv+raster`)
/// `maps/` under `cfg.out_dir`. Returns the paths written.
pub fn write_outputs(
    output: &RunOutput,
    manifest: &GridManifest,
    cfg: &PipelineConfig,
) -> Result<Vec<PathBuf>> {
    let mut written = vec![
        write_metrics_csv(output, manifest, cfg)?,
        write_events_csv(output, manifest, cfg)?,
        write_energy_csv(output, manifest, cfg)?,
    ];
    if cfg.format == OutputFormat::CsvRaster {
        written.extend(write_maps(output, manifest, cfg)?);
    }
    Ok(written)
}
