//! Grid manifest: the list of points and their series files.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::series::UnitDecls;

/// One grid point of the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub id: String,
    pub lat: f64,
    pub lon: f64,
    /// Resolved path of the per-point series CSV.
    pub series_path: PathBuf,
}

/// A validated grid manifest.
///
/// File format: optional `# key: value` lines declaring column units
/// (`ssrd_units`, `t2m_units`), then CSV rows under the header
/// `point_id,lat,lon,series_path`. Relative series paths resolve against the
/// manifest's directory.
#[derive(Debug, Clone, PartialEq)]
pub struct GridManifest {
    pub points: Vec<GridPoint>,
    pub units: UnitDecls,
}

impl GridManifest {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn find(&self, id: &str) -> Option<&GridPoint> {
        self.points.iter().find(|p| p.id == id)
    }
}

const MANIFEST_HEADER: [&str; 4] = ["point_id", "lat", "lon", "series_path"];

/// Load and validate a grid manifest.
///
/// Rejects empty manifests, duplicate point ids, out-of-range coordinates,
/// and malformed rows (with their line number). Missing series files are all
/// collected into a single error.
pub fn load_manifest(path: &Path) -> Result<GridManifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));

    // Leading `# key: value` block.
    let mut units = UnitDecls::default();
    let mut offset = 0usize;
    let mut header_lines = 0usize;
    for line in text.lines() {
        if !line.starts_with('#') {
            break;
        }
        let body = line.trim_start_matches('#').trim();
        if let Some((key, value)) = body.split_once(':') {
            match key.trim() {
                "ssrd_units" => units.ssrd = value.trim().parse()?,
                "t2m_units" => units.t2m = value.trim().parse()?,
                _ => {}
            }
        }
        offset += line.len() + 1;
        header_lines += 1;
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(&text.as_bytes()[offset.min(text.len())..]);

    {
        let headers = reader.headers().map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line: header_lines + 1,
            msg: e.to_string(),
        })?;
        let got: Vec<&str> = headers.iter().collect();
        if got != MANIFEST_HEADER {
            return Err(Error::Malformed {
                path: path.to_path_buf(),
                line: header_lines + 1,
                msg: format!(
                    "bad header `{}` (expected `{}`)",
                    got.join(","),
                    MANIFEST_HEADER.join(",")
                ),
            });
        }
    }

    let mut points: Vec<GridPoint> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = header_lines + i + 2;
        let malformed = |msg: String| Error::Malformed {
            path: path.to_path_buf(),
            line,
            msg,
        };
        let record = record.map_err(|e| malformed(e.to_string()))?;
        if record.len() != 4 {
            return Err(malformed(format!("expected 4 fields, got {}", record.len())));
        }
        let id = record[0].to_string();
        if id.is_empty() {
            return Err(malformed("empty point_id".into()));
        }
        if id.contains(',') || id.contains('"') || id.contains('\n') {
            return Err(malformed(format!("point_id `{id}` contains CSV metacharacters")));
        }
        let lat: f64 = record[1]
            .parse()
            .map_err(|e| malformed(format!("bad lat `{}`: {e}", &record[1])))?;
        let lon: f64 = record[2]
            .parse()
            .map_err(|e| malformed(format!("bad lon `{}`: {e}", &record[2])))?;
        if !(-90.0..=90.0).contains(&lat) {
            return Err(malformed(format!("lat {lat} out of [-90, 90]")));
        }
        if !(-180.0..=180.0).contains(&lon) {
            return Err(malformed(format!("lon {lon} out of [-180, 180]")));
        }
        if record[3].is_empty() {
            return Err(malformed("empty series_path".into()));
        }
        let series_path = base.join(&record[3]);
        if let Some(previous) = points.iter().find(|p| p.id == id) {
            return Err(malformed(format!(
                "duplicate point_id `{}` (first used for {})",
                id,
                previous.series_path.display()
            )));
        }
        points.push(GridPoint {
            id,
            lat,
            lon,
            series_path,
        });
    }

    if points.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{}: no points in manifest",
            path.display()
        )));
    }

    let missing: Vec<PathBuf> = points
        .iter()
        .filter(|p| !p.series_path.is_file())
        .map(|p| p.series_path.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingSeries(missing));
    }

    Ok(GridManifest { points, units })
}
