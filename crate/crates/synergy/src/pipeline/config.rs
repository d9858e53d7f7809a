//! Pipeline configuration: a flat `key = value` text file.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::events::Thresholds;
use crate::power::{AirDensity, AlphaTUnit, DeviceConfig, PowerCurve, PvFarmConfig};
use crate::series::TimeScale;

use super::registry::Metric;

/// Output format of the grid run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// Long-format CSV files only.
    #[default]
    Csv,
    /// CSV plus PNG rasters (regular lat/lon grids only).
    CsvRaster,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "csv+raster" => Ok(OutputFormat::CsvRaster),
            other => Err(Error::InvalidConfig(format!(
                "unknown format `{other}` (expected csv or csv+raster)"
            ))),
        }
    }
}

/// Which manifest points get a monthly energy table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum EnergySelection {
    /// No energy output.
    #[default]
    None,
    /// Every manifest point.
    All,
    /// The listed point ids.
    Points(Vec<String>),
}

/// Everything a grid run needs besides the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub thresholds: Thresholds,
    pub air_density: AirDensity,
    pub metrics: Vec<Metric>,
    pub scales: Vec<TimeScale>,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub energy: EnergySelection,
    /// Turbine + PV farm; required only when energy output is requested.
    pub device: Option<DeviceConfig>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            thresholds: Thresholds::default(),
            air_density: AirDensity::default(),
            metrics: Metric::registry(),
            scales: TimeScale::ALL.to_vec(),
            workers: 1,
            out_dir: PathBuf::from("out"),
            format: OutputFormat::Csv,
            energy: EnergySelection::None,
            device: None,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.workers < 1 {
            return Err(Error::InvalidConfig("workers must be >= 1".into()));
        }
        if self.metrics.is_empty() {
            return Err(Error::InvalidConfig("no metrics requested".into()));
        }
        if self.scales.is_empty() {
            return Err(Error::InvalidConfig("no scales requested".into()));
        }
        if self.energy != EnergySelection::None && self.device.is_none() {
            return Err(Error::InvalidConfig(
                "energy output requested but no power curve configured \
                 (set power_curve, cut_in, rated, cut_out, rated_power_kw, hub_height_m)"
                    .into(),
            ));
        }
        if let Some(device) = &self.device {
            device.pv.validate()?;
        }
        Ok(())
    }
}

/// Temporary holder for the turbine keys while parsing.
#[derive(Default)]
struct CurveKeys {
    points: Option<Vec<(f64, f64)>>,
    cut_in: Option<f64>,
    rated: Option<f64>,
    cut_out: Option<f64>,
    rated_power_kw: Option<f64>,
    hub_height_m: Option<f64>,
}

impl CurveKeys {
    fn any_set(&self) -> bool {
        self.points.is_some()
            || self.cut_in.is_some()
            || self.rated.is_some()
            || self.cut_out.is_some()
            || self.rated_power_kw.is_some()
            || self.hub_height_m.is_some()
    }

    fn build(self) -> Result<PowerCurve> {
        let need = |name: &str| Error::InvalidConfig(format!("power curve needs `{name}`"));
        PowerCurve::new(
            self.points.ok_or_else(|| need("power_curve"))?,
            self.cut_in.ok_or_else(|| need("cut_in"))?,
            self.rated.ok_or_else(|| need("rated"))?,
            self.cut_out.ok_or_else(|| need("cut_out"))?,
            self.rated_power_kw.ok_or_else(|| need("rated_power_kw"))?,
            self.hub_height_m.ok_or_else(|| need("hub_height_m"))?,
        )
    }
}

/// Parse `speed:power, speed:power, ...` pairs (m/s : kW).
fn parse_curve_points(value: &str) -> Result<Vec<(f64, f64)>> {
    value
        .split(',')
        .map(|pair| {
            let (s, p) = pair.trim().split_once(':').ok_or_else(|| {
                Error::InvalidConfig(format!("bad power_curve entry `{pair}` (want speed:power)"))
            })?;
            let speed: f64 = s.trim().parse().map_err(|e| {
                Error::InvalidConfig(format!("bad power_curve speed `{s}`: {e}"))
            })?;
            let power: f64 = p.trim().parse().map_err(|e| {
                Error::InvalidConfig(format!("bad power_curve power `{p}`: {e}"))
            })?;
            Ok((speed, power))
        })
        .collect()
}

/// Parse a pipeline config file.
///
/// Lines are `key = value`; blank lines and `#` comments are skipped; every
/// key is optional and unknown keys are errors. See the crate README for the
/// full key list and the provenance of each default.
pub fn load_config(path: &Path) -> Result<PipelineConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, path)
}

fn parse_config(text: &str, path: &Path) -> Result<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    let mut curve = CurveKeys::default();
    let mut pv = PvFarmConfig::default();
    let mut shear_exponent = 0.0f64;

    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| Error::Malformed {
            path: path.to_path_buf(),
            line: i + 1,
            msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| at(format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let fnum = |name: &str| -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|e| at(format!("bad {name} `{value}`: {e}")))
        };

        match key {
            "wp_threshold" => cfg.thresholds.wp_l = fnum("wp_threshold")?,
            "sp_threshold" => cfg.thresholds.sp_l = fnum("sp_threshold")?,
            "air_density" => cfg.air_density = AirDensity::new(fnum("air_density")?)?,
            "shear_exponent" => shear_exponent = fnum("shear_exponent")?,
            "workers" => {
                cfg.workers = value
                    .parse::<usize>()
                    .map_err(|e| at(format!("bad workers `{value}`: {e}")))?;
            }
            "out_dir" => cfg.out_dir = PathBuf::from(value),
            "format" => cfg.format = value.parse()?,
            "metrics" => {
                cfg.metrics = if value == "all" {
                    Metric::registry()
                } else {
                    value
                        .split(',')
                        .map(|m| m.parse::<Metric>())
                        .collect::<Result<Vec<_>>>()?
                };
            }
            "scales" => {
                cfg.scales = if value == "all" {
                    TimeScale::ALL.to_vec()
                } else {
                    value
                        .split(',')
                        .map(|s| s.parse::<TimeScale>())
                        .collect::<Result<Vec<_>>>()?
                };
            }
            "energy_points" => {
                cfg.energy = if value == "all" {
                    EnergySelection::All
                } else if value.is_empty() {
                    EnergySelection::None
                } else {
                    EnergySelection::Points(
                        value.split(',').map(|s| s.trim().to_string()).collect(),
                    )
                };
            }
            "power_curve" => curve.points = Some(parse_curve_points(value)?),
            "cut_in" => curve.cut_in = Some(fnum("cut_in")?),
            "rated" => curve.rated = Some(fnum("rated")?),
            "cut_out" => curve.cut_out = Some(fnum("cut_out")?),
            "rated_power_kw" => curve.rated_power_kw = Some(fnum("rated_power_kw")?),
            "hub_height_m" => curve.hub_height_m = Some(fnum("hub_height_m")?),
            "pv_p_stc_w" => pv.p_stc_w = fnum("pv_p_stc_w")?,
            "pv_alpha_t" => pv.alpha_t = fnum("pv_alpha_t")?,
            "pv_alpha_t_unit" => {
                pv.alpha_t_unit = match value {
                    "percent" => AlphaTUnit::PercentPerC,
                    "fraction" => AlphaTUnit::FractionPerC,
                    other => {
                        return Err(at(format!(
                            "unknown pv_alpha_t_unit `{other}` (percent or fraction)"
                        )))
                    }
                };
            }
            "pv_eta" => pv.eta = fnum("pv_eta")?,
            "pv_n_modules" => {
                pv.n_modules = value
                    .parse::<u32>()
                    .map_err(|e| at(format!("bad pv_n_modules `{value}`: {e}")))?;
            }
            "pv_c0" => pv.c0 = fnum("pv_c0")?,
            "pv_c1" => pv.c1 = fnum("pv_c1")?,
            "pv_c2" => pv.c2 = fnum("pv_c2")?,
            "pv_c3" => pv.c3 = fnum("pv_c3")?,
            other => return Err(at(format!("unknown config key `{other}`"))),
        }
    }

    if curve.any_set() {
        cfg.device = Some(DeviceConfig {
            power_curve: curve.build()?,
            pv,
            shear_exponent,
        });
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn parse(text: &str) -> Result<PipelineConfig> {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pipeline.conf");
        let mut f = std::fs::File::create(&path).unwrap();
        write!(f, "{text}").unwrap();
        load_config(&path)
    }

    #[test]
    fn defaults_match_the_documented_values() {
        let cfg = parse("").unwrap();
        assert_eq!(cfg.thresholds.wp_l, 280.0);
        assert_eq!(cfg.thresholds.sp_l, 125.0);
        assert_eq!(cfg.air_density.value(), 1.2258);
        assert_eq!(cfg.workers, 1);
        assert_eq!(cfg.metrics.len(), Metric::registry().len());
        assert!(cfg.device.is_none());
    }

    #[test]
    fn parses_a_full_config() {
        let cfg = parse(
            "# comment\n\
             wp_threshold = 300\n\
             sp_threshold = 110\n\
             air_density = 1.225\n\
             shear_exponent = 0.11\n\
             metrics = wp_mean,sp_rcv,jcv,pearson\n\
             scales = annual,seasonal\n\
             workers = 8\n\
             out_dir = results\n\
             format = csv+raster\n\
             energy_points = P1,P2\n\
             power_curve = 4:100, 13:8000\n\
             cut_in = 4\n\
             rated = 13\n\
             cut_out = 25\n\
             rated_power_kw = 8000\n\
             hub_height_m = 105\n\
             pv_alpha_t = -0.041\n\
             pv_alpha_t_unit = fraction\n",
        )
        .unwrap();
        assert_eq!(cfg.thresholds.wp_l, 300.0);
        assert_eq!(cfg.air_density.value(), 1.225);
        assert_eq!(cfg.metrics.len(), 4);
        assert_eq!(cfg.scales, vec![TimeScale::Annual, TimeScale::Seasonal]);
        assert_eq!(cfg.format, OutputFormat::CsvRaster);
        assert_eq!(
            cfg.energy,
            EnergySelection::Points(vec!["P1".into(), "P2".into()])
        );
        let device = cfg.device.unwrap();
        assert_eq!(device.shear_exponent, 0.11);
        assert_eq!(device.power_curve.rated_power_kw, 8000.0);
        assert_eq!(device.pv.alpha_t_fraction(), -0.041);
    }

    #[test]
    fn unknown_keys_and_metrics_are_rejected() {
        let err = parse("frobnicate = 1\n").unwrap_err();
        assert!(err.to_string().contains("unknown config key"), "{err}");
        let err = parse("metrics = wp_mean,bogus\n").unwrap_err();
        assert!(err.to_string().contains("unknown metric"), "{err}");
    }

    #[test]
    fn energy_without_curve_is_rejected() {
        let err = parse("energy_points = P1\n").unwrap_err();
        assert!(err.to_string().contains("no power curve"), "{err}");
    }

    #[test]
    fn incomplete_curve_is_rejected() {
        let err = parse("power_curve = 4:100, 13:8000\ncut_in = 4\n").unwrap_err();
        assert!(err.to_string().contains("power curve needs"), "{err}");
    }
}
