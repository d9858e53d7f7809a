//! Regenerates the demo grid under `examples/data/` (two sites, three years
//! of synthetic hourly weather, a manifest, and a pipeline config).
//!
//! The output is deterministic, so running this leaves the committed files
//! unchanged.
//!
//! ```bash
//! cargo run --example generate_demo_data
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Site {
    file: &'static str,
    seed: u64,
    /// Mean 100 m wind speed, m/s.
    wind_base: f64,
    /// Seasonal wind swing: positive = windier winters.
    wind_seasonal: f64,
    /// Clear-sky noon irradiance scale, W/m².
    sun_peak: f64,
    mean_temp: f64,
    /// Write irradiance as hourly-accumulated J/m² (the manifest default)
    /// instead of the W/m² sidecar override.
    accumulated_ssrd: bool,
    /// Write temperature in Kelvin with a sidecar declaration.
    kelvin: bool,
}

// Dec 2000 through Dec 2003: the leading December completes the first DJF
// season, so all four seasons reach three yearly values.
const HOURS: usize = 744 + 3 * 8760;
const SITES: [Site; 2] = [
    Site {
        file: "aegean_like.csv",
        seed: 2001,
        wind_base: 8.4,
        wind_seasonal: 1.6,
        sun_peak: 870.0,
        mean_temp: 18.0,
        accumulated_ssrd: true,
        kelvin: false,
    },
    Site {
        file: "levantine_like.csv",
        seed: 2002,
        wind_base: 6.1,
        wind_seasonal: 1.1,
        sun_peak: 960.0,
        mean_temp: 21.0,
        accumulated_ssrd: false,
        kelvin: true,
    },
];

fn synth_site(site: &Site) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(site.seed);
    let mut out = String::with_capacity(HOURS * 48);
    if !site.accumulated_ssrd {
        out.push_str("# ssrd_units: W_per_m2\n");
    }
    if site.kelvin {
        out.push_str("# t2m_units: K\n");
    }
    out.push_str("timestamp,u100,ssrd,t2m,u10\n");

    let start = chrono::NaiveDate::from_ymd_opt(2000, 12, 1)
        .unwrap()
        .and_hms_opt(0, 0, 0)
        .unwrap()
        .and_utc();
    let mut gust = 0.0f64; // AR(1) wind anomaly
    let mut cloud = 0.7f64; // slowly varying clearness
    for h in 0..HOURS {
        let ts = start + chrono::Duration::hours(h as i64);
        let doy = chrono::Datelike::ordinal0(&ts) as f64;
        let annual = 2.0 * std::f64::consts::PI * doy / 365.0;
        let hod = h % 24;

        gust = 0.95 * gust + 0.6 * (rng.random::<f64>() - 0.5);
        let u100 = (site.wind_base + site.wind_seasonal * annual.cos() + 3.0 * gust).max(0.0);

        cloud = (0.98 * cloud + 0.02 * rng.random::<f64>() + 0.01 * (rng.random::<f64>() - 0.5))
            .clamp(0.25, 1.0);
        let daylight = if (6..18).contains(&hod) {
            ((hod as f64 - 6.0) / 12.0 * std::f64::consts::PI).sin()
        } else {
            0.0
        };
        let season_sun = 1.0 - 0.38 * annual.cos(); // weaker winter sun
        let ssrd_w = site.sun_peak * daylight * season_sun * cloud;

        let t2m_c = site.mean_temp - 6.5 * annual.cos() + 3.5 * daylight
            + 0.8 * (rng.random::<f64>() - 0.5);

        let ssrd = if site.accumulated_ssrd {
            ssrd_w * 3600.0
        } else {
            ssrd_w
        };
        let t2m = if site.kelvin { t2m_c + 273.15 } else { t2m_c };
        let _ = writeln!(
            out,
            "{},{:.3},{:.3},{:.3},{:.3}",
            ts.format("%Y-%m-%dT%H:%M:%SZ"),
            u100,
            ssrd,
            t2m,
            0.75 * u100
        );
    }
    out
}

const MANIFEST: &str = "\
# ssrd_units: J_per_m2
# t2m_units: C
point_id,lat,lon,series_path
AEG,37.5,25.0,aegean_like.csv
LEV,33.5,33.0,levantine_like.csv
";

const CONFIG: &str = "\
# Demo pipeline configuration. Run `synergy --help` for every key and default.
wp_threshold = 280
sp_threshold = 125
air_density = 1.2258
shear_exponent = 0.0
metrics = all
scales = hourly,monthly,seasonal,annual
workers = 2
out_dir = out
format = csv
energy_points = all

# Generic 8 MW offshore turbine (speed m/s : power kW)
power_curve = 4:120, 5:650, 6:1300, 7:2150, 8:3200, 9:4400, 10:5700, 11:6900, 12:7700, 13:8000
cut_in = 4
rated = 13
cut_out = 25
rated_power_kw = 8000
hub_height_m = 105

# 8 MW floating PV farm of 220 W modules
pv_p_stc_w = 220
pv_alpha_t = -0.41
pv_alpha_t_unit = percent
pv_eta = 0.85
pv_n_modules = 36364
";

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data")
}

fn main() -> std::io::Result<()> {
    let dir = data_dir();
    std::fs::create_dir_all(&dir)?;
    for site in &SITES {
        let path = dir.join(site.file);
        std::fs::write(&path, synth_site(site))?;
        println!("wrote {}", path.display());
    }
    std::fs::write(dir.join("manifest.csv"), MANIFEST)?;
    std::fs::write(dir.join("pipeline.conf"), CONFIG)?;
    println!("wrote {}", dir.join("manifest.csv").display());
    println!("wrote {}", dir.join("pipeline.conf").display());
    Ok(())
}
