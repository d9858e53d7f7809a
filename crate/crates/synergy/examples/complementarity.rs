//! Event-based complementarity: availability thresholds, the four indices,
//! and persistence of below-threshold stretches.
//!
//! ```bash
//! cargo run --example complementarity
//! ```

use std::path::Path;

use synergy::events::{classify_events, event_report, indices, Thresholds};
use synergy::power::{wind_power_density_series, AirDensity};
use synergy::report::event_table;
use synergy::series::{load_series_csv, UnitDecls};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let manifest_units = UnitDecls {
        ssrd: "J_per_m2".parse()?,
        ..UnitDecls::default()
    };

    for file in ["aegean_like.csv", "levantine_like.csv"] {
        let series = load_series_csv(&data.join(file), manifest_units)?;
        let wp = wind_power_density_series(series.u100(), AirDensity::default())?;
        let report = event_report(&wp, series.ssrd(), Thresholds::default())?;
        println!("{}", event_table(file, &report));
    }

    // How the synergy index responds to the wind threshold.
    let series = load_series_csv(&data.join("aegean_like.csv"), manifest_units)?;
    let wp = wind_power_density_series(series.u100(), AirDensity::default())?;
    println!("AEG synergy (SWS) across wind thresholds:");
    for wp_l in [100.0, 200.0, 280.0, 400.0, 600.0] {
        let th = Thresholds::new(wp_l, 125.0)?;
        let idx = indices(&classify_events(&wp, series.ssrd(), th)?)?;
        println!(
            "  wp_l {wp_l:>5.0} W/m2  wcs {:.3}  scw {:.3}  uws {:.3}  sws {:.3}",
            idx.wcs, idx.scw, idx.uws, idx.sws
        );
    }
    Ok(())
}
