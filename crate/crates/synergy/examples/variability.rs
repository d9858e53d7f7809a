//! Univariate variability metrics on the demo site, and why the robust
//! coefficient of variation earns its name.
//!
//! ```bash
//! cargo run --example variability
//! ```

use std::path::Path;

use synergy::power::{wind_power_density_series, AirDensity};
use synergy::report::variability_table;
use synergy::series::{load_series_csv, TimeScale, UnitDecls};
use synergy::variability::{cv, rcv, summarize};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let series = load_series_csv(
        &data.join("levantine_like.csv"),
        UnitDecls::default(),
    )?;
    let wp = wind_power_density_series(series.u100(), AirDensity::default())?;

    // Per-scale summaries of the wind power density.
    let summaries: Vec<_> = [TimeScale::Hourly, TimeScale::Monthly, TimeScale::Annual]
        .into_iter()
        .map(|scale| summarize(&wp, series.axis(), scale))
        .collect::<Result<_, _>>()?;
    println!("{}", variability_table("LEV wind power density (W/m2)", &summaries));

    // Robustness: wreck the top 1% of the hourly values and watch cv blow up
    // while rcv barely moves.
    let mut contaminated = wp.clone();
    let mut order: Vec<usize> = (0..wp.len()).collect();
    order.sort_unstable_by(|&a, &b| wp[a].total_cmp(&wp[b]));
    for &i in order.iter().rev().take(wp.len() / 100) {
        contaminated[i] *= 100.0;
    }
    println!("hourly cv   clean {:>8.4}   contaminated {:>8.4}", cv(&wp)?, cv(&contaminated)?);
    println!("hourly rcv  clean {:>8.4}   contaminated {:>8.4}", rcv(&wp)?, rcv(&contaminated)?);
    Ok(())
}
