//! Monthly energy of an 8 MW turbine and an equally rated floating PV farm
//! at the demo sites.
//!
//! ```bash
//! cargo run --example energy_yield
//! ```

use std::path::Path;

use synergy::power::{
    monthly_energy, pv_module_temperature, pv_power, DeviceConfig, PowerCurve, PvFarmConfig,
};
use synergy::report::energy_table;
use synergy::series::{load_series_csv, UnitDecls};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    // Generic 8 MW offshore turbine, same table as examples/data/pipeline.conf.
    let curve = PowerCurve::new(
        vec![
            (4.0, 120.0),
            (5.0, 650.0),
            (6.0, 1300.0),
            (7.0, 2150.0),
            (8.0, 3200.0),
            (9.0, 4400.0),
            (10.0, 5700.0),
            (11.0, 6900.0),
            (12.0, 7700.0),
            (13.0, 8000.0),
        ],
        4.0,
        13.0,
        25.0,
        8000.0,
        105.0,
    )?;
    let device = DeviceConfig {
        power_curve: curve,
        pv: PvFarmConfig::default(),
        shear_exponent: 0.0,
    };

    // A couple of PV spot values first.
    let cfg = &device.pv;
    let t_mod = pv_module_temperature(24.0, 850.0, 6.0, cfg);
    println!(
        "G=850 W/m2, T_air=24 C, u10=6 m/s -> T_mod {:.2} C, {:.1} W/module, {:.2} MW farm\n",
        t_mod,
        pv_power(850.0, t_mod, cfg),
        cfg.n_modules as f64 * pv_power(850.0, t_mod, cfg) / 1e6
    );

    let units = UnitDecls {
        ssrd: "J_per_m2".parse()?,
        ..UnitDecls::default()
    };
    for file in ["aegean_like.csv", "levantine_like.csv"] {
        let series = load_series_csv(&data.join(file), units)?;
        let table = monthly_energy(&series, &device)?;
        // Print the last full year only, to keep the output short.
        let mut last_year = synergy::MonthlyEnergyTable::default();
        let year = table.rows.last().map(|r| r.year).unwrap_or_default();
        last_year.rows = table
            .rows
            .iter()
            .filter(|r| r.year == year)
            .copied()
            .collect();
        println!("{}", energy_table(&format!("{file}, year {year} (GWh)"), &last_year));
    }
    Ok(())
}
