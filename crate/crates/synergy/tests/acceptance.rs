//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (visible with `cargo test --test acceptance -- --nocapture`).

use std::path::Path;
use std::time::Instant;

use chrono::TimeZone;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use synergy::association::{kendall_tau, pearson, r_cmed, tau_b_from_counts};
use synergy::events::{durations, indices, EventFlags};
use synergy::pipeline::{self, load_manifest, EnergySelection, OutputFormat, PipelineConfig};
use synergy::power::{
    farm_pv_power, mean_power_density, monthly_energy, pv_module_temperature, pv_power,
    wind_power_density_series, AirDensity, DeviceConfig, PowerCurve, PvFarmConfig,
};
use synergy::series::{ResourceSeries, TimeAxis, TimeScale};
use synergy::variability::{cv, iav, jcv, mav, mv_sv, rcv};

fn axis_years(start_year: i32, years: usize) -> TimeAxis {
    let start = chrono::Utc
        .with_ymd_and_hms(start_year, 1, 1, 0, 0, 0)
        .unwrap();
    let end = chrono::Utc
        .with_ymd_and_hms(start_year + years as i32, 1, 1, 0, 0, 0)
        .unwrap();
    TimeAxis::new(start, (end - start).num_hours() as usize).unwrap()
}

/// Inverse-transform Rayleigh sample with the given mean.
fn rayleigh_with_mean(mean: f64, rng: &mut ChaCha8Rng) -> f64 {
    let sigma = mean / (std::f64::consts::PI / 2.0).sqrt();
    let u: f64 = rng.random::<f64>();
    sigma * (-2.0 * (1.0 - u).max(1e-300).ln()).sqrt()
}

#[test]
fn criterion_01_rayleigh_closed_form_mean_power() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let speeds: Vec<f64> = (0..1_000_000)
        .map(|_| rayleigh_with_mean(6.2, &mut rng))
        .collect();
    let wpd = wind_power_density_series(&speeds, AirDensity::STANDARD).unwrap();
    let mean = mean_power_density(&wpd).unwrap();
    let elapsed = started.elapsed();

    assert!(
        (mean - 280.0).abs() <= 6.0,
        "sample-mean wind power density {mean} W/m2 outside 280 +/- 6"
    );
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, budget 5 s");
    println!(
        "[PASS] criterion 1: 1e6 Rayleigh samples (mean 6.2 m/s, rho 1.225) -> \
         mean WPD {mean:.2} W/m2 in 280 +/- 6, {:.0} ms",
        elapsed.as_millis()
    );
}

/// O(n²) tau-b oracle sharing only the final-count formula with the library.
fn kendall_brute(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    let mut con = 0i64;
    let mut dis = 0i64;
    let mut tied_x = 0u64;
    let mut tied_y = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i] - x[j];
            let dy = y[i] - y[j];
            if dx == 0.0 {
                tied_x += 1;
            }
            if dy == 0.0 {
                tied_y += 1;
            }
            if dx != 0.0 && dy != 0.0 {
                if dx.signum() == dy.signum() {
                    con += 1;
                } else {
                    dis += 1;
                }
            }
        }
    }
    let total = (n as u64) * (n as u64 - 1) / 2;
    let nx = total - tied_x;
    let ny = total - tied_y;
    if nx == 0 || ny == 0 {
        return None;
    }
    Some(tau_b_from_counts(con - dis, nx, ny))
}

#[test]
fn criterion_02_kendall_tau_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut checked = 0usize;
    for case in 0..1000 {
        let n = rng.random_range(3usize..=200);
        let (x, y): (Vec<f64>, Vec<f64>) = if case % 2 == 0 {
            // Continuous draws: ties are essentially impossible.
            (
                (0..n).map(|_| rng.random_range(-10.0..10.0)).collect(),
                (0..n).map(|_| rng.random_range(-10.0..10.0)).collect(),
            )
        } else {
            // Coarse integer grid: ties everywhere.
            (
                (0..n).map(|_| rng.random_range(0i32..8) as f64).collect(),
                (0..n).map(|_| rng.random_range(0i32..8) as f64).collect(),
            )
        };
        match (kendall_tau(&x, &y), kendall_brute(&x, &y)) {
            (Ok(fast), Some(brute)) => {
                assert_eq!(fast, brute, "case {case} n={n}: {fast} vs {brute}");
                checked += 1;
            }
            (Err(_), None) => {}
            (fast, brute) => panic!("case {case}: disagreement {fast:?} vs {brute:?}"),
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, budget 30 s");
    println!(
        "[PASS] criterion 2: merge-sort tau-b == O(n^2) oracle exactly on {checked} of 1000 \
         random instances (rest all-tied on both sides), {:.0} ms",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_03_event_index_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for case in 0..1000 {
        let n = rng.random_range(1usize..2000);
        let flags = EventFlags {
            wind_on: (0..n).map(|_| rng.random()).collect(),
            solar_on: (0..n).map(|_| rng.random()).collect(),
        };
        let idx = indices(&flags).unwrap();
        let c = idx.counts;
        assert_eq!(
            c.wind_only + c.solar_only + c.neither + c.both,
            c.total,
            "case {case}: counts must partition the hours"
        );
        assert_eq!(idx.sws, idx.wcs + idx.scw, "case {case}");
        // The four relative frequencies rebuild 1 from the integer counts.
        let total = c.total as f64;
        assert_eq!(
            (c.wind_only + c.solar_only + c.neither + c.both) as f64 / total,
            1.0,
            "case {case}"
        );
    }
    println!("[PASS] criterion 3: WCS+SCW+UWS+Pr[both] partitions 1 and SWS = WCS+SCW, exactly, on 1000 random flag sequences");
}

#[test]
fn criterion_04_duration_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for case in 0..1000 {
        let n = rng.random_range(1usize..1500);
        let p: f64 = rng.random_range(0.02..0.98);
        let wind_off: Vec<bool> = (0..n).map(|_| rng.random::<f64>() < p).collect();
        let solar_off: Vec<bool> = (0..n).map(|_| rng.random::<f64>() < p).collect();
        let flags = EventFlags {
            wind_on: wind_off.iter().map(|&o| !o).collect(),
            solar_on: solar_off.iter().map(|&o| !o).collect(),
        };
        let report = durations(&flags, true, true).unwrap();

        for (off, stats) in [
            (wind_off.clone(), report.no_wind.unwrap()),
            (solar_off.clone(), report.no_solar.unwrap()),
            (
                wind_off
                    .iter()
                    .zip(&solar_off)
                    .map(|(&a, &b)| a && b)
                    .collect(),
                report.joint.unwrap(),
            ),
        ] {
            // Brute-force scanner over explicit segments.
            let mut runs: Vec<usize> = Vec::new();
            let mut i = 0usize;
            while i < off.len() {
                if off[i] {
                    let start = i;
                    while i < off.len() && off[i] {
                        i += 1;
                    }
                    runs.push(i - start);
                } else {
                    i += 1;
                }
            }
            assert_eq!(stats.runs, runs.len(), "case {case}");
            assert_eq!(stats.max_hours, runs.iter().max().copied(), "case {case}");
            assert_eq!(
                stats.mean_hours,
                (!runs.is_empty()).then(|| runs.iter().sum::<usize>() as f64 / runs.len() as f64),
                "case {case}"
            );
            // Sum of off-run lengths equals total off-hours.
            assert_eq!(
                stats.total_off_hours,
                off.iter().filter(|&&o| o).count(),
                "case {case}"
            );
            assert_eq!(stats.total_off_hours, runs.iter().sum::<usize>());
        }
    }
    println!("[PASS] criterion 4: streaming run-length stats == brute-force scanner exactly on 1000 random sequences, off-hours conserved");
}

#[test]
fn criterion_05_scale_invariance_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let axis = axis_years(2001, 3);
    // Distinct per-year levels keep the annual means well separated, so the
    // inter-annual spread is not a catastrophic cancellation.
    let year_level = [6.0, 8.5, 7.2];
    let hourly: Vec<f64> = (0..axis.len())
        .map(|i| {
            let annual = (2.0 * std::f64::consts::PI * (i % 8760) as f64 / 8760.0).sin();
            year_level[i / 8760] + 2.0 * annual + rng.random_range(0.0..2.0)
        })
        .collect();
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(1e-300);

    for c in [0.5f64, 3.0, 1.0e4] {
        let scaled: Vec<f64> = hourly.iter().map(|v| c * v).collect();
        let checks = [
            ("cv", cv(&hourly).unwrap(), cv(&scaled).unwrap()),
            ("rcv", rcv(&hourly).unwrap(), rcv(&scaled).unwrap()),
            ("mav", mav(&hourly, &axis).unwrap(), mav(&scaled, &axis).unwrap()),
            ("iav", iav(&hourly, &axis).unwrap(), iav(&scaled, &axis).unwrap()),
        ];
        for (name, base, got) in checks {
            assert!(rel(base, got) <= 1e-12, "{name} not invariant under x{c}: {base} vs {got}");
        }
        let (mv0, sv0) = mv_sv(&hourly, &axis).unwrap();
        let (mv1, sv1) = mv_sv(&scaled, &axis).unwrap();
        assert!(rel(mv0, mv1) <= 1e-12, "mv under x{c}");
        assert!(rel(sv0, sv1) <= 1e-12, "sv under x{c}");
    }

    // jcv: independent rescaling of each marginal.
    let x: Vec<f64> = (0..4000).map(|_| rng.random_range(5.0..9.0)).collect();
    let y: Vec<f64> = x
        .iter()
        .map(|v| 0.5 * v + rng.random_range(0.5..2.5))
        .collect();
    let base = jcv(&x, &y).unwrap();
    for (a, b) in [(2.0, 0.25), (13.5, 7.0), (1e-3, 1e3)] {
        let xs: Vec<f64> = x.iter().map(|v| a * v).collect();
        let ys: Vec<f64> = y.iter().map(|v| b * v).collect();
        let got = jcv(&xs, &ys).unwrap();
        assert!(rel(base, got) <= 1e-12, "jcv under ({a}, {b}): {base} vs {got}");
    }

    // Correlation estimators: increasing affine maps of either argument.
    let cx: Vec<f64> = (0..800).map(|_| rng.random_range(-3.0..6.0)).collect();
    let cy: Vec<f64> = cx
        .iter()
        .map(|v| 0.4 * v + rng.random_range(-1.0..1.0))
        .collect();
    let maps = [(1.75f64, 3.25f64, 0.6f64, -11.0f64), (2.0, 0.0, 5.0, 100.0)];
    for (a1, b1, a2, b2) in maps {
        let mx: Vec<f64> = cx.iter().map(|v| a1 * v + b1).collect();
        let my: Vec<f64> = cy.iter().map(|v| a2 * v + b2).collect();
        let pairs = [
            ("pearson", pearson(&cx, &cy).unwrap(), pearson(&mx, &my).unwrap()),
            ("kendall", kendall_tau(&cx, &cy).unwrap(), kendall_tau(&mx, &my).unwrap()),
            ("cmed", r_cmed(&cx, &cy).unwrap(), r_cmed(&mx, &my).unwrap()),
        ];
        for (name, base, got) in pairs {
            assert!(
                rel(base, got) <= 1e-12,
                "{name} not affine-invariant: {base} vs {got}"
            );
        }
    }
    println!("[PASS] criterion 5: cv/rcv/mav/iav/mv/sv scale-invariant, jcv marginal-rescale-invariant, all three estimators affine-invariant (1e-12 rel)");
}

#[test]
fn criterion_06_degenerate_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let x: Vec<f64> = (0..500).map(|_| rng.random_range(1.0..9.0)).collect();

    // jcv vanishes under perfect linear dependence.
    let y2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
    assert_eq!(jcv(&x, &y2).unwrap(), 0.0);
    let y3: Vec<f64> = x.iter().map(|v| 3.0 * v).collect();
    assert_eq!(jcv(&x, &y3).unwrap(), 0.0);

    // Median correlation at its extremes.
    assert_eq!(r_cmed(&x, &x).unwrap(), 1.0);
    let xneg: Vec<f64> = x.iter().map(|v| -v).collect();
    assert_eq!(r_cmed(&x, &xneg).unwrap(), -1.0);

    // Robust variation of a constant.
    assert_eq!(rcv(&[7.25; 100]).unwrap(), 0.0);

    // Months refine seasons on 1000 random annual-cycle fixtures.
    let axis = axis_years(2001, 1);
    for case in 0..1000 {
        let levels: [f64; 12] = std::array::from_fn(|_| rng.random_range(1.0..20.0));
        let wobble: f64 = rng.random_range(0.0..0.5);
        let values: Vec<f64> = axis
            .iter()
            .enumerate()
            .map(|(i, ts)| {
                levels[chrono::Datelike::month0(&ts) as usize] + wobble * ((i % 13) as f64 / 13.0)
            })
            .collect();
        let (mv, sv) = mv_sv(&values, &axis).unwrap();
        assert!(mv >= sv, "case {case}: MV {mv} < SV {sv}");
    }
    println!("[PASS] criterion 6: jcv(x, c*x) = 0, r_cmed(x, x) = 1, r_cmed(x, -x) = -1, rcv(const) = 0, MV >= SV on 1000 fixtures");
}

#[test]
fn criterion_07_pv_chain_spot_values() {
    let cfg = PvFarmConfig::default();

    // Standard testing conditions.
    let per_module = pv_power(1000.0, 25.0, &cfg);
    assert!(
        (per_module - 187.0).abs() <= 1e-9,
        "per-module STC power {per_module} != eta*P_STC = 187"
    );
    let farm = farm_pv_power(1000.0, 25.0, &cfg);
    assert!(
        (farm - 36_364.0 * 187.0).abs() <= 1e-6,
        "farm STC power {farm}"
    );

    // Module-temperature spot values against hand evaluation.
    let t1 = pv_module_temperature(25.0, 0.0, 0.0, &cfg);
    assert!((t1 - 25.6908).abs() <= 1e-9, "{t1}");
    let t2 = pv_module_temperature(20.0, 1000.0, 5.0, &cfg);
    assert!((t2 - 36.2738).abs() <= 1e-9, "{t2}");
    println!(
        "[PASS] criterion 7: PV chain at STC gives {per_module:.3} W/module, {:.4} MW farm; \
         T_mod spot values match to 1e-9",
        farm / 1e6
    );
}

#[test]
fn criterion_08_energy_integration() {
    // 30-day month of constant rated wind: exactly 8 MW x 720 h = 5.76 GWh.
    let curve = PowerCurve::new(
        vec![(4.0, 100.0), (9.0, 4150.0), (13.0, 8000.0)],
        4.0,
        13.0,
        25.0,
        8000.0,
        105.0,
    )
    .unwrap();
    let device = DeviceConfig {
        power_curve: curve,
        pv: PvFarmConfig::default(),
        shear_exponent: 0.0,
    };
    let start = chrono::Utc.with_ymd_and_hms(2001, 4, 1, 0, 0, 0).unwrap();
    let axis = TimeAxis::new(start, 720).unwrap();
    let series = ResourceSeries::new(
        axis,
        vec![13.0; 720],
        vec![0.0; 720],
        vec![15.0; 720],
        vec![9.75; 720],
    )
    .unwrap();
    let table = monthly_energy(&series, &device).unwrap();
    assert_eq!(table.rows.len(), 1);
    let row = &table.rows[0];
    assert_eq!(row.wind_gwh, 5.76, "wind energy must be exactly 5.76 GWh");
    assert_eq!(row.solar_gwh, 0.0);
    assert_eq!(row.combined_gwh, row.wind_gwh + row.solar_gwh);

    // Combined = wind + solar exactly, on a varied multi-month fixture.
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let axis = axis_years(2001, 1);
    let n = axis.len();
    let u100: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..26.0)).collect();
    let ssrd: Vec<f64> = (0..n)
        .map(|i| {
            if i % 24 >= 6 && i % 24 < 18 {
                rng.random_range(0.0..1000.0)
            } else {
                0.0
            }
        })
        .collect();
    let u10: Vec<f64> = u100.iter().map(|u| 0.75 * u).collect();
    let series = ResourceSeries::new(axis, u100, ssrd, vec![18.0; n], u10).unwrap();
    let table = monthly_energy(&series, &device).unwrap();
    assert_eq!(table.rows.len(), 12);
    for row in &table.rows {
        assert_eq!(
            row.combined_gwh,
            row.wind_gwh + row.solar_gwh,
            "{}-{:02}",
            row.year,
            row.month
        );
        assert!(row.complete);
    }
    println!("[PASS] criterion 8: 720 h at rated 8 MW integrates to exactly 5.76 GWh; combined column is the exact sum in all 12 months");
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else if path.file_name().unwrap() != "run.log" {
                let rel = path.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn criterion_09_pipeline_determinism_and_isolation() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    std::fs::create_dir_all(&data).unwrap();

    // 100 synthetic points on a regular 10x10 grid, one year each.
    let mut manifest_text = String::from("point_id,lat,lon,series_path\n");
    for i in 0..100 {
        let name = format!("p{i:03}.csv");
        write_series(&data.join(&name), i as u64 + 7, 8760);
        let lat = 34.0 + (i / 10) as f64 * 0.25;
        let lon = 10.0 + (i % 10) as f64 * 0.25;
        manifest_text.push_str(&format!("P{i:03},{lat},{lon},{name}\n"));
    }
    let manifest_path = data.join("manifest.csv");
    std::fs::write(&manifest_path, &manifest_text).unwrap();
    let manifest = load_manifest(&manifest_path).unwrap();

    let device = DeviceConfig {
        power_curve: PowerCurve::new(
            vec![(4.0, 100.0), (13.0, 8000.0)],
            4.0,
            13.0,
            25.0,
            8000.0,
            105.0,
        )
        .unwrap(),
        pv: PvFarmConfig::default(),
        shear_exponent: 0.0,
    };
    let cfg_for = |out: &Path, workers: usize| PipelineConfig {
        workers,
        out_dir: out.to_path_buf(),
        format: OutputFormat::CsvRaster,
        energy: EnergySelection::Points(vec!["P000".into(), "P001".into()]),
        device: Some(device.clone()),
        scales: vec![TimeScale::Hourly, TimeScale::Monthly, TimeScale::Seasonal],
        ..PipelineConfig::default()
    };

    let out1 = dir.path().join("out1");
    let out8 = dir.path().join("out8");
    let cfg1 = cfg_for(&out1, 1);
    let cfg8 = cfg_for(&out8, 8);
    let run1 = pipeline::run(&manifest, &cfg1).unwrap();
    pipeline::write_outputs(&run1, &manifest, &cfg1).unwrap();
    let run8 = pipeline::run(&manifest, &cfg8).unwrap();
    pipeline::write_outputs(&run8, &manifest, &cfg8).unwrap();
    assert!(run1.failures.is_empty());
    assert!(run8.failures.is_empty());

    let files1 = read_outputs(&out1);
    let files8 = read_outputs(&out8);
    assert_eq!(
        files1.len(),
        files8.len(),
        "same file set for 1 and 8 workers"
    );
    assert!(files1.len() > 3, "csv files plus rasters expected");
    for ((name1, bytes1), (name8, bytes8)) in files1.iter().zip(&files8) {
        assert_eq!(name1, name8);
        assert_eq!(bytes1, bytes8, "{name1} differs between 1 and 8 workers");
    }

    // Corrupt one point; every other point's bytes must be unchanged.
    std::fs::write(data.join("p050.csv"), "not,a,series\n").unwrap();
    let out_c = dir.path().join("out_corrupt");
    let cfg_c = cfg_for(&out_c, 8);
    let run_c = pipeline::run(&manifest, &cfg_c).unwrap();
    pipeline::write_outputs(&run_c, &manifest, &cfg_c).unwrap();
    assert_eq!(run_c.failures.len(), 1);
    assert_eq!(run_c.failures[0].id, "P050");

    for file in ["metrics.csv", "events.csv", "energy.csv"] {
        let clean = std::fs::read_to_string(out8.join(file)).unwrap();
        let corrupt = std::fs::read_to_string(out_c.join(file)).unwrap();
        let strip = |text: &str| -> Vec<String> {
            text.lines()
                .filter(|l| !l.starts_with("P050,"))
                .map(str::to_owned)
                .collect()
        };
        assert_eq!(
            strip(&clean),
            strip(&corrupt),
            "{file}: other points' rows changed when P050 failed"
        );
        if file != "energy.csv" {
            assert!(
                corrupt
                    .lines()
                    .filter(|l| l.starts_with("P050,"))
                    .all(|l| l.contains("point failed") || l.contains("undefined:")),
                "{file}: P050 rows should carry a failure status"
            );
        }
    }
    println!("[PASS] criterion 9: outputs byte-identical for 1 vs 8 workers ({} files); corrupt point isolated to its own rows", files1.len());
}

fn write_series(path: &Path, seed: u64, hours: usize) {
    use std::io::Write;
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).unwrap());
    writeln!(f, "timestamp,u100,ssrd,t2m,u10").unwrap();
    let start = chrono::Utc.with_ymd_and_hms(2001, 1, 1, 0, 0, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for h in 0..hours {
        let ts = start + chrono::Duration::hours(h as i64);
        let hod = h % 24;
        let sun = if (6..18).contains(&hod) {
            ((hod as f64 - 6.0) / 12.0 * std::f64::consts::PI).sin()
        } else {
            0.0
        };
        let season = (2.0 * std::f64::consts::PI * (h % 8760) as f64 / 8760.0).cos();
        let u100: f64 = 7.0 + 2.0 * season + 3.0 * rng.random::<f64>();
        let ssrd = 950.0 * sun * (0.65 + 0.35 * rng.random::<f64>());
        let t2m = 14.0 - 6.0 * season + 8.0 * sun;
        writeln!(
            f,
            "{},{:.4},{:.4},{:.4},{:.4}",
            ts.format("%Y-%m-%dT%H:%M:%SZ"),
            u100,
            ssrd,
            t2m,
            0.75 * u100
        )
        .unwrap();
    }
}

#[test]
fn criterion_10_robust_vs_classical_under_contamination() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let n = 10_000;
    // Box-Muller N(10, 1).
    let clean: Vec<f64> = (0..n)
        .map(|_| {
            let u1: f64 = rng.random::<f64>().max(1e-12);
            let u2: f64 = rng.random();
            10.0 + (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        })
        .collect();

    // Replace the top 1% with 100x outliers.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| clean[a].total_cmp(&clean[b]));
    let mut contaminated = clean.clone();
    for &idx in order.iter().rev().take(n / 100) {
        contaminated[idx] *= 100.0;
    }

    let cv_clean = cv(&clean).unwrap();
    let cv_dirty = cv(&contaminated).unwrap();
    let rcv_clean = rcv(&clean).unwrap();
    let rcv_dirty = rcv(&contaminated).unwrap();

    let cv_change = (cv_dirty - cv_clean).abs() / cv_clean;
    let rcv_change = (rcv_dirty - rcv_clean).abs() / rcv_clean;
    assert!(
        rcv_change < 0.05,
        "rcv moved {rcv_change:.4} (>5%) under contamination"
    );
    assert!(
        cv_change > 0.50,
        "cv moved only {cv_change:.4} (<=50%) under contamination"
    );
    println!(
        "[PASS] criterion 10: 1% x100 outliers move cv by {:.0}% but rcv by only {:.2}%",
        cv_change * 100.0,
        rcv_change * 100.0
    );
}

/// Non-binding throughput trend: full registry on a 41-year point.
/// Run with: cargo test --test acceptance -- --ignored --nocapture
#[test]
#[ignore]
fn throughput_trend_41_year_point() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data");
    std::fs::create_dir_all(&data).unwrap();
    write_series(&data.join("p0.csv"), 1, 359_400);
    std::fs::write(
        data.join("manifest.csv"),
        "point_id,lat,lon,series_path\nP0,36.0,10.0,p0.csv\n",
    )
    .unwrap();
    let manifest = load_manifest(&data.join("manifest.csv")).unwrap();
    let cfg = PipelineConfig {
        out_dir: dir.path().join("out"),
        ..PipelineConfig::default()
    };
    let started = Instant::now();
    let output = pipeline::run(&manifest, &cfg).unwrap();
    let elapsed = started.elapsed();
    assert!(output.failures.is_empty());
    println!(
        "[TREND] full registry over 359,400 hours: {:.3} s (non-binding)",
        elapsed.as_secs_f64()
    );
}
