//! Command-line front end for the grid pipeline and single-point inspection.
//!
//! Exit codes: 0 on success (including partial per-point failures, which are
//! reported on stderr), 1 on fatal errors, 2 on usage errors. Data goes to
//! files or stdout; diagnostics go to stderr.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use synergy::association::{agreement_table, correlate_at_scale, CorrelationTriple};
use synergy::events::event_report;
use synergy::pipeline::{
    self, load_config, load_manifest, EnergySelection, GridManifest, JointKind, Metric,
    OutputFormat, PipelineConfig,
};
use synergy::power::{monthly_energy, wind_power_density_series};
use synergy::report;
use synergy::series::{load_series_csv, Season, TimeScale};
use synergy::variability::summarize;

const DEFAULTS_HELP: &str = "\
Config file keys, their defaults, and where the defaults come from:
  wp_threshold    280 W/m2      upper limit of the poor wind power class; equals the
                                Rayleigh mean power (3/pi)*rho*u^3 at rho=1.225, u=6.2 m/s
  sp_threshold    125 W/m2      NREL upper limit of the poor solar resource class
  air_density     1.2258 kg/m3  fixed offshore air density (1.225 is the common alternative)
  shear_exponent  0.0           use the 100 m winds as hub winds; 0.11 is typical offshore
  metrics         all           any subset of the metric registry (see README)
  scales          all           hourly, daily, monthly, seasonal, annual
  workers         1             SYNERGY_GRID_WORKERS or --workers override
  out_dir         out           --out overrides
  format          csv           csv or csv+raster (--format overrides)
  energy_points   (none)        comma list of point ids, or `all`
  power_curve     (none)        speed:kW pairs; with cut_in, rated, cut_out,
                                rated_power_kw, hub_height_m (all required together)
  pv_p_stc_w      220 W         SPR-220-BLK rated module power
  pv_alpha_t      -0.41 %/C     module temperature coefficient; the SPR-220 sheet prints
                                -0.041/C, which as a bare fraction would zero output near
                                49 C, so the percent reading is the default
                                (pv_alpha_t_unit = fraction restores the literal)
  pv_eta          0.85          flat system performance factor
  pv_n_modules    36364         8 MW of 220 W modules
  pv_c0..pv_c3    2.0458, 0.9458, 0.0215, 1.2376
                                open-water module temperature fit
                                T_mod = c0 + c1*T_air + c2*G - c3*u10";

#[derive(Parser)]
#[command(
    name = "synergy",
    about = "Wind/solar resource variability, complementarity, and energy-yield analytics",
    after_long_help = DEFAULTS_HELP,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Grid manifest CSV (point_id,lat,lon,series_path with `# key: value` units header)
    #[arg(long)]
    manifest: PathBuf,

    /// Pipeline config file (flat key = value lines; run with --help for defaults)
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output directory (overrides the config's out_dir)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Restrict to one manifest point and print tables instead of writing files
    #[arg(long)]
    point: Option<String>,

    /// Worker thread count (overrides config; >= 1)
    #[arg(long, env = "SYNERGY_GRID_WORKERS")]
    workers: Option<usize>,

    /// Output format: csv or csv+raster (overrides config)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Lint a manifest and every series file it references
    #[command(after_long_help = DEFAULTS_HELP)]
    Validate(CommonArgs),
    /// Variability metrics (single point: tables; grid: metrics.csv)
    #[command(after_long_help = DEFAULTS_HELP)]
    Stats(CommonArgs),
    /// Correlation estimators and the cross-estimator agreement table
    #[command(after_long_help = DEFAULTS_HELP)]
    Correlate(CommonArgs),
    /// Event-based complementarity and persistence report
    #[command(after_long_help = DEFAULTS_HELP)]
    Events(CommonArgs),
    /// Monthly hybrid energy yield (requires a power curve in the config)
    #[command(after_long_help = DEFAULTS_HELP)]
    Energy(CommonArgs),
    /// Full pipeline: metrics.csv, events.csv, energy.csv, optional maps/
    #[command(name = "run-all", after_long_help = DEFAULTS_HELP)]
    RunAll(CommonArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Correlate(args) => cmd_correlate(args),
        Command::Events(args) => cmd_events(args),
        Command::Energy(args) => cmd_energy(args),
        Command::RunAll(args) => cmd_run_all(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

/// Load config + manifest and apply command-line overrides.
fn load_inputs(args: &CommonArgs) -> anyhow::Result<(GridManifest, PipelineConfig)> {
    let manifest = load_manifest(&args.manifest)?;
    let mut cfg = match &args.config {
        Some(path) => load_config(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(out) = &args.out {
        cfg.out_dir = out.clone();
    }
    if let Some(workers) = args.workers {
        cfg.workers = workers;
    }
    if let Some(format) = &args.format {
        cfg.format = format.parse::<OutputFormat>()?;
    }
    cfg.validate()?;
    Ok((manifest, cfg))
}

fn single_point<'m>(manifest: &'m GridManifest, id: &str) -> anyhow::Result<&'m pipeline::GridPoint> {
    manifest
        .find(id)
        .ok_or_else(|| anyhow::anyhow!("point `{id}` is not in the manifest"))
}

/// Run the grid, report failures on stderr, write outputs and a run log.
fn run_grid(
    manifest: &GridManifest,
    cfg: &PipelineConfig,
    write: impl FnOnce(&pipeline::RunOutput) -> anyhow::Result<Vec<PathBuf>>,
) -> anyhow::Result<ExitCode> {
    let started = Instant::now();
    let output = pipeline::run(manifest, cfg)?;
    for failure in &output.failures {
        eprintln!("point {} failed: {}", failure.id, failure.reason);
    }
    if output.all_points_failed(manifest) {
        anyhow::bail!("all {} points failed", manifest.len());
    }
    let written = write(&output)?;
    for path in &written {
        eprintln!("wrote {}", path.display());
    }

    let log_path = cfg.out_dir.join("run.log");
    let mut log = format!(
        "points: {}\nfailures: {}\nworkers: {}\nelapsed_ms: {}\n",
        manifest.len(),
        output.failures.len(),
        cfg.workers,
        started.elapsed().as_millis()
    );
    for failure in &output.failures {
        log.push_str(&format!("failed {}: {}\n", failure.id, failure.reason));
    }
    std::fs::write(&log_path, log)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let (manifest, _cfg) = load_inputs(args)?;
    let mut bad = 0usize;
    for point in &manifest.points {
        match load_series_csv(&point.series_path, manifest.units) {
            Ok(series) => println!(
                "{}: ok ({} hours starting {})",
                point.id,
                series.len(),
                series.axis().start()
            ),
            Err(err) => {
                bad += 1;
                println!("{}: INVALID", point.id);
                eprintln!("{}: {err}", point.id);
            }
        }
    }
    println!(
        "{} of {} series valid",
        manifest.len() - bad,
        manifest.len()
    );
    if bad > 0 {
        anyhow::bail!("{bad} invalid series");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let (manifest, mut cfg) = load_inputs(args)?;
    if let Some(id) = &args.point {
        let point = single_point(&manifest, id)?;
        let series = load_series_csv(&point.series_path, manifest.units)?;
        let wp = wind_power_density_series(series.u100(), cfg.air_density)?;
        let sp = series.ssrd().to_vec();
        for (name, values) in [
            ("wind power density (W/m2)", &wp),
            ("solar power density (W/m2)", &sp),
        ] {
            let summaries: Vec<_> = cfg
                .scales
                .iter()
                .map(|&scale| summarize(values, series.axis(), scale))
                .collect::<Result<_, _>>()?;
            println!(
                "{}",
                report::variability_table(&format!("{id}: {name}"), &summaries)
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    // Grid mode: univariate metrics only, metrics.csv (+ maps) only.
    cfg.metrics
        .retain(|m| matches!(m, Metric::Uni(..) | Metric::Span(..)));
    run_grid(&manifest, &cfg, |output| {
        let mut written = vec![pipeline::write_metrics_csv(output, &manifest, &cfg)?];
        if cfg.format == OutputFormat::CsvRaster {
            written.extend(pipeline::write_maps(output, &manifest, &cfg)?);
        }
        Ok(written)
    })
}

fn cmd_correlate(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let (manifest, mut cfg) = load_inputs(args)?;
    if let Some(id) = &args.point {
        let point = single_point(&manifest, id)?;
        let series = load_series_csv(&point.series_path, manifest.units)?;
        let wp = wind_power_density_series(series.u100(), cfg.air_density)?;
        for &scale in &cfg.scales {
            let triples = correlate_at_scale(&wp, series.ssrd(), series.axis(), scale)?;
            println!(
                "{}",
                report::correlation_table(&format!("{id}: correlation at {scale}"), &triples)
            );
        }
        return Ok(ExitCode::SUCCESS);
    }
    cfg.metrics = vec![
        Metric::Joint(JointKind::Pearson),
        Metric::Joint(JointKind::Kendall),
        Metric::Joint(JointKind::Cmed),
    ];
    run_grid(&manifest, &cfg, |output| {
        let mut written = vec![pipeline::write_metrics_csv(output, &manifest, &cfg)?];
        written.push(write_agreement_csv(output, &cfg)?);
        Ok(written)
    })
}

/// Rebuild per-point triples from the metric grids and tabulate agreement,
/// one table per scale (per season at the seasonal scale).
fn write_agreement_csv(
    output: &pipeline::RunOutput,
    cfg: &PipelineConfig,
) -> anyhow::Result<PathBuf> {
    let grid = |name: &str, scale: TimeScale| {
        output
            .grids
            .iter()
            .find(|g| g.metric == name && g.scale == scale)
    };
    let mut text = String::from(
        "scale,series,kind,name,positive,negative,zero_or_undefined,both_positive,both_negative,same_sign,within_abs_0p1,excluded,total\n",
    );
    for &scale in &cfg.scales {
        let labels: Vec<(String, String, String, String)> = if scale == TimeScale::Seasonal {
            Season::ALL
                .iter()
                .map(|s| {
                    let suffix = s.label().to_ascii_lowercase();
                    (
                        s.label().to_string(),
                        format!("pearson_{suffix}"),
                        format!("kendall_{suffix}"),
                        format!("cmed_{suffix}"),
                    )
                })
                .collect()
        } else {
            vec![(
                scale.name().to_string(),
                "pearson".into(),
                "kendall".into(),
                "cmed".into(),
            )]
        };
        for (label, p_name, k_name, c_name) in labels {
            let (Some(p), Some(k), Some(c)) = (
                grid(&p_name, scale),
                grid(&k_name, scale),
                grid(&c_name, scale),
            ) else {
                continue;
            };
            let triples: Vec<CorrelationTriple> = (0..p.cells.len())
                .map(|i| CorrelationTriple {
                    pearson: p.cells[i].clone(),
                    kendall: k.cells[i].clone(),
                    cmed: c.cells[i].clone(),
                    n: 0,
                    scale,
                })
                .collect();
            let table = agreement_table(&triples);
            for (est, counts) in synergy::association::Estimator::ALL
                .iter()
                .zip(table.per_estimator)
            {
                text.push_str(&format!(
                    "{scale},{label},estimator,{},{},{},{},,,,,,{}\n",
                    est.name(),
                    counts.positive,
                    counts.negative,
                    counts.zero_or_undefined,
                    table.total
                ));
            }
            for (a, b, counts) in table.per_pair {
                text.push_str(&format!(
                    "{scale},{label},pair,{}|{},,,,{},{},{},{},{},{}\n",
                    a.name(),
                    b.name(),
                    counts.both_positive,
                    counts.both_negative,
                    counts.same_sign,
                    counts.within_tenth,
                    counts.excluded,
                    table.total
                ));
            }
        }
    }
    let path = cfg.out_dir.join("agreement.csv");
    std::fs::write(&path, text)?;
    Ok(path)
}

fn cmd_events(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let (manifest, mut cfg) = load_inputs(args)?;
    if let Some(id) = &args.point {
        let point = single_point(&manifest, id)?;
        let series = load_series_csv(&point.series_path, manifest.units)?;
        let wp = wind_power_density_series(series.u100(), cfg.air_density)?;
        let report = event_report(&wp, series.ssrd(), cfg.thresholds)?;
        println!(
            "{}",
            report::event_table(&format!("{id}: event complementarity"), &report)
        );
        return Ok(ExitCode::SUCCESS);
    }
    // Grid mode writes events.csv only; keep the metric pass minimal.
    cfg.metrics = vec![Metric::Uni(pipeline::Variable::Wind, pipeline::UniKind::Mean)];
    cfg.scales = vec![TimeScale::Hourly];
    run_grid(&manifest, &cfg, |output| {
        Ok(vec![pipeline::write_events_csv(output, &manifest, &cfg)?])
    })
}

fn cmd_energy(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let (manifest, mut cfg) = load_inputs(args)?;
    if let Some(id) = &args.point {
        let point = single_point(&manifest, id)?;
        let device = cfg.device.as_ref().ok_or_else(|| {
            anyhow::anyhow!("energy needs a power curve in the config (see --help)")
        })?;
        let series = load_series_csv(&point.series_path, manifest.units)?;
        let table = monthly_energy(&series, device)?;
        println!(
            "{}",
            report::energy_table(&format!("{id}: monthly energy (GWh)"), &table)
        );
        return Ok(ExitCode::SUCCESS);
    }
    if cfg.energy == EnergySelection::None {
        cfg.energy = EnergySelection::All;
    }
    cfg.validate()?;
    cfg.metrics = vec![Metric::Uni(pipeline::Variable::Wind, pipeline::UniKind::Mean)];
    cfg.scales = vec![TimeScale::Hourly];
    run_grid(&manifest, &cfg, |output| {
        Ok(vec![pipeline::write_energy_csv(output, &manifest, &cfg)?])
    })
}

fn cmd_run_all(args: &CommonArgs) -> anyhow::Result<ExitCode> {
    let (manifest, cfg) = load_inputs(args)?;
    run_grid(&manifest, &cfg, |output| {
        Ok(pipeline::write_outputs(output, &manifest, &cfg)?)
    })
}
