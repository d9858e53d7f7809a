//! Plain-text tables for single-point inspection.

use std::fmt::Write;

use crate::association::CorrelationTriple;
use crate::events::EventReport;
use crate::power::MonthlyEnergyTable;
use crate::variability::{MetricCell, VariabilitySummary};

fn cell_text(cell: &MetricCell) -> String {
    match cell {
        MetricCell::Value(v) => format!("{v:.6}"),
        MetricCell::Undefined(reason) => format!("undefined ({reason})"),
    }
}

/// Render per-scale variability summaries of one quantity as an aligned table.
pub fn variability_table(title: &str, summaries: &[VariabilitySummary]) -> String {
    let mut rows: Vec<[String; 3]> = Vec::new();
    for s in summaries {
        let scale = s.scale.to_string();
        rows.push([scale.clone(), "n".into(), s.n.to_string()]);
        rows.push([scale.clone(), "mean".into(), cell_text(&s.mean)]);
        rows.push([scale.clone(), "cv".into(), cell_text(&s.cv)]);
        rows.push([scale.clone(), "rcv".into(), cell_text(&s.rcv)]);
        for (q, v) in &s.percentiles {
            rows.push([scale.clone(), format!("p{q}"), format!("{v:.6}")]);
        }
        rows.push([scale.clone(), "mav".into(), cell_text(&s.mav)]);
        rows.push([scale.clone(), "iav".into(), cell_text(&s.iav)]);
        rows.push([scale.clone(), "mv".into(), cell_text(&s.mv)]);
        rows.push([scale.clone(), "sv".into(), cell_text(&s.sv)]);
    }
    aligned(title, &["scale", "metric", "value"], &rows)
}

/// Render labeled correlation triples as an aligned table.
pub fn correlation_table(title: &str, triples: &[(String, CorrelationTriple)]) -> String {
    let rows: Vec<[String; 5]> = triples
        .iter()
        .map(|(label, t)| {
            [
                label.clone(),
                t.n.to_string(),
                cell_text(&t.pearson),
                cell_text(&t.kendall),
                cell_text(&t.cmed),
            ]
        })
        .collect();
    aligned(title, &["series", "n", "pearson", "kendall", "cmed"], &rows)
}

/// Render an event report as key/value lines.
pub fn event_table(title: &str, report: &EventReport) -> String {
    let mut rows: Vec<[String; 2]> = vec![
        ["hours".into(), report.hours.to_string()],
        ["wp_threshold".into(), format!("{}", report.thresholds.wp_l)],
        ["sp_threshold".into(), format!("{}", report.thresholds.sp_l)],
        ["wcs".into(), format!("{:.6}", report.indices.wcs)],
        ["scw".into(), format!("{:.6}", report.indices.scw)],
        ["uws".into(), format!("{:.6}", report.indices.uws)],
        [
            "both_available".into(),
            format!("{:.6}", report.indices.both_available),
        ],
        ["sws".into(), format!("{:.6}", report.indices.sws)],
        ["eligible_wind".into(), report.eligible_wind.to_string()],
        ["eligible_solar".into(), report.eligible_solar.to_string()],
    ];
    let mut duration_rows = |name: &str, stats: Option<crate::events::RunStats>| match stats {
        None => rows.push([name.into(), "n/a (site not eligible)".into()]),
        Some(s) if s.runs == 0 => rows.push([name.into(), "0 off-runs".into()]),
        Some(s) => {
            rows.push([
                name.into(),
                format!(
                    "{} runs, mean {:.2} h, max {} h",
                    s.runs,
                    s.mean_hours.unwrap_or(0.0),
                    s.max_hours.unwrap_or(0)
                ),
            ]);
        }
    };
    duration_rows("d_no_wind", report.durations.no_wind);
    duration_rows("d_no_solar", report.durations.no_solar);
    duration_rows("d_joint", report.durations.joint);
    aligned(title, &["field", "value"], &rows)
}

/// Render a monthly energy table.
pub fn energy_table(title: &str, table: &MonthlyEnergyTable) -> String {
    let rows: Vec<[String; 6]> = table
        .rows
        .iter()
        .map(|r| {
            [
                r.year.to_string(),
                format!("{:02}", r.month),
                format!("{:.4}", r.wind_gwh),
                format!("{:.4}", r.solar_gwh),
                format!("{:.4}", r.combined_gwh),
                if r.complete { "yes".into() } else { "no".into() },
            ]
        })
        .collect();
    aligned(
        title,
        &["year", "month", "wind_gwh", "solar_gwh", "combined_gwh", "complete"],
        &rows,
    )
}

/// Column-aligned rendering with a title and a header rule.
fn aligned<const N: usize>(title: &str, header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths: [usize; N] = [0; N];
    for (i, h) in header.iter().enumerate() {
        widths[i] = h.len();
    }
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let line = |cells: &[String; N], out: &mut String| {
        let mut parts = Vec::with_capacity(N);
        for (i, cell) in cells.iter().enumerate() {
            parts.push(format!("{cell:<width$}", width = widths[i]));
        }
        let _ = writeln!(out, "  {}", parts.join("  "));
    };
    let header_cells: [String; N] = std::array::from_fn(|i| header[i].to_string());
    line(&header_cells, &mut out);
    let rule: [String; N] = std::array::from_fn(|i| "-".repeat(widths[i]));
    line(&rule, &mut out);
    for row in rows {
        line(row, &mut out);
    }
    out
}
