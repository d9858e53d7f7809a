//! Correlation estimators for paired series and the cross-estimator
//! agreement tabulation.
//!
//! Three estimators: Pearson's r, Kendall's tau-b (O(n log n), merge-sort
//! pair counting), and the median correlation coefficient built from medians
//! of standardized sums and differences. Constant or zero-spread inputs make
//! an estimator undefined rather than NaN.



use crate::error::{Error, Result};
use crate::series::{aggregate, seasonal_yearly_means, Season, TimeAxis, TimeScale};
use crate::variability::{median_and_mad, MetricCell};

// ---------------------------------------------------------------------------
// Pearson
// ---------------------------------------------------------------------------

/// Pearson's r over paired samples.
///
/// One-pass updating-moment computation; symmetric in its arguments.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let mut mean_x = 0.0;
    let mut mean_y = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (k, (&a, &b)) in x.iter().zip(y).enumerate() {
        let n = (k + 1) as f64;
        let dx = a - mean_x;
        let dy = b - mean_y;
        let w = (n - 1.0) / n;
        sxx += dx * dx * w;
        syy += dy * dy * w;
        sxy += dx * dy * w;
        mean_x += dx / n;
        mean_y += dy / n;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::undefined("constant series"));
    }
    let r = sxy / (sxx.sqrt() * syy.sqrt());
    Ok(r.clamp(-1.0, 1.0))
}

// ---------------------------------------------------------------------------
// Kendall's tau-b
// ---------------------------------------------------------------------------

/// Tied-pair count: sum of t(t-1)/2 over runs of equal values in `sorted`.
fn tied_pairs(sorted: &[f64]) -> u64 {
    let mut ties = 0u64;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            ties += run * (run - 1) / 2;
            run = 1;
        }
    }
    ties + run * (run - 1) / 2
}

/// Count inversions (strictly decreasing pairs) in `values` by merge sort.
/// Equal values merge stably and contribute no inversion.
fn merge_count_inversions(values: &mut [f64], scratch: &mut [f64]) -> u64 {
    let n = values.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = {
        let (left, right) = values.split_at_mut(mid);
        merge_count_inversions(left, scratch) + merge_count_inversions(right, scratch)
    };

    let mut i = 0usize; // left cursor
    let mut j = mid; // right cursor
    let mut k = 0usize;
    while i < mid && j < n {
        if values[j] < values[i] {
            // values[j] jumps ahead of every remaining left element.
            swaps += (mid - i) as u64;
            scratch[k] = values[j];
            j += 1;
        } else {
            scratch[k] = values[i];
            i += 1;
        }
        k += 1;
    }
    while i < mid {
        scratch[k] = values[i];
        i += 1;
        k += 1;
    }
    while j < n {
        scratch[k] = values[j];
        j += 1;
        k += 1;
    }
    values.copy_from_slice(&scratch[..n]);
    swaps
}

/// Shared final formula for tau-b; tests reuse it verbatim so that the
/// quadratic oracle and the merge-sort path agree bit-for-bit. The clamp
/// absorbs the one-ulp overshoot of sqrt(t)*sqrt(t) versus t.
#[doc(hidden)]
pub fn tau_b_from_counts(con_minus_dis: i64, nonties_x: u64, nonties_y: u64) -> f64 {
    let tau = con_minus_dis as f64 / ((nonties_x as f64).sqrt() * (nonties_y as f64).sqrt());
    tau.clamp(-1.0, 1.0)
}

/// Kendall's tau-b over paired samples.
///
/// Concordant/discordant pairs are counted in O(n log n): sort by (x, y),
/// count inversions of the y sequence by merge sort, and correct both axes
/// for ties. Reduces to the plain tau when the data are tie-free.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let n = x.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| x[a].total_cmp(&x[b]).then(y[a].total_cmp(&y[b])));

    // Ties in x and joint ties, from the (x, y)-sorted order.
    let mut tie_x = 0u64;
    let mut tie_xy = 0u64;
    let mut run_x = 1u64;
    let mut run_xy = 1u64;
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if x[a] == x[b] {
            run_x += 1;
            if y[a] == y[b] {
                run_xy += 1;
            } else {
                tie_xy += run_xy * (run_xy - 1) / 2;
                run_xy = 1;
            }
        } else {
            tie_x += run_x * (run_x - 1) / 2;
            run_x = 1;
            tie_xy += run_xy * (run_xy - 1) / 2;
            run_xy = 1;
        }
    }
    tie_x += run_x * (run_x - 1) / 2;
    tie_xy += run_xy * (run_xy - 1) / 2;

    let mut y_in_x_order: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let mut scratch = vec![0.0; n];
    let swaps = merge_count_inversions(&mut y_in_x_order, &mut scratch);

    // y_in_x_order is now sorted.
    let tie_y = tied_pairs(&y_in_x_order);

    let total = (n as u64) * (n as u64 - 1) / 2;
    let nonties_x = total - tie_x;
    let nonties_y = total - tie_y;
    if nonties_x == 0 || nonties_y == 0 {
        return Err(Error::undefined("all pairs tied"));
    }
    let con_minus_dis =
        total as i64 - tie_x as i64 - tie_y as i64 + tie_xy as i64 - 2 * swaps as i64;
    Ok(tau_b_from_counts(con_minus_dis, nonties_x, nonties_y))
}

// ---------------------------------------------------------------------------
// Median correlation coefficient
// ---------------------------------------------------------------------------

/// Median correlation coefficient over paired samples.
///
/// Both series are standardized by (value − median) / MAD; with u and v the
/// elementwise sums and differences of the standardized series, the estimate
/// is (med²|u| − med²|v|) / (med²|u| + med²|v|).
pub fn r_cmed(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y)?;
    let (med_x, mad_x) = median_and_mad(x)?;
    let (med_y, mad_y) = median_and_mad(y)?;
    if mad_x == 0.0 || mad_y == 0.0 {
        return Err(Error::undefined("zero MAD"));
    }
    let mut u = Vec::with_capacity(x.len());
    let mut v = Vec::with_capacity(x.len());
    for (&a, &b) in x.iter().zip(y) {
        let sa = (a - med_x) / mad_x;
        let sb = (b - med_y) / mad_y;
        u.push((sa + sb).abs());
        v.push((sa - sb).abs());
    }
    let (mu, _) = median_and_mad(&u)?;
    let (mv, _) = median_and_mad(&v)?;
    let (mu2, mv2) = (mu * mu, mv * mv);
    if mu2 + mv2 == 0.0 {
        return Err(Error::undefined("zero medians of |u| and |v|"));
    }
    Ok((mu2 - mv2) / (mu2 + mv2))
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(Error::InsufficientSpan(
            "correlation needs at least 3 pairs".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Correlation at a time scale
// ---------------------------------------------------------------------------

/// The three correlation estimators evaluated on identically aggregated pairs.
#[derive(Debug, Clone)]
pub struct CorrelationTriple {
    pub pearson: MetricCell,
    pub kendall: MetricCell,
    pub cmed: MetricCell,
    /// Number of aggregated pairs the estimators saw.
    pub n: usize,
    pub scale: TimeScale,
}

impl CorrelationTriple {
    fn compute(x: &[f64], y: &[f64], scale: TimeScale) -> CorrelationTriple {
        CorrelationTriple {
            pearson: pearson(x, y).into(),
            kendall: kendall_tau(x, y).into(),
            cmed: r_cmed(x, y).into(),
            n: x.len(),
            scale,
        }
    }

    fn undefined(reason: &str, n: usize, scale: TimeScale) -> CorrelationTriple {
        let cell = MetricCell::Undefined(reason.to_string());
        CorrelationTriple {
            pearson: cell.clone(),
            kendall: cell.clone(),
            cmed: cell,
            n,
            scale,
        }
    }
}

/// Correlate two hourly columns after aggregating both to `scale`.
///
/// Returns labeled triples: a single entry labeled with the scale name for
/// hourly/daily/monthly/annual, and one entry per season (pairing each
/// season's yearly means across years) for the seasonal scale. Night-time
/// zeros are data like any other hour at the hourly scale.
pub fn correlate_at_scale(
    x: &[f64],
    y: &[f64],
    axis: &TimeAxis,
    scale: TimeScale,
) -> Result<Vec<(String, CorrelationTriple)>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    match scale {
        TimeScale::Hourly => Ok(vec![(
            scale.name().to_string(),
            CorrelationTriple::compute(x, y, scale),
        )]),
        TimeScale::Seasonal => {
            let xs = seasonal_yearly_means(x, axis)?;
            let ys = seasonal_yearly_means(y, axis)?;
            let mut out = Vec::with_capacity(4);
            for season in Season::ALL {
                let (Some(xv), Some(yv)) = (xs.get(&season), ys.get(&season)) else {
                    continue;
                };
                debug_assert_eq!(xv.len(), yv.len());
                let xcol: Vec<f64> = xv.iter().map(|&(_, v)| v).collect();
                let ycol: Vec<f64> = yv.iter().map(|&(_, v)| v).collect();
                let triple = if xcol.len() < 3 {
                    CorrelationTriple::undefined(
                        "fewer than 3 yearly pairs for this season",
                        xcol.len(),
                        scale,
                    )
                } else {
                    CorrelationTriple::compute(&xcol, &ycol, scale)
                };
                out.push((season.label().to_string(), triple));
            }
            Ok(out)
        }
        other => {
            let ax = aggregate(x, axis, other)?;
            let ay = aggregate(y, axis, other)?;
            debug_assert_eq!(ax.labels, ay.labels);
            let triple = if ax.len() < 3 {
                CorrelationTriple::undefined("fewer than 3 aggregated pairs", ax.len(), other)
            } else {
                CorrelationTriple::compute(&ax.values, &ay.values, other)
            };
            Ok(vec![(other.name().to_string(), triple)])
        }
    }
}

// ---------------------------------------------------------------------------
// Agreement table
// ---------------------------------------------------------------------------

/// Estimator identity inside an [`AgreementTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Pearson,
    Cmed,
    Kendall,
}

impl Estimator {
    pub const ALL: [Estimator; 3] = [Estimator::Pearson, Estimator::Cmed, Estimator::Kendall];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::Pearson => "pearson",
            Estimator::Cmed => "cmed",
            Estimator::Kendall => "kendall",
        }
    }

    fn pick(self, t: &CorrelationTriple) -> &MetricCell {
        match self {
            Estimator::Pearson => &t.pearson,
            Estimator::Cmed => &t.cmed,
            Estimator::Kendall => &t.kendall,
        }
    }
}

/// Sign tallies for one estimator across grid points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SignCounts {
    pub positive: usize,
    pub negative: usize,
    /// Exact zeros and undefined cells (no usable sign).
    pub zero_or_undefined: usize,
}

/// Cross-estimator tallies for one estimator pair across grid points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PairCounts {
    pub both_positive: usize,
    pub both_negative: usize,
    /// both_positive + both_negative.
    pub same_sign: usize,
    /// Points where |a − b| <= 0.1 (both defined).
    pub within_tenth: usize,
    /// Points excluded because at least one side is undefined.
    pub excluded: usize,
}

/// Cross-estimator agreement over a grid of correlation triples.
#[derive(Debug, Clone)]
pub struct AgreementTable {
    pub total: usize,
    /// Indexed like [`Estimator::ALL`].
    pub per_estimator: [SignCounts; 3],
    /// Pairs in the order (pearson, cmed), (pearson, kendall), (cmed, kendall).
    pub per_pair: [(Estimator, Estimator, PairCounts); 3],
}

/// Tabulate sign agreement and |difference| <= 0.1 between estimators.
///
/// Undefined cells never enter a tally; exact zeros carry no sign and are
/// counted under `zero_or_undefined`.
pub fn agreement_table(triples: &[CorrelationTriple]) -> AgreementTable {
    let mut per_estimator = [SignCounts::default(); 3];
    for t in triples {
        for (slot, est) in per_estimator.iter_mut().zip(Estimator::ALL) {
            match est.pick(t).value() {
                Some(v) if v > 0.0 => slot.positive += 1,
                Some(v) if v < 0.0 => slot.negative += 1,
                _ => slot.zero_or_undefined += 1,
            }
        }
    }

    let pairs = [
        (Estimator::Pearson, Estimator::Cmed),
        (Estimator::Pearson, Estimator::Kendall),
        (Estimator::Cmed, Estimator::Kendall),
    ];
    let per_pair = pairs.map(|(a, b)| {
        let mut counts = PairCounts::default();
        for t in triples {
            match (a.pick(t).value(), b.pick(t).value()) {
                (Some(va), Some(vb)) => {
                    if va > 0.0 && vb > 0.0 {
                        counts.both_positive += 1;
                    } else if va < 0.0 && vb < 0.0 {
                        counts.both_negative += 1;
                    }
                    if (va - vb).abs() <= 0.1 {
                        counts.within_tenth += 1;
                    }
                }
                _ => counts.excluded += 1,
            }
        }
        counts.same_sign = counts.both_positive + counts.both_negative;
        (a, b, counts)
    });

    AgreementTable {
        total: triples.len(),
        per_estimator,
        per_pair,
    }
}
