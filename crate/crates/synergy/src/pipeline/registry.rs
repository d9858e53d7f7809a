//! The closed registry of grid metrics.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::{Season, TimeScale};

/// Which resource column a univariate metric describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    /// Wind power density (from the 100 m wind speeds).
    Wind,
    /// Solar power density (surface solar irradiance).
    Solar,
}

impl Variable {
    pub const ALL: [Variable; 2] = [Variable::Wind, Variable::Solar];

    pub fn prefix(self) -> &'static str {
        match self {
            Variable::Wind => "wp",
            Variable::Solar => "sp",
        }
    }
}

/// Univariate metric kinds evaluated on the values at a scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UniKind {
    Mean,
    Cv,
    Rcv,
    P50,
    P75,
    P90,
    P95,
}

impl UniKind {
    pub const ALL: [UniKind; 7] = [
        UniKind::Mean,
        UniKind::Cv,
        UniKind::Rcv,
        UniKind::P50,
        UniKind::P75,
        UniKind::P90,
        UniKind::P95,
    ];

    fn suffix(self) -> &'static str {
        match self {
            UniKind::Mean => "mean",
            UniKind::Cv => "cv",
            UniKind::Rcv => "rcv",
            UniKind::P50 => "p50",
            UniKind::P75 => "p75",
            UniKind::P90 => "p90",
            UniKind::P95 => "p95",
        }
    }

    pub fn percentile(self) -> Option<u8> {
        match self {
            UniKind::P50 => Some(50),
            UniKind::P75 => Some(75),
            UniKind::P90 => Some(90),
            UniKind::P95 => Some(95),
            _ => None,
        }
    }
}

/// Whole-series calendar metrics, reported once under the hourly scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpanKind {
    Mav,
    Iav,
    Mv,
    Sv,
}

impl SpanKind {
    pub const ALL: [SpanKind; 4] = [SpanKind::Mav, SpanKind::Iav, SpanKind::Mv, SpanKind::Sv];

    fn suffix(self) -> &'static str {
        match self {
            SpanKind::Mav => "mav",
            SpanKind::Iav => "iav",
            SpanKind::Mv => "mv",
            SpanKind::Sv => "sv",
        }
    }
}

/// Joint metrics over paired WP/SP values at a scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JointKind {
    Jcv,
    Pearson,
    Kendall,
    Cmed,
}

impl JointKind {
    pub const ALL: [JointKind; 4] = [
        JointKind::Jcv,
        JointKind::Pearson,
        JointKind::Kendall,
        JointKind::Cmed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JointKind::Jcv => "jcv",
            JointKind::Pearson => "pearson",
            JointKind::Kendall => "kendall",
            JointKind::Cmed => "cmed",
        }
    }
}

/// One entry of the metric registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Uni(Variable, UniKind),
    Span(Variable, SpanKind),
    Joint(JointKind),
}

impl Metric {
    /// Every registry metric, in canonical output order.
    pub fn registry() -> Vec<Metric> {
        let mut out = Vec::new();
        for var in Variable::ALL {
            for kind in UniKind::ALL {
                out.push(Metric::Uni(var, kind));
            }
            for kind in SpanKind::ALL {
                out.push(Metric::Span(var, kind));
            }
        }
        for kind in JointKind::ALL {
            out.push(Metric::Joint(kind));
        }
        out
    }

    pub fn name(self) -> String {
        match self {
            Metric::Uni(var, kind) => format!("{}_{}", var.prefix(), kind.suffix()),
            Metric::Span(var, kind) => format!("{}_{}", var.prefix(), kind.suffix()),
            Metric::Joint(kind) => kind.name().to_string(),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Metric::registry()
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown metric `{s}` (known: {})",
                    Metric::registry()
                        .iter()
                        .map(|m| m.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })
    }
}

/// Grid column name of a joint metric at a scale: plain at most scales, one
/// column per season (`pearson_djf`, ...) at the seasonal scale.
pub fn joint_column_name(kind: JointKind, scale: TimeScale, season: Option<Season>) -> String {
    match (scale, season) {
        (TimeScale::Seasonal, Some(season)) => {
            format!("{}_{}", kind.name(), season.label().to_ascii_lowercase())
        }
        _ => kind.name().to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_closed_and_parses_back() {
        let all = Metric::registry();
        assert_eq!(all.len(), 2 * (7 + 4) + 4);
        for m in &all {
            let parsed: Metric = m.name().parse().unwrap();
            assert_eq!(parsed, *m);
        }
        assert!("wp_bogus".parse::<Metric>().is_err());
    }

    #[test]
    fn seasonal_joint_columns_carry_the_season() {
        assert_eq!(
            joint_column_name(JointKind::Pearson, TimeScale::Seasonal, Some(Season::Djf)),
            "pearson_djf"
        );
        assert_eq!(
            joint_column_name(JointKind::Pearson, TimeScale::Annual, None),
            "pearson"
        );
    }
}
