//! Wind power density, turbine power, PV power, and monthly energy yield.

use crate::error::{Error, Result};
use crate::series::{partition, ResourceSeries, TimeScale};

/// Air density in kg/m³ used by the wind power density formula.
///
/// The default is 1.2258; 1.225 (the value the Rayleigh mean-power identity
/// is usually quoted with) is a common alternative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirDensity(f64);

impl AirDensity {
    pub const DEFAULT: AirDensity = AirDensity(1.2258);
    /// Standard-atmosphere value quoted with the Rayleigh identity.
    pub const STANDARD: AirDensity = AirDensity(1.225);

    pub fn new(rho: f64) -> Result<Self> {
        if rho.is_nan() || rho <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "air density must be positive, got {rho}"
            )));
        }
        Ok(AirDensity(rho))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for AirDensity {
    fn default() -> Self {
        AirDensity::DEFAULT
    }
}

/// Wind power density 0.5·ρ·u³ in W/m² for wind speed `u` in m/s.
pub fn wind_power_density(u: f64, rho: AirDensity) -> Result<f64> {
    if u < 0.0 {
        return Err(Error::InvalidInput(format!("negative wind speed {u}")));
    }
    Ok(0.5 * rho.value() * u * u * u)
}

/// Per-hour wind power density over a speed series.
pub fn wind_power_density_series(speeds: &[f64], rho: AirDensity) -> Result<Vec<f64>> {
    speeds
        .iter()
        .map(|&u| wind_power_density(u, rho))
        .collect()
}

/// Arithmetic mean of an hourly power-density series.
pub fn mean_power_density(series: &[f64]) -> Result<f64> {
    if series.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(series.iter().sum::<f64>() / series.len() as f64)
}

/// Power-law vertical extrapolation from the 100 m reference height.
///
/// Returns `u100 · (target_height / 100)^exponent`; exponent 0 leaves the
/// 100 m speeds untouched (the default used by the pipeline), 0.11 is a
/// typical offshore shear value.
pub fn shear_extrapolate(u100: f64, target_height_m: f64, exponent: f64) -> f64 {
    assert!(
        target_height_m > 0.0,
        "target height must be positive, got {target_height_m}"
    );
    u100 * (target_height_m / 100.0).powf(exponent)
}

// ---------------------------------------------------------------------------
// Turbine power curve
// ---------------------------------------------------------------------------

/// Tabulated turbine power curve with cut-in/rated/cut-out behaviour.
///
/// Output is zero below cut-in and at/after cut-out, the rated power on
/// [rated, cut-out), and piecewise-linear between the tabulated points in
/// between. Point speeds are m/s, powers kW.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCurve {
    points: Vec<(f64, f64)>,
    pub cut_in: f64,
    pub rated: f64,
    pub cut_out: f64,
    pub rated_power_kw: f64,
    pub hub_height_m: f64,
}

impl PowerCurve {
    pub fn new(
        points: Vec<(f64, f64)>,
        cut_in: f64,
        rated: f64,
        cut_out: f64,
        rated_power_kw: f64,
        hub_height_m: f64,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfig("power curve needs at least one point".into()));
        }
        if !(0.0 <= cut_in && cut_in < rated && rated <= cut_out) {
            return Err(Error::InvalidConfig(format!(
                "power curve speeds must satisfy 0 <= cut_in < rated <= cut_out \
                 (got {cut_in}, {rated}, {cut_out})"
            )));
        }
        if rated_power_kw.is_nan() || rated_power_kw <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "rated power must be positive, got {rated_power_kw}"
            )));
        }
        if hub_height_m.is_nan() || hub_height_m <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "hub height must be positive, got {hub_height_m}"
            )));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidConfig(format!(
                    "power curve speeds must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::InvalidConfig(format!(
                    "power curve must be non-decreasing up to rated ({} kW then {} kW)",
                    w[0].1, w[1].1
                )));
            }
        }
        if points.first().unwrap().0 < cut_in || points.last().unwrap().0 > rated {
            return Err(Error::InvalidConfig(
                "power curve points must lie within [cut_in, rated]".into(),
            ));
        }
        if points.iter().any(|&(_, p)| p < 0.0) {
            return Err(Error::InvalidConfig("negative power in curve".into()));
        }
        let max = points.iter().fold(0.0f64, |acc, &(_, p)| acc.max(p));
        if max != rated_power_kw {
            return Err(Error::InvalidConfig(format!(
                "maximum curve power {max} kW must equal the rated power {rated_power_kw} kW"
            )));
        }
        Ok(PowerCurve {
            points,
            cut_in,
            rated,
            cut_out,
            rated_power_kw,
            hub_height_m,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Electrical power in kW at hub-height wind speed `u` (m/s).
    pub fn power_kw(&self, u: f64) -> f64 {
        if u.is_nan() || u < self.cut_in || u >= self.cut_out {
            return 0.0;
        }
        if u >= self.rated {
            return self.rated_power_kw;
        }
        // Anchor at (cut_in, 0) when the table starts above cut-in.
        let (mut s0, mut p0) = (self.cut_in, 0.0);
        if self.points[0].0 == self.cut_in {
            p0 = self.points[0].1;
        }
        for &(s1, p1) in &self.points {
            if u < s1 {
                return p0 + (u - s0) / (s1 - s0) * (p1 - p0);
            }
            s0 = s1;
            p0 = p1;
        }
        // Between the last tabulated point and rated the curve is flat.
        p0
    }
}

/// Mean electrical power (kW) of a turbine over an hourly hub-height series.
pub fn mean_turbine_power(u_hub: &[f64], curve: &PowerCurve) -> Result<f64> {
    if u_hub.is_empty() {
        return Err(Error::EmptySeries);
    }
    Ok(u_hub.iter().map(|&u| curve.power_kw(u)).sum::<f64>() / u_hub.len() as f64)
}

// ---------------------------------------------------------------------------
// PV farm
// ---------------------------------------------------------------------------

/// How the configured PV temperature coefficient is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaTUnit {
    /// The figure is a percentage per °C (datasheet style, e.g. -0.41 %/°C).
    #[default]
    PercentPerC,
    /// The figure is already a per-°C fraction.
    FractionPerC,
}

/// Floating PV farm parameters.
///
/// Defaults describe a 36,364-module farm of 220 W panels with a flat 0.85
/// system performance factor and the empirical sea-surface module-temperature
/// model `T_mod = c0 + c1·T_a + c2·G − c3·u10`.
///
/// On the temperature coefficient: the SPR-220-BLK table prints "-0.041/°C".
/// Read as a bare per-°C fraction that would zero the panel near 49 °C, which
/// no silicon module does; the default therefore takes the figure as the
/// datasheet-style -0.41 %/°C (i.e. -0.0041/°C). Set `alpha_t = -0.041` and
/// `alpha_t_unit = FractionPerC` to reproduce the literal reading.
#[derive(Debug, Clone, PartialEq)]
pub struct PvFarmConfig {
    /// Rated module power at standard testing conditions, W.
    pub p_stc_w: f64,
    /// Temperature coefficient, interpreted per `alpha_t_unit`.
    pub alpha_t: f64,
    pub alpha_t_unit: AlphaTUnit,
    /// Flat system performance factor in (0, 1].
    pub eta: f64,
    /// Module count of the farm.
    pub n_modules: u32,
    /// Module-temperature model coefficients (°C, -, °C·m²/W, °C·s/m).
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Default for PvFarmConfig {
    fn default() -> Self {
        PvFarmConfig {
            p_stc_w: 220.0,
            alpha_t: -0.41,
            alpha_t_unit: AlphaTUnit::PercentPerC,
            eta: 0.85,
            n_modules: 36_364,
            c0: 2.0458,
            c1: 0.9458,
            c2: 0.0215,
            c3: 1.2376,
        }
    }
}

impl PvFarmConfig {
    /// Irradiance at standard testing conditions, W/m².
    pub const G_STC: f64 = 1000.0;
    /// Module temperature at standard testing conditions, °C.
    pub const T_STC: f64 = 25.0;

    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "pv eta must be in (0, 1], got {}",
                self.eta
            )));
        }
        if self.p_stc_w.is_nan() || self.p_stc_w <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "pv rated module power must be positive, got {}",
                self.p_stc_w
            )));
        }
        if self.n_modules < 1 {
            return Err(Error::InvalidConfig("pv module count must be >= 1".into()));
        }
        Ok(())
    }

    /// Effective temperature coefficient as a per-°C fraction.
    pub fn alpha_t_fraction(&self) -> f64 {
        match self.alpha_t_unit {
            AlphaTUnit::PercentPerC => self.alpha_t / 100.0,
            AlphaTUnit::FractionPerC => self.alpha_t,
        }
    }
}

/// Empirical PV module temperature (°C) on open water.
pub fn pv_module_temperature(t_a_c: f64, g: f64, u10: f64, cfg: &PvFarmConfig) -> f64 {
    cfg.c0 + cfg.c1 * t_a_c + cfg.c2 * g - cfg.c3 * u10
}

/// Temperature-corrected per-module electrical power, W.
///
/// `η · (G / G_STC) · P_STC · [1 + α_T (T_mod − T_STC)]` with the signed
/// datasheet coefficient (negative for silicon, so hot modules lose power;
/// with the literal -0.041/°C reading the bracket reaches zero near 49 °C).
/// Clamped at zero when the temperature correction drives it negative.
pub fn pv_power(g: f64, t_mod_c: f64, cfg: &PvFarmConfig) -> f64 {
    debug_assert!(g >= 0.0);
    let bracket = 1.0 + cfg.alpha_t_fraction() * (t_mod_c - PvFarmConfig::T_STC);
    (cfg.eta * (g / PvFarmConfig::G_STC) * cfg.p_stc_w * bracket).max(0.0)
}

/// Whole-farm electrical power, W.
pub fn farm_pv_power(g: f64, t_mod_c: f64, cfg: &PvFarmConfig) -> f64 {
    cfg.n_modules as f64 * pv_power(g, t_mod_c, cfg)
}

// ---------------------------------------------------------------------------
// Monthly energy
// ---------------------------------------------------------------------------

/// Turbine, PV farm, and shear settings used for the energy computation.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceConfig {
    pub power_curve: PowerCurve,
    pub pv: PvFarmConfig,
    /// Power-law exponent for hub-height extrapolation (0 = use 100 m winds).
    pub shear_exponent: f64,
}

/// One month of energy output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonthlyEnergyRow {
    pub year: i32,
    pub month: u32,
    pub wind_gwh: f64,
    pub solar_gwh: f64,
    pub combined_gwh: f64,
    /// False when the axis covers only part of the calendar month.
    pub complete: bool,
}

/// Monthly wind/solar/combined energy, GWh.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MonthlyEnergyTable {
    pub rows: Vec<MonthlyEnergyRow>,
}

/// Integrate turbine and PV farm power over each calendar month.
///
/// Hourly power × 1 h summed per month: wind from the hub-height speeds
/// through the power curve, solar from the farm model. Incomplete months are
/// flagged, not dropped. The combined column is the exact sum of the other
/// two.
pub fn monthly_energy(series: &ResourceSeries, device: &DeviceConfig) -> Result<MonthlyEnergyTable> {
    device.pv.validate()?;
    let axis = series.axis();
    let periods = partition(axis, TimeScale::Monthly)?;

    let mut rows = Vec::with_capacity(periods.len());
    for period in &periods {
        let mut wind_kwh = 0.0f64;
        let mut solar_wh = 0.0f64;
        for i in period.range.clone() {
            let u_hub = shear_extrapolate(
                series.u100()[i],
                device.power_curve.hub_height_m,
                device.shear_exponent,
            );
            wind_kwh += device.power_curve.power_kw(u_hub);
            let g = series.ssrd()[i];
            let t_mod = pv_module_temperature(series.t2m()[i], g, series.u10()[i], &device.pv);
            solar_wh += farm_pv_power(g, t_mod, &device.pv);
        }
        let ts = axis.timestamp(period.range.start);
        let wind_gwh = wind_kwh / 1e6;
        let solar_gwh = solar_wh / 1e9;
        rows.push(MonthlyEnergyRow {
            year: chrono::Datelike::year(&ts),
            month: chrono::Datelike::month(&ts),
            wind_gwh,
            solar_gwh,
            combined_gwh: wind_gwh + solar_gwh,
            complete: period.complete,
        });
    }
    Ok(MonthlyEnergyTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TimeAxis;
    use chrono::{TimeZone, Utc};

    pub(crate) fn test_curve() -> PowerCurve {
        PowerCurve::new(
            vec![
                (4.0, 100.0),
                (5.0, 650.0),
                (6.0, 1150.0),
                (7.0, 1850.0),
                (8.0, 2900.0),
                (9.0, 4150.0),
                (10.0, 5600.0),
                (11.0, 6900.0),
                (12.0, 7700.0),
                (13.0, 8000.0),
            ],
            4.0,
            13.0,
            25.0,
            8000.0,
            105.0,
        )
        .unwrap()
    }

    #[test]
    fn wind_power_density_examples() {
        let rho = AirDensity::DEFAULT;
        assert_eq!(wind_power_density(0.0, rho).unwrap(), 0.0);
        let w = wind_power_density(10.0, rho).unwrap();
        assert!((w - 612.9).abs() < 1e-9, "{w}");
        assert!(wind_power_density(-1.0, rho).is_err());
    }

    #[test]
    fn wind_power_density_is_exactly_cubic() {
        let rho = AirDensity::DEFAULT;
        for u in [0.5, 1.0, 3.7, 9.25, 24.0] {
            let one = wind_power_density(u, rho).unwrap();
            let two = wind_power_density(2.0 * u, rho).unwrap();
            assert_eq!(two, 8.0 * one, "u={u}");
        }
    }

    #[test]
    fn mean_power_density_basics() {
        assert_eq!(mean_power_density(&[100.0; 7]).unwrap(), 100.0);
        assert_eq!(mean_power_density(&[0.0, 600.0]).unwrap(), 300.0);
        assert!(mean_power_density(&[]).is_err());
    }

    #[test]
    fn mean_power_density_windy_gulf_fixture() {
        use rand::{Rng, SeedableRng};
        // Rayleigh speeds sized so the closed form (3/pi)*rho*u^3 gives
        // ~1,130 W/m2, the kind of mean seen at the windiest offshore basins.
        let rho = AirDensity::DEFAULT;
        let target = 1130.0f64;
        let mean_speed = (target * std::f64::consts::PI / (3.0 * rho.value())).cbrt();
        let sigma = mean_speed / (std::f64::consts::PI / 2.0).sqrt();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let speeds: Vec<f64> = (0..359_400)
            .map(|_| {
                let u: f64 = rng.random::<f64>();
                sigma * (-2.0 * (1.0 - u).max(1e-300).ln()).sqrt()
            })
            .collect();
        let wpd = wind_power_density_series(&speeds, rho).unwrap();
        let mean = mean_power_density(&wpd).unwrap();
        assert!(
            (mean - target).abs() < 0.05 * target,
            "41 years of synthetic hours landed at {mean} W/m2"
        );
    }

    #[test]
    fn shear_examples() {
        assert_eq!(shear_extrapolate(10.0, 140.0, 0.0), 10.0);
        assert_eq!(shear_extrapolate(10.0, 100.0, 0.37), 10.0);
        let expected = 10.0 * 1.2f64.powf(0.11);
        assert_eq!(shear_extrapolate(10.0, 120.0, 0.11), expected);
    }

    #[test]
    fn turbine_power_piecewise_behaviour() {
        let curve = test_curve();
        assert_eq!(curve.power_kw(3.9), 0.0);
        assert_eq!(curve.power_kw(25.0), 0.0);
        assert_eq!(curve.power_kw(30.0), 0.0);
        assert_eq!(curve.power_kw(13.0), 8000.0);
        assert_eq!(curve.power_kw(20.0), 8000.0);
        // Exactly at a tabulated point.
        assert_eq!(curve.power_kw(8.0), 2900.0);
        // Midway between two points: arithmetic midpoint of their powers.
        let got = curve.power_kw(8.5);
        assert!((got - (2900.0 + 4150.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn turbine_power_anchors_at_cut_in_when_table_starts_higher() {
        let curve = PowerCurve::new(
            vec![(5.0, 1000.0), (10.0, 5000.0)],
            3.0,
            10.0,
            25.0,
            5000.0,
            100.0,
        )
        .unwrap();
        assert_eq!(curve.power_kw(3.0), 0.0);
        assert!((curve.power_kw(4.0) - 500.0).abs() < 1e-12);
    }

    #[test]
    fn invalid_curves_are_rejected() {
        // Non-increasing speeds.
        assert!(PowerCurve::new(
            vec![(5.0, 100.0), (5.0, 200.0)],
            4.0,
            13.0,
            25.0,
            200.0,
            100.0
        )
        .is_err());
        // Max power != rated power.
        assert!(PowerCurve::new(
            vec![(5.0, 100.0), (13.0, 7000.0)],
            4.0,
            13.0,
            25.0,
            8000.0,
            100.0
        )
        .is_err());
        // Decreasing power.
        assert!(PowerCurve::new(
            vec![(5.0, 300.0), (6.0, 200.0), (13.0, 8000.0)],
            4.0,
            13.0,
            25.0,
            8000.0,
            100.0
        )
        .is_err());
    }

    #[test]
    fn mean_turbine_power_examples() {
        let curve = test_curve();
        assert_eq!(mean_turbine_power(&[13.0; 100], &curve).unwrap(), 8000.0);
        assert_eq!(mean_turbine_power(&[2.0; 100], &curve).unwrap(), 0.0);
        let half: Vec<f64> = (0..100).map(|i| if i % 2 == 0 { 13.0 } else { 0.0 }).collect();
        assert_eq!(mean_turbine_power(&half, &curve).unwrap(), 4000.0);
    }

    #[test]
    fn pv_module_temperature_spot_values() {
        let cfg = PvFarmConfig::default();
        let t1 = pv_module_temperature(25.0, 0.0, 0.0, &cfg);
        assert!((t1 - 25.6908).abs() < 1e-9);
        let t2 = pv_module_temperature(20.0, 1000.0, 5.0, &cfg);
        assert!((t2 - 36.2738).abs() < 1e-9);
        // More 10 m wind cools the module.
        assert!(pv_module_temperature(20.0, 1000.0, 6.0, &cfg) < t2);
    }

    #[test]
    fn pv_power_stc_and_clamping() {
        let cfg = PvFarmConfig::default();
        assert_eq!(pv_power(0.0, 40.0, &cfg), 0.0);
        let stc = pv_power(1000.0, 25.0, &cfg);
        assert!((stc - 187.0).abs() < 1e-9, "{stc}");
        let farm = farm_pv_power(1000.0, 25.0, &cfg);
        assert!((farm - 36_364.0 * 187.0).abs() < 1e-6);
        // Hot enough to zero the bracket (only reachable with the literal
        // fraction reading of the coefficient).
        let literal = PvFarmConfig {
            alpha_t: -0.041,
            alpha_t_unit: AlphaTUnit::FractionPerC,
            ..PvFarmConfig::default()
        };
        assert_eq!(pv_power(1000.0, 80.0, &literal), 0.0);
    }

    #[test]
    fn pv_power_linear_in_irradiance_at_fixed_temperature() {
        let cfg = PvFarmConfig::default();
        let p1 = pv_power(250.0, 30.0, &cfg);
        let p2 = pv_power(500.0, 30.0, &cfg);
        let p4 = pv_power(1000.0, 30.0, &cfg);
        assert!((p2 - 2.0 * p1).abs() < 1e-9);
        assert!((p4 - 2.0 * p2).abs() < 1e-9);
        assert!(p1 >= 0.0);
    }

    #[test]
    fn monthly_energy_constant_rated_month() {
        // April 2001: 30 days = 720 hours of rated wind, zero sun.
        let start = Utc.with_ymd_and_hms(2001, 4, 1, 0, 0, 0).unwrap();
        let axis = TimeAxis::new(start, 720).unwrap();
        let series = ResourceSeries::new(
            axis,
            vec![13.0; 720],
            vec![0.0; 720],
            vec![15.0; 720],
            vec![9.0; 720],
        )
        .unwrap();
        let device = DeviceConfig {
            power_curve: test_curve(),
            pv: PvFarmConfig::default(),
            shear_exponent: 0.0,
        };
        let table = monthly_energy(&series, &device).unwrap();
        assert_eq!(table.rows.len(), 1);
        let row = &table.rows[0];
        assert!(row.complete);
        assert_eq!(row.wind_gwh, 5.76);
        assert_eq!(row.solar_gwh, 0.0);
        assert_eq!(row.combined_gwh, row.wind_gwh + row.solar_gwh);
    }

    #[test]
    fn monthly_energy_flags_incomplete_months() {
        let start = Utc.with_ymd_and_hms(2001, 4, 20, 0, 0, 0).unwrap();
        let axis = TimeAxis::new(start, 24 * 20).unwrap(); // Apr 20 .. May 9
        let n = axis.len();
        let series = ResourceSeries::new(
            axis,
            vec![10.0; n],
            vec![100.0; n],
            vec![15.0; n],
            vec![7.0; n],
        )
        .unwrap();
        let device = DeviceConfig {
            power_curve: test_curve(),
            pv: PvFarmConfig::default(),
            shear_exponent: 0.0,
        };
        let table = monthly_energy(&series, &device).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert!(table.rows.iter().all(|r| !r.complete));
    }

    #[test]
    fn monthly_energy_summer_hybrid_fixture() {
        // A breezy, sunny July tuned to land near 6 GWh combined.
        let start = Utc.with_ymd_and_hms(2001, 7, 1, 0, 0, 0).unwrap();
        let axis = TimeAxis::new(start, 744).unwrap();
        let n = axis.len();
        let u100: Vec<f64> = (0..n).map(|i| if i % 10 < 7 { 13.5 } else { 3.0 }).collect();
        let ssrd: Vec<f64> = (0..n)
            .map(|i| {
                let hod = i % 24;
                if (6..18).contains(&hod) {
                    let x = (hod as f64 - 6.0) / 12.0 * std::f64::consts::PI;
                    1000.0 * x.sin()
                } else {
                    0.0
                }
            })
            .collect();
        let u10: Vec<f64> = u100.iter().map(|u| 0.75 * u).collect();
        let series = ResourceSeries::new(axis, u100, ssrd, vec![26.0; n], u10).unwrap();
        let device = DeviceConfig {
            power_curve: test_curve(),
            pv: PvFarmConfig::default(),
            shear_exponent: 0.0,
        };
        let table = monthly_energy(&series, &device).unwrap();
        let row = &table.rows[0];
        assert!(
            (5.5..=6.5).contains(&row.combined_gwh),
            "combined {} GWh",
            row.combined_gwh
        );
        assert!(row.wind_gwh > row.solar_gwh);
    }
}
