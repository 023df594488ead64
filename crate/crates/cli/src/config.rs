//! Run configuration in human units (Hz, mW, K, ng, cm, nm).
//!
//! Every frequency or rate in a config file is an ordinary frequency in Hz;
//! it is multiplied by 2π once, here, and never again.

use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use optomech::constants::{C, TWO_PI};
use optomech::sweep::{Axis, AxisParam, Spacing, SweepSpec, DEFAULT_POINTS_1D, DEFAULT_POINTS_2D};
use optomech::{
    validate_params, zero_point_fluctuation, InterferometerParams, PhysicalParams, Scenario,
    SteadyStateMode,
};
use serde::Deserialize;

pub const DEFAULT_SURVIVAL_T_MAX: f64 = 100.0;

#[derive(Debug)]
pub enum ConfigError {
    Io(PathBuf, std::io::Error),
    /// Malformed text; the message carries line and column.
    Syntax(String),
    /// Well-formed but semantically wrong; every violation is listed.
    Invalid(Vec<String>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(path, e) => write!(f, "cannot read {}: {e}", path.display()),
            ConfigError::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ConfigError::Invalid(list) => {
                write!(f, "invalid configuration ({} problem{}):", list.len(), if list.len() == 1 { "" } else { "s" })?;
                for item in list {
                    write!(f, "\n  - {item}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TextFormat {
    #[default]
    Toml,
    Json,
}

impl TextFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => TextFormat::Json,
            _ => TextFormat::Toml,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Axis quantities as they appear in config files and CSV headers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HumanParam {
    DeltaSOverOmegaM,
    DeltaAHz,
    DeltaAOverKappaA,
    GOmegaHz,
    GKappaHz,
    GRatio,
    PowerMw,
    TemperatureK,
}

impl HumanParam {
    pub fn column(self) -> &'static str {
        match self {
            HumanParam::DeltaSOverOmegaM => "delta_s_over_omega_m",
            HumanParam::DeltaAHz => "delta_a_hz",
            HumanParam::DeltaAOverKappaA => "delta_a_over_kappa_a",
            HumanParam::GOmegaHz => "g_omega_hz",
            HumanParam::GKappaHz => "g_kappa_hz",
            HumanParam::GRatio => "g_ratio",
            HumanParam::PowerMw => "power_mw",
            HumanParam::TemperatureK => "temperature_k",
        }
    }

    /// Engine parameter and the factor taking a human value to it.
    fn engine(self, params: &PhysicalParams) -> (AxisParam, f64) {
        match self {
            HumanParam::DeltaSOverOmegaM => (AxisParam::DeltaSOverOmegaM, 1.0),
            HumanParam::DeltaAHz => (AxisParam::DeltaA, TWO_PI),
            HumanParam::DeltaAOverKappaA => (AxisParam::DeltaA, params.kappa_a),
            HumanParam::GOmegaHz => (AxisParam::GOmega, TWO_PI),
            HumanParam::GKappaHz => (AxisParam::GKappa, TWO_PI),
            HumanParam::GRatio => (AxisParam::GRatio, 1.0),
            HumanParam::PowerMw => (AxisParam::Power, 1e-3),
            HumanParam::TemperatureK => (AxisParam::Temperature, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HumanAxis {
    pub param: HumanParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl HumanAxis {
    fn as_axis(&self) -> Axis {
        Axis {
            param: self.param.engine(&PhysicalParams::msi_reference()).0,
            start: self.start,
            stop: self.stop,
            points: self.points,
            spacing: self.spacing,
        }
    }

    /// Grid values in human units.
    pub fn values(&self) -> Vec<f64> {
        self.as_axis().values()
    }

    fn to_engine(self, params: &PhysicalParams) -> Axis {
        let (param, k) = self.param.engine(params);
        Axis {
            param,
            start: self.start * k,
            stop: self.stop * k,
            points: self.points,
            spacing: self.spacing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Detuning {
    /// Δ_s in units of ω_m.
    Effective { over_omega_m: f64 },
    /// Δ_a, rad/s.
    Bare { delta_a: f64 },
}

impl Detuning {
    /// Value handed to the engine, rad/s.
    pub fn value(&self, params: &PhysicalParams) -> f64 {
        match *self {
            Detuning::Effective { over_omega_m } => over_omega_m * params.omega_m,
            Detuning::Bare { delta_a } => delta_a,
        }
    }

    fn default_mode(&self) -> SteadyStateMode {
        match self {
            Detuning::Effective { .. } => SteadyStateMode::EffectiveDetuning,
            Detuning::Bare { .. } => SteadyStateMode::BareDetuning,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerScan {
    pub start_mw: f64,
    pub stop_mw: f64,
    pub points: usize,
}

impl PowerScan {
    /// Power grid in W, first point at start_mw (which may not be zero).
    pub fn grid(&self) -> Vec<f64> {
        Axis::linear(AxisParam::Power, self.start_mw, self.stop_mw, self.points)
            .values()
            .into_iter()
            .map(|mw| mw * 1e-3)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub mode: SteadyStateMode,
    pub params: PhysicalParams,
    pub detuning: Option<Detuning>,
    pub axes: Vec<HumanAxis>,
    pub survival_t_max: f64,
    pub power_scan: Option<PowerScan>,
    pub interferometer: Option<InterferometerParams>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn require_detuning(&self) -> Result<Detuning, ConfigError> {
        self.detuning
            .ok_or_else(|| ConfigError::Invalid(vec!["missing [detuning] section".into()]))
    }

    /// Replaces point counts, one per axis in order.
    pub fn override_grid(&mut self, counts: &[usize]) -> Result<(), ConfigError> {
        if counts.len() != self.axes.len() {
            return Err(ConfigError::Invalid(vec![format!(
                "--grid gives {} count(s) but the sweep has {} axis/axes",
                counts.len(),
                self.axes.len()
            )]));
        }
        for (axis, &n) in self.axes.iter_mut().zip(counts) {
            axis.points = n;
        }
        let errors: Vec<String> = self
            .axes
            .iter()
            .filter_map(|a| a.to_engine(&self.params).validate().err().map(|e| e.to_string()))
            .collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(errors))
        }
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec, ConfigError> {
        if self.axes.is_empty() {
            return Err(ConfigError::Invalid(vec!["missing [sweep] section with at least one axis".into()]));
        }
        let detuning = self.detuning.map_or(0.0, |d| d.value(&self.params));
        let spec = SweepSpec {
            scenario: self.scenario,
            mode: self.mode,
            base: self.params,
            detuning,
            axes: self.axes.iter().map(|a| a.to_engine(&self.params)).collect(),
        };
        spec.validate().map_err(|e| ConfigError::Invalid(vec![e.to_string()]))?;
        Ok(spec)
    }
}

type Pair = [f64; 2];

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: Option<Scenario>,
    mode: Option<SteadyStateMode>,
    device: Option<RawDevice>,
    detuning: Option<RawDetuning>,
    sweep: Option<RawSweep>,
    survival: Option<RawSurvival>,
    power_scan: Option<RawPowerScan>,
    interferometer: Option<RawInterferometer>,
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDevice {
    wavelength_nm: Option<f64>,
    drive_frequency_hz: Option<f64>,
    kappa_a_hz: Option<f64>,
    omega_m_hz: Option<f64>,
    gamma_m_hz: Option<f64>,
    mass_ng: Option<f64>,
    length_cm: Option<f64>,
    g_omega_hz: Option<f64>,
    g_kappa_hz: Option<f64>,
    power_mw: Option<f64>,
    temperature_k: Option<f64>,
    theta_rad: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDetuning {
    delta_s_over_omega_m: Option<f64>,
    delta_a_over_kappa_a: Option<f64>,
    delta_a_hz: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axes: Vec<RawAxis>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    param: HumanParam,
    start: f64,
    stop: f64,
    points: Option<usize>,
    #[serde(default)]
    spacing: Spacing,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurvival {
    t_max_k: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPowerScan {
    start_mw: f64,
    stop_mw: f64,
    points: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInterferometer {
    bs_r: Pair,
    bs_t: Pair,
    membrane_r: Pair,
    membrane_t: Pair,
    x_offset_rad: f64,
    #[serde(default = "default_true")]
    lossless: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<PathBuf>,
    format: Option<OutputFormat>,
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_path_buf(), e))?;
    parse_config(&text, TextFormat::from_path(path))
}

pub fn parse_config(text: &str, format: TextFormat) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = match format {
        TextFormat::Toml => toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string().trim_end().to_string()))?,
        TextFormat::Json if text.trim().is_empty() => RawConfig::default(),
        TextFormat::Json => serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?,
    };
    build(raw)
}

fn build(raw: RawConfig) -> Result<RunConfig, ConfigError> {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();

    if raw.scenario.is_none() {
        errors.push("missing required key `scenario`".to_string());
    }
    let dev = raw.device.unwrap_or_default();
    let mut need = |key: &str, v: Option<f64>| -> f64 {
        v.unwrap_or_else(|| {
            errors.push(format!("missing required key `device.{key}`"));
            f64::NAN
        })
    };
    let kappa_a = need("kappa_a_hz", dev.kappa_a_hz);
    let omega_m = need("omega_m_hz", dev.omega_m_hz);
    let gamma_m = need("gamma_m_hz", dev.gamma_m_hz);
    let mass = need("mass_ng", dev.mass_ng);
    let length = need("length_cm", dev.length_cm);
    let power = need("power_mw", dev.power_mw);
    let temperature = need("temperature_k", dev.temperature_k);

    let omega_d = match (dev.wavelength_nm, dev.drive_frequency_hz) {
        (Some(nm), None) => TWO_PI * C / (nm * 1e-9),
        (None, Some(f)) => TWO_PI * f,
        (Some(_), Some(_)) => {
            errors.push("give only one of `device.wavelength_nm` and `device.drive_frequency_hz`".into());
            f64::NAN
        }
        (None, None) => {
            errors.push("missing required key `device.wavelength_nm` (or `device.drive_frequency_hz`)".into());
            f64::NAN
        }
    };

    let mut params = PhysicalParams {
        omega_d,
        omega_a: omega_d,
        kappa_a: TWO_PI * kappa_a,
        omega_m: TWO_PI * omega_m,
        gamma_m: TWO_PI * gamma_m,
        mass: mass * 1e-12,
        length_l: length * 1e-2,
        g_omega: TWO_PI * dev.g_omega_hz.unwrap_or(0.0),
        g_kappa: TWO_PI * dev.g_kappa_hz.unwrap_or(0.0),
        power: power * 1e-3,
        temperature,
        theta: 0.0,
    };

    let detuning = raw.detuning.and_then(|d| {
        let given = [d.delta_s_over_omega_m, d.delta_a_over_kappa_a, d.delta_a_hz];
        match given.iter().filter(|v| v.is_some()).count() {
            1 => {}
            0 => {
                errors.push("[detuning] needs one of delta_s_over_omega_m, delta_a_over_kappa_a, delta_a_hz".into());
                return None;
            }
            _ => {
                errors.push("[detuning] takes exactly one of delta_s_over_omega_m, delta_a_over_kappa_a, delta_a_hz".into());
                return None;
            }
        }
        if let Some(v) = given.iter().flatten().find(|v| !v.is_finite()) {
            errors.push(format!("detuning must be finite, got {v}"));
        }
        Some(match d {
            RawDetuning { delta_s_over_omega_m: Some(v), .. } => Detuning::Effective { over_omega_m: v },
            RawDetuning { delta_a_over_kappa_a: Some(v), .. } => Detuning::Bare { delta_a: v * params.kappa_a },
            RawDetuning { delta_a_hz: Some(v), .. } => Detuning::Bare { delta_a: TWO_PI * v },
            _ => unreachable!(),
        })
    });

    // drive phase that makes a real at x = 0
    params.theta = match (dev.theta_rad, detuning) {
        (Some(t), _) => t,
        (None, Some(d)) => d.value(&params).atan2(params.kappa_a),
        (None, None) => 0.0,
    };
    if params.theta.is_nan() {
        params.theta = 0.0;
    }

    let report = validate_params(&params);
    for issue in &report.issues {
        let line = format!("{}: {}", human_field(issue.field), issue.message);
        match issue.severity {
            optomech::Severity::Error => {
                // missing keys already reported as such
                if !issue.message.contains("NaN") {
                    errors.push(line);
                }
            }
            optomech::Severity::Warning => warnings.push(line),
        }
    }

    let scenario = raw.scenario.unwrap_or(Scenario::Cooperative);
    let mode = raw
        .mode
        .or(detuning.map(|d| d.default_mode()))
        .unwrap_or(SteadyStateMode::EffectiveDetuning);

    let axes: Vec<HumanAxis> = raw
        .sweep
        .map(|s| s.axes)
        .unwrap_or_default()
        .into_iter()
        .map(|a| HumanAxis {
            param: a.param,
            start: a.start,
            stop: a.stop,
            points: a.points.unwrap_or(DEFAULT_POINTS_1D),
            spacing: a.spacing,
        })
        .collect();
    let axes = if axes.len() == 2 {
        // default density is lower on 2D grids
        axes.into_iter()
            .map(|mut a| {
                if a.points == DEFAULT_POINTS_1D {
                    a.points = DEFAULT_POINTS_2D;
                }
                a
            })
            .collect()
    } else {
        axes
    };
    let varied = |p: HumanParam| axes.iter().any(|a| a.param == p);

    if !axes.is_empty() && errors.is_empty() {
        let spec = SweepSpec {
            scenario,
            mode,
            base: params,
            detuning: detuning.map_or(0.0, |d| d.value(&params)),
            axes: axes.iter().map(|a| a.to_engine(&params)).collect(),
        };
        if let Err(e) = spec.validate() {
            errors.push(e.to_string());
        }
    }
    if let Some(d) = detuning {
        match (d, mode) {
            (Detuning::Effective { .. }, SteadyStateMode::BareDetuning) => {
                errors.push("bare-detuning mode needs delta_a_over_kappa_a or delta_a_hz".into())
            }
            (Detuning::Bare { .. }, SteadyStateMode::EffectiveDetuning | SteadyStateMode::FixedLinewidth) => {
                errors.push(format!("{} mode needs delta_s_over_omega_m", mode.name()))
            }
            _ => {}
        }
    }

    if raw.scenario.is_some() {
        match scenario {
            Scenario::Coherent if params.g_kappa != 0.0 && !varied(HumanParam::GKappaHz) => {
                errors.push("coherent scenario: device.g_kappa_hz must be 0".into())
            }
            Scenario::Dissipative if params.g_omega != 0.0 && !varied(HumanParam::GOmegaHz) => {
                errors.push("dissipative scenario: device.g_omega_hz must be 0".into())
            }
            Scenario::Coherent if varied(HumanParam::GKappaHz) || varied(HumanParam::GRatio) => {
                warnings.push("coherent scenario ignores the g_kappa axis".into())
            }
            Scenario::Dissipative if varied(HumanParam::GOmegaHz) => {
                warnings.push("dissipative scenario ignores the g_omega axis".into())
            }
            _ => {}
        }
    }

    let survival_t_max = raw.survival.map_or(DEFAULT_SURVIVAL_T_MAX, |s| s.t_max_k);
    if !(survival_t_max > optomech::sweep::SURVIVAL_T_REF) || !survival_t_max.is_finite() {
        errors.push(format!("survival.t_max_k must exceed {} K", optomech::sweep::SURVIVAL_T_REF));
    }

    let power_scan = raw.power_scan.map(|s| PowerScan {
        start_mw: s.start_mw,
        stop_mw: s.stop_mw,
        points: s.points,
    });
    if let Some(s) = power_scan {
        if !(s.start_mw >= 0.0 && s.stop_mw > s.start_mw && s.points >= 2) {
            errors.push("power_scan needs 0 <= start_mw < stop_mw and points >= 2".into());
        }
    }

    let interferometer = raw.interferometer.map(|i| {
        let c = |p: Pair| Complex64::new(p[0], p[1]);
        InterferometerParams {
            bs_r: c(i.bs_r),
            bs_t: c(i.bs_t),
            mem_r: c(i.membrane_r),
            mem_t: c(i.membrane_t),
            x_offset: i.x_offset_rad,
            omega_a: params.omega_a,
            length_l: params.length_l,
            x_zpf: zero_point_fluctuation(params.mass, params.omega_m),
            lossless: i.lossless,
        }
    });
    if let (Some(ifm), true) = (&interferometer, errors.is_empty()) {
        if let Err(e) = ifm.validate() {
            errors.push(e.to_string());
        }
    }

    let (out, format) = raw.output.map_or((None, None), |o| (o.path, o.format));

    if !errors.is_empty() {
        return Err(ConfigError::Invalid(errors));
    }
    Ok(RunConfig {
        scenario,
        mode,
        params,
        detuning,
        axes,
        survival_t_max,
        power_scan,
        interferometer,
        out,
        format,
        warnings,
    })
}

/// Config-file key for an engine field name.
fn human_field(field: &str) -> &str {
    match field {
        "omega_d" => "device.wavelength_nm",
        "kappa_a" => "device.kappa_a_hz",
        "omega_m" => "device.omega_m_hz",
        "gamma_m" => "device.gamma_m_hz",
        "mass" => "device.mass_ng",
        "length_l" => "device.length_cm",
        "g_omega" => "device.g_omega_hz",
        "g_kappa" => "device.g_kappa_hz",
        "power" => "device.power_mw",
        "temperature" => "device.temperature_k",
        "theta" => "device.theta_rad",
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
scenario = "coherent"

[device]
wavelength_nm = 1064
kappa_a_hz = 1.5e6
omega_m_hz = 136e3
gamma_m_hz = 0.23
mass_ng = 80
length_cm = 8.7
g_omega_hz = 3.1
power_mw = 50
temperature_k = 0.4

[detuning]
delta_s_over_omega_m = 2.0
"#;

    fn invalid(text: &str) -> Vec<String> {
        match parse_config(text, TextFormat::Toml) {
            Err(ConfigError::Invalid(v)) => v,
            other => panic!("expected semantic error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_converts_units() {
        let cfg = parse_config(MINIMAL, TextFormat::Toml).unwrap();
        assert_eq!(cfg.scenario, Scenario::Coherent);
        assert_eq!(cfg.mode, SteadyStateMode::EffectiveDetuning);
        assert_eq!(cfg.params.kappa_a, TWO_PI * 1.5e6);
        assert_eq!(cfg.params.mass, 80e-12);
        assert_eq!(cfg.params.power, 50e-3);
        assert!((cfg.params.length_l - 0.087).abs() < 1e-15);
        assert!((cfg.params.omega_d / TWO_PI - 281.76e12).abs() < 0.01e12);
        let ds = 2.0 * cfg.params.omega_m;
        assert_eq!(cfg.params.theta, ds.atan2(cfg.params.kappa_a));
    }

    #[test]
    fn empty_file_lists_required_keys() {
        let errs = invalid("");
        let all = errs.join("\n");
        for key in ["scenario", "kappa_a_hz", "omega_m_hz", "gamma_m_hz", "mass_ng", "length_cm", "power_mw", "temperature_k", "wavelength_nm"] {
            assert!(all.contains(key), "{key} not listed in {all}");
        }
    }

    #[test]
    fn negative_linewidth_is_rejected() {
        let text = MINIMAL.replace("kappa_a_hz = 1.5e6", "kappa_a_hz = -1.5e6");
        let errs = invalid(&text);
        assert!(errs.iter().any(|e| e.contains("kappa_a_hz")), "{errs:?}");
    }

    #[test]
    fn all_violations_are_reported() {
        let text = MINIMAL
            .replace("kappa_a_hz = 1.5e6", "kappa_a_hz = -1.5e6")
            .replace("mass_ng = 80", "mass_ng = 0");
        assert_eq!(invalid(&text).len(), 2);
    }

    #[test]
    fn unknown_key_is_a_syntax_error_with_position() {
        let text = MINIMAL.replace("power_mw = 50", "power_mW = 50");
        match parse_config(&text, TextFormat::Toml) {
            Err(ConfigError::Syntax(msg)) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_errors_carry_line_and_column() {
        match parse_config("{\n  \"scenario\": \"coherent\",\n  oops\n}", TextFormat::Json) {
            Err(ConfigError::Syntax(msg)) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mode_must_match_detuning() {
        let text = MINIMAL.replace("scenario = \"coherent\"", "scenario = \"coherent\"\nmode = \"bare-detuning\"");
        assert_eq!(invalid(&text).len(), 1);
    }

    #[test]
    fn coherent_rejects_dissipative_coupling() {
        let text = MINIMAL.replace("g_omega_hz = 3.1", "g_omega_hz = 3.1\ng_kappa_hz = 1.0");
        assert!(invalid(&text)[0].contains("g_kappa_hz"));
    }

    #[test]
    fn grid_override_checks_axis_count() {
        let text = format!(
            "{MINIMAL}\n[sweep]\naxes = [{{ param = \"g_omega_hz\", start = 0.0, stop = 6.0 }}]\n"
        );
        let mut cfg = parse_config(&text, TextFormat::Toml).unwrap();
        assert_eq!(cfg.axes[0].points, DEFAULT_POINTS_1D);
        assert!(cfg.override_grid(&[11, 11]).is_err());
        cfg.override_grid(&[11]).unwrap();
        let spec = cfg.sweep_spec().unwrap();
        assert_eq!(spec.axes[0].points, 11);
        assert_eq!(spec.axes[0].stop, TWO_PI * 6.0);
    }
}
