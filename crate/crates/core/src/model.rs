//! Device parameters, unit conventions and derived scalars.

use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, K_B, TWO_PI};
use crate::error::{Error, Result};

/// Mechanical quality factor below which the Markovian thermal-noise
/// reduction is flagged as questionable.
pub const HIGH_Q_THRESHOLD: f64 = 1e3;

/// Fixed physical constants and tunables of the device, SI units with
/// angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Drive angular frequency, rad/s.
    pub omega_d: f64,
    /// Cavity angular resonance frequency at membrane equilibrium, rad/s.
    pub omega_a: f64,
    /// Cavity amplitude decay rate at membrane equilibrium, rad/s.
    pub kappa_a: f64,
    /// Mechanical angular frequency, rad/s.
    pub omega_m: f64,
    /// Mechanical damping rate, rad/s.
    pub gamma_m: f64,
    /// Membrane effective mass, kg.
    pub mass: f64,
    /// Effective cavity length, m.
    pub length_l: f64,
    /// Single-photon coherent coupling, rad/s.
    pub g_omega: f64,
    /// Single-photon dissipative coupling, rad/s.
    pub g_kappa: f64,
    /// Drive power, W.
    pub power: f64,
    /// Bath temperature, K.
    pub temperature: f64,
    /// Drive phase, rad.
    pub theta: f64,
}

impl PhysicalParams {
    /// Membrane-in-interferometer device: 1064 nm drive, 136 kHz membrane
    /// with Q of about 5.8e5, 1.5 MHz cavity linewidth, 80 ng, 8.7 cm.
    ///
    /// Couplings, power and temperature are zero and the drive is resonant;
    /// callers set them per experiment.
    pub fn msi_reference() -> Self {
        let omega_d = TWO_PI * 281.96e12;
        PhysicalParams {
            omega_d,
            omega_a: omega_d,
            kappa_a: TWO_PI * 1.5e6,
            omega_m: TWO_PI * 136e3,
            gamma_m: TWO_PI * 0.23,
            mass: 80e-12,
            length_l: 8.7e-2,
            g_omega: 0.0,
            g_kappa: 0.0,
            power: 0.0,
            temperature: 0.0,
            theta: 0.0,
        }
    }

    /// Bare detuning Δ_a = ω_a − ω_d.
    pub fn bare_detuning(&self) -> f64 {
        self.omega_a - self.omega_d
    }

    /// Mechanical quality factor ω_m/γ_m (infinite when undamped).
    pub fn quality_factor(&self) -> f64 {
        self.omega_m / self.gamma_m
    }

    pub fn derived(&self) -> Result<DerivedQuantities> {
        if !(self.mass > 0.0) {
            return Err(Error::param("mass", "must be positive"));
        }
        if !(self.omega_m > 0.0) {
            return Err(Error::param("omega_m", "must be positive"));
        }
        Ok(DerivedQuantities {
            drive_amplitude: drive_amplitude(self.power, self.omega_d)?,
            n_th: thermal_occupation(self.temperature, self.omega_m),
            x_zpf: zero_point_fluctuation(self.mass, self.omega_m),
        })
    }

    /// Drive amplitude |ℰ| in √(photons/s).
    pub fn drive(&self) -> Result<f64> {
        drive_amplitude(self.power, self.omega_d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedQuantities {
    /// |ℰ|, √(photons/s).
    pub drive_amplitude: f64,
    /// Mean thermal phonon number.
    pub n_th: f64,
    /// Zero-point fluctuation of the membrane, m.
    pub x_zpf: f64,
}

/// Which single-photon couplings are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Coherent,
    Dissipative,
    Cooperative,
}

impl Scenario {
    /// Checks that the couplings are consistent with the scenario.
    pub fn check(self, g_omega: f64, g_kappa: f64) -> Result<()> {
        match self {
            Scenario::Coherent if g_kappa != 0.0 => {
                Err(Error::param("g_kappa", "must vanish for coherent coupling"))
            }
            Scenario::Dissipative if g_omega != 0.0 => {
                Err(Error::param("g_omega", "must vanish for dissipative coupling"))
            }
            Scenario::Cooperative if g_omega == 0.0 || g_kappa == 0.0 => Err(Error::param(
                "g_omega/g_kappa",
                "both couplings must be nonzero for cooperative coupling",
            )),
            _ => Ok(()),
        }
    }

    /// Zeroes the coupling that the scenario switches off.
    pub fn apply(self, params: &mut PhysicalParams) {
        match self {
            Scenario::Coherent => params.g_kappa = 0.0,
            Scenario::Dissipative => params.g_omega = 0.0,
            Scenario::Cooperative => {}
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Coherent => "coherent",
            Scenario::Dissipative => "dissipative",
            Scenario::Cooperative => "cooperative",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" => Ok(Scenario::Coherent),
            "dissipative" => Ok(Scenario::Dissipative),
            "cooperative" => Ok(Scenario::Cooperative),
            other => Err(Error::param("scenario", format!("unknown scenario `{other}`"))),
        }
    }
}

/// √(P/(ħ ω_d)); its square is the photon flux of the drive.
pub fn drive_amplitude(power: f64, omega_d: f64) -> Result<f64> {
    if !(omega_d > 0.0) {
        return Err(Error::param("omega_d", "drive frequency must be positive"));
    }
    if !(power >= 0.0) {
        return Err(Error::param("power", "must be nonnegative"));
    }
    Ok((power / (HBAR * omega_d)).sqrt())
}

/// Bose–Einstein occupation 1/(exp(ħω_m/k_BT) − 1); exactly 0 at T = 0.
pub fn thermal_occupation(temperature: f64, omega_m: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega_m / (K_B * temperature);
    1.0 / x.exp_m1()
}

/// √(ħ/(2 m ω_m)) in metres.
pub fn zero_point_fluctuation(mass: f64, omega_m: f64) -> f64 {
    (HBAR / (2.0 * mass * omega_m)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Issue {
    pub severity: Severity,
    pub field: &'static str,
    pub message: String,
}

/// All violations found in a parameter set; never stops at the first one.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    fn error(&mut self, field: &'static str, message: impl Into<String>) {
        self.issues.push(Issue {
            severity: Severity::Error,
            field,
            message: message.into(),
        });
    }

    fn warning(&mut self, field: &'static str, message: impl Into<String>) {
        self.issues.push(Issue {
            severity: Severity::Warning,
            field,
            message: message.into(),
        });
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for issue in &self.issues {
            let tag = match issue.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            writeln!(f, "{tag}: {}: {}", issue.field, issue.message)?;
        }
        Ok(())
    }
}

pub fn validate_params(p: &PhysicalParams) -> ValidationReport {
    let mut report = ValidationReport::default();
    let fields: [(&'static str, f64); 12] = [
        ("omega_d", p.omega_d),
        ("omega_a", p.omega_a),
        ("kappa_a", p.kappa_a),
        ("omega_m", p.omega_m),
        ("gamma_m", p.gamma_m),
        ("mass", p.mass),
        ("length_l", p.length_l),
        ("g_omega", p.g_omega),
        ("g_kappa", p.g_kappa),
        ("power", p.power),
        ("temperature", p.temperature),
        ("theta", p.theta),
    ];
    for (name, value) in fields {
        if !value.is_finite() {
            report.error(name, format!("must be finite, got {value}"));
        }
    }

    let positive = [
        ("omega_d", p.omega_d),
        ("kappa_a", p.kappa_a),
        ("omega_m", p.omega_m),
        ("mass", p.mass),
        ("length_l", p.length_l),
    ];
    for (name, value) in positive {
        if value.is_finite() && value <= 0.0 {
            report.error(name, format!("must be positive, got {value:e}"));
        }
    }
    let nonnegative = [
        ("gamma_m", p.gamma_m),
        ("power", p.power),
        ("temperature", p.temperature),
    ];
    for (name, value) in nonnegative {
        if value.is_finite() && value < 0.0 {
            report.error(name, format!("must be nonnegative, got {value:e}"));
        }
    }

    if p.omega_m > 0.0 && p.gamma_m > 0.0 && p.quality_factor() < HIGH_Q_THRESHOLD {
        report.warning(
            "gamma_m",
            format!(
                "mechanical Q = {:.3e} is below {HIGH_Q_THRESHOLD:e}; the Markovian thermal noise model assumes omega_m >> gamma_m",
                p.quality_factor()
            ),
        );
    }
    report
}
