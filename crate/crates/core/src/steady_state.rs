//! Classical mean-field operating points.
//!
//! At steady state the membrane momentum vanishes, the cavity amplitude is
//! a_s = Γ_s ℰ / (κ_s + iΔ_s) and the displacement x_s solves a cubic whose
//! coefficients depend on the bare detuning and the drive strength. With
//! coherent coupling the cubic can have three real roots (bistability);
//! dissipative coupling alone gives a single admissible root.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear;
use crate::model::PhysicalParams;
use crate::roots::{cubic_term_scale, eval_cubic, real_cubic_roots};

/// Residual bound for a root of the displacement cubic, relative to the sum
/// of absolute term magnitudes.
pub const CUBIC_RESIDUAL_TOL: f64 = 1e-8;

/// Continuation steps used when several admissible roots compete.
const CONTINUATION_STEPS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    /// Membrane displacement, zero-point units.
    pub x_s: f64,
    /// Membrane momentum; zero at any fixed point.
    pub p_s: f64,
    /// Intracavity amplitude, √photons.
    pub a_s: Complex64,
    /// Intracavity photon number |a_s|².
    pub n_s: f64,
    /// Bare detuning Δ_a, rad/s.
    pub delta_a: f64,
    /// Effective detuning Δ_s = Δ_a − g_ω x_s, rad/s.
    pub delta_s: f64,
    /// Effective decay κ_s = κ_a − g_κ x_s, rad/s.
    pub kappa_s: f64,
    /// Effective input coupling Γ_s = √(2κ_a) − g_κ x_s/√(2κ_a), √(rad/s).
    pub gamma_big_s: f64,
    /// Drive amplitude |ℰ|, √(photons/s).
    pub drive: f64,
    /// Drive phase used for `a_s`, rad.
    pub theta: f64,
    /// False when the displacement feedback on κ_s and Γ_s was neglected.
    pub self_consistent: bool,
}

impl SteadyState {
    /// Relative residual of the displacement cubic at this state's x_s and
    /// Δ_a.
    pub fn cubic_residual(&self, params: &PhysicalParams) -> Result<f64> {
        let c = cubic_coefficients(params, self.delta_a)?.as_array();
        let scale = cubic_term_scale(c, self.x_s);
        if scale == 0.0 {
            return Ok(0.0);
        }
        Ok(eval_cubic(c, self.x_s).abs() / scale)
    }

    /// Same operating point with the drive phase chosen so that a_s is real
    /// and positive.
    pub fn gauge_fixed(&self) -> SteadyState {
        let theta = linear::phase_for_real_amplitude(self.delta_s, self.kappa_s);
        let drive = Complex64::from_polar(self.drive, theta);
        let a_s = self.gamma_big_s * drive / Complex64::new(self.kappa_s, self.delta_s);
        SteadyState {
            a_s,
            theta,
            ..*self
        }
    }
}

/// How the operating point is pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SteadyStateMode {
    /// Bare detuning Δ_a fixed; x_s from the displacement cubic.
    BareDetuning,
    /// Effective detuning Δ_s fixed; x_s solved self-consistently.
    EffectiveDetuning,
    /// Effective detuning Δ_s fixed, with κ_s = κ_a and Γ_s = √(2κ_a)
    /// (the displacement's feedback on the linewidth is neglected).
    FixedLinewidth,
}

impl SteadyStateMode {
    /// Operating point for `detuning`, interpreted as Δ_a in bare mode and
    /// as Δ_s otherwise. Multistable cases return the branch connected to
    /// x_s = 0 at zero drive.
    pub fn solve(self, params: &PhysicalParams, detuning: f64) -> Result<SteadyState> {
        match self {
            SteadyStateMode::BareDetuning => {
                let set = steady_states_at_bare_detuning(params, detuning)?;
                set.selected()
                    .map(|b| b.state)
                    .ok_or_else(|| Error::NoOperatingPoint("no admissible root of the displacement cubic".into()))
            }
            SteadyStateMode::EffectiveDetuning => steady_state_at_effective_detuning(params, detuning),
            SteadyStateMode::FixedLinewidth => steady_state_fixed_linewidth(params, detuning),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SteadyStateMode::BareDetuning => "bare-detuning",
            SteadyStateMode::EffectiveDetuning => "effective-detuning",
            SteadyStateMode::FixedLinewidth => "fixed-linewidth",
        }
    }
}

impl std::str::FromStr for SteadyStateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bare-detuning" => Ok(SteadyStateMode::BareDetuning),
            "effective-detuning" => Ok(SteadyStateMode::EffectiveDetuning),
            "fixed-linewidth" => Ok(SteadyStateMode::FixedLinewidth),
            other => Err(Error::param("mode", format!("unknown steady-state mode `{other}`"))),
        }
    }
}

/// Coefficients of a·x³ + b·x² + c·x + d = 0 for the displacement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl CubicCoefficients {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

pub fn cubic_coefficients(params: &PhysicalParams, delta_a: f64) -> Result<CubicCoefficients> {
    let e2 = params.drive()?.powi(2);
    let (gw, gk) = (params.g_omega, params.g_kappa);
    let (wm, ka) = (params.omega_m, params.kappa_a);
    Ok(CubicCoefficients {
        a: 2.0 * (gw * gw + gk * gk) * wm * ka,
        b: -4.0 * wm * ka * (gw * delta_a + gk * ka) - 3.0 * gw * gk * gk * e2,
        c: 2.0 * wm * ka * (ka * ka + delta_a * delta_a) + 2.0 * gk * e2 * (gk * delta_a + 4.0 * gw * ka),
        d: -4.0 * ka * e2 * (gw * ka + gk * delta_a),
    })
}

/// Cubic in x_s with the effective detuning Δ_s held fixed, scaled by 2κ_a:
/// 2κ_a ω_m x (κ_s² + Δ_s²) = g_ω (2κ_a − g_κ x)² |ℰ|² + 2 g_κ Δ_s (2κ_a − g_κ x) |ℰ|².
fn effective_cubic(params: &PhysicalParams, delta_s: f64, e2: f64) -> [f64; 4] {
    let (gw, gk) = (params.g_omega, params.g_kappa);
    let (wm, ka) = (params.omega_m, params.kappa_a);
    [
        2.0 * ka * wm * gk * gk,
        -4.0 * ka * ka * wm * gk - gw * gk * gk * e2,
        2.0 * ka * wm * (ka * ka + delta_s * delta_s) + 4.0 * ka * gw * gk * e2 + 2.0 * gk * gk * delta_s * e2,
        -4.0 * ka * ka * gw * e2 - 4.0 * ka * gk * delta_s * e2,
    ]
}

pub fn real_roots_cubic(coeffs: &CubicCoefficients) -> Result<Vec<f64>> {
    real_cubic_roots(coeffs.as_array())
}

fn build_state(params: &PhysicalParams, delta_a: f64, delta_s: f64, x_s: f64, drive: f64) -> Result<SteadyState> {
    let ka = params.kappa_a;
    let kappa_s = ka - params.g_kappa * x_s;
    if !(kappa_s > 0.0) {
        return Err(Error::InadmissibleBranch { kappa_s });
    }
    let sqrt_2ka = (2.0 * ka).sqrt();
    let gamma_big_s = sqrt_2ka - params.g_kappa * x_s / sqrt_2ka;
    let e = Complex64::from_polar(drive, params.theta);
    let a_s = gamma_big_s * e / Complex64::new(kappa_s, delta_s);
    Ok(SteadyState {
        x_s,
        p_s: 0.0,
        a_s,
        n_s: a_s.norm_sqr(),
        delta_a,
        delta_s,
        kappa_s,
        gamma_big_s,
        drive,
        theta: params.theta,
        self_consistent: true,
    })
}

pub fn steady_state_from_displacement(params: &PhysicalParams, delta_a: f64, x_s: f64) -> Result<SteadyState> {
    let drive = params.drive()?;
    build_state(params, delta_a, delta_a - params.g_omega * x_s, x_s, drive)
}

/// Follows the root that starts at x = 0 for zero drive while |ℰ|² is
/// ramped to its final value, always stepping to the nearest admissible
/// real root.
fn zero_connected_root(cubic_at: impl Fn(f64) -> [f64; 4], admissible: impl Fn(f64) -> bool) -> Option<f64> {
    let final_roots: Vec<f64> = real_cubic_roots(cubic_at(1.0))
        .ok()?
        .into_iter()
        .filter(|&x| admissible(x))
        .collect();
    if final_roots.len() <= 1 {
        return final_roots.first().copied();
    }
    let mut x = 0.0;
    for k in 1..=CONTINUATION_STEPS {
        let s = k as f64 / CONTINUATION_STEPS as f64;
        let roots = real_cubic_roots(cubic_at(s)).ok()?;
        x = roots
            .into_iter()
            .filter(|&r| admissible(r))
            .min_by(|p, q| (p - x).abs().total_cmp(&(q - x).abs()))?;
    }
    Some(x)
}

/// One admissible operating point tagged with its dynamical stability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Branch {
    pub state: SteadyState,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchSet {
    pub delta_a: f64,
    /// Admissible branches in ascending x_s.
    pub branches: Vec<Branch>,
    /// Real roots rejected because κ_s ≤ 0 there.
    pub rejected_roots: Vec<f64>,
    /// Index of the branch connected to x_s = 0 at zero drive.
    pub zero_connected: Option<usize>,
}

impl BranchSet {
    pub fn selected(&self) -> Option<&Branch> {
        self.zero_connected.map(|i| &self.branches[i])
    }

    pub fn stable_count(&self) -> usize {
        self.branches.iter().filter(|b| b.stable).count()
    }
}

pub fn steady_states_at_bare_detuning(params: &PhysicalParams, delta_a: f64) -> Result<BranchSet> {
    let drive = params.drive()?;
    let coeffs = cubic_coefficients(params, delta_a)?;
    let roots = real_roots_cubic(&coeffs)?;

    let mut branches = Vec::new();
    let mut rejected_roots = Vec::new();
    for x in roots {
        match build_state(params, delta_a, delta_a - params.g_omega * x, x, drive) {
            Ok(state) => {
                let stable = linear::is_stable(&state, params).unwrap_or(false);
                branches.push(Branch { state, stable });
            }
            Err(Error::InadmissibleBranch { .. }) => rejected_roots.push(x),
            Err(e) => return Err(e),
        }
    }

    let zero_connected = zero_connected_root(
        |s| {
            let ramped = PhysicalParams { power: params.power * s, ..*params };
            cubic_coefficients(&ramped, delta_a).map(|c| c.as_array()).unwrap_or([0.0; 4])
        },
        |x| params.kappa_a - params.g_kappa * x > 0.0,
    )
    .and_then(|x| {
        branches
            .iter()
            .position(|b| (b.state.x_s - x).abs() <= 1e-9 * x.abs().max(1.0))
    });

    Ok(BranchSet {
        delta_a,
        branches,
        rejected_roots,
        zero_connected,
    })
}

/// Operating point with the effective detuning Δ_s held fixed, solved
/// self-consistently for x_s (κ_s and Γ_s follow the displacement).
pub fn steady_state_at_effective_detuning(params: &PhysicalParams, delta_s: f64) -> Result<SteadyState> {
    let drive = params.drive()?;
    let e2 = drive * drive;
    let admissible = |x: f64| params.kappa_a - params.g_kappa * x > 0.0;
    let x_s = zero_connected_root(|s| effective_cubic(params, delta_s, s * e2), admissible)
        .ok_or_else(|| {
            Error::NoOperatingPoint(format!(
                "no admissible displacement at effective detuning {delta_s:e} rad/s (kappa_s would be <= 0)"
            ))
        })?;
    build_state(params, delta_s + params.g_omega * x_s, delta_s, x_s, drive)
}

/// Operating point at fixed Δ_s with κ_s = κ_a and Γ_s = √(2κ_a).
///
/// x_s is the mean-field displacement evaluated with the equilibrium
/// linewidth; it is exact when g_κ = 0.
pub fn steady_state_fixed_linewidth(params: &PhysicalParams, delta_s: f64) -> Result<SteadyState> {
    let drive = params.drive()?;
    let ka = params.kappa_a;
    let sqrt_2ka = (2.0 * ka).sqrt();
    let e = Complex64::from_polar(drive, params.theta);
    let a_s = sqrt_2ka * e / Complex64::new(ka, delta_s);
    let n_s = a_s.norm_sqr();
    let x_s = (params.g_omega + params.g_kappa * delta_s / ka) * n_s / params.omega_m;
    Ok(SteadyState {
        x_s,
        p_s: 0.0,
        a_s,
        n_s,
        delta_a: delta_s + params.g_omega * x_s,
        delta_s,
        kappa_s: ka,
        gamma_big_s: sqrt_2ka,
        drive,
        theta: params.theta,
        self_consistent: params.g_kappa == 0.0,
    })
}

/// Upper limit on n_s for a real dissipative displacement; infinite when
/// Δ_a ≤ 0 or g_κ = 0.
pub fn dissipative_photon_bound(params: &PhysicalParams, delta_a: f64) -> f64 {
    if delta_a <= 0.0 || params.g_kappa == 0.0 {
        return f64::INFINITY;
    }
    (params.kappa_a / params.g_kappa).powi(2) * params.omega_m / (2.0 * delta_a)
}

/// Small root of g_κ ω_m x² − 2κ_a ω_m x + 2 g_κ Δ_a n_s = 0, the purely
/// dissipative displacement at photon number `n_s`.
pub fn dissipative_closed_form(params: &PhysicalParams, delta_a: f64, n_s: f64) -> Result<f64> {
    if params.g_omega != 0.0 {
        return Err(Error::param("g_omega", "closed form requires purely dissipative coupling"));
    }
    if !(n_s >= 0.0) {
        return Err(Error::param("n_s", "photon number must be nonnegative"));
    }
    let gk = params.g_kappa;
    if gk == 0.0 {
        return Ok(0.0);
    }
    let bound = dissipative_photon_bound(params, delta_a);
    if n_s > bound {
        return Err(Error::Admissibility { n_s, bound });
    }
    let ka = params.kappa_a;
    let u = 2.0 * (gk / ka).powi(2) * (delta_a / params.omega_m) * n_s;
    // (κ_a/g_κ)(1 − √(1−u)) without cancellation at small u
    Ok((ka / gk) * u / (1.0 + (1.0 - u).max(0.0).sqrt()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerClassification {
    /// Drive power, W.
    pub power: f64,
    pub real_roots: usize,
    pub admissible_roots: usize,
    pub stable_roots: usize,
    /// Displacements of the admissible branches, ascending.
    pub x_s: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BistabilityReport {
    pub delta_a: f64,
    pub entries: Vec<PowerClassification>,
    /// Power intervals (W) over which three admissible roots coexist.
    pub windows: Vec<(f64, f64)>,
}

impl BistabilityReport {
    pub fn bistable_window_present(&self) -> bool {
        !self.windows.is_empty()
    }
}

pub fn classify_bistability(params: &PhysicalParams, delta_a: f64, power_grid: &[f64]) -> Result<BistabilityReport> {
    if power_grid.is_empty() {
        return Err(Error::param("power_grid", "must not be empty"));
    }
    if power_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::param("power_grid", "must be strictly ascending"));
    }

    let mut entries = Vec::with_capacity(power_grid.len());
    for &power in power_grid {
        let p = PhysicalParams { power, ..*params };
        let set = steady_states_at_bare_detuning(&p, delta_a)?;
        entries.push(PowerClassification {
            power,
            real_roots: set.branches.len() + set.rejected_roots.len(),
            admissible_roots: set.branches.len(),
            stable_roots: set.stable_count(),
            x_s: set.branches.iter().map(|b| b.state.x_s).collect(),
        });
    }

    let mut windows = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    for e in &entries {
        if e.admissible_roots >= 3 {
            open = Some(match open {
                Some((lo, _)) => (lo, e.power),
                None => (e.power, e.power),
            });
        } else if let Some(w) = open.take() {
            windows.push(w);
        }
    }
    windows.extend(open);

    Ok(BistabilityReport {
        delta_a,
        entries,
        windows,
    })
}
