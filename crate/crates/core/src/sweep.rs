//! Parameter sweeps, optimum search and survival temperatures.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{logarithmic_negativity, physicality_check, solve_lyapunov};
use crate::linear::{linearize, routh_hurwitz_matrix, spectral_stable};
use crate::model::{validate_params, PhysicalParams, Scenario};
use crate::steady_state::{SteadyState, SteadyStateMode};

pub const DEFAULT_POINTS_1D: usize = 201;
pub const DEFAULT_POINTS_2D: usize = 101;

/// Lowest temperature of the survival scan, K.
pub const SURVIVAL_T_REF: f64 = 0.01;
/// Relative bracket width at which the survival bisection stops.
pub const SURVIVAL_REL_WIDTH: f64 = 0.01;
const SURVIVAL_SCAN_POINTS: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisParam {
    /// Effective detuning in units of ω_m.
    DeltaSOverOmegaM,
    /// Bare detuning, rad/s.
    DeltaA,
    /// Coherent coupling, rad/s.
    GOmega,
    /// Dissipative coupling, rad/s.
    GKappa,
    /// g_κ/g_ω with g_ω held at its base value.
    GRatio,
    /// Drive power, W.
    Power,
    /// Bath temperature, K.
    Temperature,
}

impl AxisParam {
    pub fn name(self) -> &'static str {
        match self {
            AxisParam::DeltaSOverOmegaM => "delta_s_over_omega_m",
            AxisParam::DeltaA => "delta_a",
            AxisParam::GOmega => "g_omega",
            AxisParam::GKappa => "g_kappa",
            AxisParam::GRatio => "g_ratio",
            AxisParam::Power => "power",
            AxisParam::Temperature => "temperature",
        }
    }

    /// Rank used to break ties between equal optima: couplings first, then
    /// detunings, then everything else.
    fn tie_rank(self) -> u8 {
        match self {
            AxisParam::GOmega | AxisParam::GKappa | AxisParam::GRatio => 0,
            AxisParam::DeltaSOverOmegaM | AxisParam::DeltaA => 1,
            AxisParam::Power | AxisParam::Temperature => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: AxisParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Axis {
    pub fn linear(param: AxisParam, start: f64, stop: f64, points: usize) -> Self {
        Axis {
            param,
            start,
            stop,
            points,
            spacing: Spacing::Linear,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let name = self.param.name();
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidSweep(format!("axis {name}: range must be finite")));
        }
        match self.points {
            0 => return Err(Error::InvalidSweep(format!("axis {name}: needs at least one point"))),
            1 if self.start != self.stop => {
                return Err(Error::InvalidSweep(format!("axis {name}: a single point needs start == stop")))
            }
            1 => {}
            _ if !(self.stop > self.start) => {
                return Err(Error::InvalidSweep(format!("axis {name}: stop must exceed start")))
            }
            _ => {}
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0) {
            return Err(Error::InvalidSweep(format!("axis {name}: log spacing needs a positive range")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == self.points - 1 {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub mode: SteadyStateMode,
    pub base: PhysicalParams,
    /// Detuning used when no axis sets it: Δ_a in bare mode, Δ_s otherwise,
    /// rad/s.
    pub detuning: f64,
    pub axes: Vec<Axis>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidSweep("a sweep has one or two axes".into()));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(Error::InvalidSweep("both axes vary the same parameter".into()));
        }
        for axis in &self.axes {
            axis.validate()?;
            match (axis.param, self.mode) {
                (AxisParam::DeltaA, SteadyStateMode::BareDetuning) => {}
                (AxisParam::DeltaA, _) => {
                    return Err(Error::InvalidSweep("delta_a axis requires bare-detuning mode".into()))
                }
                (AxisParam::DeltaSOverOmegaM, SteadyStateMode::BareDetuning) => {
                    return Err(Error::InvalidSweep(
                        "delta_s_over_omega_m axis requires an effective-detuning mode".into(),
                    ))
                }
                _ => {}
            }
        }
        let report = validate_params(&self.base);
        if let Some(issue) = report.errors().next() {
            return Err(Error::InvalidSweep(format!("base parameters: {}: {}", issue.field, issue.message)));
        }
        if !self.detuning.is_finite() {
            return Err(Error::InvalidSweep("detuning must be finite".into()));
        }
        Ok(())
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.points).collect()
    }

    /// Parameters and detuning at the given axis values.
    pub fn point(&self, coords: &[f64]) -> (PhysicalParams, f64) {
        let mut p = self.base;
        let mut detuning = self.detuning;
        for (axis, &v) in self.axes.iter().zip(coords) {
            match axis.param {
                AxisParam::DeltaSOverOmegaM => detuning = v * p.omega_m,
                AxisParam::DeltaA => detuning = v,
                AxisParam::GOmega => p.g_omega = v,
                AxisParam::GKappa => p.g_kappa = v,
                AxisParam::GRatio => {}
                AxisParam::Power => p.power = v,
                AxisParam::Temperature => p.temperature = v,
            }
        }
        // ratio applies after any g_omega axis
        for (axis, &v) in self.axes.iter().zip(coords) {
            if axis.param == AxisParam::GRatio {
                p.g_kappa = v * p.g_omega;
            }
        }
        (p, detuning)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "reason", rename_all = "snake_case")]
pub enum PointStatus {
    Stable,
    Unstable,
    /// No admissible operating point.
    Infeasible(String),
    /// Operating point exists but a numerical stage failed.
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    /// Axis values of this point in axis order.
    pub coords: Vec<f64>,
    pub detuning: f64,
    pub g_omega: f64,
    pub g_kappa: f64,
    pub power: f64,
    pub temperature: f64,
    pub status: PointStatus,
    pub steady: Option<SteadyState>,
    pub stable: bool,
    pub routh_hurwitz_stable: bool,
    pub spectral_stable: bool,
    /// −max Re λ(A), rad/s.
    pub spectral_margin: Option<f64>,
    /// Spectral margin relative to the max-norm of A.
    pub relative_margin: Option<f64>,
    pub e_n: Option<f64>,
    pub eta_minus: Option<f64>,
    pub lyapunov_residual: Option<f64>,
    /// Symplectic eigenvalues (ν₋, ν₊) of the covariance.
    pub symplectic: Option<[f64; 2]>,
    pub physical: Option<bool>,
}

impl PointResult {
    fn new(params: &PhysicalParams, detuning: f64) -> Self {
        PointResult {
            coords: Vec::new(),
            detuning,
            g_omega: params.g_omega,
            g_kappa: params.g_kappa,
            power: params.power,
            temperature: params.temperature,
            status: PointStatus::Unstable,
            steady: None,
            stable: false,
            routh_hurwitz_stable: false,
            spectral_stable: false,
            spectral_margin: None,
            relative_margin: None,
            e_n: None,
            eta_minus: None,
            lyapunov_residual: None,
            symplectic: None,
            physical: None,
        }
    }
}

/// Full pipeline at one parameter point. The coupling excluded by
/// `scenario` is set to zero first. Failures are recorded in `status`.
pub fn evaluate_point(params: &PhysicalParams, scenario: Scenario, mode: SteadyStateMode, detuning: f64) -> PointResult {
    let mut p = *params;
    scenario.apply(&mut p);
    let mut out = PointResult::new(&p, detuning);

    let ss = match mode.solve(&p, detuning) {
        Ok(s) => s,
        Err(e) => {
            out.status = PointStatus::Infeasible(e.to_string());
            return out;
        }
    };
    out.steady = Some(ss);

    let lin = match linearize(&ss, &p) {
        Ok(l) => l,
        Err(e) => {
            out.status = PointStatus::Failed(e.to_string());
            return out;
        }
    };
    let spec = spectral_stable(&lin.a);
    let scale = lin.a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    out.routh_hurwitz_stable = routh_hurwitz_matrix(&lin.a);
    out.spectral_stable = spec.stable;
    out.spectral_margin = Some(spec.margin);
    out.relative_margin = Some(spec.margin / scale);
    out.stable = out.routh_hurwitz_stable && out.spectral_stable;
    if !out.stable {
        out.status = PointStatus::Unstable;
        return out;
    }

    let v = match solve_lyapunov(&lin.a, &lin.d) {
        Ok(v) => v,
        Err(e) => {
            out.status = PointStatus::Failed(e.to_string());
            return out;
        }
    };
    out.lyapunov_residual = Some(crate::gaussian::lyapunov_residual(&lin.a, &v, &lin.d));
    let phys = physicality_check(&v);
    out.symplectic = Some([phys.nu_minus, phys.nu_plus]);
    out.physical = Some(phys.passes);
    match logarithmic_negativity(&v) {
        Ok(rep) => {
            out.e_n = Some(rep.e_n);
            out.eta_minus = Some(rep.eta_minus);
            out.status = PointStatus::Stable;
        }
        Err(e) => out.status = PointStatus::Failed(e.to_string()),
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// Grid values per axis.
    pub axis_values: Vec<Vec<f64>>,
    /// Row-major over the axes (the first axis varies slowest).
    pub points: Vec<PointResult>,
}

impl SweepResult {
    pub fn shape(&self) -> Vec<usize> {
        self.axis_values.iter().map(Vec::len).collect()
    }

    pub fn at(&self, idx: &[usize]) -> &PointResult {
        let mut flat = 0;
        for (i, len) in idx.iter().zip(self.shape()) {
            flat = flat * len + i;
        }
        &self.points[flat]
    }
}

fn grid_coords(axis_values: &[Vec<f64>], flat: usize) -> Vec<f64> {
    let mut rem = flat;
    let mut coords = vec![0.0; axis_values.len()];
    for (k, vals) in axis_values.iter().enumerate().rev() {
        coords[k] = vals[rem % vals.len()];
        rem /= vals.len();
    }
    coords
}

/// Evaluates every grid point in parallel on the current rayon pool. The
/// result does not depend on the number of threads.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let axis_values: Vec<Vec<f64>> = spec.axes.iter().map(Axis::values).collect();
    let total: usize = axis_values.iter().map(Vec::len).product();
    let points = (0..total)
        .into_par_iter()
        .map(|flat| {
            let coords = grid_coords(&axis_values, flat);
            let (p, detuning) = spec.point(&coords);
            let mut r = evaluate_point(&p, spec.scenario, spec.mode, detuning);
            r.coords = coords;
            r
        })
        .collect();
    Ok(SweepResult {
        spec: spec.clone(),
        axis_values,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Optimum {
    pub index: usize,
    pub coords: Vec<f64>,
    pub e_n: f64,
}

/// Grid point of largest E_N among stable points. Equal values go to the
/// lower coupling, then the lower detuning.
pub fn find_optimum(result: &SweepResult) -> Option<Optimum> {
    let mut order: Vec<usize> = (0..result.spec.axes.len()).collect();
    order.sort_by_key(|&k| result.spec.axes[k].param.tie_rank());

    let mut best: Option<(usize, f64)> = None;
    for (i, pt) in result.points.iter().enumerate() {
        let Some(e) = pt.e_n else { continue };
        let better = match best {
            None => true,
            Some((j, be)) => {
                e > be
                    || (e == be && {
                        let (a, b) = (&pt.coords, &result.points[j].coords);
                        order
                            .iter()
                            .map(|&k| a[k].total_cmp(&b[k]))
                            .find(|o| o.is_ne())
                            .is_some_and(|o| o.is_lt())
                    })
            }
        };
        if better {
            best = Some((i, e));
        }
    }
    best.map(|(index, e_n)| Optimum {
        index,
        coords: result.points[index].coords.clone(),
        e_n,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurvivalTemperature {
    /// Midpoint of the final bracket, K; equals `t_max` when saturated.
    pub temperature: f64,
    pub bracket: (f64, f64),
    /// E_N was still positive at `t_max`.
    pub saturated: bool,
    /// Coarse scan (T, E_N) used to locate the last crossing.
    pub scan: Vec<(f64, f64)>,
}

/// Highest temperature at which E_N stays positive, searched between
/// [`SURVIVAL_T_REF`] and `t_max`.
pub fn survival_temperature(
    params: &PhysicalParams,
    scenario: Scenario,
    mode: SteadyStateMode,
    detuning: f64,
    t_max: f64,
) -> Result<SurvivalTemperature> {
    if !(t_max > SURVIVAL_T_REF) {
        return Err(Error::param("t_max", format!("must exceed {SURVIVAL_T_REF} K")));
    }
    let e_n_at = |t: f64| -> Result<f64> {
        let p = PhysicalParams { temperature: t, ..*params };
        let r = evaluate_point(&p, scenario, mode, detuning);
        match r.status {
            PointStatus::Stable | PointStatus::Unstable => Ok(r.e_n.unwrap_or(0.0)),
            PointStatus::Infeasible(m) => Err(Error::NoOperatingPoint(m)),
            PointStatus::Failed(m) => Err(Error::Conditioning(m)),
        }
    };

    let axis = Axis {
        param: AxisParam::Temperature,
        start: SURVIVAL_T_REF,
        stop: t_max,
        points: SURVIVAL_SCAN_POINTS,
        spacing: Spacing::Log,
    };
    let mut scan = Vec::with_capacity(axis.points);
    for t in axis.values() {
        scan.push((t, e_n_at(t)?));
    }
    if !(scan[0].1 > 0.0) {
        return Err(Error::NoEntanglement(SURVIVAL_T_REF));
    }
    let last = scan.iter().rposition(|&(_, e)| e > 0.0).expect("first scan point is entangled");
    if last == scan.len() - 1 {
        return Ok(SurvivalTemperature {
            temperature: t_max,
            bracket: (t_max, t_max),
            saturated: true,
            scan,
        });
    }
    let (mut lo, mut hi) = (scan[last].0, scan[last + 1].0);
    while hi - lo > SURVIVAL_REL_WIDTH * hi {
        let mid = (lo * hi).sqrt();
        if e_n_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SurvivalTemperature {
        temperature: 0.5 * (lo + hi),
        bracket: (lo, hi),
        saturated: false,
        scan,
    })
}
