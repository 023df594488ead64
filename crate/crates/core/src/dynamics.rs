//! Classical mean-field equations of motion, integrated with RK4.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::PhysicalParams;

/// dt must not exceed this fraction of the fastest period scale.
pub const MAX_STEP_FRACTION: f64 = 0.05;

/// Amplitudes beyond this magnitude count as divergence.
const DIVERGENCE_LIMIT: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanState {
    pub x: f64,
    pub p: f64,
    pub a: Complex64,
}

impl MeanState {
    pub const ZERO: MeanState = MeanState {
        x: 0.0,
        p: 0.0,
        a: Complex64 { re: 0.0, im: 0.0 },
    };

    fn to_vec(self) -> [f64; 4] {
        [self.x, self.p, self.a.re, self.a.im]
    }

    fn from_vec(v: [f64; 4]) -> Self {
        MeanState {
            x: v[0],
            p: v[1],
            a: Complex64::new(v[2], v[3]),
        }
    }

    fn is_bounded(&self) -> bool {
        let v = self.to_vec();
        v.iter().all(|c| c.is_finite() && c.abs() < DIVERGENCE_LIMIT)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<MeanState>,
    pub final_state: MeanState,
    /// The state left every bound before `t_end`.
    pub diverged: bool,
}

/// Largest admissible step for the given parameters and bare detuning.
pub fn max_step(params: &PhysicalParams, delta_a: f64) -> f64 {
    MAX_STEP_FRACTION / params.kappa_a.max(params.omega_m).max(delta_a.abs())
}

fn derivative(params: &PhysicalParams, delta_a: f64, drive: Complex64, s: [f64; 4]) -> [f64; 4] {
    let [x, p, re, im] = s;
    let a = Complex64::new(re, im);
    let ka = params.kappa_a;
    let sqrt_2ka = (2.0 * ka).sqrt();
    let kappa = ka - params.g_kappa * x;
    let delta = delta_a - params.g_omega * x;
    let gamma_in = sqrt_2ka - params.g_kappa * x / sqrt_2ka;
    let dissipative = (Complex64::new(0.0, params.g_kappa / sqrt_2ka) * (a * drive.conj() - a.conj() * drive)).re;
    let da = -Complex64::new(kappa, delta) * a + gamma_in * drive;
    [
        params.omega_m * p,
        -params.omega_m * x - params.gamma_m * p + params.g_omega * a.norm_sqr() + dissipative,
        da.re,
        da.im,
    ]
}

/// Integrates from `initial` to `t_end` with the drive amplitude |ℰ(t)|
/// given by `drive_at`; the phase is `params.theta`.
///
/// Every `sample_every`-th step is recorded, plus the initial and final
/// states.
pub fn integrate_with_drive(
    params: &PhysicalParams,
    delta_a: f64,
    initial: MeanState,
    t_end: f64,
    dt: f64,
    sample_every: usize,
    drive_at: impl Fn(f64) -> f64,
) -> Result<Trajectory> {
    let max_dt = max_step(params, delta_a);
    if !(dt > 0.0) || dt > max_dt {
        return Err(Error::StepTooLarge { dt, max_dt });
    }
    if !(t_end >= 0.0) {
        return Err(Error::param("t_end", "must be nonnegative"));
    }
    let sample_every = sample_every.max(1);
    let steps = (t_end / dt).ceil() as usize;
    let phase = Complex64::from_polar(1.0, params.theta);
    let f = |t: f64, s: [f64; 4]| derivative(params, delta_a, phase * drive_at(t), s);

    let mut times = vec![0.0];
    let mut states = vec![initial];
    let mut s = initial.to_vec();
    let mut t = 0.0;
    let mut diverged = false;
    for k in 1..=steps {
        let h = if k == steps { t_end - t } else { dt };
        let k1 = f(t, s);
        let k2 = f(t + h / 2.0, axpy(s, h / 2.0, k1));
        let k3 = f(t + h / 2.0, axpy(s, h / 2.0, k2));
        let k4 = f(t + h, axpy(s, h, k3));
        for i in 0..4 {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t = if k == steps { t_end } else { t + h };
        let state = MeanState::from_vec(s);
        if !state.is_bounded() {
            diverged = true;
            times.push(t);
            states.push(state);
            break;
        }
        if k % sample_every == 0 || k == steps {
            times.push(t);
            states.push(state);
        }
    }
    Ok(Trajectory {
        final_state: *states.last().expect("trajectory holds the initial state"),
        times,
        states,
        diverged,
    })
}

/// Constant-drive integration; the drive amplitude comes from `params.power`.
pub fn integrate_mean_dynamics(
    params: &PhysicalParams,
    delta_a: f64,
    initial: MeanState,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    let drive = params.drive()?;
    let steps = (t_end / dt).ceil().max(1.0) as usize;
    integrate_with_drive(params, delta_a, initial, t_end, dt, (steps / 1000).max(1), |_| drive)
}

fn axpy(s: [f64; 4], h: f64, k: [f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| s[i] + h * k[i])
}
