//! Linearized fluctuation dynamics around an operating point.
//!
//! Quadratures are ordered (δq, δp, δX, δY). The drift matrix A and the
//! diffusion matrix D define the Langevin system u̇ = A u + noise.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{thermal_occupation, PhysicalParams};
use crate::roots::monic_quartic_roots;
use crate::steady_state::SteadyState;

/// Largest |arg a_s| accepted as a real amplitude.
pub const PHASE_TOL: f64 = 1e-12;

/// Relative band around zero inside which a stability criterion is taken
/// as failed.
pub const STABILITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedModel {
    pub a: Matrix4<f64>,
    pub d: Matrix4<f64>,
    /// Linearized coherent coupling G_ω = √2 g_ω a_s.
    pub g_omega_big: f64,
    /// Linearized dissipative coupling G_κ = √2 g_κ a_s.
    pub g_kappa_big: f64,
}

/// Drive phase that makes a_s = Γ_s ℰ e^{iθ}/(κ_s + iΔ_s) real and positive.
pub fn phase_for_real_amplitude(detuning: f64, decay: f64) -> f64 {
    detuning.atan2(decay)
}

/// G = √2 g a_s for a real amplitude.
pub fn linearized_couplings(g: f64, a_s: Complex64) -> Result<f64> {
    let arg = if a_s.norm() == 0.0 { 0.0 } else { a_s.arg() };
    if arg.abs() > PHASE_TOL {
        return Err(Error::PhaseNotFixed { arg });
    }
    Ok(std::f64::consts::SQRT_2 * g * a_s.re)
}

fn couplings(ss: &SteadyState, params: &PhysicalParams) -> Result<(SteadyState, f64, f64)> {
    if !(ss.kappa_s > 0.0) {
        return Err(Error::InadmissibleBranch { kappa_s: ss.kappa_s });
    }
    if ss.gamma_big_s == 0.0 {
        return Err(Error::SingularInputCoupling);
    }
    let fixed = ss.gauge_fixed();
    let gw = linearized_couplings(params.g_omega, fixed.a_s)?;
    let gk = linearized_couplings(params.g_kappa, fixed.a_s)?;
    Ok((fixed, gw, gk))
}

pub fn drift_matrix(ss: &SteadyState, params: &PhysicalParams) -> Result<Matrix4<f64>> {
    let (s, gw, gk) = couplings(ss, params)?;
    Ok(drift_from(&s, params, gw, gk))
}

fn drift_from(s: &SteadyState, params: &PhysicalParams, gw: f64, gk: f64) -> Matrix4<f64> {
    let (wm, gm) = (params.omega_m, params.gamma_m);
    let (ks, ds) = (s.kappa_s, s.delta_s);
    let r = gk / ((2.0 * params.kappa_a).sqrt() * s.gamma_big_s);
    #[rustfmt::skip]
    let a = Matrix4::new(
        0.0, wm, 0.0, 0.0,
        -wm, -gm, gw + r * ds, -r * ks,
        gk - 2.0 * r * ks, 0.0, -ks, ds,
        gw - 2.0 * r * ds, 0.0, -ds, -ks,
    );
    a
}

pub fn diffusion_matrix(ss: &SteadyState, params: &PhysicalParams, n_th: f64) -> Result<Matrix4<f64>> {
    let (s, _, gk) = couplings(ss, params)?;
    Ok(diffusion_from(&s, params, gk, n_th))
}

fn diffusion_from(s: &SteadyState, params: &PhysicalParams, gk: f64, n_th: f64) -> Matrix4<f64> {
    let ka = params.kappa_a;
    let cross = gk * s.gamma_big_s / (2.0 * (2.0 * ka).sqrt());
    let field = s.gamma_big_s * s.gamma_big_s / 2.0;
    let mut d = Matrix4::zeros();
    d[(1, 1)] = params.gamma_m * (2.0 * n_th + 1.0) + gk * gk / (4.0 * ka);
    d[(2, 2)] = field;
    d[(3, 3)] = field;
    d[(1, 3)] = cross;
    d[(3, 1)] = cross;
    d
}

/// Drift and diffusion at `ss`, with the bath occupation taken from
/// `params.temperature`.
pub fn linearize(ss: &SteadyState, params: &PhysicalParams) -> Result<LinearizedModel> {
    let (s, gw, gk) = couplings(ss, params)?;
    let n_th = thermal_occupation(params.temperature, params.omega_m);
    Ok(LinearizedModel {
        a: drift_from(&s, params, gw, gk),
        d: diffusion_from(&s, params, gk, n_th),
        g_omega_big: gw,
        g_kappa_big: gk,
    })
}

/// Monic quartic s⁴ + c[0]s³ + c[1]s² + c[2]s + c[3].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quartic {
    pub c: [f64; 4],
}

impl Quartic {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let [a3, a2, a1, a0] = self.c;
        (((s + a3) * s + a2) * s + a1) * s + a0
    }

    pub fn roots(&self) -> [Complex64; 4] {
        monic_quartic_roots(self.c)
    }
}

/// Characteristic polynomial det(sI − A) by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &Matrix4<f64>) -> Quartic {
    let id = Matrix4::<f64>::identity();
    let mut m = Matrix4::<f64>::zeros();
    let mut coeff = 1.0;
    let mut c = [0.0; 4];
    for k in 1..=4 {
        m = a * m + id * coeff;
        coeff = -(a * m).trace() / k as f64;
        c[k - 1] = coeff;
    }
    Quartic { c }
}

fn max_abs(a: &Matrix4<f64>) -> f64 {
    a.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Routh–Hurwitz test on a monic quartic.
///
/// Every condition must exceed its own term scale by the relative margin
/// [`STABILITY_TOL`]; the test is invariant under s → λs.
pub fn routh_hurwitz_stable(q: &Quartic) -> bool {
    let [a3, a2, a1, a0] = q.c;
    let tol = STABILITY_TOL;
    if !(a3 > 0.0 && a2 > 0.0 && a1 > 0.0 && a0 > 0.0) {
        return false;
    }
    let h2 = a3 * a2 - a1;
    if !(h2 > tol * (a3 * a2).abs().max(a1.abs())) {
        return false;
    }
    let lhs = a1 * h2;
    let rhs = a3 * a3 * a0;
    let scale = (a1 * a3 * a2).abs().max(a1 * a1).max(rhs.abs());
    lhs - rhs > tol * scale
}

/// Routh–Hurwitz on the drift matrix, scaled to unit max-norm first.
pub fn routh_hurwitz_matrix(a: &Matrix4<f64>) -> bool {
    let s = max_abs(a);
    if s == 0.0 {
        return false;
    }
    routh_hurwitz_stable(&characteristic_polynomial(&(a / s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralStability {
    pub stable: bool,
    /// −max Re λ, rad/s; positive for stable matrices.
    pub margin: f64,
    pub eigenvalues: [Complex64; 4],
}

/// Eigenvalues of A from its characteristic polynomial.
pub fn spectral_stable(a: &Matrix4<f64>) -> SpectralStability {
    let s = max_abs(a);
    if s == 0.0 {
        return SpectralStability {
            stable: false,
            margin: 0.0,
            eigenvalues: [Complex64::new(0.0, 0.0); 4],
        };
    }
    let roots = characteristic_polynomial(&(a / s)).roots();
    let eigenvalues = roots.map(|r| r * s);
    let max_re = roots.iter().map(|r| r.re).fold(f64::NEG_INFINITY, f64::max);
    SpectralStability {
        stable: -max_re > STABILITY_TOL,
        margin: -max_re * s,
        eigenvalues,
    }
}

/// Both stability tests pass at `ss`.
pub fn is_stable(ss: &SteadyState, params: &PhysicalParams) -> Result<bool> {
    let a = drift_matrix(ss, params)?;
    Ok(routh_hurwitz_matrix(&a) && spectral_stable(&a).stable)
}
