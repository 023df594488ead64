//! Single-photon couplings from Michelson–Sagnac interferometer geometry.
//!
//! The compound mirror formed by the beam splitter (R, T) and the membrane
//! (ℛ, 𝒯) has an effective reflectivity ρ and transmissivity τ that depend
//! on the membrane's optical phase offset x. The coherent and dissipative
//! couplings follow from them at the static operating point.
//!
//! This front-end is optional: the rest of the pipeline takes (g_ω, g_κ)
//! directly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative size of an imaginary part that we still treat as round-off.
pub const IMAGINARY_RESIDUAL_TOL: f64 = 1e-6;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferometerParams {
    /// Beam-splitter amplitude reflectivity R.
    pub bs_r: Complex64,
    /// Beam-splitter amplitude transmissivity T.
    pub bs_t: Complex64,
    /// Membrane amplitude reflectivity ℛ.
    pub mem_r: Complex64,
    /// Membrane amplitude transmissivity 𝒯.
    pub mem_t: Complex64,
    /// Membrane offset as optical phase, rad.
    pub x_offset: f64,
    /// Cavity angular frequency, rad/s.
    pub omega_a: f64,
    /// Effective cavity length, m.
    pub length_l: f64,
    /// Zero-point fluctuation of the membrane, m.
    pub x_zpf: f64,
    /// Require |R|²+|T|² = 1 and |ℛ|²+|𝒯|² = 1.
    pub lossless: bool,
}

impl InterferometerParams {
    pub fn validate(&self) -> Result<()> {
        let bs = self.bs_r.norm_sqr() + self.bs_t.norm_sqr();
        let mem = self.mem_r.norm_sqr() + self.mem_t.norm_sqr();
        for (name, total) in [("beam splitter", bs), ("membrane", mem)] {
            if total > 1.0 + NORM_TOL {
                return Err(Error::param(
                    "interferometer",
                    format!("{name} is not passive: |r|^2 + |t|^2 = {total}"),
                ));
            }
            if self.lossless && (total - 1.0).abs() > NORM_TOL {
                return Err(Error::param(
                    "interferometer",
                    format!("{name} is flagged lossless but |r|^2 + |t|^2 = {total}"),
                ));
            }
        }
        if !(self.length_l > 0.0) {
            return Err(Error::param("length_l", "must be positive"));
        }
        Ok(())
    }

    /// Common coupling scale ω_a x_zpf / L, rad/s.
    pub fn coupling_scale(&self) -> f64 {
        self.omega_a * self.x_zpf / self.length_l
    }
}

/// Effective reflectivity and transmissivity of the compound mirror.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveMirror {
    pub rho: Complex64,
    pub tau: Complex64,
}

impl EffectiveMirror {
    pub fn power_sum(&self) -> f64 {
        self.rho.norm_sqr() + self.tau.norm_sqr()
    }
}

pub fn effective_mirror(p: &InterferometerParams) -> Result<EffectiveMirror> {
    if p.mem_t == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateMembrane);
    }
    let (r, t) = (p.bs_r, p.bs_t);
    let unphase = Complex64::from_polar(1.0, -p.mem_t.arg());
    let fwd = Complex64::from_polar(1.0, 2.0 * p.x_offset);
    let back = fwd.conj();

    let rho = -((r * r * fwd + t * t * back) * p.mem_r + 2.0 * r * t * p.mem_t) * unphase;
    let cross = r * t.conj() * fwd;
    let imbalance = r.norm_sqr() - t.norm_sqr();
    let tau = ((cross - cross.conj()) * p.mem_r - imbalance * p.mem_t) * unphase;
    Ok(EffectiveMirror { rho, tau })
}

/// Physical (real) couplings with the imaginary residual of the complex
/// expressions reported alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingEstimate {
    pub g_omega: f64,
    pub g_kappa: f64,
    pub g_omega_imag: f64,
    pub g_kappa_imag: f64,
    pub mirror: EffectiveMirror,
}

impl CouplingEstimate {
    /// True when either expression carries an imaginary part larger than
    /// `IMAGINARY_RESIDUAL_TOL` of its magnitude.
    pub fn non_physical_phase(&self) -> bool {
        let check = |re: f64, im: f64| {
            let mag = re.hypot(im);
            mag > 0.0 && im.abs() > IMAGINARY_RESIDUAL_TOL * mag
        };
        check(self.g_omega, self.g_omega_imag) || check(self.g_kappa, self.g_kappa_imag)
    }
}

pub fn single_photon_couplings(p: &InterferometerParams) -> Result<CouplingEstimate> {
    p.validate()?;
    let mirror = effective_mirror(p)?;
    let scale = p.coupling_scale();
    let cos_t = p.mem_t.arg().cos();
    let imbalance = p.bs_r.norm_sqr() - p.bs_t.norm_sqr();

    let g_omega = -2.0 * scale * (imbalance + mirror.tau * cos_t);
    let g_kappa = Complex64::new(0.0, -std::f64::consts::SQRT_2 * scale * mirror.tau.norm())
        * (2.0 * p.bs_r * p.bs_t + mirror.rho * cos_t);

    Ok(CouplingEstimate {
        g_omega: g_omega.re,
        g_kappa: g_kappa.re,
        g_omega_imag: g_omega.im,
        g_kappa_imag: g_kappa.im,
        mirror,
    })
}
