//! Stationary covariance and two-mode Gaussian entanglement.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::spectral_stable;

/// Accepted Lyapunov residual ‖AV + VAᵀ + D‖ relative to ‖D‖ (max norms).
pub const LYAPUNOV_RESIDUAL_TOL: f64 = 1e-9;

/// Relative tolerance on Σ̃² − 4 det V before the covariance is rejected.
pub const DISCRIMINANT_TOL: f64 = 1e-9;

/// Slack on the uncertainty bound ν ≥ 1/2.
pub const PHYSICALITY_TOL: f64 = 1e-6;

/// Symmetric 4×4 covariance in the (δq, δp, δX, δY) ordering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix(pub Matrix4<f64>);

impl CovarianceMatrix {
    pub fn mechanical(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn optical(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn correlation(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }
}

fn max_abs(m: &Matrix4<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// ‖AV + VAᵀ + D‖ / ‖D‖ in the max norm.
pub fn lyapunov_residual(a: &Matrix4<f64>, v: &CovarianceMatrix, d: &Matrix4<f64>) -> f64 {
    let r = a * v.0 + v.0 * a.transpose() + d;
    let dn = max_abs(d);
    if dn == 0.0 {
        max_abs(&r)
    } else {
        max_abs(&r) / dn
    }
}

/// Solves AV + VAᵀ = −D for stable A.
pub fn solve_lyapunov(a: &Matrix4<f64>, d: &Matrix4<f64>) -> Result<CovarianceMatrix> {
    let spec = spectral_stable(a);
    if !spec.stable {
        return Err(Error::Unstable { margin: spec.margin });
    }
    let s = max_abs(a);
    let a_n = a / s;
    let d_n = d / s;

    // column-major vec: vec(AV) = (I⊗A)vec V, vec(VAᵀ) = (A⊗I)vec V
    let mut k = DMatrix::<f64>::zeros(16, 16);
    for i in 0..4 {
        for j in 0..4 {
            for r in 0..4 {
                k[(4 * j + i, 4 * j + r)] += a_n[(i, r)];
                k[(4 * j + i, 4 * r + i)] += a_n[(j, r)];
            }
        }
    }
    let rhs = DVector::from_iterator(16, d_n.iter().map(|v| -v));
    let lu = k.clone().lu();
    let mut x = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Conditioning("Kronecker system is singular".into()))?;
    let correction = lu
        .solve(&(&rhs - &k * &x))
        .ok_or_else(|| Error::Conditioning("Kronecker system is singular".into()))?;
    x += correction;

    let v = Matrix4::from_column_slice(x.as_slice());
    let v = CovarianceMatrix((v + v.transpose()) * 0.5);
    if !v.0.iter().all(|e| e.is_finite()) {
        return Err(Error::Conditioning("non-finite covariance".into()));
    }
    let res = lyapunov_residual(a, &v, d);
    if res > LYAPUNOV_RESIDUAL_TOL {
        return Err(Error::Conditioning(format!("relative residual {res:e}")));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymplecticInvariants {
    pub det_m: f64,
    pub det_o: f64,
    pub det_c: f64,
    pub det_v: f64,
    /// Σ̃ = det V_m + det V_o − 2 det V_c (partial transpose).
    pub sigma: f64,
    /// Δ = det V_m + det V_o + 2 det V_c.
    pub delta: f64,
}

pub fn symplectic_invariants(v: &CovarianceMatrix) -> SymplecticInvariants {
    let det_m = v.mechanical().determinant();
    let det_o = v.optical().determinant();
    let det_c = v.correlation().determinant();
    SymplecticInvariants {
        det_m,
        det_o,
        det_c,
        det_v: v.0.determinant(),
        sigma: det_m + det_o - 2.0 * det_c,
        delta: det_m + det_o + 2.0 * det_c,
    }
}

/// Smaller root of ν⁴ − bν² + c = 0, returned as ν, without cancellation.
fn smaller_symplectic(b: f64, c: f64) -> Option<f64> {
    let disc = b * b - 4.0 * c;
    if disc < -DISCRIMINANT_TOL * b * b {
        return None;
    }
    let root = disc.max(0.0).sqrt();
    let big = b + root;
    let nu_sq = if big > 0.0 { 2.0 * c / big } else { 0.0 };
    Some(nu_sq.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementReport {
    pub invariants: SymplecticInvariants,
    /// Smallest symplectic eigenvalue of the partial transpose.
    pub eta_minus: f64,
    /// Logarithmic negativity max(0, −ln 2η⁻).
    pub e_n: f64,
}

impl EntanglementReport {
    pub fn entangled(&self) -> bool {
        self.e_n > 0.0
    }
}

pub fn logarithmic_negativity(v: &CovarianceMatrix) -> Result<EntanglementReport> {
    let inv = symplectic_invariants(v);
    let eta_minus = smaller_symplectic(inv.sigma, inv.det_v).ok_or(Error::UnphysicalCovariance {
        sigma_sq: inv.sigma * inv.sigma,
        four_det: 4.0 * inv.det_v,
    })?;
    Ok(EntanglementReport {
        invariants: inv,
        eta_minus,
        e_n: (-(2.0 * eta_minus).ln()).max(0.0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalityReport {
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub passes: bool,
}

/// Uncertainty-principle check on the symplectic eigenvalues of V.
pub fn physicality_check(v: &CovarianceMatrix) -> PhysicalityReport {
    let inv = symplectic_invariants(v);
    let nu_minus = smaller_symplectic(inv.delta, inv.det_v).unwrap_or(f64::NAN);
    let nu_plus = if nu_minus > 0.0 {
        inv.det_v.sqrt() / nu_minus
    } else {
        inv.delta.max(0.0).sqrt()
    };
    PhysicalityReport {
        nu_minus,
        nu_plus,
        passes: nu_minus >= 0.5 - PHYSICALITY_TOL,
    }
}
