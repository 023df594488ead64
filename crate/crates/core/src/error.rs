use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate membrane: transmissivity is zero, its phase is undefined")]
    DegenerateMembrane,

    #[error("indeterminate equation: all polynomial coefficients vanish")]
    IndeterminateEquation,

    #[error("inadmissible branch: effective decay kappa_s = {kappa_s:e} rad/s is not positive")]
    InadmissibleBranch { kappa_s: f64 },

    #[error("no admissible operating point: {0}")]
    NoOperatingPoint(String),

    #[error("photon number {n_s:e} exceeds the admissibility bound {bound:e}")]
    Admissibility { n_s: f64, bound: f64 },

    #[error("singular input coupling: Gamma_s vanishes at x_s = 2 kappa_a / g_kappa")]
    SingularInputCoupling,

    #[error("cavity amplitude is not real (arg = {arg:e} rad); fix the drive phase first")]
    PhaseNotFixed { arg: f64 },

    #[error("time step {dt:e} s does not resolve the fastest rate (need dt <= {max_dt:e} s)")]
    StepTooLarge { dt: f64, max_dt: f64 },

    #[error("drift matrix is not stable (spectral margin {margin:e})")]
    Unstable { margin: f64 },

    #[error("Lyapunov system is ill-conditioned: {0}")]
    Conditioning(String),

    #[error(
        "unphysical covariance: sigma^2 = {sigma_sq:e} < 4 det V = {four_det:e}"
    )]
    UnphysicalCovariance { sigma_sq: f64, four_det: f64 },

    #[error("entanglement vanishes already at the reference temperature {0} K")]
    NoEntanglement(f64),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
