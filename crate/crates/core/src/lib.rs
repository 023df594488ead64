//! Steady-state mechanics and stationary entanglement of a dissipatively
//! coupled optomechanical system.
//!
//! The pipeline runs from device parameters to a classical operating point,
//! the linearized drift and diffusion matrices of the quantum fluctuations,
//! the stationary covariance matrix (Lyapunov equation) and finally the
//! logarithmic negativity between the membrane and the cavity field.
//!
//! ```
//! use optomech::{evaluate_point, PhysicalParams, Scenario, SteadyStateMode};
//!
//! let mut params = PhysicalParams::msi_reference();
//! params.g_omega = 2.0 * std::f64::consts::PI * 3.1;
//! params.power = 50e-3;
//! params.temperature = 0.4;
//! let detuning = 2.0 * params.omega_m;
//!
//! let point = evaluate_point(&params, Scenario::Coherent, SteadyStateMode::FixedLinewidth, detuning);
//! assert!(point.stable);
//! assert!(point.e_n.unwrap() > 0.0);
//! ```
//!
//! Units: all frequencies and rates are angular (rad/s), power in W,
//! temperature in K, mass in kg and lengths in m. Mechanical position and
//! momentum are dimensionless (zero-point units).

pub mod constants;
pub mod dynamics;
pub mod error;
pub mod gaussian;
pub mod interferometer;
pub mod linear;
pub mod model;
pub mod roots;
pub mod steady_state;
pub mod sweep;

pub use error::{Error, Result};
pub use gaussian::{
    logarithmic_negativity, physicality_check, solve_lyapunov, symplectic_invariants,
    CovarianceMatrix, EntanglementReport, PhysicalityReport, SymplecticInvariants,
};
pub use interferometer::{
    effective_mirror, single_photon_couplings, CouplingEstimate, EffectiveMirror,
    InterferometerParams,
};
pub use linear::{
    characteristic_polynomial, diffusion_matrix, drift_matrix, linearize, linearized_couplings,
    phase_for_real_amplitude, routh_hurwitz_stable, spectral_stable, LinearizedModel, Quartic,
    SpectralStability,
};
pub use model::{
    drive_amplitude, thermal_occupation, validate_params, zero_point_fluctuation,
    DerivedQuantities, Issue, PhysicalParams, Scenario, Severity, ValidationReport,
};
pub use steady_state::{
    classify_bistability, cubic_coefficients, dissipative_closed_form, real_roots_cubic,
    steady_state_at_effective_detuning, steady_state_fixed_linewidth,
    steady_state_from_displacement, steady_states_at_bare_detuning, Branch, BranchSet,
    BistabilityReport, CubicCoefficients, SteadyState, SteadyStateMode,
};
pub use sweep::{
    evaluate_point, find_optimum, survival_temperature, sweep, Axis, AxisParam, Optimum,
    PointResult, PointStatus, Spacing, SurvivalTemperature, SweepResult, SweepSpec,
};
