#![allow(dead_code)]

use optomech::constants::TWO_PI;
use optomech::sweep::{Axis, AxisParam, Spacing, SweepSpec};
use optomech::{PhysicalParams, Scenario, SteadyStateMode};

pub fn hz(f: f64) -> f64 {
    TWO_PI * f
}

/// Reference device at 50 mW and 0.4 K.
pub fn device() -> PhysicalParams {
    let mut p = PhysicalParams::msi_reference();
    p.power = 50e-3;
    p.temperature = 0.4;
    p
}

pub fn coherent(g_hz: f64) -> PhysicalParams {
    PhysicalParams { g_omega: hz(g_hz), ..device() }
}

pub fn dissipative(g_hz: f64) -> PhysicalParams {
    PhysicalParams { g_kappa: hz(g_hz), ..device() }
}

pub fn cooperative(g_omega_hz: f64, ratio: f64) -> PhysicalParams {
    PhysicalParams {
        g_omega: hz(g_omega_hz),
        g_kappa: hz(g_omega_hz) * ratio,
        ..device()
    }
}

fn spec(scenario: Scenario, base: PhysicalParams, detuning: f64, axes: Vec<Axis>) -> SweepSpec {
    SweepSpec {
        scenario,
        mode: SteadyStateMode::FixedLinewidth,
        base,
        detuning,
        axes,
    }
}

pub fn fig3a() -> SweepSpec {
    spec(
        Scenario::Coherent,
        coherent(0.0),
        0.0,
        vec![
            Axis::linear(AxisParam::DeltaSOverOmegaM, 0.5, 4.0, 101),
            Axis::linear(AxisParam::GOmega, 0.0, hz(6.0), 101),
        ],
    )
}

pub fn fig3b(temperature: f64) -> SweepSpec {
    let base = PhysicalParams { temperature, ..coherent(0.0) };
    let ds = 2.0 * base.omega_m;
    spec(Scenario::Coherent, base, ds, vec![Axis::linear(AxisParam::GOmega, 0.0, hz(6.0), 201)])
}

pub fn fig3c() -> SweepSpec {
    let base = coherent(3.1);
    let ds = 2.0 * base.omega_m;
    spec(Scenario::Coherent, base, ds, vec![Axis::linear(AxisParam::Temperature, 0.0, 12.0, 201)])
}

pub fn fig4a() -> SweepSpec {
    spec(
        Scenario::Dissipative,
        dissipative(0.0),
        0.0,
        vec![
            Axis::linear(AxisParam::DeltaSOverOmegaM, 0.05, 1.0, 101),
            Axis::linear(AxisParam::GKappa, 0.0, hz(30.0), 101),
        ],
    )
}

pub fn fig4b(temperature: f64) -> SweepSpec {
    let base = PhysicalParams { temperature, ..dissipative(0.0) };
    let ds = 0.1 * base.omega_m;
    spec(Scenario::Dissipative, base, ds, vec![Axis::linear(AxisParam::GKappa, 0.0, hz(30.0), 201)])
}

pub fn fig4c() -> SweepSpec {
    let base = dissipative(19.0);
    let ds = 0.1 * base.omega_m;
    spec(
        Scenario::Dissipative,
        base,
        ds,
        vec![Axis {
            spacing: Spacing::Log,
            ..Axis::linear(AxisParam::Temperature, 0.01, 1e5, 201)
        }],
    )
}

pub fn fig5a() -> SweepSpec {
    spec(
        Scenario::Cooperative,
        cooperative(3.0, 0.0),
        0.0,
        vec![
            Axis::linear(AxisParam::DeltaSOverOmegaM, 0.5, 4.0, 101),
            Axis::linear(AxisParam::GRatio, 0.0, 0.2, 101),
        ],
    )
}

pub fn fig5b(temperature: f64) -> SweepSpec {
    let base = PhysicalParams { temperature, ..cooperative(3.0, 0.0) };
    let ds = 2.2 * base.omega_m;
    spec(Scenario::Cooperative, base, ds, vec![Axis::linear(AxisParam::GRatio, 0.0, 0.2, 201)])
}

pub fn fig5c(ratio: f64) -> SweepSpec {
    let base = cooperative(3.0, ratio);
    let ds = 2.2 * base.omega_m;
    spec(Scenario::Cooperative, base, ds, vec![Axis::linear(AxisParam::Temperature, 0.0, 12.0, 201)])
}

/// Every figure-reproduction sweep, labelled.
pub fn all_figure_sweeps() -> Vec<(&'static str, SweepSpec)> {
    vec![
        ("fig3a", fig3a()),
        ("fig3b@0.4K", fig3b(0.4)),
        ("fig3b@4K", fig3b(4.0)),
        ("fig3c", fig3c()),
        ("fig4a", fig4a()),
        ("fig4b@0.4K", fig4b(0.4)),
        ("fig4b@4K", fig4b(4.0)),
        ("fig4c", fig4c()),
        ("fig5a", fig5a()),
        ("fig5b@0.4K", fig5b(0.4)),
        ("fig5b@4K", fig5b(4.0)),
        ("fig5c@0.01", fig5c(0.01)),
        ("fig5c@0.1", fig5c(0.1)),
    ]
}
