//! CSV grids and JSON summaries.
//!
//! Floats are written with `{:?}`, the shortest text that parses back to
//! the same bits, so output is byte-stable and round-trips exactly.

use std::collections::BTreeMap;

use optomech::sweep::{find_optimum, PointStatus, SweepResult};
use serde::Serialize;

use crate::config::{HumanAxis, RunConfig};

pub fn num(v: f64) -> String {
    format!("{v:?}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Human-unit coordinates of grid point `flat`, row-major.
fn human_coords(axes: &[Vec<f64>], flat: usize) -> Vec<f64> {
    let mut rem = flat;
    let mut coords = vec![0.0; axes.len()];
    for (k, vals) in axes.iter().enumerate().rev() {
        coords[k] = vals[rem % vals.len()];
        rem /= vals.len();
    }
    coords
}

fn axis_values(axes: &[HumanAxis]) -> Vec<Vec<f64>> {
    axes.iter().map(HumanAxis::values).collect()
}

pub fn sweep_csv(cfg: &RunConfig, result: &SweepResult) -> csv::Result<Vec<u8>> {
    let values = axis_values(&cfg.axes);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = cfg.axes.iter().map(|a| a.param.column()).collect();
    header.extend(["x_s", "stable", "E_N"]);
    w.write_record(&header)?;
    for (i, pt) in result.points.iter().enumerate() {
        let mut row: Vec<String> = human_coords(&values, i).into_iter().map(num).collect();
        row.push(opt(pt.steady.map(|s| s.x_s)));
        row.push(if pt.stable { "1" } else { "0" }.into());
        row.push(opt(pt.e_n));
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| e.into_error().into())
}

#[derive(Debug, Serialize)]
pub struct AxisSummary {
    pub name: &'static str,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Serialize)]
pub struct OptimumSummary {
    pub coords: BTreeMap<&'static str, f64>,
    pub e_n: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub scenario: &'static str,
    pub mode: &'static str,
    pub axes: Vec<AxisSummary>,
    pub points: usize,
    pub stable_points: usize,
    pub unstable_points: usize,
    pub infeasible_points: usize,
    pub failed_points: usize,
    pub entangled_points: usize,
    pub optimum: Option<OptimumSummary>,
    pub max_lyapunov_residual: Option<f64>,
    pub min_symplectic_eigenvalue: Option<f64>,
    pub unphysical_points: usize,
}

pub fn sweep_summary(cfg: &RunConfig, result: &SweepResult) -> SweepSummary {
    let values = axis_values(&cfg.axes);
    let count = |f: fn(&PointStatus) -> bool| result.points.iter().filter(|p| f(&p.status)).count();
    let fold = |f: fn(f64, f64) -> f64, it: &mut dyn Iterator<Item = f64>| it.reduce(f);
    SweepSummary {
        scenario: cfg.scenario.name(),
        mode: cfg.mode.name(),
        axes: cfg
            .axes
            .iter()
            .map(|a| AxisSummary {
                name: a.param.column(),
                start: a.start,
                stop: a.stop,
                points: a.points,
            })
            .collect(),
        points: result.points.len(),
        stable_points: count(|s| matches!(s, PointStatus::Stable)),
        unstable_points: count(|s| matches!(s, PointStatus::Unstable)),
        infeasible_points: count(|s| matches!(s, PointStatus::Infeasible(_))),
        failed_points: count(|s| matches!(s, PointStatus::Failed(_))),
        entangled_points: result.points.iter().filter(|p| p.e_n.is_some_and(|e| e > 0.0)).count(),
        optimum: find_optimum(result).map(|o| OptimumSummary {
            coords: cfg
                .axes
                .iter()
                .map(|a| a.param.column())
                .zip(human_coords(&values, o.index))
                .collect(),
            e_n: o.e_n,
        }),
        max_lyapunov_residual: fold(f64::max, &mut result.points.iter().filter_map(|p| p.lyapunov_residual)),
        min_symplectic_eigenvalue: fold(f64::min, &mut result.points.iter().filter_map(|p| p.symplectic.map(|s| s[0]))),
        unphysical_points: result.points.iter().filter(|p| p.physical == Some(false)).count(),
    }
}

#[derive(Debug, Serialize)]
struct JsonPoint<'a> {
    coords: Vec<f64>,
    status: &'a PointStatus,
    x_s: Option<f64>,
    stable: bool,
    e_n: Option<f64>,
    spectral_margin: Option<f64>,
    lyapunov_residual: Option<f64>,
    symplectic: Option<[f64; 2]>,
}

#[derive(Debug, Serialize)]
struct JsonSweep<'a> {
    summary: SweepSummary,
    columns: Vec<&'static str>,
    points: Vec<JsonPoint<'a>>,
}

pub fn sweep_json(cfg: &RunConfig, result: &SweepResult) -> serde_json::Result<Vec<u8>> {
    let values = axis_values(&cfg.axes);
    let doc = JsonSweep {
        summary: sweep_summary(cfg, result),
        columns: cfg.axes.iter().map(|a| a.param.column()).collect(),
        points: result
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| JsonPoint {
                coords: human_coords(&values, i),
                status: &p.status,
                x_s: p.steady.map(|s| s.x_s),
                stable: p.stable,
                e_n: p.e_n,
                spectral_margin: p.spectral_margin,
                lyapunov_residual: p.lyapunov_residual,
                symplectic: p.symplectic,
            })
            .collect(),
    };
    pretty(&doc)
}

pub fn pretty<T: Serialize>(value: &T) -> serde_json::Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0e-300, 6.02214076e23, -0.0, 5.0] {
            assert_eq!(num(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
        assert_eq!(opt(None), "");
    }

    #[test]
    fn coords_are_row_major() {
        let axes = vec![vec![1.0, 2.0], vec![10.0, 20.0, 30.0]];
        assert_eq!(human_coords(&axes, 0), [1.0, 10.0]);
        assert_eq!(human_coords(&axes, 2), [1.0, 30.0]);
        assert_eq!(human_coords(&axes, 3), [2.0, 10.0]);
    }
}
