//! Parallel grid evaluation.

use cvsteady_core::{analyze_point, PointResult};
use rayon::prelude::*;

use crate::config::{Fixed, SweepConfig, Units, DEFAULT_OMEGA_M_HZ};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub series: Option<String>,
    /// Axis values in config units, `axis1` first.
    pub coords: Vec<f64>,
    /// Factor converting internal rates back to config units.
    pub rate_unit: f64,
    /// Per-point failures are kept as messages; they never abort the grid.
    pub outcome: Result<PointResult, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub config: SweepConfig,
    pub rows: Vec<Row>,
}

struct Node<'a> {
    series: Option<&'a str>,
    layer: &'a Fixed,
    coords: Vec<f64>,
}

fn nodes<'a>(cfg: &'a SweepConfig, layers: &'a [(Option<&'a str>, Fixed)]) -> Vec<Node<'a>> {
    let v1 = cfg.axis1.values();
    let v2 = cfg.axis2.as_ref().map(|a| a.values());
    let mut out = Vec::with_capacity(cfg.point_count());
    for (label, layer) in layers {
        for &x in &v1 {
            match &v2 {
                Some(v2) => out.extend(v2.iter().map(|&y| Node {
                    series: *label,
                    layer,
                    coords: vec![x, y],
                })),
                None => out.push(Node {
                    series: *label,
                    layer,
                    coords: vec![x],
                }),
            }
        }
    }
    out
}

fn evaluate(cfg: &SweepConfig, node: &Node<'_>) -> Row {
    let mut values = node.layer.clone();
    for (axis, &v) in cfg.axes().zip(&node.coords) {
        values.set(axis.name, v);
    }
    let rate_unit = match cfg.units {
        Units::OmegaM => 1.0,
        Units::Hz => values.omega_m_hz.unwrap_or(DEFAULT_OMEGA_M_HZ),
    };
    let outcome = values
        .resolve(cfg.units, cfg.occupation_mode)
        .and_then(|p| analyze_point(&p))
        .map_err(|e| e.to_string());
    Row {
        series: node.series.map(str::to_owned),
        coords: node.coords.clone(),
        rate_unit,
        outcome,
    }
}

/// Evaluates every grid node. Rows are ordered series-major, then row-major
/// over `(axis1, axis2)`, independently of `threads`.
pub fn run_sweep(cfg: &SweepConfig, threads: Option<usize>) -> Result<GridResult, SweepError> {
    cfg.validate()?;
    let layers: Vec<(Option<&str>, Fixed)> = if cfg.series.is_empty() {
        vec![(None, cfg.fixed.clone())]
    } else {
        cfg.series
            .iter()
            .map(|s| (Some(s.label.as_str()), cfg.fixed.overlaid(&s.overrides)))
            .collect()
    };
    let nodes = nodes(cfg, &layers);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    let rows = pool.install(|| nodes.par_iter().map(|n| evaluate(cfg, n)).collect());
    Ok(GridResult {
        config: cfg.clone(),
        rows,
    })
}
