//! Landslides along a pinching sequence against the earthquake they approach.

use landslide::mesh::{decreasing_tail, earthquake_limit, SolverConfig};
use landslide::Result;

use crate::config::LimitConfig;
use crate::report::{Check, Outcome, Table};

/// The trend check is non-gating: the mesh solver limits how closely the limit is approached.
pub fn run(cfg: &LimitConfig) -> Result<Outcome> {
    let rows = earthquake_limit(cfg.level, &cfg.lengths, cfg.target_twist, &SolverConfig { grad_tol: cfg.grad_tol, ..Default::default() })?;
    let trend = decreasing_tail(&rows, cfg.trend_points)?;
    let tail = &rows[rows.len() - cfg.trend_points..];
    let worst_step = tail.windows(2).map(|w| w[1].discrepancy / w[0].discrepancy).fold(0.0, f64::max);
    let checks = vec![
        Check::holds("discrepancy_decreasing", trend).non_gating(),
        Check::at_most("discrepancy_step_ratio", worst_step, cfg.max_step_ratio).non_gating(),
    ];
    let mut t = Table::new(
        "limit",
        &["n", "pinched_length", "theta", "discrepancy", "fitted_twist", "excess_trace_mass", "relator_residual", "det_error"],
    );
    for r in &rows {
        t.push(vec![
            r.n as f64,
            r.pinched_length,
            r.theta,
            r.discrepancy,
            r.fitted_twist,
            r.excess_trace_mass,
            r.relator_residual,
            r.det_error,
        ]);
    }
    Ok(Outcome { checks, tables: vec![t] })
}
