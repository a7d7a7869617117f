//! Discrete surfaces: Gauss–Bonnet, refinement of the pushed metric, and the minimal
//! Lagrangian map by two routes.

use std::f64::consts::PI;

use landslide::holonomy::{twist_rep_along_a1, CurveClass, SurfaceGroupRep};
use landslide::mesh::{
    build_octagon_surface, center_iteration, discrete_curvature, minimal_lagrangian, operator_disagreement,
    refinement_study, SolverConfig,
};
use landslide::Result;

use crate::config::MeshConfig;
use crate::report::{Check, Outcome, Table};

pub fn run(cfg: &MeshConfig) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut tables = Vec::new();

    let (surface, h) = build_octagon_surface(cfg.level)?;
    let curv = discrete_curvature(&surface, &h)?;
    checks.push(Check::at_most("gauss_bonnet", (curv.total_curvature() + 4.0 * PI).abs(), 1e-6));

    let rows = refinement_study(&cfg.refinement_levels, cfg.theta, cfg.strength)?;
    let ratio = rows.windows(2).map(|w| w[0].max_deviation / w[1].max_deviation).fold(f64::INFINITY, f64::min);
    checks.push(Check::at_least("refinement_ratio", ratio, cfg.min_ratio));
    let mut t = Table::new("refinement", &["level", "faces", "max_deviation"]);
    for r in &rows {
        t.push(vec![r.level as f64, r.faces as f64, r.max_deviation]);
    }
    tables.push(t);

    let solver = SolverConfig::default();
    let rep = SurfaceGroupRep::octagon();
    let same = minimal_lagrangian(&surface, &rep, &rep, &solver)?;
    checks.push(Check::at_most("identity_case", same.max_deviation_from_identity(), cfg.identity_tolerance));

    let la = rep.length_of(&CurveClass::parse("a")?);
    let star = twist_rep_along_a1(&rep, cfg.perturbation * la)?;
    let ml = minimal_lagrangian(&surface, &rep, &star, &solver)?;
    checks.push(Check::at_most("det_b", ml.max_det_error(), cfg.det_tolerance));
    checks.push(Check::at_most("area_match", (ml.area_h - ml.area_star).abs(), cfg.area_tolerance));

    let ci = center_iteration(&surface, &rep, &star, cfg.center_tolerance, cfg.center_rounds, &solver)?;
    let dual = operator_disagreement(&surface, (&h.faces, &ml.b), (&ci.pullbacks.0, &ci.b));
    checks.push(Check::at_most("dual_solver", dual, cfg.dual_tolerance));
    checks.push(Check::at_most("center_hopf_residual", ci.hopf_residual, cfg.center_tolerance));

    let mut t = Table::new("minimal_lagrangian_faces", &["face", "raw_det", "b11", "b12", "b21", "b22"]);
    for (f, (d, b)) in ml.raw_det.iter().zip(&ml.b.faces).enumerate() {
        t.push(vec![f as f64, *d, b.a11, b.a12, b.a21, b.a22]);
    }
    tables.push(t);
    Ok(Outcome { checks, tables })
}
