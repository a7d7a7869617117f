//! Landslides along a pinching sequence compared with the earthquake they approach.

use serde::{Deserialize, Serialize};

use super::curvature::{landslide_field, trace_mass};
use super::develop::developed_holonomy;
use super::minlag::{minimal_lagrangian_from, GraphArea};
use super::optim::SolverConfig;
use super::surface::build_octagon_surface;
use crate::error::{Error, Result};
use crate::holonomy::{conjugator, fn_to_rep, pinch_sequence, twist_rep_along_a1, CurveClass, FNCoords, SurfaceGroupRep};

/// Curves compared along the sequence. The first one crosses `a₁` once and fixes `θ_n`.
pub const TEST_CURVES: [&str; 6] = ["b", "ab", "aB", "bd", "d", "c"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub n: usize,
    pub pinched_length: f64,
    pub theta: f64,
    /// RMS relative length error of the test curves against the target earthquake.
    pub discrepancy: f64,
    /// Twist along `a₁` whose lengths fit the landslide image best, on a grid of step 0.005.
    pub fitted_twist: f64,
    /// `θ_n ∫ tr b_n` minus its value `θ_n · 2 Area` for the identity operator.
    pub excess_trace_mass: f64,
    pub relator_residual: f64,
    pub det_error: f64,
}

fn rms_error(hol: &SurfaceGroupRep, target: &SurfaceGroupRep, curves: &[CurveClass]) -> f64 {
    let s: f64 = curves
        .iter()
        .map(|c| {
            let t = target.length_of(c);
            ((hol.length_of(c) - t) / t).powi(2)
        })
        .sum();
    (s / curves.len() as f64).sqrt()
}

/// Pinches `a₁` of the regular octagon surface through `lengths`, solves for the minimal
/// Lagrangian map to each structure on a mesh of the given level, lands slides the octagon
/// metric with `θ_n = 1/ℓ_n(b₁)` and reads the holonomy of the result off the developing map.
///
/// The graph area is measured flat, since faces crossing the collar have image edges of
/// length comparable to `1/θ_n`. Each solve starts from the previous map.
pub fn earthquake_limit(level: usize, lengths: &[f64], target_twist: f64, cfg: &SolverConfig) -> Result<Vec<LimitRow>> {
    let rep = SurfaceGroupRep::octagon();
    let coords = FNCoords::octagon();
    let align = conjugator(&fn_to_rep(&coords)?, &rep)?;
    let seq = pinch_sequence(&coords, 1, lengths)?;
    let curves: Vec<CurveClass> = TEST_CURVES.iter().map(|w| CurveClass::parse(w)).collect::<Result<_>>()?;
    let (surface, h) = build_octagon_surface(level)?;
    let all: Vec<usize> = (0..surface.face_count()).collect();
    let base = trace_mass(&surface, &h, &super::field::OperatorField::identity(surface.face_count()), &all, 1.0)?;
    let target = twist_rep_along_a1(&rep, target_twist)?;

    let mut init = surface.positions.clone();
    let mut rows = Vec::with_capacity(lengths.len());
    for (n, star) in seq.iter().enumerate() {
        let star = star.conjugate_by(&align);
        let theta = 1.0 / star.length_of(&curves[0]);
        let ml = minimal_lagrangian_from(&surface, &rep, &surface.positions, &star, &init, GraphArea::Flat, cfg)?;
        init.clone_from(&ml.map.images);
        let mass = trace_mass(&surface, &h, &ml.b, &all, theta)?;
        let (slid, _) = landslide_field(&h, &ml.b, theta)?;
        let hol = developed_holonomy(&surface, &slid.consistent_lengths(&surface))?;
        let mut best = (f64::INFINITY, 0.0);
        for i in -200..=200 {
            let tw = i as f64 * 0.005;
            let e = rms_error(&hol, &twist_rep_along_a1(&rep, tw)?, &curves);
            if e < best.0 {
                best = (e, tw);
            }
        }
        rows.push(LimitRow {
            n,
            pinched_length: lengths[n],
            theta,
            discrepancy: rms_error(&hol, &target, &curves),
            fitted_twist: best.1,
            excess_trace_mass: mass - theta * base,
            relator_residual: hol.relator_residual,
            det_error: ml.max_det_error(),
        });
    }
    Ok(rows)
}

/// Whether the discrepancy strictly decreases over the last `k` rows.
pub fn decreasing_tail(rows: &[LimitRow], k: usize) -> Result<bool> {
    if rows.len() < k || k < 2 {
        return Err(Error::OutOfRange { what: "rows for the trend", value: rows.len() as f64 });
    }
    Ok(rows[rows.len() - k..].windows(2).all(|w| w[1].discrepancy < w[0].discrepancy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unpinched_step_matches_the_octagon() {
        // No pinching: the flat graph area makes the identity critical only up to the
        // discretization, so the map stays near it and the best twist is zero.
        let rows = earthquake_limit(1, &[FNCoords::octagon().lengths[0]], -0.5, &SolverConfig::default()).unwrap();
        assert_eq!(rows[0].fitted_twist, 0.0);
        assert!(rows[0].excess_trace_mass.abs() < 1e-2, "{:?}", rows[0]);
    }

    #[test]
    fn trend_needs_enough_rows() {
        assert!(decreasing_tail(&[], 3).is_err());
    }
}
