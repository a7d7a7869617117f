//! Smooth test fields sampled onto the octagon mesh.

use serde::{Deserialize, Serialize};

use super::curvature::{discrete_curvature, landslide_field};
use super::field::OperatorField;
use super::surface::build_octagon_surface;
use super::surface::{reference_lifts, TriSurface};
use crate::error::{Error, Result};
use crate::holonomy::SurfaceGroupRep;
use crate::hyperbolic::{minkowski, HypPoint};
use crate::tensor::OperatorSample;

type Vec3 = [f64; 3];

fn sub(a: &HypPoint, b: &HypPoint) -> Vec3 {
    [a.x0 - b.x0, a.x1 - b.x1, a.x2 - b.x2]
}

fn dot(u: &Vec3, v: &Vec3) -> f64 {
    // Tangent vectors are spacelike; this is their positive inner product.
    -(u[0] * v[0] - u[1] * v[1] - u[2] * v[2])
}

fn as_point(v: &Vec3) -> HypPoint {
    HypPoint { x0: v[0], x1: v[1], x2: v[2] }
}

fn tangent_part(v: Vec3, c: &HypPoint) -> Vec3 {
    let k = minkowski(&as_point(&v), c);
    [v[0] - k * c.x0, v[1] - k * c.x1, v[2] - k * c.x2]
}

fn normalize(v: Vec3) -> Vec3 {
    let n = dot(&v, &v).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Centroid of a face and an orthonormal tangent frame there aligned with the face chart.
pub fn face_frame(lifts: &[HypPoint; 3]) -> (HypPoint, [Vec3; 2]) {
    let s = [
        lifts[0].x0 + lifts[1].x0 + lifts[2].x0,
        lifts[0].x1 + lifts[1].x1 + lifts[2].x1,
        lifts[0].x2 + lifts[1].x2 + lifts[2].x2,
    ];
    let n = minkowski(&as_point(&s), &as_point(&s)).sqrt();
    let c = HypPoint { x0: s[0] / n, x1: s[1] / n, x2: s[2] / n };
    let e1 = normalize(tangent_part(sub(&lifts[1], &lifts[0]), &c));
    let v = tangent_part(sub(&lifts[2], &lifts[0]), &c);
    let k = dot(&v, &e1);
    let e2 = normalize([v[0] - k * e1[0], v[1] - k * e1[1], v[2] - k * e1[2]]);
    (c, [e1, e2])
}

/// Codazzi operator of determinant one around the geodesic `x2 = 0`.
///
/// In Fermi coordinates `(r, t)` with `h = dr² + cosh²r dt²` it is `diag(1/λ, λ)` in the
/// frame `(∂r, ∂t/cosh r)` with `λ² = 1 − strength / cosh² r`. Requires `strength < 1`.
pub fn fermi_codazzi_field(
    surface: &TriSurface,
    rep: &SurfaceGroupRep,
    strength: f64,
) -> Result<OperatorField> {
    if !(0.0..1.0).contains(&strength) {
        return Err(Error::OutOfRange { what: "field strength", value: strength });
    }
    let faces = reference_lifts(surface, rep)
        .iter()
        .map(|lifts| {
            let (c, [e1, e2]) = face_frame(lifts);
            let r = c.x2.asinh();
            let t = (c.x1 / c.x0).atanh();
            let er = [r.sinh() * t.cosh(), r.sinh() * t.sinh(), r.cosh()];
            let et = [t.sinh(), t.cosh(), 0.0];
            let lam = (1.0 - strength / r.cosh().powi(2)).sqrt();
            let entry = |a: &Vec3, b: &Vec3| {
                dot(a, &er) * dot(&er, b) / lam + lam * dot(a, &et) * dot(&et, b)
            };
            OperatorSample::new(entry(&e1, &e1), entry(&e1, &e2), entry(&e2, &e1), entry(&e2, &e2))
        })
        .collect();
    Ok(OperatorField { faces })
}

/// Vertices whose star does not touch the octagon boundary.
pub fn deep_interior(surface: &TriSurface) -> Vec<bool> {
    let mut near = surface.on_boundary.clone();
    for f in &surface.faces {
        if f.iter().any(|k| surface.on_boundary[k.vertex]) {
            for k in f {
                near[k.vertex] = true;
            }
        }
    }
    near.iter().map(|n| !n).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RefinementRow {
    pub level: usize,
    pub faces: usize,
    /// Largest change of the angle defect caused by the push, over deep interior vertices.
    pub max_deviation: f64,
}

/// Pushes the octagon metric by the Fermi field at each level and records the defect change.
///
/// The field is not equivariant, so it jumps across the glued octagon sides; vertices next to
/// the boundary are left out.
pub fn refinement_study(levels: &[usize], theta: f64, strength: f64) -> Result<Vec<RefinementRow>> {
    let rep = SurfaceGroupRep::octagon();
    levels
        .iter()
        .map(|&level| {
            let (s, h) = build_octagon_surface(level)?;
            let b = fermi_codazzi_field(&s, &rep, strength)?;
            let (pushed, _) = landslide_field(&h, &b, theta)?;
            let before = discrete_curvature(&s, &h)?;
            let after = discrete_curvature(&s, &pushed)?;
            let deep = deep_interior(&s);
            let max_deviation = (0..s.vertex_count)
                .filter(|&v| deep[v])
                .map(|v| (after.defects[v] - before.defects[v]).abs())
                .fold(0.0, f64::max);
            Ok(RefinementRow { level, faces: s.face_count(), max_deviation })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_octagon_surface;
    use crate::tensor::TangentMetric;

    #[test]
    fn field_is_valid_per_face() {
        let (s, _) = build_octagon_surface(1).unwrap();
        let f = fermi_codazzi_field(&s, &SurfaceGroupRep::octagon(), 0.5).unwrap();
        for b in &f.faces {
            b.check_codazzi_operator(&TangentMetric::IDENTITY).unwrap();
        }
    }

    #[test]
    fn zero_strength_is_identity() {
        let (s, _) = build_octagon_surface(1).unwrap();
        let f = fermi_codazzi_field(&s, &SurfaceGroupRep::octagon(), 0.0).unwrap();
        for b in &f.faces {
            assert!(b.max_abs_diff(&crate::tensor::OperatorSample::IDENTITY) < 1e-13);
        }
        assert!(fermi_codazzi_field(&s, &SurfaceGroupRep::octagon(), 1.0).is_err());
    }

    #[test]
    fn deviation_shrinks_from_level_one_to_two() {
        let rows = refinement_study(&[1, 2], std::f64::consts::FRAC_PI_2, 0.5).unwrap();
        assert!(rows[0].max_deviation / rows[1].max_deviation >= 1.8, "{rows:?}");
    }
}
