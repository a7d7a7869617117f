use std::f64::consts::PI;

use super::field::{GeometryModel, MetricField, OperatorField};
use super::surface::TriSurface;
use crate::error::{Error, Result};
use crate::hyperbolic::{euclidean_angle, hyperbolic_angle};
use crate::tensor::{landslide_point, OperatorSample};

/// Interior angles at the three corners of a triangle with sides `[ℓ01, ℓ12, ℓ20]`.
pub fn corner_angles(lengths: [f64; 3], model: GeometryModel) -> Option<[f64; 3]> {
    let [a, b, c] = lengths;
    if !(a > 0.0 && b > 0.0 && c > 0.0) || a + b <= c || b + c <= a || c + a <= b {
        return None;
    }
    let angle = match model {
        GeometryModel::Hyperbolic => hyperbolic_angle,
        GeometryModel::Euclidean => euclidean_angle,
    };
    // Corner 0 is opposite edge 12, corner 1 opposite edge 20, corner 2 opposite edge 01.
    Some([angle(b, a, c), angle(c, a, b), angle(a, b, c)])
}

/// Area of a triangle with the given sides.
pub fn triangle_area(lengths: [f64; 3], model: GeometryModel) -> Option<f64> {
    match model {
        GeometryModel::Hyperbolic => corner_angles(lengths, model).map(|t| PI - t.iter().sum::<f64>()),
        GeometryModel::Euclidean => {
            let [a, b, c] = lengths;
            let s = 0.5 * (a + b + c);
            let q = s * (s - a) * (s - b) * (s - c);
            (q > 0.0).then(|| q.sqrt())
        }
    }
}

/// Per-vertex angle defects, per-vertex areas (a third of each incident face) and face areas.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub defects: Vec<f64>,
    pub vertex_areas: Vec<f64>,
    pub face_areas: Vec<f64>,
    pub model: GeometryModel,
}

impl CurvatureReport {
    pub fn area(&self) -> f64 {
        self.face_areas.iter().sum()
    }

    /// Atomic curvature at vertices plus the constant curvature of the faces; equals `2πχ`.
    pub fn total_curvature(&self) -> f64 {
        let atoms: f64 = self.defects.iter().sum();
        match self.model {
            GeometryModel::Hyperbolic => atoms - self.area(),
            GeometryModel::Euclidean => atoms,
        }
    }

    /// Defect divided by vertex area: the excess of the curvature over the face model.
    pub fn curvature_density(&self) -> Vec<f64> {
        self.defects.iter().zip(&self.vertex_areas).map(|(d, a)| d / a).collect()
    }
}

/// Angle defects `2π − Σ angles` from edge lengths averaged across adjacent faces.
pub fn discrete_curvature(surface: &TriSurface, metric: &MetricField) -> Result<CurvatureReport> {
    curvature_from_lengths(surface, &metric.consistent_lengths(surface), metric.model)
}

pub fn curvature_from_lengths(
    surface: &TriSurface,
    lengths: &[[f64; 3]],
    model: GeometryModel,
) -> Result<CurvatureReport> {
    let mut angle_sum = vec![0.0; surface.vertex_count];
    let mut vertex_areas = vec![0.0; surface.vertex_count];
    let mut face_areas = Vec::with_capacity(surface.face_count());
    for (f, l) in lengths.iter().enumerate() {
        let ang = corner_angles(*l, model).ok_or(Error::DegenerateFace { face: f })?;
        let area = triangle_area(*l, model).ok_or(Error::DegenerateFace { face: f })?;
        for (k, v) in surface.face_vertices(f).into_iter().enumerate() {
            angle_sum[v] += ang[k];
            vertex_areas[v] += area / 3.0;
        }
        face_areas.push(area);
    }
    Ok(CurvatureReport {
        defects: angle_sum.iter().map(|s| 2.0 * PI - s).collect(),
        vertex_areas,
        face_areas,
        model,
    })
}

/// Per-edge mismatch `‖b_f − R b_g Rᵀ‖_F` of the operator transported across each edge.
///
/// Indexed by face and local edge; every interior edge appears twice with equal values.
pub fn codazzi_residual(surface: &TriSurface, ops: &OperatorField) -> Vec<[f64; 3]> {
    (0..surface.face_count())
        .map(|f| {
            [0, 1, 2].map(|k| {
                let fe = surface.neighbors[f][k];
                let r = OperatorSample::rotation(surface.transitions[f][k]);
                let moved = r * ops.faces[fe.face] * r.transpose();
                (ops.faces[f] - moved).frobenius()
            })
        })
        .collect()
}

pub fn max_codazzi_residual(surface: &TriSurface, ops: &OperatorField) -> f64 {
    codazzi_residual(surface, ops).iter().flatten().fold(0.0, |m, &x| m.max(x))
}

/// Applies the pointwise landslide in every face.
pub fn landslide_field(
    h: &MetricField,
    b: &OperatorField,
    theta: f64,
) -> Result<(MetricField, MetricField)> {
    if h.faces.len() != b.faces.len() {
        return Err(Error::StructureMismatch("metric and operator fields differ in size".into()));
    }
    let (a, s): (Vec<_>, Vec<_>) = h
        .faces
        .iter()
        .zip(&b.faces)
        .map(|(g, op)| landslide_point(g, op, theta))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok((MetricField { model: h.model, faces: a }, MetricField { model: h.model, faces: s }))
}

/// `θ Σ tr(b_f) area_f` over the faces in `region`.
pub fn trace_mass(
    surface: &TriSurface,
    h: &MetricField,
    b: &OperatorField,
    region: &[usize],
    theta: f64,
) -> Result<f64> {
    let lengths = h.edge_lengths(surface);
    let mut total = 0.0;
    for &f in region {
        let area = triangle_area(lengths[f], h.model).ok_or(Error::DegenerateFace { face: f })?;
        total += b.faces[f].trace() * area;
    }
    Ok(theta * total)
}
