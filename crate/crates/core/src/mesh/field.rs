use serde::{Deserialize, Serialize};

use super::surface::TriSurface;
use crate::error::{Error, Result};
use crate::tensor::{OperatorSample, TangentMetric};

/// How edge lengths are turned into triangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeometryModel {
    /// Geodesic triangles of curvature −1.
    Hyperbolic,
    /// Flat triangles.
    Euclidean,
}

/// A metric per face, in that face's chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricField {
    pub model: GeometryModel,
    pub faces: Vec<TangentMetric>,
}

/// An operator per face, in that face's chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorField {
    pub faces: Vec<OperatorSample>,
}

impl OperatorField {
    pub fn identity(n: usize) -> Self {
        OperatorField { faces: vec![OperatorSample::IDENTITY; n] }
    }
}

impl MetricField {
    /// The chart metric itself on every face.
    pub fn uniform(n: usize, model: GeometryModel) -> Self {
        MetricField { model, faces: vec![TangentMetric::IDENTITY; n] }
    }

    /// Metric with the given edge lengths `[ℓ01, ℓ12, ℓ20]` per face.
    pub fn from_edge_lengths(surface: &TriSurface, lengths: &[[f64; 3]], model: GeometryModel) -> Result<Self> {
        let faces = (0..surface.face_count())
            .map(|f| metric_from_lengths(surface, f, lengths[f]))
            .collect::<Result<Vec<_>>>()?;
        Ok(MetricField { model, faces })
    }

    /// Edge lengths `√g(e,e)` of each face in its own metric.
    pub fn edge_lengths(&self, surface: &TriSurface) -> Vec<[f64; 3]> {
        (0..surface.face_count())
            .map(|f| [0, 1, 2].map(|k| {
                let e = surface.edge_vector(f, k);
                self.faces[f].norm_of(e)
            }))
            .collect()
    }

    /// Edge lengths averaged between the two faces sharing each edge.
    pub fn consistent_lengths(&self, surface: &TriSurface) -> Vec<[f64; 3]> {
        let own = self.edge_lengths(surface);
        (0..surface.face_count())
            .map(|f| [0, 1, 2].map(|k| {
                let fe = surface.neighbors[f][k];
                0.5 * (own[f][k] + own[fe.face][fe.edge])
            }))
            .collect()
    }

    /// Largest disagreement of an edge length between its two faces.
    pub fn length_mismatch(&self, surface: &TriSurface) -> f64 {
        let own = self.edge_lengths(surface);
        let mut worst = 0.0f64;
        for f in 0..surface.face_count() {
            for k in 0..3 {
                let fe = surface.neighbors[f][k];
                worst = worst.max((own[f][k] - own[fe.face][fe.edge]).abs());
            }
        }
        worst
    }
}

/// The chart metric `G` with `eₖᵀ G eₖ = ℓₖ²` on the three edges of face `f`.
pub fn metric_from_lengths(surface: &TriSurface, f: usize, lengths: [f64; 3]) -> Result<TangentMetric> {
    // Rows (x², 2xy, y²) for each edge vector.
    let rows: Vec<[f64; 3]> = (0..3)
        .map(|k| {
            let e = surface.edge_vector(f, k);
            [e[0] * e[0], 2.0 * e[0] * e[1], e[1] * e[1]]
        })
        .collect();
    let rhs = lengths.map(|l| l * l);
    let g = solve3(&rows, &rhs).ok_or(Error::DegenerateFace { face: f })?;
    TangentMetric::new(g[0], g[1], g[2]).map_err(|_| Error::DegenerateFace { face: f })
}

fn solve3(a: &[[f64; 3]], b: &[f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, o) in out.iter_mut().enumerate() {
        let mut m = a.to_vec();
        for r in 0..3 {
            m[r][col] = b[r];
        }
        *o = det(&m) / d;
    }
    Some(out)
}

/// Versioned JSON form of a surface with optional fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceDocument {
    pub version: u32,
    pub genus: usize,
    pub vertices: usize,
    pub faces: Vec<[usize; 3]>,
    pub frames: Vec<[[f64; 2]; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub metric: Option<Vec<[f64; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub operator: Option<Vec<[f64; 4]>>,
}

pub const DOCUMENT_VERSION: u32 = 1;

impl SurfaceDocument {
    pub fn new(surface: &TriSurface, metric: Option<&MetricField>, ops: Option<&OperatorField>) -> Self {
        SurfaceDocument {
            version: DOCUMENT_VERSION,
            genus: surface.genus,
            vertices: surface.vertex_count,
            faces: (0..surface.face_count()).map(|f| surface.face_vertices(f)).collect(),
            frames: surface.charts.clone(),
            metric: metric.map(|m| m.faces.iter().map(|g| [g.g11, g.g12, g.g22]).collect()),
            operator: ops.map(|o| o.faces.iter().map(|a| [a.a11, a.a12, a.a21, a.a22]).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SurfaceDocument = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if doc.version != DOCUMENT_VERSION {
            return Err(Error::Format(format!("unsupported document version {}", doc.version)));
        }
        if doc.frames.len() != doc.faces.len() {
            return Err(Error::Format("frame count differs from face count".into()));
        }
        Ok(doc)
    }

    pub fn metric_field(&self, model: GeometryModel) -> Result<Option<MetricField>> {
        self.metric
            .as_ref()
            .map(|m| {
                let faces = m
                    .iter()
                    .map(|g| TangentMetric::new(g[0], g[1], g[2]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(MetricField { model, faces })
            })
            .transpose()
    }

    pub fn operator_field(&self) -> Option<OperatorField> {
        self.operator.as_ref().map(|o| OperatorField {
            faces: o.iter().map(|a| OperatorSample::new(a[0], a[1], a[2], a[3])).collect(),
        })
    }
}
