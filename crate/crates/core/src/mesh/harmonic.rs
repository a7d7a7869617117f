//! Equivariant maps from the mesh into the hyperbolic plane and their Dirichlet energy.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{metric_from_lengths, MetricField};
use super::optim::{minimize, SolverConfig};
use super::surface::{relative_element, TriSurface};
use crate::error::{Error, Result};
use crate::holonomy::{Mobius, SurfaceGroupRep, RELATOR_TOL};
use crate::hyperbolic::HypPoint;
use crate::tensor::{spd_sqrt, TangentMetric};

/// Images of the vertex classes; the lift of corner `(v, w)` is `ρ(w)·images[v]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMap {
    pub images: Vec<HypPoint>,
    pub energy: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    /// Objective never increased along the accepted iterates.
    pub monotone: bool,
}

/// Group elements carrying the far end of every edge into the frame of its near end.
pub(crate) struct EdgeFrames {
    elements: Vec<[(Mobius, Mobius); 3]>,
}

impl EdgeFrames {
    pub(crate) fn new(surface: &TriSurface, rep: &SurfaceGroupRep) -> Self {
        let elements = surface
            .faces
            .iter()
            .map(|c| {
                [0, 1, 2].map(|k| {
                    let g = relative_element(rep, &c[k], &c[(k + 1) % 3]);
                    (g, g.inverse())
                })
            })
            .collect();
        EdgeFrames { elements }
    }

    /// Length of edge `k` of face `f` and its gradient in the chart coordinates of both ends.
    pub(crate) fn edge(
        &self,
        surface: &TriSurface,
        images: &[HypPoint],
        f: usize,
        k: usize,
    ) -> (f64, [f64; 2], [f64; 2]) {
        let c = &surface.faces[f];
        let (vi, vj) = (c[k].vertex, c[(k + 1) % 3].vertex);
        let (g, gi) = &self.elements[f][k];
        let (yi, yj) = (&images[vi], &images[vj]);
        let z = g.act(yj);
        let w = gi.act(yi);
        let d = yi.distance(&z);
        let s = d.sinh().max(1e-300);
        let grad = |y: &HypPoint, o: &HypPoint| {
            [(o.x0 * y.x1 / y.x0 - o.x1) / s, (o.x0 * y.x2 / y.x0 - o.x2) / s]
        };
        (d, grad(yi, &z), grad(yj, &w))
    }

    /// The three image edge lengths of face `f`.
    pub(crate) fn lengths(&self, surface: &TriSurface, images: &[HypPoint], f: usize) -> [f64; 3] {
        [0, 1, 2].map(|k| self.edge(surface, images, f, k).0)
    }
}

pub(crate) fn images_from(x: &[f64]) -> Vec<HypPoint> {
    x.chunks(2).map(|u| HypPoint::from_chart(u[0], u[1])).collect()
}

pub(crate) fn unknowns_from(images: &[HypPoint]) -> Vec<f64> {
    images.iter().flat_map(|p| p.chart()).collect()
}

/// `½ cot` of the domain angle opposite each edge.
fn cotangent_weights(surface: &TriSurface, domain: &MetricField) -> Result<Vec<[f64; 3]>> {
    (0..surface.face_count())
        .map(|f| {
            let c = &domain.faces[f];
            let e = [0, 1, 2].map(|k| surface.edge_vector(f, k));
            let area2 = c.det().sqrt() * (e[0][0] * e[1][1] - e[0][1] * e[1][0]);
            if !(area2 > 0.0) {
                return Err(Error::DegenerateFace { face: f });
            }
            // Corner k+2 sees edge k between the vectors to corners k and k+1.
            Ok([0, 1, 2].map(|k| {
                let u = e[(k + 2) % 3].map(|v| -v);
                let v = e[(k + 1) % 3];
                0.5 * c.eval(u, v) / area2
            }))
        })
        .collect()
}

/// Sums per-face gradient contributions in face order so results do not depend on threads.
pub(crate) fn assemble(n: usize, surface: &TriSurface, parts: &[[([f64; 2], [f64; 2]); 3]]) -> Vec<f64> {
    let mut g = vec![0.0; 2 * n];
    for (f, part) in parts.iter().enumerate() {
        let c = &surface.faces[f];
        for (k, (gi, gj)) in part.iter().enumerate() {
            let (vi, vj) = (c[k].vertex, c[(k + 1) % 3].vertex);
            g[2 * vi] += gi[0];
            g[2 * vi + 1] += gi[1];
            g[2 * vj] += gj[0];
            g[2 * vj + 1] += gj[1];
        }
    }
    g
}

/// Discrete Dirichlet energy `¼ Σ cot θ · d²` of an equivariant map and its gradient.
pub fn dirichlet_energy(
    surface: &TriSurface,
    domain: &MetricField,
    rep: &SurfaceGroupRep,
    images: &[HypPoint],
) -> Result<(f64, Vec<f64>)> {
    let weights = cotangent_weights(surface, domain)?;
    let frames = EdgeFrames::new(surface, rep);
    Ok(energy_with(surface, &weights, &frames, images))
}

fn energy_with(
    surface: &TriSurface,
    weights: &[[f64; 3]],
    frames: &EdgeFrames,
    images: &[HypPoint],
) -> (f64, Vec<f64>) {
    let per_face: Vec<(f64, [([f64; 2], [f64; 2]); 3])> = (0..surface.face_count())
        .into_par_iter()
        .map(|f| {
            let mut e = 0.0;
            let part = [0, 1, 2].map(|k| {
                let (d, gi, gj) = frames.edge(surface, images, f, k);
                let w = 0.5 * weights[f][k];
                e += w * d * d;
                let s = 2.0 * w * d;
                (gi.map(|v| s * v), gj.map(|v| s * v))
            });
            (e, part)
        })
        .collect();
    let energy = per_face.iter().map(|p| p.0).sum();
    let parts: Vec<_> = per_face.into_iter().map(|p| p.1).collect();
    (energy, assemble(surface.vertex_count, surface, &parts))
}

/// Minimizes the Dirichlet energy over equivariant maps, starting from `init`.
pub fn harmonic_map_from(
    surface: &TriSurface,
    domain: &MetricField,
    rep: &SurfaceGroupRep,
    init: &[HypPoint],
    cfg: &SolverConfig,
) -> Result<DiscreteMap> {
    if !(rep.relator_residual < RELATOR_TOL) {
        return Err(Error::StructureMismatch(format!(
            "relator residual {:e} too large",
            rep.relator_residual
        )));
    }
    if domain.faces.len() != surface.face_count() || init.len() != surface.vertex_count {
        return Err(Error::StructureMismatch("field size differs from the surface".into()));
    }
    let weights = cotangent_weights(surface, domain)?;
    let frames = EdgeFrames::new(surface, rep);
    let m = minimize(
        |x| Ok(energy_with(surface, &weights, &frames, &images_from(x))),
        unknowns_from(init),
        cfg,
    )?;
    let monotone = m.is_monotone();
    assert!(monotone, "energy increased along the descent");
    Ok(DiscreteMap {
        images: images_from(&m.x),
        energy: m.value,
        grad_norm: m.grad_norm,
        iterations: m.iterations,
        monotone,
    })
}

/// The harmonic map, started from the identity layout of the octagon.
pub fn harmonic_map(
    surface: &TriSurface,
    domain: &MetricField,
    rep: &SurfaceGroupRep,
    cfg: &SolverConfig,
) -> Result<DiscreteMap> {
    harmonic_map_from(surface, domain, rep, &surface.positions, cfg)
}

/// Per-face pullback of the target metric, in chart coordinates.
pub fn pullback_metric(surface: &TriSurface, rep: &SurfaceGroupRep, images: &[HypPoint]) -> Result<Vec<TangentMetric>> {
    let frames = EdgeFrames::new(surface, rep);
    (0..surface.face_count())
        .map(|f| metric_from_lengths(surface, f, frames.lengths(surface, images, f)))
        .collect()
}

/// Traceless part of `g` relative to the conformal class of `c`, as `(E − G − 2iF)/4` in a
/// `c`-conformal frame.
pub fn hopf_from_metrics(c: &TangentMetric, g: &TangentMetric) -> Complex64 {
    let s = spd_sqrt(c).scale(c.det().powf(-0.25));
    let si = s.inverse().expect("square root of a definite metric");
    let gp = si * g.matrix() * si;
    Complex64::new(gp.a11 - gp.a22, -(gp.a12 + gp.a21)) * 0.25
}

/// Per-face Hopf differential of a map, read against the domain conformal structure.
pub fn hopf_of_map(
    surface: &TriSurface,
    domain: &MetricField,
    rep: &SurfaceGroupRep,
    map: &DiscreteMap,
) -> Result<Vec<Complex64>> {
    let g = pullback_metric(surface, rep, &map.images)?;
    Ok(domain.faces.iter().zip(&g).map(|(c, g)| hopf_from_metrics(c, g)).collect())
}
