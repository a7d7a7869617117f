//! Minimal Lagrangian maps between two structures on the octagon surface.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curvature::corner_angles;
use super::field::{metric_from_lengths, GeometryModel, MetricField, OperatorField};
use super::harmonic::{
    assemble, harmonic_map_from, hopf_from_metrics, images_from, pullback_metric, unknowns_from, DiscreteMap,
    EdgeFrames,
};
use super::optim::{minimize, SolverConfig};
use super::surface::TriSurface;
use crate::error::{Error, Result};
use crate::holonomy::{SurfaceGroupRep, RELATOR_TOL};
use crate::hyperbolic::HypPoint;
use crate::tensor::{operator_sqrt, OperatorSample, TangentMetric};

/// Area of a hyperbolic triangle with sides `[ℓ01, ℓ12, ℓ20]` and its derivative in each side.
pub fn hyperbolic_area_gradient(l: [f64; 3]) -> Option<(f64, [f64; 3])> {
    let t = corner_angles(l, GeometryModel::Hyperbolic)?;
    let area = std::f64::consts::PI - t.iter().sum::<f64>();
    // Edge k joins corners k and k+1 and faces corner k+2. `own[k]` is the derivative of the
    // angle at corner k+2 in its opposite side; a side moves an adjacent angle by
    // `−own · cos(third angle)`.
    let own = [0, 1, 2].map(|k| l[k].sinh() / (l[(k + 1) % 3].sinh() * l[(k + 2) % 3].sinh() * t[(k + 2) % 3].sin()));
    let grad = [0, 1, 2].map(|k| {
        // Corner k faces edge k+1, corner k+1 faces edge k+2.
        let dk = -own[(k + 1) % 3] * t[(k + 1) % 3].cos();
        let dk1 = -own[(k + 2) % 3] * t[k].cos();
        -(own[k] + dk + dk1)
    });
    Some((area, grad))
}

/// Area of a Euclidean triangle with sides `[ℓ01, ℓ12, ℓ20]` and its derivative in each side.
pub fn flat_area_gradient(l: [f64; 3]) -> Option<(f64, [f64; 3])> {
    let [a, b, c] = l.map(|x| x * x);
    let q = 2.0 * (a * b + b * c + c * a) - a * a - b * b - c * c;
    if !(q > 0.0) {
        return None;
    }
    let area = 0.25 * q.sqrt();
    let sq = [a, b, c];
    let grad = [0, 1, 2].map(|k| l[k] * (sq[(k + 1) % 3] + sq[(k + 2) % 3] - sq[k]) / (8.0 * area));
    Some((area, grad))
}

/// How the area of a graph face is measured from the edge lengths `ℓ` in `h` and `ℓ⋆` in
/// `m*h⋆`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphArea {
    /// Twice the hyperbolic area with sides `√((ℓ² + ℓ⋆²)/2)`. The identity is exactly
    /// critical between equal structures, but a face cannot count more than `2π`.
    Hyperbolic,
    /// Euclidean area with sides `√(ℓ² + ℓ⋆²)`: unbounded, suited to large deformations.
    Flat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalLagrangian {
    /// Images of the vertices in the second structure.
    pub map: DiscreteMap,
    /// Per-face `b` with `h(b·,b·) ∝ m*h⋆`, normalized to determinant one.
    pub b: OperatorField,
    /// Determinant of `b` before normalization: the local area ratio.
    pub raw_det: Vec<f64>,
    /// `h + m*h⋆`.
    pub center: MetricField,
    pub area_h: f64,
    pub area_star: f64,
    pub codazzi: f64,
}

impl MinimalLagrangian {
    pub fn max_det_error(&self) -> f64 {
        self.raw_det.iter().map(|d| (d - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn max_deviation_from_identity(&self) -> f64 {
        self.b.faces.iter().map(|b| b.max_abs_diff(&OperatorSample::IDENTITY)).fold(0.0, f64::max)
    }
}

fn check_reps(reps: &[&SurfaceGroupRep]) -> Result<()> {
    for r in reps {
        if !(r.relator_residual < RELATOR_TOL) {
            return Err(Error::StructureMismatch(format!("relator residual {:e}", r.relator_residual)));
        }
    }
    Ok(())
}

fn total_area(lengths: &[[f64; 3]]) -> Result<f64> {
    lengths
        .iter()
        .enumerate()
        .map(|(f, l)| hyperbolic_area_gradient(*l).map(|a| a.0).ok_or(Error::DegenerateFace { face: f }))
        .sum()
}

/// Minimizes the graph area of `m` from the identity layout for `h_rep` into `hstar_rep`.
///
/// The graph metric `h + m*h⋆` is measured as twice the area of the hyperbolic triangle with
/// edge lengths `√((ℓ² + ℓ⋆²)/2)`. When both structures agree this is critical exactly at the
/// identity, since the summed areas of the geodesic triangles of an equivariant map are fixed.
pub fn minimal_lagrangian(
    surface: &TriSurface,
    h_rep: &SurfaceGroupRep,
    hstar_rep: &SurfaceGroupRep,
    cfg: &SolverConfig,
) -> Result<MinimalLagrangian> {
    minimal_lagrangian_from(surface, h_rep, &surface.positions, hstar_rep, &surface.positions, GraphArea::Hyperbolic, cfg)
}

/// As [`minimal_lagrangian`], with the domain given by the equivariant layout `domain` for
/// `h_rep` and the search started at `init`.
pub fn minimal_lagrangian_from(
    surface: &TriSurface,
    h_rep: &SurfaceGroupRep,
    domain: &[HypPoint],
    hstar_rep: &SurfaceGroupRep,
    init: &[HypPoint],
    area: GraphArea,
    cfg: &SolverConfig,
) -> Result<MinimalLagrangian> {
    check_reps(&[h_rep, hstar_rep])?;
    if domain.len() != surface.vertex_count || init.len() != surface.vertex_count {
        return Err(Error::StructureMismatch("layout size differs from the surface".into()));
    }
    let base = EdgeFrames::new(surface, h_rep);
    let lf: Vec<[f64; 3]> = (0..surface.face_count()).map(|f| base.lengths(surface, domain, f)).collect();
    let star = EdgeFrames::new(surface, hstar_rep);

    let objective = |x: &[f64]| -> Result<(f64, Vec<f64>)> {
        let y = images_from(x);
        let per_face: Vec<Result<(f64, [([f64; 2], [f64; 2]); 3])>> = (0..surface.face_count())
            .into_par_iter()
            .map(|f| {
                let edges = [0, 1, 2].map(|k| star.edge(surface, &y, f, k));
                let lm = edges.map(|e| e.0);
                let (mix, weight) = match area {
                    GraphArea::Hyperbolic => (0.5, 2.0),
                    GraphArea::Flat => (1.0, 1.0),
                };
                let big = [0, 1, 2].map(|k| (mix * (lf[f][k].powi(2) + lm[k].powi(2))).sqrt());
                let (a, da) = match area {
                    GraphArea::Hyperbolic => hyperbolic_area_gradient(big),
                    GraphArea::Flat => flat_area_gradient(big),
                }
                .ok_or(Error::DegenerateFace { face: f })?;
                let part = [0, 1, 2].map(|k| {
                    let s = weight * da[k] * mix * lm[k] / big[k];
                    (edges[k].1.map(|v| s * v), edges[k].2.map(|v| s * v))
                });
                Ok((weight * a, part))
            })
            .collect();
        let per_face: Vec<_> = per_face.into_iter().collect::<Result<_>>()?;
        let value = per_face.iter().map(|p| p.0).sum();
        let parts: Vec<_> = per_face.into_iter().map(|p| p.1).collect();
        Ok((value, assemble(surface.vertex_count, surface, &parts)))
    };
    let m = minimize(objective, unknowns_from(init), cfg)?;
    assert!(m.is_monotone(), "graph area increased along the descent");
    let images = images_from(&m.x);
    let lm: Vec<[f64; 3]> = (0..surface.face_count()).map(|f| star.lengths(surface, &images, f)).collect();
    let map = DiscreteMap {
        images,
        energy: m.value,
        grad_norm: m.grad_norm,
        iterations: m.iterations,
        monotone: true,
    };

    let mut b = Vec::with_capacity(surface.face_count());
    let mut raw_det = Vec::with_capacity(surface.face_count());
    let mut center = Vec::with_capacity(surface.face_count());
    for f in 0..surface.face_count() {
        let gf = metric_from_lengths(surface, f, lf[f])?;
        let gm = metric_from_lengths(surface, f, lm[f])?;
        let r = operator_sqrt(&gf, &gm, true)?;
        b.push(r.op);
        raw_det.push(r.scale * r.scale);
        center.push(gf + gm);
    }
    let b = OperatorField { faces: b };
    Ok(MinimalLagrangian {
        map,
        codazzi: super::curvature::max_codazzi_residual(surface, &b),
        b,
        raw_det,
        center: MetricField { model: GeometryModel::Euclidean, faces: center },
        area_h: total_area(&lf)?,
        area_star: total_area(&lm)?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterIteration {
    pub maps: (DiscreteMap, DiscreteMap),
    /// Pullbacks `f*h` and `f⋆*h⋆` per face.
    pub pullbacks: (Vec<TangentMetric>, Vec<TangentMetric>),
    pub b: OperatorField,
    pub center: MetricField,
    /// `max |Φ(f) + Φ(f⋆)|` at the final conformal structure.
    pub hopf_residual: f64,
    pub rounds: usize,
}

/// Adjusts the domain conformal structure until the harmonic maps to both structures have
/// opposite Hopf differentials, then reads `b` off the two pullbacks.
pub fn center_iteration(
    surface: &TriSurface,
    h_rep: &SurfaceGroupRep,
    hstar_rep: &SurfaceGroupRep,
    tol: f64,
    max_rounds: usize,
    cfg: &SolverConfig,
) -> Result<CenterIteration> {
    check_reps(&[h_rep, hstar_rep])?;
    let mut c = MetricField::uniform(surface.face_count(), GeometryModel::Euclidean);
    let mut init: (Vec<HypPoint>, Vec<HypPoint>) = (surface.positions.clone(), surface.positions.clone());
    let mut mixer = Anderson::new(5);
    let mut last = f64::INFINITY;
    for round in 1..=max_rounds {
        let f = harmonic_map_from(surface, &c, h_rep, &init.0, cfg)?;
        let fs = harmonic_map_from(surface, &c, hstar_rep, &init.1, cfg)?;
        let g = pullback_metric(surface, h_rep, &f.images)?;
        let gs = pullback_metric(surface, hstar_rep, &fs.images)?;
        last = c
            .faces
            .iter()
            .zip(g.iter().zip(&gs))
            .map(|(c, (a, b))| (hopf_from_metrics(c, a) + hopf_from_metrics(c, b)).norm())
            .fold(0.0, f64::max);
        if last <= tol {
            let b = g
                .iter()
                .zip(&gs)
                .map(|(a, s)| operator_sqrt(a, s, true).map(|r| r.op))
                .collect::<Result<Vec<_>>>()?;
            return Ok(CenterIteration {
                maps: (f, fs),
                pullbacks: (g, gs),
                b: OperatorField { faces: b },
                center: c,
                hopf_residual: last,
                rounds: round,
            });
        }
        // The fixed-point map is c ↦ f*h + f⋆*h⋆; its output is normalized to unit area
        // per face, which leaves the conformal classes unchanged.
        let image: Vec<f64> = g
            .iter()
            .zip(&gs)
            .flat_map(|(a, b)| {
                let m = *a + *b;
                let m = m.scale(1.0 / m.det().sqrt());
                [m.g11, m.g12, m.g22]
            })
            .collect();
        let current: Vec<f64> = c
            .faces
            .iter()
            .flat_map(|m| {
                let m = m.scale(1.0 / m.det().sqrt());
                [m.g11, m.g12, m.g22]
            })
            .collect();
        let mixed = mixer.step(current, image.clone());
        let faces = match metrics_from(&mixed) {
            Some(v) => v,
            None => {
                mixer = Anderson::new(5);
                metrics_from(&image).ok_or(Error::SolverDiverged { iterations: round, grad_norm: last })?
            }
        };
        c = MetricField { model: GeometryModel::Euclidean, faces };
        init = (f.images, fs.images);
    }
    Err(Error::SolverDiverged { iterations: max_rounds, grad_norm: last })
}

fn metrics_from(x: &[f64]) -> Option<Vec<TangentMetric>> {
    x.chunks(3).map(|m| TangentMetric::new(m[0], m[1], m[2]).ok()).collect()
}

/// Anderson mixing for a fixed-point map `x ↦ T(x)`.
struct Anderson {
    depth: usize,
    /// Pairs `(T(xₖ), T(xₖ) − xₖ)`, oldest first.
    hist: Vec<(Vec<f64>, Vec<f64>)>,
}

impl Anderson {
    fn new(depth: usize) -> Self {
        Anderson { depth, hist: Vec::new() }
    }

    /// Records `x` and `T(x)` and returns the next iterate.
    fn step(&mut self, x: Vec<f64>, tx: Vec<f64>) -> Vec<f64> {
        let r: Vec<f64> = tx.iter().zip(&x).map(|(a, b)| a - b).collect();
        self.hist.push((tx.clone(), r.clone()));
        if self.hist.len() > self.depth + 1 {
            self.hist.remove(0);
        }
        let m = self.hist.len() - 1;
        if m == 0 {
            return tx;
        }
        let dr: Vec<Vec<f64>> = (0..m)
            .map(|i| self.hist[i + 1].1.iter().zip(&self.hist[i].1).map(|(a, b)| a - b).collect())
            .collect();
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let mut a = vec![vec![0.0; m]; m];
        let mut rhs = vec![0.0; m];
        for i in 0..m {
            for j in 0..m {
                a[i][j] = dot(&dr[i], &dr[j]);
            }
            rhs[i] = dot(&dr[i], &r);
        }
        let reg = 1e-10 * (0..m).map(|i| a[i][i]).fold(0.0, f64::max).max(1e-300);
        for (i, row) in a.iter_mut().enumerate() {
            row[i] += reg;
        }
        let Some(gamma) = solve_dense(a, rhs) else {
            self.hist.clear();
            return tx;
        };
        let mut out = tx;
        for (i, g) in gamma.iter().enumerate() {
            for (k, o) in out.iter_mut().enumerate() {
                *o -= g * (self.hist[i + 1].0[k] - self.hist[i].0[k]);
            }
        }
        out
    }
}

/// Gaussian elimination with partial pivoting for a small dense system.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Matrix of `b` in the `g`-orthonormal frame whose first vector follows edge 0 of face `f`.
pub fn canonical_frame_matrix(surface: &TriSurface, f: usize, g: &TangentMetric, b: &OperatorSample) -> [f64; 4] {
    let e = surface.edge_vector(f, 0);
    let n = g.norm_of(e);
    let e1 = [e[0] / n, e[1] / n];
    // g-orthogonal complement, oriented like the chart.
    let w = [-(g.g12 * e1[0] + g.g22 * e1[1]), g.g11 * e1[0] + g.g12 * e1[1]];
    let m = g.norm_of(w);
    let e2 = [w[0] / m, w[1] / m];
    let be1 = b.apply(e1);
    let be2 = b.apply(e2);
    [g.eval(e1, be1), g.eval(e1, be2), g.eval(e2, be1), g.eval(e2, be2)]
}

/// `sup |B₁ − B₂| / sup |B₁|` over faces, comparing `b` in the canonical frames of each path.
pub fn operator_disagreement(
    surface: &TriSurface,
    first: (&[TangentMetric], &OperatorField),
    second: (&[TangentMetric], &OperatorField),
) -> f64 {
    let (mut diff, mut size) = (0.0f64, 0.0f64);
    for f in 0..surface.face_count() {
        let a = canonical_frame_matrix(surface, f, &first.0[f], &first.1.faces[f]);
        let b = canonical_frame_matrix(surface, f, &second.0[f], &second.1.faces[f]);
        for i in 0..4 {
            diff = diff.max((a[i] - b[i]).abs());
            size = size.max(a[i].abs());
        }
    }
    diff / size
}
