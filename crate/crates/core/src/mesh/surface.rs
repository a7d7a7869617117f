use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holonomy::{Mobius, Octagon, SurfaceGroupRep};
use crate::hyperbolic::HypPoint;

/// Largest accepted subdivision level.
pub const MAX_LEVEL: usize = 6;

/// A face corner: vertex class and the group word carrying the class representative to
/// this corner's lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub vertex: usize,
    pub word: Vec<u8>,
}

/// The edge of `face` running from its corner `edge` to corner `edge + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaceEdge {
    pub face: usize,
    pub edge: usize,
}

/// Closed oriented triangulated surface with per-face flat charts.
///
/// Faces are counter-clockwise. `neighbors[f][k]` is the same edge seen from the other face,
/// traversed in the opposite direction, so corner `k` of `f` is corner `k'+1` of the partner.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriSurface {
    pub genus: usize,
    pub level: usize,
    pub vertex_count: usize,
    pub faces: Vec<[Corner; 3]>,
    pub neighbors: Vec<[FaceEdge; 3]>,
    /// Corner coordinates of each face in its own chart.
    pub charts: Vec<[[f64; 2]; 3]>,
    /// Angle of the rotation taking the partner chart to this chart across each edge.
    pub transitions: Vec<[f64; 3]>,
    /// Representative lift of each vertex class (empty for surfaces without a hyperbolic model).
    pub positions: Vec<HypPoint>,
    /// Whether a vertex class meets the boundary of the fundamental domain.
    pub on_boundary: Vec<bool>,
}

impl TriSurface {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        3 * self.faces.len() / 2
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn face_vertices(&self, f: usize) -> [usize; 3] {
        let c = &self.faces[f];
        [c[0].vertex, c[1].vertex, c[2].vertex]
    }

    /// Edge vector of edge `k` of face `f` in that face's chart.
    pub fn edge_vector(&self, f: usize, k: usize) -> [f64; 2] {
        let u = &self.charts[f];
        let (p, q) = (u[k], u[(k + 1) % 3]);
        [q[0] - p[0], q[1] - p[1]]
    }

    /// Lift of corner `k` of face `f` under a representation.
    pub fn corner_lift(&self, rep: &SurfaceGroupRep, f: usize, k: usize, images: &[HypPoint]) -> HypPoint {
        let c = &self.faces[f][k];
        rep.eval_letters(&c.word).act(&images[c.vertex])
    }

    /// Checks closedness, orientation consistency of the adjacency and the Euler characteristic.
    pub fn validate(&self) -> Result<()> {
        for (f, nb) in self.neighbors.iter().enumerate() {
            for (k, fe) in nb.iter().enumerate() {
                let back = self.neighbors[fe.face][fe.edge];
                if back != (FaceEdge { face: f, edge: k }) {
                    return Err(Error::StructureMismatch(format!("edge {k} of face {f} is not paired")));
                }
                let [a, b] = [self.faces[f][k].vertex, self.faces[f][(k + 1) % 3].vertex];
                let g = &self.faces[fe.face];
                let [c, d] = [g[fe.edge].vertex, g[(fe.edge + 1) % 3].vertex];
                if a != d || b != c {
                    return Err(Error::StructureMismatch(format!("edge {k} of face {f} is glued with a flip")));
                }
            }
        }
        let chi = 2 - 2 * self.genus as i64;
        if self.euler_characteristic() != chi {
            return Err(Error::StructureMismatch(format!(
                "Euler characteristic {} does not match genus {}",
                self.euler_characteristic(),
                self.genus
            )));
        }
        Ok(())
    }

    /// Flat layout of a triangle with the given side lengths `[ℓ01, ℓ12, ℓ20]`.
    pub fn layout(lengths: [f64; 3]) -> [[f64; 2]; 3] {
        let [a, b, c] = lengths;
        let cos0 = ((a * a + c * c - b * b) / (2.0 * a * c)).clamp(-1.0, 1.0);
        let sin0 = (1.0 - cos0 * cos0).sqrt();
        [[0.0, 0.0], [a, 0.0], [c * cos0, c * sin0]]
    }

    fn compute_transitions(&mut self) {
        self.transitions = (0..self.faces.len())
            .map(|f| {
                let mut t = [0.0; 3];
                for (k, tk) in t.iter_mut().enumerate() {
                    let fe = self.neighbors[f][k];
                    let e = self.edge_vector(f, k);
                    let g = self.edge_vector(fe.face, fe.edge);
                    let ang = (-e[1]).atan2(-e[0]) - g[1].atan2(g[0]);
                    *tk = wrap_angle(ang);
                }
                t
            })
            .collect();
    }

    /// Equilateral triangulation of a flat torus with `n × n` quads (fixture for flat models).
    pub fn flat_torus(n: usize) -> Result<TriSurface> {
        if n < 3 {
            return Err(Error::OutOfRange { what: "torus grid size", value: n as f64 });
        }
        let id = |i: usize, j: usize| (i % n) * n + (j % n);
        let mut faces = Vec::with_capacity(2 * n * n);
        for i in 0..n {
            for j in 0..n {
                faces.push([id(i, j), id(i + 1, j), id(i, j + 1)]);
                faces.push([id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
            }
        }
        let charts = vec![TriSurface::layout([1.0; 3]); faces.len()];
        from_combinatorics(1, 0, n * n, &faces, charts, Vec::new(), vec![false; n * n])
    }
}

pub(crate) fn wrap_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    } else if a <= -PI {
        a += 2.0 * PI;
    }
    a
}

fn from_combinatorics(
    genus: usize,
    level: usize,
    vertex_count: usize,
    faces: &[[usize; 3]],
    charts: Vec<[[f64; 2]; 3]>,
    positions: Vec<HypPoint>,
    on_boundary: Vec<bool>,
) -> Result<TriSurface> {
    let mut by_edge = HashMap::new();
    for (f, t) in faces.iter().enumerate() {
        for k in 0..3 {
            if by_edge.insert((t[k], t[(k + 1) % 3]), FaceEdge { face: f, edge: k }).is_some() {
                return Err(Error::StructureMismatch("repeated oriented edge".into()));
            }
        }
    }
    let neighbors = faces
        .iter()
        .map(|t| {
            let mut nb = [FaceEdge { face: 0, edge: 0 }; 3];
            for k in 0..3 {
                nb[k] = *by_edge
                    .get(&(t[(k + 1) % 3], t[k]))
                    .ok_or_else(|| Error::StructureMismatch("surface has a boundary".into()))?;
            }
            Ok(nb)
        })
        .collect::<Result<Vec<_>>>()?;
    let corners = faces
        .iter()
        .map(|t| t.map(|v| Corner { vertex: v, word: Vec::new() }))
        .collect();
    let mut s = TriSurface {
        genus,
        level,
        vertex_count,
        faces: corners,
        neighbors,
        charts,
        transitions: Vec::new(),
        positions,
        on_boundary,
    };
    s.compute_transitions();
    s.validate()?;
    Ok(s)
}

/// Union-find over lifts, remembering the group word relating each lift to its parent.
struct LiftClasses {
    parent: Vec<usize>,
    rel: Vec<Vec<u8>>,
}

fn reduce(word: Vec<u8>) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn invert(word: &[u8]) -> Vec<u8> {
    word.iter().rev().map(|l| l ^ 1).collect()
}

impl LiftClasses {
    fn new(n: usize) -> Self {
        LiftClasses { parent: (0..n).collect(), rel: vec![Vec::new(); n] }
    }

    /// Root and word `w` with `lift(p) = ρ(w) · lift(root)`.
    fn find(&mut self, p: usize) -> (usize, Vec<u8>) {
        if self.parent[p] == p {
            return (p, Vec::new());
        }
        let (root, w_parent) = self.find(self.parent[p]);
        let w = reduce([self.rel[p].clone(), w_parent].concat());
        self.parent[p] = root;
        self.rel[p] = w.clone();
        (root, w)
    }

    /// Records `lift(p) = ρ(w) · lift(q)`.
    fn union(&mut self, p: usize, q: usize, w: &[u8]) {
        let (rp, wp) = self.find(p);
        let (rq, wq) = self.find(q);
        if rp == rq {
            return;
        }
        self.parent[rp] = rq;
        self.rel[rp] = reduce([invert(&wp), w.to_vec(), wq].concat());
    }
}

/// Generator letters and the sides they pair: the letter carries side `.1` onto side `.2`.
const PAIRINGS: [(u8, usize, usize); 4] = [(0, 2, 0), (2, 1, 3), (4, 6, 4), (6, 5, 7)];

/// The regular octagon surface, subdivided `level` times into four by geodesic midpoints.
///
/// Returns the surface and the exact hyperbolic metric, which is the identity in every
/// face chart because charts are laid out from the exact geodesic edge lengths.
pub fn build_octagon_surface(level: usize) -> Result<(TriSurface, super::MetricField)> {
    if level > MAX_LEVEL {
        return Err(Error::OutOfRange { what: "subdivision level", value: level as f64 });
    }
    let oct = Octagon::regular();
    let rep = SurfaceGroupRep::octagon();

    // Points of the closed octagon, with a bitmask of the sides each lies on.
    let mut pts = vec![HypPoint::ORIGIN];
    let mut sides: Vec<u8> = vec![0];
    for k in 0..8 {
        pts.push(oct.vertex_map(k).act(&HypPoint::ORIGIN));
        sides.push((1u8 << k) | (1u8 << ((k + 1) % 8)));
    }
    let mut tris: Vec<[usize; 3]> = (0..8).map(|k| [0, 1 + (k + 7) % 8, 1 + k]).collect();
    if orientation(&pts, tris[0]) < 0.0 {
        for t in tris.iter_mut() {
            t.swap(1, 2);
        }
    }

    for _ in 0..level {
        let mut mids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, pts: &mut Vec<HypPoint>, sides: &mut Vec<u8>| {
            let key = (a.min(b), a.max(b));
            *mids.entry(key).or_insert_with(|| {
                pts.push(pts[a].midpoint(&pts[b]));
                sides.push(sides[a] & sides[b]);
                pts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(4 * tris.len());
        for &[a, b, c] in &tris {
            let ab = mid(a, b, &mut pts, &mut sides);
            let bc = mid(b, c, &mut pts, &mut sides);
            let ca = mid(c, a, &mut pts, &mut sides);
            next.push([a, ab, ca]);
            next.push([ab, b, bc]);
            next.push([ca, bc, c]);
            next.push([ab, bc, ca]);
        }
        tris = next;
    }

    // Identify points on paired sides.
    let mut classes = LiftClasses::new(pts.len());
    let mut partner: HashMap<(usize, usize), usize> = HashMap::new();
    for &(letter, from, to) in &PAIRINGS {
        let g = rep.letter_index(letter);
        let on_to: Vec<usize> = (0..pts.len()).filter(|&i| sides[i] & (1 << to) != 0).collect();
        for p in (0..pts.len()).filter(|&i| sides[i] & (1 << from) != 0) {
            let img = g.act(&pts[p]);
            let q = *on_to
                .iter()
                .min_by(|&&x, &&y| pts[x].distance(&img).total_cmp(&pts[y].distance(&img)))
                .expect("paired side has points");
            if pts[q].distance(&img) > 1e-8 {
                return Err(Error::StructureMismatch(format!("side {from} point {p} has no partner")));
            }
            // lift(q) = g · lift(p), so lift(p) = g⁻¹ · lift(q).
            classes.union(p, q, &[letter ^ 1]);
            partner.insert((p, from), q);
            partner.insert((q, to), p);
        }
    }

    let mut class_of = vec![usize::MAX; pts.len()];
    let mut positions = Vec::new();
    let mut on_boundary = Vec::new();
    let mut words = Vec::with_capacity(pts.len());
    for p in 0..pts.len() {
        let (root, w) = classes.find(p);
        if class_of[root] == usize::MAX {
            class_of[root] = positions.len();
            positions.push(pts[root]);
            on_boundary.push(sides[root] != 0);
        }
        words.push(w);
    }
    for p in 0..pts.len() {
        let v = class_of[classes.find(p).0];
        let lifted = rep.eval_letters(&words[p]).act(&positions[v]);
        if lifted.distance(&pts[p]) > 1e-8 {
            return Err(Error::StructureMismatch(format!("lift word of point {p} is inconsistent")));
        }
    }

    let faces_by_class: Vec<[usize; 3]> =
        tris.iter().map(|t| t.map(|p| class_of[classes.find(p).0])).collect();
    let charts = tris
        .iter()
        .map(|&[a, b, c]| TriSurface::layout([pts[a].distance(&pts[b]), pts[b].distance(&pts[c]), pts[c].distance(&pts[a])]))
        .collect();

    // Adjacency inside the octagon, then across paired sides.
    let mut by_edge: HashMap<(usize, usize), FaceEdge> = HashMap::new();
    for (f, t) in tris.iter().enumerate() {
        for k in 0..3 {
            by_edge.insert((t[k], t[(k + 1) % 3]), FaceEdge { face: f, edge: k });
        }
    }
    let mut neighbors = Vec::with_capacity(tris.len());
    for t in &tris {
        let mut nb = [FaceEdge { face: 0, edge: 0 }; 3];
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            nb[k] = match by_edge.get(&(b, a)) {
                Some(fe) => *fe,
                None => {
                    let side = (0..8)
                        .find(|&s| sides[a] & sides[b] & (1 << s) != 0)
                        .ok_or_else(|| Error::StructureMismatch("open interior edge".into()))?;
                    let (pa, pb) = (partner[&(a, side)], partner[&(b, side)]);
                    *by_edge
                        .get(&(pb, pa))
                        .ok_or_else(|| Error::StructureMismatch("paired edge not found".into()))?
                }
            };
        }
        neighbors.push(nb);
    }

    let faces = tris
        .iter()
        .zip(&faces_by_class)
        .map(|(t, cl)| {
            [0, 1, 2].map(|k| Corner { vertex: cl[k], word: words[t[k]].clone() })
        })
        .collect();
    let mut s = TriSurface {
        genus: 2,
        level,
        vertex_count: positions.len(),
        faces,
        neighbors,
        charts,
        transitions: Vec::new(),
        positions,
        on_boundary,
    };
    s.compute_transitions();
    s.validate()?;
    let metric = super::MetricField::uniform(s.face_count(), super::GeometryModel::Hyperbolic);
    Ok((s, metric))
}

fn orientation(pts: &[HypPoint], t: [usize; 3]) -> f64 {
    let [a, b, c] = t.map(|i| pts[i].chart());
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Reference lifts of the three corners of every face, in the octagon.
pub fn reference_lifts(surface: &TriSurface, rep: &SurfaceGroupRep) -> Vec<[HypPoint; 3]> {
    (0..surface.face_count())
        .map(|f| [0, 1, 2].map(|k| surface.corner_lift(rep, f, k, &surface.positions)))
        .collect()
}

/// The group element relating corner lifts: `lift(f,k) = ρ(w_k) X`, returned as `ρ(w_i)⁻¹ ρ(w_j)`.
pub fn relative_element(rep: &SurfaceGroupRep, a: &Corner, b: &Corner) -> Mobius {
    rep.eval_letters(&a.word).inverse() * rep.eval_letters(&b.word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_per_level() {
        for level in 0..=3 {
            let (s, _) = build_octagon_surface(level).unwrap();
            let pow = 4usize.pow(level as u32);
            assert_eq!(s.face_count(), 8 * pow);
            assert_eq!(s.vertex_count, 4 * pow - 2);
            assert_eq!(s.euler_characteristic(), -2);
        }
        assert!(build_octagon_surface(7).is_err());
    }

    #[test]
    fn charts_are_counter_clockwise() {
        let (s, _) = build_octagon_surface(2).unwrap();
        for c in &s.charts {
            assert_eq!(c[1][1], 0.0);
            assert!(c[2][1] > 0.0);
        }
    }

    #[test]
    fn flat_torus_is_closed() {
        let t = TriSurface::flat_torus(4).unwrap();
        assert_eq!(t.euler_characteristic(), 0);
        for tr in &t.transitions {
            for a in tr {
                let k = (a / (PI / 3.0)).round();
                assert!((a - k * PI / 3.0).abs() < 1e-12);
            }
        }
    }
}
