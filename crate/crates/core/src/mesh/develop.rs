//! Developing a mesh with prescribed edge lengths into the hyperbolic plane.

use std::collections::VecDeque;

use super::curvature::corner_angles;
use super::field::GeometryModel;
use super::harmonic::DiscreteMap;
use super::surface::{FaceEdge, TriSurface};
use crate::error::{Error, Result};
use crate::holonomy::{Mobius, SurfaceGroupRep};
use crate::hyperbolic::HypPoint;

/// Turns the chart by `phi` counterclockwise about the base point.
fn turn(phi: f64) -> Mobius {
    Mobius::rotation(-phi)
}

/// The isometry taking the base point to `a` and the positive first axis towards `b`.
pub fn frame(a: &HypPoint, b: &HypPoint) -> Mobius {
    let d = a.distance(&HypPoint::ORIGIN);
    let phi = a.x2.atan2(a.x1);
    let m = turn(phi) * Mobius::translation(d);
    let local = m.inverse().act(b);
    m * turn(local.x2.atan2(local.x1))
}

/// Corners of a hyperbolic triangle with sides `[ℓ01, ℓ12, ℓ20]`: corner 0 at the base
/// point, corner 1 on the positive first axis, corner 2 counterclockwise.
fn standard_triangle(l: [f64; 3], f: usize) -> Result<[HypPoint; 3]> {
    let t = corner_angles(l, GeometryModel::Hyperbolic).ok_or(Error::DegenerateFace { face: f })?;
    Ok([HypPoint::ORIGIN, HypPoint::polar(0.0, l[0]), HypPoint::polar(t[0], l[2])])
}

fn reduce(word: &mut Vec<u8>) {
    let mut out: Vec<u8> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    *word = out;
}

/// The deck element carrying the reference lift of the neighbour across edge `k` of `f` to
/// the lift adjacent to the reference lift of `f`, as a reduced word.
///
/// Either shared corner determines it; their words can differ by a relator, so the shorter
/// reduced form is returned.
pub fn crossing_word(surface: &TriSurface, f: usize, k: usize) -> Vec<u8> {
    let FaceEdge { face: g, edge: kg } = surface.neighbors[f][k];
    let via = |here: &[u8], there: &[u8]| {
        let mut w = here.to_vec();
        w.extend(there.iter().rev().map(|l| l ^ 1));
        reduce(&mut w);
        w
    };
    let a = via(&surface.faces[f][k].word, &surface.faces[g][(kg + 1) % 3].word);
    let b = via(&surface.faces[f][(k + 1) % 3].word, &surface.faces[g][kg].word);
    if b.len() < a.len() {
        b
    } else {
        a
    }
}

/// Lays the faces of the fundamental domain out face by face and reads the generator
/// holonomy off the edges on the sides of the octagon.
///
/// Faces are glued along interior edges only, so the layout is a single immersed disc.
/// Where several edges realize the same generator, the one in the middle of its side is used.
pub fn developed_holonomy(surface: &TriSurface, lengths: &[[f64; 3]]) -> Result<SurfaceGroupRep> {
    let n = surface.face_count();
    let standard: Vec<[HypPoint; 3]> = (0..n).map(|f| standard_triangle(lengths[f], f)).collect::<Result<_>>()?;
    let mut placed: Vec<Option<Mobius>> = vec![None; n];
    placed[0] = Some(Mobius::IDENTITY);
    let mut queue = VecDeque::from([0usize]);

    // Isometry placing the neighbour across edge k of f so the shared edge matches.
    let glue = |f: usize, t: &Mobius, k: usize| -> Mobius {
        let FaceEdge { face: g, edge: kg } = surface.neighbors[f][k];
        let q0 = t.act(&standard[f][k]);
        let q1 = t.act(&standard[f][(k + 1) % 3]);
        let s = &standard[g];
        frame(&q1, &q0) * frame(&s[kg], &s[(kg + 1) % 3]).inverse()
    };

    while let Some(f) = queue.pop_front() {
        let t = placed[f].expect("queued faces are placed");
        for k in 0..3 {
            let g = surface.neighbors[f][k].face;
            if placed[g].is_none() && crossing_word(surface, f, k).is_empty() {
                placed[g] = Some(glue(f, &t, k));
                queue.push_back(g);
            }
        }
    }
    if placed.iter().any(|p| p.is_none()) {
        return Err(Error::StructureMismatch("fundamental domain is not connected".into()));
    }

    // Candidates per letter: (angular position of the edge in the octagon, holonomy).
    let mut found: Vec<Vec<(f64, Mobius)>> = vec![Vec::new(); 8];
    for f in 0..n {
        for k in 0..3 {
            let w = crossing_word(surface, f, k);
            if w.len() != 1 {
                continue;
            }
            let g = surface.neighbors[f][k].face;
            let t = placed[f].expect("all faces placed");
            let across = glue(f, &t, k);
            let hol = across * placed[g].expect("all faces placed").inverse();
            let (p, q) = (surface.faces[f][k].vertex, surface.faces[f][(k + 1) % 3].vertex);
            let a = surface.positions[p];
            let b = surface.positions[q];
            let m = HypPoint { x0: a.x0 + b.x0, x1: a.x1 + b.x1, x2: a.x2 + b.x2 };
            found[w[0] as usize].push((m.x2.atan2(m.x1), hol));
        }
    }
    let mut gens = [Mobius::IDENTITY; 4];
    for (i, gen) in gens.iter_mut().enumerate() {
        let pick = |l: usize| -> Option<Mobius> {
            let mut c = found[l].clone();
            if c.is_empty() {
                return None;
            }
            c.sort_by(|x, y| x.0.total_cmp(&y.0));
            Some(c[c.len() / 2].1)
        };
        *gen = match (pick(2 * i), pick(2 * i + 1)) {
            (Some(m), _) => m,
            (None, Some(m)) => m.inverse(),
            (None, None) => return Err(Error::StructureMismatch(format!("no edge realizes generator {i}"))),
        };
    }
    Ok(SurfaceGroupRep::new(gens))
}

/// `θ` times the length of the geodesic arc, relative to its endpoints, homotopic to the image
/// of a path of directed mesh edges under `map` into the structure of `rep`.
pub fn rescaled_pullback_length(
    surface: &TriSurface,
    rep: &SurfaceGroupRep,
    map: &DiscreteMap,
    theta: f64,
    arc: &[FaceEdge],
) -> Result<f64> {
    let Some(first) = arc.first() else {
        return Ok(0.0);
    };
    let start = surface.faces[first.face][first.edge].vertex;
    let mut vertex = start;
    let mut g = Mobius::IDENTITY;
    for e in arc {
        let c = &surface.faces[e.face];
        if c[e.edge].vertex != vertex {
            return Err(Error::StructureMismatch("arc edges are not consecutive".into()));
        }
        let next = &c[(e.edge + 1) % 3];
        g = g * super::surface::relative_element(rep, &c[e.edge], next);
        vertex = next.vertex;
    }
    let d = map.images[start].distance(&g.act(&map.images[vertex]));
    Ok(theta * d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holonomy::CurveClass;
    use crate::mesh::build_octagon_surface;

    #[test]
    fn turn_and_frame_conventions() {
        let p = turn(0.7).act(&HypPoint::polar(0.2, 1.5));
        let q = HypPoint::polar(0.9, 1.5);
        assert!(p.distance(&q) < 1e-13);
        let a = HypPoint::polar(2.0, 0.8);
        let b = HypPoint::polar(-0.5, 1.3);
        let m = frame(&a, &b);
        assert!(m.act(&HypPoint::ORIGIN).distance(&a) < 1e-13);
        let d = a.distance(&b);
        assert!(m.act(&HypPoint::polar(0.0, d)).distance(&b) < 1e-12);
    }

    #[test]
    fn exact_lengths_recover_the_octagon_lengths() {
        let rep = SurfaceGroupRep::octagon();
        for level in 0..=2 {
            let (s, h) = build_octagon_surface(level).unwrap();
            let hol = developed_holonomy(&s, &h.edge_lengths(&s)).unwrap();
            assert!(hol.relator_residual < 1e-9, "level {level}: {:e}", hol.relator_residual);
            for w in ["a", "b", "c", "d", "ab", "abAB", "aC", "bd"] {
                let c = CurveClass::parse(w).unwrap();
                assert!((hol.length_of(&c) - rep.length_of(&c)).abs() < 1e-9, "level {level} {w}");
            }
        }
    }

    #[test]
    fn crossing_words_are_generators_or_empty() {
        let (s, _) = build_octagon_surface(1).unwrap();
        for f in 0..s.face_count() {
            for k in 0..3 {
                let w = crossing_word(&s, f, k);
                assert!(w.len() <= 1, "face {f} edge {k}: {w:?}");
                if !w.is_empty() {
                    assert!(s.on_boundary[s.faces[f][k].vertex] && s.on_boundary[s.faces[f][(k + 1) % 3].vertex]);
                }
            }
        }
    }

    #[test]
    fn pullback_length_of_trivial_arcs() {
        let (s, _) = build_octagon_surface(1).unwrap();
        let rep = SurfaceGroupRep::octagon();
        let map = DiscreteMap { images: s.positions.clone(), energy: 0.0, grad_norm: 0.0, iterations: 0, monotone: true };
        let e = FaceEdge { face: 0, edge: 0 };
        let l = rescaled_pullback_length(&s, &rep, &map, 1.0, &[e]).unwrap();
        let h = crate::mesh::MetricField::uniform(s.face_count(), GeometryModel::Hyperbolic);
        assert!((l - h.edge_lengths(&s)[0][0]).abs() < 1e-12);
        assert_eq!(rescaled_pullback_length(&s, &rep, &map, 0.0, &[e]).unwrap(), 0.0);
        assert_eq!(rescaled_pullback_length(&s, &rep, &map, 2.0, &[]).unwrap(), 0.0);
    }
}
