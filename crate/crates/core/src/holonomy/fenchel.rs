use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::mobius::{translation_length, Mobius};
use super::words::CurveClass;
use crate::error::{Error, Result};

/// Residual above which a constructed representation is rejected.
pub const RELATOR_TOL: f64 = 1e-9;

/// Fenchel–Nielsen coordinates for the fixed genus-2 pants decomposition.
///
/// The three pants curves are `a₁`, `a₂` and the separating curve `[a₁, b₁]` (indices
/// 1, 2, 3). Twists are measured in length units: adding `ℓᵢ` to `τᵢ` is a full Dehn twist.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FNCoords {
    pub lengths: [f64; 3],
    pub twists: [f64; 3],
}

/// Words of the pants curves, in index order.
pub const PANTS_CURVES: [&str; 3] = ["a", "c", "abAB"];
/// Two curves meeting the first two pants curves once each.
pub const TRANSVERSE_CURVES: [&str; 2] = ["b", "d"];

impl FNCoords {
    pub fn new(lengths: [f64; 3], twists: [f64; 3]) -> Result<Self> {
        for &l in &lengths {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::OutOfRange { what: "pants curve length", value: l });
            }
        }
        Ok(FNCoords { lengths, twists })
    }

    /// Coordinates of the surface glued from the regular octagon with angles π/4.
    pub fn octagon() -> Self {
        rep_to_fn(&SurfaceGroupRep::octagon()).expect("octagon group is hyperbolic")
    }
}

/// Images of `a₁, b₁, a₂, b₂` with `[a₁,b₁][a₂,b₂] = E`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGroupRep {
    pub gens: [Mobius; 4],
    pub relator_residual: f64,
}

impl SurfaceGroupRep {
    pub fn new(gens: [Mobius; 4]) -> Self {
        let mut rep = SurfaceGroupRep { gens, relator_residual: 0.0 };
        rep.relator_residual = rep.relator().distance_to_identity();
        rep
    }

    pub fn relator(&self) -> Mobius {
        let [a1, b1, a2, b2] = self.gens;
        Mobius::commutator(&a1, &b1) * Mobius::commutator(&a2, &b2)
    }

    /// Image of a word over `a b c d` (generators) and `A B C D` (inverses).
    pub fn eval_word(&self, word: &str) -> Result<Mobius> {
        let mut m = Mobius::IDENTITY;
        for ch in word.chars() {
            m = m * self.letter(ch)?;
        }
        Ok(m)
    }

    pub fn eval_letters(&self, letters: &[u8]) -> Mobius {
        letters.iter().fold(Mobius::IDENTITY, |m, &l| m * self.letter_index(l))
    }

    /// Letter index `0..8` in the order `a A b B c C d D`.
    pub fn letter_index(&self, l: u8) -> Mobius {
        let g = self.gens[(l / 2) as usize];
        if l % 2 == 0 {
            g
        } else {
            g.inverse()
        }
    }

    fn letter(&self, ch: char) -> Result<Mobius> {
        let l = super::words::letter_of(ch)
            .ok_or_else(|| Error::Format(format!("unknown generator letter {ch:?}")))?;
        Ok(self.letter_index(l))
    }

    pub fn length_of(&self, curve: &CurveClass) -> f64 {
        translation_length(&self.eval_letters(curve.letters()))
    }

    pub fn conjugate_by(&self, g: &Mobius) -> SurfaceGroupRep {
        SurfaceGroupRep::new(self.gens.map(|m| m.conjugate_by(g)))
    }

    /// Holonomy of the regular octagon with angles π/4 and side pairing
    /// `a₁ b₁ a₁⁻¹ b₁⁻¹ a₂ b₂ a₂⁻¹ b₂⁻¹`.
    pub fn octagon() -> Self {
        let o = Octagon::regular();
        SurfaceGroupRep::new([o.pairing(0, 2), o.pairing(3, 1), o.pairing(4, 6), o.pairing(7, 5)])
    }
}

/// The regular hyperbolic octagon with interior angles π/4, centred at `i`.
#[derive(Clone, Copy, Debug)]
pub struct Octagon {
    /// Distance from the centre to a side midpoint.
    pub inradius: f64,
    /// Distance from the centre to a vertex.
    pub circumradius: f64,
}

impl Octagon {
    pub fn regular() -> Self {
        let cot = 1.0 / (PI / 8.0).tan();
        Octagon { inradius: cot.acosh(), circumradius: (cot * cot).acosh() }
    }

    pub fn side_length(&self) -> f64 {
        2.0 * (self.circumradius.sinh() * (PI / 8.0).sin()).asinh()
    }

    /// Direction from the centre to the midpoint of side `k`.
    pub fn midpoint_direction(k: usize) -> f64 {
        (k % 8) as f64 * PI / 4.0
    }

    /// Isometry taking the base point to vertex `k` (the vertex between sides `k` and `k+1`).
    pub fn vertex_map(&self, k: usize) -> Mobius {
        let phi = Self::midpoint_direction(k) + PI / 8.0;
        Mobius::rotation(phi) * Mobius::translation(self.circumradius)
    }

    /// The element carrying side `j` onto side `i` with the octagon landing across side `i`.
    pub fn pairing(&self, i: usize, j: usize) -> Mobius {
        let psi_i = Self::midpoint_direction(i);
        let psi_opp = Self::midpoint_direction(i + 4);
        Mobius::along(psi_i, 2.0 * self.inradius)
            * Mobius::rotation(psi_opp - Self::midpoint_direction(j))
    }
}

fn diagonalizer(m: &Mobius) -> Result<Mobius> {
    m.diagonalizer()
        .ok_or_else(|| Error::StructureMismatch(format!("trace {} is not hyperbolic", m.trace())))
}

/// A one-holed torus `(A, B)` with `A` on the imaginary axis, boundary `[A,B]` of length
/// `boundary` and twist `twist` along `A`.
fn one_holed_torus(length: f64, boundary: f64, twist: f64) -> (Mobius, Mobius) {
    let lam = (0.5 * length).exp();
    let x = lam + 1.0 / lam;
    let kappa = -2.0 * (0.5 * boundary).cosh();
    let p = ((x * x - 2.0 - kappa) / (x * x - 4.0)).sqrt();
    let q = (p * p - 1.0).sqrt();
    let a = Mobius::translation(length);
    let b = Mobius::new(p, q, q, p) * Mobius::translation(twist);
    (a, b)
}

/// Signed position of the axis of `a` along the axis of `c` (both hyperbolic).
fn foot_along(c_diag: &Mobius, a: &Mobius) -> Result<f64> {
    let m = a.conjugate_by(c_diag);
    let (va, vr) = m
        .eigenvectors()
        .ok_or_else(|| Error::StructureMismatch("curve is not hyperbolic".into()))?;
    Ok(0.5 * ((va[0] / va[1]) * (vr[0] / vr[1])).abs().ln())
}

/// Glues two one-holed tori along their boundary.
///
/// Both tori are moved so that the common boundary lies on the imaginary axis, which keeps
/// entries moderate when the pants curves are short.
pub fn fn_to_rep(coords: &FNCoords) -> Result<SurfaceGroupRep> {
    let FNCoords { lengths: [l1, l2, lc], twists: [t1, t2, tc] } = *coords;
    FNCoords::new(coords.lengths, coords.twists)?;

    let (a1, b1) = one_holed_torus(l1, lc, t1);
    let s1 = diagonalizer(&Mobius::commutator(&a1, &b1))?;
    let (a1, b1) = (a1.conjugate_by(&s1), b1.conjugate_by(&s1));
    let shift1 = Mobius::translation(-foot_along(&Mobius::IDENTITY, &a1)?);
    let (a1, b1) = (a1.conjugate_by(&shift1), b1.conjugate_by(&shift1));

    // The half-turn about i inverts the diagonal boundary element.
    let (a2, b2) = one_holed_torus(l2, lc, t2);
    let s2 = Mobius::new(0.0, 1.0, -1.0, 0.0) * diagonalizer(&Mobius::commutator(&a2, &b2))?;
    let (a2, b2) = (a2.conjugate_by(&s2), b2.conjugate_by(&s2));
    let shift2 = Mobius::translation(tc - foot_along(&Mobius::IDENTITY, &a2)?);
    let (a2, b2) = (a2.conjugate_by(&shift2), b2.conjugate_by(&shift2));

    let rep = SurfaceGroupRep::new([a1, b1, a2, b2]);
    // Rounding in the relator grows with the square of the entry size, which is unbounded
    // as a pants curve is pinched.
    let scale = rep.gens.iter().map(Mobius::max_abs).fold(1.0, f64::max);
    if !(rep.relator_residual <= RELATOR_TOL * (scale / 100.0).max(1.0).powi(2)) {
        return Err(Error::ConstructionFailed { residual: rep.relator_residual });
    }
    Ok(rep)
}

/// Reads Fenchel–Nielsen coordinates off a representation with the standard marking.
pub fn rep_to_fn(rep: &SurfaceGroupRep) -> Result<FNCoords> {
    let [a1, b1, a2, b2] = rep.gens;
    let c = Mobius::commutator(&a1, &b1);
    let mut twists = [0.0; 3];
    for (k, (a, b)) in [(a1, b1), (a2, b2)].iter().enumerate() {
        let s = diagonalizer(a)?;
        let bb = b.conjugate_by(&s);
        twists[k] = (bb.a / bb.d).abs().ln();
    }
    let sc = diagonalizer(&c)?;
    twists[2] = foot_along(&sc, &a2)? - foot_along(&sc, &a1)?;
    let lengths = [translation_length(&a1), translation_length(&a2), translation_length(&c)];
    FNCoords::new(lengths, twists)
}

/// Adds `t` to the twist along pants curve `curve_index` (1-based).
pub fn twist(coords: &FNCoords, curve_index: usize, t: f64) -> Result<FNCoords> {
    if !(1..=3).contains(&curve_index) {
        return Err(Error::OutOfRange { what: "curve index", value: curve_index as f64 });
    }
    let mut out = *coords;
    out.twists[curve_index - 1] += t;
    Ok(out)
}

/// Earthquake of magnitude `t` along `a₁` applied directly to a representation.
///
/// `b₁` is followed by the translation of length `t` along the axis of `a₁`; this commutes
/// with `a₁`, so the relator is untouched.
pub fn twist_rep_along_a1(rep: &SurfaceGroupRep, t: f64) -> Result<SurfaceGroupRep> {
    let [a1, b1, a2, b2] = rep.gens;
    let shift = a1.translation_along_axis(t).ok_or_else(|| {
        Error::StructureMismatch("a1 is not hyperbolic".into())
    })?;
    Ok(SurfaceGroupRep::new([a1, b1 * shift, a2, b2]))
}

/// An element `g` with `g ρ(a₁) g⁻¹ = σ(a₁)` whose conjugate of `ρ(b₁)` is as close to
/// `σ(b₁)` as a translation along the axis allows. Exact when `ρ` and `σ` are conjugate.
pub fn conjugator(from: &SurfaceGroupRep, to: &SurfaceGroupRep) -> Result<Mobius> {
    let fail = || Error::StructureMismatch("first generator is not hyperbolic".into());
    let s = from.gens[0].diagonalizer().ok_or_else(fail)?;
    let t = to.gens[0].diagonalizer().ok_or_else(fail)?;
    let x = from.gens[1].conjugate_by(&s);
    let y = to.gens[1].conjugate_by(&t);
    let shift = 0.5 * ((y.b.abs() * x.c.abs()) / (x.b.abs() * y.c.abs())).ln();
    if !shift.is_finite() {
        return Err(Error::StructureMismatch("second generator shares an axis with the first".into()));
    }
    Ok(t.inverse() * Mobius::translation(shift) * s)
}

/// Representations with the length of pants curve `curve_index` set to each entry of `lengths`.
pub fn pinch_sequence(
    coords: &FNCoords,
    curve_index: usize,
    lengths: &[f64],
) -> Result<Vec<SurfaceGroupRep>> {
    if !(1..=3).contains(&curve_index) {
        return Err(Error::OutOfRange { what: "curve index", value: curve_index as f64 });
    }
    for w in lengths.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::OutOfRange { what: "pinch lengths (not decreasing)", value: w[1] });
        }
    }
    lengths
        .iter()
        .map(|&l| {
            if l < 1e-6 {
                return Err(Error::OutOfRange { what: "pinch length", value: l });
            }
            let mut c = *coords;
            c.lengths[curve_index - 1] = l;
            fn_to_rep(&c)
        })
        .collect()
}
