//! Points of the hyperbolic plane on the hyperboloid `x0² − x1² − x2² = 1`.
//!
//! The same point is the unimodular positive matrix `[[x0+x1, x2], [x2, x0−x1]]`, on which
//! `SL(2,ℝ)` acts by `P ↦ g P gᵀ`. The base point `(1, 0, 0)` is the identity matrix and
//! corresponds to `i` in the upper half-plane.

use serde::{Deserialize, Serialize};

use crate::holonomy::Mobius;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

/// `−⟨X, Y⟩` for the Minkowski form of signature (+, −, −) with the time coordinate first.
pub fn minkowski(x: &HypPoint, y: &HypPoint) -> f64 {
    x.x0 * y.x0 - x.x1 * y.x1 - x.x2 * y.x2
}

impl HypPoint {
    pub const ORIGIN: HypPoint = HypPoint { x0: 1.0, x1: 0.0, x2: 0.0 };

    /// Lift of the chart point `(x1, x2)`; every pair of reals is a point.
    pub fn from_chart(x1: f64, x2: f64) -> Self {
        HypPoint { x0: (1.0 + x1 * x1 + x2 * x2).sqrt(), x1, x2 }
    }

    pub fn chart(&self) -> [f64; 2] {
        [self.x1, self.x2]
    }

    /// Point of the upper half-plane `x + iy`, `y > 0`.
    pub fn from_upper_half_plane(x: f64, y: f64) -> Self {
        let p11 = (x * x + y * y) / y;
        let p22 = 1.0 / y;
        HypPoint { x0: 0.5 * (p11 + p22), x1: 0.5 * (p11 - p22), x2: x / y }
    }

    pub fn to_upper_half_plane(&self) -> (f64, f64) {
        let p22 = self.x0 - self.x1;
        (self.x2 / p22, 1.0 / p22)
    }

    /// Image of the base point under `g`: `g gᵀ`.
    pub fn orbit_of_origin(g: &Mobius) -> Self {
        g.act(&HypPoint::ORIGIN)
    }

    /// The point at distance `d` from the origin in direction `phi`.
    pub fn polar(phi: f64, d: f64) -> Self {
        let (s, c) = phi.sin_cos();
        HypPoint { x0: d.cosh(), x1: d.sinh() * c, x2: d.sinh() * s }
    }

    pub fn cosh_distance(&self, o: &HypPoint) -> f64 {
        minkowski(self, o).max(1.0)
    }

    pub fn distance(&self, o: &HypPoint) -> f64 {
        // acosh loses precision near 1; use the chord form there.
        let dx = [self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2];
        let chord2 = -(dx[0] * dx[0]) + dx[1] * dx[1] + dx[2] * dx[2];
        if chord2 < 1e-4 {
            2.0 * (0.5 * chord2.max(0.0).sqrt()).asinh()
        } else {
            self.cosh_distance(o).acosh()
        }
    }

    /// Midpoint of the geodesic segment to `o`.
    pub fn midpoint(&self, o: &HypPoint) -> HypPoint {
        let s = HypPoint { x0: self.x0 + o.x0, x1: self.x1 + o.x1, x2: self.x2 + o.x2 };
        let n = minkowski(&s, &s).sqrt();
        HypPoint { x0: s.x0 / n, x1: s.x1 / n, x2: s.x2 / n }
    }

    /// Matrix `[[p11, p12], [p12, p22]]` of the point.
    pub fn matrix(&self) -> [f64; 3] {
        [self.x0 + self.x1, self.x2, self.x0 - self.x1]
    }

    pub fn from_matrix(p11: f64, p12: f64, p22: f64) -> Self {
        HypPoint { x0: 0.5 * (p11 + p22), x1: 0.5 * (p11 - p22), x2: p12 }
    }

    /// Restores `x0` from the other two coordinates after accumulated drift.
    pub fn renormalize(&self) -> HypPoint {
        HypPoint::from_chart(self.x1, self.x2)
    }
}

/// Interior angle at `a` of a triangle with side lengths `a_opp` opposite and `b`, `c`
/// adjacent, in curvature −1.
pub fn hyperbolic_angle(a_opp: f64, b: f64, c: f64) -> f64 {
    let num = b.cosh() * c.cosh() - a_opp.cosh();
    let den = b.sinh() * c.sinh();
    (num / den).clamp(-1.0, 1.0).acos()
}

/// Interior angle opposite `a_opp` in a Euclidean triangle.
pub fn euclidean_angle(a_opp: f64, b: f64, c: f64) -> f64 {
    ((b * b + c * c - a_opp * a_opp) / (2.0 * b * c)).clamp(-1.0, 1.0).acos()
}
