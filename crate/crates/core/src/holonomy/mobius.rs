use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::hyperbolic::HypPoint;

/// Element of `SL(2,ℝ)`, acting on the upper half-plane by `z ↦ (az+b)/(cz+d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MobiusKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Lengths below this are reported as zero.
pub const LENGTH_FLOOR: f64 = 1e-8;

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mobius { a, b, c, d }
    }

    /// Pure translation of length `l` along the imaginary axis.
    pub fn translation(l: f64) -> Self {
        Mobius::new((0.5 * l).exp(), 0.0, 0.0, (-0.5 * l).exp())
    }

    /// Elliptic element fixing `i`; turns the tangent plane there by `phi`.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = (0.5 * phi).sin_cos();
        Mobius::new(c, s, -s, c)
    }

    /// Translation of length `d` along the geodesic through `i` leaving in direction `phi`.
    pub fn along(phi: f64, d: f64) -> Self {
        Mobius::rotation(phi) * Mobius::translation(d) * Mobius::rotation(-phi)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse, assuming unit determinant.
    pub fn inverse(&self) -> Self {
        Mobius::new(self.d, -self.b, -self.c, self.a)
    }

    /// Divides by `√|det|`; flips the sign of the first column when `det < 0`.
    pub fn normalized(&self) -> Self {
        let d = self.det();
        let s = d.abs().sqrt();
        if d < 0.0 {
            Mobius::new(-self.a / s, self.b / s, -self.c / s, self.d / s)
        } else {
            Mobius::new(self.a / s, self.b / s, self.c / s, self.d / s)
        }
    }

    pub fn commutator(x: &Mobius, y: &Mobius) -> Mobius {
        *x * *y * x.inverse() * y.inverse()
    }

    pub fn conjugate_by(&self, g: &Mobius) -> Mobius {
        *g * *self * g.inverse()
    }

    pub fn kind(&self) -> MobiusKind {
        let t = self.trace().abs();
        if (t - 2.0).abs() <= 1e-12 {
            MobiusKind::Parabolic
        } else if t < 2.0 {
            MobiusKind::Elliptic
        } else {
            MobiusKind::Hyperbolic
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Distance to `±E` in the max norm, the natural residual in `PSL(2,ℝ)`.
    pub fn distance_to_identity(&self) -> f64 {
        let p = (self.a - 1.0).abs().max(self.b.abs()).max(self.c.abs()).max((self.d - 1.0).abs());
        let m = (self.a + 1.0).abs().max(self.b.abs()).max(self.c.abs()).max((self.d + 1.0).abs());
        p.min(m)
    }

    /// Action on hyperboloid points: `P ↦ g P gᵀ`.
    pub fn act(&self, p: &HypPoint) -> HypPoint {
        let [p11, p12, p22] = p.matrix();
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let q11 = a * a * p11 + 2.0 * a * b * p12 + b * b * p22;
        let q12 = a * c * p11 + (a * d + b * c) * p12 + b * d * p22;
        let q22 = c * c * p11 + 2.0 * c * d * p12 + d * d * p22;
        HypPoint::from_matrix(q11, q12, q22)
    }

    /// Eigenvectors `(attracting, repelling)` of a hyperbolic element.
    pub fn eigenvectors(&self) -> Option<([f64; 2], [f64; 2])> {
        let t = self.trace();
        let disc = t * t - 4.0;
        if disc <= 0.0 {
            return None;
        }
        let r = disc.sqrt();
        let big = 0.5 * (t + t.signum() * r);
        let small = 1.0 / big;
        Some((self.eigenvector(big), self.eigenvector(small)))
    }

    fn eigenvector(&self, lambda: f64) -> [f64; 2] {
        let u = [self.b, lambda - self.a];
        let v = [lambda - self.d, self.c];
        let nu = u[0].hypot(u[1]);
        let nv = v[0].hypot(v[1]);
        if nu >= nv {
            [u[0] / nu, u[1] / nu]
        } else {
            [v[0] / nv, v[1] / nv]
        }
    }

    /// `S` with `S M S⁻¹` diagonal, attracting eigenvalue first, `det S = 1`.
    pub fn diagonalizer(&self) -> Option<Mobius> {
        let (va, vr) = self.eigenvectors()?;
        let mut cols = Mobius::new(va[0], vr[0], va[1], vr[1]);
        if cols.det() < 0.0 {
            cols = Mobius::new(va[0], -vr[0], va[1], -vr[1]);
        }
        let s = cols.det().sqrt();
        let cols = Mobius::new(cols.a / s, cols.b / s, cols.c / s, cols.d / s);
        Some(cols.inverse())
    }

    /// Translation along the axis of `self` by `t`, in the direction of its attracting end.
    pub fn translation_along_axis(&self, t: f64) -> Option<Mobius> {
        let s = self.diagonalizer()?;
        Some(Mobius::translation(t).conjugate_by(&s.inverse()))
    }
}

impl Mul for Mobius {
    type Output = Mobius;
    fn mul(self, o: Mobius) -> Mobius {
        Mobius::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// `2 arccosh(|tr M| / 2)` for hyperbolic `M`, zero otherwise.
pub fn translation_length(m: &Mobius) -> f64 {
    let t = 0.5 * m.trace().abs();
    if t <= 1.0 {
        return 0.0;
    }
    // arccosh(t) = 2 asinh(sqrt((t-1)/2)) keeps precision near t = 1.
    let l = 4.0 * (0.5 * (t - 1.0)).sqrt().asinh();
    if l < LENGTH_FLOOR {
        0.0
    } else {
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_length() {
        for &l in &[1e-3, 0.5, 2.0, 7.5] {
            assert!((translation_length(&Mobius::translation(l)) - l).abs() < 1e-12);
        }
        assert_eq!(translation_length(&Mobius::rotation(1.0)), 0.0);
    }

    #[test]
    fn conjugation_invariance() {
        let m = Mobius::along(0.4, 1.3);
        let g = Mobius::new(2.0, 1.0, 3.0, 2.0);
        let l = translation_length(&m);
        assert!((translation_length(&m.conjugate_by(&g)) - l).abs() < 1e-12);
        assert!((l - 1.3).abs() < 1e-12);
    }

    #[test]
    fn diagonalizer_orders_eigenvalues() {
        let m = Mobius::along(1.1, 2.0);
        let s = m.diagonalizer().unwrap();
        let d = m.conjugate_by(&s);
        assert!(d.b.abs() < 1e-12 && d.c.abs() < 1e-12);
        assert!(d.a.abs() > d.d.abs());
        assert!((s.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn axis_translation_commutes() {
        let m = Mobius::new(3.0, 1.0, 2.0, 1.0);
        let t = m.translation_along_axis(0.7).unwrap();
        let c = Mobius::commutator(&m, &t);
        assert!(c.distance_to_identity() < 1e-12);
        assert!((translation_length(&t) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn action_preserves_hyperboloid() {
        let g = Mobius::new(2.0, 1.0, 3.0, 2.0);
        let p = g.act(&HypPoint::from_chart(0.3, -0.8));
        assert!((crate::hyperbolic::minkowski(&p, &p) - 1.0).abs() < 1e-12);
        let q = Mobius::translation(2.0).act(&HypPoint::ORIGIN);
        assert!((q.distance(&HypPoint::ORIGIN) - 2.0).abs() < 1e-13);
    }
}
