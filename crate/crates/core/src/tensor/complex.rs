use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{OperatorSample, TangentMetric};
use crate::error::{Error, Result};

/// `P + iQ` where `i` acts on the tangent plane through a complex structure `J`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexOperator {
    pub re: OperatorSample,
    pub im: OperatorSample,
}

impl ComplexOperator {
    pub fn real(re: OperatorSample) -> Self {
        ComplexOperator { re, im: OperatorSample::ZERO }
    }

    /// `w E + z A` for complex scalars `w, z` and a real operator `A`.
    pub fn affine(w: Complex64, z: Complex64, a: &OperatorSample) -> Self {
        let e = OperatorSample::IDENTITY;
        ComplexOperator {
            re: e.scale(w.re) + a.scale(z.re),
            im: e.scale(w.im) + a.scale(z.im),
        }
    }

    /// The real endomorphism `re + J·im`.
    pub fn realize(&self, j: &OperatorSample) -> OperatorSample {
        self.re + *j * self.im
    }

    /// Left multiplication by a complex scalar.
    pub fn scale(&self, w: Complex64) -> Self {
        ComplexOperator {
            re: self.re.scale(w.re) - self.im.scale(w.im),
            im: self.re.scale(w.im) + self.im.scale(w.re),
        }
    }
}

/// `B#_ζ = (ζ+1)/(2√ζ) E − (ζ−1)/(2√ζ) b`, principal branch of `√ζ`.
pub fn complex_landslide_operator(
    zeta: Complex64,
    b: &OperatorSample,
    j: &OperatorSample,
) -> Result<ComplexOperator> {
    if zeta == Complex64::new(0.0, 0.0) || !zeta.is_finite() {
        return Err(Error::OutOfRange { what: "zeta", value: zeta.norm() });
    }
    let r = 2.0 * zeta.sqrt();
    let one = Complex64::new(1.0, 0.0);
    let op = ComplexOperator::affine((zeta + one) / r, -(zeta - one) / r, b);
    check_invertible(&op, j)?;
    Ok(op)
}

/// `2√ζ B#_ζ = (1+ζ)E + (1−ζ)b`, defined for every ζ including 0 where it equals `E + b`.
///
/// It differs from [`complex_landslide_operator`] by a scalar, so both push `h` to the same
/// conformal class.
pub fn graft_limit_operator(zeta: Complex64, b: &OperatorSample) -> ComplexOperator {
    let one = Complex64::new(1.0, 0.0);
    ComplexOperator::affine(one + zeta, one - zeta, b)
}

fn check_invertible(op: &ComplexOperator, j: &OperatorSample) -> Result<()> {
    let m = op.realize(j);
    let d = m.det();
    if !d.is_finite() || d.abs() <= 1e-13 * m.max_abs().powi(2) {
        return Err(Error::SingularOperator { det: d });
    }
    Ok(())
}

/// Beltrami coefficient of `g` relative to the conformal structure of `c_ref`.
///
/// Computed in the frame `(e₁, J e₁)` with `e₁` the unit first chart vector.
pub fn beltrami(c_ref: &TangentMetric, j_ref: &OperatorSample, g: &TangentMetric) -> Complex64 {
    let e1 = [1.0 / c_ref.g11.sqrt(), 0.0];
    let e2 = j_ref.apply(e1);
    let ee = g.eval(e1, e1);
    let ff = g.eval(e1, e2);
    let gg = g.eval(e2, e2);
    let disc = (ee * gg - ff * ff).max(0.0).sqrt();
    let mu = Complex64::new(ee - gg, 2.0 * ff) / (ee + gg + 2.0 * disc);
    debug_assert!(mu.norm() < 1.0 + 1e-12, "|mu| = {} for a definite metric", mu.norm());
    mu
}

/// Radius `(κ₀+1)/(κ₀−1)` of the disc on which `B#_ζ` stays invertible.
pub fn singular_radius(kappa0: f64) -> Result<f64> {
    if kappa0.is_nan() || kappa0 < 1.0 {
        return Err(Error::OutOfRange { what: "kappa0", value: kappa0 });
    }
    if kappa0 == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok((kappa0 + 1.0) / (kappa0 - 1.0))
}
