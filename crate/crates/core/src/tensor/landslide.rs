use serde::{Deserialize, Serialize};

use super::{spd_sqrt, Orientation, OperatorSample, SymForm, TangentMetric, PREDICATE_TOL};
use crate::error::{Error, Result};

/// Complex structure of `h`: the `h`-isometric rotation by a quarter turn.
pub fn complex_structure(h: &TangentMetric, orientation: Orientation) -> Result<OperatorSample> {
    h.validate()?;
    let r = h.det().sqrt();
    let j = OperatorSample::new(-h.g12 / r, -h.g22 / r, h.g11 / r, h.g12 / r);
    Ok(match orientation {
        Orientation::Positive => j,
        Orientation::Negative => -j,
    })
}

/// `β_θ = cos(θ/2) E + sin(θ/2) J b`.
pub fn beta(theta: f64, b: &OperatorSample, j: &OperatorSample) -> Result<OperatorSample> {
    if !b.is_unimodular(PREDICATE_TOL) {
        return Err(Error::InvalidOperator(format!("det b = {} is not 1", b.det())));
    }
    let (s, c) = (0.5 * theta).sin_cos();
    Ok(OperatorSample::IDENTITY.scale(c) + (*j * *b).scale(s))
}

/// The metric `(u, v) ↦ h(Au, Av)`.
pub fn push_metric(h: &TangentMetric, a: &OperatorSample) -> Result<TangentMetric> {
    let d = a.det();
    if !d.is_finite() || d.abs() <= 1e-14 * a.max_abs().powi(2) {
        return Err(Error::SingularOperator { det: d });
    }
    let m = a.transpose() * h.matrix() * *a;
    TangentMetric::new(m.a11, 0.5 * (m.a12 + m.a21), m.a22)
}

/// Image `(h_θ, h_{θ+π})` of the pair `(h, h(b·,b·))` under the landslide at angle θ.
pub fn landslide_point(
    h: &TangentMetric,
    b: &OperatorSample,
    theta: f64,
) -> Result<(TangentMetric, TangentMetric)> {
    b.check_codazzi_operator(h)?;
    let j = complex_structure(h, Orientation::Positive)?;
    let h_theta = push_metric(h, &beta(theta, b, &j)?)?;
    let h_star_theta = push_metric(h, &beta(theta + std::f64::consts::PI, b, &j)?)?;
    Ok((h_theta, h_star_theta))
}

/// `b_θ = β_{−θ} b β_θ`, the operator relating the landslide image pair.
pub fn conjugated_b(b: &OperatorSample, j: &OperatorSample, theta: f64) -> Result<OperatorSample> {
    Ok(beta(-theta, b, j)? * *b * beta(theta, b, j)?)
}

/// Center metric `h + h(b·,b·)`.
pub fn center(h: &TangentMetric, b: &OperatorSample) -> Result<TangentMetric> {
    b.check_codazzi_operator(h)?;
    Ok(*h + push_metric(h, b)?)
}

/// Real and imaginary parts of the Hopf differential of the identity map `(M, c) → (M, h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfSample {
    pub re_part: SymForm,
    pub im_part: SymForm,
}

impl HopfSample {
    /// `e^{iθ} Φ`.
    pub fn rotate(&self, theta: f64) -> HopfSample {
        let (s, c) = theta.sin_cos();
        HopfSample {
            re_part: self.re_part.scale(c) - self.im_part.scale(s),
            im_part: self.re_part.scale(s) + self.im_part.scale(c),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.re_part.max_abs().max(self.im_part.max_abs())
    }
}

/// Hopf differential `¼ h((E − b²)·,·) − ¼ i h((Jb − bJ)·,·)`.
pub fn hopf(h: &TangentMetric, b: &OperatorSample, j: &OperatorSample) -> Result<HopfSample> {
    b.check_codazzi_operator(h)?;
    let re_part = (h.form() - push_metric(h, b)?.form()).scale(0.25);
    let comm = *j * *b - *b * *j;
    let im_part = comm.lower(h).scale(-0.25);
    Ok(HopfSample { re_part, im_part })
}

/// Result of [`operator_sqrt`]: the operator and the factor it was divided by.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSqrt {
    pub op: OperatorSample,
    /// `√det` of the raw root; `1` when normalisation was not requested.
    pub scale: f64,
}

/// The `h`-self-adjoint positive `b` with `h(b·,b·) = g`, optionally rescaled to `det b = 1`.
pub fn operator_sqrt(h: &TangentMetric, g: &TangentMetric, normalize: bool) -> Result<OperatorSqrt> {
    h.validate()?;
    g.validate()?;
    let l = h.cholesky();
    let li = l.inverse()?;
    let gp = li * g.matrix() * li.transpose();
    let gp = TangentMetric::new(gp.a11, 0.5 * (gp.a12 + gp.a21), gp.a22)?;
    let root = li.transpose() * spd_sqrt(&gp) * l.transpose();
    if normalize {
        let scale = root.det().sqrt();
        Ok(OperatorSqrt { op: root.scale(1.0 / scale), scale })
    } else {
        Ok(OperatorSqrt { op: root, scale: 1.0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sample() -> (TangentMetric, OperatorSample) {
        let h = TangentMetric::new(2.0, 0.3, 0.7).unwrap();
        let g = TangentMetric::new(1.1, -0.4, 3.0).unwrap();
        (h, operator_sqrt(&h, &g, true).unwrap().op)
    }

    #[test]
    fn complex_structure_examples() {
        let j = complex_structure(&TangentMetric::IDENTITY, Orientation::Positive).unwrap();
        assert_eq!(j, OperatorSample::new(0.0, -1.0, 1.0, 0.0));
        let h = TangentMetric::diag(4.0, 1.0).unwrap();
        let j = complex_structure(&h, Orientation::Positive).unwrap();
        assert!(j.max_abs_diff(&OperatorSample::new(0.0, -0.5, 2.0, 0.0)) < 1e-15);
        assert!(push_metric(&h, &j).unwrap().max_abs_diff(&h) < 1e-14);
        let jn = complex_structure(&h, Orientation::Negative).unwrap();
        assert!((jn + j).max_abs() == 0.0);
    }

    #[test]
    fn beta_endpoints() {
        let (h, b) = sample();
        let j = complex_structure(&h, Orientation::Positive).unwrap();
        assert!(beta(0.0, &b, &j).unwrap().max_abs_diff(&OperatorSample::IDENTITY) == 0.0);
        assert!(beta(PI, &b, &j).unwrap().max_abs_diff(&(j * b)) < 1e-15);
        let jb = j * b;
        assert!((jb * jb).max_abs_diff(&-OperatorSample::IDENTITY) < 1e-13);
        assert!(beta(0.3, &OperatorSample::diag(2.0, 1.0), &j).is_err());
    }

    #[test]
    fn push_metric_examples() {
        let h = TangentMetric::IDENTITY;
        let m = push_metric(&h, &OperatorSample::diag(2.0, 0.5)).unwrap();
        assert_eq!(m, TangentMetric::diag(4.0, 0.25).unwrap());
        assert!(push_metric(&h, &OperatorSample::new(1.0, 1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn landslide_endpoints() {
        let (h, b) = sample();
        let hs = push_metric(&h, &b).unwrap();
        let (a0, b0) = landslide_point(&h, &b, 0.0).unwrap();
        assert!(a0.max_abs_diff(&h) < 1e-14 && b0.max_abs_diff(&hs) < 1e-13);
        let (a1, b1) = landslide_point(&h, &b, PI).unwrap();
        assert!(a1.max_abs_diff(&hs) < 1e-13 && b1.max_abs_diff(&h) < 1e-13);
        let (c0, c1) = landslide_point(&h, &OperatorSample::IDENTITY, 1.1).unwrap();
        assert!(c0.max_abs_diff(&h) < 1e-14 && c1.max_abs_diff(&h) < 1e-14);
    }

    #[test]
    fn conjugated_b_at_pi_inverts() {
        let (h, b) = sample();
        let j = complex_structure(&h, Orientation::Positive).unwrap();
        let bp = conjugated_b(&b, &j, PI).unwrap();
        assert!(bp.max_abs_diff(&b.inverse().unwrap()) < 1e-13);
        assert!(conjugated_b(&b, &j, 0.0).unwrap().max_abs_diff(&b) < 1e-15);
    }

    #[test]
    fn center_examples() {
        let h = TangentMetric::IDENTITY;
        let c = center(&h, &OperatorSample::diag(2.0, 0.5)).unwrap();
        assert_eq!(c, TangentMetric::diag(5.0, 1.25).unwrap());
        let c = center(&h, &OperatorSample::IDENTITY).unwrap();
        assert_eq!(c, h.scale(2.0));
    }

    #[test]
    fn hopf_diagonal_example() {
        let k: f64 = 1.7;
        let h = TangentMetric::IDENTITY;
        let b = OperatorSample::diag(k, 1.0 / k);
        let j = complex_structure(&h, Orientation::Positive).unwrap();
        let phi = hopf(&h, &b, &j).unwrap();
        assert!((phi.re_part.s11 - (1.0 - k * k) / 4.0).abs() < 1e-15);
        assert!((phi.re_part.s22 - (1.0 - 1.0 / (k * k)) / 4.0).abs() < 1e-15);
        assert!(phi.re_part.s12.abs() < 1e-15);
        assert!((phi.im_part.s12.abs() - (k - 1.0 / k) / 4.0).abs() < 1e-15);
        assert!(phi.im_part.s11.abs() < 1e-15 && phi.im_part.s22.abs() < 1e-15);
        let zero = hopf(&h, &OperatorSample::IDENTITY, &j).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn operator_sqrt_examples() {
        let h = TangentMetric::IDENTITY;
        let r = operator_sqrt(&h, &TangentMetric::diag(4.0, 0.25).unwrap(), false).unwrap();
        assert!(r.op.max_abs_diff(&OperatorSample::diag(2.0, 0.5)) < 1e-15);
        let h = TangentMetric::new(3.0, 1.0, 2.0).unwrap();
        let r = operator_sqrt(&h, &h, true).unwrap();
        assert!(r.op.max_abs_diff(&OperatorSample::IDENTITY) < 1e-15);
        assert!((r.scale - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normalisation_records_scale() {
        let h = TangentMetric::IDENTITY;
        let g = TangentMetric::diag(9.0, 1.0).unwrap();
        let r = operator_sqrt(&h, &g, true).unwrap();
        assert!((r.scale - 3f64.sqrt()).abs() < 1e-15);
        assert!((r.op.det() - 1.0).abs() < 1e-15);
    }
}
