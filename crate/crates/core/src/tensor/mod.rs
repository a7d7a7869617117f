//! Pointwise 2D tensor algebra of the landslide flow.
//!
//! Every quantity lives in a fixed chart basis of a single tangent plane:
//! metrics are symmetric positive-definite 2×2 forms, operators are
//! endomorphisms. Nothing here allocates.

mod complex;
mod embedding;
mod landslide;
pub mod sampling;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use complex::{
    beltrami, complex_landslide_operator, graft_limit_operator, singular_radius, ComplexOperator,
};
pub use embedding::{
    ads_embedding_data, grafted_metric, hyp_grafting_data, variation_residuals, Ambient,
    EmbeddingData,
};
pub use landslide::{
    beta, center, complex_structure, conjugated_b, hopf, landslide_point, operator_sqrt,
    push_metric, HopfSample, OperatorSqrt,
};

/// Tolerance for the self-adjoint / unimodular / positive predicates on inputs.
pub const PREDICATE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

/// A symmetric bilinear form, not necessarily definite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SymForm {
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

impl SymForm {
    pub const ZERO: SymForm = SymForm { s11: 0.0, s12: 0.0, s22: 0.0 };

    pub fn new(s11: f64, s12: f64, s22: f64) -> Self {
        SymForm { s11, s12, s22 }
    }

    pub fn eval(&self, u: [f64; 2], v: [f64; 2]) -> f64 {
        self.s11 * u[0] * v[0] + self.s12 * (u[0] * v[1] + u[1] * v[0]) + self.s22 * u[1] * v[1]
    }

    pub fn det(&self) -> f64 {
        self.s11 * self.s22 - self.s12 * self.s12
    }

    pub fn scale(&self, k: f64) -> SymForm {
        SymForm::new(k * self.s11, k * self.s12, k * self.s22)
    }

    /// Trace with respect to a metric, `tr(g⁻¹ s)`.
    pub fn trace_wrt(&self, g: &TangentMetric) -> f64 {
        (g.g22 * self.s11 - 2.0 * g.g12 * self.s12 + g.g11 * self.s22) / g.det()
    }

    pub fn max_abs(&self) -> f64 {
        self.s11.abs().max(self.s12.abs()).max(self.s22.abs())
    }

    pub fn norm(&self) -> f64 {
        (self.s11 * self.s11 + 2.0 * self.s12 * self.s12 + self.s22 * self.s22).sqrt()
    }
}

impl Add for SymForm {
    type Output = SymForm;
    fn add(self, o: SymForm) -> SymForm {
        SymForm::new(self.s11 + o.s11, self.s12 + o.s12, self.s22 + o.s22)
    }
}

impl Sub for SymForm {
    type Output = SymForm;
    fn sub(self, o: SymForm) -> SymForm {
        SymForm::new(self.s11 - o.s11, self.s12 - o.s12, self.s22 - o.s22)
    }
}

/// Symmetric positive-definite form on a tangent plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentMetric {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
}

impl TangentMetric {
    pub const IDENTITY: TangentMetric = TangentMetric { g11: 1.0, g12: 0.0, g22: 1.0 };

    pub fn new(g11: f64, g12: f64, g22: f64) -> Result<Self> {
        let m = TangentMetric { g11, g12, g22 };
        m.validate()?;
        Ok(m)
    }

    /// Builds without checking positivity; callers must know the form is definite.
    pub fn from_entries_unchecked(g11: f64, g12: f64, g22: f64) -> Self {
        TangentMetric { g11, g12, g22 }
    }

    pub fn diag(a: f64, b: f64) -> Result<Self> {
        Self::new(a, 0.0, b)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.g11.is_finite()
            && self.g12.is_finite()
            && self.g22.is_finite()
            && self.g11 > 0.0
            && self.det() > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::DegenerateMetric(format!(
                "({}, {}, {}) is not positive-definite",
                self.g11, self.g12, self.g22
            )))
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn det(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    pub fn trace(&self) -> f64 {
        self.g11 + self.g22
    }

    pub fn eval(&self, u: [f64; 2], v: [f64; 2]) -> f64 {
        self.form().eval(u, v)
    }

    pub fn norm_of(&self, u: [f64; 2]) -> f64 {
        self.eval(u, u).sqrt()
    }

    pub fn form(&self) -> SymForm {
        SymForm::new(self.g11, self.g12, self.g22)
    }

    /// Reinterprets a form as a metric after checking definiteness.
    pub fn from_form(s: SymForm) -> Result<Self> {
        Self::new(s.s11, s.s12, s.s22)
    }

    pub fn scale(&self, k: f64) -> TangentMetric {
        TangentMetric::from_entries_unchecked(k * self.g11, k * self.g12, k * self.g22)
    }

    /// The metric as an operator via the chart basis (`G` with `g(u,v) = uᵀGv`).
    pub fn matrix(&self) -> OperatorSample {
        OperatorSample::new(self.g11, self.g12, self.g12, self.g22)
    }

    /// Lower-triangular Cholesky factor `L` with `G = L Lᵀ`.
    pub fn cholesky(&self) -> OperatorSample {
        let l11 = self.g11.sqrt();
        let l21 = self.g12 / l11;
        let l22 = (self.g22 - l21 * l21).sqrt();
        OperatorSample::new(l11, 0.0, l21, l22)
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, o: &TangentMetric) -> f64 {
        (self.form() - o.form()).max_abs()
    }
}

impl Add for TangentMetric {
    type Output = TangentMetric;
    fn add(self, o: TangentMetric) -> TangentMetric {
        TangentMetric::from_entries_unchecked(self.g11 + o.g11, self.g12 + o.g12, self.g22 + o.g22)
    }
}

/// Endomorphism of a tangent plane in chart coordinates (row-major).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorSample {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl OperatorSample {
    pub const IDENTITY: OperatorSample = OperatorSample { a11: 1.0, a12: 0.0, a21: 0.0, a22: 1.0 };
    pub const ZERO: OperatorSample = OperatorSample { a11: 0.0, a12: 0.0, a21: 0.0, a22: 0.0 };

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        OperatorSample { a11, a12, a21, a22 }
    }

    pub fn diag(a: f64, b: f64) -> Self {
        Self::new(a, 0.0, 0.0, b)
    }

    /// Counter-clockwise rotation of the chart plane.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(k * self.a11, k * self.a12, k * self.a21, k * self.a22)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        if !d.is_finite() || d.abs() <= 1e-14 * scale * scale {
            return Err(Error::SingularOperator { det: d });
        }
        Ok(Self::new(self.a22 / d, -self.a12 / d, -self.a21 / d, self.a11 / d))
    }

    pub fn apply(&self, u: [f64; 2]) -> [f64; 2] {
        [self.a11 * u[0] + self.a12 * u[1], self.a21 * u[0] + self.a22 * u[1]]
    }

    /// The bilinear form `(u, v) ↦ h(u, A v)`, symmetrised.
    ///
    /// For an `h`-self-adjoint `A` the symmetrisation is exact.
    pub fn lower(&self, h: &TangentMetric) -> SymForm {
        let m = h.matrix() * *self;
        SymForm::new(m.a11, 0.5 * (m.a12 + m.a21), m.a22)
    }

    /// `h`-adjoint: `H⁻¹ Aᵀ H`.
    pub fn adjoint(&self, h: &TangentMetric) -> Self {
        let hm = h.matrix();
        let hinv = hm.inverse().expect("metric is invertible");
        hinv * self.transpose() * hm
    }

    pub fn max_abs(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a21.abs()).max(self.a22.abs())
    }

    pub fn frobenius(&self) -> f64 {
        (self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22)
            .sqrt()
    }

    pub fn max_abs_diff(&self, o: &OperatorSample) -> f64 {
        (*self - *o).max_abs()
    }

    pub fn is_self_adjoint(&self, h: &TangentMetric, tol: f64) -> bool {
        let m = h.matrix() * *self;
        (m.a12 - m.a21).abs() <= tol * (1.0 + m.max_abs())
    }

    pub fn is_unimodular(&self, tol: f64) -> bool {
        (self.det() - 1.0).abs() <= tol
    }

    /// Positive for `h`: `h(u, A u) > 0` for every `u ≠ 0`.
    pub fn is_positive(&self, h: &TangentMetric) -> bool {
        let s = self.lower(h);
        s.s11 > 0.0 && s.det() > 0.0
    }

    /// Real eigenvalues of an operator that is self-adjoint for some metric.
    pub fn real_eigenvalues(&self) -> Option<(f64, f64)> {
        let t = 0.5 * self.trace();
        let disc = t * t - self.det();
        if disc < -1e-12 * (1.0 + t * t) {
            return None;
        }
        let r = disc.max(0.0).sqrt();
        Some((t + r, t - r))
    }

    /// Checks the predicates required of the operator `b` of a pair of metrics.
    pub fn check_codazzi_operator(&self, h: &TangentMetric) -> Result<()> {
        if !self.is_self_adjoint(h, PREDICATE_TOL) {
            return Err(Error::InvalidOperator("not self-adjoint for h".into()));
        }
        if !self.is_unimodular(PREDICATE_TOL) {
            return Err(Error::InvalidOperator(format!("determinant {} is not 1", self.det())));
        }
        if !self.is_positive(h) {
            return Err(Error::InvalidOperator("not positive for h".into()));
        }
        Ok(())
    }
}

impl Mul for OperatorSample {
    type Output = OperatorSample;
    fn mul(self, o: OperatorSample) -> OperatorSample {
        OperatorSample::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Add for OperatorSample {
    type Output = OperatorSample;
    fn add(self, o: OperatorSample) -> OperatorSample {
        OperatorSample::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for OperatorSample {
    type Output = OperatorSample;
    fn sub(self, o: OperatorSample) -> OperatorSample {
        OperatorSample::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for OperatorSample {
    type Output = OperatorSample;
    fn neg(self) -> OperatorSample {
        self.scale(-1.0)
    }
}

/// Symmetric positive square root of an SPD 2×2 matrix given as a form.
pub fn spd_sqrt(m: &TangentMetric) -> OperatorSample {
    let s = m.det().sqrt();
    let t = (m.trace() + 2.0 * s).sqrt();
    OperatorSample::new((m.g11 + s) / t, m.g12 / t, m.g12 / t, (m.g22 + s) / t)
}
