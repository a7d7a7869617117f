use serde::{Deserialize, Serialize};

use super::{beta, complex_structure, push_metric, Orientation, OperatorSample, TangentMetric};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    Hyperbolic,
    AntiDeSitter,
}

/// First fundamental form and shape operator of an equidistant-type surface.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingData {
    pub first_form: TangentMetric,
    pub shape_op: OperatorSample,
    pub ambient: Ambient,
    /// Constant curvature of `first_form`.
    pub curvature: f64,
}

impl EmbeddingData {
    /// Same surface seen from the other side: the shape operator changes sign.
    pub fn flip_normal(&self) -> EmbeddingData {
        EmbeddingData { shape_op: -self.shape_op, ..*self }
    }

    /// `K + 1 + det B` in anti-de Sitter space, `K + 1 − det B` in hyperbolic space.
    pub fn gauss_residual(&self) -> f64 {
        let d = self.shape_op.det();
        match self.ambient {
            Ambient::AntiDeSitter => self.curvature + 1.0 + d,
            Ambient::Hyperbolic => self.curvature + 1.0 - d,
        }
    }
}

/// `I = cos²(θ/2) h`, `B = tan(θ/2) b`, for `0 < θ < π`.
pub fn ads_embedding_data(h: &TangentMetric, b: &OperatorSample, theta: f64) -> Result<EmbeddingData> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::OutOfRange { what: "theta", value: theta });
    }
    b.check_codazzi_operator(h)?;
    let c = (0.5 * theta).cos();
    Ok(EmbeddingData {
        first_form: h.scale(c * c),
        shape_op: b.scale((0.5 * theta).tan()),
        ambient: Ambient::AntiDeSitter,
        curvature: -1.0 / (c * c),
    })
}

/// `I = cosh²(s/2) h`, `B = −tanh(s/2) b`, for `s > 0`.
pub fn hyp_grafting_data(h: &TangentMetric, b: &OperatorSample, s: f64) -> Result<EmbeddingData> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::OutOfRange { what: "s", value: s });
    }
    b.check_codazzi_operator(h)?;
    let c = (0.5 * s).cosh();
    Ok(EmbeddingData {
        first_form: h.scale(c * c),
        shape_op: b.scale(-(0.5 * s).tanh()),
        ambient: Ambient::Hyperbolic,
        curvature: -1.0 / (c * c),
    })
}

/// `I((E+B)·,(E+B)·)`.
pub fn grafted_metric(data: &EmbeddingData) -> Result<TangentMetric> {
    push_metric(&data.first_form, &(OperatorSample::IDENTITY + data.shape_op))
}

fn grafting_first_form(h: &TangentMetric, s: f64) -> TangentMetric {
    let c = (0.5 * s).cosh();
    h.scale(c * c)
}

/// Central-difference checks of the first-order variations of the grafting data.
///
/// The first residual compares `dI_s/ds` with `tanh(s₀/2) I_{s₀}`. The second rotates the
/// shape operator, `B_t = −tanh(s₀/2) β_t b β_{−t}`, and compares `dB_t/dt` at `t = 0` with
/// `(tanh(s₀/2)/2)(2J − tr(b) J b)`. Both are relative to the size of the unperturbed tensor.
pub fn variation_residuals(
    h: &TangentMetric,
    b: &OperatorSample,
    s0: f64,
    step: f64,
) -> Result<(f64, f64)> {
    if !(s0 > 0.0) {
        return Err(Error::OutOfRange { what: "s0", value: s0 });
    }
    if !(step > 0.0) {
        return Err(Error::OutOfRange { what: "step", value: step });
    }
    b.check_codazzi_operator(h)?;
    let th = (0.5 * s0).tanh();

    let i0 = grafting_first_form(h, s0);
    let dp = grafting_first_form(h, s0 + step).form();
    let dm = grafting_first_form(h, s0 - step).form();
    let di = (dp - dm).scale(0.5 / step);
    let r1 = (di - i0.form().scale(th)).norm() / i0.form().norm();

    let j = complex_structure(h, Orientation::Positive)?;
    let bt = |t: f64| -> Result<OperatorSample> {
        Ok((beta(t, b, &j)? * *b * beta(-t, b, &j)?).scale(-th))
    };
    let db = (bt(step)? - bt(-step)?).scale(0.5 / step);
    let target = (j.scale(2.0) - (j * *b).scale(b.trace())).scale(0.5 * th);
    let r2 = (db - target).frobenius() / b.scale(th).frobenius();
    Ok((r1, r2))
}
