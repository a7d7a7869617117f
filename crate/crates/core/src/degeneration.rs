//! Pinching schedules: extremal-length bounds on flat cylinders, Maskit and transversal-length
//! asymptotics, and the limit classes predicted for centers and antipodes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default for the area bound `C1`, which depends only on the topology and is never given
/// explicitly.
pub const DEFAULT_C1: f64 = 10.0;

/// Above this extremal length the Maskit estimate is outside its range.
pub const MASKIT_RANGE: f64 = 0.1;

/// Tolerance for comparing normalized lamination weights.
pub const CLASS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchCurve {
    /// Length of the curve under `h`.
    pub length: f64,
    pub weight: f64,
    pub exponent: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinchSchedule {
    pub curves: Vec<PinchCurve>,
    pub t_grid: Vec<f64>,
    #[serde(default = "default_c1")]
    pub c1: f64,
}

fn default_c1() -> f64 {
    DEFAULT_C1
}

impl PinchSchedule {
    pub fn new(curves: Vec<PinchCurve>, t_grid: Vec<f64>, c1: f64) -> Result<Self> {
        let s = PinchSchedule { curves, t_grid, c1 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_curves()?;
        if self.t_grid.is_empty() {
            return Err(Error::OutOfRange { what: "grid size", value: 0.0 });
        }
        if !(self.t_grid[0] > 0.0) {
            return Err(Error::OutOfRange { what: "grid point", value: self.t_grid[0] });
        }
        for w in self.t_grid.windows(2) {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::OutOfRange { what: "grid order", value: w[1] });
            }
        }
        for i in 0..self.curves.len() {
            for n in 0..self.t_grid.len() {
                let s = self.stretch(i, n);
                if !(s > 1.0) {
                    return Err(Error::OutOfRange { what: "stretch s_in", value: s });
                }
            }
        }
        Ok(())
    }

    /// Checks the curve records alone: positive data and exponents in `(0, 1]`, non-increasing
    /// from 1.
    pub fn validate_curves(&self) -> Result<()> {
        if self.curves.is_empty() {
            return Err(Error::OutOfRange { what: "number of curves", value: 0.0 });
        }
        if !(self.c1 >= 0.0) || !self.c1.is_finite() {
            return Err(Error::OutOfRange { what: "C1", value: self.c1 });
        }
        for c in &self.curves {
            if !(c.length > 0.0) || !c.length.is_finite() {
                return Err(Error::OutOfRange { what: "curve length", value: c.length });
            }
            if !(c.weight > 0.0) || !c.weight.is_finite() {
                return Err(Error::OutOfRange { what: "curve weight", value: c.weight });
            }
            if !(c.exponent > 0.0 && c.exponent <= 1.0) {
                return Err(Error::OutOfRange { what: "curve exponent", value: c.exponent });
            }
        }
        if self.curves[0].exponent != 1.0 {
            return Err(Error::OutOfRange { what: "leading exponent", value: self.curves[0].exponent });
        }
        for w in self.curves.windows(2) {
            if w[1].exponent > w[0].exponent {
                return Err(Error::OutOfRange { what: "exponent order", value: w[1].exponent });
            }
        }
        Ok(())
    }

    /// `s_{i,n} = (a_i/ℓ_i) t_n^{b_i}`.
    pub fn stretch(&self, i: usize, n: usize) -> f64 {
        let c = &self.curves[i];
        c.weight / c.length * self.t_grid[n].powf(c.exponent)
    }

    fn check(&self, i: usize, n: usize) -> Result<()> {
        if i >= self.curves.len() {
            return Err(Error::OutOfRange { what: "curve index", value: i as f64 });
        }
        if n >= self.t_grid.len() {
            return Err(Error::OutOfRange { what: "grid index", value: n as f64 });
        }
        Ok(())
    }
}

/// Bounds on the extremal length of curve `i` at step `n`, from a flat cylinder of height
/// `2 s_{i,n}` over the curve.
pub fn ext_bounds(schedule: &PinchSchedule, i: usize, n: usize) -> Result<(f64, f64)> {
    schedule.check(i, n)?;
    let c = &schedule.curves[i];
    let tb = schedule.t_grid[n].powf(c.exponent);
    let lower = 1.0 / (schedule.c1 + 2.0 * (c.weight / c.length) * tb);
    let upper = c.length / (2.0 * c.weight * tb);
    Ok((lower, upper))
}

/// Hyperbolic length estimate `π·ext` of a curve with small extremal length.
pub fn maskit_length(ext: f64) -> f64 {
    std::f64::consts::PI * ext
}

pub fn maskit_in_range(ext: f64) -> bool {
    ext <= MASKIT_RANGE
}

/// `−2 log` of the Maskit length at the upper extremal-length bound: the width of the collar.
pub fn transversal_length(schedule: &PinchSchedule, i: usize, n: usize) -> Result<f64> {
    schedule.check(i, n)?;
    let t = schedule.t_grid[n];
    if !(t > 1.0) {
        return Err(Error::OutOfRange { what: "t_n", value: t });
    }
    let (_, upper) = ext_bounds(schedule, i, n)?;
    Ok(-2.0 * maskit_length(upper).ln())
}

/// `2 b_i log t_n`.
pub fn transversal_asymptote(schedule: &PinchSchedule, i: usize, n: usize) -> Result<f64> {
    schedule.check(i, n)?;
    let t = schedule.t_grid[n];
    if !(t > 1.0) {
        return Err(Error::OutOfRange { what: "t_n", value: t });
    }
    Ok(2.0 * schedule.curves[i].exponent * t.ln())
}

/// `ℓ_i s_{i,n} / (ℓ_j s_{j,n})`.
pub fn weight_ratio(schedule: &PinchSchedule, i: usize, j: usize, n: usize) -> Result<f64> {
    schedule.check(i, n)?;
    schedule.check(j, n)?;
    if i == j {
        return Ok(1.0);
    }
    let (ci, cj) = (&schedule.curves[i], &schedule.curves[j]);
    let t = schedule.t_grid[n];
    Ok(ci.weight / cj.weight * t.powf(ci.exponent - cj.exponent))
}

/// A projective class of weighted multicurves, scaled so the largest weight is 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaminationClass {
    pub weights: Vec<f64>,
}

impl LaminationClass {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::OutOfRange { what: "lamination weight", value: f64::NAN });
        }
        let top = weights.iter().fold(0.0f64, |m, &w| m.max(w));
        if top == 0.0 {
            return Err(Error::OutOfRange { what: "lamination weights (all zero)", value: 0.0 });
        }
        Ok(LaminationClass { weights: weights.iter().map(|w| w / top).collect() })
    }

    /// Equal as projective classes, to [`CLASS_TOL`].
    pub fn same_class(&self, other: &LaminationClass) -> bool {
        self.weights.len() == other.weights.len()
            && self.weights.iter().zip(&other.weights).all(|(a, b)| (a - b).abs() <= CLASS_TOL)
    }
}

/// The exponents, as a class. Only the curve records enter.
pub fn predicted_center_limit(schedule: &PinchSchedule) -> Result<LaminationClass> {
    schedule.validate_curves()?;
    LaminationClass::new(schedule.curves.iter().map(|c| c.exponent).collect())
}

/// The weights of the curves with the top exponent, as a class.
pub fn predicted_antipode_limit(schedule: &PinchSchedule) -> Result<LaminationClass> {
    schedule.validate_curves()?;
    let top = schedule.curves[0].exponent;
    LaminationClass::new(schedule.curves.iter().map(|c| if c.exponent == top { c.weight } else { 0.0 }).collect())
}
