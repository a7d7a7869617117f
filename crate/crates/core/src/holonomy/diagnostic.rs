use serde::{Deserialize, Serialize};

use super::fenchel::SurfaceGroupRep;
use super::words::CurveClass;
use crate::error::{Error, Result};

/// Default bound on the last-three-point relative variation.
pub const DEFAULT_CONVERGENCE_TOL: f64 = 0.02;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub curve: CurveClass,
    /// `θₙ ℓₙ(γ)` for each `n`.
    pub scaled_lengths: Vec<f64>,
    /// Spread of the last three values over their mean magnitude.
    pub variation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitTable {
    pub theta: Vec<f64>,
    pub rows: Vec<CurveRow>,
}

impl LimitTable {
    pub fn max_variation(&self) -> f64 {
        self.rows.iter().map(|r| r.variation).fold(0.0, f64::max)
    }

    pub fn converges(&self, tol: f64) -> bool {
        self.rows.iter().all(|r| r.variation < tol)
    }
}

/// Tabulates rescaled lengths of test curves along a sequence of representations.
///
/// A curve whose rescaled length tends to zero would make a purely relative spread
/// meaningless, so the denominator is floored at 1e−3 of the largest last-point value in
/// the table.
pub fn projective_limit_diagnostic(
    reps: &[SurfaceGroupRep],
    theta: &[f64],
    test_curves: &[CurveClass],
) -> Result<LimitTable> {
    if reps.len() != theta.len() {
        return Err(Error::StructureMismatch(format!(
            "{} representations but {} scale factors",
            reps.len(),
            theta.len()
        )));
    }
    let values: Vec<Vec<f64>> = test_curves
        .iter()
        .map(|c| reps.iter().zip(theta).map(|(r, t)| t * r.length_of(c)).collect())
        .collect();
    let scale = values.iter().filter_map(|v| v.last()).fold(0.0f64, |m, x| m.max(x.abs()));
    let rows = test_curves
        .iter()
        .zip(values)
        .map(|(c, v)| {
            let tail = &v[v.len().saturating_sub(3)..];
            let variation = if tail.is_empty() {
                0.0
            } else {
                let max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = tail.iter().copied().fold(f64::INFINITY, f64::min);
                let mean = tail.iter().map(|x| x.abs()).sum::<f64>() / tail.len() as f64;
                let denom = mean.max(1e-3 * scale);
                if denom > 0.0 {
                    (max - min) / denom
                } else {
                    0.0
                }
            };
            CurveRow { curve: c.clone(), scaled_lengths: v, variation }
        })
        .collect();
    Ok(LimitTable { theta: theta.to_vec(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curves() -> Vec<CurveClass> {
        ["a", "b", "ab", "abAB"].iter().map(|w| CurveClass::parse(w).unwrap()).collect()
    }

    #[test]
    fn constant_sequence_has_no_variation() {
        let reps = vec![SurfaceGroupRep::octagon(); 4];
        let t = projective_limit_diagnostic(&reps, &[1.0; 4], &curves()).unwrap();
        assert_eq!(t.max_variation(), 0.0);
        assert!(t.converges(DEFAULT_CONVERGENCE_TOL));
    }

    #[test]
    fn rescaling_is_projective() {
        let reps = vec![SurfaceGroupRep::octagon(); 3];
        let t1 = projective_limit_diagnostic(&reps, &[1.0, 0.5, 0.25], &curves()).unwrap();
        let t2 = projective_limit_diagnostic(&reps, &[3.0, 1.5, 0.75], &curves()).unwrap();
        for (r1, r2) in t1.rows.iter().zip(&t2.rows) {
            for (x, y) in r1.scaled_lengths.iter().zip(&r2.scaled_lengths) {
                assert!((3.0 * x - y).abs() < 1e-12 * y.abs());
            }
            assert!((r1.variation - r2.variation).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let reps = vec![SurfaceGroupRep::octagon(); 2];
        assert!(projective_limit_diagnostic(&reps, &[1.0], &curves()).is_err());
    }
}
