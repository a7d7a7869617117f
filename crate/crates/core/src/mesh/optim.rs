//! Limited-memory BFGS with a backtracking line search.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grad_tol: f64,
    pub max_iterations: usize,
    pub memory: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { grad_tol: 1e-8, max_iterations: 100_000, memory: 12 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    /// Objective after every accepted step, starting with the initial value.
    pub trace: Vec<f64>,
}

impl Minimum {
    /// Whether the recorded objective never increased by more than rounding.
    pub fn is_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1] <= w[0] + noise(w[0]))
    }
}

fn slack(f: f64) -> f64 {
    8.0 * f64::EPSILON * f.abs().max(1.0)
}

/// Evaluation noise of an objective summed over many faces.
fn noise(f: f64) -> f64 {
    1e-12 * f.abs().max(1.0)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Minimizes `f`, which returns the value and gradient at a point.
///
/// Steps satisfy the Armijo condition, or once differences of the objective are lost in
/// rounding, an approximate Wolfe condition on the slope. The objective is non-increasing along
/// the iterates up to that rounding. Fails with [`Error::SolverDiverged`] when the iteration
/// budget runs out or no descent step can be found above the tolerance.
pub fn minimize<F>(mut f: F, x0: Vec<f64>, cfg: &SolverConfig) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    let mut x = x0;
    let (mut fx, mut g) = f(&x)?;
    let mut trace = vec![fx];
    let mut hist: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut stalls = 0;

    for it in 0..cfg.max_iterations {
        let gn = norm(&g);
        if gn < cfg.grad_tol {
            return Ok(Minimum { x, value: fx, grad_norm: gn, iterations: it, trace });
        }

        // Two-loop recursion.
        let mut q = g.clone();
        let mut alphas = Vec::with_capacity(hist.len());
        for (s, y, rho) in hist.iter().rev() {
            let a = rho * dot(s, &q);
            q.iter_mut().zip(y).for_each(|(qi, yi)| *qi -= a * yi);
            alphas.push(a);
        }
        if let Some((s, y, _)) = hist.back() {
            let gamma = dot(s, y) / dot(y, y);
            q.iter_mut().for_each(|v| *v *= gamma);
        }
        for ((s, y, rho), a) in hist.iter().zip(alphas.iter().rev()) {
            let b = rho * dot(y, &q);
            q.iter_mut().zip(s).for_each(|(qi, si)| *qi += (a - b) * si);
        }
        let mut p: Vec<f64> = q.iter().map(|v| -v).collect();
        let mut slope = dot(&g, &p);
        if slope >= 0.0 {
            hist.clear();
            p = g.iter().map(|v| -v).collect();
            slope = -gn * gn;
        }
        if hist.is_empty() {
            // Keep the first trial step modest.
            let scale = (1.0 / norm(&p)).min(1.0);
            p.iter_mut().for_each(|v| *v *= scale);
            slope *= scale;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn: Vec<f64> = x.iter().zip(&p).map(|(xi, pi)| xi + step * pi).collect();
            if let Ok((fn_, gn_)) = f(&xn) {
                let armijo = fn_ <= fx + 1e-4 * step * slope + slack(fx);
                // Below the noise floor the slope along the step certifies the decrease instead.
                let flat = fn_ <= fx + noise(fx) && step * dot(&gn_, &p) <= -0.8 * step * slope;
                if fn_.is_finite() && (armijo || flat) {
                    accepted = Some((xn, fn_, gn_));
                    break;
                }
            }
            step *= 0.5;
        }
        let Some((xn, fn_, gn_)) = accepted else {
            return Err(Error::SolverDiverged { iterations: it, grad_norm: gn });
        };

        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn_.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-300 {
            hist.push_back((s, y, 1.0 / sy));
            if hist.len() > cfg.memory {
                hist.pop_front();
            }
        }
        // Progress below rounding with no gradient decrease means the floor has been reached.
        if fn_ >= fx - noise(fx) && norm(&gn_) >= gn {
            stalls += 1;
            if stalls > 20 {
                return Err(Error::SolverDiverged { iterations: it, grad_norm: gn });
            }
        } else {
            stalls = 0;
        }
        x = xn;
        fx = fn_;
        g = gn_;
        trace.push(fx);
    }
    Err(Error::SolverDiverged { iterations: cfg.max_iterations, grad_norm: norm(&g) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rosenbrock(x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let (a, b) = (x[0], x[1]);
        let v = (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2);
        let g = vec![-2.0 * (1.0 - a) - 400.0 * a * (b - a * a), 200.0 * (b - a * a)];
        Ok((v, g))
    }

    #[test]
    fn finds_rosenbrock_minimum() {
        let m = minimize(rosenbrock, vec![-1.2, 1.0], &SolverConfig::default()).unwrap();
        assert!((m.x[0] - 1.0).abs() < 1e-8 && (m.x[1] - 1.0).abs() < 1e-8, "{:?}", m.x);
        assert!(m.grad_norm < 1e-8);
        assert!(m.is_monotone());
    }

    #[test]
    fn quadratic_in_many_dimensions() {
        let n = 200;
        let f = |x: &[f64]| -> Result<(f64, Vec<f64>)> {
            let w: Vec<f64> = (0..n).map(|i| 1.0 + i as f64).collect();
            let v = x.iter().zip(&w).map(|(xi, wi)| 0.5 * wi * (xi - 1.0).powi(2)).sum();
            Ok((v, x.iter().zip(&w).map(|(xi, wi)| wi * (xi - 1.0)).collect()))
        };
        let m = minimize(f, vec![0.0; n], &SolverConfig::default()).unwrap();
        assert!(m.x.iter().all(|v| (v - 1.0).abs() < 1e-8));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = SolverConfig { max_iterations: 2, ..Default::default() };
        let r = minimize(rosenbrock, vec![-1.2, 1.0], &cfg);
        assert!(matches!(r, Err(Error::SolverDiverged { iterations: 2, .. })));
    }
}
