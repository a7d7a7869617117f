//! The complex landslide, the Gauss equation of the embedding data and the grafting
//! variation formulas.

use std::f64::consts::PI;

use landslide::tensor::sampling::random_pair;
use landslide::tensor::{
    ads_embedding_data, beltrami, center, complex_landslide_operator, complex_structure, graft_limit_operator,
    hyp_grafting_data, push_metric, singular_radius, variation_residuals, ComplexOperator,
};
use landslide::{OperatorSample, Orientation, Result, TangentMetric};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::ComplexFlowConfig;
use crate::report::{Check, Outcome, Table};

fn max(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

fn push(h: &TangentMetric, op: &ComplexOperator, j: &OperatorSample) -> Result<TangentMetric> {
    push_metric(h, &op.realize(j))
}

/// Largest eigenvalue of a positive `b`.
fn kappa(b: &OperatorSample) -> f64 {
    b.real_eigenvalues().map(|(a, c)| a.max(c)).unwrap_or(f64::NAN)
}

/// Open-interval grid of `n` points.
fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect()
}

struct Probe {
    cr: f64,
    /// `|μ|` at `|ζ| = 10⁻¹, 10⁻², 10⁻³`, worst over angles, divided by `κ₀`.
    near_center: [f64; 3],
    at_one: f64,
}

fn probe(h: &TangentMetric, b: &OperatorSample, cfg: &ComplexFlowConfig) -> Result<Probe> {
    let j = complex_structure(h, Orientation::Positive)?;
    let c = center(h, b)?;
    let jc = complex_structure(&c, Orientation::Positive)?;
    let mu = |z: Complex64| -> Result<Complex64> { Ok(beltrami(&c, &jc, &push(h, &graft_limit_operator(z, b), &j)?)) };
    let step = cfg.step;
    let mut cr = 0.0f64;
    for ir in 0..cfg.grid {
        let r = cfg.radius * (ir + 1) as f64 / cfg.grid as f64;
        for ia in 0..cfg.grid {
            let z = Complex64::from_polar(r, 2.0 * PI * ia as f64 / cfg.grid as f64);
            let dx = (mu(z + step)? - mu(z - step)?) / (2.0 * step);
            let dy = (mu(z + Complex64::new(0.0, step))? - mu(z - Complex64::new(0.0, step))?) / (2.0 * step);
            cr = cr.max((0.5 * (dx + Complex64::i() * dy)).norm());
        }
    }
    let k0 = kappa(b);
    let mut near_center = [0.0; 3];
    for (slot, r) in near_center.iter_mut().zip([1e-1, 1e-2, 1e-3]) {
        for ia in 0..8 {
            let z = Complex64::from_polar(r, 2.0 * PI * ia as f64 / 8.0);
            *slot = f64::max(*slot, mu(z)?.norm() / k0);
        }
    }
    let one = complex_landslide_operator(Complex64::new(1.0, 0.0), b, &j)?;
    let at_one = push(h, &one, &j)?.max_abs_diff(h);
    Ok(Probe { cr, near_center, at_one })
}

/// `(AdS, hyperbolic)` Gauss residuals over the θ and s grids.
fn gauss(h: &TangentMetric, b: &OperatorSample, thetas: &[f64], ss: &[f64]) -> Result<(f64, f64)> {
    let ads = thetas.iter().map(|&t| Ok(ads_embedding_data(h, b, t)?.gauss_residual().abs())).collect::<Result<Vec<_>>>()?;
    let hyp = ss.iter().map(|&s| Ok(hyp_grafting_data(h, b, s)?.gauss_residual().abs())).collect::<Result<Vec<_>>>()?;
    Ok((max(ads), max(hyp)))
}

pub fn run(cfg: &ComplexFlowConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut tables = Vec::new();

    // Holomorphy and the two distinguished points.
    let probe_pairs: Vec<_> = (0..cfg.samples.min(20)).map(|_| random_pair(rng, cfg.kappa_max)).collect();
    let probes: Vec<Probe> = probe_pairs.par_iter().map(|(h, b)| probe(h, b, cfg)).collect::<Result<_>>()?;
    checks.push(Check::at_most("cauchy_riemann", max(probes.iter().map(|p| p.cr)), cfg.cr_tolerance));
    checks.push(Check::at_most("center_limit", max(probes.iter().map(|p| p.near_center[2])), 1e-3));
    checks.push(Check::at_most("unit_is_h", max(probes.iter().map(|p| p.at_one)), 1e-12));
    let mut t = Table::new("center_approach", &["sample", "mu_over_kappa_1e-1", "mu_over_kappa_1e-2", "mu_over_kappa_1e-3", "cauchy_riemann"]);
    for (i, p) in probes.iter().enumerate() {
        t.push(vec![i as f64, p.near_center[0], p.near_center[1], p.near_center[2], p.cr]);
    }
    tables.push(t);

    // Invertibility inside the disc of radius (κ₀+1)/(κ₀−1), and the singular point on it.
    let mut singular = 0usize;
    let mut on_circle = 0.0f64;
    for _ in 0..cfg.samples {
        let (h, b) = random_pair(rng, cfg.kappa_max);
        let j = complex_structure(&h, Orientation::Positive)?;
        let k0 = kappa(&b);
        let r = singular_radius(k0)?;
        let rho = if r.is_finite() { 0.99 * r * rng.gen::<f64>().sqrt() } else { rng.gen_range(0.0..10.0) };
        let z = Complex64::from_polar(rho.max(1e-9), rng.gen_range(-PI..PI));
        if complex_landslide_operator(z, &b, &j).is_err() {
            singular += 1;
        }
        if r.is_finite() {
            let m = graft_limit_operator(Complex64::new(-r, 0.0), &b).realize(&j);
            on_circle = on_circle.max(m.det().abs() / m.max_abs().powi(2));
        }
    }
    checks.push(Check::at_most("singular_inside_disc", singular as f64, 0.0));
    // Relative determinant at ζ = −(κ₀+1)/(κ₀−1), where the operator degenerates. The radius
    // inherits the rounding of κ₀, amplified by 1/(κ₀−1).
    checks.push(Check::at_most("singular_on_circle", on_circle, 1e-9));

    // Gauss equation of the embedding data.
    let thetas = grid(0.05, PI - 0.05, cfg.gauss_grid);
    let ss = grid(0.05, 5.0, cfg.gauss_grid);
    let pairs: Vec<_> = (0..cfg.samples.min(100)).map(|_| random_pair(rng, cfg.kappa_max)).collect();
    let g: Vec<(f64, f64)> = pairs.par_iter().map(|(h, b)| gauss(h, b, &thetas, &ss)).collect::<Result<_>>()?;
    checks.push(Check::at_most("gauss_ads", max(g.iter().map(|x| x.0)), cfg.gauss_tolerance));
    checks.push(Check::at_most("gauss_hyperbolic", max(g.iter().map(|x| x.1)), cfg.gauss_tolerance));
    let mut t = Table::new("gauss_ads_theta", &["theta", "max_residual"]);
    for &th in &thetas {
        let worst = pairs
            .iter()
            .map(|(h, b)| Ok(ads_embedding_data(h, b, th)?.gauss_residual().abs()))
            .collect::<Result<Vec<_>>>()?;
        t.push(vec![th, max(worst)]);
    }
    tables.push(t);

    // Variation formulas, and their second-order convergence.
    let s0s: Vec<f64> = pairs.iter().map(|_| rng.gen_range(0.3..3.0)).collect();
    let mut worst = 0.0f64;
    let mut ratio = f64::INFINITY;
    let mut t = Table::new("variation", &["s0", "r1", "r2", "r1_half", "r2_half"]);
    for ((h, b), &s0) in pairs.iter().zip(&s0s) {
        let (r1, r2) = variation_residuals(h, b, s0, cfg.variation_step)?;
        let (q1, q2) = variation_residuals(h, b, s0, 0.5 * cfg.variation_step)?;
        worst = max([worst, r1, r2]);
        ratio = ratio.min(r1 / q1).min(r2 / q2);
        t.push(vec![s0, r1, r2, q1, q2]);
    }
    tables.push(t);
    checks.push(Check::at_most("variation_residual", worst, cfg.variation_tolerance));
    checks.push(Check::at_least("variation_halving_ratio", ratio, cfg.variation_min_ratio));

    Ok(Outcome { checks, tables })
}
