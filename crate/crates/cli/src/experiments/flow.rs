//! Pointwise identities of the landslide flow on random samples.

use std::f64::consts::PI;

use landslide::tensor::sampling::random_pair;
use landslide::tensor::{beta, center, complex_structure, conjugated_b, hopf, landslide_point, push_metric};
use landslide::{OperatorSample, Orientation, Result, TangentMetric};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::FlowConfig;
use crate::report::{Check, Outcome, Table};

fn max(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

struct Sample {
    h: TangentMetric,
    b: OperatorSample,
    t1: f64,
    t2: f64,
}

/// `[group law, antipode pair, antipode b, det β]` residuals of one sample.
fn sample_residuals(s: &Sample) -> Result<[f64; 4]> {
    let j = complex_structure(&s.h, Orientation::Positive)?;
    let (h1, _) = landslide_point(&s.h, &s.b, s.t1)?;
    let b1 = conjugated_b(&s.b, &j, s.t1)?;
    let (h12, hs12) = landslide_point(&h1, &b1, s.t2)?;
    let (d, ds) = landslide_point(&s.h, &s.b, s.t1 + s.t2)?;
    let group = h12.max_abs_diff(&d).max(hs12.max_abs_diff(&ds));

    let hs = push_metric(&s.h, &s.b)?;
    let (a, sw) = landslide_point(&s.h, &s.b, PI)?;
    let swap = a.max_abs_diff(&hs).max(sw.max_abs_diff(&s.h));
    let inv = conjugated_b(&s.b, &j, PI)?.max_abs_diff(&s.b.inverse()?);

    let det = [s.t1, s.t2, s.t1 + s.t2].iter().map(|&t| Ok((beta(t, &s.b, &j)?.det() - 1.0).abs())).collect::<Result<Vec<_>>>()?;
    Ok([group, swap, inv, max(det)])
}

/// `[center, Hopf rotation]` residuals over the θ grid.
fn grid_residuals(h: &TangentMetric, b: &OperatorSample, thetas: &[f64]) -> Result<[f64; 2]> {
    let j = complex_structure(h, Orientation::Positive)?;
    let c = center(h, b)?;
    let phi = hopf(h, b, &j)?;
    let (mut rc, mut rh) = (0.0f64, 0.0f64);
    for &t in thetas {
        let (ht, hst) = landslide_point(h, b, t)?;
        rc = rc.max((ht + hst).max_abs_diff(&c));
        let lhs = (ht.form() - hst.form()).scale(0.25);
        let (sn, cs) = t.sin_cos();
        let rhs = phi.re_part.scale(cs) - phi.im_part.scale(sn);
        rh = rh.max((lhs - rhs).max_abs());
    }
    Ok([rc, rh])
}

/// Group law, antipode, center invariance, Hopf rotation and `det β = 1`.
///
/// Residuals are absolute and entrywise, in the coordinates of the samples.
pub fn run(cfg: &FlowConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let samples: Vec<Sample> = (0..cfg.samples)
        .map(|_| {
            let (h, b) = random_pair(rng, cfg.kappa_max);
            Sample { h, b, t1: rng.gen_range(-PI..PI), t2: rng.gen_range(-PI..PI) }
        })
        .collect();
    let res: Vec<[f64; 4]> = samples.par_iter().map(sample_residuals).collect::<Result<_>>()?;

    let thetas: Vec<f64> = (0..cfg.theta_grid).map(|k| 2.0 * PI * k as f64 / cfg.theta_grid as f64).collect();
    let pairs: Vec<(TangentMetric, OperatorSample)> = (0..cfg.grid_samples).map(|_| random_pair(rng, cfg.kappa_max)).collect();
    let grid: Vec<[f64; 2]> = pairs.par_iter().map(|(h, b)| grid_residuals(h, b, &thetas)).collect::<Result<_>>()?;

    let tol = cfg.tolerance;
    let col = |k: usize| max(res.iter().map(|r| r[k]));
    let gcol = |k: usize| max(grid.iter().map(|r| r[k]));
    let checks = vec![
        Check::at_most("group_law", col(0), tol),
        Check::at_most("antipode_swap", col(1), tol),
        Check::at_most("antipode_inverse", col(2), tol),
        Check::at_most("det_beta", col(3), tol),
        Check::at_most("center_invariance", gcol(0), tol),
        Check::at_most("hopf_rotation", gcol(1), tol),
    ];

    let mut table = Table::new("flow_samples", &["sample", "group_law", "antipode_swap", "antipode_inverse", "det_beta"]);
    for (i, r) in res.iter().enumerate() {
        table.push(vec![i as f64, r[0], r[1], r[2], r[3]]);
    }
    Ok(Outcome { checks, tables: vec![table] })
}
