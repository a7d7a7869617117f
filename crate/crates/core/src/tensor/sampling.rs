//! Random valid inputs for property tests, benchmarks and experiments.

use rand::Rng;

use super::{OperatorSample, TangentMetric};

/// A positive-definite metric with eigenvalues in `[1/spread, spread]` and random axes.
pub fn random_metric<R: Rng + ?Sized>(rng: &mut R, spread: f64) -> TangentMetric {
    let l1 = rng.gen_range(spread.recip()..spread);
    let l2 = rng.gen_range(spread.recip()..spread);
    let phi = rng.gen_range(0.0..std::f64::consts::PI);
    let r = OperatorSample::rotation(phi);
    let m = r * OperatorSample::diag(l1, l2) * r.transpose();
    TangentMetric::from_entries_unchecked(m.a11, 0.5 * (m.a12 + m.a21), m.a22)
}

/// An `h`-self-adjoint positive operator of determinant one with largest eigenvalue `kappa`.
pub fn codazzi_operator(h: &TangentMetric, kappa: f64, axis: f64) -> OperatorSample {
    let l = h.cholesky();
    let li = l.inverse().expect("cholesky factor is invertible");
    let r = OperatorSample::rotation(axis);
    let sym = r * OperatorSample::diag(kappa, kappa.recip()) * r.transpose();
    li.transpose() * sym * l.transpose()
}

/// A random pair `(h, b)` with `κ(b) ∈ [1, kappa_max]`.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, kappa_max: f64) -> (TangentMetric, OperatorSample) {
    let h = random_metric(rng, 3.0);
    let kappa = if kappa_max > 1.0 { rng.gen_range(1.0..kappa_max) } else { 1.0 };
    let axis = rng.gen_range(0.0..std::f64::consts::PI);
    (h, codazzi_operator(&h, kappa, axis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (h, b) = random_pair(&mut rng, 5.0);
            assert!(h.is_positive_definite());
            b.check_codazzi_operator(&h).unwrap();
        }
    }
}
