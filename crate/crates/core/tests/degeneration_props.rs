use landslide::degeneration::*;
use proptest::prelude::*;

/// Dirichlet energy of the discrete harmonic function on a periodic grid over a flat cylinder
/// of circumference 1 and height `height`, equal to 0 at the bottom and 1 at the top.
/// The energy is the extremal length of the core curve.
fn cylinder_energy(height: f64, around: usize, up: usize) -> f64 {
    let dx = 1.0 / around as f64;
    let dy = height / up as f64;
    let mut u = vec![vec![0.0; around]; up + 1];
    u[up].iter_mut().for_each(|v| *v = 1.0);
    // Start from a perturbed guess so the solve is not trivially exact.
    for (j, row) in u.iter_mut().enumerate().take(up).skip(1) {
        for (i, v) in row.iter_mut().enumerate() {
            *v = (j as f64 / up as f64).powi(2) + 0.1 * (2.0 * std::f64::consts::PI * i as f64 / around as f64).sin();
        }
    }
    let (wx, wy) = (1.0 / (dx * dx), 1.0 / (dy * dy));
    for _ in 0..200_000 {
        let mut change: f64 = 0.0;
        for j in 1..up {
            for i in 0..around {
                let l = u[j][(i + around - 1) % around];
                let r = u[j][(i + 1) % around];
                let gs = (wx * (l + r) + wy * (u[j - 1][i] + u[j + 1][i])) / (2.0 * (wx + wy));
                let new = u[j][i] + 1.8 * (gs - u[j][i]);
                change = change.max((new - u[j][i]).abs());
                u[j][i] = new;
            }
        }
        if change < 1e-14 {
            break;
        }
    }
    let mut e = 0.0;
    for j in 0..up {
        for i in 0..around {
            let gy = (u[j + 1][i] - u[j][i]) / dy;
            e += gy * gy * dx * dy;
        }
    }
    for j in 1..up {
        for i in 0..around {
            let gx = (u[j][(i + 1) % around] - u[j][i]) / dx;
            e += gx * gx * dx * dy;
        }
    }
    e
}

#[test]
fn flat_cylinder_sits_inside_the_bounds() {
    for (a, l, t) in [(1.0, 1.0, 5.0), (2.0, 0.5, 3.0), (0.7, 1.3, 8.0)] {
        let s = PinchSchedule::new(vec![PinchCurve { length: l, weight: a, exponent: 1.0 }], vec![t], DEFAULT_C1).unwrap();
        let height = 2.0 * a / l * t;
        let ext = cylinder_energy(height, 16, 24);
        assert!((ext - 1.0 / height).abs() < 1e-10, "{ext} vs {}", 1.0 / height);
        // Rescaling the circumference to ℓ leaves the modulus, hence the extremal length.
        let (lo, hi) = ext_bounds(&s, 0, 0).unwrap();
        assert!(lo <= ext && ext <= hi + 1e-12, "{lo} ≤ {ext} ≤ {hi}");
    }
}

fn schedule() -> impl Strategy<Value = PinchSchedule> {
    (
        prop::collection::vec((0.1f64..3.0, 0.1f64..3.0, 0.2f64..1.0), 1..5),
        prop::collection::vec(1.1f64..4.0, 1..6),
        0.0f64..20.0,
    )
        .prop_map(|(raw, steps, c1)| {
            let mut exps: Vec<f64> = raw.iter().map(|r| r.2).collect();
            exps.sort_by(|a, b| b.total_cmp(a));
            exps[0] = 1.0;
            let curves: Vec<PinchCurve> =
                raw.iter().zip(&exps).map(|(r, &b)| PinchCurve { length: r.0, weight: r.1, exponent: b }).collect();
            // Start high enough that every stretch exceeds 1.
            let start = curves.iter().map(|c| (c.length / c.weight).powf(1.0 / c.exponent)).fold(1.0f64, f64::max) * 1.5 + 1.0;
            let mut t = start;
            let grid = steps
                .iter()
                .map(|s| {
                    t *= s;
                    t
                })
                .collect();
            PinchSchedule::new(curves, grid, c1).unwrap()
        })
}

proptest! {
    #[test]
    fn bounds_are_ordered_and_shrink(s in schedule()) {
        for i in 0..s.curves.len() {
            let mut prev = f64::INFINITY;
            for n in 0..s.t_grid.len() {
                let (lo, hi) = ext_bounds(&s, i, n).unwrap();
                prop_assert!(0.0 < lo && lo <= hi);
                prop_assert!(hi < prev);
                prev = hi;
            }
            let far = PinchSchedule { t_grid: vec![1e100], ..s.clone() };
            prop_assert!(ext_bounds(&far, i, 0).unwrap().1 < 1e-15);
        }
    }

    #[test]
    fn weight_ratios_compose(s in schedule(), n in 0usize..6) {
        let n = n % s.t_grid.len();
        let k = s.curves.len();
        for i in 0..k {
            for j in 0..k {
                for m in 0..k {
                    let lhs = weight_ratio(&s, i, j, n).unwrap() * weight_ratio(&s, j, m, n).unwrap();
                    let rhs = weight_ratio(&s, i, m, n).unwrap();
                    prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
                }
            }
        }
    }

    #[test]
    fn equal_exponents_give_constant_ratios(s in schedule()) {
        let k = s.curves.len();
        for i in 0..k {
            for j in 0..k {
                if s.curves[i].exponent == s.curves[j].exponent {
                    let r0 = weight_ratio(&s, i, j, 0).unwrap();
                    for n in 0..s.t_grid.len() {
                        prop_assert_eq!(weight_ratio(&s, i, j, n).unwrap(), r0);
                    }
                }
            }
        }
    }

    #[test]
    fn limit_classes_are_projective(s in schedule(), scale in 0.01f64..100.0) {
        let mut scaled = s.clone();
        scaled.curves.iter_mut().for_each(|c| c.weight *= scale);
        prop_assert!(predicted_antipode_limit(&s).unwrap().same_class(&predicted_antipode_limit(&scaled).unwrap()));
        prop_assert!(predicted_center_limit(&s).unwrap().same_class(&predicted_center_limit(&scaled).unwrap()));
        let other = PinchSchedule { t_grid: s.t_grid.iter().map(|t| t * 2.0).collect(), ..s.clone() };
        prop_assert!(predicted_center_limit(&s).unwrap().same_class(&predicted_center_limit(&other).unwrap()));
    }
}
