//! Extremal-length bounds, transversal lengths, weight ratios and limit classes.

use landslide::degeneration::{
    ext_bounds, maskit_in_range, maskit_length, predicted_antipode_limit, predicted_center_limit, transversal_asymptote,
    transversal_length, weight_ratio, PinchCurve, PinchSchedule,
};
use landslide::Result;

use crate::config::DegenerateConfig;
use crate::report::{Check, Outcome, Table};

pub fn run(cfg: &DegenerateConfig) -> Result<Outcome> {
    let s = &cfg.schedule;
    s.validate()?;
    cfg.counterexample.validate()?;
    let mut checks = Vec::new();
    let mut tables = Vec::new();

    // Bracketing of the flat cylinder of circumference ℓ and height 2ℓ s_in, whose core has
    // extremal length 1/(2 s_in).
    let mut worst_bracket = f64::NEG_INFINITY;
    let mut header = vec!["n".to_string(), "t".to_string()];
    for i in 0..s.curves.len() {
        header.extend([format!("ext_lower_{i}"), format!("ext_upper_{i}"), format!("cylinder_{i}"), format!("trl_ratio_{i}")]);
    }
    for i in 1..s.curves.len() {
        header.push(format!("weight_ratio_0_{i}"));
    }
    let mut table = Table { name: "degeneration".into(), header, rows: Vec::new() };
    for n in 0..s.t_grid.len() {
        let mut row = vec![n as f64, s.t_grid[n]];
        for i in 0..s.curves.len() {
            let (lo, hi) = ext_bounds(s, i, n)?;
            let ext = 1.0 / (2.0 * s.stretch(i, n));
            // Positive when the oracle leaves [lo, hi], relative to the width of the bracket.
            worst_bracket = worst_bracket.max((lo - ext).max(ext - hi) / hi);
            let trl = transversal_length(s, i, n)? / transversal_asymptote(s, i, n)?;
            row.extend([lo, hi, ext, trl]);
        }
        for i in 1..s.curves.len() {
            row.push(weight_ratio(s, 0, i, n)?);
        }
        table.push(row);
    }
    tables.push(table);
    checks.push(Check::at_most("bounds_bracket_cylinder", worst_bracket, 1e-9));

    // Weight ratio for equal exponents.
    let equal = PinchSchedule::new(
        vec![PinchCurve { length: 1.0, weight: 2.0, exponent: 1.0 }, PinchCurve { length: 1.0, weight: 1.0, exponent: 1.0 }],
        s.t_grid.clone(),
        s.c1,
    )?;
    let dev = (0..equal.t_grid.len()).map(|n| Ok((weight_ratio(&equal, 0, 1, n)? - 2.0).abs())).collect::<Result<Vec<f64>>>()?;
    checks.push(Check::at_most("weight_ratio_equal_exponents", dev.iter().fold(0.0, |m: f64, &x| m.max(x)), 0.0));

    // Transversal length against its asymptote.
    let mut t = Table::new("transversal", &["t", "transversal_length", "asymptote", "ratio"]);
    for (k, &[tn, tol]) in cfg.transversal_checks.iter().enumerate() {
        let single = PinchSchedule::new(vec![PinchCurve { length: 1.0, weight: 1.0, exponent: 1.0 }], vec![tn], s.c1)?;
        let (a, b) = (transversal_length(&single, 0, 0)?, transversal_asymptote(&single, 0, 0)?);
        t.push(vec![tn, a, b, a / b]);
        checks.push(Check::at_most(&format!("transversal_ratio_{k}"), (a / b - 1.0).abs(), tol));
        let (_, hi) = ext_bounds(&single, 0, 0)?;
        checks.push(Check::holds(&format!("maskit_in_range_{k}"), maskit_in_range(hi) && maskit_length(hi) > 0.0));
    }
    tables.push(t);

    // Centers and antipodes on the counterexample.
    let c = predicted_center_limit(&cfg.counterexample)?;
    let a = predicted_antipode_limit(&cfg.counterexample)?;
    let gap = c.weights.iter().zip(&a.weights).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    checks.push(Check::at_least("center_antipode_gap", gap, 1e-6));
    let mut t = Table::new("limit_classes", &["curve", "center_weight", "antipode_weight"]);
    for (i, (x, y)) in c.weights.iter().zip(&a.weights).enumerate() {
        t.push(vec![i as f64, *x, *y]);
    }
    tables.push(t);

    Ok(Outcome { checks, tables })
}
