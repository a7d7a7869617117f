//! Surface-group representations: relator, translation lengths, twists and the length spectrum.

use landslide::holonomy::{fn_to_rep, length_spectrum, translation_length, twist, FNCoords, Mobius, PANTS_CURVES};
use landslide::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::SpectrumConfig;
use crate::report::{Check, Outcome, Table};

/// A multiple of 1/1024 in `[-r, r]`, so sums of a few of them are exact.
fn dyadic(rng: &mut ChaCha8Rng, r: f64) -> f64 {
    let k = (r * 1024.0) as i64;
    rng.gen_range(-k..=k) as f64 / 1024.0
}

fn random_coords(rng: &mut ChaCha8Rng) -> Result<FNCoords> {
    let l = [0; 3].map(|_| rng.gen_range(0.2..4.0));
    let t = [0; 3].map(|_| dyadic(rng, 3.0));
    FNCoords::new(l, t)
}

pub fn run(cfg: &SpectrumConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut checks = Vec::new();

    let mut relator = 0.0f64;
    let mut kept = 0.0f64;
    let mut exact = true;
    let mut round_trip = 0.0f64;
    for _ in 0..cfg.samples {
        let c = random_coords(rng)?;
        let rep = fn_to_rep(&c)?;
        relator = relator.max(rep.relator_residual);
        let i = rng.gen_range(1..=3usize);
        let (s, t) = (dyadic(rng, 2.0), dyadic(rng, 2.0));
        let moved = fn_to_rep(&twist(&c, i, t)?)?;
        let w = PANTS_CURVES[i - 1];
        kept = kept.max((translation_length(&rep.eval_word(w)?) - translation_length(&moved.eval_word(w)?)).abs());
        let two = twist(&twist(&c, i, s)?, i, t)?;
        let one = twist(&c, i, s + t)?;
        exact &= two == one;
        let (r2, r1) = (fn_to_rep(&two)?, fn_to_rep(&one)?);
        for w in ["b", "d", "ab", "bd", "aBcD"] {
            let (l2, l1) = (translation_length(&r2.eval_word(w)?), translation_length(&r1.eval_word(w)?));
            round_trip = round_trip.max((l2 - l1).abs() / l1.max(1.0));
        }
    }
    checks.push(Check::at_most("relator_residual", relator, cfg.relator_tolerance));
    checks.push(Check::at_most("twist_keeps_length", kept, 1e-9));
    checks.push(Check::holds("twist_additivity_exact", exact));
    checks.push(Check::at_most("twist_additivity_lengths", round_trip, 1e-9));

    let mut diag = 0.0f64;
    for l in [1e-3, 0.1, 1.0, 2.5, 10.0] {
        diag = diag.max((translation_length(&Mobius::translation(l)) - l).abs());
    }
    checks.push(Check::at_most("translation_length_diag", diag, 1e-12));

    let coords = match cfg.lengths {
        Some(l) => FNCoords::new(l, cfg.twists)?,
        None => FNCoords::octagon(),
    };
    let rep = fn_to_rep(&coords)?;
    checks.push(Check::at_most("spectrum_relator", rep.relator_residual, cfg.relator_tolerance));
    let spec = length_spectrum(&rep, cfg.max_word)?;
    let mut t = Table::new("spectrum", &["word", "word_length", "length"]);
    for (c, l) in &spec {
        t.push_cells(vec![c.word(), c.len().to_string(), format!("{l:e}")]);
    }
    Ok(Outcome { checks, tables: vec![t] })
}
