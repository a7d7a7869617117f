//! Surface-group representations in `SL(2,ℝ)` for the fixed genus-2 marking.

mod diagnostic;
mod fenchel;
mod mobius;
mod words;

pub use diagnostic::{projective_limit_diagnostic, CurveRow, LimitTable, DEFAULT_CONVERGENCE_TOL};
pub use fenchel::{
    conjugator, fn_to_rep, pinch_sequence, rep_to_fn, twist, twist_rep_along_a1, FNCoords, Octagon,
    SurfaceGroupRep, PANTS_CURVES, RELATOR_TOL, TRANSVERSE_CURVES,
};
pub use mobius::{translation_length, Mobius, MobiusKind, LENGTH_FLOOR};
pub use words::{canonical, cyclic_reduce, length_spectrum, CurveClass, MAX_SPECTRUM_WORD};
