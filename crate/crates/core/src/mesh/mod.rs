//! Triangulated genus-2 surfaces with per-face tensor fields.

mod curvature;
mod develop;
mod field;
mod harmonic;
mod limit;
mod minlag;
mod optim;
mod surface;
mod synthetic;

pub use curvature::{
    codazzi_residual, corner_angles, curvature_from_lengths, discrete_curvature, landslide_field,
    max_codazzi_residual, trace_mass, triangle_area, CurvatureReport,
};
pub use field::{metric_from_lengths, GeometryModel, MetricField, OperatorField, SurfaceDocument, DOCUMENT_VERSION};
pub use surface::{build_octagon_surface, reference_lifts, relative_element, Corner, FaceEdge, TriSurface, MAX_LEVEL};
pub use synthetic::{deep_interior, face_frame, fermi_codazzi_field, refinement_study, RefinementRow};
pub use optim::{minimize, Minimum, SolverConfig};
pub use harmonic::{
    dirichlet_energy, harmonic_map, harmonic_map_from, hopf_from_metrics, hopf_of_map, pullback_metric, DiscreteMap,
};
pub use minlag::{
    canonical_frame_matrix, center_iteration, flat_area_gradient, hyperbolic_area_gradient, minimal_lagrangian, minimal_lagrangian_from,
    operator_disagreement,
    CenterIteration, GraphArea, MinimalLagrangian,
};
pub use develop::{crossing_word, developed_holonomy, frame, rescaled_pullback_length};
pub use limit::{decreasing_tail, earthquake_limit, LimitRow, TEST_CURVES};
