//! Landslide flow on pairs of hyperbolic metrics on a closed surface.
//!
//! The [`tensor`] module holds the pointwise algebra. Discrete surfaces and fields live in
//! [`mesh`], surface-group representations and Fenchel–Nielsen coordinates in [`holonomy`],
//! and the pinching asymptotics in [`degeneration`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod degeneration;
pub mod error;
pub mod holonomy;
pub mod hyperbolic;
pub mod mesh;
pub mod tensor;

pub use error::{Error, Result};
pub use tensor::{
    ComplexOperator, EmbeddingData, HopfSample, Orientation, OperatorSample, SymForm,
    TangentMetric,
};
