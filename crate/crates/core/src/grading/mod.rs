//! Positive gradings from contractive automorphisms, standard dilations,
//! and planar dilation families.

pub mod dilation2d;
pub mod siebert;

pub use dilation2d::{shear_gauge, verify_dilation_property, DilationError, DilationFamily2D, DilationKind};
pub use siebert::{
    check_grading, exact_dilation, is_automorphism, self_similar_admissible, siebert_grading, standard_dilation, Dilation,
    Grading, GradingError, Layer, LayerSpace,
};
