//! Exact rational polyhedral cones and the cones of curves of smooth Fano
//! threefolds.
//!
//! The linear-algebra layer ([`linalg`]) is generic over a [`Field`]; every
//! cone and variety computation runs over [`Rat`].

pub mod cone;
pub mod contraction;
pub mod dataset;
pub mod linalg;
pub mod render;
pub mod scalar;
pub mod variety;
pub mod verify;

pub use cone::{Cone, ConeError};
pub use contraction::{ContractionError, CorrespondenceReport, LinkedContraction};
pub use dataset::{DatasetError, Registry, Resolver};
pub use linalg::Matrix;
pub use scalar::{Field, OrderedField};
pub use variety::{
    ContractionInfo, ContractionKind, ContractionTarget, CurveClass, DivisorClass, NeRay, ValidationError, VarietyData,
    VarietyError, VarietyParts,
};

/// Exact arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
/// Exact rational column vector.
pub type QVec = Vec<Rat>;
/// Exact rational matrix.
pub type QMat = Matrix<Rat>;
