//! Independent ground truth by exact linear algebra over the rationals.
//!
//! Nothing here looks at trees or graph maps: projectives and injectives
//! come straight from the path basis, and Hom spaces from solving the
//! intertwiner equations.

pub mod matrix;
pub mod rep;
pub mod scalar;

pub use matrix::Matrix;
pub use rep::{
    hom_space, is_isomorphic, is_isomorphic_indecomposable, radical_series_uniserial, representation_of_injective,
    representation_of_projective, self_injective_oracle, simple_representation, socle, socle_basis,
    HomSpace, MatrixRepresentation, OracleReport, RepMorphism,
};
pub use scalar::Scalar;
