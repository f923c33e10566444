//! Finite-dimensional algebras, morphisms, bimodules, incidence algebras and
//! limits of algebra diagrams.

pub mod algebra;
pub mod bimodule;
pub mod examples;
pub mod limit;

pub use algebra::{kernel_ideal, quotient, AlgebraMorphism, FiniteAlgebra, TwoSidedIdeal};
pub use bimodule::{diagonal_bimodule, ideal_bimodule, restrict_bimodule, Bimodule};
pub use examples::{
    augmentation, face_incidence_algebra, face_restriction, incidence_algebra, matrix_algebra, restriction_morphism,
    truncated_polynomial_algebra,
};
pub use limit::{limit_algebra, theta_map, AlgebraLimit};
