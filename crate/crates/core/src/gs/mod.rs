//! The Gerstenhaber-Schack double complex of a presheaf of algebras, its
//! total cohomology and the spectral sequence of the column filtration.

pub mod double;
pub mod pages;
pub mod presheaf;

pub use double::{gs_cohomology, gs_double_complex, gs_double_complex_with, GSDoubleComplex, GsOptions};
pub use pages::{ss_consistency, ss_pages, ConsistencyReport, ConsistencyRow, SSPage};
pub use presheaf::{AlgebraPresheaf, BimodulePresheaf};
