//! Exact sparse linear algebra over GF(p) and the rationals.

pub mod complex;
pub mod echelon;
pub mod field;
pub mod sparse;

pub use complex::{cohomology_dims, CochainComplexRep};
pub use echelon::{kernel_basis, rank, solve, span_rank, Echelon, QuotientBasis};
pub use field::{Field, FieldSpec, Fp, Rationals};
pub use sparse::{SparseMatrix, SparseVec, TripletBuilder};
