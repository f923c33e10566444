//! Simplicial complexes, face posets, diagrams of complexes and colimits.

pub mod complex;
pub mod diagram;

pub use complex::{cochain_complex, face_poset, image_face, order_complex, simplicial_cohomology, SimplicialComplex};
pub use diagram::{colimit, cone_factor, Colimit, ComplexDiagram, Filtration};
