//! Natural systems on finite categories, Baues-Wirsching and Roos
//! cohomology, and their comparison with the spectral sequence.

pub mod compare;
pub mod hh_system;
pub mod natural;

pub use compare::{e2_vs_bw, selfduality_check, CellComparison, ComparisonReport};
pub use hh_system::{hh_functor, hh_natural_system, CERTIFICATE_DEGREE};
pub use natural::{bw_cohomology, bw_differential, roos_cohomology, FunctorRep, NaturalSystem, Variance};
