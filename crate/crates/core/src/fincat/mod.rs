//! Finite posets and categories, nerves, and twisted arrow categories.

pub mod category;
pub mod nerve;
pub mod poset;
pub mod twisted;

pub use category::{poset_to_category, FinCategory, Morphism};
pub use nerve::{nerve, Chain, NerveChains};
pub use poset::FinPoset;
pub use twisted::{twisted_arrow, TwMorphism, TwistedArrowCat};
