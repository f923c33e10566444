//! Hochschild cohomology, restriction maps, Tor via the bar complex and
//! homological epimorphisms.

pub mod bar;
pub mod cochain;
pub mod complex;
pub mod induced;

pub use bar::{certify_hom_epi, tor, BarComplex, CertificateStatus, Decision, HomEpiCertificate};
pub use cochain::CochainSpace;
pub use complex::{hh, hh_diagonal, hh_restrict_first_arg, map_on_cohomology, transfer_map, CochainMap, HochschildComplex};
pub use induced::{hh_induced_map, hh_les, LesNode, LesReport};
