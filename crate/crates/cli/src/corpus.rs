//! Built-in inputs used by the verification suites.

use std::collections::HashMap;

use cohomlab::alg::{augmentation, truncated_polynomial_algebra};
use cohomlab::exactla::Field;
use cohomlab::fincat::{poset_to_category, FinPoset};
use cohomlab::gs::AlgebraPresheaf;
use cohomlab::simp::{ComplexDiagram, Filtration, SimplicialComplex};

pub fn point() -> SimplicialComplex {
    SimplicialComplex::simplex(&["a"]).expect("valid complex")
}

pub fn edge() -> SimplicialComplex {
    SimplicialComplex::simplex(&["a", "b"]).expect("valid complex")
}

pub fn triangle_boundary() -> SimplicialComplex {
    SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).expect("valid complex")
}

pub fn full_triangle() -> SimplicialComplex {
    SimplicialComplex::simplex(&["a", "b", "c"]).expect("valid complex")
}

/// `{a} ⊆ ab ⊆ ∂[abc]`.
pub fn triangle_filtration() -> Filtration {
    Filtration::new(vec![point(), edge(), triangle_boundary()]).expect("nested complexes")
}

pub fn filtration_presheaf<F: Field>(field: &F) -> AlgebraPresheaf<F> {
    AlgebraPresheaf::from_filtration(&triangle_filtration(), field).expect("inclusions give a presheaf")
}

/// `1, 2 < 3, 4`: the poset whose order complex is a circle.
pub fn square_poset() -> FinPoset {
    FinPoset::from_covers(&["1", "2", "3", "4"], &[("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")])
        .expect("valid poset")
}

/// The constant one-point diagram on the square poset, optionally with a
/// terminal element `5`, as a presheaf of incidence algebras.
pub fn square_presheaf<F: Field>(field: &F, with_top: bool) -> AlgebraPresheaf<F> {
    let mut p = square_poset();
    if with_top {
        p = p.with_top("5").expect("fresh name");
    }
    let complexes = vec![point(); p.len()];
    let d = ComplexDiagram::from_inclusions(p, complexes).expect("identity inclusions");
    AlgebraPresheaf::from_diagram(&d, field).expect("valid presheaf")
}

/// `k[x]/(x²) -> k` over `0 < 1`, with `A(0) = k` and `A(1) = k[x]/(x²)`.
pub fn augmentation_presheaf<F: Field>(field: &F) -> AlgebraPresheaf<F> {
    let base = poset_to_category(&FinPoset::chain(1));
    let arrow = base.morphism_index("0->1").expect("chain arrow");
    let algebras = vec![truncated_polynomial_algebra(field, 1), truncated_polynomial_algebra(field, 2)];
    AlgebraPresheaf::new(base, algebras, HashMap::from([(arrow, augmentation(field, 2))])).expect("valid presheaf")
}

/// Two edges `ab` and `bc` over the shared vertex `b`.
pub fn two_edge_pushout() -> ComplexDiagram {
    let index = FinPoset::from_covers(&["v", "e1", "e2"], &[("v", "e1"), ("v", "e2")]).expect("valid poset");
    let complexes = vec![
        SimplicialComplex::simplex(&["b"]).expect("valid complex"),
        SimplicialComplex::simplex(&["a", "b"]).expect("valid complex"),
        SimplicialComplex::simplex(&["b", "c"]).expect("valid complex"),
    ];
    ComplexDiagram::from_inclusions(index, complexes).expect("vertex inclusions")
}
