use std::collections::HashMap;

use crate::alg::algebra::{AlgebraMorphism, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseMatrix};
use crate::fincat::FinPoset;
use crate::simp::{face_poset, image_face, SimplicialComplex};

/// The incidence algebra `I(P)`: basis `e_(x,y)` for `x <= y` in the order of
/// `FinPoset::pairs`, with `e_(x,y) e_(y,z) = e_(x,z)`.
pub fn incidence_algebra<F: Field>(p: &FinPoset, field: &F) -> FiniteAlgebra<F> {
    let pairs = p.pairs();
    let n = pairs.len();
    let idx: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pr)| (pr, i)).collect();
    let mut mult = vec![Vec::new(); n * n];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        for (j, &(y2, z)) in pairs.iter().enumerate() {
            if y == y2 {
                mult[i * n + j] = vec![(idx[&(x, z)], field.one())];
            }
        }
    }
    let unit = (0..p.len()).map(|x| (idx[&(x, x)], field.one())).collect();
    let labels = pairs.iter().map(|&(x, y)| format!("({},{})", p.name(x), p.name(y))).collect();
    FiniteAlgebra::new(field, n, mult, unit, Some(labels)).expect("incidence algebras are associative")
}

/// Restriction `I(P) -> I(Q)` for a lower ideal `Q` of `P`, where `Q` is
/// given as a poset whose elements are named as in `P`.
pub fn restriction_morphism<F: Field>(p: &FinPoset, q: &FinPoset, field: &F) -> Result<AlgebraMorphism<F>> {
    let embed: Vec<usize> = q
        .elements()
        .iter()
        .map(|e| p.index_of(e).ok_or_else(|| Error::NotLowerIdeal(format!("`{e}` is not an element of P"))))
        .collect::<Result<_>>()?;
    for a in 0..q.len() {
        for b in 0..q.len() {
            if q.leq(a, b) != p.leq(embed[a], embed[b]) {
                return Err(Error::NotLowerIdeal("Q does not carry the induced order".into()));
            }
        }
    }
    if !p.is_lower_ideal(&embed) {
        return Err(Error::NotLowerIdeal("Q is not downward closed in P".into()));
    }
    Ok(restriction_along(p, q, &embed, field))
}

/// `I(P) -> I(Q)` along an order embedding `embed: Q -> P` with lower-ideal
/// image; basis elements outside the image go to zero.
pub(crate) fn restriction_along<F: Field>(p: &FinPoset, q: &FinPoset, embed: &[usize], field: &F) -> AlgebraMorphism<F> {
    let ip = incidence_algebra(p, field);
    let iq = incidence_algebra(q, field);
    let mut back = vec![usize::MAX; p.len()];
    for (a, &x) in embed.iter().enumerate() {
        back[x] = a;
    }
    let qidx: HashMap<(usize, usize), usize> = q.pairs().into_iter().enumerate().map(|(i, pr)| (pr, i)).collect();
    let cols = p
        .pairs()
        .into_iter()
        .map(|(x, y)| match (back[x], back[y]) {
            (a, b) if a != usize::MAX && b != usize::MAX => vec![(qidx[&(a, b)], field.one())],
            _ => Vec::new(),
        })
        .collect();
    let m = SparseMatrix::from_columns(field, iq.dim(), cols).expect("dimensions match");
    AlgebraMorphism::new(&ip, &iq, m).expect("restriction to a lower ideal is a morphism")
}

/// Incidence algebra of the face poset of a complex.
pub fn face_incidence_algebra<F: Field>(s: &SimplicialComplex, field: &F) -> FiniteAlgebra<F> {
    incidence_algebra(&face_poset(s, false), field)
}

/// `I(F(sup)) -> I(F(sub))` for an injective simplicial map `sub -> sup`
/// given on vertices.
pub fn face_restriction<F: Field>(
    sub: &SimplicialComplex,
    sup: &SimplicialComplex,
    vmap: &[usize],
    field: &F,
) -> Result<AlgebraMorphism<F>> {
    let mut seen = vec![false; sup.vertices().len()];
    for &v in vmap {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NonInjectiveMap("vertex map is not injective".into()));
        }
    }
    if !sup.is_simplicial_image(sub, vmap) {
        return Err(Error::InvalidDiagram("vertex map is not simplicial".into()));
    }
    let embed: Vec<usize> = sub
        .faces()
        .iter()
        .map(|f| sup.face_index(&image_face(f, vmap)).expect("simplicial image"))
        .collect();
    Ok(restriction_along(&face_poset(sup, false), &face_poset(sub, false), &embed, field))
}

/// The algebra of `n × n` matrices with basis `E_ij` at index `i * n + j`.
pub fn matrix_algebra<F: Field>(field: &F, n: usize) -> FiniteAlgebra<F> {
    assert!(n >= 1, "matrix size must be positive");
    let d = n * n;
    let mut mult = vec![Vec::new(); d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij E_jl = E_il
                mult[(i * n + j) * d + (j * n + l)] = vec![(i * n + l, field.one())];
            }
        }
    }
    let unit = (0..n).map(|i| (i * n + i, field.one())).collect();
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{i}{j}"))).collect();
    FiniteAlgebra::new(field, d, mult, unit, Some(labels)).expect("matrix algebras are associative")
}

/// `k[x]/(x^m)` with basis `1, x, ..., x^{m-1}`.
pub fn truncated_polynomial_algebra<F: Field>(field: &F, m: usize) -> FiniteAlgebra<F> {
    assert!(m >= 1, "truncation degree must be positive");
    let mut mult = vec![Vec::new(); m * m];
    for i in 0..m {
        for j in 0..m {
            if i + j < m {
                mult[i * m + j] = vec![(i + j, field.one())];
            }
        }
    }
    let labels = (0..m).map(|i| if i == 0 { "1".to_string() } else { format!("x^{i}") }).collect();
    FiniteAlgebra::new(field, m, mult, vec![(0, field.one())], Some(labels)).expect("truncated polynomials")
}

/// The morphism `k[x]/(x^m) -> k` sending `x` to zero.
pub fn augmentation<F: Field>(field: &F, m: usize) -> AlgebraMorphism<F> {
    let a = truncated_polynomial_algebra(field, m);
    let k = truncated_polynomial_algebra(field, 1);
    let cols = (0..m).map(|i| if i == 0 { vec![(0, field.one())] } else { Vec::new() }).collect();
    let matrix = SparseMatrix::from_columns(field, 1, cols).expect("dimensions match");
    AlgebraMorphism::new(&a, &k, matrix).expect("augmentation is a morphism")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::algebra::kernel_ideal;
    use crate::exactla::Fp;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap()
    }

    #[test]
    fn incidence_dimensions() {
        let f = Fp::new(2).unwrap();
        assert_eq!(incidence_algebra(&FinPoset::chain(0), &f).dim(), 1);
        assert_eq!(incidence_algebra(&FinPoset::chain(1), &f).dim(), 3);
        assert_eq!(face_incidence_algebra(&circle(), &f).dim(), 12);
    }

    #[test]
    fn restrictions() {
        let f = Fp::new(2).unwrap();
        let p = FinPoset::chain(1);
        let id = restriction_morphism(&p, &p, &f).unwrap();
        assert_eq!(id.matrix(), &SparseMatrix::identity(&f, 3));
        let q = p.subposet(&[0]);
        let r = restriction_morphism(&p, &q, &f).unwrap();
        assert_eq!(r.matrix().to_dense_rows(), vec![vec![1, 0, 0]]);
        assert_eq!(kernel_ideal(&r).dim(), 2);
        let top = p.subposet(&[1]);
        assert!(matches!(restriction_morphism(&p, &top, &f), Err(Error::NotLowerIdeal(_))));
    }

    #[test]
    fn edge_restriction_of_circle() {
        let f = Fp::new(2).unwrap();
        let c = circle();
        let e = SimplicialComplex::simplex(&["a", "b"]).unwrap();
        let r = face_restriction(&e, &c, &e.inclusion_into(&c).unwrap(), &f).unwrap();
        assert_eq!((r.source().dim(), r.target().dim()), (12, 5));
        assert!(r.is_surjective());
    }

    #[test]
    fn small_algebras() {
        let f = Fp::new(3).unwrap();
        assert_eq!(matrix_algebra(&f, 1).dim(), 1);
        assert_eq!(matrix_algebra(&f, 3).dim(), 9);
        let a = truncated_polynomial_algebra(&f, 3);
        let x = vec![(1, 1)];
        assert_eq!(a.mul(&x, &x), vec![(2, 1)]);
        assert!(a.mul(&a.mul(&x, &x), &x).is_empty());
        assert!(augmentation(&f, 2).is_surjective());
    }
}
