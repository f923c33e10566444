use rayon::prelude::*;

use crate::alg::{diagonal_bimodule, AlgebraMorphism, Bimodule, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactla::sparse::{SparseMatrix, SparseVec};
use crate::exactla::{CochainComplexRep, Field, QuotientBasis};
use crate::hochschild::cochain::CochainSpace;

/// The Hochschild cochain complex `C^*(A, M)` in degrees `0..=q_max`,
/// together with the outgoing differential of degree `q_max`.
#[derive(Clone, Debug)]
pub struct HochschildComplex<F: Field> {
    space: CochainSpace<F>,
    q_max: usize,
    complex: CochainComplexRep<F>,
}

impl<F: Field> HochschildComplex<F> {
    pub fn new(a: &FiniteAlgebra<F>, m: &Bimodule<F>, q_max: usize, normalized: bool) -> Result<Self> {
        if m.algebra() != a {
            return Err(Error::InvalidBimodule("coefficients are not a bimodule over the algebra".into()));
        }
        Ok(Self::from_space(CochainSpace::new(m, normalized), q_max))
    }

    pub fn from_space(space: CochainSpace<F>, q_max: usize) -> Self {
        let complex = space.complex(q_max);
        HochschildComplex { space, q_max, complex }
    }

    pub fn space(&self) -> &CochainSpace<F> {
        &self.space
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    pub fn complex(&self) -> &CochainComplexRep<F> {
        &self.complex
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.complex.cohomology_dims()
    }

    /// Representatives of `HH^q` with coordinates modulo coboundaries.
    pub fn cohomology_basis(&self, q: usize) -> QuotientBasis<F> {
        self.complex.cohomology_basis(q)
    }
}

/// `dim HH^q(A, M)` for `q <= q_max`.
pub fn hh<F: Field>(a: &FiniteAlgebra<F>, m: &Bimodule<F>, q_max: usize, normalized: bool) -> Result<Vec<usize>> {
    Ok(HochschildComplex::new(a, m, q_max, normalized)?.cohomology_dims())
}

/// `dim HH^q(A, A)` for `q <= q_max`.
pub fn hh_diagonal<F: Field>(a: &FiniteAlgebra<F>, q_max: usize, normalized: bool) -> Vec<usize> {
    HochschildComplex::from_space(CochainSpace::new(&diagonal_bimodule(a), normalized), q_max).cohomology_dims()
}

/// A degreewise family of matrices between two cochain complexes.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainMap<F: Field> {
    maps: Vec<SparseMatrix<F>>,
}

impl<F: Field> CochainMap<F> {
    pub fn new(maps: Vec<SparseMatrix<F>>) -> Self {
        CochainMap { maps }
    }

    pub fn degree(&self, q: usize) -> &SparseMatrix<F> {
        &self.maps[q]
    }

    pub fn maps(&self) -> &[SparseMatrix<F>] {
        &self.maps
    }

    /// Whether `g^{q+1} d = d g^q` wherever both sides are defined.
    pub fn commutes(&self, source: &CochainComplexRep<F>, target: &CochainComplexRep<F>) -> bool {
        (0..self.maps.len()).into_par_iter().all(|q| {
            let (Some(ds), Some(dt)) = (source.diffs().get(q), target.diffs().get(q)) else {
                return true;
            };
            let Some(next) = self.maps.get(q + 1) else {
                return true;
            };
            next.mul(ds).ok() == dt.mul(&self.maps[q]).ok()
        })
    }
}

/// Degreewise transfer `g ↦ T ∘ g ∘ φ^{⊗q}` from `C^*(A, M)` to `C^*(A', M')`.
pub fn transfer_map<F: Field>(
    source: &CochainSpace<F>,
    target: &CochainSpace<F>,
    phi: &SparseMatrix<F>,
    t: &SparseMatrix<F>,
    q_max: usize,
) -> CochainMap<F> {
    CochainMap::new((0..=q_max).into_par_iter().map(|q| source.transfer(target, phi, t, q)).collect())
}

/// The restriction `C^*(A, M) -> C^*(B, M)`, `g ↦ g ∘ f^{⊗q}`, along
/// `f: B -> A`, where `M` is viewed over `B` through `f`. The commutation
/// with differentials is checked.
pub fn hh_restrict_first_arg<F: Field>(
    f: &AlgebraMorphism<F>,
    m: &Bimodule<F>,
    q_max: usize,
    normalized: bool,
) -> Result<CochainMap<F>> {
    let mb = crate::alg::restrict_bimodule(m, f)?;
    let source = CochainSpace::new(m, normalized);
    let target = CochainSpace::new(&mb, normalized);
    let id = SparseMatrix::identity(f.source().field(), m.dim());
    let map = transfer_map(&source, &target, f.matrix(), &id, q_max);
    let (cs, ct) = (source.complex(q_max), target.complex(q_max));
    if !map.commutes(&cs, &ct) {
        return Err(Error::InvalidMorphism("restriction does not commute with the differentials".into()));
    }
    Ok(map)
}

/// Matrix of the map induced on cohomology by a cochain-level map `g`,
/// in the representative bases of source and target.
pub fn map_on_cohomology<F: Field>(
    g: &SparseMatrix<F>,
    source: &QuotientBasis<F>,
    target: &QuotientBasis<F>,
) -> Result<SparseMatrix<F>> {
    let cols: Vec<SparseVec<F::Elem>> = source
        .representatives()
        .par_iter()
        .map(|z| target.coordinates(&g.apply(z)).ok_or_else(|| Error::NotACocycle("image is not a cocycle".into())))
        .collect::<Result<_>>()?;
    SparseMatrix::from_columns(g.field(), target.dim(), cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{matrix_algebra, truncated_polynomial_algebra};
    use crate::exactla::Fp;

    #[test]
    fn classical_examples() {
        let f5 = Fp::new(5).unwrap();
        assert_eq!(hh_diagonal(&matrix_algebra(&f5, 2), 3, true), vec![1, 0, 0, 0]);
        let f3 = Fp::new(3).unwrap();
        assert_eq!(hh_diagonal(&truncated_polynomial_algebra(&f3, 2), 3, true), vec![2, 1, 1, 1]);
        let f2 = Fp::new(2).unwrap();
        let a = truncated_polynomial_algebra(&f2, 2);
        assert_eq!(hh_diagonal(&a, 3, true), vec![2, 2, 2, 2]);
        assert_eq!(hh_diagonal(&a, 3, false), vec![2, 2, 2, 2]);
    }

    #[test]
    fn restriction_along_identity() {
        let f = Fp::new(3).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        let id = AlgebraMorphism::identity(&a);
        let map = hh_restrict_first_arg(&id, &diagonal_bimodule(&a), 2, false).unwrap();
        for q in 0..=2 {
            assert_eq!(map.degree(q), &SparseMatrix::identity(&f, 2usize.pow(q as u32) * 2));
        }
    }
}
