use std::collections::HashMap;

use rayon::prelude::*;

use crate::alg::{diagonal_bimodule, restrict_bimodule};
use crate::bw::natural::{FunctorRep, NaturalSystem, Variance};
use crate::error::{Error, Result};
use crate::exactla::{Field, QuotientBasis, SparseMatrix};
use crate::gs::AlgebraPresheaf;
use crate::hochschild::{certify_hom_epi, hh_induced_map, map_on_cohomology, CochainSpace, HochschildComplex};

/// Degree bound used when certifying presheaf arrows.
pub const CERTIFICATE_DEGREE: usize = 3;

/// `f: c -> d ↦ HH^q(A(d), A(c))`, with `A(c)` a bimodule through `A(f)`.
/// A square `(α, β)` acts by precomposing arguments with `A(α)` and
/// postcomposing values with `A(β)`.
///
/// Normalized cochains are used throughout, and each space comes with the
/// representative basis of its Hochschild complex.
pub fn hh_natural_system<F: Field>(a: &AlgebraPresheaf<F>, q: usize) -> Result<NaturalSystem<F>> {
    let base = a.base();
    let field = a.field();
    let blocks: Vec<(HochschildComplex<F>, QuotientBasis<F>)> = (0..base.morphism_count())
        .into_par_iter()
        .map(|h| {
            let module = restrict_bimodule(&diagonal_bimodule(a.algebra(base.source(h))), a.map(h))?;
            let hc = HochschildComplex::from_space(CochainSpace::new(&module, true), q);
            let basis = hc.cohomology_basis(q);
            Ok((hc, basis))
        })
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = blocks.iter().map(|(_, b)| b.dim()).collect();

    let mut pushes = Vec::new();
    let mut pulls = Vec::new();
    for h in 0..base.morphism_count() {
        for g in base.out_of(base.target(h)) {
            pushes.push((g, h));
        }
        for g in (0..base.morphism_count()).filter(|&g| base.target(g) == base.source(h)) {
            pulls.push((g, h));
        }
    }
    let induced = |from: usize, to: usize, phi: &SparseMatrix<F>, t: &SparseMatrix<F>| {
        let (src, dst) = (&blocks[from], &blocks[to]);
        let g = src.0.space().transfer(dst.0.space(), phi, t, q);
        map_on_cohomology(&g, &src.1, &dst.1)
    };
    let push: HashMap<(usize, usize), SparseMatrix<F>> = pushes
        .par_iter()
        .map(|&(alpha, h)| {
            let to = base.compose(alpha, h).expect("composable");
            let t = SparseMatrix::identity(field, a.algebra(base.source(h)).dim());
            Ok(((alpha, h), induced(h, to, a.map(alpha).matrix(), &t)?))
        })
        .collect::<Result<_>>()?;
    let pull: HashMap<(usize, usize), SparseMatrix<F>> = pulls
        .par_iter()
        .map(|&(beta, h)| {
            let to = base.compose(h, beta).expect("composable");
            let phi = SparseMatrix::identity(field, a.algebra(base.target(h)).dim());
            Ok(((beta, h), induced(h, to, &phi, a.map(beta).matrix())?))
        })
        .collect::<Result<_>>()?;
    NaturalSystem::generate(field, base, dims, |alpha, h| Ok(push[&(alpha, h)].clone()), |beta, h| {
        Ok(pull[&(beta, h)].clone())
    })
}

/// `c ↦ HH^q(A(c), A(c))` as a contravariant functor, an arrow `c -> d`
/// acting by the map induced by `A(d) -> A(c)`.
///
/// Every non-identity arrow must carry a surjective homological epimorphism
/// whose certificate has not failed.
pub fn hh_functor<F: Field>(a: &AlgebraPresheaf<F>, q: usize) -> Result<FunctorRep<F>> {
    let base = a.base();
    let field = a.field();
    let maps: Vec<Option<SparseMatrix<F>>> = (0..base.morphism_count())
        .into_par_iter()
        .map(|m| {
            if base.is_identity(m) {
                return Ok(None);
            }
            let name = &base.morphisms()[m].name;
            let f = a.map(m);
            let cert = certify_hom_epi(f, CERTIFICATE_DEGREE);
            if !cert.surjective || !cert.is_certified() {
                return Err(Error::NotCertified(format!("`{name}` has Tor dims {:?}", cert.tor_dims)));
            }
            hh_induced_map(f, q, true).map(Some)
        })
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = (0..base.object_count())
        .into_par_iter()
        .map(|c| {
            let hc = HochschildComplex::from_space(CochainSpace::new(&diagonal_bimodule(a.algebra(c)), true), q);
            hc.cohomology_basis(q).dim()
        })
        .collect();
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(m, x)| x.unwrap_or_else(|| SparseMatrix::identity(field, dims[base.source(m)])))
        .collect();
    FunctorRep::new(field, base, Variance::Contravariant, dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{augmentation, truncated_polynomial_algebra};
    use crate::bw::natural::{bw_cohomology, roos_cohomology};
    use crate::exactla::Fp;
    use crate::fincat::{poset_to_category, FinPoset};

    #[test]
    fn values_over_an_interval() {
        // k[x]/x^2 -> k over 0 < 1: the values are HH^0 of k, of k over
        // k[x]/x^2, and of k[x]/x^2
        let f = Fp::new(3).unwrap();
        let base = poset_to_category(&FinPoset::chain(1));
        let arrow = base.morphism_index("0->1").unwrap();
        let algebras = vec![truncated_polynomial_algebra(&f, 1), truncated_polynomial_algebra(&f, 2)];
        let a = AlgebraPresheaf::new(base.clone(), algebras, HashMap::from([(arrow, augmentation(&f, 2))])).unwrap();
        let ns = hh_natural_system(&a, 0).unwrap();
        assert_eq!(ns.dim(base.identity(0)), 1);
        assert_eq!(ns.dim(arrow), 1);
        assert_eq!(ns.dim(base.identity(1)), 2);
        assert_eq!(bw_cohomology(&ns, 2).unwrap(), vec![2, 0, 0]);
        assert!(matches!(hh_functor(&a, 0), Err(Error::NotCertified(_))));
    }

    #[test]
    fn constant_presheaf_functor() {
        let f = Fp::new(2).unwrap();
        let base = poset_to_category(&FinPoset::chain(2));
        let a = AlgebraPresheaf::constant(base, &truncated_polynomial_algebra(&f, 1));
        let func = hh_functor(&a, 0).unwrap();
        assert_eq!(roos_cohomology(&func, 2).unwrap(), vec![1, 0, 0]);
        assert_eq!(bw_cohomology(&hh_natural_system(&a, 0).unwrap(), 2).unwrap(), vec![1, 0, 0]);
    }
}
