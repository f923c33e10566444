use std::collections::HashMap;

use rayon::prelude::*;

use crate::alg::{
    diagonal_bimodule, face_incidence_algebra, face_restriction, restrict_bimodule, AlgebraMorphism, Bimodule,
    FiniteAlgebra,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, SparseMatrix};
use crate::fincat::{poset_to_category, FinCategory, FinPoset};
use crate::simp::{ComplexDiagram, Filtration};

/// A contravariant functor from a finite category to algebras: an arrow
/// `c -> d` yields `A(d) -> A(c)`.
#[derive(Clone, Debug)]
pub struct AlgebraPresheaf<F: Field> {
    base: FinCategory,
    algebras: Vec<FiniteAlgebra<F>>,
    /// Indexed by base morphism.
    maps: Vec<AlgebraMorphism<F>>,
}

impl<F: Field> AlgebraPresheaf<F> {
    /// `arrows` gives the map of every non-identity morphism; identities map
    /// to identities. Functoriality is checked on all composable pairs.
    pub fn new(
        base: FinCategory,
        algebras: Vec<FiniteAlgebra<F>>,
        mut arrows: HashMap<usize, AlgebraMorphism<F>>,
    ) -> Result<Self> {
        if algebras.len() != base.object_count() {
            return Err(Error::FunctorialityViolation(format!(
                "{} algebras for {} objects",
                algebras.len(),
                base.object_count()
            )));
        }
        let mut maps = Vec::with_capacity(base.morphism_count());
        for m in 0..base.morphism_count() {
            let (c, d) = (base.source(m), base.target(m));
            let name = &base.morphisms()[m].name;
            let map = if base.is_identity(m) {
                AlgebraMorphism::identity(&algebras[c])
            } else {
                arrows
                    .remove(&m)
                    .ok_or_else(|| Error::FunctorialityViolation(format!("no algebra map for `{name}`")))?
            };
            if map.source() != &algebras[d] || map.target() != &algebras[c] {
                return Err(Error::FunctorialityViolation(format!("algebra map for `{name}` has the wrong endpoints")));
            }
            maps.push(map);
        }
        let presheaf = AlgebraPresheaf { base, algebras, maps };
        presheaf.check_functorial()?;
        Ok(presheaf)
    }

    fn check_functorial(&self) -> Result<()> {
        let c = &self.base;
        let m = c.morphism_count();
        let pairs: Vec<(usize, usize, usize)> = (0..m)
            .flat_map(|g| (0..m).filter_map(move |f| c.compose(g, f).map(|h| (g, f, h))))
            .collect();
        // A(g ∘ f) = A(f) ∘ A(g)
        let bad = pairs.par_iter().find_any(|&&(g, f, h)| {
            self.maps[f].matrix().mul(self.maps[g].matrix()).map(|p| &p != self.maps[h].matrix()).unwrap_or(true)
        });
        match bad {
            Some(&(g, f, _)) => Err(Error::FunctorialityViolation(format!(
                "maps do not compose for `{}` after `{}`",
                c.morphisms()[g].name,
                c.morphisms()[f].name
            ))),
            None => Ok(()),
        }
    }

    /// A presheaf on the thin category of a poset from maps on covers
    /// `(x, y)`, `x < y`, each `A(y) -> A(x)`.
    pub fn from_poset(
        p: &FinPoset,
        algebras: Vec<FiniteAlgebra<F>>,
        cover_maps: &HashMap<(usize, usize), AlgebraMorphism<F>>,
    ) -> Result<Self> {
        let base = poset_to_category(p);
        let covers = p.covers();
        for c in &covers {
            if !cover_maps.contains_key(c) {
                return Err(Error::FunctorialityViolation(format!(
                    "no algebra map for {} < {}",
                    p.name(c.0),
                    p.name(c.1)
                )));
            }
        }
        let mut memo: HashMap<(usize, usize), AlgebraMorphism<F>> = HashMap::new();
        fn relation<F: Field>(
            p: &FinPoset,
            covers: &[(usize, usize)],
            cover_maps: &HashMap<(usize, usize), AlgebraMorphism<F>>,
            memo: &mut HashMap<(usize, usize), AlgebraMorphism<F>>,
            x: usize,
            y: usize,
        ) -> Result<AlgebraMorphism<F>> {
            if let Some(m) = memo.get(&(x, y)) {
                return Ok(m.clone());
            }
            let m = if let Some(m) = cover_maps.get(&(x, y)) {
                m.clone()
            } else {
                let &(_, z) = covers
                    .iter()
                    .find(|&&(a, z)| a == x && p.leq(z, y))
                    .expect("a strict relation factors through a cover");
                // A(y) -> A(z) -> A(x)
                let rest = relation(p, covers, cover_maps, memo, z, y)?;
                cover_maps[&(x, z)].after(&rest)?
            };
            memo.insert((x, y), m.clone());
            Ok(m)
        }
        let mut arrows = HashMap::new();
        for (k, (x, y)) in p.pairs().into_iter().enumerate() {
            if x != y {
                arrows.insert(k, relation(p, &covers, cover_maps, &mut memo, x, y)?);
            }
        }
        Self::new(base, algebras, arrows)
    }

    /// `p ↦ I(F(Σ_p))` with restrictions along the diagram's inclusions.
    pub fn from_diagram(d: &ComplexDiagram, field: &F) -> Result<Self> {
        d.check_injective()?;
        let index = d.index();
        let algebras: Vec<FiniteAlgebra<F>> =
            d.complexes().par_iter().map(|s| face_incidence_algebra(s, field)).collect();
        let mut cover_maps = HashMap::new();
        for (x, y) in index.covers() {
            let m = face_restriction(d.complex(x), d.complex(y), d.map(x, y).expect("cover map"), field)?;
            cover_maps.insert((x, y), m);
        }
        Self::from_poset(index, algebras, &cover_maps)
    }

    pub fn from_filtration(f: &Filtration, field: &F) -> Result<Self> {
        Self::from_diagram(&f.to_diagram(), field)
    }

    /// The same algebra at every object, identities everywhere.
    pub fn constant(base: FinCategory, algebra: &FiniteAlgebra<F>) -> Self {
        let algebras = vec![algebra.clone(); base.object_count()];
        let maps = vec![AlgebraMorphism::identity(algebra); base.morphism_count()];
        AlgebraPresheaf { base, algebras, maps }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn field(&self) -> &F {
        self.algebras[0].field()
    }

    pub fn algebras(&self) -> &[FiniteAlgebra<F>] {
        &self.algebras
    }

    pub fn algebra(&self, object: usize) -> &FiniteAlgebra<F> {
        &self.algebras[object]
    }

    /// `A(m): A(target m) -> A(source m)`.
    pub fn map(&self, morphism: usize) -> &AlgebraMorphism<F> {
        &self.maps[morphism]
    }
}

/// A presheaf of bimodules over an algebra presheaf: `M(c)` is an
/// `A(c)`-bimodule and an arrow `c -> d` yields a map `M(d) -> M(c)` of
/// `A(d)`-bimodules.
#[derive(Clone, Debug)]
pub struct BimodulePresheaf<F: Field> {
    base: FinCategory,
    modules: Vec<Bimodule<F>>,
    maps: Vec<SparseMatrix<F>>,
}

impl<F: Field> BimodulePresheaf<F> {
    /// `maps` has one matrix per base morphism, identities included.
    pub fn new(a: &AlgebraPresheaf<F>, modules: Vec<Bimodule<F>>, maps: Vec<SparseMatrix<F>>) -> Result<Self> {
        let base = a.base();
        if modules.len() != base.object_count() || maps.len() != base.morphism_count() {
            return Err(Error::FunctorialityViolation("bimodule presheaf has the wrong shape".into()));
        }
        for (c, m) in modules.iter().enumerate() {
            if m.algebra() != a.algebra(c) {
                return Err(Error::InvalidBimodule(format!("module at `{}` is over another algebra", base.objects()[c])));
            }
        }
        for (k, t) in maps.iter().enumerate() {
            let (c, d) = (base.source(k), base.target(k));
            let name = &base.morphisms()[k].name;
            if base.is_identity(k) && *t != SparseMatrix::identity(a.field(), modules[c].dim()) {
                return Err(Error::FunctorialityViolation(format!("`{name}` does not act as the identity")));
            }
            let over_d = restrict_bimodule(&modules[c], a.map(k))?;
            if !modules[d].is_bimodule_map(&over_d, t) {
                return Err(Error::InvalidBimodule(format!("map for `{name}` is not a bimodule map")));
            }
        }
        let m = base.morphism_count();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = base.compose(g, f) {
                    if maps[f].mul(&maps[g])? != maps[h] {
                        return Err(Error::FunctorialityViolation(format!(
                            "module maps do not compose for `{}` after `{}`",
                            base.morphisms()[g].name,
                            base.morphisms()[f].name
                        )));
                    }
                }
            }
        }
        Ok(BimodulePresheaf { base: base.clone(), modules, maps })
    }

    /// `M = A`, each algebra a bimodule over itself.
    pub fn diagonal(a: &AlgebraPresheaf<F>) -> Self {
        BimodulePresheaf {
            base: a.base().clone(),
            modules: a.algebras().iter().map(diagonal_bimodule).collect(),
            maps: (0..a.base().morphism_count()).map(|k| a.map(k).matrix().clone()).collect(),
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn modules(&self) -> &[Bimodule<F>] {
        &self.modules
    }

    pub fn module(&self, object: usize) -> &Bimodule<F> {
        &self.modules[object]
    }

    /// `M(m): M(target m) -> M(source m)`.
    pub fn map(&self, morphism: usize) -> &SparseMatrix<F> {
        &self.maps[morphism]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{augmentation, truncated_polynomial_algebra};
    use crate::exactla::Fp;
    use crate::simp::SimplicialComplex;

    #[test]
    fn filtration_presheaf() {
        let f = Fp::new(2).unwrap();
        let steps = vec![
            SimplicialComplex::simplex(&["a"]).unwrap(),
            SimplicialComplex::simplex(&["a", "b"]).unwrap(),
            SimplicialComplex::from_maximal_faces(&[vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap(),
        ];
        let a = AlgebraPresheaf::from_filtration(&Filtration::new(steps).unwrap(), &f).unwrap();
        let dims: Vec<usize> = a.algebras().iter().map(|x| x.dim()).collect();
        assert_eq!(dims, vec![1, 5, 12]);
        // the arrow 0 -> 2 is the composite restriction
        let m = a.base().morphism_index("0->2").unwrap();
        assert_eq!((a.map(m).source().dim(), a.map(m).target().dim()), (12, 1));
        let m = BimodulePresheaf::diagonal(&a);
        assert!(BimodulePresheaf::new(&a, m.modules().to_vec(), m.maps.clone()).is_ok());
    }

    #[test]
    fn rejects_missing_arrow() {
        let f = Fp::new(3).unwrap();
        let base = poset_to_category(&FinPoset::chain(1));
        let algebras = vec![truncated_polynomial_algebra(&f, 1), truncated_polynomial_algebra(&f, 2)];
        assert!(AlgebraPresheaf::new(base.clone(), algebras.clone(), HashMap::new()).is_err());
        let arrow = base.morphism_index("0->1").unwrap();
        let ok = AlgebraPresheaf::new(base, algebras, HashMap::from([(arrow, augmentation(&f, 2))]));
        assert!(ok.is_ok());
    }
}
