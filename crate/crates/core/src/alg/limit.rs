use std::collections::HashMap;

use crate::alg::algebra::{AlgebraMorphism, FiniteAlgebra};
use crate::alg::examples::{face_incidence_algebra, face_restriction};
use crate::error::{Error, Result};
use crate::exactla::echelon::{kernel_basis, Echelon};
use crate::exactla::sparse::{SparseMatrix, SparseVec, TripletBuilder};
use crate::exactla::Field;
use crate::fincat::FinPoset;
use crate::simp::{Colimit, ComplexDiagram};

/// The limit of a contravariant poset-indexed diagram of algebras, with its
/// projections.
#[derive(Clone, Debug)]
pub struct AlgebraLimit<F: Field> {
    pub algebra: FiniteAlgebra<F>,
    pub projections: Vec<AlgebraMorphism<F>>,
    /// Basis vectors of the limit inside the product, in product coordinates.
    pub embedding: Vec<SparseVec<F::Elem>>,
    offsets: Vec<usize>,
    basis: Echelon<F>,
}

impl<F: Field> AlgebraLimit<F> {
    /// Coordinates in the limit basis of a tuple given per index, or `None`
    /// if the tuple is not compatible.
    pub fn coordinates(&self, tuple: &[SparseVec<F::Elem>]) -> Option<SparseVec<F::Elem>> {
        let flat: SparseVec<F::Elem> = tuple
            .iter()
            .enumerate()
            .flat_map(|(p, v)| v.iter().map(move |(i, x)| (self.offsets[p] + i, x.clone())))
            .collect();
        let (res, tag) = self.basis.reduce_tracked(&flat);
        if res.is_empty() {
            Some(tag)
        } else {
            None
        }
    }
}

/// Limit of algebras `A(p)` with maps `A(q) -> A(p)` for each cover `p < q`.
/// Maps along longer relations are composites and must agree along every
/// route.
pub fn limit_algebra<F: Field>(
    field: &F,
    index: &FinPoset,
    algebras: &[FiniteAlgebra<F>],
    cover_maps: &HashMap<(usize, usize), AlgebraMorphism<F>>,
) -> Result<AlgebraLimit<F>> {
    let n = index.len();
    if algebras.len() != n {
        return Err(Error::FunctorialityViolation(format!("{} algebras for {} indices", algebras.len(), n)));
    }
    let covers = index.covers();
    for &(p, q) in &covers {
        let m = cover_maps.get(&(p, q)).ok_or_else(|| {
            Error::FunctorialityViolation(format!("missing map for {} <= {}", index.name(p), index.name(q)))
        })?;
        if m.source() != &algebras[q] || m.target() != &algebras[p] {
            return Err(Error::FunctorialityViolation(format!(
                "map for {} <= {} has the wrong endpoints",
                index.name(p),
                index.name(q)
            )));
        }
    }
    check_composites(index, algebras, cover_maps)?;

    let offsets: Vec<usize> = algebras
        .iter()
        .scan(0, |acc, a| {
            let o = *acc;
            *acc += a.dim();
            Some(o)
        })
        .collect();
    let total: usize = algebras.iter().map(|a| a.dim()).sum();
    let rows: usize = covers.iter().map(|&(p, _)| algebras[p].dim()).sum();
    let mut b = TripletBuilder::new(field, rows, total);
    let mut r0 = 0;
    for &(p, q) in &covers {
        // a_p - φ(a_q) = 0
        let id = SparseMatrix::identity(field, algebras[p].dim());
        b.add_block(r0, offsets[p], &field.one(), &id);
        b.add_block(r0, offsets[q], &field.neg(&field.one()), cover_maps[&(p, q)].matrix());
        r0 += algebras[p].dim();
    }
    let constraints = b.build();
    let basis_vecs = kernel_basis(&constraints);
    let d = basis_vecs.len();
    let mut ech = Echelon::new(field, total);
    for (k, v) in basis_vecs.iter().enumerate() {
        ech.insert_tagged(v, vec![(k, field.one())]);
    }
    let split = |v: &[(usize, F::Elem)]| -> Vec<SparseVec<F::Elem>> {
        let mut parts = vec![Vec::new(); n];
        for (i, x) in v {
            let p = offsets.partition_point(|&o| o <= *i) - 1;
            parts[p].push((i - offsets[p], x.clone()));
        }
        parts
    };
    let coords = |flat: SparseVec<F::Elem>| -> Result<SparseVec<F::Elem>> {
        let (res, tag) = ech.reduce_tracked(&flat);
        if res.is_empty() {
            Ok(tag)
        } else {
            Err(Error::FunctorialityViolation("compatible tuples are not closed under products".into()))
        }
    };
    let join = |parts: Vec<SparseVec<F::Elem>>| -> SparseVec<F::Elem> {
        let offsets = &offsets;
        parts
            .into_iter()
            .enumerate()
            .flat_map(|(p, v)| v.into_iter().map(move |(i, x)| (offsets[p] + i, x)))
            .collect()
    };
    let mut mult = Vec::with_capacity(d * d);
    let pieces: Vec<Vec<SparseVec<F::Elem>>> = basis_vecs.iter().map(|v| split(v)).collect();
    for i in 0..d {
        for j in 0..d {
            let prod: Vec<SparseVec<F::Elem>> =
                (0..n).map(|p| algebras[p].mul(&pieces[i][p], &pieces[j][p])).collect();
            mult.push(coords(join(prod))?);
        }
    }
    let unit = coords(join(algebras.iter().map(|a| a.unit().to_vec()).collect()))?;
    let labels = (0..d).map(|i| format!("l{i}")).collect();
    let algebra = FiniteAlgebra::new(field, d, mult, unit, Some(labels))
        .map_err(|e| Error::FunctorialityViolation(format!("limit is not an algebra: {e}")))?;
    let projections = (0..n)
        .map(|p| {
            let cols = pieces.iter().map(|pc| pc[p].clone()).collect();
            let m = SparseMatrix::from_columns(field, algebras[p].dim(), cols).expect("dimensions match");
            AlgebraMorphism::new(&algebra, &algebras[p], m)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlgebraLimit { algebra, projections, embedding: basis_vecs, offsets, basis: ech })
}

fn check_composites<F: Field>(
    index: &FinPoset,
    algebras: &[FiniteAlgebra<F>],
    cover_maps: &HashMap<(usize, usize), AlgebraMorphism<F>>,
) -> Result<()> {
    let n = index.len();
    let covers = index.covers();
    let mut maps: HashMap<(usize, usize), SparseMatrix<F>> = HashMap::new();
    for (p, a) in algebras.iter().enumerate() {
        maps.insert((p, p), SparseMatrix::identity(a.field(), a.dim()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| std::cmp::Reverse((0..n).filter(|&y| index.lt(x, y)).count()));
    // Maps A(q) -> A(p) for p <= q, filled for decreasing p.
    for &p in &order {
        for &(p2, r) in &covers {
            if p2 != p {
                continue;
            }
            for q in 0..n {
                if !index.leq(r, q) {
                    continue;
                }
                let composite = cover_maps[&(p, r)].matrix().mul(&maps[&(r, q)])?;
                match maps.get(&(p, q)) {
                    Some(existing) if *existing != composite => {
                        return Err(Error::FunctorialityViolation(format!(
                            "maps for {} <= {} disagree along different routes",
                            index.name(p),
                            index.name(q)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        maps.insert((p, q), composite);
                    }
                }
            }
        }
    }
    Ok(())
}

/// The comparison `Θ: I(F(K)) -> lim_p I(F(Σ_p))` for a colimit `K`, together
/// with the limit. Fails with `ThetaNotIso` unless `Θ` is a unital algebra
/// isomorphism.
pub fn theta_map<F: Field>(
    d: &ComplexDiagram,
    k: &Colimit,
    field: &F,
) -> Result<(AlgebraMorphism<F>, AlgebraLimit<F>)> {
    let not_iso = |why: String| Error::ThetaNotIso(why);
    let index = d.index();
    let algebras: Vec<FiniteAlgebra<F>> = d.complexes().iter().map(|s| face_incidence_algebra(s, field)).collect();
    let mut cover_maps = HashMap::new();
    for (p, q) in index.covers() {
        let m = face_restriction(d.complex(p), d.complex(q), d.map(p, q).expect("cover map"), field)
            .map_err(|e| not_iso(e.to_string()))?;
        cover_maps.insert((p, q), m);
    }
    let limit = limit_algebra(field, index, &algebras, &cover_maps)?;
    let source = face_incidence_algebra(&k.complex, field);
    let rho: Vec<AlgebraMorphism<F>> = (0..index.len())
        .map(|p| face_restriction(d.complex(p), &k.complex, &k.inclusions[p], field))
        .collect::<Result<_>>()
        .map_err(|e| not_iso(e.to_string()))?;
    let mut cols = Vec::with_capacity(source.dim());
    for e in 0..source.dim() {
        let tuple: Vec<SparseVec<F::Elem>> = rho.iter().map(|r| r.matrix().column(e).to_vec()).collect();
        let c = limit
            .coordinates(&tuple)
            .ok_or_else(|| not_iso(format!("image of {} is not a compatible tuple", source.labels()[e])))?;
        cols.push(c);
    }
    let matrix = SparseMatrix::from_columns(field, limit.algebra.dim(), cols).expect("dimensions match");
    let theta = AlgebraMorphism::new(&source, &limit.algebra, matrix).map_err(|e| not_iso(e.to_string()))?;
    if source.dim() != limit.algebra.dim() || !theta.is_injective() {
        return Err(not_iso(format!(
            "dim I(F(K)) = {}, dim limit = {}",
            source.dim(),
            limit.algebra.dim()
        )));
    }
    Ok((theta, limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::examples::{incidence_algebra, restriction_morphism};
    use crate::exactla::Fp;
    use crate::simp::{colimit, SimplicialComplex};

    #[test]
    fn trivial_limits() {
        let f = Fp::new(3).unwrap();
        let a = incidence_algebra(&FinPoset::chain(1), &f);
        let one = limit_algebra(&f, &FinPoset::chain(0), std::slice::from_ref(&a), &HashMap::new()).unwrap();
        assert_eq!(one.algebra.dim(), 3);
        let two = limit_algebra(&f, &FinPoset::antichain(2), &[a.clone(), a], &HashMap::new()).unwrap();
        assert_eq!(two.algebra.dim(), 6);
    }

    #[test]
    fn chain_limit_is_top_algebra() {
        let f = Fp::new(3).unwrap();
        let p = FinPoset::chain(2);
        let sub = p.subposet(&[0, 1]);
        let algebras = vec![incidence_algebra(&sub, &f), incidence_algebra(&p, &f)];
        let mut maps = HashMap::new();
        maps.insert((0, 1), restriction_morphism(&p, &sub, &f).unwrap());
        let lim = limit_algebra(&f, &FinPoset::chain(1), &algebras, &maps).unwrap();
        assert_eq!(lim.algebra.dim(), algebras[1].dim());
        assert!(lim.projections[1].is_injective() && lim.projections[1].is_surjective());
    }

    #[test]
    fn theta_on_pushout() {
        let f = Fp::new(2).unwrap();
        let idx = FinPoset::from_covers(&["p", "q", "r"], &[("r", "p"), ("r", "q")]).unwrap();
        let complexes = vec![
            SimplicialComplex::simplex(&["a", "b"]).unwrap(),
            SimplicialComplex::simplex(&["b", "c"]).unwrap(),
            SimplicialComplex::simplex(&["b"]).unwrap(),
        ];
        let d = ComplexDiagram::from_inclusions(idx, complexes).unwrap();
        let k = colimit(&d).unwrap();
        let (theta, lim) = theta_map(&d, &k, &f).unwrap();
        assert_eq!(lim.algebra.dim(), 9);
        assert_eq!(theta.source().dim(), 9);
    }
}
