use serde::Serialize;

use crate::alg::{diagonal_bimodule, ideal_bimodule, quotient, restrict_bimodule, AlgebraMorphism, TwoSidedIdeal};
use crate::error::{Error, Result};
use crate::exactla::sparse::{SparseMatrix, SparseVec};
use crate::exactla::{rank, Echelon, Field, QuotientBasis};
use crate::hochschild::bar::certify_hom_epi;
use crate::hochschild::cochain::CochainSpace;
use crate::hochschild::complex::{map_on_cohomology, HochschildComplex};

/// Solves `r x = p` column by column for an invertible square `r`.
fn solve_invertible<F: Field>(r: &SparseMatrix<F>, p: &SparseMatrix<F>, degree: usize) -> Result<SparseMatrix<F>> {
    let f = r.field();
    if r.rows() != r.cols() || rank(r) != r.cols() {
        return Err(Error::ZigzagNotInvertible { degree });
    }
    let mut ech = Echelon::new(f, r.rows());
    for j in 0..r.cols() {
        ech.insert_tagged(r.column(j), vec![(j, f.one())]);
    }
    let cols: Vec<SparseVec<F::Elem>> = p
        .columns()
        .iter()
        .map(|c| {
            let (res, x) = ech.reduce_tracked(c);
            debug_assert!(res.is_empty());
            x
        })
        .collect();
    SparseMatrix::from_columns(f, r.cols(), cols)
}

/// The map `HH^q(S, S) -> HH^q(T, T)` induced by a surjective homological
/// epimorphism `f: S -> T`, in the representative bases of both sides.
///
/// It is the composite of the coefficient push `HH^q(S, S) -> HH^q(S, T)`
/// with the inverse of the restriction `HH^q(T, T) -> HH^q(S, T)`.
pub fn hh_induced_map<F: Field>(f: &AlgebraMorphism<F>, q: usize, normalized: bool) -> Result<SparseMatrix<F>> {
    if !f.is_surjective() {
        return Err(Error::NotHomEpi("the morphism is not surjective".into()));
    }
    let (s, t) = (f.source(), f.target());
    let field = s.field();
    let ss = CochainSpace::new(&diagonal_bimodule(s), normalized);
    let tt = CochainSpace::new(&diagonal_bimodule(t), normalized);
    let st = CochainSpace::new(&restrict_bimodule(&diagonal_bimodule(t), f)?, normalized);
    let (hss, (htt, hst)) = rayon::join(
        || HochschildComplex::from_space(ss, q),
        || rayon::join(|| HochschildComplex::from_space(tt, q), || HochschildComplex::from_space(st, q)),
    );
    let (bss, btt, bst) = (hss.cohomology_basis(q), htt.cohomology_basis(q), hst.cohomology_basis(q));
    let push = hss.space().transfer(hst.space(), &SparseMatrix::identity(field, s.dim()), f.matrix(), q);
    let restrict = htt.space().transfer(hst.space(), f.matrix(), &SparseMatrix::identity(field, t.dim()), q);
    let p = map_on_cohomology(&push, &bss, &bst)?;
    let r = map_on_cohomology(&restrict, &btt, &bst)?;
    solve_invertible(&r, &p, q)
}

/// One position `H^q(A, X)` of the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesNode {
    pub label: String,
    pub degree: usize,
    pub dim: usize,
    /// Rank of the incoming map.
    pub image_in: usize,
    /// Dimension of the kernel of the outgoing map.
    pub kernel_out: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub q_max: usize,
    pub nodes: Vec<LesNode>,
    /// `dim HH^q(B, B)` for the quotient `B = A / I`.
    pub hh_quotient: Vec<usize>,
    /// Whether restriction `HH^q(B, B) -> HH^q(A, B)` is an isomorphism.
    pub restriction_iso: Vec<bool>,
    pub exact: bool,
}

/// The long exact sequence of `0 -> I -> A -> A/I -> 0` in Hochschild
/// cohomology `HH^*(A, -)`, with exactness checked at every node up to
/// `q_max`.
pub fn hh_les<F: Field>(a: &crate::alg::FiniteAlgebra<F>, ideal: &TwoSidedIdeal<F>, q_max: usize) -> Result<LesReport> {
    if ideal.ambient() != a {
        return Err(Error::InvalidAlgebra("ideal of a different algebra".into()));
    }
    let field = a.field();
    let (b, pi) = quotient(ideal);
    let cert = certify_hom_epi(&pi, q_max.clamp(1, 3));
    if !cert.is_certified() {
        return Err(Error::NotHomEpi(format!("Tor dims {:?}", cert.tor_dims)));
    }
    let mi = ideal_bimodule(ideal);
    let ma = diagonal_bimodule(a);
    let mb = restrict_bimodule(&diagonal_bimodule(&b), &pi)?;
    let normalized = true;
    let si = CochainSpace::new(&mi, normalized);
    let sa = CochainSpace::new(&ma, normalized);
    let sb = CochainSpace::new(&mb, normalized);
    let hi = HochschildComplex::from_space(si, q_max + 1);
    let ha = HochschildComplex::from_space(sa, q_max);
    let hb = HochschildComplex::from_space(sb, q_max);

    // I -> A, A -> B, a section B -> A, and pivot coordinates A ⊇ I -> I
    let incl = SparseMatrix::from_columns(field, a.dim(), ideal.basis().to_vec())?;
    let complement: Vec<usize> = {
        let mut is_pivot = vec![false; a.dim()];
        for v in ideal.basis() {
            is_pivot[v[0].0] = true;
        }
        (0..a.dim()).filter(|&i| !is_pivot[i]).collect()
    };
    let section = SparseMatrix::from_columns(
        field,
        a.dim(),
        complement.iter().map(|&i| vec![(i, field.one())]).collect(),
    )?;
    let coords = SparseMatrix::from_columns(
        field,
        ideal.dim(),
        (0..a.dim())
            .map(|i| {
                ideal.basis().iter().position(|v| v[0].0 == i).map(|k| vec![(k, field.one())]).unwrap_or_default()
            })
            .collect(),
    )?;
    let id_a = SparseMatrix::identity(field, a.dim());

    let basis_i: Vec<QuotientBasis<F>> = (0..=q_max + 1).map(|q| hi.cohomology_basis(q)).collect();
    let basis_a: Vec<QuotientBasis<F>> = (0..=q_max).map(|q| ha.cohomology_basis(q)).collect();
    let basis_b: Vec<QuotientBasis<F>> = (0..=q_max).map(|q| hb.cohomology_basis(q)).collect();

    // maps[k] goes from node k to node k + 1; nodes are I^0, A^0, B^0, I^1, ...
    let mut maps: Vec<SparseMatrix<F>> = Vec::new();
    for q in 0..=q_max {
        let iota = hi.space().transfer(ha.space(), &id_a, &incl, q);
        maps.push(map_on_cohomology(&iota, &basis_i[q], &basis_a[q])?);
        let proj = ha.space().transfer(hb.space(), &id_a, pi.matrix(), q);
        maps.push(map_on_cohomology(&proj, &basis_a[q], &basis_b[q])?);
        // δ[z] = [ι^{-1} d s z]
        let lift = hb.space().transfer(ha.space(), &id_a, &section, q);
        let back = ha.space().transfer(hi.space(), &id_a, &coords, q + 1);
        let d = &ha.complex().diffs()[q];
        let delta = back.mul(&d.mul(&lift)?)?;
        let check = hi.space().transfer(ha.space(), &id_a, &incl, q + 1).mul(&delta)?;
        for z in basis_b[q].representatives() {
            if check.apply(z) != d.apply(&lift.apply(z)) {
                return Err(Error::NotACocycle("coboundary of a lift does not lie in C(A, I)".into()));
            }
        }
        maps.push(map_on_cohomology(&delta, &basis_b[q], &basis_i[q + 1])?);
    }

    let dims: Vec<usize> = maps.iter().map(|m| m.cols()).collect();
    let ranks: Vec<usize> = maps.iter().map(rank).collect();
    let labels = ["HH(A,I)", "HH(A,A)", "HH(A,B)"];
    let nodes: Vec<LesNode> = (0..maps.len())
        .map(|k| {
            let image_in = if k == 0 { 0 } else { ranks[k - 1] };
            let kernel_out = dims[k] - ranks[k];
            LesNode {
                label: labels[k % 3].to_string(),
                degree: k / 3,
                dim: dims[k],
                image_in,
                kernel_out,
                exact: image_in == kernel_out,
            }
        })
        .collect();

    let hbb = HochschildComplex::new(&b, &diagonal_bimodule(&b), q_max, normalized)?;
    let hh_quotient = hbb.cohomology_dims();
    let restriction_iso = (0..=q_max)
        .map(|q| -> Result<bool> {
            let restrict = hbb.space().transfer(hb.space(), pi.matrix(), &SparseMatrix::identity(field, b.dim()), q);
            let r = map_on_cohomology(&restrict, &hbb.cohomology_basis(q), &basis_b[q])?;
            Ok(r.rows() == r.cols() && rank(&r) == r.cols())
        })
        .collect::<Result<Vec<_>>>()?;
    let exact = nodes.iter().all(|n| n.exact) && restriction_iso.iter().all(|&x| x);
    Ok(LesReport { q_max, nodes, hh_quotient, restriction_iso, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{incidence_algebra, kernel_ideal, restriction_morphism, truncated_polynomial_algebra};
    use crate::exactla::Fp;
    use crate::fincat::FinPoset;

    #[test]
    fn identity_induces_identity() {
        let f = Fp::new(3).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        for q in 0..=2 {
            let m = hh_induced_map(&AlgebraMorphism::identity(&a), q, true).unwrap();
            assert_eq!(m, SparseMatrix::identity(&f, m.cols()));
        }
    }

    #[test]
    fn les_of_chain() {
        let f = Fp::new(2).unwrap();
        let p = FinPoset::chain(1);
        let r = restriction_morphism(&p, &p.subposet(&[0]), &f).unwrap();
        let a = incidence_algebra(&p, &f);
        let report = hh_les(&a, &kernel_ideal(&r), 2).unwrap();
        assert!(report.exact);
        assert_eq!(report.hh_quotient, vec![1, 0, 0]);
    }

    #[test]
    fn les_rejects_non_homological_quotient() {
        let f = Fp::new(3).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        let i = TwoSidedIdeal::new(&a, &[vec![(1, 1)]]).unwrap();
        assert!(matches!(hh_les(&a, &i, 1), Err(Error::NotHomEpi(_))));
    }
}
