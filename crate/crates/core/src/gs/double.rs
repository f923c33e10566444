use std::collections::HashMap;

use rayon::prelude::*;

use crate::alg::restrict_bimodule;
use crate::error::{Error, Result};
use crate::exactla::{CochainComplexRep, Field, SparseMatrix, TripletBuilder};
use crate::fincat::NerveChains;
use crate::gs::presheaf::{AlgebraPresheaf, BimodulePresheaf};
use crate::hochschild::{CochainSpace, HochschildComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GsOptions {
    /// Use identity-free chains only.
    pub normalized_nerve: bool,
    /// Use cochains on `A / k·1`.
    pub normalized_cochains: bool,
}

impl Default for GsOptions {
    fn default() -> Self {
        GsOptions { normalized_nerve: true, normalized_cochains: true }
    }
}

/// The double complex `C^{p,q} = ∏_σ C^q(A(max σ), M(min σ))` over nerve
/// chains `σ = (c_0 -> ... -> c_p)`.
///
/// Cells exist for `p <= p_top` and `q <= q_max + 1`. The horizontal
/// differential is the simplicial one; the vertical differential on column
/// `p` is `(-1)^p d_HH`, so the two anticommute and their sum is the total
/// differential.
#[derive(Clone, Debug)]
pub struct GSDoubleComplex<F: Field> {
    field: F,
    options: GsOptions,
    p_max: usize,
    q_max: usize,
    /// Whether the nerve has no chains above `p_max`.
    complete: bool,
    nerve: NerveChains,
    /// One Hochschild complex per base morphism, used for the chains whose
    /// composite is that morphism.
    blocks: Vec<HochschildComplex<F>>,
    /// `offsets[p][q][k]`: start of the block of chain `k` in cell `(p, q)`.
    offsets: Vec<Vec<Vec<usize>>>,
    /// `horizontal[p][q]: C^{p,q} -> C^{p+1,q}`.
    horizontal: Vec<Vec<SparseMatrix<F>>>,
    /// `vertical[p][q]: C^{p,q} -> C^{p,q+1}` for `q <= q_max`.
    vertical: Vec<Vec<SparseMatrix<F>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Face {
    /// Postcompose with `M(f)` for the first arrow `f`.
    Bottom(usize),
    /// Precompose with `A(g)` for the last arrow `g`.
    Top(usize),
}

pub fn gs_double_complex<F: Field>(
    a: &AlgebraPresheaf<F>,
    m: &BimodulePresheaf<F>,
    p_max: usize,
    q_max: usize,
) -> Result<GSDoubleComplex<F>> {
    gs_double_complex_with(a, m, p_max, q_max, GsOptions::default())
}

pub fn gs_double_complex_with<F: Field>(
    a: &AlgebraPresheaf<F>,
    m: &BimodulePresheaf<F>,
    p_max: usize,
    q_max: usize,
    options: GsOptions,
) -> Result<GSDoubleComplex<F>> {
    let base = a.base();
    if base != m.base() {
        return Err(Error::BaseMismatch);
    }
    for c in 0..base.object_count() {
        if m.module(c).algebra() != a.algebra(c) {
            return Err(Error::BaseMismatch);
        }
    }
    base.check_loop_free()?;
    let field = a.field().clone();
    let nerve = NerveChains::new(base, p_max + 1, options.normalized_nerve);
    let complete = nerve.top_degree() <= p_max;
    let p_top = nerve.top_degree().min(p_max);
    let q_cells = q_max + 1;

    let blocks: Vec<HochschildComplex<F>> = (0..base.morphism_count())
        .into_par_iter()
        .map(|h| {
            let module = restrict_bimodule(m.module(base.source(h)), a.map(h))?;
            Ok(HochschildComplex::from_space(CochainSpace::new(&module, options.normalized_cochains), q_max))
        })
        .collect::<Result<_>>()?;
    let block_of = |p: usize, k: usize| &blocks[nerve.composite(p, k)];

    let offsets: Vec<Vec<Vec<usize>>> = (0..=p_top)
        .map(|p| {
            (0..=q_cells)
                .map(|q| {
                    let mut acc = 0;
                    let mut v: Vec<usize> = (0..nerve.count(p))
                        .map(|k| {
                            let o = acc;
                            acc += block_of(p, k).space().dim(q);
                            o
                        })
                        .collect();
                    v.push(acc);
                    v
                })
                .collect()
        })
        .collect();

    // Transfer matrices for outer faces, keyed by (face, face composite, chain composite, q).
    let mut keys: Vec<(Face, usize, usize, usize)> = Vec::new();
    for p in 1..=p_top {
        for (k, ch) in nerve.chains(p).iter().enumerate() {
            let comp = nerve.composite(p, k);
            for r in [0, p] {
                let Some(s) = nerve.face(p, k, r) else { continue };
                let face = if r == 0 { Face::Bottom(ch.arrows[0]) } else { Face::Top(ch.arrows[p - 1]) };
                for q in 0..=q_cells {
                    keys.push((face, nerve.composite(p - 1, s), comp, q));
                }
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let transfers: HashMap<(Face, usize, usize, usize), SparseMatrix<F>> = keys
        .par_iter()
        .map(|&(face, s, c, q)| {
            let (from, to) = (blocks[s].space(), blocks[c].space());
            let mat = match face {
                Face::Bottom(f) => {
                    let phi = SparseMatrix::identity(&field, from.algebra().dim());
                    from.transfer(to, &phi, m.map(f), q)
                }
                Face::Top(g) => {
                    let t = SparseMatrix::identity(&field, from.module().dim());
                    from.transfer(to, a.map(g).matrix(), &t, q)
                }
            };
            ((face, s, c, q), mat)
        })
        .collect();

    let one = field.one();
    let minus = field.neg(&one);
    let horizontal: Vec<Vec<SparseMatrix<F>>> = (0..p_top)
        .map(|p| {
            (0..=q_cells)
                .into_par_iter()
                .map(|q| {
                    let (rows, cols) = (*offsets[p + 1][q].last().unwrap(), *offsets[p][q].last().unwrap());
                    let mut b = TripletBuilder::new(&field, rows, cols);
                    for (k, ch) in nerve.chains(p + 1).iter().enumerate() {
                        let comp = nerve.composite(p + 1, k);
                        let r0 = offsets[p + 1][q][k];
                        for r in 0..=p + 1 {
                            let Some(s) = nerve.face(p + 1, k, r) else { continue };
                            let c0 = offsets[p][q][s];
                            let sign = if r % 2 == 0 { &one } else { &minus };
                            if r == 0 || r == p + 1 {
                                let face = if r == 0 { Face::Bottom(ch.arrows[0]) } else { Face::Top(ch.arrows[p]) };
                                let key = (face, nerve.composite(p, s), comp, q);
                                b.add_block(r0, c0, sign, &transfers[&key]);
                            } else {
                                let dim = blocks[comp].space().dim(q);
                                b.add_block(r0, c0, sign, &SparseMatrix::identity(&field, dim));
                            }
                        }
                    }
                    b.build()
                })
                .collect()
        })
        .collect();

    let vertical: Vec<Vec<SparseMatrix<F>>> = (0..=p_top)
        .map(|p| {
            let sign = if p % 2 == 0 { &one } else { &minus };
            (0..=q_max)
                .into_par_iter()
                .map(|q| {
                    let parts: Vec<SparseMatrix<F>> = (0..nerve.count(p))
                        .map(|k| block_of(p, k).complex().diffs()[q].scaled(sign))
                        .collect();
                    SparseMatrix::block_diagonal(&field, &parts)
                })
                .collect()
        })
        .collect();

    let d = GSDoubleComplex {
        field,
        options,
        p_max,
        q_max,
        complete,
        nerve,
        blocks,
        offsets,
        horizontal,
        vertical,
    };
    d.check_identities()?;
    Ok(d)
}

impl<F: Field> GSDoubleComplex<F> {
    fn check_identities(&self) -> Result<()> {
        let p_top = self.p_top();
        let mut checks: Vec<(usize, usize, u8)> = Vec::new();
        for p in 0..=p_top {
            for q in 0..=self.q_max + 1 {
                checks.push((p, q, 0));
                checks.push((p, q, 1));
                checks.push((p, q, 2));
            }
        }
        let bad = checks.par_iter().find_first(|&&(p, q, kind)| {
            let zero = |m: Result<SparseMatrix<F>>| m.map(|x| x.is_zero()).unwrap_or(false);
            match kind {
                0 if p + 2 <= p_top => !zero(self.horizontal[p + 1][q].mul(&self.horizontal[p][q])),
                1 if q < self.q_max => !zero(self.vertical[p][q + 1].mul(&self.vertical[p][q])),
                2 if p < p_top && q <= self.q_max => {
                    let a = self.horizontal[p][q + 1].mul(&self.vertical[p][q]);
                    let b = self.vertical[p + 1][q].mul(&self.horizontal[p][q]);
                    match (a, b) {
                        (Ok(a), Ok(b)) => !a.add(&b).map(|s| s.is_zero()).unwrap_or(false),
                        _ => true,
                    }
                }
                _ => false,
            }
        });
        match bad {
            None => Ok(()),
            Some(&(p, q, kind)) => Err(Error::InvalidComplex(format!(
                "{} fails at cell ({p},{q})",
                ["d_simp squared", "d_HH squared", "anticommutation"][kind as usize]
            ))),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn options(&self) -> GsOptions {
        self.options
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn q_max(&self) -> usize {
        self.q_max
    }

    /// Highest column with a cell.
    pub fn p_top(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Whether every nerve chain is represented, so the columns are exact.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn nerve(&self) -> &NerveChains {
        &self.nerve
    }

    /// The Hochschild complex used for chains with composite `morphism`.
    pub fn block(&self, morphism: usize) -> &HochschildComplex<F> {
        &self.blocks[morphism]
    }

    /// Start of each chain's block in cell `(p, q)`, with the total at the end.
    pub fn offsets(&self, p: usize, q: usize) -> &[usize] {
        &self.offsets[p][q]
    }

    /// `dim C^{p,q}`, zero outside the stored range.
    pub fn cell_dim(&self, p: usize, q: usize) -> usize {
        self.offsets.get(p).and_then(|v| v.get(q)).map(|o| *o.last().unwrap()).unwrap_or(0)
    }

    /// `d_simp: C^{p,q} -> C^{p+1,q}`, or `None` past the last column.
    pub fn horizontal(&self, p: usize, q: usize) -> Option<&SparseMatrix<F>> {
        self.horizontal.get(p).and_then(|v| v.get(q))
    }

    /// `(-1)^p d_HH: C^{p,q} -> C^{p,q+1}` for `q <= q_max`.
    pub fn vertical(&self, p: usize, q: usize) -> Option<&SparseMatrix<F>> {
        self.vertical.get(p).and_then(|v| v.get(q))
    }

    /// The total complex in degrees `0..=n_max`, with the outgoing
    /// differential of degree `n_max`.
    pub fn total_complex(&self, n_max: usize) -> Result<CochainComplexRep<F>> {
        if n_max > self.q_max {
            return Err(Error::InsufficientQRange { q_max: self.q_max, n_max });
        }
        if !self.complete && n_max + 1 > self.p_max {
            return Err(Error::InsufficientPRange { p_max: self.p_max, n_max });
        }
        let p_top = self.p_top();
        let layout = |n: usize| -> Vec<(usize, usize)> {
            // (p, offset) for the summands C^{p, n-p}
            let mut acc = 0;
            (0..=n.min(p_top))
                .map(|p| {
                    let o = acc;
                    acc += self.cell_dim(p, n - p);
                    (p, o)
                })
                .collect()
        };
        let dim = |n: usize| (0..=n.min(p_top)).map(|p| self.cell_dim(p, n - p)).sum::<usize>();
        let diffs: Vec<SparseMatrix<F>> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                let src = layout(n);
                let dst: HashMap<usize, usize> = layout(n + 1).into_iter().collect();
                let mut b = TripletBuilder::new(&self.field, dim(n + 1), dim(n));
                let one = self.field.one();
                for &(p, c0) in &src {
                    let q = n - p;
                    if let Some(h) = self.horizontal(p, q) {
                        b.add_block(dst[&(p + 1)], c0, &one, h);
                    }
                    b.add_block(dst[&p], c0, &one, &self.vertical[p][q]);
                }
                b.build()
            })
            .collect();
        CochainComplexRep::new(&self.field, (0..=n_max).map(dim).collect(), diffs)
    }
}

/// `dim HH^n_GS(A, M)` for `n <= n_max`, from the total complex.
pub fn gs_cohomology<F: Field>(d: &GSDoubleComplex<F>, n_max: usize) -> Result<Vec<usize>> {
    Ok(d.total_complex(n_max)?.cohomology_dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{matrix_algebra, truncated_polynomial_algebra};
    use crate::exactla::Fp;
    use crate::fincat::{poset_to_category, FinCategory, FinPoset};
    use crate::gs::pages::{ss_consistency, ss_pages};

    fn square(with_top: bool) -> FinPoset {
        let p = FinPoset::from_covers(&["1", "2", "3", "4"], &[("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")]).unwrap();
        if with_top {
            p.with_top("5").unwrap()
        } else {
            p
        }
    }

    fn constant_gs(base: FinCategory, n: usize) -> Vec<usize> {
        let f = Fp::new(2).unwrap();
        let a = AlgebraPresheaf::constant(base, &truncated_polynomial_algebra(&f, 1));
        let m = BimodulePresheaf::diagonal(&a);
        let d = gs_double_complex(&a, &m, 4, n).unwrap();
        gs_cohomology(&d, n).unwrap()
    }

    #[test]
    fn square_poset() {
        assert_eq!(constant_gs(poset_to_category(&square(false)), 3), vec![1, 1, 0, 0]);
        assert_eq!(constant_gs(poset_to_category(&square(true)), 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn one_object_is_hochschild() {
        let f = Fp::new(5).unwrap();
        let a = AlgebraPresheaf::constant(FinCategory::point(), &matrix_algebra(&f, 2));
        let m = BimodulePresheaf::diagonal(&a);
        let d = gs_double_complex(&a, &m, 0, 2).unwrap();
        assert_eq!(gs_cohomology(&d, 2).unwrap(), vec![1, 0, 0]);
        let (_, _, e2) = ss_pages(&d).unwrap();
        assert_eq!(e2.dims, vec![vec![1, 0, 0]]);
    }

    #[test]
    fn augmentation_over_interval() {
        let f = Fp::new(3).unwrap();
        let base = poset_to_category(&FinPoset::chain(1));
        let arrow = base.morphism_index("0->1").unwrap();
        let algebras = vec![truncated_polynomial_algebra(&f, 1), truncated_polynomial_algebra(&f, 2)];
        let a = AlgebraPresheaf::new(base, algebras, HashMap::from([(arrow, crate::alg::augmentation(&f, 2))])).unwrap();
        let m = BimodulePresheaf::diagonal(&a);
        let d = gs_double_complex(&a, &m, 1, 2).unwrap();
        let gs = gs_cohomology(&d, 2).unwrap();
        let (_, _, e2) = ss_pages(&d).unwrap();
        ss_consistency(&e2, &gs).unwrap();
        let un = gs_double_complex_with(&a, &m, 4, 2, GsOptions { normalized_nerve: false, normalized_cochains: true })
            .unwrap();
        assert_eq!(gs_cohomology(&un, 2).unwrap(), gs);
    }
}
