use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::{CochainComplexRep, Field, SparseMatrix, TripletBuilder};
use crate::fincat::{twisted_arrow, FinCategory, NerveChains, TwMorphism, TwistedArrowCat};

/// A functor from the twisted arrow category of the base to vector spaces:
/// a space `F(f)` per base morphism and a matrix `F(f) -> F(α f β)` per
/// square `(α, β)`.
#[derive(Clone, Debug)]
pub struct NaturalSystem<F: Field> {
    field: F,
    base: FinCategory,
    tw: TwistedArrowCat,
    index: HashMap<TwMorphism, usize>,
    dims: Vec<usize>,
    actions: Vec<SparseMatrix<F>>,
}

impl<F: Field> NaturalSystem<F> {
    /// `actions` is indexed like the morphisms of `twisted_arrow(base)`.
    /// Functoriality is checked on all composable pairs.
    pub fn new(field: &F, base: &FinCategory, dims: Vec<usize>, actions: Vec<SparseMatrix<F>>) -> Result<Self> {
        let tw = twisted_arrow(base);
        let squares = tw.squares();
        if dims.len() != base.morphism_count() || actions.len() != squares.len() {
            return Err(Error::FunctorialityViolation("natural system has the wrong shape".into()));
        }
        for (k, (sq, m)) in squares.iter().zip(&actions).enumerate() {
            if m.cols() != dims[sq.from] || m.rows() != dims[sq.to] {
                return Err(Error::FunctorialityViolation(format!(
                    "action of `{}` has the wrong shape",
                    tw.category().morphisms()[k].name
                )));
            }
        }
        let index = squares.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let system = NaturalSystem { field: field.clone(), base: base.clone(), tw, index, dims, actions };
        system.check_functorial()?;
        Ok(system)
    }

    /// Builds all actions from the elementary ones: `push(α, h)` is
    /// `F(h) -> F(α h)` and `pull(β, f)` is `F(f) -> F(f β)`; the square
    /// `(α, β)` acts by `push(α, f β) · pull(β, f)`.
    pub fn generate(
        field: &F,
        base: &FinCategory,
        dims: Vec<usize>,
        push: impl Fn(usize, usize) -> Result<SparseMatrix<F>> + Sync,
        pull: impl Fn(usize, usize) -> Result<SparseMatrix<F>> + Sync,
    ) -> Result<Self> {
        let tw = twisted_arrow(base);
        let actions = tw
            .squares()
            .par_iter()
            .map(|sq| {
                let fb = base.compose(sq.from, sq.beta).expect("composable");
                push(sq.alpha, fb)?.mul(&pull(sq.beta, sq.from)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, base, dims, actions)
    }

    /// The system with the same space `k^dim` everywhere and identity actions.
    pub fn constant(field: &F, base: &FinCategory, dim: usize) -> Self {
        let tw = twisted_arrow(base);
        let actions = vec![SparseMatrix::identity(field, dim); tw.squares().len()];
        let index = tw.squares().iter().enumerate().map(|(i, &s)| (s, i)).collect();
        NaturalSystem {
            field: field.clone(),
            base: base.clone(),
            tw,
            index,
            dims: vec![dim; base.morphism_count()],
            actions,
        }
    }

    fn check_functorial(&self) -> Result<()> {
        let twc = self.tw.category();
        let n = twc.morphism_count();
        for f in 0..self.base.morphism_count() {
            let id = twc.identity(f);
            if self.actions[id] != SparseMatrix::identity(&self.field, self.dims[f]) {
                return Err(Error::FunctorialityViolation(format!(
                    "identity square on `{}` acts nontrivially",
                    self.base.morphisms()[f].name
                )));
            }
        }
        let pairs: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|g| (0..n).filter_map(move |f| twc.compose(g, f).map(|h| (g, f, h)))).collect();
        let bad = pairs.par_iter().find_any(|&&(g, f, h)| {
            self.actions[g].mul(&self.actions[f]).map(|p| p != self.actions[h]).unwrap_or(true)
        });
        match bad {
            Some(&(g, f, _)) => Err(Error::FunctorialityViolation(format!(
                "actions do not compose for `{}` after `{}`",
                twc.morphisms()[g].name,
                twc.morphisms()[f].name
            ))),
            None => Ok(()),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn twisted(&self) -> &TwistedArrowCat {
        &self.tw
    }

    /// `dim F(f)`.
    pub fn dim(&self, morphism: usize) -> usize {
        self.dims[morphism]
    }

    pub fn action(&self, square: usize) -> &SparseMatrix<F> {
        &self.actions[square]
    }

    /// `F(f) -> F(α f)`.
    pub fn push(&self, alpha: usize, f: usize) -> &SparseMatrix<F> {
        let b = &self.base;
        let to = b.compose(alpha, f).expect("composable");
        let sq = TwMorphism { from: f, to, alpha, beta: b.identity(b.source(f)) };
        &self.actions[self.index[&sq]]
    }

    /// `F(f) -> F(f β)`.
    pub fn pull(&self, beta: usize, f: usize) -> &SparseMatrix<F> {
        let b = &self.base;
        let to = b.compose(f, beta).expect("composable");
        let sq = TwMorphism { from: f, to, alpha: b.identity(b.target(f)), beta };
        &self.actions[self.index[&sq]]
    }
}

/// Offsets of the per-chain blocks in degree `n`, with the total at the end.
fn chain_offsets(nerve: &NerveChains, n: usize, dim: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut acc = 0;
    let mut v: Vec<usize> = (0..nerve.count(n))
        .map(|k| {
            let o = acc;
            acc += dim(k);
            o
        })
        .collect();
    v.push(acc);
    v
}

/// The coboundary `C^n_BW -> C^{n+1}_BW`.
///
/// Chains are written `c_0 -> ... -> c_n` with arrows `g_1, ..., g_n`, and a
/// cochain takes its value at a chain in `F(g_n ... g_1)`. Then
/// `(δu)(g_1, ..., g_{n+1}) = g_{n+1*} u(g_1, ..., g_n)
///   + Σ_{i=1}^{n} (-1)^i u(..., g_{n+2-i} g_{n+1-i}, ...)
///   + (-1)^{n+1} g_1^* u(g_2, ..., g_{n+1})`.
pub fn bw_differential<F: Field>(f: &NaturalSystem<F>, nerve: &NerveChains, n: usize) -> SparseMatrix<F> {
    let field = f.field();
    let src = chain_offsets(nerve, n, |k| f.dim(nerve.composite(n, k)));
    let dst = chain_offsets(nerve, n + 1, |k| f.dim(nerve.composite(n + 1, k)));
    let mut b = TripletBuilder::new(field, *dst.last().unwrap(), *src.last().unwrap());
    let one = field.one();
    let minus = field.neg(&one);
    for (k, ch) in nerve.chains(n + 1).iter().enumerate() {
        let r0 = dst[k];
        for r in 0..=n + 1 {
            let Some(s) = nerve.face(n + 1, k, r) else { continue };
            // dropping object r carries sign (-1)^{n+1-r}
            let sign = if (n + 1 - r).is_multiple_of(2) { &one } else { &minus };
            let c0 = src[s];
            let face_comp = nerve.composite(n, s);
            if r == n + 1 {
                b.add_block(r0, c0, sign, f.push(ch.arrows[n], face_comp));
            } else if r == 0 {
                b.add_block(r0, c0, sign, f.pull(ch.arrows[0], face_comp));
            } else {
                b.add_block(r0, c0, sign, &SparseMatrix::identity(field, f.dim(face_comp)));
            }
        }
    }
    b.build()
}

/// `dim H^n_BW(C, F)` for `n <= n_max`, over identity-free chains.
pub fn bw_cohomology<F: Field>(f: &NaturalSystem<F>, n_max: usize) -> Result<Vec<usize>> {
    f.base().check_loop_free()?;
    let nerve = NerveChains::new(f.base(), n_max + 1, true);
    let diffs: Vec<SparseMatrix<F>> = (0..=n_max).into_par_iter().map(|n| bw_differential(f, &nerve, n)).collect();
    let dims = (0..=n_max).map(|n| (0..nerve.count(n)).map(|k| f.dim(nerve.composite(n, k))).sum()).collect();
    Ok(CochainComplexRep::new(f.field(), dims, diffs)?.cohomology_dims())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A functor from the base to vector spaces. For a covariant functor the
/// matrix of `c -> d` maps `F(c) -> F(d)`; for a contravariant one it maps
/// `F(d) -> F(c)`.
#[derive(Clone, Debug)]
pub struct FunctorRep<F: Field> {
    field: F,
    base: FinCategory,
    variance: Variance,
    dims: Vec<usize>,
    maps: Vec<SparseMatrix<F>>,
}

impl<F: Field> FunctorRep<F> {
    pub fn new(
        field: &F,
        base: &FinCategory,
        variance: Variance,
        dims: Vec<usize>,
        maps: Vec<SparseMatrix<F>>,
    ) -> Result<Self> {
        if dims.len() != base.object_count() || maps.len() != base.morphism_count() {
            return Err(Error::FunctorialityViolation("functor has the wrong shape".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            let (c, d) = (base.source(k), base.target(k));
            let (from, to) = match variance {
                Variance::Covariant => (c, d),
                Variance::Contravariant => (d, c),
            };
            let name = &base.morphisms()[k].name;
            if m.cols() != dims[from] || m.rows() != dims[to] {
                return Err(Error::FunctorialityViolation(format!("matrix of `{name}` has the wrong shape")));
            }
            if base.is_identity(k) && *m != SparseMatrix::identity(field, dims[c]) {
                return Err(Error::FunctorialityViolation(format!("`{name}` is not sent to the identity")));
            }
        }
        let n = base.morphism_count();
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = base.compose(g, f) {
                    let prod = match variance {
                        Variance::Covariant => maps[g].mul(&maps[f])?,
                        Variance::Contravariant => maps[f].mul(&maps[g])?,
                    };
                    if prod != maps[h] {
                        return Err(Error::FunctorialityViolation(format!(
                            "functor does not preserve `{}` after `{}`",
                            base.morphisms()[g].name,
                            base.morphisms()[f].name
                        )));
                    }
                }
            }
        }
        Ok(FunctorRep { field: field.clone(), base: base.clone(), variance, dims, maps })
    }

    pub fn constant(field: &F, base: &FinCategory, variance: Variance, dim: usize) -> Self {
        FunctorRep {
            field: field.clone(),
            base: base.clone(),
            variance,
            dims: vec![dim; base.object_count()],
            maps: vec![SparseMatrix::identity(field, dim); base.morphism_count()],
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn dim(&self, object: usize) -> usize {
        self.dims[object]
    }

    pub fn map(&self, morphism: usize) -> &SparseMatrix<F> {
        &self.maps[morphism]
    }
}

/// `dim lim^n F` for `n <= n_max` from the Roos complex over identity-free
/// chains `c_0 -> ... -> c_n`, valued in `F(c_n)` (covariant) or `F(c_0)`
/// (contravariant).
pub fn roos_cohomology<F: Field>(f: &FunctorRep<F>, n_max: usize) -> Result<Vec<usize>> {
    f.base.check_loop_free()?;
    let nerve = NerveChains::new(&f.base, n_max + 1, true);
    let field = &f.field;
    let value = |n: usize, k: usize| {
        let ch = &nerve.chains(n)[k];
        match f.variance {
            Variance::Covariant => ch.max(),
            Variance::Contravariant => ch.min(),
        }
    };
    let diffs: Vec<SparseMatrix<F>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let src = chain_offsets(&nerve, n, |k| f.dims[value(n, k)]);
            let dst = chain_offsets(&nerve, n + 1, |k| f.dims[value(n + 1, k)]);
            let mut b = TripletBuilder::new(field, *dst.last().unwrap(), *src.last().unwrap());
            let one = field.one();
            let minus = field.neg(&one);
            for (k, ch) in nerve.chains(n + 1).iter().enumerate() {
                for r in 0..=n + 1 {
                    let Some(s) = nerve.face(n + 1, k, r) else { continue };
                    let sign = if r % 2 == 0 { &one } else { &minus };
                    let block = match (f.variance, r) {
                        (Variance::Covariant, r) if r == n + 1 => f.maps[ch.arrows[n]].clone(),
                        (Variance::Contravariant, 0) => f.maps[ch.arrows[0]].clone(),
                        _ => SparseMatrix::identity(field, f.dims[value(n, s)]),
                    };
                    b.add_block(dst[k], src[s], sign, &block);
                }
            }
            b.build()
        })
        .collect();
    let dims = (0..=n_max).map(|n| (0..nerve.count(n)).map(|k| f.dims[value(n, k)]).sum()).collect();
    Ok(CochainComplexRep::new(field, dims, diffs)?.cohomology_dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::fincat::{poset_to_category, FinPoset};

    fn square() -> FinCategory {
        let p = FinPoset::from_covers(&["1", "2", "3", "4"], &[("1", "3"), ("1", "4"), ("2", "3"), ("2", "4")]).unwrap();
        poset_to_category(&p)
    }

    #[test]
    fn constant_systems() {
        let f = Fp::new(2).unwrap();
        let interval = poset_to_category(&FinPoset::chain(1));
        assert_eq!(bw_cohomology(&NaturalSystem::constant(&f, &interval, 1), 2).unwrap(), vec![1, 0, 0]);
        assert_eq!(bw_cohomology(&NaturalSystem::constant(&f, &square(), 1), 2).unwrap(), vec![1, 1, 0]);
        assert_eq!(bw_cohomology(&NaturalSystem::constant(&f, &FinCategory::point(), 3), 2).unwrap(), vec![3, 0, 0]);
    }

    #[test]
    fn roos_of_constant_functors() {
        let f = Fp::new(3).unwrap();
        for v in [Variance::Covariant, Variance::Contravariant] {
            assert_eq!(roos_cohomology(&FunctorRep::constant(&f, &square(), v, 1), 2).unwrap(), vec![1, 1, 0]);
        }
    }

    #[test]
    fn roos_with_terminal_object() {
        // contravariant on 0 < 1 with F(1) = k^2 -> F(0) = k the first projection
        let f = Fp::new(5).unwrap();
        let base = poset_to_category(&FinPoset::chain(1));
        let arrow = base.morphism_index("0->1").unwrap();
        let mut maps = vec![SparseMatrix::identity(&f, 1), SparseMatrix::identity(&f, 1), SparseMatrix::identity(&f, 2)];
        let id1 = base.identity(1);
        let id0 = base.identity(0);
        maps[id0] = SparseMatrix::identity(&f, 1);
        maps[id1] = SparseMatrix::identity(&f, 2);
        maps[arrow] = SparseMatrix::from_i64_rows(&f, &[vec![1, 0]]).unwrap();
        let func = FunctorRep::new(&f, &base, Variance::Contravariant, vec![1, 2], maps).unwrap();
        assert_eq!(roos_cohomology(&func, 2).unwrap(), vec![2, 0, 0]);
    }
}
