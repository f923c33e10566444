//! Bounded cochain complexes of finite-dimensional vector spaces.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::echelon::{kernel_basis, rank, QuotientBasis};
use crate::exactla::field::Field;
use crate::exactla::sparse::{SparseMatrix, SparseVec};

/// `C^0 -> C^1 -> ... -> C^N` with `diffs[n]: C^n -> C^{n+1}`.
///
/// There may be one fewer differential than spaces (the top space maps to
/// zero) or as many (the last differential leaves the complex, and is used
/// only to compute the kernel in the top degree).
#[derive(Clone, Debug)]
pub struct CochainComplexRep<F: Field> {
    field: F,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix<F>>,
}

impl<F: Field> CochainComplexRep<F> {
    /// Validates shapes and `d^{n+1} d^n = 0`.
    pub fn new(field: &F, dims: Vec<usize>, diffs: Vec<SparseMatrix<F>>) -> Result<Self> {
        if diffs.len() > dims.len() || diffs.len() + 1 < dims.len() {
            return Err(Error::Shape(format!("{} spaces but {} differentials", dims.len(), diffs.len())));
        }
        for (n, d) in diffs.iter().enumerate() {
            let target = if n + 1 < dims.len() { Some(dims[n + 1]) } else { None };
            if d.cols() != dims[n] || target.is_some_and(|t| d.rows() != t) {
                return Err(Error::Shape(format!(
                    "d^{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    target.unwrap_or(d.rows()),
                    dims[n]
                )));
            }
        }
        let bad = diffs
            .par_windows(2)
            .enumerate()
            .find_first(|(_, w)| !w[1].mul(&w[0]).map(|p| p.is_zero()).unwrap_or(false));
        if let Some((n, _)) = bad {
            return Err(Error::ComposabilityViolation { degree: n });
        }
        Ok(CochainComplexRep { field: field.clone(), dims, diffs })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn diffs(&self) -> &[SparseMatrix<F>] {
        &self.diffs
    }
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Ranks of all differentials, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.diffs.par_iter().map(rank).collect()
    }

    /// `dim H^n` for every degree. Degrees without an outgoing differential
    /// are treated as mapping to zero.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|n| {
                let out = ranks.get(n).copied().unwrap_or(0);
                let inc = if n == 0 { 0 } else { ranks.get(n - 1).copied().unwrap_or(0) };
                self.dims[n] - out - inc
            })
            .collect()
    }

    /// Representative cocycles for `H^n`: reduced kernel basis vectors of
    /// `d^n`, kept in order when independent modulo coboundaries.
    pub fn cohomology_basis(&self, n: usize) -> QuotientBasis<F> {
        let dim = self.dims[n];
        let cocycles: Vec<SparseVec<F::Elem>> = match self.diffs.get(n) {
            Some(d) => kernel_basis(d),
            None => (0..dim).map(|i| vec![(i, self.field.one())]).collect(),
        };
        let boundaries: Vec<SparseVec<F::Elem>> = if n == 0 {
            Vec::new()
        } else {
            self.diffs[n - 1].columns().to_vec()
        };
        QuotientBasis::new(&self.field, dim, &boundaries, &cocycles)
    }
}

/// `dim H^n` for each degree of a complex.
pub fn cohomology_dims<F: Field>(c: &CochainComplexRep<F>) -> Vec<usize> {
    c.cohomology_dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Fp;

    #[test]
    fn trivial_complexes() {
        let f = Fp::new(5).unwrap();
        let c = CochainComplexRep::new(&f, vec![1], vec![]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![1]);
        let c = CochainComplexRep::new(&f, vec![1, 1], vec![SparseMatrix::identity(&f, 1)]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![0, 0]);
    }

    #[test]
    fn composability_is_checked() {
        let f = Fp::new(5).unwrap();
        let id = SparseMatrix::identity(&f, 1);
        let err = CochainComplexRep::new(&f, vec![1, 1, 1], vec![id.clone(), id]).unwrap_err();
        assert_eq!(err, Error::ComposabilityViolation { degree: 0 });
    }

    #[test]
    fn triangle_boundary_over_gf2() {
        // vertices a,b,c; edges ab, ac, bc; (d f)(uv) = f(v) - f(u)
        let f = Fp::new(2).unwrap();
        let d0 = SparseMatrix::from_i64_rows(&f, &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let c = CochainComplexRep::new(&f, vec![3, 3], vec![d0]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![1, 1]);
        assert_eq!(c.cohomology_basis(1).dim(), 1);
    }
}
