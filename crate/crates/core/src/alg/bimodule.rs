use crate::alg::algebra::{AlgebraMorphism, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::exactla::sparse::{collect_sparse, SparseMatrix, SparseVec};
use crate::exactla::Field;

/// A finite-dimensional bimodule over an algebra.
///
/// `left[i][m]` is `e_i · m_m` and `right[i][m]` is `m_m · e_i`, both in
/// module coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule<F: Field> {
    over: FiniteAlgebra<F>,
    dim: usize,
    left: Vec<Vec<SparseVec<F::Elem>>>,
    right: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> Bimodule<F> {
    /// Validates both associativity laws, the unit laws, and that the two
    /// actions commute.
    pub fn new(
        over: &FiniteAlgebra<F>,
        dim: usize,
        left: Vec<Vec<SparseVec<F::Elem>>>,
        right: Vec<Vec<SparseVec<F::Elem>>>,
    ) -> Result<Self> {
        let f = over.field();
        let n = over.dim();
        let shape_ok = |t: &Vec<Vec<SparseVec<F::Elem>>>| {
            t.len() == n && t.iter().all(|row| row.len() == dim && row.iter().all(|v| v.iter().all(|(k, _)| *k < dim)))
        };
        if !shape_ok(&left) || !shape_ok(&right) {
            return Err(Error::InvalidBimodule("action tables have the wrong shape".into()));
        }
        let canon = |t: Vec<Vec<SparseVec<F::Elem>>>| -> Vec<Vec<SparseVec<F::Elem>>> {
            t.into_iter().map(|row| row.into_iter().map(|v| collect_sparse(f, v)).collect()).collect()
        };
        let m = Bimodule { over: over.clone(), dim, left: canon(left), right: canon(right) };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let f = self.over.field();
        let n = self.over.dim();
        let bad = |what: &str| Err(Error::InvalidBimodule(what.to_string()));
        for x in 0..self.dim {
            let e = vec![(x, f.one())];
            if self.act_left(self.over.unit(), &e) != e || self.act_right(&e, self.over.unit()) != e {
                return bad("unit does not act as the identity");
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.over.basis_product(i, j);
                for x in 0..self.dim {
                    let ex = [(x, f.one())];
                    let a = self.act_left(ij, &ex);
                    let b = self.act_left(&[(i, f.one())], &self.left[j][x]);
                    if a != b {
                        return bad("left action is not associative");
                    }
                    let a = self.act_right(&ex, ij);
                    let b = self.act_right(&self.right[i][x], &[(j, f.one())]);
                    if a != b {
                        return bad("right action is not associative");
                    }
                    let a = self.act_right(&self.left[i][x], &[(j, f.one())]);
                    let b = self.act_left(&[(i, f.one())], &self.right[j][x]);
                    if a != b {
                        return bad("left and right actions do not commute");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &FiniteAlgebra<F> {
        &self.over
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `e_i · m_x`.
    pub fn left_basis(&self, i: usize, x: usize) -> &[(usize, F::Elem)] {
        &self.left[i][x]
    }

    /// `m_x · e_i`.
    pub fn right_basis(&self, i: usize, x: usize) -> &[(usize, F::Elem)] {
        &self.right[i][x]
    }

    /// `a · m`.
    pub fn act_left(&self, a: &[(usize, F::Elem)], m: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.act(&self.left, a, m)
    }

    /// `m · a`.
    pub fn act_right(&self, m: &[(usize, F::Elem)], a: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.act(&self.right, a, m)
    }

    fn act(
        &self,
        table: &[Vec<SparseVec<F::Elem>>],
        a: &[(usize, F::Elem)],
        m: &[(usize, F::Elem)],
    ) -> SparseVec<F::Elem> {
        let f = self.over.field();
        let mut acc = Vec::new();
        for (i, x) in a {
            for (k, y) in m {
                let c = f.mul(x, y);
                for (r, z) in &table[*i][*k] {
                    acc.push((*r, f.mul(&c, z)));
                }
            }
        }
        collect_sparse(f, acc)
    }

    /// Whether `t` (a `target.dim × self.dim` matrix) is a bimodule map.
    pub fn is_bimodule_map(&self, target: &Bimodule<F>, t: &SparseMatrix<F>) -> bool {
        if target.over != self.over || t.rows() != target.dim || t.cols() != self.dim {
            return false;
        }
        let f = self.over.field();
        (0..self.over.dim()).all(|i| {
            let e = [(i, f.one())];
            (0..self.dim).all(|x| {
                t.apply(&self.left[i][x]) == target.act_left(&e, t.column(x))
                    && t.apply(&self.right[i][x]) == target.act_right(t.column(x), &e)
            })
        })
    }
}

/// `A` as a bimodule over itself.
pub fn diagonal_bimodule<F: Field>(a: &FiniteAlgebra<F>) -> Bimodule<F> {
    let n = a.dim();
    let left = (0..n).map(|i| (0..n).map(|x| a.basis_product(i, x).to_vec()).collect()).collect();
    let right = (0..n).map(|i| (0..n).map(|x| a.basis_product(x, i).to_vec()).collect()).collect();
    Bimodule { over: a.clone(), dim: n, left, right }
}

/// The bimodule `B` over `A` through a morphism `f: A -> B`, acting by
/// `a · m · a' = f(a) m f(a')`.
pub fn restrict_bimodule<F: Field>(m: &Bimodule<F>, f: &AlgebraMorphism<F>) -> Result<Bimodule<F>> {
    if f.target() != m.algebra() {
        return Err(Error::InvalidBimodule("morphism target is not the acting algebra".into()));
    }
    let a = f.source();
    let left = (0..a.dim())
        .map(|i| {
            let fi = f.matrix().column(i);
            (0..m.dim()).map(|x| m.act_left(fi, &[(x, a.field().one())])).collect()
        })
        .collect();
    let right = (0..a.dim())
        .map(|i| {
            let fi = f.matrix().column(i);
            (0..m.dim()).map(|x| m.act_right(&[(x, a.field().one())], fi)).collect()
        })
        .collect();
    Ok(Bimodule { over: a.clone(), dim: m.dim(), left, right })
}

/// The ideal as a sub-bimodule of `A`, in the coordinates of its basis.
pub fn ideal_bimodule<F: Field>(ideal: &crate::alg::algebra::TwoSidedIdeal<F>) -> Bimodule<F> {
    use crate::exactla::echelon::Echelon;
    let a = ideal.ambient();
    let f = a.field();
    let mut ech = Echelon::new(f, a.dim());
    for (k, b) in ideal.basis().iter().enumerate() {
        ech.insert_tagged(b, vec![(k, f.one())]);
    }
    let coords = |v: &[(usize, F::Elem)]| {
        let (res, tag) = ech.reduce_tracked(v);
        debug_assert!(res.is_empty());
        tag
    };
    let n = a.dim();
    let left = (0..n)
        .map(|i| ideal.basis().iter().map(|b| coords(&a.mul(&[(i, f.one())], b))).collect())
        .collect();
    let right = (0..n)
        .map(|i| ideal.basis().iter().map(|b| coords(&a.mul(b, &[(i, f.one())]))).collect())
        .collect();
    Bimodule { over: a.clone(), dim: ideal.dim(), left, right }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::algebra::{kernel_ideal, quotient, TwoSidedIdeal};
    use crate::alg::examples::{matrix_algebra, truncated_polynomial_algebra};
    use crate::exactla::Fp;

    #[test]
    fn diagonal_is_valid() {
        let f = Fp::new(5).unwrap();
        let a = matrix_algebra(&f, 2);
        let m = diagonal_bimodule(&a);
        assert_eq!(m.dim(), 4);
        let rebuilt = Bimodule::new(&a, 4, m.left.clone(), m.right.clone()).unwrap();
        assert_eq!(rebuilt, m);
    }

    #[test]
    fn restriction_along_quotient() {
        let f = Fp::new(3).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        let i = TwoSidedIdeal::new(&a, &[vec![(1, 1)]]).unwrap();
        let (k, pi) = quotient(&i);
        let m = restrict_bimodule(&diagonal_bimodule(&k), &pi).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.left_basis(1, 0).is_empty());
        assert_eq!(m.left_basis(0, 0), &[(0, 1)]);
        assert!(Bimodule::new(&a, 1, m.left.clone(), m.right.clone()).is_ok());
        let ib = ideal_bimodule(&kernel_ideal(&pi));
        assert_eq!(ib.dim(), 1);
    }

    #[test]
    fn rejects_noncommuting_actions() {
        let f = Fp::new(5).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        // x sends m0 to m1 on the left and m1 to m0 on the right
        let left = vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![(1, 1)], vec![]]];
        let right = vec![vec![vec![(0, 1)], vec![(1, 1)]], vec![vec![], vec![(0, 1)]]];
        assert!(Bimodule::new(&a, 2, left, right).is_err());
    }
}
