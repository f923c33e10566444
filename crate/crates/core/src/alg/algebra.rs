use crate::error::{Error, Result};
use crate::exactla::echelon::{kernel_basis, rank, Echelon};
use crate::exactla::sparse::{axpy, collect_sparse, SparseMatrix, SparseVec};
use crate::exactla::Field;

/// A finite-dimensional associative unital algebra given by structure
/// constants: `e_i · e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra<F: Field> {
    field: F,
    dim: usize,
    /// `mult[i * dim + j]` is `e_i · e_j`.
    mult: Vec<SparseVec<F::Elem>>,
    unit: SparseVec<F::Elem>,
    labels: Vec<String>,
}

impl<F: Field> FiniteAlgebra<F> {
    /// Validates associativity on all basis triples and the unit laws.
    pub fn new(
        field: &F,
        dim: usize,
        mult: Vec<SparseVec<F::Elem>>,
        unit: SparseVec<F::Elem>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if mult.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!("expected {} products, got {}", dim * dim, mult.len())));
        }
        let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from dimension".into()));
        }
        let mult: Vec<SparseVec<F::Elem>> = mult.into_iter().map(|v| collect_sparse(field, v)).collect();
        let unit = collect_sparse(field, unit);
        if mult.iter().chain([&unit]).any(|v| v.iter().any(|(k, _)| *k >= dim)) {
            return Err(Error::InvalidAlgebra("structure constant index out of range".into()));
        }
        let a = FiniteAlgebra { field: field.clone(), dim, mult, unit, labels };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let e = vec![(i, self.field.one())];
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidAlgebra(format!("unit law fails at {}", self.labels[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul(ij, &[(k, self.field.one())]);
                    let right = self.mul(&[(i, self.field.one())], self.basis_product(j, k));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[(usize, F::Elem)] {
        &self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.mult[i * self.dim + j]
    }

    /// Product of two elements in coordinates.
    pub fn mul(&self, a: &[(usize, F::Elem)], b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: Vec<(usize, F::Elem)> = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let c = f.mul(x, y);
                for (k, z) in self.basis_product(*i, *j) {
                    acc.push((*k, f.mul(&c, z)));
                }
            }
        }
        collect_sparse(f, acc)
    }

    /// Matrix of `x ↦ a · x`.
    pub fn left_mult_matrix(&self, a: &[(usize, F::Elem)]) -> SparseMatrix<F> {
        let cols = (0..self.dim).map(|j| self.mul(a, &[(j, self.field.one())])).collect();
        SparseMatrix::from_columns(&self.field, self.dim, cols).expect("dimensions match")
    }

    /// Matrix of `x ↦ x · a`.
    pub fn right_mult_matrix(&self, a: &[(usize, F::Elem)]) -> SparseMatrix<F> {
        let cols = (0..self.dim).map(|j| self.mul(&[(j, self.field.one())], a)).collect();
        SparseMatrix::from_columns(&self.field, self.dim, cols).expect("dimensions match")
    }

    /// A basis of the center, found by solving `a e_i - e_i a = 0` for all
    /// basis elements.
    pub fn center(&self) -> Vec<SparseVec<F::Elem>> {
        let f = &self.field;
        let n = self.dim;
        // Column j of the stacked matrix is the list of commutators [e_j, e_i].
        let cols: Vec<SparseVec<F::Elem>> = (0..n)
            .map(|j| {
                let mut entries = Vec::new();
                for i in 0..n {
                    let c = axpy(f, &f.neg(&f.one()), self.basis_product(i, j), self.basis_product(j, i));
                    entries.extend(c.into_iter().map(|(k, v)| (i * n + k, v)));
                }
                entries
            })
            .collect();
        let m = SparseMatrix::from_columns(f, n * n, cols).expect("dimensions match");
        kernel_basis(&m)
    }

    /// Whether the vectors span a two-sided ideal.
    pub fn is_two_sided_ideal(&self, basis: &[SparseVec<F::Elem>]) -> bool {
        let mut ech = Echelon::new(&self.field, self.dim);
        for v in basis {
            ech.insert(v);
        }
        basis.iter().all(|v| {
            (0..self.dim).all(|i| {
                let e = [(i, self.field.one())];
                ech.contains(&self.mul(&e, v)) && ech.contains(&self.mul(v, &e))
            })
        })
    }

    /// The product of two algebras, basis `A` then `B`.
    pub fn product(&self, other: &FiniteAlgebra<F>) -> FiniteAlgebra<F> {
        let (n, m) = (self.dim, other.dim);
        let d = n + m;
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                mult[i * d + j] = self.basis_product(i, j).to_vec();
            }
        }
        for i in 0..m {
            for j in 0..m {
                mult[(n + i) * d + n + j] = other.basis_product(i, j).iter().map(|(k, v)| (n + k, v.clone())).collect();
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().map(|(k, v)| (n + k, v.clone())));
        let labels = self.labels.iter().chain(other.labels.iter()).cloned().collect();
        FiniteAlgebra { field: self.field.clone(), dim: d, mult, unit, labels }
    }
}

/// A unital algebra homomorphism `source -> target`, stored as a
/// `target.dim × source.dim` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism<F: Field> {
    source: FiniteAlgebra<F>,
    target: FiniteAlgebra<F>,
    matrix: SparseMatrix<F>,
}

impl<F: Field> AlgebraMorphism<F> {
    /// Validates shape, multiplicativity on basis pairs, and the unit.
    pub fn new(source: &FiniteAlgebra<F>, target: &FiniteAlgebra<F>, matrix: SparseMatrix<F>) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let f = AlgebraMorphism { source: source.clone(), target: target.clone(), matrix };
        if f.apply(source.unit()) != target.unit() {
            return Err(Error::InvalidMorphism("unit is not preserved".into()));
        }
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = f.apply(source.basis_product(i, j));
                let rhs = target.mul(f.matrix.column(i), f.matrix.column(j));
                if lhs != rhs {
                    return Err(Error::InvalidMorphism(format!(
                        "not multiplicative on ({}, {})",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(a: &FiniteAlgebra<F>) -> Self {
        AlgebraMorphism { source: a.clone(), target: a.clone(), matrix: SparseMatrix::identity(a.field(), a.dim()) }
    }

    pub fn source(&self) -> &FiniteAlgebra<F> {
        &self.source
    }

    pub fn target(&self) -> &FiniteAlgebra<F> {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix<F> {
        &self.matrix
    }

    pub fn apply(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.matrix.apply(v)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &AlgebraMorphism<F>) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::InvalidMorphism("composite of non-composable morphisms".into()));
        }
        Ok(AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn is_surjective(&self) -> bool {
        rank(&self.matrix) == self.target.dim()
    }

    pub fn is_injective(&self) -> bool {
        rank(&self.matrix) == self.source.dim()
    }
}

/// A two-sided ideal, stored by a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct TwoSidedIdeal<F: Field> {
    ambient: FiniteAlgebra<F>,
    basis: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> TwoSidedIdeal<F> {
    /// The ideal spanned by the given vectors; fails if the span is not
    /// closed under multiplication on both sides.
    pub fn new(ambient: &FiniteAlgebra<F>, spanning: &[SparseVec<F::Elem>]) -> Result<Self> {
        let mut ech = Echelon::new(ambient.field(), ambient.dim());
        for v in spanning {
            ech.insert(v);
        }
        ech.reduce_fully();
        let mut basis: Vec<SparseVec<F::Elem>> = ech.rows().to_vec();
        basis.sort_by_key(|r| r[0].0);
        if !ambient.is_two_sided_ideal(&basis) {
            return Err(Error::InvalidAlgebra("span is not a two-sided ideal".into()));
        }
        Ok(TwoSidedIdeal { ambient: ambient.clone(), basis })
    }

    pub fn ambient(&self) -> &FiniteAlgebra<F> {
        &self.ambient
    }

    /// Reduced echelon basis, ordered by pivot.
    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Span of all products `x y` with `x, y` in the ideal.
    pub fn square(&self) -> Vec<SparseVec<F::Elem>> {
        let mut ech = Echelon::new(self.ambient.field(), self.ambient.dim());
        for x in &self.basis {
            for y in &self.basis {
                ech.insert(&self.ambient.mul(x, y));
            }
        }
        ech.rows().to_vec()
    }

    /// `I = I²`.
    pub fn is_idempotent(&self) -> bool {
        self.square().len() == self.dim()
    }

    /// The left ideal `A·e`.
    pub fn left_generated_by(&self, e: &[(usize, F::Elem)]) -> Vec<SparseVec<F::Elem>> {
        let a = &self.ambient;
        let mut ech = Echelon::new(a.field(), a.dim());
        for i in 0..a.dim() {
            ech.insert(&a.mul(&[(i, a.field().one())], e));
        }
        ech.rows().to_vec()
    }

    /// Whether `v` lies in the ideal.
    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        let mut ech = Echelon::new(self.ambient.field(), self.ambient.dim());
        for b in &self.basis {
            ech.insert(b);
        }
        ech.contains(v)
    }
}

/// The kernel of a morphism as a two-sided ideal of its source.
pub fn kernel_ideal<F: Field>(f: &AlgebraMorphism<F>) -> TwoSidedIdeal<F> {
    TwoSidedIdeal::new(f.source(), &kernel_basis(f.matrix())).expect("kernels are two-sided ideals")
}

/// `A / I` with its projection. The quotient basis is the set of standard
/// basis vectors of `A` that are not pivots of the ideal's echelon basis.
pub fn quotient<F: Field>(ideal: &TwoSidedIdeal<F>) -> (FiniteAlgebra<F>, AlgebraMorphism<F>) {
    let a = ideal.ambient();
    let f = a.field();
    let n = a.dim();
    let mut is_pivot = vec![false; n];
    for b in ideal.basis() {
        is_pivot[b[0].0] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
    let mut position = vec![usize::MAX; n];
    for (k, &i) in keep.iter().enumerate() {
        position[i] = k;
    }
    let pivot_row: std::collections::HashMap<usize, &SparseVec<F::Elem>> =
        ideal.basis().iter().map(|b| (b[0].0, b)).collect();
    let project = |v: &[(usize, F::Elem)]| -> SparseVec<F::Elem> {
        // Subtract v_p · row_p for each pivot p; rows are fully reduced, so
        // the result lives on the kept coordinates.
        let mut acc: Vec<(usize, F::Elem)> = Vec::new();
        for (i, x) in v {
            if is_pivot[*i] {
                for (j, y) in &pivot_row[i][1..] {
                    acc.push((position[*j], f.neg(&f.mul(x, y))));
                }
            } else {
                acc.push((position[*i], x.clone()));
            }
        }
        collect_sparse(f, acc)
    };
    let m = keep.len();
    let mut mult = Vec::with_capacity(m * m);
    for &i in &keep {
        for &j in &keep {
            mult.push(project(a.basis_product(i, j)));
        }
    }
    let unit = project(a.unit());
    let labels = keep.iter().map(|&i| a.labels()[i].clone()).collect();
    let b = FiniteAlgebra::new(f, m, mult, unit, Some(labels)).expect("quotient by an ideal is an algebra");
    let cols = (0..n).map(|i| project(&[(i, f.one())])).collect();
    let matrix = SparseMatrix::from_columns(f, m, cols).expect("dimensions match");
    let pi = AlgebraMorphism::new(a, &b, matrix).expect("projection is a morphism");
    (b, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::examples::{matrix_algebra, truncated_polynomial_algebra};
    use crate::exactla::Fp;

    #[test]
    fn rejects_bad_structure_constants() {
        let f = Fp::new(5).unwrap();
        // e1 * e0 = 0 breaks the unit law
        let bad = FiniteAlgebra::new(&f, 2, vec![vec![(0, 1)], vec![(1, 1)], vec![], vec![(1, 1)]], vec![(0, 1)], None);
        assert!(matches!(bad, Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn centers() {
        let f = Fp::new(5).unwrap();
        assert_eq!(matrix_algebra(&f, 2).center().len(), 1);
        assert_eq!(truncated_polynomial_algebra(&f, 3).center().len(), 3);
    }

    #[test]
    fn quotient_of_dual_numbers() {
        let f = Fp::new(3).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        let i = TwoSidedIdeal::new(&a, &[vec![(1, 1)]]).unwrap();
        let (b, pi) = quotient(&i);
        assert_eq!(b.dim(), 1);
        assert!(pi.is_surjective());
        assert_eq!(kernel_ideal(&pi).dim(), 1);
        assert!(!i.is_idempotent());
    }
}
