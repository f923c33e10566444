//! Hochschild cochains `Hom(Ā^{⊗q}, M)` and their differential.
//!
//! A cochain basis element is `δ_{t,x}`: the map sending the basis tensor
//! `ē_{t_1} ⊗ ... ⊗ ē_{t_q}` to the module basis vector `m_x` and every other
//! basis tensor to zero. Its index is `rank(t) * dim M + x`, where `rank`
//! reads `t` as a base-`dim Ā` number with `t_1` most significant.
//!
//! In the unnormalized complex `Ā = A`. In the normalized complex `Ā` is
//! `A / k·1`, realized on the basis vectors of `A` other than a pivot `e_j`
//! with nonzero unit coordinate; a normalized cochain is a cochain on `A`
//! vanishing whenever an argument is the unit.

use rayon::prelude::*;

use crate::alg::{Bimodule, FiniteAlgebra};
use crate::exactla::sparse::{collect_sparse, SparseMatrix, SparseVec};
use crate::exactla::{CochainComplexRep, Field};

/// A basis of `Ā` (either `A` or `A / k·1`) with lifts, projection and the
/// projected products of basis vectors.
#[derive(Clone, Debug)]
pub(crate) struct ArgBasis<F: Field> {
    /// `lift[a]` is the basis index in `A` of the argument basis vector `ē_a`.
    pub lift: Vec<usize>,
    /// `proj[k]` is `π(e_k)` in argument coordinates.
    pub proj: Vec<SparseVec<F::Elem>>,
    /// `prod[a * nb + b]` is `π(e_{lift a} e_{lift b})`.
    pub prod: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> ArgBasis<F> {
    pub fn new(a: &FiniteAlgebra<F>, normalized: bool) -> Self {
        let f = a.field();
        let n = a.dim();
        let (lift, proj): (Vec<usize>, Vec<SparseVec<F::Elem>>) = if normalized {
            let (j, uj) = a.unit().first().cloned().expect("unit of a nonzero algebra");
            let lift: Vec<usize> = (0..n).filter(|&i| i != j).collect();
            let mut pos = vec![usize::MAX; n];
            for (k, &i) in lift.iter().enumerate() {
                pos[i] = k;
            }
            let inv = f.inv(&uj).expect("nonzero unit coordinate");
            let pj: SparseVec<F::Elem> = collect_sparse(
                f,
                a.unit()
                    .iter()
                    .filter(|(i, _)| *i != j)
                    .map(|(i, u)| (pos[*i], f.neg(&f.mul(u, &inv))))
                    .collect(),
            );
            let proj = (0..n).map(|k| if k == j { pj.clone() } else { vec![(pos[k], f.one())] }).collect();
            (lift, proj)
        } else {
            ((0..n).collect(), (0..n).map(|k| vec![(k, f.one())]).collect())
        };
        let mut basis = ArgBasis { lift, proj, prod: Vec::new() };
        let nb = basis.lift.len();
        let mut prod = Vec::with_capacity(nb * nb);
        for x in 0..nb {
            for y in 0..nb {
                prod.push(basis.project(f, a.basis_product(basis.lift[x], basis.lift[y])));
            }
        }
        basis.prod = prod;
        basis
    }

    pub fn len(&self) -> usize {
        self.lift.len()
    }

    pub fn project(&self, f: &F, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = Vec::new();
        for (k, c) in v {
            for (t, x) in &self.proj[*k] {
                acc.push((*t, f.mul(c, x)));
            }
        }
        collect_sparse(f, acc)
    }
}

/// The degree-independent data needed to build cochain matrices for a pair
/// `(A, M)`.
#[derive(Clone, Debug)]
pub struct CochainSpace<F: Field> {
    module: Bimodule<F>,
    normalized: bool,
    args: ArgBasis<F>,
    lift: Vec<usize>,
    /// `pre[c]` lists `(a, b, coef)` with `coef` the `ē_c` coordinate of
    /// `π(e_{lift a} e_{lift b})`.
    pre: Vec<Vec<(usize, usize, F::Elem)>>,
}

impl<F: Field> CochainSpace<F> {
    pub fn new(module: &Bimodule<F>, normalized: bool) -> Self {
        let args = ArgBasis::new(module.algebra(), normalized);
        let nb = args.len();
        let mut pre: Vec<Vec<(usize, usize, F::Elem)>> = vec![Vec::new(); nb];
        for x in 0..nb {
            for y in 0..nb {
                for (t, v) in &args.prod[x * nb + y] {
                    pre[*t].push((x, y, v.clone()));
                }
            }
        }
        let lift = args.lift.clone();
        CochainSpace { module: module.clone(), normalized, args, lift, pre }
    }

    pub fn algebra(&self) -> &FiniteAlgebra<F> {
        self.module.algebra()
    }

    pub fn module(&self) -> &Bimodule<F> {
        &self.module
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// `dim Ā`.
    pub fn arg_dim(&self) -> usize {
        self.lift.len()
    }

    /// Basis index in `A` of argument basis vector `a`.
    pub fn lift(&self, a: usize) -> usize {
        self.lift[a]
    }

    /// `π(v)` in argument coordinates.
    pub fn project(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        self.args.project(self.algebra().field(), v)
    }

    /// `dim C^q = (dim Ā)^q · dim M`.
    pub fn dim(&self, q: usize) -> usize {
        checked_pow(self.arg_dim(), q) * self.module.dim()
    }

    /// Matrix of `d: C^q -> C^{q+1}`.
    pub fn differential(&self, q: usize) -> SparseMatrix<F> {
        let f = self.algebra().field().clone();
        let nb = self.arg_dim();
        let m = self.module.dim();
        let pow_q = checked_pow(nb, q);
        let rows = pow_q * nb * m;
        let one = f.one();
        let minus = f.neg(&one);
        let last_sign = if (q + 1).is_multiple_of(2) { one.clone() } else { minus.clone() };
        let columns: Vec<SparseVec<F::Elem>> = (0..pow_q * m)
            .into_par_iter()
            .map(|col| {
                let (s_rank, x) = (col / m, col % m);
                let s = unrank(s_rank, nb, q);
                let mut acc: Vec<(usize, F::Elem)> = Vec::new();
                // a_1 · f(a_2, ..., a_{q+1})
                for t1 in 0..nb {
                    let base = (t1 * pow_q + s_rank) * m;
                    for (y, v) in self.module.left_basis(self.lift[t1], x) {
                        acc.push((base + y, v.clone()));
                    }
                }
                // (-1)^i f(..., a_i a_{i+1}, ...)
                for i in 0..q {
                    let sign = if (i + 1) % 2 == 0 { &one } else { &minus };
                    // positions before i keep s[..i], then (a, b), then s[i+1..]
                    let head = rank(&s[..i], nb);
                    let tail_len = q - i - 1;
                    let tail = rank(&s[i + 1..], nb);
                    let tail_pow = checked_pow(nb, tail_len);
                    for (a, b, c) in &self.pre[s[i]] {
                        let r = ((head * nb + a) * nb + b) * tail_pow + tail;
                        acc.push((r * m + x, f.mul(sign, c)));
                    }
                }
                // (-1)^{q+1} f(a_1, ..., a_q) · a_{q+1}
                for t in 0..nb {
                    let base = (s_rank * nb + t) * m;
                    for (y, v) in self.module.right_basis(self.lift[t], x) {
                        acc.push((base + y, f.mul(&last_sign, v)));
                    }
                }
                collect_sparse(&f, acc)
            })
            .collect();
        SparseMatrix::from_columns(&f, rows, columns).expect("cochain indices within bounds")
    }

    /// The cochain complex in degrees `0..=top`, including the outgoing
    /// differential of the top degree.
    pub fn complex(&self, top: usize) -> CochainComplexRep<F> {
        let diffs: Vec<SparseMatrix<F>> = (0..=top).into_par_iter().map(|q| self.differential(q)).collect();
        let dims = (0..=top).map(|q| self.dim(q)).collect();
        CochainComplexRep::new(self.algebra().field(), dims, diffs).expect("Hochschild differential squares to zero")
    }

    /// The matrix of `Hom(Ā, -)`-argument transport along `φ: A' -> A`:
    /// entry `(s, t')` is the `ē_s` coordinate of `π(φ(e'_{lift t'}))`.
    fn argument_map(&self, source: &CochainSpace<F>, phi: &SparseMatrix<F>) -> Vec<Vec<(usize, F::Elem)>> {
        let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.arg_dim()];
        for t in 0..source.arg_dim() {
            for (s, v) in self.project(phi.column(source.lift[t])) {
                rows[s].push((t, v));
            }
        }
        rows
    }

    /// Matrix of `C^q(A, M) -> C^q(A', M')`, `g ↦ T ∘ g ∘ φ^{⊗q}`, where
    /// `self` describes `(A, M)`, `target` describes `(A', M')`, `phi` is the
    /// matrix of an algebra map `A' -> A` and `t` the matrix of `M -> M'`.
    pub fn transfer(&self, target: &CochainSpace<F>, phi: &SparseMatrix<F>, t: &SparseMatrix<F>, q: usize) -> SparseMatrix<F> {
        let f = self.algebra().field().clone();
        let nb = self.arg_dim();
        let nt = target.arg_dim();
        let (m, mt) = (self.module.dim(), target.module.dim());
        assert_eq!((phi.rows(), phi.cols()), (self.algebra().dim(), target.algebra().dim()));
        assert_eq!((t.rows(), t.cols()), (mt, m));
        let arg = self.argument_map(target, phi);
        let rows = checked_pow(nt, q) * mt;
        let columns: Vec<SparseVec<F::Elem>> = (0..checked_pow(nb, q) * m)
            .into_par_iter()
            .map(|col| {
                let (s_rank, x) = (col / m, col % m);
                let s = unrank(s_rank, nb, q);
                let tx = t.column(x);
                if tx.is_empty() {
                    return Vec::new();
                }
                // Enumerate target tuples in the product of the supports.
                let mut partial: Vec<(usize, F::Elem)> = vec![(0, f.one())];
                for &sk in &s {
                    let mut next = Vec::with_capacity(partial.len() * arg[sk].len());
                    for (r, c) in &partial {
                        for (tk, v) in &arg[sk] {
                            next.push((r * nt + tk, f.mul(c, v)));
                        }
                    }
                    partial = next;
                    if partial.is_empty() {
                        return Vec::new();
                    }
                }
                let mut acc = Vec::with_capacity(partial.len() * tx.len());
                for (r, c) in &partial {
                    for (y, v) in tx {
                        acc.push((r * mt + y, f.mul(c, v)));
                    }
                }
                collect_sparse(&f, acc)
            })
            .collect();
        SparseMatrix::from_columns(&f, rows, columns).expect("cochain indices within bounds")
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> usize {
    base.checked_pow(exp as u32).expect("cochain dimension overflows usize")
}

/// `t` read as a base-`nb` number, most significant digit first.
pub(crate) fn rank(t: &[usize], nb: usize) -> usize {
    t.iter().fold(0, |acc, &d| acc * nb + d)
}

pub(crate) fn unrank(mut r: usize, nb: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for k in (0..len).rev() {
        t[k] = r % nb;
        r /= nb;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{diagonal_bimodule, truncated_polynomial_algebra};
    use crate::exactla::Fp;

    #[test]
    fn ranks_roundtrip() {
        for r in 0..27 {
            assert_eq!(rank(&unrank(r, 3, 3), 3), r);
        }
    }

    #[test]
    fn degree_zero_is_commutator() {
        let f = Fp::new(5).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        let sp = CochainSpace::new(&diagonal_bimodule(&a), false);
        // commutative algebra: d^0 = 0
        assert!(sp.differential(0).is_zero());
        assert_eq!(sp.dim(2), 8);
        let nsp = CochainSpace::new(&diagonal_bimodule(&a), true);
        assert_eq!(nsp.dim(2), 2);
    }
}
