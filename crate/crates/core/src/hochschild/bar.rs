//! The bar complex `B ⊗ Ā^{⊗n} ⊗ B` computing `Tor^A_*(B, B)` for a
//! morphism `A -> B`, and homological-epimorphism certificates.

use rayon::prelude::*;
use serde::Serialize;

use crate::alg::{kernel_ideal, AlgebraMorphism, TwoSidedIdeal};
use crate::exactla::sparse::{collect_sparse, SparseMatrix, SparseVec};
use crate::exactla::{rank, Field};
use crate::hochschild::cochain::{checked_pow, rank as tuple_rank, unrank, ArgBasis};

/// Chain complex with `C_n = B ⊗ Ā^{⊗n} ⊗ B` for `n <= n_max + 1`.
///
/// The basis element `b ⊗ ē_t ⊗ b'` sits at `(b · nb^n + rank(t)) · dim B + b'`.
#[derive(Clone, Debug)]
pub struct BarComplex<F: Field> {
    morphism: AlgebraMorphism<F>,
    n_max: usize,
    normalized: bool,
    dims: Vec<usize>,
    /// `boundaries[n]` is `∂_{n+1}: C_{n+1} -> C_n`.
    boundaries: Vec<SparseMatrix<F>>,
}

impl<F: Field> BarComplex<F> {
    pub fn new(f: &AlgebraMorphism<F>, n_max: usize, normalized: bool) -> Self {
        let args = ArgBasis::new(f.source(), normalized);
        let dims = (0..=n_max + 1).map(|n| bar_dim(f, args.len(), n)).collect();
        let boundaries: Vec<SparseMatrix<F>> =
            (1..=n_max + 1).into_par_iter().map(|n| boundary(f, &args, n)).collect();
        let bar = BarComplex { morphism: f.clone(), n_max, normalized, dims, boundaries };
        assert!(bar.squares_to_zero(), "bar differential squares to zero");
        bar
    }

    pub fn morphism(&self) -> &AlgebraMorphism<F> {
        &self.morphism
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_n: C_n -> C_{n-1}` for `1 <= n <= n_max + 1`.
    pub fn boundary(&self, n: usize) -> &SparseMatrix<F> {
        &self.boundaries[n - 1]
    }

    fn squares_to_zero(&self) -> bool {
        self.boundaries.par_windows(2).all(|w| w[0].mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// `dim H_n` for `n <= n_max`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.par_iter().map(rank).collect();
        (0..=self.n_max)
            .map(|n| {
                let out = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - out - ranks[n]
            })
            .collect()
    }
}

fn bar_dim<F: Field>(f: &AlgebraMorphism<F>, nb: usize, n: usize) -> usize {
    let b = f.target().dim();
    b * checked_pow(nb, n) * b
}

fn boundary<F: Field>(f: &AlgebraMorphism<F>, args: &ArgBasis<F>, n: usize) -> SparseMatrix<F> {
    let field = f.source().field().clone();
    let b_alg = f.target();
    let db = b_alg.dim();
    let nb = args.len();
    let pow_n = checked_pow(nb, n);
    let pow_n1 = checked_pow(nb, n - 1);
    let image: Vec<&[(usize, F::Elem)]> = args.lift.iter().map(|&i| f.matrix().column(i)).collect();
    let one = field.one();
    let minus = field.neg(&one);
    let last_sign = if n.is_multiple_of(2) { one.clone() } else { minus.clone() };
    let columns: Vec<SparseVec<F::Elem>> = (0..db * pow_n * db)
        .into_par_iter()
        .map(|col| {
            let b2 = col % db;
            let t_rank = (col / db) % pow_n;
            let b1 = col / db / pow_n;
            let t = unrank(t_rank, nb, n);
            let mut acc: Vec<(usize, F::Elem)> = Vec::new();
            // b·f(a_1) ⊗ a_2 ... ⊗ b'
            let rest = tuple_rank(&t[1..], nb);
            for (c, v) in b_alg.mul(&[(b1, one.clone())], image[t[0]]) {
                acc.push(((c * pow_n1 + rest) * db + b2, v));
            }
            // (-1)^i b ⊗ ... a_i a_{i+1} ... ⊗ b'
            for i in 0..n - 1 {
                let sign = if (i + 1) % 2 == 0 { &one } else { &minus };
                let head = tuple_rank(&t[..i], nb);
                let tail = tuple_rank(&t[i + 2..], nb);
                let tail_pow = checked_pow(nb, n - i - 2);
                for (c, v) in &args.prod[t[i] * nb + t[i + 1]] {
                    let r = ((head * nb + c) * tail_pow) + tail;
                    acc.push(((b1 * pow_n1 + r) * db + b2, field.mul(sign, v)));
                }
            }
            // (-1)^n b ⊗ ... ⊗ f(a_n)·b'
            let init = tuple_rank(&t[..n - 1], nb);
            for (c, v) in b_alg.mul(image[t[n - 1]], &[(b2, one.clone())]) {
                acc.push(((b1 * pow_n1 + init) * db + c, field.mul(&last_sign, &v)));
            }
            collect_sparse(&field, acc)
        })
        .collect();
    SparseMatrix::from_columns(&field, db * pow_n1 * db, columns).expect("bar indices within bounds")
}

/// `dim Tor^A_i(B, B)` for `i <= n_max`, from the normalized bar complex.
pub fn tor<F: Field>(f: &AlgebraMorphism<F>, n_max: usize) -> Vec<usize> {
    BarComplex::new(f, n_max, true).homology_dims()
}

/// Three-valued outcome for a sufficient condition that may not be decidable
/// by the implemented test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertificateStatus {
    /// Epimorphism with a kernel that is idempotent and generated by an
    /// idempotent element; `Tor_i` vanishes in all degrees.
    Proven,
    /// Epimorphism with `Tor_i = 0` for `1 <= i <= checked_degree_bound`.
    CheckedToDegree,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomEpiCertificate {
    pub source_dim: usize,
    pub target_dim: usize,
    pub surjective: bool,
    pub checked_degree_bound: usize,
    pub epi_ok: bool,
    pub tor_dims: Vec<usize>,
    /// Entry `i - 1` records whether `Tor_i` vanishes.
    pub tor_vanishing: Vec<bool>,
    pub idempotent_kernel: bool,
    pub projective_kernel: Decision,
    pub status: CertificateStatus,
}

impl HomEpiCertificate {
    /// Homological epimorphism, proven or checked to the bound.
    pub fn is_certified(&self) -> bool {
        self.status != CertificateStatus::Failed
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

/// Searches for an idempotent `e` with `I = A·e` among sums of the unit's
/// summands that lie in `I`.
fn idempotent_generator<F: Field>(ideal: &TwoSidedIdeal<F>) -> Option<SparseVec<F::Elem>> {
    let a = ideal.ambient();
    let f = a.field();
    let parts: Vec<SparseVec<F::Elem>> = a.unit().iter().map(|(i, c)| vec![(*i, c.clone())]).collect();
    let orthogonal = parts.iter().enumerate().all(|(x, p)| {
        parts.iter().enumerate().all(|(y, q)| {
            let prod = a.mul(p, q);
            if x == y {
                prod == *p
            } else {
                prod.is_empty()
            }
        })
    });
    if !orthogonal {
        return None;
    }
    let e = collect_sparse(f, parts.into_iter().filter(|p| ideal.contains(p)).flatten().collect());
    if a.mul(&e, &e) != e || !ideal.contains(&e) {
        return None;
    }
    (ideal.left_generated_by(&e).len() == ideal.dim()).then_some(e)
}

/// Checks whether `f` is a homological epimorphism: `B ⊗_A B ≅ B`, and
/// `Tor_i` vanishes up to `n_max`; upgrades to a proof when the kernel is
/// idempotent and generated by an idempotent element.
pub fn certify_hom_epi<F: Field>(f: &AlgebraMorphism<F>, n_max: usize) -> HomEpiCertificate {
    let dims = tor(f, n_max);
    let epi_ok = dims[0] == f.target().dim();
    let tor_vanishing: Vec<bool> = dims[1..].iter().map(|&d| d == 0).collect();
    let surjective = f.is_surjective();
    let (idempotent_kernel, projective_kernel) = if surjective {
        let ideal = kernel_ideal(f);
        let proj = if idempotent_generator(&ideal).is_some() { Decision::Yes } else { Decision::Undecided };
        (ideal.is_idempotent(), proj)
    } else {
        (false, Decision::Undecided)
    };
    let status = if !epi_ok || tor_vanishing.iter().any(|v| !v) {
        CertificateStatus::Failed
    } else if surjective && idempotent_kernel && projective_kernel == Decision::Yes {
        CertificateStatus::Proven
    } else {
        CertificateStatus::CheckedToDegree
    };
    HomEpiCertificate {
        source_dim: f.source().dim(),
        target_dim: f.target().dim(),
        surjective,
        checked_degree_bound: n_max,
        epi_ok,
        tor_dims: dims,
        tor_vanishing,
        idempotent_kernel,
        projective_kernel,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{augmentation, incidence_algebra, restriction_morphism, truncated_polynomial_algebra};
    use crate::exactla::Fp;
    use crate::fincat::FinPoset;

    #[test]
    fn tor_over_self() {
        let f = Fp::new(3).unwrap();
        let a = truncated_polynomial_algebra(&f, 2);
        assert_eq!(tor(&AlgebraMorphism::identity(&a), 3), vec![2, 0, 0, 0]);
        let unnormalized = BarComplex::new(&AlgebraMorphism::identity(&a), 2, false);
        assert_eq!(unnormalized.homology_dims(), vec![2, 0, 0]);
    }

    #[test]
    fn augmentation_is_not_homological() {
        let f = Fp::new(3).unwrap();
        let aug = augmentation(&f, 2);
        let t = tor(&aug, 3);
        assert_eq!(t[0], 1);
        assert_eq!(t[1], 1);
        let cert = certify_hom_epi(&aug, 3);
        assert_eq!(cert.status, CertificateStatus::Failed);
    }

    #[test]
    fn chain_restriction() {
        let f = Fp::new(2).unwrap();
        let p = FinPoset::chain(1);
        let r = restriction_morphism(&p, &p.subposet(&[0]), &f).unwrap();
        assert_eq!(tor(&r, 3), vec![1, 0, 0, 0]);
        let cert = certify_hom_epi(&r, 3);
        assert_eq!(cert.status, CertificateStatus::Proven);
        let id = certify_hom_epi(&AlgebraMorphism::identity(&incidence_algebra(&p, &f)), 2);
        assert_eq!(id.status, CertificateStatus::Proven);
    }
}
