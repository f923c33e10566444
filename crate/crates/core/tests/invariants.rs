use proptest::prelude::*;

use cohomlab::alg::incidence_algebra;
use cohomlab::exactla::{kernel_basis, rank, Field, Fp, Rationals, SparseMatrix};
use cohomlab::fincat::{poset_to_category, twisted_arrow, FinPoset, NerveChains};
use cohomlab::hochschild::hh_diagonal;
use cohomlab::simp::{cochain_complex, order_complex, simplicial_cohomology, SimplicialComplex};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-2i64..3, c), r))
}

/// A poset on `0..n` generated by covers `i < j` with `i < j` as integers.
fn poset(max: usize) -> impl Strategy<Value = FinPoset> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let k = pairs.len();
        prop::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            let covers: Vec<(String, String)> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &b)| b)
                .map(|(&(i, j), _)| (names[i].clone(), names[j].clone()))
                .collect();
            FinPoset::from_covers(&names, &covers).unwrap()
        })
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u8..5, 1..4), 1..5).prop_map(|faces| {
        let faces: Vec<Vec<String>> = faces.iter().map(|f| f.iter().map(|v| format!("v{v}")).collect()).collect();
        SimplicialComplex::from_maximal_faces(&faces).unwrap()
    })
}

fn rank_nullity<F: Field>(field: &F, rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let m = SparseMatrix::from_i64_rows(field, rows).unwrap();
    let kernel = kernel_basis(&m);
    prop_assert_eq!(rank(&m) + kernel.len(), m.cols());
    prop_assert_eq!(rank(&m.transpose()), rank(&m));
    for v in &kernel {
        prop_assert!(m.apply(v).is_empty());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_gf3(rows in matrix()) {
        rank_nullity(&Fp::new(3).unwrap(), &rows)?;
    }

    #[test]
    fn rank_nullity_rationals(rows in matrix()) {
        rank_nullity(&Rationals, &rows)?;
    }

    #[test]
    fn euler_characteristic(s in complex()) {
        let f = Fp::new(2).unwrap();
        let top = s.dimension();
        let dims = cochain_complex(&s, &f, top).dims().to_vec();
        let betti = simplicial_cohomology(&s, &f, top);
        let alt = |v: &[usize]| v.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum::<i64>();
        prop_assert_eq!(alt(&dims[..=top]), alt(&betti));
    }

    #[test]
    fn nerve_counts_chains(p in poset(5)) {
        let c = poset_to_category(&p);
        let normalized = NerveChains::new(&c, 3, true);
        let full = NerveChains::new(&c, 3, false);
        for k in 0..=3 {
            prop_assert_eq!(normalized.count(k), p.strict_chains(k).len());
            // weakly increasing sequences x_0 <= ... <= x_k
            let mut weak: Vec<Vec<usize>> = (0..p.len()).map(|i| vec![i]).collect();
            for _ in 0..k {
                weak = weak
                    .iter()
                    .flat_map(|w| (0..p.len()).filter(|&b| p.leq(*w.last().unwrap(), b)).map(move |b| [w.clone(), vec![b]].concat()))
                    .collect();
            }
            prop_assert_eq!(full.count(k), weak.len());
        }
    }

    #[test]
    fn twisted_arrow_projects(p in poset(4)) {
        let c = poset_to_category(&p);
        let tw = twisted_arrow(&c);
        let t = tw.category();
        prop_assert_eq!(t.object_count(), c.morphism_count());
        for m in 0..t.morphism_count() {
            let s = tw.square(m);
            prop_assert_eq!((t.source(m), t.target(m)), (s.from, s.to));
            prop_assert_eq!(c.source(s.beta), c.source(s.to));
            prop_assert_eq!(c.target(s.beta), c.source(s.from));
            prop_assert_eq!(c.source(s.alpha), c.target(s.from));
            prop_assert_eq!(c.target(s.alpha), c.target(s.to));
            for n in 0..t.morphism_count() {
                if let Some(k) = t.compose(n, m) {
                    let (a, b) = (tw.square(n), tw.square(k));
                    prop_assert_eq!(b.alpha, c.compose(a.alpha, s.alpha).unwrap());
                    prop_assert_eq!(b.beta, c.compose(s.beta, a.beta).unwrap());
                }
            }
        }
        for f in 0..c.morphism_count() {
            let id = t.identity(f);
            prop_assert!(c.is_identity(tw.square(id).alpha) && c.is_identity(tw.square(id).beta));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn normalized_hochschild_agrees(p in poset(3)) {
        let a = incidence_algebra(&p, &Fp::new(2).unwrap());
        prop_assert_eq!(hh_diagonal(&a, 2, true), hh_diagonal(&a, 2, false));
    }

    #[test]
    fn incidence_cohomology_is_order_complex(p in poset(4)) {
        for q in [2u32, 3] {
            let f = Fp::new(q).unwrap();
            let hh = hh_diagonal(&incidence_algebra(&p, &f), 2, true);
            prop_assert_eq!(hh, simplicial_cohomology(&order_complex(&p), &f, 2));
        }
    }
}
