//! Named verification suites with embedded inputs.

use serde::Serialize;

use cohomlab::alg::{
    face_incidence_algebra, face_restriction, kernel_ideal, matrix_algebra, truncated_polynomial_algebra, FiniteAlgebra,
};
use cohomlab::bw::{e2_vs_bw, selfduality_check};
use cohomlab::exactla::{Field, Fp, Rationals};
use cohomlab::gs::{
    gs_cohomology, gs_double_complex, gs_double_complex_with, ss_consistency, ss_pages, AlgebraPresheaf,
    BimodulePresheaf, GSDoubleComplex, GsOptions,
};
use cohomlab::hochschild::{certify_hom_epi, hh_diagonal, hh_les, CertificateStatus};
use cohomlab::simp::{colimit, simplicial_cohomology};
use cohomlab::{Error, Result};

use crate::corpus;

pub const SUITES: [&str; 9] = [
    "hh-classics",
    "incidence-oracle",
    "gs-filtration",
    "spectral",
    "bw-compare",
    "selfduality",
    "colim-limit",
    "les",
    "normalization",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    fn eq<T: std::fmt::Debug + PartialEq>(name: impl Into<String>, expected: T, computed: T) -> Self {
        Check {
            name: name.into(),
            pass: expected == computed,
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
        }
    }

    /// A computation that must succeed; its error is the computed value.
    fn ok<T>(name: impl Into<String>, r: &Result<T>) -> Self {
        Check {
            name: name.into(),
            expected: "ok".into(),
            computed: match r {
                Ok(_) => "ok".into(),
                Err(e) => e.to_string(),
            },
            pass: r.is_ok(),
        }
    }

    fn failed(name: impl Into<String>, e: &Error) -> Self {
        Check { name: name.into(), expected: "ok".into(), computed: e.to_string(), pass: false }
    }
}

/// Runs a suite by name; `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<Check>> {
    let checks = match name {
        "hh-classics" => hh_classics(),
        "incidence-oracle" => incidence_oracle(),
        "gs-filtration" => gs_filtration(),
        "spectral" => spectral(),
        "bw-compare" => bw_compare(),
        "selfduality" => selfduality(),
        "colim-limit" => colim_limit(),
        "les" => les(),
        "normalization" => normalization(),
        _ => return None,
    };
    Some(checks)
}

fn hh_classics() -> Vec<Check> {
    let f2 = Fp::new(2).unwrap();
    let f3 = Fp::new(3).unwrap();
    let f5 = Fp::new(5).unwrap();
    vec![
        Check::eq("HH(M_2(GF(5)))", vec![1, 0, 0, 0], hh_diagonal(&matrix_algebra(&f5, 2), 3, true)),
        Check::eq("HH(GF(3)[x]/x^2)", vec![2, 1, 1, 1], hh_diagonal(&truncated_polynomial_algebra(&f3, 2), 3, true)),
        Check::eq("HH(GF(2)[x]/x^2)", vec![2, 2, 2, 2], hh_diagonal(&truncated_polynomial_algebra(&f2, 2), 3, true)),
        Check::eq(
            "HH(Q[x]/x^2)",
            vec![2, 1, 1, 1],
            hh_diagonal(&truncated_polynomial_algebra(&Rationals, 2), 3, true),
        ),
        Check::eq("HH(GF(3)[x]/x^3)", vec![3, 3, 3, 3], hh_diagonal(&truncated_polynomial_algebra(&f3, 3), 3, true)),
        Check::eq("HH(GF(2)[x]/x^3)", vec![3, 2, 2, 2], hh_diagonal(&truncated_polynomial_algebra(&f2, 3), 3, true)),
    ]
}

fn incidence_oracle_over<F: Field>(field: &F, out: &mut Vec<Check>) {
    let spec = field.spec();
    for (name, s) in [
        ("point", corpus::point()),
        ("edge", corpus::edge()),
        ("boundary of triangle", corpus::triangle_boundary()),
        ("triangle", corpus::full_triangle()),
    ] {
        let a = face_incidence_algebra(&s, field);
        let q_max = if a.dim() <= 12 { 3 } else { 2 };
        out.push(Check::eq(
            format!("HH(I(F({name}))) over {spec}"),
            simplicial_cohomology(&s, field, q_max),
            hh_diagonal(&a, q_max, true),
        ));
    }
}

fn incidence_oracle() -> Vec<Check> {
    let mut out = Vec::new();
    incidence_oracle_over(&Fp::new(2).unwrap(), &mut out);
    incidence_oracle_over(&Fp::new(3).unwrap(), &mut out);
    out
}

fn gs_dims<F: Field>(a: &AlgebraPresheaf<F>, n_max: usize) -> Result<Vec<usize>> {
    let p = a.base().longest_chain()?.max(n_max + 1);
    let d = gs_double_complex(a, &BimodulePresheaf::diagonal(a), p, n_max)?;
    gs_cohomology(&d, n_max)
}

fn gs_filtration() -> Vec<Check> {
    let f2 = Fp::new(2).unwrap();
    let f3 = Fp::new(3).unwrap();
    let mut out = Vec::new();
    let filtration = corpus::filtration_presheaf(&f2);
    for (name, a, n, expected) in [
        ("GS of the triangle filtration", filtration.clone(), 2, vec![1, 1, 0]),
        ("GS of the constant square", corpus::square_presheaf(&f2, false), 3, vec![1, 1, 0, 0]),
        ("GS of the constant square with top", corpus::square_presheaf(&f2, true), 3, vec![1, 0, 0, 0]),
    ] {
        match gs_dims(&a, n) {
            Ok(d) => out.push(Check::eq(name, expected, d)),
            Err(e) => out.push(Check::failed(name, &e)),
        }
    }
    let base = filtration.base();
    for m in 0..base.morphism_count() {
        if base.is_identity(m) {
            continue;
        }
        let c = certify_hom_epi(filtration.map(m), 3);
        let name = &base.morphisms()[m].name;
        out.push(Check::eq(format!("certificate of {name}"), CertificateStatus::Proven, c.status));
        out.push(Check::eq(format!("Tor_1..3 of {name}"), vec![0, 0, 0], c.tor_dims[1..].to_vec()));
    }
    let aug = corpus::augmentation_presheaf(&f3);
    let arrow = aug.base().morphism_index("0->1").unwrap();
    let c = certify_hom_epi(aug.map(arrow), 3);
    out.push(Check::eq("Tor_1 of GF(3)[x]/x^2 -> GF(3)", 1, c.tor_dims[1]));
    out.push(Check::eq("certificate of GF(3)[x]/x^2 -> GF(3)", CertificateStatus::Failed, c.status));
    out
}

fn spectral() -> Vec<Check> {
    let f2 = Fp::new(2).unwrap();
    let f3 = Fp::new(3).unwrap();
    let mut out = Vec::new();
    let filtration = corpus::filtration_presheaf(&f2);
    let run = || -> Result<Vec<Check>> {
        let mut out = Vec::new();
        let d = gs_double_complex(&filtration, &BimodulePresheaf::diagonal(&filtration), 2, 2)?;
        let (_, _, e2) = ss_pages(&d)?;
        let top = filtration.algebra(2);
        let hh_top = hh_diagonal(top, 2, true);
        let column0: Vec<usize> = (0..=2).map(|q| e2.dim(0, q)).collect();
        out.push(Check::eq("E2 column 0 is HH of the terminal algebra", hh_top, column0));
        let rest: Vec<usize> = (1..=2).flat_map(|p| (0..=2).map(move |q| (p, q))).map(|(p, q)| e2.dim(p, q)).collect();
        out.push(Check::eq("E2 vanishes for p > 0 on the filtration", vec![0; 6], rest));
        let aug = corpus::augmentation_presheaf(&f3);
        let d = gs_double_complex(&aug, &BimodulePresheaf::diagonal(&aug), 2, 2)?;
        let (_, _, e2a) = ss_pages(&d)?;
        let high: Vec<usize> = (0..=2).map(|q| e2a.dim(2, q)).collect();
        out.push(Check::eq("E2 vanishes for p >= 2 over [1]", vec![0; 3], high));
        let high: Vec<usize> = (0..=2).map(|q| e2.dim(2, q)).collect();
        out.push(Check::eq("E2 vanishes for p >= 2 over [2]", vec![0; 3], high));
        let dims = gs_cohomology(&d, 2)?;
        let report = ss_consistency(&e2a, &dims);
        out.push(Check::eq(
            "two-column consistency over [1]",
            Some(true),
            report.as_ref().ok().map(|r| r.equality && r.rows.iter().all(|x| x.ok)),
        ));
        Ok(out)
    };
    match run() {
        Ok(c) => out.extend(c),
        Err(e) => out.push(Check::failed("spectral sequence", &e)),
    }
    out
}

fn comparison_presheaves() -> Vec<(&'static str, Box<dyn Fn() -> Result<cohomlab::bw::ComparisonReport>>)> {
    vec![
        ("triangle filtration", Box::new(|| e2_vs_bw(&corpus::filtration_presheaf(&Fp::new(2).unwrap()), 2, 2))),
        ("GF(3)[x]/x^2 -> GF(3)", Box::new(|| e2_vs_bw(&corpus::augmentation_presheaf(&Fp::new(3).unwrap()), 2, 2))),
        ("constant square", Box::new(|| e2_vs_bw(&corpus::square_presheaf(&Fp::new(2).unwrap(), false), 2, 2))),
        ("constant square with top", Box::new(|| e2_vs_bw(&corpus::square_presheaf(&Fp::new(2).unwrap(), true), 2, 2))),
    ]
}

fn bw_compare() -> Vec<Check> {
    comparison_presheaves()
        .into_iter()
        .map(|(name, run)| Check::ok(format!("E2 = H_BW on the {name}"), &run()))
        .collect()
}

fn selfduality() -> Vec<Check> {
    let f2 = Fp::new(2).unwrap();
    let mut out: Vec<Check> = [
        ("triangle filtration", corpus::filtration_presheaf(&f2)),
        ("constant square", corpus::square_presheaf(&f2, false)),
        ("constant square with top", corpus::square_presheaf(&f2, true)),
    ]
    .iter()
    .map(|(name, a)| Check::ok(format!("lim = H_BW on the {name}"), &selfduality_check(a, 2, 2)))
    .collect();
    let r = selfduality_check(&corpus::augmentation_presheaf(&Fp::new(3).unwrap()), 2, 2);
    out.push(Check::eq(
        "uncertified arrow is rejected",
        true,
        matches!(r, Err(Error::NotCertified(_))),
    ));
    out
}

fn colim_limit() -> Vec<Check> {
    let f = Fp::new(2).unwrap();
    let d = corpus::two_edge_pushout();
    let run = || -> Result<Vec<Check>> {
        let k = colimit(&d)?;
        let (theta, limit) = cohomlab::alg::theta_map(&d, &k, &f)?;
        Ok(vec![
            Check::eq("colimit is the path a-b-c", vec![vec!["a".to_string(), "b".into()], vec!["b".into(), "c".into()]], {
                let mut faces = k.complex.maximal_face_names();
                faces.sort();
                faces
            }),
            Check::eq("dim I(F(K))", 9, face_incidence_algebra(&k.complex, &f).dim()),
            Check::eq("dim of the limit", 9, limit.algebra.dim()),
            Check::eq("theta is bijective", true, theta.is_injective() && theta.is_surjective()),
        ])
    };
    run().unwrap_or_else(|e| vec![Check::failed("theta is an isomorphism", &e)])
}

fn les() -> Vec<Check> {
    let f = Fp::new(2).unwrap();
    let run = || -> Result<Vec<Check>> {
        let big = corpus::triangle_boundary();
        let small = corpus::edge();
        let r = face_restriction(&small, &big, &small.inclusion_into(&big).expect("subcomplex"), &f)?;
        let report = hh_les(r.source(), &kernel_ideal(&r), 2)?;
        let mut out: Vec<Check> = report
            .nodes
            .iter()
            .map(|n| Check::eq(format!("exact at {}^{}", n.label, n.degree), n.image_in, n.kernel_out))
            .collect();
        out.push(Check::eq("restriction HH(B,B) -> HH(A,B) is iso", vec![true; 3], report.restriction_iso.clone()));
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![Check::failed("long exact sequence", &e)])
}

fn normalization_algebras() -> Vec<(String, FiniteAlgebra<Fp>, usize)> {
    let f2 = Fp::new(2).unwrap();
    let f3 = Fp::new(3).unwrap();
    let f5 = Fp::new(5).unwrap();
    vec![
        ("M_2(GF(5))".into(), matrix_algebra(&f5, 2), 3),
        ("GF(3)[x]/x^2".into(), truncated_polynomial_algebra(&f3, 2), 3),
        ("GF(2)[x]/x^2".into(), truncated_polynomial_algebra(&f2, 2), 3),
        ("GF(3)[x]/x^3".into(), truncated_polynomial_algebra(&f3, 3), 3),
        ("I(F(point))".into(), face_incidence_algebra(&corpus::point(), &f2), 3),
        ("I(F(edge))".into(), face_incidence_algebra(&corpus::edge(), &f2), 3),
        ("I(F(boundary of triangle))".into(), face_incidence_algebra(&corpus::triangle_boundary(), &f2), 2),
    ]
}

fn normalization() -> Vec<Check> {
    let mut out: Vec<Check> = normalization_algebras()
        .into_iter()
        .map(|(name, a, q)| Check::eq(format!("normalized HH of {name}"), hh_diagonal(&a, q, false), hh_diagonal(&a, q, true)))
        .collect();
    let f3 = Fp::new(3).unwrap();
    let presheaves: Vec<(&str, AlgebraPresheaf<Fp>)> = vec![
        ("GF(3)[x]/x^2 -> GF(3)", corpus::augmentation_presheaf(&f3)),
        (
            "constant GF(3)[x]/x^2 over [1]",
            AlgebraPresheaf::constant(
                cohomlab::fincat::poset_to_category(&cohomlab::fincat::FinPoset::chain(1)),
                &truncated_polynomial_algebra(&f3, 2),
            ),
        ),
    ];
    for (name, a) in presheaves {
        let m = BimodulePresheaf::diagonal(&a);
        let run = || -> Result<(Vec<usize>, Vec<usize>, bool, bool)> {
            let norm = gs_double_complex(&a, &m, 3, 2)?;
            let full = gs_double_complex_with(
                &a,
                &m,
                3,
                2,
                GsOptions { normalized_nerve: false, normalized_cochains: true },
            )?;
            let (_, _, e2) = ss_pages(&norm)?;
            let dims = gs_cohomology(&norm, 2)?;
            let two_column = ss_consistency(&e2, &dims).map(|r| r.equality).unwrap_or(false);
            Ok((dims, gs_cohomology(&full, 2)?, two_column, double_complex_identities(&norm)? && double_complex_identities(&full)?))
        };
        match run() {
            Ok((n, u, eq, identities)) => {
                out.push(Check::eq(format!("normalized nerve on {name}"), u, n));
                out.push(Check::eq(format!("d^2 = 0 and anticommutation on {name}"), true, identities));
                out.push(Check::eq(format!("two-column consistency on {name}"), true, eq));
            }
            Err(e) => out.push(Check::failed(format!("GS complexes on {name}"), &e)),
        }
    }
    out
}

/// Recomputes `d_h² = 0`, `d_v² = 0` and `d_h d_v + d_v d_h = 0` on every cell.
fn double_complex_identities<F: Field>(d: &GSDoubleComplex<F>) -> Result<bool> {
    for p in 0..=d.p_top() {
        for q in 0..=d.q_max() {
            let (h, v) = (d.horizontal(p, q), d.vertical(p, q));
            if let (Some(v), Some(v2)) = (v, d.vertical(p, q + 1)) {
                if !v2.mul(v)?.is_zero() {
                    return Ok(false);
                }
            }
            if let (Some(h), Some(h2)) = (h, d.horizontal(p + 1, q)) {
                if !h2.mul(h)?.is_zero() {
                    return Ok(false);
                }
            }
            if let (Some(h), Some(v), Some(h1), Some(v1)) = (h, v, d.horizontal(p, q + 1), d.vertical(p + 1, q)) {
                if !h1.mul(v)?.add(&v1.mul(h)?)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_none());
    }
}
