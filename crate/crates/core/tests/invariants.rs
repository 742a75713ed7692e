mod common;

use proptest::prelude::*;
use tokenalg::algebras::{idempotents, local_algebra, monomial_span_rank, pairing_table, LocalOptions};
use tokenalg::johnson::{johnson_graph, johnson_intersection_array, quotient_matrix};
use tokenalg::linalg::{eval_bivariate_monomials, rat, ExactMatrix, Rational, RowSpace};
use tokenalg::orthopoly::{family_for_matrix, predistance_family, scalar_product, PolyKind};
use tokenalg::spectra::{
    exact_spectrum, joint_spectrum, numeric_spectrum, spectrum, Eigenvalue, SpectralMode, Spectrum, DEFAULT_TOL,
};
use tokenalg::tokens::{binomial, rank_subset, token_graph, verify_intertwining};
use tokenalg::{Error, Graph};

use common::{paw, random_graph, rng};

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = Graph::complete(n)
                .edges()
                .iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(&e, _)| e)
                .collect::<Vec<_>>();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_and_k() -> impl Strategy<Value = (Graph, usize)> {
    graph_strategy(2, 6).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 1..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn token_edge_count((g, k) in graph_and_k()) {
        let f = token_graph(&g, k).unwrap();
        let n = g.n() as i64;
        prop_assert_eq!(f.graph.n() as u64, binomial(n, k as i64));
        prop_assert_eq!(f.graph.m() as u64, binomial(n - 2, k as i64 - 1) * g.m() as u64);
    }

    #[test]
    fn complementary_token_numbers_are_isomorphic((g, k) in graph_and_k()) {
        let f = token_graph(&g, k).unwrap();
        let h = token_graph(&g, g.n() - k).unwrap();
        // A ↦ [n] \ A maps edges to edges
        for &(u, v) in f.graph.edges() {
            let cu = f.labels[u - 1].complement();
            let cv = f.labels[v - 1].complement();
            prop_assert!(h.graph.has_edge(cu.rank + 1, cv.rank + 1));
        }
        prop_assert_eq!(f.graph.m(), h.graph.m());
    }

    #[test]
    fn bipartite_is_preserved((g, k) in graph_and_k()) {
        if g.is_bipartite() {
            prop_assert!(token_graph(&g, k).unwrap().graph.is_bipartite());
        }
    }

    #[test]
    fn intertwining_identities((g, k) in graph_and_k()) {
        let rep = verify_intertwining(&g, k).unwrap();
        prop_assert!(rep.passed(), "{:?}", rep.checks);
    }

    #[test]
    fn laplacians_commute_and_sum_to_johnson((g, k) in graph_and_k()) {
        let l = token_graph(&g, k).unwrap().laplacian();
        let lbar = token_graph(&g.complement(), k).unwrap().laplacian();
        prop_assert!(l.commutes_with(&lbar).unwrap());
        let j = johnson_graph(g.n(), k).unwrap();
        let sum = l.add(&lbar).unwrap();
        prop_assert_eq!(&sum, &j.laplacian());
        let degree = rat((k * (g.n() - k)) as i64);
        prop_assert_eq!(sum, ExactMatrix::identity(j.graph.n()).scale(&degree).sub(&j.adjacency()).unwrap());
    }

    #[test]
    fn exact_and_numeric_spectra_agree(g in graph_strategy(1, 6)) {
        let l = g.laplacian();
        let numeric = numeric_spectrum(&l, DEFAULT_TOL).unwrap();
        let total: f64 = numeric.to_f64_values().iter().sum();
        prop_assert!((total - 2.0 * g.m() as f64).abs() <= g.n() as f64 * DEFAULT_TOL);
        prop_assert!(numeric.to_f64_values()[0].abs() < 1e-9);
        match exact_spectrum(&l) {
            Ok(exact) => {
                prop_assert_eq!(&numeric, &exact);
                let trace: Rational = exact.exact_values().unwrap().into_iter().sum();
                prop_assert_eq!(trace, rat(2 * g.m() as i64));
            }
            Err(Error::NotIntegral(_)) => prop_assert!(!numeric.is_exact()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn subset_rank_is_lexicographic(n in 1usize..9, seed in any::<u64>()) {
        let k = (seed as usize) % (n + 1);
        let subsets = tokenalg::tokens::k_subsets(n, k).unwrap();
        for w in subsets.windows(2) {
            prop_assert!(w[0].elements < w[1].elements);
        }
        for s in &subsets {
            prop_assert_eq!(rank_subset(n, &s.elements), s.rank);
        }
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(1, 12)) {
        let text = g.to_graph6().unwrap();
        prop_assert_eq!(Graph::from_graph6(text.as_bytes()).unwrap(), g.clone());
        prop_assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn predistance_invariants(values in proptest::collection::btree_set(-6i64..12, 1..7), mults in proptest::collection::vec(1usize..4, 7)) {
        let list: Vec<i64> = values
            .iter()
            .zip(&mults)
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect();
        let s = Spectrum::from_integers(&list);
        for kind in [PolyKind::Laplacian, PolyKind::Adjacency] {
            let z = match kind {
                PolyKind::Laplacian => rat(0),
                PolyKind::Adjacency => rat(*values.iter().max().unwrap()),
            };
            let fam = match predistance_family(kind, &s) {
                Ok(f) => f,
                // orthogonal polynomials can vanish at an interior point
                Err(Error::DegenerateNormalization { .. }) => continue,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            let ps = fam.exact().unwrap();
            prop_assert_eq!(ps.len(), values.len());
            for (i, p) in ps.iter().enumerate() {
                prop_assert_eq!(p.degree(), Some(i));
                prop_assert_eq!(scalar_product(&s, p, p).unwrap(), p.eval(&z));
                for q in &ps[..i] {
                    prop_assert_eq!(scalar_product(&s, p, q).unwrap(), rat(0));
                }
            }
        }
    }
}

/// Random small bivariate polynomial of total degree at most 3.
fn random_bivariate(r: &mut impl rand::Rng) -> Vec<((u32, u32), i64)> {
    let mut terms = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            let c = r.gen_range(-3i64..=3);
            if c != 0 {
                terms.push(((a, b), c));
            }
        }
    }
    terms
}

#[test]
fn frobenius_spectral_mapping() {
    let mut r = rng(50);
    let mut exact_cases = 0;
    for case in 0..50 {
        let n = 4 + case % 3;
        let g = random_graph(n, &mut r);
        let k = 1 + case % (n / 2);
        let l = token_graph(&g, k).unwrap().laplacian();
        let lbar = token_graph(&g.complement(), k).unwrap().laplacian();
        let joint = joint_spectrum(&l, &lbar, SpectralMode::Auto, DEFAULT_TOL).unwrap();
        let terms = random_bivariate(&mut r);
        let size = l.rows();
        let mut p = ExactMatrix::zeros(size, size);
        for &((a, b), c) in &terms {
            p = p.add(&eval_bivariate_monomials(a, b, &l, &lbar).unwrap().scale(&rat(c))).unwrap();
        }
        if joint.exact {
            exact_cases += 1;
            let mapped = joint
                .map_exact(|x, y| {
                    terms.iter().fold(rat(0), |acc, &((a, b), c)| {
                        acc + rat(c) * num_traits::pow(x.clone(), a as usize) * num_traits::pow(y.clone(), b as usize)
                    })
                })
                .unwrap();
            assert_eq!(exact_spectrum(&p).unwrap(), mapped, "case {case}");
        } else {
            let mut mapped: Vec<f64> = joint
                .pairs
                .iter()
                .flat_map(|(x, y, m)| {
                    let v = terms.iter().fold(0.0, |acc, &((a, b), c)| {
                        acc + c as f64 * x.to_f64().powi(a as i32) * y.to_f64().powi(b as i32)
                    });
                    std::iter::repeat_n(v, *m)
                })
                .collect();
            mapped.sort_by(f64::total_cmp);
            let direct = spectrum(&p, SpectralMode::Numeric, DEFAULT_TOL).unwrap().to_f64_values();
            let scale = direct.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (x, y) in direct.iter().zip(&mapped) {
                assert!((x - y).abs() <= 1e-7 * scale, "case {case}: {x} vs {y}");
            }
        }
        // projections reproduce both spectra
        assert!(joint.first(DEFAULT_TOL).matches(&spectrum(&l, SpectralMode::Auto, DEFAULT_TOL).unwrap()));
        assert!(joint.second(DEFAULT_TOL).matches(&spectrum(&lbar, SpectralMode::Auto, DEFAULT_TOL).unwrap()));
    }
    assert!(exact_cases > 0);
}

#[test]
fn dimension_counted_two_ways() {
    let mut r = rng(100);
    for case in 0..100 {
        let n = 3 + case % 4;
        let g = random_graph(n, &mut r);
        let k = 1 + case % (n - 1);
        let l = token_graph(&g, k).unwrap().laplacian();
        let lbar = token_graph(&g.complement(), k).unwrap().laplacian();
        let joint = joint_spectrum(&l, &lbar, SpectralMode::Auto, DEFAULT_TOL).unwrap();
        let (rank, _) = monomial_span_rank(&l, &lbar, joint.pairs.len()).unwrap();
        assert_eq!(rank, joint.pairs.len(), "{:?} k={k}", g.edges());
        let lower = k.min(n - k) + 1;
        assert!(lower <= rank && rank <= l.rows());
    }
}

#[test]
fn local_algebra_identities_on_random_graphs() {
    let mut r = rng(8);
    for case in 0..20 {
        let n = 4 + case % 2;
        let g = random_graph(n, &mut r);
        let rep = local_algebra(&g, 2, &LocalOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}: {:?}", g.edges(), rep.checks);
        if rep.r_spectrum.is_exact() {
            assert_eq!(rep.idempotents.len(), rep.dim);
        }
    }
}

#[test]
fn idempotents_resolve_the_identity() {
    let (l, lbar) = (
        token_graph(&paw(), 2).unwrap().laplacian(),
        token_graph(&paw().complement(), 2).unwrap().laplacian(),
    );
    let r = l.add(&lbar.scale(&tokenalg::linalg::frac(1, 2))).unwrap();
    let thetas: Vec<Rational> = exact_spectrum(&r)
        .unwrap()
        .entries
        .iter()
        .map(|(v, _)| v.as_exact().unwrap().clone())
        .collect();
    let es = idempotents(&r, &thetas).unwrap();
    let mut sum = ExactMatrix::zeros(6, 6);
    for e in &es {
        assert_eq!(&e.mul(e).unwrap(), e);
        sum = sum.add(e).unwrap();
    }
    assert_eq!(sum, ExactMatrix::identity(6));
    // basis claim: I, R, …, R^d are independent
    let mut span = RowSpace::new(36);
    let mut p = ExactMatrix::identity(6);
    for _ in 0..thetas.len() {
        assert!(span.insert(&p.vectorize()));
        p = p.mul(&r).unwrap();
    }
}

#[test]
fn first_level_pairing_is_the_complement_identity() {
    // λ_i(G) + λ_{n+2-i}(Ḡ) = n for the nontrivial eigenvalues
    let mut r = rng(1);
    for _ in 0..30 {
        let g = random_graph(6, &mut r);
        let t = pairing_table(&g, 1, SpectralMode::Auto, DEFAULT_TOL).unwrap();
        for row in t.rows.iter().filter(|row| row.level == 1) {
            assert_eq!(row.lambda_j, 6);
            assert!((row.lambda.to_f64() + row.lambda_bar.to_f64() - 6.0).abs() < 1e-7);
        }
    }
}

#[test]
fn johnson_distance_polynomials() {
    for n in 2..=7 {
        for k in 1..=n / 2 {
            let j = johnson_graph(n, k).unwrap();
            let a = j.adjacency();
            let fam = family_for_matrix(PolyKind::Adjacency, &a, SpectralMode::Auto, 1e-7).unwrap();
            let dist = j.graph.distance_matrices().unwrap();
            let ps = fam.exact().expect("Johnson spectra are integral");
            assert_eq!(ps.len(), dist.mats.len());
            for (p, ai) in ps.iter().zip(&dist.mats) {
                assert_eq!(&a.eval_poly(p).unwrap(), ai, "J({n},{k})");
            }
            let q = quotient_matrix(&johnson_intersection_array(n, k).unwrap());
            // the quotient is not symmetric; its eigenvalues are the distinct adjacency eigenvalues
            let qpoly = q.char_poly().unwrap();
            let distinct: Vec<Eigenvalue> = exact_spectrum(&a).unwrap().entries.into_iter().map(|(v, _)| v).collect();
            for v in distinct {
                assert!(qpoly.eval(v.as_exact().unwrap()) == rat(0), "J({n},{k}) eigenvalue {v}");
            }
        }
    }
}

#[test]
fn reports_round_trip_through_json() {
    let rep = local_algebra(&paw(), 2, &LocalOptions::default()).unwrap();
    let text = serde_json::to_string(&rep).unwrap();
    let back: tokenalg::algebras::LocalAlgebraReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
    let s = numeric_spectrum(&common::cycle(5).adjacency(), DEFAULT_TOL).unwrap();
    let back: Spectrum = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}
