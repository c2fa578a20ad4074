mod common;

use kgraph_kms::graph::Multidegree;
use kgraph_kms::kms::{geq_simplex, kms_vector, phase_diagram, Algebra, Beta};
use kgraph_kms::oracle::{c_partial, path_count};
use kgraph_kms::{fixtures, perron_root, report, ColorSet, CountMatrix, Settings, Skeleton, Spectrum, VertexSet};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Skeleton> {
    (0u64..10_000).prop_map(|seed| common::block_family(seed, 6))
}

fn square(max: usize) -> impl Strategy<Value = CountMatrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0u64..3, n), n).prop_map(|rows| CountMatrix::from_rows(&rows))
    })
}

fn seeds(g: &Skeleton) -> impl Strategy<Value = (VertexSet, VertexSet, u32)> {
    let n = g.vertex_count();
    let colours = g.colours() as u32;
    (
        prop::collection::vec(any::<bool>(), n),
        prop::collection::vec(any::<bool>(), n),
        1u32..(1 << colours),
    )
        .prop_map(move |(a, b, f)| {
            let pick = |bits: &[bool]| VertexSet::from_indices(n, (0..n).filter(|&v| bits[v]));
            let small = pick(&a);
            let big = small.union(&pick(&b));
            (small, big, f)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn degree_matrix_is_multiplicative(g in family(), a in prop::collection::vec(0u64..3, 3), b in prop::collection::vec(0u64..3, 3)) {
        let n = Multidegree(a[..g.colours()].to_vec());
        let m = Multidegree(b[..g.colours()].to_vec());
        let lhs = g.degree_matrix(&n.add(&m)).unwrap();
        let rhs = g.degree_matrix(&n).unwrap().mul(&g.degree_matrix(&m).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closure_is_idempotent_and_monotone((g, (small, big, f)) in family().prop_flat_map(|g| { let s = seeds(&g); (Just(g), s) })) {
        prop_assume!(!small.is_empty());
        let f = ColorSet::from_bits(f);
        let cs = g.forward_closure(&small, f).unwrap();
        let cb = g.forward_closure(&big, f).unwrap();
        prop_assert!(small.is_subset(&cs));
        prop_assert!(cs.is_subset(&cb));
        prop_assert_eq!(g.forward_closure(&cs, f).unwrap(), cs.clone());
        prop_assert!(g.escaping_edge(&cs, f).is_none());
    }

    #[test]
    fn perron_root_is_transpose_invariant_block_max(m in square(7)) {
        let s = Settings::default();
        let a = perron_root(&m, &s).unwrap();
        let b = perron_root(&m.transpose(), &s).unwrap();
        prop_assert!((a.rho - b.rho).abs() <= 1e-9 * a.rho.max(1.0));
        let block_max = a.component_roots().into_iter().fold(0.0, f64::max);
        prop_assert_eq!(a.rho, block_max);
        prop_assert!(a.lower <= a.rho + 1e-12 && a.rho <= a.upper + 1e-12);
        if let Some(k) = a.exact {
            prop_assert_eq!(k as f64, a.rho);
        }
    }

    #[test]
    fn path_counts_are_submultiplicative(g in family(), k in 0usize..10, m in 0usize..10) {
        let f = g.all_colours();
        let lhs = path_count(&g, k + m, f).unwrap();
        let rhs = path_count(&g, k, f).unwrap() * path_count(&g, m, f).unwrap();
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn tracial_entropy_is_below_strong((g, (small, _, f)) in family().prop_flat_map(|g| { let s = seeds(&g); (Just(g), s) })) {
        prop_assume!(!small.is_empty());
        let f = ColorSet::from_bits(f);
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let tracial = sp.tracial_entropy(&small, f).unwrap().value();
        let strong = sp.strong_entropy(f).unwrap().value();
        prop_assert!(tracial <= strong + 1e-12);
    }

    #[test]
    fn series_partial_sums_are_monotone(g in family(), t in 1.05f64..4.0) {
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let beta = Beta::from_exp(sp.rho_graph().value.max(1.0) * t).unwrap();
        let tau = kgraph_kms::TraceVector::delta(g.vertex_count(), 0);
        let s = c_partial(&g, &tau, &beta, g.all_colours(), 400).unwrap();
        prop_assert!(s.terms.windows(2).all(|w| w[1].1 >= w[0].1));
        let kv = kms_vector(&sp, &tau, &beta, g.all_colours()).unwrap();
        if s.converged {
            prop_assert!((s.limit_estimate - kv.c).abs() <= 1e-9 * kv.c.max(1.0));
        }
    }

    #[test]
    fn reports_round_trip(g in family()) {
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        for algebra in [Algebra::Toeplitz, Algebra::CuntzKrieger] {
            let d = phase_diagram(&sp, algebra).unwrap();
            let text = report::to_canonical_string(&report::diagram(&g, &d));
            let back: serde_json::Value = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(report::to_canonical_string(&back), text);
        }
    }

    #[test]
    fn cuntz_krieger_parts_refine_toeplitz(g in family()) {
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        for t in sp.transition_set().subharmonic(1e-9).filter(|t| t.radius.value > 1.0 + 1e-9) {
            let beta = Beta::at_radius(t.radius).unwrap();
            let nt = geq_simplex(&sp, &beta, Algebra::Toeplitz).unwrap();
            let no = geq_simplex(&sp, &beta, Algebra::CuntzKrieger).unwrap();
            for (a, b) in nt.iter().zip(&no) {
                prop_assert_eq!(a.colours, b.colours);
                prop_assert!(b.generators.iter().all(|x| a.generators.contains(x)));
            }
        }
    }
}

#[test]
fn single_thread_pool_matches_default() {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for g in common::generated().iter().take(20) {
        let sp = Spectrum::new(g, Settings::default()).unwrap();
        let parallel = phase_diagram(&sp, Algebra::Toeplitz).unwrap();
        let serial = pool.install(|| phase_diagram(&sp, Algebra::Toeplitz).unwrap());
        assert_eq!(parallel, serial);
    }
}

#[test]
fn json_file_round_trip() {
    let g = fixtures::ex1();
    let text = serde_json::to_string(&g.to_file()).unwrap();
    assert_eq!(Skeleton::from_json_str(&text).unwrap(), g);
}
