//! Seeded generators shared by the integration tests and benches.

#![allow(dead_code)]

use kgraph_kms::fixtures::{self, ThreeVertexParams};
use kgraph_kms::{CountMatrix, Skeleton};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random block lower-triangular base matrix on at most `max_vertices`
/// vertices, with up to three colours given by small polynomials in it.
pub fn block_family(seed: u64, max_vertices: usize) -> Skeleton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices);
    let mut block = vec![0usize; n];
    for v in 1..n {
        block[v] = block[v - 1] + usize::from(rng.gen_bool(0.5));
    }
    let mut base = CountMatrix::zeros(n);
    for t in 0..n {
        for s in 0..n {
            let x = if block[t] == block[s] {
                if rng.gen_bool(0.6) { rng.gen_range(1..=2) } else { 0 }
            } else if block[t] > block[s] && rng.gen_bool(0.4) {
                1
            } else {
                0
            };
            base.set(t, s, x);
        }
    }
    let colours = rng.gen_range(1..=3);
    let polys: Vec<Vec<u64>> = (0..colours)
        .map(|_| {
            let mut p = vec![rng.gen_range(0..=1), rng.gen_range(1..=2)];
            if n <= 4 && rng.gen_bool(0.3) {
                p.push(1);
            }
            p
        })
        .collect();
    fixtures::polynomial_family(&base, &polys)
}

/// The 50 generated families used across the suites.
pub fn generated() -> Vec<Skeleton> {
    (0..50).map(|seed| block_family(seed, 6)).collect()
}

/// Commuting three-vertex instances with all loop counts positive and the
/// ordering `n > m > l` of colour-wise maxima.
pub fn three_vertex_case_one() -> Vec<ThreeVertexParams> {
    let mut out = Vec::new();
    for n1 in 3..=6u64 {
        for n2 in 3..=6 {
            for m1 in 2..=4 {
                for m2 in 2..=4 {
                    for q1 in 1..=3 {
                        for q2 in 1..=3 {
                            for p1 in 1..=2 {
                                for p2 in 1..=2 {
                                    for l in [[1, 1], [2, 2], [2, 1], [1, 2]] {
                                        let t = ThreeVertexParams {
                                            n: [n1, n2],
                                            m: [m1, m2],
                                            l,
                                            p: [p1, p2],
                                            q: [q1, q2],
                                        };
                                        let (n, m) = (n1.max(n2), m1.max(m2));
                                        if n > m && m > l[0].max(l[1]) && t.commutes() {
                                            out.push(t);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Named fixtures with at most eight vertices.
pub fn small_fixtures() -> Vec<(String, Skeleton)> {
    let mut out = vec![
        ("ex1".to_string(), fixtures::ex1()),
        ("ex2".to_string(), fixtures::ex2()),
        ("ex1-swapped".to_string(), swapped(&fixtures::ex1())),
        ("bouquet-1-1".to_string(), fixtures::bouquet(&[1, 1])),
        ("bouquet-2-3".to_string(), fixtures::bouquet(&[2, 3])),
        ("equal-4-4".to_string(), equal_loops()),
    ];
    for (i, g) in generated().into_iter().enumerate() {
        out.push((format!("generated-{i}"), g));
    }
    out
}

pub fn swapped(g: &Skeleton) -> Skeleton {
    let mut ms = g.matrices().to_vec();
    ms.reverse();
    Skeleton::new(ms).expect("reordering keeps commutation")
}

/// `n = m > l` with both colours equal: two eigenvectors at 4.
pub fn equal_loops() -> Skeleton {
    let a = vec![vec![4, 0, 0], vec![0, 4, 0], vec![1, 1, 2]];
    Skeleton::from_rows(&[a.clone(), a]).expect("equal matrices commute")
}
