//! Small named graphs used throughout the tests, benches and docs.

use crate::graph::{CountMatrix, Skeleton};

/// Rank-2 graph on `(v1, v2, v3)` with a loop-carrying source-free vertex
/// at each level: transitions at `log 2`, `log 4` and `log 5`.
pub fn ex1() -> Skeleton {
    Skeleton::from_rows(&[
        vec![vec![5, 0, 0], vec![0, 4, 0], vec![3, 2, 2]],
        vec![vec![4, 0, 0], vec![0, 3, 0], vec![2, 1, 2]],
    ])
    .expect("commuting")
}

/// [`ex1`] with the loops at `v2` removed, turning `v2` into a source.
pub fn ex2() -> Skeleton {
    Skeleton::from_rows(&[
        vec![vec![5, 0, 0], vec![0, 0, 0], vec![3, 2, 2]],
        vec![vec![4, 0, 0], vec![0, 0, 0], vec![2, 2, 2]],
    ])
    .expect("commuting")
}

/// Parameters of the three-vertex rank-2 family
/// `[[n,0,0],[0,m,0],[q,p,l]]` per colour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreeVertexParams {
    pub n: [u64; 2],
    pub m: [u64; 2],
    pub l: [u64; 2],
    /// Edges `v2 -> v3`.
    pub p: [u64; 2],
    /// Edges `v1 -> v3`.
    pub q: [u64; 2],
}

impl ThreeVertexParams {
    pub fn matrices(&self) -> [CountMatrix; 2] {
        [0, 1].map(|i| {
            CountMatrix::from_rows(&[
                vec![self.n[i], 0, 0],
                vec![0, self.m[i], 0],
                vec![self.q[i], self.p[i], self.l[i]],
            ])
        })
    }

    /// The two matrices commute iff `q1 (n2 - l2) = q2 (n1 - l1)` and
    /// `p1 (m2 - l2) = p2 (m1 - l1)`.
    pub fn commutes(&self) -> bool {
        let s = |x: u64| x as i128;
        s(self.q[0]) * (s(self.n[1]) - s(self.l[1])) == s(self.q[1]) * (s(self.n[0]) - s(self.l[0]))
            && s(self.p[0]) * (s(self.m[1]) - s(self.l[1]))
                == s(self.p[1]) * (s(self.m[0]) - s(self.l[0]))
    }

    pub fn skeleton(&self) -> Option<Skeleton> {
        Skeleton::new(self.matrices().to_vec()).ok()
    }
}

/// The parameters of [`ex1`].
pub fn ex1_params() -> ThreeVertexParams {
    ThreeVertexParams {
        n: [5, 4],
        m: [4, 3],
        l: [2, 2],
        p: [2, 1],
        q: [3, 2],
    }
}

/// One vertex with `loops[i]` loops of colour `i`.
pub fn bouquet(loops: &[u64]) -> Skeleton {
    Skeleton::new(
        loops
            .iter()
            .map(|&k| CountMatrix::from_rows(&[vec![k]]))
            .collect(),
    )
    .expect("1x1 matrices commute")
}

/// `Lambda^(i) = sum_k polys[i][k] B^k`. Polynomials in one matrix
/// commute, so any nonnegative base and coefficients give a valid skeleton.
pub fn polynomial_family(base: &CountMatrix, polys: &[Vec<u64>]) -> Skeleton {
    let n = base.dim();
    let degree = polys.iter().map(Vec::len).max().unwrap_or(0);
    let mut powers = vec![CountMatrix::identity(n)];
    for k in 1..degree {
        let prev = &powers[k - 1];
        let mut next = CountMatrix::zeros(n);
        for t in 0..n {
            for s in 0..n {
                let x: u64 = (0..n).map(|r| base.get(t, r) * prev.get(r, s)).sum();
                next.set(t, s, x);
            }
        }
        powers.push(next);
    }
    let matrices = polys
        .iter()
        .map(|coeffs| {
            let mut m = CountMatrix::zeros(n);
            for (c, p) in coeffs.iter().zip(&powers) {
                for t in 0..n {
                    for s in 0..n {
                        m.set(t, s, m.get(t, s) + c * p.get(t, s));
                    }
                }
            }
            m
        })
        .collect();
    Skeleton::new(matrices).expect("polynomials in one matrix commute")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex1_params_match_ex1() {
        let p = ex1_params();
        assert!(p.commutes());
        assert_eq!(p.skeleton().unwrap(), ex1());
    }

    #[test]
    fn polynomial_family_commutes() {
        let b = CountMatrix::from_rows(&[vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1]]);
        let g = polynomial_family(&b, &[vec![0, 1], vec![1, 0, 1]]);
        assert_eq!(g.matrix(0), &b);
        assert_eq!(g.matrix(1).rows(), vec![vec![2, 3, 0], vec![0, 5, 0], vec![2, 1, 2]]);
    }

    #[test]
    fn commutation_formula_agrees_with_validation() {
        for n1 in 1..4 {
            for q2 in 0..3 {
                let p = ThreeVertexParams {
                    n: [n1, 3],
                    m: [2, 2],
                    l: [1, 1],
                    p: [1, 1],
                    q: [1, q2],
                };
                assert_eq!(p.commutes(), p.skeleton().is_some(), "{p:?}");
            }
        }
    }
}
