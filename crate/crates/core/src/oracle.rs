//! Brute-force cross-checks that share no linear algebra with the main
//! pipeline: exact path counts, entropy estimates from them, partial sums
//! of the normalization series, and an exhaustive exact recomputation of
//! trace simplices on small graphs.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::eigencone::{TraceError, TraceVector};
use crate::graph::Skeleton;
use crate::kms::Beta;
use crate::sets::ColorSet;

/// Largest vertex count [`brute_simplex`] accepts.
pub const BRUTE_CAP: usize = 8;

/// Work budget for path-count recurrences, in scalar multiply-adds.
pub const WORK_BUDGET: u128 = 2_000_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("{dim} vertices exceeds the exhaustive-search cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("request needs about {work} operations, over the budget of {budget}")]
    Budget { work: u128, budget: u128 },
    #[error("colour {0} is out of range")]
    ColourOutOfRange(usize),
    #[error("exhaustive recomputation needs unit weights")]
    Weighted,
    #[error("series needs kmax >= {min}, got {found}")]
    TooShort { min: usize, found: usize },
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Partial data of a series: `(k, value)` pairs, the last value as the
/// limit estimate, and whether the tail fell below tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTrace {
    pub terms: Vec<(usize, f64)>,
    pub limit_estimate: f64,
    pub converged: bool,
}

/// Tail tolerance for [`c_partial`].
pub const SERIES_TOL: f64 = 1e-12;

fn check_colours(g: &Skeleton, f: ColorSet) -> Result<Vec<usize>, OracleError> {
    match f.iter().find(|&i| i >= g.colours()) {
        Some(i) => Err(OracleError::ColourOutOfRange(i + 1)),
        None => Ok(f.iter().collect()),
    }
}

fn check_budget(g: &Skeleton, colours: usize, kmax: usize) -> Result<(), OracleError> {
    let n = g.vertex_count() as u128;
    let work = (kmax as u128 + 1) * (colours.max(1) as u128) * n * n;
    if work > WORK_BUDGET {
        return Err(OracleError::Budget {
            work,
            budget: WORK_BUDGET,
        });
    }
    Ok(())
}

/// Applies the recurrence `U_j[k] = U_{j-1}[k] + Lambda_j U_j[k-1]` over
/// the colours of `F` in order, which sums `Lambda^(n) x` over every
/// multidegree `n` of length `k` supported on `F` exactly once. Returns
/// `1^T U_m[k]` for `k = 0..=kmax`.
fn path_sums(g: &Skeleton, colours: &[usize], kmax: usize) -> Vec<BigUint> {
    let n = g.vertex_count();
    let ones = vec![BigUint::one(); n];
    let mut prev: Vec<Vec<BigUint>> = vec![ones.clone(); colours.len()];
    let mut sums = vec![BigUint::from(n)];
    for _ in 1..=kmax {
        let mut below = vec![BigUint::zero(); n];
        for (j, &c) in colours.iter().enumerate() {
            let m = g.matrix(c);
            let mut cur = below.clone();
            for (t, slot) in cur.iter_mut().enumerate() {
                for (s, x) in prev[j].iter().enumerate() {
                    let e = m.get(t, s);
                    if e != 0 && !x.is_zero() {
                        *slot += x * e;
                    }
                }
            }
            prev[j] = cur.clone();
            below = cur;
        }
        sums.push(below.iter().sum());
    }
    sums
}

/// `B_{k,F}`: number of paths of length `k` whose degree is supported on
/// `F`.
pub fn path_count(g: &Skeleton, k: usize, f: ColorSet) -> Result<BigUint, OracleError> {
    let colours = check_colours(g, f)?;
    check_budget(g, colours.len(), k)?;
    if colours.is_empty() {
        return Ok(if k == 0 { BigUint::from(g.vertex_count()) } else { BigUint::zero() });
    }
    Ok(path_sums(g, &colours, k).pop().expect("k + 1 entries"))
}

/// Natural log of a big integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map_or(f64::NAN, |v| (v as f64).ln());
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `(1/k) log B_{k,F}` for `k = 1..=kmax`. Converges like `O(1/k)`, so
/// expect an error of a few hundredths at `kmax = 200` when the dominant
/// component is reached through long transients.
pub fn entropy_estimate(g: &Skeleton, f: ColorSet, kmax: usize) -> Result<SeriesTrace, OracleError> {
    if kmax < 2 {
        return Err(OracleError::TooShort { min: 2, found: kmax });
    }
    let colours = check_colours(g, f)?;
    check_budget(g, colours.len(), kmax)?;
    let counts = if colours.is_empty() {
        let mut c = vec![BigUint::zero(); kmax + 1];
        c[0] = BigUint::from(g.vertex_count());
        c
    } else {
        path_sums(g, &colours, kmax)
    };
    let terms: Vec<(usize, f64)> = (1..=kmax).map(|k| (k, ln_big(&counts[k]) / k as f64)).collect();
    let last = terms[kmax - 1].1;
    let before = terms[kmax - 2].1;
    let converged = last == before || (last - before).abs() < 1e-3;
    Ok(SeriesTrace {
        terms,
        limit_estimate: last,
        converged,
    })
}

/// Partial sums of `sum_n e^{-<n,s> beta} 1^T Lambda^(n) tau` over
/// multidegrees supported on `F`, for total length `k = 0..=kmax`. Stops
/// early after two consecutive terms below [`SERIES_TOL`].
pub fn c_partial(
    g: &Skeleton,
    tau: &TraceVector,
    beta: &Beta,
    f: ColorSet,
    kmax: usize,
) -> Result<SeriesTrace, OracleError> {
    let n = g.vertex_count();
    if tau.len() != n {
        return Err(TraceError::Length {
            expected: n,
            found: tau.len(),
        }
        .into());
    }
    let colours = check_colours(g, f)?;
    check_budget(g, colours.len(), kmax)?;
    let decay: Vec<f64> = colours.iter().map(|&c| beta.decay(g.weight(c))).collect();

    let start: Vec<f64> = tau.values().to_vec();
    let mut partial: f64 = start.iter().sum();
    let mut terms = vec![(0, partial)];
    let mut prev: Vec<Vec<f64>> = vec![start; colours.len()];
    let mut quiet = 0;
    let mut converged = colours.is_empty();
    for k in 1..=kmax {
        if converged {
            break;
        }
        let mut below = vec![0.0; n];
        for (j, &c) in colours.iter().enumerate() {
            let m = g.matrix(c);
            let mut cur = below.clone();
            for (t, slot) in cur.iter_mut().enumerate() {
                let mut acc = 0.0;
                for (s, &x) in prev[j].iter().enumerate() {
                    acc += m.get(t, s) as f64 * x;
                }
                *slot += decay[j] * acc;
            }
            prev[j] = cur.clone();
            below = cur;
        }
        let term: f64 = below.iter().sum();
        partial += term;
        terms.push((k, partial));
        quiet = if term.abs() < SERIES_TOL { quiet + 1 } else { 0 };
        converged = quiet >= 2;
    }
    Ok(SeriesTrace {
        terms,
        limit_estimate: partial,
        converged,
    })
}

fn q(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact reduced row echelon form; returns pivot columns.
fn echelon(rows: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot).take(cols) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Vertices reachable from `v` along edges of colours in `colours`.
fn reach(g: &Skeleton, v: usize, colours: &[usize]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(s) = queue.pop_front() {
        for &c in colours {
            for (t, hit) in seen.iter_mut().enumerate() {
                if g.matrix(c).get(t, s) > 0 && !*hit {
                    *hit = true;
                    queue.push_back(t);
                }
            }
        }
    }
    (0..n).filter(|&t| seen[t]).collect()
}

/// `lambda > rho(H)` iff `lambda I - H` is invertible with an entrywise
/// nonnegative inverse.
fn below_level(h: &[Vec<u64>], lambda: &BigRational) -> bool {
    let k = h.len();
    let mut rows: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..2 * k).map(|_| BigRational::zero()).collect();
            for j in 0..k {
                row[j] = -q(h[i][j]);
            }
            row[i] += lambda;
            row[k + i] = BigRational::one();
            row
        })
        .collect();
    let pivots = echelon(&mut rows, 2 * k);
    if pivots.len() < k || pivots[k - 1] != k - 1 {
        return false;
    }
    rows.iter().all(|row| row[k..].iter().all(|x| !x.is_negative()))
}

/// Extreme points of `{x >= 0, sum x = 1, A x = 0, supp x within allowed}`
/// by trying every support: `x` is extreme iff the columns of `A` on
/// `supp x` have a one-dimensional kernel.
fn extreme_points(a: &[Vec<BigRational>], n: usize, allowed: &[bool]) -> Vec<Vec<BigRational>> {
    let mut found = Vec::new();
    for mask in 1u32..(1 << n) {
        let cols: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        if cols.iter().any(|&v| !allowed[v]) {
            continue;
        }
        let mut rows: Vec<Vec<BigRational>> = a
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let pivots = echelon(&mut rows, cols.len());
        if pivots.len() + 1 != cols.len() {
            continue;
        }
        let free = (0..cols.len()).find(|c| !pivots.contains(c)).expect("one free column");
        let mut x: Vec<BigRational> = vec![BigRational::zero(); cols.len()];
        x[free] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -rows[r][free].clone();
        }
        let positive = x.iter().all(|v| v.is_positive());
        let negative = x.iter().all(|v| v.is_negative());
        if !(positive || negative) {
            continue;
        }
        let total: BigRational = x.iter().sum();
        let mut full = vec![BigRational::zero(); n];
        for (&c, v) in cols.iter().zip(&x) {
            full[c] = v / &total;
        }
        found.push(full);
    }
    found
}

/// Extreme traces of `Tr^F` at `e^beta = lambda`, recomputed from
/// scratch: joint eigenvectors for the colours outside `F`, then a second
/// search restricted to vertices whose `F`-closure has every
/// `rho(H^(i))` below `lambda`. `F` empty skips the entropy filter; `F`
/// equal to all colours gives point masses.
pub fn brute_simplex(g: &Skeleton, lambda: &BigRational, f: ColorSet) -> Result<Vec<TraceVector>, OracleError> {
    let n = g.vertex_count();
    if n > BRUTE_CAP {
        return Err(OracleError::DimensionTooLarge { dim: n, cap: BRUTE_CAP });
    }
    if !g.has_unit_weights() {
        return Err(OracleError::Weighted);
    }
    let in_f = check_colours(g, f)?;
    let outside: Vec<usize> = (0..g.colours()).filter(|c| !in_f.contains(c)).collect();

    let mut a: Vec<Vec<BigRational>> = Vec::new();
    for &j in &outside {
        for t in 0..n {
            let mut row: Vec<BigRational> = (0..n).map(|s| q(g.matrix(j).get(t, s))).collect();
            row[t] -= lambda;
            a.push(row);
        }
    }

    let everything = vec![true; n];
    let mut points = extreme_points(&a, n, &everything);
    if !in_f.is_empty() && !points.is_empty() {
        let allowed: Vec<bool> = (0..n)
            .map(|v| {
                let charged = points.iter().any(|p| !p[v].is_zero());
                charged && {
                    let h = reach(g, v, &in_f);
                    in_f.iter().all(|&i| {
                        let sub: Vec<Vec<u64>> = h
                            .iter()
                            .map(|&t| h.iter().map(|&s| g.matrix(i).get(t, s)).collect())
                            .collect();
                        below_level(&sub, lambda)
                    })
                }
            })
            .collect();
        points = extreme_points(&a, n, &allowed);
    }
    points.sort_by(|x, y| {
        let sx: Vec<usize> = (0..n).filter(|&v| !x[v].is_zero()).collect();
        let sy: Vec<usize> = (0..n).filter(|&v| !y[v].is_zero()).collect();
        sx.cmp(&sy)
    });
    points
        .into_iter()
        .map(|p| TraceVector::from_exact(p).map_err(OracleError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectral::ratio;

    fn c(ix: &[usize]) -> ColorSet {
        ColorSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn path_counts() {
        let g = fixtures::ex1();
        assert_eq!(path_count(&g, 0, c(&[0, 1])).unwrap(), BigUint::from(3u32));
        assert_eq!(path_count(&g, 1, c(&[0, 1])).unwrap(), BigUint::from(28u32));
        assert_eq!(path_count(&g, 1, c(&[0])).unwrap(), BigUint::from(16u32));
        let nil = Skeleton::from_rows(&[vec![vec![0, 1], vec![0, 0]]]).unwrap();
        assert!(path_count(&nil, 30, c(&[0])).unwrap().is_zero());
        // length 2, both colours: (2,0) + (1,1) + (0,2)
        let direct: BigUint = [vec![2, 0], vec![1, 1], vec![0, 2]]
            .into_iter()
            .map(|n| g.degree_matrix(&crate::graph::Multidegree(n)).unwrap().entry_sum())
            .sum();
        assert_eq!(path_count(&g, 2, c(&[0, 1])).unwrap(), direct);
        assert_eq!(path_count(&g, 1, c(&[4])), Err(OracleError::ColourOutOfRange(5)));
    }

    #[test]
    fn big_logs() {
        let x = BigUint::from(5u32).pow(300);
        assert!((ln_big(&x) - 300.0 * 5f64.ln()).abs() < 1e-9);
        assert_eq!(ln_big(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn entropy_estimates() {
        let g = fixtures::ex1();
        for f in [c(&[0]), c(&[0, 1])] {
            let e = entropy_estimate(&g, f, 200).unwrap();
            assert!((e.limit_estimate - 5f64.ln()).abs() < 0.05);
        }
        let loop1 = fixtures::bouquet(&[1]);
        let e = entropy_estimate(&loop1, c(&[0]), 10).unwrap();
        assert!(e.terms.iter().all(|&(_, v)| v == 0.0));
        assert!(entropy_estimate(&g, c(&[0]), 1).is_err());
    }

    #[test]
    fn series_partial_sums() {
        let g = fixtures::ex1();
        let b8 = Beta::from_exp_rational(ratio(8, 1)).unwrap();
        let s = c_partial(&g, &TraceVector::delta(3, 2), &b8, c(&[0, 1]), 500).unwrap();
        assert!(s.converged);
        assert!((s.limit_estimate - 16.0 / 9.0).abs() < 1e-9);
        assert!(s.terms.windows(2).all(|w| w[1].1 >= w[0].1));

        let huge = Beta::from_beta(80.0).unwrap();
        let s = c_partial(&g, &TraceVector::delta(3, 0), &huge, c(&[0, 1]), 50).unwrap();
        assert!(s.converged);
        assert!((s.limit_estimate - 1.0).abs() < 1e-12);

        let b4 = Beta::from_exp_rational(ratio(4, 1)).unwrap();
        let s = c_partial(&g, &TraceVector::delta(3, 0), &b4, c(&[0, 1]), 60).unwrap();
        assert!(!s.converged);
        let n = s.terms.len();
        assert!(s.terms[n - 1].1 - s.terms[n - 2].1 > 1.0);
    }

    #[test]
    fn brute_examples() {
        let g = fixtures::ex1();
        let half = |a: usize, b: usize| {
            let mut v = vec![ratio(0, 1); 3];
            v[a] = ratio(1, 2);
            v[b] = ratio(1, 2);
            TraceVector::from_exact(v).unwrap()
        };
        assert_eq!(brute_simplex(&g, &ratio(5, 1), c(&[1])).unwrap(), vec![half(0, 2)]);
        assert_eq!(brute_simplex(&g, &ratio(4, 1), c(&[1])).unwrap(), vec![half(1, 2)]);
        for f in [c(&[]), c(&[0]), c(&[1])] {
            assert!(brute_simplex(&g, &ratio(7, 1), f).unwrap().is_empty());
        }
        assert_eq!(
            brute_simplex(&g, &ratio(2, 1), c(&[])).unwrap(),
            vec![TraceVector::delta(3, 2)]
        );
        assert_eq!(brute_simplex(&g, &ratio(8, 1), c(&[0, 1])).unwrap().len(), 3);
        let loop1 = fixtures::bouquet(&[1]);
        assert_eq!(brute_simplex(&loop1, &ratio(2, 1), c(&[0])).unwrap().len(), 1);
        assert!(brute_simplex(&loop1, &ratio(2, 1), c(&[])).unwrap().is_empty());
    }

    #[test]
    fn brute_refuses_large() {
        let m: Vec<Vec<u64>> = (0..9).map(|i| (0..9).map(|j| u64::from(i == j)).collect()).collect();
        let g = Skeleton::from_rows(&[m]).unwrap();
        assert_eq!(
            brute_simplex(&g, &ratio(2, 1), c(&[0])),
            Err(OracleError::DimensionTooLarge { dim: 9, cap: 8 })
        );
    }
}
