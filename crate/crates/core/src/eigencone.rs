//! Extreme points of intersections of nonnegative eigencones.
//!
//! The polytope is `{x >= 0, sum x = 1, Lambda^(i) x = lambda_i x for each
//! constrained colour, x_v = 0 on forbidden vertices}`. Its vertices are the
//! normalized solutions whose support `S` carries a one-dimensional kernel
//! spanned by a strictly positive vector. Two facts keep the support search
//! small: a support is always forward closed under the constrained colours
//! (a positive eigenvector cannot leak mass out of its support), and no
//! vertex support contains another one.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::Skeleton;
use crate::linalg::{rational, Dense, Scalar};
use crate::par;
use crate::sets::{ColorSet, VertexSet};
use crate::settings::Settings;
use crate::spectral::{Level, Radius, Spectrum};

/// Entries at or below this are outside the support of a floating vector.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Hard ceiling on the enumeration cap (support masks are `u64`).
const MASK_BITS: usize = 63;

#[derive(Debug, Error, PartialEq)]
pub enum EigenconeError {
    #[error("{dim} vertices exceed the enumeration cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("the cone is empty")]
    EmptyCone,
    #[error("no common nonnegative eigenvector found: {0}")]
    NotFound(String),
    #[error("colour {0} out of range")]
    ColourOutOfRange(usize),
}

/// An l1-normalized nonnegative vector over the vertices, with its exact
/// rational form when known.
#[derive(Clone, PartialEq)]
pub struct TraceVector {
    values: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum TraceError {
    #[error("entry {index} is negative ({value})")]
    Negative { index: usize, value: f64 },
    #[error("entries sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("trace has {found} entries, graph has {expected} vertices")]
    Length { expected: usize, found: usize },
}

impl TraceVector {
    /// Accepts a vector that is nonnegative and sums to one within `tol`.
    pub fn new(values: Vec<f64>, tol: f64) -> Result<Self, TraceError> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &x)| x < -tol || x.is_nan()) {
            return Err(TraceError::Negative { index, value });
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(TraceError::NotNormalized(total));
        }
        Ok(TraceVector {
            values: values.into_iter().map(|x| x.max(0.0)).collect(),
            exact: None,
        })
    }

    /// Exact rational trace; must be nonnegative and sum to exactly one.
    pub fn from_exact(values: Vec<BigRational>) -> Result<Self, TraceError> {
        if let Some((index, x)) = values.iter().enumerate().find(|(_, x)| x.is_negative_rational()) {
            return Err(TraceError::Negative {
                index,
                value: x.approx(),
            });
        }
        let total: BigRational = values.iter().sum();
        if total != rational(1) {
            return Err(TraceError::NotNormalized(total.approx()));
        }
        Ok(TraceVector {
            values: values.iter().map(|x| x.approx()).collect(),
            exact: Some(values),
        })
    }

    /// The point mass at `v`.
    pub fn delta(len: usize, v: usize) -> Self {
        let mut exact = vec![BigRational::zero(); len];
        exact[v] = rational(1);
        let mut values = vec![0.0; len];
        values[v] = 1.0;
        TraceVector {
            values,
            exact: Some(exact),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        match &self.exact {
            Some(q) => VertexSet::from_indices(q.len(), (0..q.len()).filter(|&v| !q[v].is_zero())),
            None => VertexSet::from_indices(
                self.values.len(),
                (0..self.values.len()).filter(|&v| self.values[v] > SUPPORT_TOL),
            ),
        }
    }

    /// The vertex carrying all the mass, if this is a point mass.
    pub fn as_delta(&self) -> Option<usize> {
        let s = self.support();
        (s.count() == 1).then(|| s.iter().next().expect("one element"))
    }

    pub fn sup_distance(&self, other: &TraceVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Debug for TraceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => f
                .debug_list()
                .entries(q.iter().map(|x| format!("{x}")))
                .finish(),
            None => f.debug_list().entries(&self.values).finish(),
        }
    }
}

trait RationalSign {
    fn is_negative_rational(&self) -> bool;
}

impl RationalSign for BigRational {
    fn is_negative_rational(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

/// Vertex set of an eigencone intersection.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSimplex {
    /// `(colour, required eigenvalue)` per constrained colour.
    pub targets: Vec<(usize, Level)>,
    pub extreme_points: Vec<TraceVector>,
    pub exact: bool,
}

impl ConeSimplex {
    pub fn colours(&self) -> ColorSet {
        ColorSet::from_indices(self.targets.iter().map(|(c, _)| *c))
    }

    pub fn is_empty(&self) -> bool {
        self.extreme_points.is_empty()
    }
}

/// Union of the supports of the extreme points.
pub fn support_of_cone(c: &ConeSimplex) -> Result<VertexSet, EigenconeError> {
    let mut it = c.extreme_points.iter();
    let first = it.next().ok_or(EigenconeError::EmptyCone)?.support();
    Ok(it.fold(first, |acc, p| acc.union(&p.support())))
}

/// Enumerates the vertices of the eigencone polytope. Exact rational
/// arithmetic is used when every target is exact.
pub fn eigencone_vertices(
    g: &Skeleton,
    targets: &[(usize, Level)],
    forbidden: &VertexSet,
    settings: &Settings,
) -> Result<ConeSimplex, EigenconeError> {
    let n = g.vertex_count();
    let cap = settings.enumeration_cap.min(MASK_BITS);
    if n > cap {
        return Err(EigenconeError::DimensionTooLarge { dim: n, cap });
    }
    if let Some((c, _)) = targets.iter().find(|(c, _)| *c >= g.colours()) {
        return Err(EigenconeError::ColourOutOfRange(c + 1));
    }
    let exact = targets.iter().all(|(_, l)| l.exact.is_some());
    let extreme_points = if exact {
        let problem = Problem::new(g, targets, |l| l.exact.clone().expect("exact target"));
        problem.vertices(forbidden, settings)
    } else {
        let problem = Problem::new(g, targets, |l| l.value);
        problem.vertices(forbidden, settings)
    };
    Ok(ConeSimplex {
        targets: targets.to_vec(),
        extreme_points,
        exact,
    })
}

/// Conversion of candidate kernel vectors into trace vectors.
trait Finish: Scalar {
    fn finish(v: &[Self], support: &[usize], n: usize, scale: f64) -> Option<TraceVector>;
}

impl Finish for f64 {
    fn finish(v: &[f64], support: &[usize], n: usize, scale: f64) -> Option<TraceVector> {
        let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
        if !v.iter().all(|&x| (sign * x).is_positive(scale)) {
            return None;
        }
        let total: f64 = v.iter().map(|x| sign * x).sum();
        let mut values = vec![0.0; n];
        for (&s, &x) in support.iter().zip(v) {
            values[s] = sign * x / total;
        }
        Some(TraceVector {
            values,
            exact: None,
        })
    }
}

impl Finish for BigRational {
    fn finish(v: &[BigRational], support: &[usize], n: usize, _scale: f64) -> Option<TraceVector> {
        let positive = v.iter().all(num_traits::Signed::is_positive);
        let negative = v.iter().all(num_traits::Signed::is_negative);
        if !(positive || negative) {
            return None;
        }
        let total: BigRational = v.iter().sum();
        let mut exact = vec![BigRational::zero(); n];
        for (&s, x) in support.iter().zip(v) {
            exact[s] = x / &total;
        }
        TraceVector::from_exact(exact).ok()
    }
}

struct Problem<'a, T> {
    g: &'a Skeleton,
    /// `(colour, target)` in scalar form.
    targets: Vec<(usize, T)>,
    /// Successor mask per vertex under the constrained colours.
    succ: Vec<u64>,
    scale: f64,
}

impl<'a, T: Finish> Problem<'a, T> {
    fn new(
        g: &'a Skeleton,
        targets: &[(usize, Level)],
        conv: impl Fn(&Level) -> T,
    ) -> Self {
        let n = g.vertex_count();
        let succ = (0..n)
            .map(|s| {
                targets.iter().fold(0u64, |acc, (c, _)| {
                    g.matrix(*c).successors(s).fold(acc, |a, t| a | (1 << t))
                })
            })
            .collect();
        let mut scale: f64 = 1.0;
        for (c, l) in targets {
            scale = scale.max(l.value.abs());
            let m = g.matrix(*c);
            for t in 0..n {
                for s in 0..n {
                    scale = scale.max(m.get(t, s) as f64);
                }
            }
        }
        Problem {
            g,
            targets: targets.iter().map(|(c, l)| (*c, conv(l))).collect(),
            succ,
            scale,
        }
    }

    fn is_closed(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.succ[s] & !mask != 0 {
                return false;
            }
        }
        true
    }

    /// Kernel of the constraint system restricted to rows and columns `S`.
    fn candidate(&self, support: &[usize]) -> Option<TraceVector> {
        let k = support.len();
        let rows = self.targets.len() * k;
        if rows == 0 {
            // no constraints: only point masses are vertices
            return (k == 1).then(|| TraceVector::delta(self.g.vertex_count(), support[0]));
        }
        let mut a = Dense::<T>::zeros(rows, k);
        for (ci, (c, lambda)) in self.targets.iter().enumerate() {
            let m = self.g.matrix(*c);
            for (ti, &t) in support.iter().enumerate() {
                for (si, &s) in support.iter().enumerate() {
                    let mut x = T::from_u64(m.get(t, s));
                    if t == s {
                        x = x - lambda.clone();
                    }
                    *a.at_mut(ci * k + ti, si) = x;
                }
            }
        }
        let ns = a.nullspace();
        if ns.len() != 1 {
            return None;
        }
        T::finish(&ns[0], support, self.g.vertex_count(), self.scale)
    }

    fn vertices(&self, forbidden: &VertexSet, settings: &Settings) -> Vec<TraceVector> {
        let n = self.g.vertex_count();
        let allowed: u64 = (0..n)
            .filter(|&v| !forbidden.contains(v))
            .fold(0, |acc, v| acc | (1 << v));
        // Closed supports inside the allowed vertices, bucketed by size.
        let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        let mut sub = allowed;
        while sub != 0 {
            if self.is_closed(sub) {
                by_size[sub.count_ones() as usize].push(sub);
            }
            sub = (sub - 1) & allowed;
        }

        let mut found: Vec<(u64, TraceVector)> = Vec::new();
        for bucket in by_size.iter_mut().skip(1) {
            bucket.retain(|&m| !found.iter().any(|(f, _)| m & f == *f));
            bucket.sort_unstable_by(|a, b| lex_cmp(*a, *b));
            let hits: Vec<(u64, TraceVector)> = par::filter_map(bucket, |&mask| {
                let support: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                self.candidate(&support).map(|p| (mask, p))
            });
            found.extend(hits);
        }

        let mut points: Vec<(u64, TraceVector)> = Vec::new();
        for (mask, p) in found {
            if p.exact.is_none() && !self.residual_ok(&p, settings.residual_tol) {
                continue;
            }
            if points
                .iter()
                .any(|(_, q)| q.sup_distance(&p) <= settings.dedup_tol)
            {
                continue;
            }
            points.push((mask, p));
        }
        points.sort_by(|a, b| lex_cmp(a.0, b.0));
        points.into_iter().map(|(_, p)| p).collect()
    }

    fn residual_ok(&self, p: &TraceVector, tol: f64) -> bool {
        self.targets.iter().all(|(c, lambda)| {
            let lambda = lambda.approx();
            let image = self.g.matrix(*c).mul_vec_f64(&p.values);
            image
                .iter()
                .zip(&p.values)
                .all(|(y, x)| (y - lambda * x).abs() <= tol)
        })
    }
}

/// Lexicographic order of the sorted member lists of two masks.
fn lex_cmp(a: u64, b: u64) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// A common nonnegative eigenvector of all colours with its eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct CommonEigenvector {
    pub vector: TraceVector,
    pub eigenvalues: Vec<Radius>,
}

/// Finds one simultaneous nonnegative eigenvector. Starts from the cone of
/// the colour attaining `rho(Lambda)` at that radius and, colour by colour,
/// intersects with the eigencone at the largest component radius that
/// keeps the intersection nonempty. Commutation makes each intersection
/// invariant under the remaining colours, so a choice always exists.
pub fn common_eigenvector(spectrum: &Spectrum<'_>) -> Result<CommonEigenvector, EigenconeError> {
    let g = spectrum.graph();
    let settings = spectrum.settings();
    let tol = settings.compare_tol;
    let rho = spectrum.rho_graph();
    let lead = (0..g.colours())
        .find(|&i| {
            spectrum.colour_root(i).radius().cmp_level(&rho.as_level(), tol) == Ordering::Equal
        })
        .expect("some colour attains the maximum");
    let none = VertexSet::empty(g.vertex_count());

    let mut chosen: Vec<(usize, Radius)> = vec![(lead, spectrum.colour_root(lead).radius())];
    let mut cone = eigencone_vertices(g, &levels(&chosen), &none, settings)?;
    if cone.is_empty() {
        return Err(EigenconeError::NotFound(format!(
            "colour {} has no nonnegative eigenvector at {rho}",
            lead + 1
        )));
    }
    for j in (0..g.colours()).filter(|&j| j != lead) {
        let mut candidates: Vec<Radius> = Vec::new();
        for c in &spectrum.colour_root(j).components {
            let r = c.radius();
            if !candidates
                .iter()
                .any(|x| x.cmp_level(&r.as_level(), tol) == Ordering::Equal)
            {
                candidates.push(r);
            }
        }
        candidates.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut next = None;
        for mu in candidates {
            let mut trial = chosen.clone();
            trial.push((j, mu));
            let c = eigencone_vertices(g, &levels(&trial), &none, settings)?;
            if !c.is_empty() {
                next = Some((trial, c));
                break;
            }
        }
        match next {
            Some((trial, c)) => {
                chosen = trial;
                cone = c;
            }
            None => {
                return Err(EigenconeError::NotFound(format!(
                    "no eigenvalue of colour {} has an eigenvector in the current cone",
                    j + 1
                )))
            }
        }
    }
    chosen.sort_by_key(|(c, _)| *c);
    Ok(CommonEigenvector {
        vector: cone.extreme_points[0].clone(),
        eigenvalues: chosen.into_iter().map(|(_, r)| r).collect(),
    })
}

fn levels(chosen: &[(usize, Radius)]) -> Vec<(usize, Level)> {
    chosen.iter().map(|(c, r)| (*c, r.as_level())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectral::ratio;

    fn lvl(x: u64) -> Level {
        Level::rational(rational(x))
    }

    fn none(n: usize) -> VertexSet {
        VertexSet::empty(n)
    }

    #[test]
    fn single_colour_cone_at_five() {
        let g = fixtures::ex1();
        let c = eigencone_vertices(&g, &[(0, lvl(5))], &none(3), &Settings::default()).unwrap();
        assert!(c.exact);
        assert_eq!(c.extreme_points.len(), 1);
        assert_eq!(
            c.extreme_points[0].exact().unwrap(),
            &[ratio(1, 2), ratio(0, 1), ratio(1, 2)]
        );
        assert_eq!(support_of_cone(&c).unwrap(), VertexSet::from_indices(3, [0, 2]));
    }

    #[test]
    fn joint_cone_at_two() {
        let g = fixtures::ex1();
        let c = eigencone_vertices(&g, &[(0, lvl(2)), (1, lvl(2))], &none(3), &Settings::default()).unwrap();
        assert_eq!(c.extreme_points, vec![TraceVector::delta(3, 2)]);
        assert_eq!(support_of_cone(&c).unwrap(), VertexSet::singleton(3, 2));
    }

    #[test]
    fn infeasible_levels_give_empty_cones() {
        let g = fixtures::ex1();
        let c = eigencone_vertices(&g, &[(0, lvl(100))], &none(3), &Settings::default()).unwrap();
        assert!(c.is_empty());
        assert_eq!(support_of_cone(&c), Err(EigenconeError::EmptyCone));
        let c = eigencone_vertices(&g, &[(0, Level::approx(7.3))], &none(3), &Settings::default()).unwrap();
        assert!(c.is_empty());
        assert!(!c.exact);
    }

    #[test]
    fn forbidden_vertices_are_respected() {
        let g = fixtures::ex1();
        let forbid = VertexSet::singleton(3, 0);
        let c = eigencone_vertices(&g, &[(0, lvl(5))], &forbid, &Settings::default()).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn float_mode_matches_exact() {
        let g = fixtures::ex1();
        let e = eigencone_vertices(&g, &[(0, lvl(4))], &none(3), &Settings::default()).unwrap();
        let f = eigencone_vertices(&g, &[(0, Level::approx(4.0))], &none(3), &Settings::default()).unwrap();
        assert_eq!(e.extreme_points.len(), 1);
        assert_eq!(f.extreme_points.len(), 1);
        assert!(e.extreme_points[0].sup_distance(&f.extreme_points[0]) < 1e-12);
    }

    #[test]
    fn multi_vertex_cone() {
        // identity at 1: every point mass is a vertex
        let g = Skeleton::from_rows(&[vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]]).unwrap();
        let c = eigencone_vertices(&g, &[(0, lvl(1))], &none(3), &Settings::default()).unwrap();
        assert_eq!(
            c.extreme_points,
            (0..3).map(|v| TraceVector::delta(3, v)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn dimension_cap() {
        let g = Skeleton::from_rows(&[vec![vec![0; 3]; 3]]).unwrap();
        let tight = Settings {
            enumeration_cap: 2,
            ..Settings::default()
        };
        assert_eq!(
            eigencone_vertices(&g, &[(0, lvl(1))], &none(3), &tight),
            Err(EigenconeError::DimensionTooLarge { dim: 3, cap: 2 })
        );
    }

    #[test]
    fn common_eigenvector_of_ex1() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let ce = common_eigenvector(&sp).unwrap();
        assert_eq!(ce.vector.exact().unwrap(), &[ratio(1, 2), ratio(0, 1), ratio(1, 2)]);
        assert_eq!(ce.eigenvalues, vec![Radius::exact(5), Radius::exact(4)]);
        for (i, r) in ce.eigenvalues.iter().enumerate() {
            let image = g.matrix(i).mul_vec_f64(ce.vector.values());
            for (y, x) in image.iter().zip(ce.vector.values()) {
                assert!((y - r.value * x).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn common_eigenvector_single_colour() {
        let g = Skeleton::from_rows(&[vec![vec![1, 1], vec![1, 0]]]).unwrap();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let ce = common_eigenvector(&sp).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((ce.vector.values()[0] / ce.vector.values()[1] - phi).abs() < 1e-9);
    }

    #[test]
    fn lex_order() {
        assert_eq!(lex_cmp(0b001, 0b110), Ordering::Less);
        assert_eq!(lex_cmp(0b011, 0b001), Ordering::Greater);
        assert_eq!(lex_cmp(0b101, 0b011), Ordering::Greater);
    }
}
