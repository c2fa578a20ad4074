//! Perron–Frobenius data, entropies and the transition set.
//!
//! Radii are computed per irreducible component of each colour: power
//! iteration on `C + I` with Collatz–Wielandt brackets, followed by an exact
//! rational certificate when the radius looks like an integer. Every
//! graph-level quantity (vertex entropies, tracial entropies, the transition
//! set) is a maximum of component radii over some forward-closed set, so the
//! component tables are computed once per graph and reused.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::graph::{CountMatrix, Skeleton};
use crate::linalg::{rational, Dense};
use crate::par;
use crate::scc::strongly_connected;
use crate::sets::{ColorSet, VertexSet};
use crate::settings::Settings;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("power iteration did not converge after {iterations} steps (bracket [{lower}, {upper}])")]
    NonConvergence {
        iterations: usize,
        lower: f64,
        upper: f64,
    },
    #[error("empty colour set")]
    EmptyColorSet,
    #[error("empty trace")]
    EmptyTrace,
    #[error("colour {0} out of range")]
    ColourOutOfRange(usize),
}

/// A spectral radius, with its exact integer value when certified.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Radius {
    pub value: f64,
    pub exact: Option<u64>,
}

impl Radius {
    pub const ZERO: Radius = Radius {
        value: 0.0,
        exact: Some(0),
    };

    pub fn exact(v: u64) -> Self {
        Radius {
            value: v as f64,
            exact: Some(v),
        }
    }

    pub fn approx(value: f64) -> Self {
        Radius { value, exact: None }
    }

    pub fn is_zero(&self) -> bool {
        self.exact == Some(0) || self.value == 0.0
    }

    /// `self^(1/s)`: the radius seen by a colour of weight `s`. Unit weight
    /// is the identity, bit for bit.
    pub fn scaled(self, s: f64) -> Self {
        if s == 1.0 || self.is_zero() {
            self
        } else {
            Radius::approx(self.value.powf(1.0 / s))
        }
    }

    pub fn entropy(&self) -> Entropy {
        Entropy::of_radius(self.value)
    }

    pub fn as_level(&self) -> Level {
        Level {
            value: self.value,
            exact: self.exact.map(rational),
        }
    }

    /// Compares against a level; exact when both sides are exact, otherwise
    /// equal within `tol`.
    pub fn cmp_level(&self, level: &Level, tol: f64) -> Ordering {
        if let (Some(a), Some(b)) = (self.exact, &level.exact) {
            return rational(a).cmp(b);
        }
        let d = self.value - level.value;
        if d.abs() <= tol {
            Ordering::Equal
        } else if d < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Tolerance-aware maximum; on a tie the exact representative wins.
    pub fn max_of(a: Radius, b: Radius, tol: f64) -> Radius {
        match a.cmp_level(&b.as_level(), tol) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if a.exact.is_some() {
                    a
                } else {
                    b
                }
            }
        }
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}", self.value),
        }
    }
}

/// A positive real threshold (typically `e^beta` or `e^{s_i beta}`), exact
/// when known as a rational.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    pub value: f64,
    pub exact: Option<BigRational>,
}

impl Level {
    pub fn approx(value: f64) -> Self {
        Level { value, exact: None }
    }

    pub fn rational(q: BigRational) -> Self {
        Level {
            value: num_traits::ToPrimitive::to_f64(&q).unwrap_or(f64::NAN),
            exact: Some(q),
        }
    }
}

/// Logarithmic growth rate. The nilpotent case is its own variant so it can
/// never be confused with a finite value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum Entropy {
    NegInfinity,
    Finite(f64),
}

impl Entropy {
    pub fn of_radius(r: f64) -> Self {
        if r > 0.0 {
            Entropy::Finite(r.ln())
        } else {
            Entropy::NegInfinity
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Entropy::NegInfinity => f64::NEG_INFINITY,
            Entropy::Finite(x) => x,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Entropy::Finite(_))
    }

    fn scale(self, s: f64) -> Self {
        match self {
            Entropy::NegInfinity => Entropy::NegInfinity,
            Entropy::Finite(x) if s == 1.0 => Entropy::Finite(x),
            Entropy::Finite(x) => Entropy::Finite(x / s),
        }
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entropy::NegInfinity => write!(f, "-inf"),
            Entropy::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// Radius of one irreducible component.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentRoot {
    pub members: Vec<usize>,
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<u64>,
}

impl ComponentRoot {
    pub fn radius(&self) -> Radius {
        Radius {
            value: self.rho,
            exact: self.exact,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerronResult {
    pub rho: f64,
    pub exact: Option<u64>,
    pub lower: f64,
    pub upper: f64,
    pub components: Vec<ComponentRoot>,
}

impl PerronResult {
    pub fn is_exact_integer(&self) -> bool {
        self.exact.is_some()
    }

    pub fn radius(&self) -> Radius {
        Radius {
            value: self.rho,
            exact: self.exact,
        }
    }

    pub fn component_roots(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.rho).collect()
    }
}

/// Spectral radius of a nonnegative integer matrix, per irreducible
/// component.
pub fn perron_root(m: &CountMatrix, settings: &Settings) -> Result<PerronResult, SpectralError> {
    let comps = strongly_connected(m);
    let roots: Vec<Result<ComponentRoot, SpectralError>> =
        par::map(&comps, |c| component_root(m, c, settings));
    let components = roots.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut best: Option<&ComponentRoot> = None;
    for c in &components {
        best = Some(match best {
            None => c,
            Some(b) => {
                if Radius::max_of(b.radius(), c.radius(), settings.compare_tol) == b.radius() {
                    b
                } else {
                    c
                }
            }
        });
    }
    Ok(match best {
        None => PerronResult {
            rho: 0.0,
            exact: Some(0),
            lower: 0.0,
            upper: 0.0,
            components,
        },
        Some(b) => PerronResult {
            rho: b.rho,
            exact: b.exact,
            lower: b.lower,
            upper: b.upper,
            components: components.clone(),
        },
    })
}

fn component_root(
    m: &CountMatrix,
    members: &[usize],
    settings: &Settings,
) -> Result<ComponentRoot, SpectralError> {
    let sub = m.submatrix(members);
    if members.len() == 1 {
        let v = sub.get(0, 0);
        return Ok(ComponentRoot {
            members: members.to_vec(),
            rho: v as f64,
            lower: v as f64,
            upper: v as f64,
            exact: Some(v),
        });
    }
    let (lower, upper) = power_bracket(&sub, settings)?;
    let rho = 0.5 * (lower + upper);
    let exact = certify_integer(&sub, rho, settings.compare_tol);
    Ok(ComponentRoot {
        members: members.to_vec(),
        rho: exact.map_or(rho, |r| r as f64),
        lower,
        upper,
        exact,
    })
}

/// Collatz–Wielandt bracket for the radius of an irreducible matrix, via
/// power iteration on `C + I` (primitive, so the iteration converges).
fn power_bracket(c: &CountMatrix, settings: &Settings) -> Result<(f64, f64), SpectralError> {
    let n = c.dim();
    let mut x = vec![1.0 / n as f64; n];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for _ in 0..settings.max_iterations {
        let mut y = c.mul_vec_f64(&x);
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += xi;
        }
        lower = f64::INFINITY;
        upper = 0.0;
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lower = lower.min(r);
            upper = upper.max(r);
        }
        if upper - lower <= settings.bracket_tol * upper.max(1.0) {
            return Ok((lower - 1.0, upper - 1.0));
        }
        let total: f64 = y.iter().sum();
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / total;
        }
    }
    Err(SpectralError::NonConvergence {
        iterations: settings.max_iterations,
        lower: lower - 1.0,
        upper: upper - 1.0,
    })
}

/// Exact check that the integer nearest `rho` is the Perron root: `C - rI`
/// must have a one-dimensional kernel spanned by a strictly one-signed
/// vector.
fn certify_integer(c: &CountMatrix, rho: f64, tol: f64) -> Option<u64> {
    let r = rho.round();
    if (rho - r).abs() >= tol || r < 1.0 {
        return None;
    }
    let r = r as u64;
    let n = c.dim();
    let shifted = Dense::from_rows(
        (0..n)
            .map(|t| {
                (0..n)
                    .map(|s| {
                        let mut x = rational(c.get(t, s));
                        if s == t {
                            x -= rational(r);
                        }
                        x
                    })
                    .collect()
            })
            .collect(),
    );
    let ns = shifted.nullspace();
    if ns.len() != 1 {
        return None;
    }
    let v = &ns[0];
    let all_pos = v.iter().all(Signed::is_positive);
    let all_neg = v.iter().all(Signed::is_negative);
    (all_pos || all_neg).then_some(r)
}

/// `max_i rho(Lambda^(i))` of a graph (unweighted).
pub fn rho_graph(g: &Skeleton, settings: &Settings) -> Result<Radius, SpectralError> {
    let mut best = Radius::ZERO;
    for m in g.matrices() {
        best = Radius::max_of(best, perron_root(m, settings)?.radius(), settings.compare_tol);
    }
    Ok(best)
}

/// One member of the transition set.
#[derive(Clone, Debug, PartialEq)]
pub struct Transition {
    /// `rho(closure of witness)`; in weighted mode `max_i rho_i^{1/s_i}`.
    pub radius: Radius,
    pub witness: usize,
    /// Every vertex whose closure realizes this value.
    pub witnesses: Vec<usize>,
}

impl Transition {
    /// Values `>= 1` give a subharmonic transition at `log radius`.
    pub fn is_subharmonic(&self, tol: f64) -> bool {
        self.radius.cmp_level(&Level::rational(rational(1)), tol) != Ordering::Less
    }

    /// Inverse temperature of the transition.
    pub fn log_value(&self) -> Entropy {
        self.radius.entropy()
    }
}

/// The set of radii of sink subgraphs, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionSet {
    pub values: Vec<Transition>,
}

impl TransitionSet {
    pub fn subharmonic(&self, tol: f64) -> impl Iterator<Item = &Transition> {
        self.values.iter().filter(move |t| t.is_subharmonic(tol))
    }

    pub fn max(&self) -> Option<&Transition> {
        self.values.last()
    }

    /// Member equal to `level` within tolerance (exactly when both exact).
    pub fn find(&self, level: &Level, tol: f64) -> Option<&Transition> {
        self.values
            .iter()
            .find(|t| t.radius.cmp_level(level, tol) == Ordering::Equal)
    }
}

/// Entropy quantities for a set of requested colour sets.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub strong: Vec<(ColorSet, Entropy)>,
    pub tracial: Vec<(ColorSet, Entropy)>,
    pub lower_critical: f64,
    pub weighted: bool,
}

/// Per-graph spectral tables.
#[derive(Clone, Debug)]
pub struct Spectrum<'g> {
    graph: &'g Skeleton,
    settings: Settings,
    colour_roots: Vec<PerronResult>,
    /// `component_of[i][v]`: index into `colour_roots[i].components`.
    component_of: Vec<Vec<usize>>,
}

impl<'g> Spectrum<'g> {
    pub fn new(graph: &'g Skeleton, settings: Settings) -> Result<Self, SpectralError> {
        let colour_roots = graph
            .matrices()
            .iter()
            .map(|m| perron_root(m, &settings))
            .collect::<Result<Vec<_>, _>>()?;
        let component_of = colour_roots
            .iter()
            .map(|pr| {
                let mut of = vec![usize::MAX; graph.vertex_count()];
                for (k, c) in pr.components.iter().enumerate() {
                    for &v in &c.members {
                        of[v] = k;
                    }
                }
                of
            })
            .collect();
        Ok(Spectrum {
            graph,
            settings,
            colour_roots,
            component_of,
        })
    }

    pub fn graph(&self) -> &'g Skeleton {
        self.graph
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn tol(&self) -> f64 {
        self.settings.compare_tol
    }

    pub fn colour_root(&self, i: usize) -> &PerronResult {
        &self.colour_roots[i]
    }

    fn check_colours(&self, f: ColorSet) -> Result<(), SpectralError> {
        if f.is_empty() {
            return Err(SpectralError::EmptyColorSet);
        }
        match f.iter().find(|&i| i >= self.graph.colours()) {
            Some(i) => Err(SpectralError::ColourOutOfRange(i + 1)),
            None => Ok(()),
        }
    }

    /// `rho(H^(i))` for a vertex set closed under colour `i`: the largest
    /// colour-`i` component it meets.
    pub fn colour_radius_on(&self, i: usize, w: &VertexSet) -> Radius {
        let mut seen = vec![false; self.colour_roots[i].components.len()];
        let mut best = Radius::ZERO;
        for v in w.iter() {
            let k = self.component_of[i][v];
            if !seen[k] {
                seen[k] = true;
                best = Radius::max_of(
                    best,
                    self.colour_roots[i].components[k].radius(),
                    self.tol(),
                );
            }
        }
        best
    }

    /// `max_{i in f} rho(H^(i))^{1/s_i}` on a set closed under `f`.
    pub fn scaled_radius_on(&self, f: ColorSet, w: &VertexSet) -> Radius {
        f.iter().fold(Radius::ZERO, |acc, i| {
            Radius::max_of(
                acc,
                self.colour_radius_on(i, w).scaled(self.graph.weight(i)),
                self.tol(),
            )
        })
    }

    /// Largest unweighted colour radius, `rho(Lambda)`.
    pub fn rho_graph(&self) -> Radius {
        self.colour_roots
            .iter()
            .fold(Radius::ZERO, |acc, pr| Radius::max_of(acc, pr.radius(), self.tol()))
    }

    /// Radius governing the `f`-entropy of `delta_v`: computed on the
    /// `f`-closure of `v`.
    pub fn vertex_f_radius(&self, v: usize, f: ColorSet) -> Radius {
        let w = self.graph.vertex_closure(v, f);
        self.scaled_radius_on(f, &w)
    }

    /// `rho(closure of v)` over all colours (weighted when weights are set).
    pub fn vertex_radius(&self, v: usize) -> Radius {
        self.vertex_f_radius(v, self.graph.all_colours())
    }

    pub fn vertex_entropy(&self, v: usize) -> Entropy {
        let w = self.graph.vertex_closure(v, self.graph.all_colours());
        self.entropy_on(self.graph.all_colours(), &w)
    }

    /// `max_{i in f} log rho(H^(i)) / s_i` on a set closed under `f`.
    fn entropy_on(&self, f: ColorSet, w: &VertexSet) -> Entropy {
        f.iter().fold(Entropy::NegInfinity, |acc, i| {
            acc.max(
                self.colour_radius_on(i, w)
                    .entropy()
                    .scale(self.graph.weight(i)),
            )
        })
    }

    /// Per-vertex radii, in vertex order.
    pub fn vertex_radii(&self) -> Vec<Radius> {
        par::map_range(self.graph.vertex_count(), |v| self.vertex_radius(v))
    }

    pub fn transition_set(&self) -> TransitionSet {
        let radii = self.vertex_radii();
        let mut order: Vec<usize> = (0..radii.len()).collect();
        order.sort_by(|&a, &b| radii[a].value.total_cmp(&radii[b].value).then(a.cmp(&b)));
        let mut values: Vec<Transition> = Vec::new();
        for v in order {
            let r = radii[v];
            match values.last_mut() {
                Some(last) if last.radius.cmp_level(&r.as_level(), self.tol()) == Ordering::Equal => {
                    last.witnesses.push(v);
                    if last.radius.exact.is_none() && r.exact.is_some() {
                        last.radius = r;
                        last.witness = v;
                    }
                }
                _ => values.push(Transition {
                    radius: r,
                    witness: v,
                    witnesses: vec![v],
                }),
            }
        }
        for t in &mut values {
            t.witnesses.sort_unstable();
        }
        TransitionSet { values }
    }

    /// `max_{i in f} log rho(Lambda^(i)) / s_i`.
    pub fn strong_entropy(&self, f: ColorSet) -> Result<Entropy, SpectralError> {
        self.check_colours(f)?;
        Ok(self.entropy_on(f, &self.graph.all_vertices()))
    }

    /// Strong `f`-entropy of the `f`-closure of `supp tau`.
    pub fn tracial_entropy(&self, support: &VertexSet, f: ColorSet) -> Result<Entropy, SpectralError> {
        self.check_colours(f)?;
        if support.is_empty() {
            return Err(SpectralError::EmptyTrace);
        }
        let w = self.graph.closure_unchecked(support, f);
        Ok(self.entropy_on(f, &w))
    }

    /// Radius form of [`Self::tracial_entropy`].
    pub fn tracial_radius(&self, support: &VertexSet, f: ColorSet) -> Radius {
        let w = self.graph.closure_unchecked(support, f);
        self.scaled_radius_on(f, &w)
    }

    /// `max(0, min_v vertex entropy)`.
    pub fn lower_critical(&self) -> f64 {
        (0..self.graph.vertex_count())
            .map(|v| self.vertex_entropy(v).value())
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }

    /// `log rho(Lambda)`; in weighted mode the largest weighted vertex
    /// entropy.
    pub fn critical(&self) -> Entropy {
        (0..self.graph.vertex_count())
            .map(|v| self.vertex_entropy(v))
            .fold(Entropy::NegInfinity, Entropy::max)
    }

    pub fn entropy_report(&self, sets: &[ColorSet], support: &VertexSet) -> Result<EntropyReport, SpectralError> {
        let mut strong = Vec::new();
        let mut tracial = Vec::new();
        for &f in sets {
            strong.push((f, self.strong_entropy(f)?));
            tracial.push((f, self.tracial_entropy(support, f)?));
        }
        Ok(EntropyReport {
            strong,
            tracial,
            lower_critical: self.lower_critical(),
            weighted: !self.graph.has_unit_weights(),
        })
    }
}

/// Exact `p/q` helper for callers that build levels from integers.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s() -> Settings {
        Settings::default()
    }

    #[test]
    fn perron_small_cases() {
        let r = perron_root(&CountMatrix::from_rows(&[vec![2]]), &s()).unwrap();
        assert_eq!(r.exact, Some(2));
        let r = perron_root(&CountMatrix::from_rows(&[vec![0, 1], vec![0, 0]]), &s()).unwrap();
        assert_eq!(r.exact, Some(0));
        assert_eq!(r.rho, 0.0);
        let g = fixtures::ex1();
        let r = perron_root(g.matrix(0), &s()).unwrap();
        assert_eq!(r.exact, Some(5));
        assert_eq!(r.components.len(), 3);
    }

    #[test]
    fn irrational_and_periodic_components() {
        // golden mean shift: rho = (1 + sqrt 5) / 2
        let m = CountMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        let r = perron_root(&m, &s()).unwrap();
        assert!(r.exact.is_none());
        assert!((r.rho - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(r.lower <= r.upper);
        // period-3 cycle: rho = 1 exactly
        let mut c = CountMatrix::zeros(3);
        c.set(1, 0, 1);
        c.set(2, 1, 1);
        c.set(0, 2, 1);
        let r = perron_root(&c, &s()).unwrap();
        assert_eq!(r.exact, Some(1));
        // [[1,2],[2,1]] has eigenvalues 3 and -1
        let r = perron_root(&CountMatrix::from_rows(&[vec![1, 2], vec![2, 1]]), &s()).unwrap();
        assert_eq!(r.exact, Some(3));
    }

    #[test]
    fn iteration_budget_is_reported() {
        let m = CountMatrix::from_rows(&[vec![1, 1], vec![1, 0]]);
        let tight = Settings {
            max_iterations: 2,
            ..s()
        };
        assert!(matches!(
            perron_root(&m, &tight),
            Err(SpectralError::NonConvergence { iterations: 2, .. })
        ));
    }

    #[test]
    fn graph_radii() {
        let g = fixtures::ex1();
        assert_eq!(rho_graph(&g, &s()).unwrap().exact, Some(5));
        let h = g.restrict(&VertexSet::from_indices(3, [1, 2])).unwrap();
        assert_eq!(rho_graph(&h, &s()).unwrap().exact, Some(4));
        let lonely = Skeleton::from_rows(&[vec![vec![0]]]).unwrap();
        assert_eq!(rho_graph(&lonely, &s()).unwrap(), Radius::ZERO);
    }

    #[test]
    fn vertex_entropies() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, s()).unwrap();
        let e: Vec<f64> = (0..3).map(|v| sp.vertex_entropy(v).value()).collect();
        assert_eq!(e, vec![5f64.ln(), 4f64.ln(), 2f64.ln()]);
        let g2 = fixtures::ex2();
        let sp2 = Spectrum::new(&g2, s()).unwrap();
        assert_eq!(sp2.vertex_entropy(1), Entropy::Finite(2f64.ln()));
        let lonely = Skeleton::from_rows(&[vec![vec![0]]]).unwrap();
        let sp3 = Spectrum::new(&lonely, s()).unwrap();
        assert_eq!(sp3.vertex_entropy(0), Entropy::NegInfinity);
        assert_eq!(sp3.lower_critical(), 0.0);
    }

    #[test]
    fn transition_sets() {
        let g = fixtures::ex1();
        let ts = Spectrum::new(&g, s()).unwrap().transition_set();
        let v: Vec<Option<u64>> = ts.values.iter().map(|t| t.radius.exact).collect();
        assert_eq!(v, vec![Some(2), Some(4), Some(5)]);
        let g2 = fixtures::ex2();
        let ts = Spectrum::new(&g2, s()).unwrap().transition_set();
        let v: Vec<Option<u64>> = ts.values.iter().map(|t| t.radius.exact).collect();
        assert_eq!(v, vec![Some(2), Some(5)]);
        assert_eq!(ts.values[0].witnesses, vec![1, 2]);
        let nil = Skeleton::from_rows(&[vec![vec![0, 1], vec![0, 0]]]).unwrap();
        let ts = Spectrum::new(&nil, s()).unwrap().transition_set();
        assert_eq!(ts.values.len(), 1);
        assert_eq!(ts.values[0].radius, Radius::ZERO);
        assert_eq!(ts.subharmonic(1e-9).count(), 0);
    }

    #[test]
    fn strong_and_tracial_entropies() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, s()).unwrap();
        let c2 = ColorSet::singleton(1);
        assert_eq!(sp.strong_entropy(ColorSet::full(2)).unwrap(), Entropy::Finite(5f64.ln()));
        assert_eq!(sp.strong_entropy(c2).unwrap(), Entropy::Finite(4f64.ln()));
        let supp13 = VertexSet::from_indices(3, [0, 2]);
        let supp23 = VertexSet::from_indices(3, [1, 2]);
        assert_eq!(sp.tracial_entropy(&supp13, c2).unwrap(), Entropy::Finite(4f64.ln()));
        assert_eq!(sp.tracial_entropy(&supp23, c2).unwrap(), Entropy::Finite(3f64.ln()));
        for v in 0..3 {
            assert_eq!(
                sp.tracial_entropy(&VertexSet::singleton(3, v), ColorSet::full(2)).unwrap(),
                sp.vertex_entropy(v)
            );
        }
        assert_eq!(
            sp.tracial_entropy(&VertexSet::empty(3), c2),
            Err(SpectralError::EmptyTrace)
        );
        assert_eq!(sp.strong_entropy(ColorSet::EMPTY), Err(SpectralError::EmptyColorSet));
        let nil = Skeleton::from_rows(&[vec![vec![0, 1], vec![0, 0]]]).unwrap();
        let spn = Spectrum::new(&nil, s()).unwrap();
        assert_eq!(spn.strong_entropy(ColorSet::singleton(0)).unwrap(), Entropy::NegInfinity);
    }

    #[test]
    fn lower_critical_values() {
        for g in [fixtures::ex1(), fixtures::ex2()] {
            let sp = Spectrum::new(&g, s()).unwrap();
            assert_eq!(sp.lower_critical(), 2f64.ln());
            assert_eq!(sp.critical(), Entropy::Finite(5f64.ln()));
        }
    }

    #[test]
    fn unit_weights_are_identity() {
        let r = Radius::approx(3.7);
        assert_eq!(r.scaled(1.0), r);
        assert_eq!(Radius::exact(4).scaled(1.0), Radius::exact(4));
        assert!(Entropy::NegInfinity < Entropy::Finite(-1e300));
    }
}
