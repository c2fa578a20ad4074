//! Gauge-invariant KMS simplices and phase diagrams.
//!
//! At inverse temperature `beta` the gauge-invariant equilibrium states
//! split into parts indexed by colour sets `F`: the finite part (`F` all
//! colours), the infinite part (`F` empty), and subharmonic parts in
//! between. Each part is a simplex described by its extreme trace vectors on
//! the vertex algebra. Non-finite parts can only appear when `e^beta` is a
//! member of the transition set.
//!
//! Weighted dynamics replace `e^beta` by `e^{s_i beta}` colour by colour and
//! compare `max_i log rho(H^(i)) / s_i` against `beta`. With unit weights the
//! computation is the unweighted one, bit for bit.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::eigencone::{eigencone_vertices, support_of_cone, EigenconeError, TraceError, TraceVector};
use crate::graph::{GraphError, Multidegree, Skeleton};
use crate::linalg::{solve_f64, Dense};
use crate::par;
use crate::sets::{canonical_order, ColorSet, VertexSet};
use crate::spectral::{Entropy, Level, Radius, SpectralError, Spectrum, Transition};

#[derive(Debug, Error, PartialEq)]
pub enum KmsError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Eigencone(#[from] EigenconeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("invalid inverse temperature: {0}")]
    InvalidBeta(String),
    #[error("colour set {0} must be a proper subset of the colours")]
    NotProper(ColorSet),
    #[error("trace is not in the simplex: {0}")]
    TauNotInSimplex(Criterion),
    #[error("resolvent for colour {colour} is singular: rho(H^(i)) >= e^(s_i beta)")]
    SingularResolvent { colour: usize },
    #[error("negative defect {value} at vertex {vertex} for colour {colour}")]
    NegativeDefect {
        colour: usize,
        vertex: usize,
        value: f64,
    },
    #[error("internal consistency failure: {0}")]
    Invariant(String),
}

/// The membership condition a trace failed.
#[derive(Clone, Debug, PartialEq)]
pub enum Criterion {
    /// `Lambda^(i) tau = e^{s_i beta} tau` fails for colour `i` (1-based).
    EigenEquation { colour: usize, residual: f64 },
    /// The `F`-tracial entropy is not below `beta`.
    EntropyBound { radius: f64, exp_beta: f64 },
    /// Length does not match the vertex count.
    Length { expected: usize, found: usize },
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::EigenEquation { colour, residual } => write!(
                f,
                "eigen-equation for colour {colour} fails (residual {residual:e})"
            ),
            Criterion::EntropyBound { radius, exp_beta } => write!(
                f,
                "tracial entropy bound fails: radius {radius} is not below e^beta = {exp_beta}"
            ),
            Criterion::Length { expected, found } => {
                write!(f, "trace has {found} entries, expected {expected}")
            }
        }
    }
}

/// Toeplitz algebra or its Cuntz–Krieger quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    Toeplitz,
    CuntzKrieger,
}

impl Algebra {
    pub fn code(self) -> &'static str {
        match self {
            Algebra::Toeplitz => "nt",
            Algebra::CuntzKrieger => "no",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    Raw,
    Exp,
}

/// A positive inverse temperature, carried together with `e^beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct Beta {
    value: f64,
    exp: Level,
    specified_as: BetaSpec,
}

impl Beta {
    pub fn from_beta(value: f64) -> Result<Self, KmsError> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(KmsError::InvalidBeta(format!("beta = {value} must be positive")));
        }
        Ok(Beta {
            value,
            exp: Level::approx(value.exp()),
            specified_as: BetaSpec::Raw,
        })
    }

    pub fn from_exp(exp_value: f64) -> Result<Self, KmsError> {
        if !(exp_value > 1.0 && exp_value.is_finite()) {
            return Err(KmsError::InvalidBeta(format!("e^beta = {exp_value} must exceed 1")));
        }
        Ok(Beta {
            value: exp_value.ln(),
            exp: Level::approx(exp_value),
            specified_as: BetaSpec::Exp,
        })
    }

    pub fn from_exp_rational(q: BigRational) -> Result<Self, KmsError> {
        if q <= BigRational::one() {
            return Err(KmsError::InvalidBeta(format!("e^beta = {q} must exceed 1")));
        }
        let exp = Level::rational(q);
        Ok(Beta {
            value: exp.value.ln(),
            exp,
            specified_as: BetaSpec::Exp,
        })
    }

    /// `beta = log radius` for a transition radius above one.
    pub fn at_radius(r: Radius) -> Result<Self, KmsError> {
        match r.exact {
            Some(k) => Self::from_exp_rational(BigRational::from_integer(k.into())),
            None => Self::from_exp(r.value),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exp_value(&self) -> f64 {
        self.exp.value
    }

    pub fn exp_level(&self) -> &Level {
        &self.exp
    }

    pub fn exp_exact(&self) -> Option<&BigRational> {
        self.exp.exact.as_ref()
    }

    pub fn specified_as(&self) -> BetaSpec {
        self.specified_as
    }

    /// `e^{s beta}`, the eigenvalue a colour of weight `s` must see.
    pub fn colour_level(&self, s: f64) -> Level {
        if s == 1.0 {
            self.exp.clone()
        } else {
            Level::approx((s * self.value).exp())
        }
    }

    /// `e^{-s beta}`.
    pub fn decay(&self, s: f64) -> f64 {
        if s == 1.0 {
            1.0 / self.exp.value
        } else {
            (-s * self.value).exp()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexKind {
    Finite,
    Subharmonic,
    Infinite,
}

impl SimplexKind {
    pub fn of(f: ColorSet, colours: usize) -> Self {
        if f.is_empty() {
            SimplexKind::Infinite
        } else if f.is_full(colours) {
            SimplexKind::Finite
        } else {
            SimplexKind::Subharmonic
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            SimplexKind::Finite => "finite",
            SimplexKind::Subharmonic => "subharmonic",
            SimplexKind::Infinite => "infinite",
        }
    }
}

/// Why a part came out empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmptyReason {
    InfeasibleEigencone,
    EntropyFilter,
    TracingFilter,
    OffTransition,
}

impl EmptyReason {
    pub fn code(self) -> &'static str {
        match self {
            EmptyReason::InfeasibleEigencone => "infeasible-eigencone",
            EmptyReason::EntropyFilter => "entropy-filter",
            EmptyReason::TracingFilter => "tracing-filter",
            EmptyReason::OffTransition => "off-transition",
        }
    }
}

/// One `F`-part of the equilibrium simplex at a fixed `beta`: the convex
/// hull of `generators`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubharmonicSimplex {
    pub colours: ColorSet,
    pub beta: Beta,
    pub algebra: Algebra,
    pub kind: SimplexKind,
    pub generators: Vec<TraceVector>,
    pub reason_if_empty: Option<EmptyReason>,
}

impl SubharmonicSimplex {
    fn new(colours: ColorSet, n_colours: usize, beta: &Beta, algebra: Algebra) -> Self {
        SubharmonicSimplex {
            colours,
            beta: beta.clone(),
            algebra,
            kind: SimplexKind::of(colours, n_colours),
            generators: Vec::new(),
            reason_if_empty: None,
        }
    }

    fn empty_because(mut self, reason: EmptyReason) -> Self {
        self.generators.clear();
        self.reason_if_empty = Some(reason);
        self
    }

    fn with_generators(mut self, generators: Vec<TraceVector>, reason: EmptyReason) -> Self {
        self.reason_if_empty = generators.is_empty().then_some(reason);
        self.generators = generators;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// `Tr_beta^F`: traces that are eigenvectors at `e^{s_j beta}` for every
/// `j` outside `F` and have `F`-entropy below `beta`. `F` empty gives the
/// averaging traces (joint eigenvectors, no entropy filter).
pub fn tr_f(sp: &Spectrum<'_>, beta: &Beta, f: ColorSet) -> Result<SubharmonicSimplex, KmsError> {
    let g = sp.graph();
    let n_colours = g.colours();
    if f.is_full(n_colours) || !f.is_subset(g.all_colours()) {
        return Err(KmsError::NotProper(f));
    }
    let part = SubharmonicSimplex::new(f, n_colours, beta, Algebra::Toeplitz);
    let targets = eigen_targets(g, beta, f.complement(n_colours));
    let none = VertexSet::empty(g.vertex_count());
    let cone = eigencone_vertices(g, &targets, &none, sp.settings())?;
    if cone.is_empty() {
        return Ok(part.empty_because(EmptyReason::InfeasibleEigencone));
    }
    if f.is_empty() {
        return Ok(part.with_generators(cone.extreme_points, EmptyReason::InfeasibleEigencone));
    }

    let support = support_of_cone(&cone)?;
    let tol = sp.tol();
    let below: VertexSet = VertexSet::from_indices(
        g.vertex_count(),
        support
            .iter()
            .filter(|&v| sp.vertex_f_radius(v, f).cmp_level(beta.exp_level(), tol) == Ordering::Less),
    );
    if below.is_empty() {
        return Ok(part.empty_because(EmptyReason::EntropyFilter));
    }
    let generators = if below == support {
        cone.extreme_points
    } else {
        eigencone_vertices(g, &targets, &below.complement(), sp.settings())?.extreme_points
    };

    // Eventual F^c-sources are annihilated automatically; check it.
    let eventual = g.eventual_f_sources(f.complement(n_colours))?;
    if let Some(tau) = generators
        .iter()
        .find(|tau| !tau.support().intersection(&eventual).is_empty())
    {
        return Err(KmsError::Invariant(format!(
            "generator {tau:?} charges an eventual {}-source",
            f.complement(n_colours)
        )));
    }
    Ok(part.with_generators(generators, EmptyReason::EntropyFilter))
}

fn eigen_targets(g: &Skeleton, beta: &Beta, colours: ColorSet) -> Vec<(usize, Level)> {
    colours
        .iter()
        .map(|j| (j, beta.colour_level(g.weight(j))))
        .collect()
}

/// The finite part: point masses at vertices `v` with
/// `rho(closure of v) < e^beta`; for the Cuntz–Krieger algebra only
/// sources survive.
pub fn finite_simplex(sp: &Spectrum<'_>, beta: &Beta, algebra: Algebra) -> SubharmonicSimplex {
    let g = sp.graph();
    let n = g.vertex_count();
    let part = SubharmonicSimplex::new(g.all_colours(), g.colours(), beta, algebra);
    let radii = sp.vertex_radii();
    let below: Vec<usize> = (0..n)
        .filter(|&v| radii[v].cmp_level(beta.exp_level(), sp.tol()) == Ordering::Less)
        .collect();
    if below.is_empty() {
        return part.empty_because(EmptyReason::EntropyFilter);
    }
    let kept: Vec<usize> = match algebra {
        Algebra::Toeplitz => below,
        Algebra::CuntzKrieger => {
            let sources = g.f_sources(g.all_colours()).expect("nonempty colour set");
            below.into_iter().filter(|&v| sources.contains(v)).collect()
        }
    };
    part.with_generators(
        kept.into_iter().map(|v| TraceVector::delta(n, v)).collect(),
        EmptyReason::TracingFilter,
    )
}

/// Drops Toeplitz generators charging `F`-tracing vertices.
fn descend(g: &Skeleton, part: SubharmonicSimplex) -> Result<SubharmonicSimplex, KmsError> {
    let mut part = SubharmonicSimplex {
        algebra: Algebra::CuntzKrieger,
        ..part
    };
    if part.colours.is_empty() || part.is_empty() {
        return Ok(part);
    }
    let tracing = g.f_tracing(part.colours)?;
    let kept: Vec<TraceVector> = part
        .generators
        .drain(..)
        .filter(|tau| tau.support().intersection(&tracing).is_empty())
        .collect();
    Ok(part.with_generators(kept, EmptyReason::TracingFilter))
}

/// The subharmonic transition `e^beta` sits on, if any.
pub fn transition_at<'a>(
    transitions: &'a [Transition],
    beta: &Beta,
    tol: f64,
) -> Option<&'a Transition> {
    transitions.iter().find(|t| {
        t.is_subharmonic(tol) && t.radius.cmp_level(beta.exp_level(), tol) == Ordering::Equal
    })
}

/// Every part at `beta`, in canonical order (`|F|`, then lexicographic);
/// the finite part comes last. Parts that are empty carry a reason.
pub fn geq_simplex(
    sp: &Spectrum<'_>,
    beta: &Beta,
    algebra: Algebra,
) -> Result<Vec<SubharmonicSimplex>, KmsError> {
    let transitions = sp.transition_set();
    geq_with(sp, beta, algebra, &transitions.values)
}

fn geq_with(
    sp: &Spectrum<'_>,
    beta: &Beta,
    algebra: Algebra,
    transitions: &[Transition],
) -> Result<Vec<SubharmonicSimplex>, KmsError> {
    let g = sp.graph();
    let n_colours = g.colours();
    let on_transition = transition_at(transitions, beta, sp.tol()).is_some();
    let proper: Vec<ColorSet> = ColorSet::all_subsets(n_colours)
        .into_iter()
        .filter(|f| !f.is_full(n_colours))
        .collect();
    let parts: Vec<Result<SubharmonicSimplex, KmsError>> = par::map(&proper, |&f| {
        let part = if on_transition {
            tr_f(sp, beta, f)?
        } else {
            SubharmonicSimplex::new(f, n_colours, beta, Algebra::Toeplitz)
                .empty_because(EmptyReason::OffTransition)
        };
        match algebra {
            Algebra::Toeplitz => Ok(part),
            Algebra::CuntzKrieger => descend(g, part),
        }
    });
    let mut out = parts.into_iter().collect::<Result<Vec<_>, _>>()?;
    out.push(finite_simplex(sp, beta, algebra));
    out.sort_by(|a, b| canonical_order(a.colours, b.colours));
    Ok(out)
}

/// The parts at one transition point.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionPoint {
    pub transition: Transition,
    /// `None` when the transition sits at `beta = 0`.
    pub beta: Option<Beta>,
    pub parts: Vec<SubharmonicSimplex>,
}

/// An open interval of inverse temperatures between consecutive transition
/// points, on which only the finite part survives and is constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: Option<f64>,
    pub lower_radius: Option<Radius>,
    pub upper_radius: Option<Radius>,
    pub representative: Beta,
    pub finite: SubharmonicSimplex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseDiagram {
    pub algebra: Algebra,
    pub weights: Vec<f64>,
    /// `h_Lambda`: no equilibrium states below this.
    pub beta_c_prime: f64,
    /// `log rho(Lambda)` (weighted: largest weighted vertex entropy).
    pub beta_c: Entropy,
    pub spectrum: Vec<Transition>,
    pub transitions: Vec<TransitionPoint>,
    pub intervals: Vec<Interval>,
}

impl PhaseDiagram {
    /// Parts at the transition point `e^beta = radius`, if there is one.
    pub fn point(&self, radius: f64, tol: f64) -> Option<&TransitionPoint> {
        self.transitions
            .iter()
            .find(|p| (p.transition.radius.value - radius).abs() <= tol)
    }

    /// The interval containing `beta`, if `beta` is not a transition point.
    pub fn interval_of(&self, beta: f64) -> Option<&Interval> {
        self.intervals
            .iter()
            .find(|iv| beta > iv.lower && iv.upper.is_none_or(|u| beta < u))
    }
}

/// Full phase diagram: subharmonic parts at every transition point and the
/// finite part on every interval between them.
pub fn phase_diagram(sp: &Spectrum<'_>, algebra: Algebra) -> Result<PhaseDiagram, KmsError> {
    let g = sp.graph();
    let tol = sp.tol();
    let set = sp.transition_set();
    let mut transitions = Vec::new();
    let mut cuts: Vec<(f64, Radius)> = Vec::new();
    for t in set.subharmonic(tol) {
        let above_one = t.radius.cmp_level(&Radius::exact(1).as_level(), tol) == Ordering::Greater;
        if !above_one {
            transitions.push(TransitionPoint {
                transition: t.clone(),
                beta: None,
                parts: Vec::new(),
            });
            continue;
        }
        let beta = Beta::at_radius(t.radius)?;
        let parts = geq_with(sp, &beta, algebra, &set.values)?;
        cuts.push((beta.value(), t.radius));
        transitions.push(TransitionPoint {
            transition: t.clone(),
            beta: Some(beta),
            parts,
        });
    }

    let mut intervals = Vec::new();
    let mut lower = (0.0, None);
    for &(cut, radius) in cuts.iter().chain(std::iter::once(&(f64::INFINITY, Radius::ZERO))) {
        let (lo, lo_radius) = lower;
        let (upper, upper_radius, rep) = if cut.is_finite() {
            (Some(cut), Some(radius), 0.5 * (lo + cut))
        } else {
            (None, None, lo + 1.0)
        };
        let representative = Beta::from_beta(rep)?;
        intervals.push(Interval {
            lower: lo,
            upper,
            lower_radius: lo_radius,
            upper_radius,
            finite: finite_simplex(sp, &representative, algebra),
            representative,
        });
        lower = (cut, Some(radius));
    }

    Ok(PhaseDiagram {
        algebra,
        weights: g.weights().to_vec(),
        beta_c_prime: sp.lower_critical(),
        beta_c: sp.critical(),
        spectrum: set.values.clone(),
        transitions,
        intervals,
    })
}

/// Vertex values `m_v = phi_tau(T_v)` of the state induced by a trace.
#[derive(Clone, Debug, PartialEq)]
pub struct KmsVector {
    pub m: Vec<f64>,
    /// Normalization constant `c_{tau,beta}^F`.
    pub c: f64,
    pub colours: ColorSet,
    pub beta: Beta,
    pub tau: TraceVector,
}

/// Checks that `tau` lies in `Tr_beta^F`.
pub fn check_membership(
    sp: &Spectrum<'_>,
    tau: &TraceVector,
    beta: &Beta,
    f: ColorSet,
) -> Result<(), Criterion> {
    let g = sp.graph();
    let tol = sp.settings().residual_tol;
    if tau.len() != g.vertex_count() {
        return Err(Criterion::Length {
            expected: g.vertex_count(),
            found: tau.len(),
        });
    }
    for j in f.complement(g.colours()).iter() {
        let level = beta.colour_level(g.weight(j));
        let image = g.matrix(j).mul_vec_f64(tau.values());
        let residual = image
            .iter()
            .zip(tau.values())
            .map(|(y, x)| (y - level.value * x).abs())
            .fold(0.0, f64::max);
        if residual > tol {
            return Err(Criterion::EigenEquation {
                colour: j + 1,
                residual,
            });
        }
    }
    if !f.is_empty() {
        let radius = sp.tracial_radius(&tau.support(), f);
        if radius.cmp_level(beta.exp_level(), sp.tol()) != Ordering::Less {
            return Err(Criterion::EntropyBound {
                radius: radius.value,
                exp_beta: beta.exp_value(),
            });
        }
    }
    Ok(())
}

/// The state induced by `tau` in `Tr_beta^F`, as vertex values. For
/// nonempty `F` this applies `prod_{i in F} (I - e^{-s_i beta} H^(i))^{-1}`
/// to `tau` restricted to `H`, the `F`-closure of its support, and
/// normalizes.
pub fn kms_vector(
    sp: &Spectrum<'_>,
    tau: &TraceVector,
    beta: &Beta,
    f: ColorSet,
) -> Result<KmsVector, KmsError> {
    let g = sp.graph();
    check_membership(sp, tau, beta, f).map_err(KmsError::TauNotInSimplex)?;
    if f.is_empty() {
        return Ok(KmsVector {
            m: tau.values().to_vec(),
            c: 1.0,
            colours: f,
            beta: beta.clone(),
            tau: tau.clone(),
        });
    }
    let h = g.forward_closure(&tau.support(), f)?;
    let keep = h.to_vec();
    let k = keep.len();
    let mut x: Vec<f64> = keep.iter().map(|&v| tau.values()[v]).collect();
    for i in f.iter() {
        let sub = g.matrix(i).submatrix(&keep);
        let decay = beta.decay(g.weight(i));
        let mut a = Dense::<f64>::zeros(k, k);
        for t in 0..k {
            for s in 0..k {
                let delta = if t == s { 1.0 } else { 0.0 };
                *a.at_mut(t, s) = delta - decay * sub.get(t, s) as f64;
            }
        }
        x = solve_f64(&a, &x, 1e-14).ok_or(KmsError::SingularResolvent { colour: i + 1 })?;
        if x.iter().any(|&v| v < -sp.settings().residual_tol) {
            return Err(KmsError::SingularResolvent { colour: i + 1 });
        }
    }
    let c: f64 = x.iter().sum();
    let mut m = vec![0.0; g.vertex_count()];
    for (&v, &xv) in keep.iter().zip(&x) {
        m[v] = xv.max(0.0) / c;
    }
    Ok(KmsVector {
        m,
        c,
        colours: f,
        beta: beta.clone(),
        tau: tau.clone(),
    })
}

/// `phi(T_lambda T_lambda^*) = e^{-<n,s> beta} m_v` for any path `lambda`
/// of degree `n` with source `v`.
pub fn evaluate_state(g: &Skeleton, kv: &KmsVector, n: &Multidegree, v: usize) -> Result<f64, KmsError> {
    if n.entries().len() != g.colours() {
        return Err(GraphError::DegreeLength {
            expected: g.colours(),
            found: n.entries().len(),
        }
        .into());
    }
    let factor: f64 = if g.has_unit_weights() {
        kv.beta.decay(1.0).powi(n.length().min(i32::MAX as u64) as i32)
    } else {
        (-n.weighted_length(g.weights()) * kv.beta.value()).exp()
    };
    Ok(factor * kv.m[v])
}

/// `phi(T_lambda T_mu^*)` for `lambda != mu` vanishes for every
/// gauge-invariant state.
pub fn evaluate_off_diagonal(_kv: &KmsVector) -> f64 {
    0.0
}

/// `m - e^{-s_i beta} Lambda^(i) m`, the vertex values `phi(T_v Q_i)`.
pub fn defect_vector(g: &Skeleton, kv: &KmsVector, colour: usize, tol: f64) -> Result<Vec<f64>, KmsError> {
    if colour >= g.colours() {
        return Err(GraphError::ColourOutOfRange(colour + 1).into());
    }
    let decay = kv.beta.decay(g.weight(colour));
    let image = g.matrix(colour).mul_vec_f64(&kv.m);
    let defect: Vec<f64> = kv.m.iter().zip(&image).map(|(m, y)| m - decay * y).collect();
    if let Some((vertex, &value)) = defect.iter().enumerate().find(|(_, &d)| d < -tol) {
        return Err(KmsError::NegativeDefect {
            colour: colour + 1,
            vertex,
            value,
        });
    }
    Ok(defect)
}

/// Ratio helper used by reports: `e^beta` as `f64` regardless of exactness.
pub fn exp_as_f64(beta: &Beta) -> f64 {
    beta.exp_exact()
        .and_then(ToPrimitive::to_f64)
        .unwrap_or(beta.exp_value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::settings::Settings;
    use crate::spectral::ratio;

    fn et(k: i64) -> Beta {
        Beta::from_exp_rational(ratio(k, 1)).unwrap()
    }

    fn c(ix: &[usize]) -> ColorSet {
        ColorSet::from_indices(ix.iter().copied())
    }

    fn half(n: usize, a: usize, b: usize) -> Vec<BigRational> {
        let mut v = vec![ratio(0, 1); n];
        v[a] = ratio(1, 2);
        v[b] = ratio(1, 2);
        v
    }

    #[test]
    fn beta_constructors() {
        assert!(Beta::from_beta(0.0).is_err());
        assert!(Beta::from_exp(1.0).is_err());
        assert!(Beta::from_exp_rational(ratio(1, 2)).is_err());
        let b = et(8);
        assert_eq!(b.exp_value(), 8.0);
        assert!((b.value() - 8f64.ln()).abs() < 1e-15);
        assert_eq!(b.decay(1.0), 0.125);
        let r = Beta::from_beta(2f64.ln()).unwrap();
        assert!((r.exp_value() - 2.0).abs() < 1e-12);
        assert_eq!(r.specified_as(), BetaSpec::Raw);
    }

    #[test]
    fn tr_f_examples() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let p = tr_f(&sp, &et(5), c(&[1])).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert_eq!(p.generators[0].exact().unwrap(), half(3, 0, 2).as_slice());
        let p = tr_f(&sp, &et(4), c(&[1])).unwrap();
        assert_eq!(p.generators[0].exact().unwrap(), half(3, 1, 2).as_slice());
        let p = tr_f(&sp, &et(2), ColorSet::EMPTY).unwrap();
        assert_eq!(p.generators, vec![TraceVector::delta(3, 2)]);
        assert_eq!(p.kind, SimplexKind::Infinite);
        // colour 2 cone at 4 exists but its support has {1}-entropy log 5
        let p = tr_f(&sp, &et(4), c(&[0])).unwrap();
        assert_eq!(p.reason_if_empty, Some(EmptyReason::EntropyFilter));
        let p = tr_f(&sp, &et(5), c(&[0])).unwrap();
        assert_eq!(p.reason_if_empty, Some(EmptyReason::InfeasibleEigencone));
        assert!(matches!(tr_f(&sp, &et(5), c(&[0, 1])), Err(KmsError::NotProper(_))));
    }

    #[test]
    fn finite_simplex_examples() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let p = finite_simplex(&sp, &et(8), Algebra::Toeplitz);
        assert_eq!(p.generators.len(), 3);
        let p = finite_simplex(&sp, &et(3), Algebra::Toeplitz);
        assert_eq!(p.generators, vec![TraceVector::delta(3, 2)]);
        let p = finite_simplex(&sp, &et(2), Algebra::Toeplitz);
        assert_eq!(p.reason_if_empty, Some(EmptyReason::EntropyFilter));
        let g2 = fixtures::ex2();
        let sp2 = Spectrum::new(&g2, Settings::default()).unwrap();
        let p = finite_simplex(&sp2, &et(3), Algebra::CuntzKrieger);
        assert_eq!(p.generators, vec![TraceVector::delta(3, 1)]);
        let p = finite_simplex(&sp, &et(8), Algebra::CuntzKrieger);
        assert_eq!(p.reason_if_empty, Some(EmptyReason::TracingFilter));
    }

    #[test]
    fn geq_at_five() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let parts = geq_simplex(&sp, &et(5), Algebra::Toeplitz).unwrap();
        let sets: Vec<ColorSet> = parts.iter().map(|p| p.colours).collect();
        assert_eq!(sets, vec![c(&[]), c(&[0]), c(&[1]), c(&[0, 1])]);
        let nonempty: Vec<&SubharmonicSimplex> = parts.iter().filter(|p| !p.is_empty()).collect();
        assert_eq!(nonempty.len(), 2);
        assert_eq!(nonempty[0].colours, c(&[1]));
        assert_eq!(
            nonempty[1].generators,
            vec![TraceVector::delta(3, 1), TraceVector::delta(3, 2)]
        );

        let g2 = fixtures::ex2();
        let sp2 = Spectrum::new(&g2, Settings::default()).unwrap();
        let parts = geq_simplex(&sp2, &et(5), Algebra::CuntzKrieger).unwrap();
        let f2 = parts.iter().find(|p| p.colours == c(&[1])).unwrap();
        assert_eq!(f2.reason_if_empty, Some(EmptyReason::TracingFilter));
        let fin = parts.last().unwrap();
        assert_eq!(fin.generators, vec![TraceVector::delta(3, 1)]);

        let low = Beta::from_exp(1.5).unwrap();
        for algebra in [Algebra::Toeplitz, Algebra::CuntzKrieger] {
            let parts = geq_simplex(&sp, &low, algebra).unwrap();
            assert!(parts.iter().all(SubharmonicSimplex::is_empty));
        }
    }

    #[test]
    fn off_transition_only_finite() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let parts = geq_simplex(&sp, &et(7), Algebra::Toeplitz).unwrap();
        for p in &parts[..parts.len() - 1] {
            assert_eq!(p.reason_if_empty, Some(EmptyReason::OffTransition));
        }
        assert_eq!(parts.last().unwrap().generators.len(), 3);
    }

    #[test]
    fn resolvent_constant() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let tau = TraceVector::delta(3, 2);
        let kv = kms_vector(&sp, &tau, &et(8), c(&[0, 1])).unwrap();
        assert!((kv.c - 16.0 / 9.0).abs() < 1e-12);
        assert_eq!(kv.m, vec![0.0, 0.0, 1.0]);
        let kv = kms_vector(&sp, &tau, &et(2), ColorSet::EMPTY).unwrap();
        assert_eq!(kv.c, 1.0);
    }

    #[test]
    fn subharmonic_vector_and_defects() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let tau = TraceVector::from_exact(half(3, 0, 2)).unwrap();
        let kv = kms_vector(&sp, &tau, &et(5), c(&[1])).unwrap();
        assert_eq!(kv.m[1], 0.0);
        let d1 = defect_vector(&g, &kv, 0, 1e-9).unwrap();
        assert!(d1.iter().all(|d| d.abs() < 1e-12));
        let d2 = defect_vector(&g, &kv, 1, 1e-9).unwrap();
        assert!(d2.iter().any(|&d| d > 1e-6));
    }

    #[test]
    fn membership_is_enforced() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        // delta_v1 has entropy log 5 > log 4
        let err = kms_vector(&sp, &TraceVector::delta(3, 0), &et(4), c(&[0, 1])).unwrap_err();
        assert!(matches!(err, KmsError::TauNotInSimplex(Criterion::EntropyBound { .. })));
        let err = kms_vector(&sp, &TraceVector::delta(3, 0), &et(5), c(&[1])).unwrap_err();
        assert!(matches!(
            err,
            KmsError::TauNotInSimplex(Criterion::EigenEquation { colour: 1, .. })
        ));
    }

    #[test]
    fn state_values() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let kv = kms_vector(&sp, &TraceVector::delta(3, 2), &et(2), ColorSet::EMPTY).unwrap();
        assert_eq!(evaluate_state(&g, &kv, &Multidegree(vec![1, 0]), 2).unwrap(), 0.5);
        assert_eq!(evaluate_state(&g, &kv, &Multidegree(vec![0, 0]), 2).unwrap(), 1.0);
        assert_eq!(evaluate_state(&g, &kv, &Multidegree(vec![1, 0]), 0).unwrap(), 0.0);
        assert_eq!(evaluate_off_diagonal(&kv), 0.0);
    }

    #[test]
    fn diagram_regimes() {
        let g = fixtures::ex1();
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let d = phase_diagram(&sp, Algebra::Toeplitz).unwrap();
        assert_eq!(d.transitions.len(), 3);
        assert_eq!(d.intervals.len(), 4);
        let finite_counts: Vec<usize> = d.intervals.iter().map(|i| i.finite.generators.len()).collect();
        assert_eq!(finite_counts, vec![0, 1, 2, 3]);
        assert_eq!(d.beta_c, Entropy::Finite(5f64.ln()));
        assert_eq!(d.beta_c_prime, 2f64.ln());

        let d = phase_diagram(&sp, Algebra::CuntzKrieger).unwrap();
        assert!(d.intervals.iter().all(|i| i.finite.is_empty()));
        let nonempty: Vec<(f64, usize)> = d
            .transitions
            .iter()
            .flat_map(|p| p.parts.iter().filter(|q| !q.is_empty()).map(move |q| (p.transition.radius.value, q.generators.len())))
            .collect();
        assert_eq!(nonempty, vec![(2.0, 1)]);
    }

    #[test]
    fn bouquet_has_transition_at_zero() {
        let g = fixtures::bouquet(&[1, 1]);
        let sp = Spectrum::new(&g, Settings::default()).unwrap();
        let d = phase_diagram(&sp, Algebra::Toeplitz).unwrap();
        assert_eq!(d.transitions.len(), 1);
        assert!(d.transitions[0].beta.is_none());
        assert_eq!(d.intervals.len(), 1);
        assert_eq!(d.intervals[0].finite.generators, vec![TraceVector::delta(1, 0)]);
    }
}
