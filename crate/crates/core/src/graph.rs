//! The higher-rank graph skeleton: `N` commuting nonnegative integer
//! adjacency matrices over a shared, ordered vertex list.
//!
//! Entry `(t, s)` of colour `i` counts the `i`-coloured edges from `s` to
//! `t`. Everything downstream depends only on these matrices; the
//! factorization rules of the underlying category are never needed.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sets::{ColorSet, VertexSet, MAX_COLOURS};

/// Square matrix of edge counts, row-major, indexed `(target, source)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CountMatrix {
    dim: usize,
    data: Vec<u64>,
}

impl CountMatrix {
    pub fn zeros(dim: usize) -> Self {
        CountMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1;
        }
        m
    }

    /// Builds from rows. Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for r in rows {
            assert_eq!(r.len(), dim, "matrix must be square");
            data.extend_from_slice(r);
        }
        CountMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, t: usize, s: usize) -> u64 {
        self.data[t * self.dim + s]
    }

    pub fn set(&mut self, t: usize, s: usize, value: u64) {
        self.data[t * self.dim + s] = value;
    }

    pub fn row(&self, t: usize) -> &[u64] {
        &self.data[t * self.dim..(t + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|t| self.row(t).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for t in 0..self.dim {
            for s in 0..self.dim {
                out.set(s, t, self.get(t, s));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Principal submatrix on `keep` (in increasing index order).
    pub fn submatrix(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(keep.len());
        for (a, &t) in keep.iter().enumerate() {
            for (b, &s) in keep.iter().enumerate() {
                out.set(a, b, self.get(t, s));
            }
        }
        out
    }

    /// Vertices reached in one step from `s`.
    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |&t| self.get(t, s) != 0)
    }

    pub fn to_big(&self) -> BigMatrix {
        BigMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&x| BigUint::from(x)).collect(),
        }
    }

    /// `self * v` in floating point.
    pub fn mul_vec_f64(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|t| {
                self.row(t)
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a as f64 * x)
                    .sum()
            })
            .collect()
    }
}

impl fmt::Debug for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.dim).map(|t| self.row(t)))
            .finish()
    }
}

/// Arbitrary-precision nonnegative integer matrix, used wherever entries
/// may outgrow `u64` (degree matrices, path counts).
#[derive(Clone, PartialEq, Eq)]
pub struct BigMatrix {
    dim: usize,
    data: Vec<BigUint>,
}

impl BigMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![BigUint::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = BigUint::one();
        }
        BigMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, t: usize, s: usize) -> &BigUint {
        &self.data[t * self.dim + s]
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut data = vec![BigUint::zero(); n * n];
        for t in 0..n {
            for k in 0..n {
                let a = &self.data[t * n + k];
                if a.is_zero() {
                    continue;
                }
                for s in 0..n {
                    let b = &other.data[k * n + s];
                    if !b.is_zero() {
                        data[t * n + s] += a * b;
                    }
                }
            }
        }
        BigMatrix { dim: n, data }
    }

    pub fn pow(&self, mut e: u64) -> BigMatrix {
        let mut base = self.clone();
        let mut acc = BigMatrix::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn entry_sum(&self) -> BigUint {
        self.data.iter().sum()
    }

    pub fn row_is_zero(&self, t: usize) -> bool {
        self.data[t * self.dim..(t + 1) * self.dim]
            .iter()
            .all(Zero::is_zero)
    }

    /// Converts back to `u64` entries, if they fit.
    pub fn to_counts(&self) -> Option<CountMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| u64::try_from(x).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(CountMatrix {
            dim: self.dim,
            data,
        })
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.dim).map(|t| &self.data[t * self.dim..(t + 1) * self.dim]))
            .finish()
    }
}

/// A multidegree `(n_1, ..., n_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multidegree(pub Vec<u64>);

impl Multidegree {
    pub fn zero(colours: usize) -> Self {
        Multidegree(vec![0; colours])
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// `|n| = n_1 + ... + n_N`.
    pub fn length(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Colours with a nonzero entry.
    pub fn support(&self) -> ColorSet {
        ColorSet::from_indices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, _)| i),
        )
    }

    /// Weighted length `<n, s>`.
    pub fn weighted_length(&self, weights: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&n, &s)| n as f64 * s)
            .sum()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// One violated condition found while validating raw graph data.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Violation {
    #[error("no colours given")]
    NoColours,
    #[error("declared {declared} colours but {found} matrices given")]
    ColourCount { declared: usize, found: usize },
    #[error("at most {MAX_COLOURS} colours are supported, got {0}")]
    TooManyColours(usize),
    #[error("{found} vertex labels given but matrices are {dim}x{dim}")]
    VertexCount { dim: usize, found: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("colour {colour}: row {row} has {len} entries, matrix is not square")]
    NonSquare {
        colour: usize,
        row: usize,
        len: usize,
    },
    #[error("colour {colour}: dimension {found} differs from colour 1 dimension {expected}")]
    DimensionMismatch {
        colour: usize,
        expected: usize,
        found: usize,
    },
    #[error("colour {colour}: entry ({target},{src}) = {value} is negative")]
    NegativeEntry {
        colour: usize,
        target: usize,
        src: usize,
        value: String,
    },
    #[error("colour {colour}: entry ({target},{src}) = {value} is not a nonnegative integer")]
    NonIntegerEntry {
        colour: usize,
        target: usize,
        src: usize,
        value: String,
    },
    #[error(
        "colours {i} and {j} do not commute: entry ({target},{src}) of products is {left} vs {right}"
    )]
    NonCommuting {
        i: usize,
        j: usize,
        target: usize,
        src: usize,
        left: String,
        right: String,
    },
    #[error("weight {colour} = {value} is not strictly positive")]
    NonpositiveWeight { colour: usize, value: f64 },
    #[error("{found} weights given for {colours} colours")]
    WeightCount { colours: usize, found: usize },
}

/// All violations found in a candidate graph. Colour and vertex indices in
/// the messages are 1-based.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("empty vertex set")]
    EmptyInput,
    #[error("empty colour set")]
    EmptyColorSet,
    #[error("colour {0} out of range")]
    ColourOutOfRange(usize),
    #[error("vertex set is not forward closed: colour {colour} edge from {from} to {to} leaves it")]
    NotForwardClosed {
        colour: usize,
        from: usize,
        to: usize,
    },
    #[error("multidegree has {found} entries, graph has {expected} colours")]
    DegreeLength { expected: usize, found: usize },
}

/// Raw, unvalidated graph data: the on-disk JSON shape.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub colors: usize,
    pub vertices: Vec<String>,
    pub matrices: Vec<Vec<Vec<serde_json::Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed graph file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid graph:\n{0}")]
    Invalid(#[from] ValidationReport),
}

/// A validated higher-rank graph skeleton.
#[derive(Clone, Debug, PartialEq)]
pub struct Skeleton {
    vertices: Vec<String>,
    matrices: Vec<CountMatrix>,
    weights: Vec<f64>,
}

impl Skeleton {
    /// Builds a skeleton with unit weights and labels `v1, v2, ...`.
    pub fn new(matrices: Vec<CountMatrix>) -> Result<Self, ValidationReport> {
        let dim = matrices.first().map_or(0, CountMatrix::dim);
        let vertices = (1..=dim).map(|k| format!("v{k}")).collect();
        let weights = vec![1.0; matrices.len()];
        Self::with_parts(vertices, matrices, weights)
    }

    pub fn from_rows(matrices: &[Vec<Vec<u64>>]) -> Result<Self, ValidationReport> {
        let file = GraphFile {
            colors: matrices.len(),
            vertices: (1..=matrices.first().map_or(0, Vec::len))
                .map(|k| format!("v{k}"))
                .collect(),
            matrices: matrices
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|r| r.iter().map(|&x| x.into()).collect())
                        .collect()
                })
                .collect(),
            weights: None,
        };
        validate_skeleton(&file)
    }

    pub fn with_parts(
        vertices: Vec<String>,
        matrices: Vec<CountMatrix>,
        weights: Vec<f64>,
    ) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        check_structure(&vertices, &matrices, &weights, &mut report);
        if report.violations.is_empty() {
            check_commuting(&matrices, &mut report);
        }
        if report.violations.is_empty() {
            Ok(Skeleton {
                vertices,
                matrices,
                weights,
            })
        } else {
            Err(report)
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, LoadError> {
        let file: GraphFile = serde_json::from_str(text)?;
        Ok(validate_skeleton(&file)?)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            colors: self.colours(),
            vertices: self.vertices.clone(),
            matrices: self
                .matrices
                .iter()
                .map(|m| {
                    m.rows()
                        .into_iter()
                        .map(|r| r.into_iter().map(Into::into).collect())
                        .collect()
                })
                .collect(),
            weights: if self.has_unit_weights() {
                None
            } else {
                Some(self.weights.clone())
            },
        }
    }

    /// Same graph with different weights `s_1, ..., s_N`.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        check_weights(self.colours(), &weights, &mut report);
        if report.violations.is_empty() {
            Ok(Skeleton {
                weights,
                ..self.clone()
            })
        } else {
            Err(report)
        }
    }

    pub fn colours(&self) -> usize {
        self.matrices.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn matrix(&self, colour: usize) -> &CountMatrix {
        &self.matrices[colour]
    }

    pub fn matrices(&self) -> &[CountMatrix] {
        &self.matrices
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, colour: usize) -> f64 {
        self.weights[colour]
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&s| s == 1.0)
    }

    pub fn all_colours(&self) -> ColorSet {
        ColorSet::full(self.colours())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    fn check_colours(&self, f: ColorSet) -> Result<(), GraphError> {
        match f.iter().find(|&i| i >= self.colours()) {
            Some(i) => Err(GraphError::ColourOutOfRange(i + 1)),
            None => Ok(()),
        }
    }

    /// `prod_i (Lambda^(i))^{n_i}`; entry `(t,s)` counts paths of degree `n`
    /// from `s` to `t`.
    pub fn degree_matrix(&self, n: &Multidegree) -> Result<BigMatrix, GraphError> {
        if n.0.len() != self.colours() {
            return Err(GraphError::DegreeLength {
                expected: self.colours(),
                found: n.0.len(),
            });
        }
        let mut acc = BigMatrix::identity(self.vertex_count());
        for (i, &e) in n.0.iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&self.matrices[i].to_big().pow(e));
            }
        }
        Ok(acc)
    }

    /// Vertices reachable from `seeds` along paths (trivial ones included)
    /// whose edges have colours in `f`.
    pub fn forward_closure(&self, seeds: &VertexSet, f: ColorSet) -> Result<VertexSet, GraphError> {
        if seeds.is_empty() {
            return Err(GraphError::EmptyInput);
        }
        self.check_colours(f)?;
        Ok(self.closure_unchecked(seeds, f))
    }

    pub(crate) fn closure_unchecked(&self, seeds: &VertexSet, f: ColorSet) -> VertexSet {
        let mut seen = seeds.clone();
        let mut stack = seeds.to_vec();
        while let Some(s) = stack.pop() {
            for i in f.iter() {
                for t in self.matrices[i].successors(s) {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        seen
    }

    /// Closure of a single vertex under `f`.
    pub fn vertex_closure(&self, v: usize, f: ColorSet) -> VertexSet {
        self.closure_unchecked(&VertexSet::singleton(self.vertex_count(), v), f)
    }

    /// First edge leaving `w` in colours `f`, if any.
    pub fn escaping_edge(&self, w: &VertexSet, f: ColorSet) -> Option<(usize, usize, usize)> {
        for i in f.iter() {
            for s in w.iter() {
                if let Some(t) = self.matrices[i].successors(s).find(|&t| !w.contains(t)) {
                    return Some((i, s, t));
                }
            }
        }
        None
    }

    /// The sink subgraph on a forward-closed vertex set.
    pub fn restrict(&self, w: &VertexSet) -> Result<Skeleton, GraphError> {
        if let Some((colour, from, to)) = self.escaping_edge(w, self.all_colours()) {
            return Err(GraphError::NotForwardClosed {
                colour: colour + 1,
                from,
                to,
            });
        }
        let keep = w.to_vec();
        let matrices: Vec<CountMatrix> = self.matrices.iter().map(|m| m.submatrix(&keep)).collect();
        let vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        let restricted = Skeleton {
            vertices,
            matrices,
            weights: self.weights.clone(),
        };
        debug_assert!({
            let mut r = ValidationReport::default();
            check_commuting(&restricted.matrices, &mut r);
            r.violations.is_empty()
        });
        Ok(restricted)
    }

    /// Vertices receiving no edge of any colour in `f`.
    pub fn f_sources(&self, f: ColorSet) -> Result<VertexSet, GraphError> {
        if f.is_empty() {
            return Err(GraphError::EmptyColorSet);
        }
        self.check_colours(f)?;
        let n = self.vertex_count();
        Ok(VertexSet::from_indices(
            n,
            (0..n).filter(|&v| f.iter().all(|i| self.matrices[i].row(v).iter().all(|&x| x == 0))),
        ))
    }

    /// Vertices whose row of `(prod_{i in f} Lambda^(i))^k` vanishes, for
    /// `k = |V|` (and hence for every larger `k`).
    pub fn eventual_f_sources(&self, f: ColorSet) -> Result<VertexSet, GraphError> {
        if f.is_empty() {
            return Err(GraphError::EmptyColorSet);
        }
        self.check_colours(f)?;
        let n = self.vertex_count();
        Ok(self.zero_rows_of_power(f, n as u64))
    }

    pub(crate) fn zero_rows_of_power(&self, f: ColorSet, k: u64) -> VertexSet {
        let n = self.vertex_count();
        // Only the zero pattern matters, so a boolean product suffices.
        let mut step = Pattern::identity(n);
        for i in f.iter() {
            step = step.mul(&Pattern::of(&self.matrices[i]));
        }
        let power = step.pow(k);
        VertexSet::from_indices(n, (0..n).filter(|&v| power.row_is_zero(v)))
    }

    /// Vertices that are neither `f`-sources nor reachable from one along
    /// `f^c`-coloured paths.
    pub fn f_tracing(&self, f: ColorSet) -> Result<VertexSet, GraphError> {
        let sources = self.f_sources(f)?;
        if sources.is_empty() {
            return Ok(self.all_vertices());
        }
        let fc = f.complement(self.colours());
        Ok(self.closure_unchecked(&sources, fc).complement())
    }
}

/// Boolean zero pattern of a square matrix.
#[derive(Clone)]
struct Pattern {
    dim: usize,
    bits: Vec<bool>,
}

impl Pattern {
    fn identity(dim: usize) -> Self {
        let mut bits = vec![false; dim * dim];
        for i in 0..dim {
            bits[i * dim + i] = true;
        }
        Pattern { dim, bits }
    }

    fn of(m: &CountMatrix) -> Self {
        Pattern {
            dim: m.dim,
            bits: m.data.iter().map(|&x| x != 0).collect(),
        }
    }

    fn mul(&self, other: &Pattern) -> Pattern {
        let n = self.dim;
        let mut bits = vec![false; n * n];
        for t in 0..n {
            for k in 0..n {
                if self.bits[t * n + k] {
                    for s in 0..n {
                        bits[t * n + s] |= other.bits[k * n + s];
                    }
                }
            }
        }
        Pattern { dim: n, bits }
    }

    fn pow(&self, mut e: u64) -> Pattern {
        let mut base = self.clone();
        let mut acc = Pattern::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn row_is_zero(&self, t: usize) -> bool {
        !self.bits[t * self.dim..(t + 1) * self.dim].iter().any(|&b| b)
    }
}

/// Validates raw graph data, collecting every violation.
pub fn validate_skeleton(raw: &GraphFile) -> Result<Skeleton, ValidationReport> {
    let mut report = ValidationReport::default();
    if raw.colors == 0 || raw.matrices.is_empty() {
        report.violations.push(Violation::NoColours);
        return Err(report);
    }
    if raw.colors != raw.matrices.len() {
        report.violations.push(Violation::ColourCount {
            declared: raw.colors,
            found: raw.matrices.len(),
        });
    }
    if raw.matrices.len() > MAX_COLOURS {
        report.violations.push(Violation::TooManyColours(raw.matrices.len()));
        return Err(report);
    }

    let dim = raw.matrices[0].len();
    let mut matrices = Vec::with_capacity(raw.matrices.len());
    let mut shape_ok = true;
    for (i, rows) in raw.matrices.iter().enumerate() {
        if rows.len() != dim {
            report.violations.push(Violation::DimensionMismatch {
                colour: i + 1,
                expected: dim,
                found: rows.len(),
            });
            shape_ok = false;
            continue;
        }
        let mut m = CountMatrix::zeros(dim);
        for (t, row) in rows.iter().enumerate() {
            if row.len() != dim {
                report.violations.push(Violation::NonSquare {
                    colour: i + 1,
                    row: t + 1,
                    len: row.len(),
                });
                shape_ok = false;
                continue;
            }
            for (s, x) in row.iter().enumerate() {
                match parse_entry(x) {
                    Ok(v) => m.set(t, s, v),
                    Err(negative) => {
                        let (colour, target, source, value) = (i + 1, t + 1, s + 1, x.to_string());
                        report.violations.push(if negative {
                            Violation::NegativeEntry {
                                colour,
                                target,
                                src: source,
                                value,
                            }
                        } else {
                            Violation::NonIntegerEntry {
                                colour,
                                target,
                                src: source,
                                value,
                            }
                        });
                    }
                }
            }
        }
        matrices.push(m);
    }

    let weights = raw.weights.clone().unwrap_or_else(|| vec![1.0; raw.matrices.len()]);
    if shape_ok {
        check_structure(&raw.vertices, &matrices, &weights, &mut report);
    } else {
        check_weights(raw.matrices.len(), &weights, &mut report);
    }
    if report.violations.is_empty() {
        check_commuting(&matrices, &mut report);
    }
    if report.violations.is_empty() {
        Ok(Skeleton {
            vertices: raw.vertices.clone(),
            matrices,
            weights,
        })
    } else {
        Err(report)
    }
}

/// `Err(true)` for negative entries, `Err(false)` for other non-integers.
fn parse_entry(x: &serde_json::Number) -> Result<u64, bool> {
    if let Some(v) = x.as_u64() {
        return Ok(v);
    }
    if x.as_i64().is_some() {
        return Err(true);
    }
    match x.as_f64() {
        Some(f) if f < 0.0 => Err(true),
        _ => Err(false),
    }
}

fn check_structure(
    vertices: &[String],
    matrices: &[CountMatrix],
    weights: &[f64],
    report: &mut ValidationReport,
) {
    if matrices.is_empty() {
        report.violations.push(Violation::NoColours);
        return;
    }
    let dim = matrices[0].dim();
    for (i, m) in matrices.iter().enumerate().skip(1) {
        if m.dim() != dim {
            report.violations.push(Violation::DimensionMismatch {
                colour: i + 1,
                expected: dim,
                found: m.dim(),
            });
        }
    }
    if vertices.len() != dim {
        report.violations.push(Violation::VertexCount {
            dim,
            found: vertices.len(),
        });
    }
    for (k, v) in vertices.iter().enumerate() {
        if vertices[..k].contains(v) {
            report.violations.push(Violation::DuplicateVertex(v.clone()));
        }
    }
    check_weights(matrices.len(), weights, report);
}

fn check_weights(colours: usize, weights: &[f64], report: &mut ValidationReport) {
    if weights.len() != colours {
        report.violations.push(Violation::WeightCount {
            colours,
            found: weights.len(),
        });
    }
    for (i, &s) in weights.iter().enumerate() {
        if !(s > 0.0 && s.is_finite()) {
            report.violations.push(Violation::NonpositiveWeight {
                colour: i + 1,
                value: s,
            });
        }
    }
}

/// Exact pairwise commutation check; records the first differing entry of
/// each failing pair.
fn check_commuting(matrices: &[CountMatrix], report: &mut ValidationReport) {
    let big: Vec<BigMatrix> = matrices.iter().map(CountMatrix::to_big).collect();
    for i in 0..big.len() {
        for j in i + 1..big.len() {
            let ij = big[i].mul(&big[j]);
            let ji = big[j].mul(&big[i]);
            if ij == ji {
                continue;
            }
            let n = big[i].dim();
            let (t, s) = (0..n)
                .flat_map(|t| (0..n).map(move |s| (t, s)))
                .find(|&(t, s)| ij.get(t, s) != ji.get(t, s))
                .expect("products differ somewhere");
            report.violations.push(Violation::NonCommuting {
                i: i + 1,
                j: j + 1,
                target: t + 1,
                src: s + 1,
                left: ij.get(t, s).to_string(),
                right: ji.get(t, s).to_string(),
            });
        }
    }
}
