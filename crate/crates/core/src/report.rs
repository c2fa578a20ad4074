//! JSON reports with a canonical byte layout: sorted keys, floats rounded
//! to 12 significant digits, infinities as strings. Parsing a report and
//! serializing it again reproduces it byte for byte.

use serde_json::{json, Map, Value};

use crate::eigencone::TraceVector;
use crate::graph::Skeleton;
use crate::kms::{Beta, Interval, KmsVector, PhaseDiagram, SubharmonicSimplex, TransitionPoint};
use crate::sets::{ColorSet, VertexSet};
use crate::spectral::{Entropy, Radius, Spectrum, Transition};

/// Rounds to 12 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_nan() {
        return Value::String("nan".into());
    }
    if x.is_infinite() {
        return Value::String(if x > 0.0 { "inf" } else { "-inf" }.into());
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    // avoid "-0.0"
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    json!(rounded)
}

pub fn entropy(e: Entropy) -> Value {
    match e {
        Entropy::NegInfinity => Value::String("-inf".into()),
        Entropy::Finite(x) => num(x),
    }
}

pub fn radius(r: &Radius) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), num(r.value));
    m.insert("exact".into(), r.exact.map_or(Value::Null, |k| json!(k)));
    Value::Object(m)
}

pub fn colours(f: ColorSet) -> Value {
    json!(f.to_one_based())
}

fn labels(g: &Skeleton, vs: impl IntoIterator<Item = usize>) -> Value {
    Value::Array(
        vs.into_iter()
            .map(|v| Value::String(g.vertex_labels()[v].clone()))
            .collect(),
    )
}

pub fn vertex_set(g: &Skeleton, w: &VertexSet) -> Value {
    labels(g, w.iter())
}

pub fn trace(tau: &TraceVector) -> Value {
    let mut m = Map::new();
    m.insert(
        "values".into(),
        Value::Array(tau.values().iter().map(|&x| num(x)).collect()),
    );
    if let Some(exact) = tau.exact() {
        m.insert(
            "exact".into(),
            Value::Array(exact.iter().map(|q| Value::String(q.to_string())).collect()),
        );
    }
    Value::Object(m)
}

fn beta_fields(m: &mut Map<String, Value>, beta: &Beta) {
    m.insert("beta".into(), num(beta.value()));
    m.insert("exp_beta".into(), num(beta.exp_value()));
    if let Some(q) = beta.exp_exact() {
        m.insert("exp_beta_exact".into(), Value::String(q.to_string()));
    }
}

pub fn part(p: &SubharmonicSimplex) -> Value {
    json!({
        "F": colours(p.colours),
        "kind": p.kind.code(),
        "generators": p.generators.iter().map(trace).collect::<Vec<_>>(),
        "reason_if_empty": p.reason_if_empty.map(|r| r.code()),
    })
}

/// Report for every part at one inverse temperature.
pub fn simplex(sp: &Spectrum<'_>, beta: &Beta, parts: &[SubharmonicSimplex]) -> Value {
    let g = sp.graph();
    let mut m = Map::new();
    beta_fields(&mut m, beta);
    let algebra = parts.first().map_or("nt", |p| p.algebra.code());
    m.insert("algebra".into(), json!(algebra));
    m.insert("parts".into(), Value::Array(parts.iter().map(part).collect()));
    m.insert("beta_c_prime".into(), num(sp.lower_critical()));
    m.insert("beta_c".into(), entropy(sp.critical()));
    m.insert("weights".into(), weights(g));
    m.insert("vertices".into(), labels(g, 0..g.vertex_count()));
    Value::Object(m)
}

fn weights(g: &Skeleton) -> Value {
    Value::Array(g.weights().iter().map(|&s| num(s)).collect())
}

pub fn transition(g: &Skeleton, t: &Transition) -> Value {
    json!({
        "radius": radius(&t.radius),
        "log": entropy(t.log_value()),
        "witnesses": labels(g, t.witnesses.iter().copied()),
    })
}

fn point(p: &TransitionPoint) -> Value {
    json!({
        "radius": radius(&p.transition.radius),
        "beta": p.beta.as_ref().map(|b| num(b.value())),
        "parts": p.parts.iter().map(part).collect::<Vec<_>>(),
    })
}

fn interval(iv: &Interval) -> Value {
    json!({
        "lower": num(iv.lower),
        "upper": iv.upper.map_or(Value::String("inf".into()), num),
        "lower_radius": iv.lower_radius.as_ref().map(radius),
        "upper_radius": iv.upper_radius.as_ref().map(radius),
        "representative_beta": num(iv.representative.value()),
        "finite": part(&iv.finite),
    })
}

pub fn diagram(g: &Skeleton, d: &PhaseDiagram) -> Value {
    json!({
        "algebra": d.algebra.code(),
        "weights": weights(g),
        "vertices": labels(g, 0..g.vertex_count()),
        "beta_c_prime": num(d.beta_c_prime),
        "beta_c": entropy(d.beta_c),
        "transition_set": d.spectrum.iter().map(|t| transition(g, t)).collect::<Vec<_>>(),
        "points": d.transitions.iter().map(point).collect::<Vec<_>>(),
        "intervals": d.intervals.iter().map(interval).collect::<Vec<_>>(),
    })
}

pub fn transitions(sp: &Spectrum<'_>) -> Value {
    let g = sp.graph();
    let set = sp.transition_set();
    json!({
        "weights": weights(g),
        "transition_set": set.values.iter().map(|t| transition(g, t)).collect::<Vec<_>>(),
        "subharmonic": set.subharmonic(sp.tol()).map(|t| radius(&t.radius)).collect::<Vec<_>>(),
    })
}

/// Colour radii, vertex radii, and strong entropies for every nonempty
/// colour set.
pub fn spectrum(sp: &Spectrum<'_>) -> Value {
    let g = sp.graph();
    let colour_roots: Vec<Value> = (0..g.colours())
        .map(|i| {
            let pr = sp.colour_root(i);
            json!({
                "colour": i + 1,
                "rho": radius(&pr.radius()),
                "bracket": [num(pr.lower), num(pr.upper)],
            })
        })
        .collect();
    let vertices: Vec<Value> = sp
        .vertex_radii()
        .iter()
        .enumerate()
        .map(|(v, r)| {
            json!({
                "vertex": g.vertex_labels()[v],
                "radius": radius(r),
                "entropy": entropy(sp.vertex_entropy(v)),
            })
        })
        .collect();
    let strong: Vec<Value> = ColorSet::all_subsets(g.colours())
        .into_iter()
        .filter(|f| !f.is_empty())
        .map(|f| {
            json!({
                "F": colours(f),
                "entropy": entropy(sp.strong_entropy(f).expect("nonempty colour set")),
            })
        })
        .collect();
    json!({
        "weights": weights(g),
        "colour_roots": colour_roots,
        "rho_graph": radius(&sp.rho_graph()),
        "vertices": vertices,
        "strong_entropy": strong,
        "beta_c_prime": num(sp.lower_critical()),
        "beta_c": entropy(sp.critical()),
    })
}

pub fn kms(g: &Skeleton, kv: &KmsVector, value: Option<f64>) -> Value {
    let mut m = Map::new();
    beta_fields(&mut m, &kv.beta);
    m.insert("F".into(), colours(kv.colours));
    m.insert("tau".into(), trace(&kv.tau));
    m.insert("m".into(), Value::Array(kv.m.iter().map(|&x| num(x)).collect()));
    m.insert("c".into(), num(kv.c));
    m.insert("weights".into(), weights(g));
    if let Some(x) = value {
        m.insert("value".into(), num(x));
    }
    Value::Object(m)
}

/// Pretty-printed canonical text, newline-terminated.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}
