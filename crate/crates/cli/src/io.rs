//! JSON and DOT documents. Words are arrays of generator labels; object keys
//! come out sorted, so identical inputs give identical bytes.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use cubulator::bruhat::BruhatInterval;
use cubulator::constructions::ConstructionResult;
use cubulator::growth::GrowthProbeReport;
use cubulator::kl::{CpReport, KlTable};
use cubulator::lattice::CubicalLattice;
use cubulator::poly::{IntPoly, SeriesTruncation};
use cubulator::search::{Checkpoint, Cubulation, SearchOutcome};
use cubulator::{CoxeterSystem, Element};

pub const SCHEMA: &str = "bruhat-cubulator/1";

pub fn word(sys: &CoxeterSystem, w: &Element) -> Value {
    json!(sys.labels(w))
}

/// Integers as JSON numbers when they fit in an `i64`, else as decimal strings.
fn big(c: &BigInt) -> Value {
    c.to_i64().map(Value::from).unwrap_or_else(|| Value::String(c.to_string()))
}

fn coeffs(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(big).collect())
}

pub fn series(s: &SeriesTruncation) -> Value {
    Value::Array(s.0.iter().map(big).collect())
}

fn header(sys: &CoxeterSystem, kind: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!(kind));
    m.insert("system".into(), json!(sys.descriptor()));
    m
}

pub fn interval_json(sys: &CoxeterSystem, iv: &BruhatInterval) -> Value {
    let mut m = header(sys, "interval");
    m.insert("top".into(), word(sys, iv.top()));
    let vertices: Vec<Value> = iv
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| json!({"id": i, "word": word(sys, v), "length": v.len()}))
        .collect();
    m.insert("vertices".into(), Value::Array(vertices));
    m.insert("hasse_edges".into(), json!(iv.hasse_edges()));
    let edges: Vec<Value> = iv
        .bruhat_edges()
        .iter()
        .map(|e| json!({"from": e.from, "to": e.to, "label": word(sys, &e.label)}))
        .collect();
    m.insert("bruhat_edges".into(), Value::Array(edges));
    Value::Object(m)
}

/// Bruhat graph with one rank per length.
pub fn interval_dot(sys: &CoxeterSystem, iv: &BruhatInterval) -> String {
    let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n");
    let top = iv.top().len();
    for len in 0..=top {
        let ids: Vec<String> = (0..iv.len() as u32).filter(|&i| iv.length(i) == len).map(|i| format!("v{i}")).collect();
        if !ids.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
    }
    for (i, v) in iv.vertices().iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", sys.format(v));
    }
    for e in iv.bruhat_edges() {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, sys.format(&e.label));
    }
    out.push_str("}\n");
    out
}

pub fn kl_json(sys: &CoxeterSystem, iv: &BruhatInterval, table: &KlTable, report: &CpReport) -> Value {
    let mut m = header(sys, "kl");
    m.insert("top".into(), word(sys, iv.top()));
    let mut pairs = Vec::new();
    for w in table.tops() {
        for x in table.below(w).iter() {
            let x = x as u32;
            pairs.push(json!({
                "x": word(sys, iv.vertex(x)),
                "w": word(sys, iv.vertex(w)),
                "p": coeffs(&table.p(x, w).expect("x lies below w")),
                "r": coeffs(&table.r(x, w)),
            }));
        }
    }
    m.insert("pairs".into(), Value::Array(pairs));
    m.insert("cp_report".into(), serde_json::to_value(report).expect("plain data"));
    Value::Object(m)
}

fn assignment_json(sys: &CoxeterSystem, iv: &BruhatInterval, cert: &Cubulation) -> Value {
    let lat = &cert.lattice;
    Value::Array(
        (0..lat.num_vertices())
            .map(|i| {
                let id = cert.assignment[i];
                json!({"coords": lat.coords_of(i), "id": id, "word": word(sys, iv.vertex(id))})
            })
            .collect(),
    )
}

pub fn outcome_json(sys: &CoxeterSystem, iv: &BruhatInterval, out: &SearchOutcome) -> Value {
    let mut m = header(sys, "cubulation");
    m.insert("top".into(), word(sys, iv.top()));
    m.insert("status".into(), serde_json::to_value(out.status).expect("plain data"));
    if let Some(cert) = &out.certificate {
        m.insert("lattice".into(), json!(cert.lattice.params()));
        m.insert("assignment".into(), assignment_json(sys, iv, cert));
    }
    m.insert("stats".into(), serde_json::to_value(&out.stats).expect("plain data"));
    Value::Object(m)
}

pub fn construction_json(sys: &CoxeterSystem, r: &ConstructionResult) -> Value {
    let mut m = header(sys, "cubulation");
    m.insert("top".into(), word(sys, &r.top));
    m.insert("status".into(), json!("Found"));
    m.insert("provenance".into(), json!(r.provenance.to_string()));
    m.insert("lattice".into(), json!(r.lattice().params()));
    m.insert("assignment".into(), assignment_json(sys, &r.interval, &r.certificate));
    Value::Object(m)
}

pub fn checkpoint_json(sys: &CoxeterSystem, top: &Element, cp: &Checkpoint) -> Value {
    let mut m = header(sys, "checkpoint");
    m.insert("top".into(), word(sys, top));
    m.insert("checkpoint".into(), serde_json::to_value(cp).expect("plain data"));
    Value::Object(m)
}

fn check_header(v: &Value, kind: &str) -> Result<CoxeterSystem> {
    if v.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        bail!("missing or unsupported schema (expected {SCHEMA})");
    }
    if v.get("kind").and_then(Value::as_str) != Some(kind) {
        bail!("expected a {kind} document");
    }
    let name = v.get("system").and_then(Value::as_str).ok_or_else(|| anyhow!("missing system"))?;
    Ok(CoxeterSystem::build(name)?)
}

fn read_word(sys: &CoxeterSystem, v: &Value) -> Result<Element> {
    let labels: Vec<i64> = serde_json::from_value(v.clone()).context("word must be an array of labels")?;
    Ok(sys.element(&labels)?)
}

/// Reload a checkpoint document; returns the system, the interval top and the checkpoint.
pub fn load_checkpoint(v: &Value) -> Result<(CoxeterSystem, Element, Checkpoint)> {
    let sys = check_header(v, "checkpoint")?;
    let top = read_word(&sys, v.get("top").ok_or_else(|| anyhow!("missing top"))?)?;
    let cp = serde_json::from_value(v.get("checkpoint").cloned().ok_or_else(|| anyhow!("missing checkpoint"))?)?;
    Ok((sys, top, cp))
}

/// Reload a certificate document against a freshly built interval. The ids
/// are re-derived from the words, so a stale id column cannot slip through.
pub fn load_certificate(v: &Value) -> Result<(CoxeterSystem, BruhatInterval, Cubulation)> {
    let sys = check_header(v, "cubulation")?;
    let top = read_word(&sys, v.get("top").ok_or_else(|| anyhow!("missing top"))?)?;
    let iv = BruhatInterval::new(&sys, &top)?;
    let params: Vec<u32> =
        serde_json::from_value(v.get("lattice").cloned().ok_or_else(|| anyhow!("document has no lattice"))?)?;
    let lattice = CubicalLattice::new(params)?;
    let rows = v.get("assignment").and_then(Value::as_array).ok_or_else(|| anyhow!("missing assignment"))?;
    let mut assignment = vec![u32::MAX; lattice.num_vertices()];
    if rows.len() != assignment.len() {
        bail!("assignment has {} rows for {} lattice vertices", rows.len(), assignment.len());
    }
    for row in rows {
        let coords: Vec<u32> = serde_json::from_value(row.get("coords").cloned().unwrap_or(Value::Null))?;
        if coords.len() != lattice.dim() || coords.iter().zip(lattice.params()).any(|(c, k)| c > k) {
            bail!("coordinates {coords:?} outside {lattice}");
        }
        let w = read_word(&sys, row.get("word").ok_or_else(|| anyhow!("missing word"))?)?;
        let id = iv.id_of(&w).ok_or_else(|| anyhow!("{} is not in the interval", sys.format(&w)))?;
        assignment[lattice.index_of(&coords)] = id;
    }
    Ok((sys, iv, Cubulation { lattice, assignment }))
}

pub fn growth_json(
    sys: &CoxeterSystem,
    radius: usize,
    balls: &[u64],
    poincare: &SeriesTruncation,
    bott: Option<&SeriesTruncation>,
    probe: Option<&GrowthProbeReport>,
) -> Value {
    let mut m = header(sys, "growth");
    m.insert("radius".into(), json!(radius));
    m.insert("ball_sizes".into(), json!(balls));
    m.insert("poincare".into(), series(poincare));
    if let Some(b) = bott {
        m.insert("bott".into(), series(b));
    }
    if let Some(p) = probe {
        let shapes: Vec<Vec<Vec<u32>>> = p.shapes.iter().map(|s| s.iter().map(|q| q.0.clone()).collect()).collect();
        let stab = p.stabilization.as_ref().map(|s| json!({"from": s.from, "shape": s.shape.0}));
        m.insert(
            "probe".into(),
            json!({"f": p.f, "shapes": shapes, "stabilization": stab, "evidence": "finite"}),
        );
    }
    Value::Object(m)
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
