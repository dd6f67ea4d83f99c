//! Balls in the Cayley graph, growth and Poincaré series truncations, and the
//! probe for quantum-polynomial shapes of `(1 - z)^|S| W(z)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bruhat::BruhatOrder;
use crate::coxeter::types::{AffineType, FiniteType, TypeTag};
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::poly::{multiply, truncated_rational, IntPoly, QuantumShape, SeriesTruncation};

/// Exponents of finite irreducible types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentTable(pub BTreeMap<String, Vec<u32>>);

impl ExponentTable {
    pub fn exponents(t: FiniteType) -> Vec<u32> {
        t.exponents()
    }

    /// Table for the given types, keyed by type name.
    pub fn for_types(types: &[FiniteType]) -> ExponentTable {
        ExponentTable(types.iter().map(|t| (t.to_string(), t.exponents())).collect())
    }
}

/// `β(0), ..., β(r)`: cumulative ball sizes.
pub fn ball_sizes(sys: &CoxeterSystem, r: usize) -> Vec<u64> {
    let counts = level_counts(sys, r);
    counts
        .iter()
        .scan(0u64, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect()
}

/// Number of elements of each length up to `r`, padded with zeros once a finite group runs out.
fn level_counts(sys: &CoxeterSystem, r: usize) -> Vec<u64> {
    let mut counts: Vec<u64> = sys.ball(r).iter().map(|l| l.len() as u64).collect();
    counts.resize(r + 1, 0);
    counts
}

/// The Poincaré series `W(z)` through `z^r`.
pub fn poincare_truncation(sys: &CoxeterSystem, r: usize) -> SeriesTruncation {
    SeriesTruncation(level_counts(sys, r).into_iter().map(BigInt::from).collect())
}

/// The growth series `Γ(z) = Σ β(k) z^k` through `z^r`.
pub fn growth_truncation(sys: &CoxeterSystem, r: usize) -> SeriesTruncation {
    SeriesTruncation(ball_sizes(sys, r).into_iter().map(BigInt::from).collect())
}

fn one_minus_pow(k: u32) -> IntPoly {
    let mut c = vec![0i64; k as usize + 1];
    c[0] = 1;
    c[k as usize] -= 1;
    IntPoly::from_i64s(&c)
}

/// Expansion of `Π (1 - z^{e_i + 1}) / ((1 - z)(1 - z^{e_i}))` through `z^r`.
pub fn bott_truncation(t: AffineType, r: usize) -> Result<SeriesTruncation> {
    let exps = t.finite_part().exponents();
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for e in exps {
        num = multiply(&num, &one_minus_pow(e + 1));
        den = multiply(&den, &multiply(&one_minus_pow(1), &one_minus_pow(e)));
    }
    truncated_rational(&num, &den, r)
}

/// [`bott_truncation`] for a system tagged as an irreducible affine type.
pub fn bott_truncation_for(sys: &CoxeterSystem, r: usize) -> Result<SeriesTruncation> {
    match sys.tag() {
        TypeTag::Affine(t) => bott_truncation(*t, r),
        t => Err(Error::Precondition(format!("Bott's formula needs an irreducible affine type, got {t}"))),
    }
}

/// `L = 1 + max ℓ(w_0(S \ {s}))` for a minimal nonspherical system.
pub fn minimal_nonspherical_l(sys: &CoxeterSystem) -> Result<usize> {
    if sys.is_finite() {
        return Err(Error::Precondition(format!("{} is finite", sys.name())));
    }
    let n = sys.rank() as u8;
    let mut best = 0;
    for s in 0..n {
        let gens: Vec<u8> = (0..n).filter(|&t| t != s).collect();
        if !sys.parabolic_is_finite(&gens) {
            return Err(Error::Precondition(format!(
                "{} is not minimal nonspherical: dropping {} leaves an infinite parabolic",
                sys.name(),
                sys.label(s)
            )));
        }
        best = best.max(sys.longest_element_of(&gens)?.len());
    }
    Ok(best + 1)
}

/// Whether the radius-`k` ball lies inside `[1, y]`; requires `ℓ(y) ≥ kL`.
pub fn ball_in_interval_check(sys: &CoxeterSystem, k: usize, y: &Element) -> Result<bool> {
    if !sys.owns(y) {
        return Err(Error::MixedSystems);
    }
    let l = minimal_nonspherical_l(sys)?;
    if y.len() < k * l {
        return Err(Error::Precondition(format!("ℓ(y) = {} is below kL = {}", y.len(), k * l)));
    }
    let mut order = BruhatOrder::new(sys);
    Ok(sys.ball(k).iter().flatten().all(|x| order.leq(x, y)))
}

/// Shapes matching one truncation, and the stabilized shape if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthProbeReport {
    /// `F(z) = (1 - z)^|S| W(z)` through `z^J`.
    pub f: Vec<i64>,
    /// For each `j`, every `a_1 ≤ ... ≤ a_N` with `2 ≤ a_i ≤ j`, `N ≤ |S|` and
    /// `Π (1 - z^{a_i})` agreeing with `F` through `z^j`.
    pub shapes: Vec<Vec<QuantumShape>>,
    pub stabilization: Option<Stabilization>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    /// First `j` of the final run of identical single-shape sets.
    pub from: usize,
    pub shape: QuantumShape,
}

/// Minimum length of the closing run of identical single-shape sets.
pub const STABLE_RUN: usize = 3;

fn multisets(max_a: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &frontier {
            let lo = m.last().copied().unwrap_or(2);
            for a in lo..=max_a {
                let mut v: Vec<u32> = m.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Finite evidence only: stabilization through `J` says nothing past `J`.
pub fn growth_quantum_probe(sys: &CoxeterSystem, j_max: usize) -> Result<GrowthProbeReport> {
    minimal_nonspherical_l(sys)?;
    let n = sys.rank();
    let w = poincare_truncation(sys, j_max);
    let mut factor = IntPoly::one();
    for _ in 0..n {
        factor = multiply(&factor, &one_minus_pow(1));
    }
    let f = w.mul(&SeriesTruncation::from_poly(&factor, j_max));
    let products: Vec<(Vec<u32>, IntPoly)> = multisets(j_max.max(2) as u32, n)
        .into_iter()
        .map(|m| {
            let p = m.iter().fold(IntPoly::one(), |acc, &a| multiply(&acc, &one_minus_pow(a)));
            (m, p)
        })
        .collect();
    let mut shapes = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let target = &f.0[..=j];
        let found: Vec<QuantumShape> = products
            .iter()
            .filter(|(m, p)| m.iter().all(|&a| a as usize <= j) && (0..=j).all(|k| p.coeff(k) == target[k]))
            .map(|(m, _)| QuantumShape(m.clone()))
            .collect();
        shapes.push(found);
    }
    let mut stabilization = None;
    if let Some(last) = shapes.last().filter(|s| s.len() == 1) {
        let run = shapes.iter().rev().take_while(|s| *s == last).count();
        if run >= STABLE_RUN {
            stabilization = Some(Stabilization { from: shapes.len() - run, shape: last[0].clone() });
        }
    }
    Ok(GrowthProbeReport { f: f.to_i64s(), shapes, stabilization })
}
