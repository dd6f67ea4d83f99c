//! Bruhat order, lower intervals `[1, y]` and their Bruhat graphs.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Bruhat comparisons with a memo shared across queries.
pub struct BruhatOrder<'a> {
    sys: &'a CoxeterSystem,
    memo: HashMap<(Element, Element), bool>,
}

impl<'a> BruhatOrder<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        BruhatOrder { sys, memo: HashMap::new() }
    }

    /// `x ≤ y`, by lifting along the last letter of the canonical word of `y`.
    pub fn leq(&mut self, x: &Element, y: &Element) -> bool {
        if x.len() > y.len() {
            return false;
        }
        if x.is_identity() {
            return true;
        }
        if x.len() == y.len() {
            return x == y;
        }
        let key = (x.clone(), y.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // a prefix of a canonical word is canonical
        let s = *y.word().last().unwrap();
        let ys = self.sys.shortlex_nf(&y.word()[..y.len() - 1]);
        let xs = self.sys.mul_gen(x, s);
        let v = if xs.len() < x.len() { self.leq(&xs, &ys) } else { self.leq(x, &ys) };
        self.memo.insert(key, v);
        v
    }
}

/// `x ≤ y` in Bruhat order.
pub fn bruhat_leq(sys: &CoxeterSystem, x: &Element, y: &Element) -> Result<bool> {
    if !sys.owns(x) || !sys.owns(y) {
        return Err(Error::MixedSystems);
    }
    Ok(BruhatOrder::new(sys).leq(x, y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatEdge {
    pub from: u32,
    pub to: u32,
    /// The reflection `from⁻¹ · to`.
    pub label: Element,
}

/// The lower interval `[1, y]` with its Hasse diagram and Bruhat graph.
///
/// Vertices are sorted by length, then canonical word; vertex 0 is the
/// identity and the last vertex is `y`.
#[derive(Debug, Clone)]
pub struct BruhatInterval {
    top: Element,
    vertices: Vec<Element>,
    index: HashMap<Element, u32>,
    edges: Vec<BruhatEdge>,
    hasse: Vec<(u32, u32)>,
    down: Vec<Vec<u32>>,
    up: Vec<Vec<u32>>,
    right_mul: Vec<Vec<Option<u32>>>,
}

/// Canonical elements obtained by deleting each letter of `w`'s word, with the
/// reflection `w_i ... w_k ... w_i` that the deletion multiplies by on the right.
fn deletions(sys: &CoxeterSystem, w: &Element, labels: bool) -> Vec<(Element, Option<Element>)> {
    let word = w.word();
    (0..word.len())
        .map(|i| {
            let mut del = word[..i].to_vec();
            del.extend_from_slice(&word[i + 1..]);
            let label = labels.then(|| {
                let tail = &word[i..];
                let mut t: Vec<u8> = tail.iter().rev().copied().collect();
                t.extend_from_slice(&tail[1..]);
                sys.shortlex_nf(&t)
            });
            (sys.shortlex_nf(&del), label)
        })
        .collect()
}

impl BruhatInterval {
    pub fn new(sys: &CoxeterSystem, y: &Element) -> Result<BruhatInterval> {
        if !sys.owns(y) {
            return Err(Error::MixedSystems);
        }
        let mut seen: HashSet<Element> = HashSet::new();
        seen.insert(y.clone());
        let mut level = vec![y.clone()];
        while !level.is_empty() {
            let found: Vec<Vec<Element>> = level
                .par_iter()
                .map(|z| {
                    deletions(sys, z, false)
                        .into_iter()
                        .map(|(u, _)| u)
                        .filter(|u| u.len() + 1 == z.len())
                        .collect()
                })
                .collect();
            let mut next = Vec::new();
            for u in found.into_iter().flatten() {
                if seen.insert(u.clone()) {
                    next.push(u);
                }
            }
            level = next;
        }
        let mut vertices: Vec<Element> = seen.into_iter().collect();
        vertices.sort();
        let index: HashMap<Element, u32> =
            vertices.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();

        // Every u with u⁻¹v a reflection and ℓ(u) < ℓ(v) is a single-letter deletion
        // of v's reduced word, and distinct deletions give distinct elements.
        let lower: Vec<Vec<(u32, Element)>> = vertices
            .par_iter()
            .map(|v| {
                let mut d: Vec<(u32, Element)> = deletions(sys, v, true)
                    .into_iter()
                    .map(|(u, t)| (index[&u], t.unwrap()))
                    .collect();
                d.sort_by_key(|e| e.0);
                d
            })
            .collect();
        let n = vertices.len();
        let mut edges = Vec::new();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (v, ds) in lower.into_iter().enumerate() {
            for (u, t) in ds {
                if down[v].last() == Some(&u) {
                    return Err(Error::Inconsistent("repeated letter deletion".into()));
                }
                down[v].push(u);
                up[u as usize].push(v as u32);
                edges.push(BruhatEdge { from: u, to: v as u32, label: t });
            }
        }
        edges.sort_by_key(|e| (e.from, e.to));
        let hasse = edges
            .iter()
            .filter(|e| vertices[e.to as usize].len() == vertices[e.from as usize].len() + 1)
            .map(|e| (e.from, e.to))
            .collect();
        let rank = sys.rank() as u8;
        let right_mul = vertices
            .par_iter()
            .map(|v| (0..rank).map(|s| index.get(&sys.mul_gen(v, s)).copied()).collect())
            .collect();
        Ok(BruhatInterval { top: y.clone(), vertices, index, edges, hasse, down, up, right_mul })
    }

    pub fn top(&self) -> &Element {
        &self.top
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn vertex(&self, id: u32) -> &Element {
        &self.vertices[id as usize]
    }

    pub fn id_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn length(&self, id: u32) -> usize {
        self.vertices[id as usize].len()
    }

    pub fn top_id(&self) -> u32 {
        self.vertices.len() as u32 - 1
    }

    /// Full Bruhat graph, sorted by (from, to).
    pub fn bruhat_edges(&self) -> &[BruhatEdge] {
        &self.edges
    }

    pub fn hasse_edges(&self) -> &[(u32, u32)] {
        &self.hasse
    }

    /// Vertices with a Bruhat edge into `id`.
    pub fn lower_neighbors(&self, id: u32) -> &[u32] {
        &self.down[id as usize]
    }

    /// Vertices with a Bruhat edge out of `id`.
    pub fn upper_neighbors(&self, id: u32) -> &[u32] {
        &self.up[id as usize]
    }

    /// Id of `x s` if it lies in the interval.
    pub fn right_mul(&self, id: u32, s: u8) -> Option<u32> {
        self.right_mul[id as usize][s as usize]
    }

    pub fn has_edge(&self, from: u32, to: u32) -> bool {
        self.down[to as usize].binary_search(&from).is_ok()
    }

    pub fn poincare_polynomial(&self) -> IntPoly {
        let mut counts = vec![0i64; self.top.len() + 1];
        for v in &self.vertices {
            counts[v.len()] += 1;
        }
        IntPoly::from_i64s(&counts)
    }

    pub fn out_degree(&self, x: &Element) -> Result<usize> {
        let id = self.id_of(x).ok_or(Error::NotInInterval)?;
        Ok(self.up[id as usize].len())
    }

    /// For each vertex, the set of vertices below it.
    pub fn order_ideals(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut below: Vec<BitSet> = Vec::with_capacity(n);
        for v in 0..n {
            let mut b = BitSet::new(n);
            b.insert(v);
            for &u in &self.down[v] {
                b.union_with(&below[u as usize]);
            }
            below.push(b);
        }
        below
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(d: &str) -> CoxeterSystem {
        CoxeterSystem::build(d).unwrap()
    }

    #[test]
    fn leq_examples() {
        let a2 = sys("A2");
        let w0 = a2.longest_element().unwrap();
        assert!(bruhat_leq(&a2, &a2.identity(), &w0).unwrap());
        assert!(bruhat_leq(&a2, &a2.gen(2).unwrap(), &w0).unwrap());
        let a = a2.element(&[1, 2]).unwrap();
        let b = a2.element(&[2, 1]).unwrap();
        assert!(!bruhat_leq(&a2, &a, &b).unwrap());
        assert!(!bruhat_leq(&a2, &b, &a).unwrap());
    }

    #[test]
    fn interval_examples() {
        let a2 = sys("A2");
        let iv = BruhatInterval::new(&a2, &a2.identity()).unwrap();
        assert_eq!(iv.len(), 1);
        assert!(iv.bruhat_edges().is_empty());
        assert!(iv.poincare_polynomial().is_one());
        let w0 = a2.longest_element().unwrap();
        let iv = BruhatInterval::new(&a2, &w0).unwrap();
        assert_eq!(iv.len(), 6);
        assert_eq!(iv.bruhat_edges().len(), 9);
        assert_eq!(iv.hasse_edges().len(), 8);
        assert_eq!(iv.poincare_polynomial(), IntPoly::from_i64s(&[1, 2, 2, 1]));
        assert_eq!(iv.out_degree(&a2.identity()).unwrap(), 3);
        assert_eq!(iv.out_degree(&a2.gen(1).unwrap()).unwrap(), 2);
        assert_eq!(iv.out_degree(&w0).unwrap(), 0);
        assert_eq!(iv.vertex(0), &a2.identity());
        assert_eq!(iv.vertex(iv.top_id()), &w0);
        let at2 = sys("Atilde2");
        let y1 = at2.element(&[1, 2, 1, 0, 2]).unwrap();
        let iv = BruhatInterval::new(&at2, &y1).unwrap();
        assert_eq!(iv.len(), 18);
        let p = iv.poincare_polynomial();
        assert_eq!(p.degree(), Some(5));
        assert!(crate::poly::is_palindromic(&p).unwrap());
    }

    #[test]
    fn boolean_edges() {
        let a4 = sys("A4");
        for k in 1..=4i64 {
            let y = a4.element(&(1..=k).collect::<Vec<_>>()).unwrap();
            let iv = BruhatInterval::new(&a4, &y).unwrap();
            assert_eq!(iv.bruhat_edges().len() as i64, k * (1 << (k - 1)));
        }
    }

    #[test]
    fn a3_word_interval_size() {
        let a3 = sys("A3");
        let y = a3.element(&[2, 1, 3, 2]).unwrap();
        assert_eq!(BruhatInterval::new(&a3, &y).unwrap().len(), 14);
    }

    #[test]
    fn labels_are_reflections() {
        let b3 = sys("B3");
        let w0 = b3.longest_element().unwrap();
        let iv = BruhatInterval::new(&b3, &w0).unwrap();
        for e in iv.bruhat_edges() {
            assert!(b3.is_reflection(&e.label));
            assert_eq!(&b3.mul(iv.vertex(e.from), &e.label), iv.vertex(e.to));
        }
    }
}
