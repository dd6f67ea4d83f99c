//! R-polynomials and Kazhdan-Lusztig polynomials over a lower interval.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::bruhat::BruhatInterval;
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::poly::{is_palindromic, IntPoly};

/// Which tops to compute KL polynomials for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KlScope {
    /// Only `P_{x,y}` for the interval's top `y`.
    Top,
    /// `P_{x,w}` for every `w` in the interval.
    Full,
}

/// R- and P-polynomials for all comparable pairs of an interval, keyed by vertex ids.
#[derive(Debug, Clone)]
pub struct KlTable {
    lengths: Vec<usize>,
    below: Vec<BitSet>,
    /// `r[w][x] = R_{x,w}` for `x ≤ w`.
    r: Vec<HashMap<u32, IntPoly>>,
    /// `p[w][x] = P_{x,w}` for every computed top `w`.
    p: HashMap<u32, HashMap<u32, IntPoly>>,
}

/// Right descents of vertex `w`, read from the interval's multiplication table.
pub fn interval_descents(iv: &BruhatInterval, w: u32, rank: usize) -> Vec<u8> {
    (0..rank as u8)
        .filter(|&s| iv.right_mul(w, s).is_some_and(|ws| iv.length(ws) < iv.length(w)))
        .collect()
}

impl KlTable {
    pub fn new(iv: &BruhatInterval, scope: KlScope) -> Result<KlTable> {
        KlTable::with_descent_choice(iv, scope, |w, _| *w.word().last().unwrap())
    }

    /// As [`KlTable::new`], letting `choose` pick the right descent used in
    /// the R recursion at each vertex (it gets the vertex and its descents).
    pub fn with_descent_choice(
        iv: &BruhatInterval,
        scope: KlScope,
        mut choose: impl FnMut(&Element, &[u8]) -> u8,
    ) -> Result<KlTable> {
        let n = iv.len();
        let rank = iv.vertices().iter().flat_map(|v| v.word()).copied().max().map_or(0, |m| m as usize + 1);
        let lengths: Vec<usize> = (0..n as u32).map(|v| iv.length(v)).collect();
        let below = iv.order_ideals();
        let mut r: Vec<HashMap<u32, IntPoly>> = Vec::with_capacity(n);
        let q = IntPoly::from_i64s(&[0, 1]);
        let qm1 = IntPoly::from_i64s(&[-1, 1]);
        for w in 0..n as u32 {
            let mut row = HashMap::new();
            row.insert(w, IntPoly::one());
            if w > 0 {
                let desc = interval_descents(iv, w, rank);
                let s = choose(iv.vertex(w), &desc);
                if !desc.contains(&s) {
                    return Err(Error::Inconsistent(format!("chosen generator {s} is not a descent")));
                }
                let ws = iv.right_mul(w, s).unwrap();
                for x in below[w as usize].iter().map(|x| x as u32) {
                    if x == w {
                        continue;
                    }
                    let xs = iv.right_mul(x, s);
                    let at = |a: Option<u32>, top: u32| -> IntPoly {
                        a.and_then(|a| r[top as usize].get(&a).cloned()).unwrap_or_else(IntPoly::zero)
                    };
                    let val = match xs {
                        Some(xs) if lengths[xs as usize] < lengths[x as usize] => at(Some(xs), ws),
                        _ => &(&q * &at(xs, ws)) + &(&qm1 * &at(Some(x), ws)),
                    };
                    row.insert(x, val);
                }
            }
            r.push(row);
        }
        let mut table = KlTable { lengths, below, r, p: HashMap::new() };
        let tops: Vec<u32> = match scope {
            KlScope::Top => vec![n as u32 - 1],
            KlScope::Full => (0..n as u32).collect(),
        };
        for t in tops {
            let col = table.solve_top(t)?;
            table.p.insert(t, col);
        }
        Ok(table)
    }

    /// `P_{x,t}` for all `x ≤ t`, recovered from the defining identity
    /// `q^d P_{x,t}(1/q) = Σ_{x ≤ w ≤ t} R_{x,w} P_{w,t}`.
    fn solve_top(&self, t: u32) -> Result<HashMap<u32, IntPoly>> {
        let mut col: HashMap<u32, IntPoly> = HashMap::new();
        let members: Vec<u32> = self.below[t as usize].iter().map(|x| x as u32).collect();
        for &x in members.iter().rev() {
            if x == t {
                col.insert(x, IntPoly::one());
                continue;
            }
            let d = self.lengths[t as usize] - self.lengths[x as usize];
            let mut sum = IntPoly::zero();
            for &w in members.iter().filter(|&&w| w > x) {
                if let Some(rxw) = self.r[w as usize].get(&x) {
                    sum = &sum + &(rxw * &col[&w]);
                }
            }
            // deg P < d/2, so the coefficients of degree > d/2 belong to q^d P(1/q)
            let coeffs: Vec<_> = (0..=(d - 1) / 2).map(|i| sum.coeff(d - i)).collect();
            let p = IntPoly::new(coeffs);
            if &p.reflect(d) - &p != sum {
                return Err(Error::Inconsistent(format!(
                    "KL identity fails for vertices ({x}, {t}): P = {p}, sum = {sum}"
                )));
            }
            if !p.has_nonnegative_coeffs() {
                return Err(Error::Inconsistent(format!("negative KL coefficient in P = {p}")));
            }
            col.insert(x, p);
        }
        Ok(col)
    }

    /// `R_{x,w}`; zero when `x ≰ w`.
    pub fn r(&self, x: u32, w: u32) -> IntPoly {
        self.r[w as usize].get(&x).cloned().unwrap_or_else(IntPoly::zero)
    }

    /// `P_{x,w}` if `w` is a computed top; zero when `x ≰ w`.
    pub fn p(&self, x: u32, w: u32) -> Option<IntPoly> {
        self.p.get(&w).map(|col| col.get(&x).cloned().unwrap_or_else(IntPoly::zero))
    }

    /// Vertex ids below `w`.
    pub fn below(&self, w: u32) -> &BitSet {
        &self.below[w as usize]
    }

    /// Tops for which P was computed, ascending.
    pub fn tops(&self) -> Vec<u32> {
        let mut t: Vec<u32> = self.p.keys().copied().collect();
        t.sort_unstable();
        t
    }

    pub fn top(&self) -> u32 {
        self.lengths.len() as u32 - 1
    }

    /// Whether `P_{x,y} = 1` for every `x` below the top.
    pub fn top_is_trivial(&self) -> bool {
        self.p[&self.top()].values().all(|p| p.is_one())
    }
}

/// `R_{x,y}`, via the interval below `y`.
pub fn r_polynomial(sys: &CoxeterSystem, x: &Element, y: &Element) -> Result<IntPoly> {
    let iv = BruhatInterval::new(sys, y)?;
    let Some(xi) = iv.id_of(x) else { return Ok(IntPoly::zero()) };
    let t = KlTable::new(&iv, KlScope::Top)?;
    Ok(t.r(xi, iv.top_id()))
}

/// `P_{x,y}`; zero when `x ≰ y`.
pub fn kl_polynomial(sys: &CoxeterSystem, x: &Element, y: &Element) -> Result<IntPoly> {
    let iv = BruhatInterval::new(sys, y)?;
    let Some(xi) = iv.id_of(x) else { return Ok(IntPoly::zero()) };
    let t = KlTable::new(&iv, KlScope::Top)?;
    Ok(t.p(xi, iv.top_id()).unwrap())
}

/// Whether every `P_{x,y}` with `x ≤ y` is 1, decided by palindromicity of `p_y`.
pub fn all_trivial(iv: &BruhatInterval) -> bool {
    is_palindromic(&iv.poincare_polynomial()).expect("Poincaré polynomial is nonzero")
}

/// The four equivalent triviality conditions, evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpReport {
    pub all_trivial: bool,
    pub edge_count_ok: bool,
    pub average_length_ok: bool,
    pub palindromic: bool,
    /// Average length of the interval's elements, as `[numerator, denominator]`.
    #[serde(with = "ratio_pair")]
    pub a_y: Ratio<u64>,
}

mod ratio_pair {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        [*r.numer(), *r.denom()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let [n, m] = <[u64; 2]>::deserialize(d)?;
        Ok(Ratio::new(n, m))
    }
}

impl CpReport {
    pub fn agree(&self) -> bool {
        self.all_trivial == self.edge_count_ok
            && self.edge_count_ok == self.average_length_ok
            && self.average_length_ok == self.palindromic
    }
}

/// Carrell-Peterson report for the interval's top; disagreement is an error.
pub fn carrell_peterson_report(iv: &BruhatInterval, table: &KlTable) -> Result<CpReport> {
    let top = iv.top_id();
    let ly = iv.length(top);
    let all_trivial = table.top_is_trivial();
    let edge_count_ok = (0..iv.len() as u32).all(|x| iv.upper_neighbors(x).len() == ly - iv.length(x));
    let total: u64 = (0..iv.len() as u32).map(|x| iv.length(x) as u64).sum();
    let a_y = Ratio::new(total, iv.len() as u64);
    let average_length_ok = a_y == Ratio::new(ly as u64, 2);
    let palindromic = is_palindromic(&iv.poincare_polynomial())?;
    let report = CpReport { all_trivial, edge_count_ok, average_length_ok, palindromic, a_y };
    if !report.agree() {
        return Err(Error::Inconsistent(format!("Carrell-Peterson conditions disagree: {report:?}")));
    }
    Ok(report)
}

/// `h_{x,y}(v) = v^d P_{x,y}(v^-2)` as a polynomial in `v`.
pub fn soergel_h(p: &IntPoly, d: usize) -> Result<IntPoly> {
    let deg = p.degree().unwrap_or(0);
    if p.is_zero() || 2 * deg > d {
        return Err(Error::Precondition(format!("{p} is not a KL polynomial for length difference {d}")));
    }
    let mut coeffs = vec![num_bigint::BigInt::from(0); d + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        coeffs[d - 2 * i] = c.clone();
    }
    Ok(IntPoly::new(coeffs))
}

/// Whether `h_{x,y} = v^{ℓ(y)-ℓ(x)}` for all `x` below the top.
pub fn b_equals_n(iv: &BruhatInterval, table: &KlTable) -> Result<bool> {
    let top = iv.top_id();
    for x in table.below(top).iter() {
        let x = x as u32;
        let d = iv.length(top) - iv.length(x);
        let h = soergel_h(&table.p(x, top).unwrap(), d)?;
        if h != IntPoly::monomial(1, d) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(d: &str) -> CoxeterSystem {
        CoxeterSystem::build(d).unwrap()
    }

    #[test]
    fn r_examples() {
        let a2 = sys("A2");
        let s = a2.gen(1).unwrap();
        assert_eq!(r_polynomial(&a2, &s, &s).unwrap(), IntPoly::one());
        assert_eq!(r_polynomial(&a2, &a2.identity(), &s).unwrap(), IntPoly::from_i64s(&[-1, 1]));
        assert!(r_polynomial(&a2, &s, &a2.gen(2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn p_examples() {
        let a3 = sys("A3");
        let y = a3.element(&[2, 1, 3, 2]).unwrap();
        assert_eq!(kl_polynomial(&a3, &a3.identity(), &y).unwrap(), IntPoly::from_i64s(&[1, 1]));
        let a2 = sys("A2");
        let w0 = a2.longest_element().unwrap();
        assert!(kl_polynomial(&a2, &a2.identity(), &w0).unwrap().is_one());
    }

    #[test]
    fn cp_examples() {
        let at2 = sys("Atilde2");
        let y1 = at2.element(&[1, 2, 1, 0, 2]).unwrap();
        let iv = BruhatInterval::new(&at2, &y1).unwrap();
        let t = KlTable::new(&iv, KlScope::Top).unwrap();
        let rep = carrell_peterson_report(&iv, &t).unwrap();
        assert!(rep.all_trivial && rep.palindromic);
        assert_eq!(rep.a_y, Ratio::new(5, 2));

        let a3 = sys("A3");
        let y = a3.element(&[2, 1, 3, 2]).unwrap();
        let iv = BruhatInterval::new(&a3, &y).unwrap();
        let t = KlTable::new(&iv, KlScope::Top).unwrap();
        let rep = carrell_peterson_report(&iv, &t).unwrap();
        assert!(!rep.all_trivial && !rep.edge_count_ok && !rep.average_length_ok && !rep.palindromic);
        assert!(!all_trivial(&iv));
        assert!(!b_equals_n(&iv, &t).unwrap());

        let iv = BruhatInterval::new(&a3, &a3.identity()).unwrap();
        let t = KlTable::new(&iv, KlScope::Top).unwrap();
        assert!(carrell_peterson_report(&iv, &t).unwrap().all_trivial);
    }

    #[test]
    fn soergel_examples() {
        assert_eq!(soergel_h(&IntPoly::one(), 4).unwrap(), IntPoly::monomial(1, 4));
        assert_eq!(soergel_h(&IntPoly::from_i64s(&[1, 1]), 3).unwrap(), IntPoly::from_i64s(&[0, 1, 0, 1]));
        assert!(soergel_h(&IntPoly::one(), 0).unwrap().is_one());
        assert!(soergel_h(&IntPoly::from_i64s(&[1, 1]), 1).is_err());
    }
}
