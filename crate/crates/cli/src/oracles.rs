//! Slow reference computations that share no code paths with the algorithms
//! they check beyond group multiplication.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use cubulator::bruhat::BruhatInterval;
use cubulator::lattice::CubicalLattice;
use cubulator::poly::IntPoly;
use cubulator::{CoxeterSystem, Element};

/// `R_{x,w}` by the descent recursion on the smallest right descent of `w`,
/// with no Bruhat test: `R_{x,w} = 0` falls out of the recursion.
pub struct RecursiveR<'a> {
    sys: &'a CoxeterSystem,
    memo: HashMap<(Element, Element), IntPoly>,
}

impl<'a> RecursiveR<'a> {
    pub fn new(sys: &'a CoxeterSystem) -> Self {
        RecursiveR { sys, memo: HashMap::new() }
    }

    pub fn r(&mut self, x: &Element, w: &Element) -> IntPoly {
        if x.len() > w.len() {
            return IntPoly::zero();
        }
        if w.is_identity() {
            return if x.is_identity() { IntPoly::one() } else { IntPoly::zero() };
        }
        let key = (x.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let s = self.sys.right_descents(w)[0];
        let ws = self.sys.mul_gen(w, s);
        let xs = self.sys.mul_gen(x, s);
        let p = if xs.len() < x.len() {
            self.r(&xs, &ws)
        } else {
            let q = IntPoly::monomial(1, 1);
            let qm1 = IntPoly::from_i64s(&[-1, 1]);
            &(&q * &self.r(&xs, &ws)) + &(&qm1 * &self.r(x, &ws))
        };
        self.memo.insert(key, p.clone());
        p
    }
}

/// Solve `q^{ℓ(y)-ℓ(x)} P_{x,y}(1/q) = Σ_{x ≤ w ≤ y} R_{x,w} P_{w,y}` for all
/// `x ≤ y` at once, as a linear system in the unknown coefficients of the
/// `P_{x,y}` (degree below `(ℓ(y)-ℓ(x))/2`). Returns `None` if the system
/// is inconsistent or underdetermined.
pub fn kl_by_linear_solve(sys: &CoxeterSystem, iv: &BruhatInterval) -> Option<Vec<IntPoly>> {
    let n = iv.len();
    let top = iv.top_id() as usize;
    let ly = iv.length(top as u32);
    // unknown index of coefficient k of P_{x,y}
    let mut var = vec![Vec::new(); n];
    let mut nvars = 0;
    for (x, slots) in var.iter_mut().enumerate() {
        if x == top {
            continue;
        }
        let d = ly - iv.length(x as u32);
        for _ in 0..d.div_ceil(2) {
            slots.push(nvars);
            nvars += 1;
        }
    }
    let mut rr = RecursiveR::new(sys);
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let zero = BigRational::zero();
    for x in 0..n {
        if x == top {
            continue;
        }
        let d = ly - iv.length(x as u32);
        // one row per power of q of Σ_w R_{x,w} P_{w,y} - q^d P_{x,y}(1/q) = 0,
        // with the known P_{y,y} = 1 term moved to the right-hand column
        let mut eqs: Vec<Vec<BigRational>> = vec![vec![zero.clone(); nvars + 1]; d + 1];
        for (w, slots) in var.iter().enumerate() {
            let r = rr.r(iv.vertex(x as u32), iv.vertex(w as u32));
            if r.is_zero() {
                continue;
            }
            for (i, ri) in r.coeffs().iter().enumerate() {
                if ri.is_zero() {
                    continue;
                }
                let ri = BigRational::from_integer(ri.clone());
                if w == top {
                    eqs[i][nvars] -= &ri;
                } else {
                    for (k, &v) in slots.iter().enumerate() {
                        eqs[i + k][v] += &ri;
                    }
                }
            }
        }
        for (k, &v) in var[x].iter().enumerate() {
            eqs[d - k][v] -= BigRational::one();
        }
        rows.extend(eqs);
    }
    let sol = solve(rows, nvars)?;
    let mut out = Vec::with_capacity(n);
    for (x, slots) in var.iter().enumerate() {
        if x == top {
            out.push(IntPoly::one());
            continue;
        }
        let mut c = Vec::with_capacity(slots.len());
        for &v in slots {
            if !sol[v].is_integer() {
                return None;
            }
            c.push(sol[v].to_integer());
        }
        out.push(IntPoly::new(c));
    }
    Some(out)
}

/// Gauss-Jordan elimination on an augmented matrix; unique solution or `None`.
fn solve(mut rows: Vec<Vec<BigRational>>, nvars: usize) -> Option<Vec<BigRational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..nvars {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(pivot_row, p);
        let inv = BigRational::one() / &rows[pivot_row][col];
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (a, b) in row.iter_mut().zip(&prow) {
                    *a -= &f * b;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < nvars || rows[pivot_row..].iter().any(|r| !r[nvars].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); nvars];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = rows[r][nvars].clone();
    }
    Some(sol)
}

/// `(q - 1)^k`.
pub fn q_minus_one_pow(k: usize) -> IntPoly {
    let base = IntPoly::from_i64s(&[-1, 1]);
    (0..k).fold(IntPoly::one(), |acc, _| &acc * &base)
}

/// Bruhat graph of `[1, y]` by testing every pair: `u → v` iff `ℓ(u) < ℓ(v)` and `u⁻¹v` is a reflection.
pub fn pairwise_bruhat_edges(sys: &CoxeterSystem, iv: &BruhatInterval) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (u, x) in iv.vertices().iter().enumerate() {
        let xi = sys.inverse(x);
        for (v, y) in iv.vertices().iter().enumerate() {
            if x.len() < y.len() && sys.is_reflection(&sys.mul(&xi, y)) {
                out.push((u as u32, v as u32));
            }
        }
    }
    out
}

/// Partitions of `n` as weakly increasing parts.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in min..=n {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Whether `[1, y]` has a spanning cubical lattice, by trying every lattice of
/// the right height and every rank-preserving bijection, with no symmetry
/// breaking and no use of the interval's edge lists.
pub fn naive_cubulable(sys: &CoxeterSystem, iv: &BruhatInterval) -> bool {
    let height = iv.top().len() as u32;
    if height == 0 {
        return true;
    }
    let mut by_len: Vec<Vec<u32>> = vec![Vec::new(); height as usize + 1];
    for v in 0..iv.len() as u32 {
        by_len[iv.length(v)].push(v);
    }
    let inverses: Vec<Element> = iv.vertices().iter().map(|v| sys.inverse(v)).collect();
    let edge = |u: u32, v: u32| sys.is_reflection(&sys.mul(&inverses[u as usize], iv.vertex(v)));
    for params in partitions(height) {
        let lat = CubicalLattice::new(params).expect("nonempty partition");
        if lat.num_vertices() != iv.len() {
            continue;
        }
        let verts = lat.vertices();
        let counts_match = (0..=height).all(|r| {
            verts.iter().filter(|c| c.iter().sum::<u32>() == r).count() == by_len[r as usize].len()
        });
        if !counts_match {
            continue;
        }
        let preds: Vec<Vec<usize>> = verts
            .iter()
            .map(|c| {
                (0..c.len())
                    .filter(|&i| c[i] > 0)
                    .map(|i| {
                        let mut d = c.clone();
                        d[i] -= 1;
                        verts.iter().position(|e| *e == d).unwrap()
                    })
                    .collect()
            })
            .collect();
        let mut assign = vec![u32::MAX; verts.len()];
        let mut used = vec![false; iv.len()];
        if extend(0, &verts, &preds, &by_len, &mut assign, &mut used, &edge) {
            return true;
        }
    }
    false
}

fn extend(
    pos: usize,
    verts: &[Vec<u32>],
    preds: &[Vec<usize>],
    by_len: &[Vec<u32>],
    assign: &mut [u32],
    used: &mut [bool],
    edge: &dyn Fn(u32, u32) -> bool,
) -> bool {
    if pos == verts.len() {
        return true;
    }
    let rank = verts[pos].iter().sum::<u32>() as usize;
    for &c in &by_len[rank] {
        if used[c as usize] || !preds[pos].iter().all(|&p| edge(assign[p], c)) {
            continue;
        }
        used[c as usize] = true;
        assign[pos] = c;
        if extend(pos + 1, verts, preds, by_len, assign, used, edge) {
            return true;
        }
        used[c as usize] = false;
    }
    false
}

/// Degree bound: `deg P_{x,y} ≤ (ℓ(y) - ℓ(x) - 1) / 2` for `x < y`.
pub fn degree_bound_ok(p: &IntPoly, d: usize) -> bool {
    match p.degree() {
        None => false,
        Some(k) => d == 0 || 2 * k < d,
    }
}

/// Whether every coefficient is nonnegative and the constant term is 1.
pub fn looks_like_kl(p: &IntPoly) -> bool {
    p.coeff(0) == BigInt::one() && p.coeffs().iter().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_solve_matches_known_value() {
        let a3 = CoxeterSystem::build("A3").unwrap();
        let y = a3.element(&[2, 1, 3, 2]).unwrap();
        let iv = BruhatInterval::new(&a3, &y).unwrap();
        let p = kl_by_linear_solve(&a3, &iv).unwrap();
        assert_eq!(p[0], IntPoly::from_i64s(&[1, 1]));
    }

    #[test]
    fn naive_small_cases() {
        let a3 = CoxeterSystem::build("A3").unwrap();
        let iv = BruhatInterval::new(&a3, &a3.element(&[2, 1, 3, 2]).unwrap()).unwrap();
        assert!(!naive_cubulable(&a3, &iv));
        let iv = BruhatInterval::new(&a3, &a3.element(&[1, 2, 1]).unwrap()).unwrap();
        assert!(naive_cubulable(&a3, &iv));
        assert_eq!(partitions(4).len(), 5);
    }
}
