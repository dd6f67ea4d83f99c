//! Cubical lattices `C(k_1, ..., k_N)`: boxes `Π [0, k_i]` with unit-step edges.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{multiply, quantum_poly, IntPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CubicalLattice {
    params: Vec<u32>,
}

impl fmt::Display for CubicalLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.params.iter().map(|k| k.to_string()).collect();
        write!(f, "C({})", p.join(","))
    }
}

impl CubicalLattice {
    pub fn new(params: Vec<u32>) -> Result<CubicalLattice> {
        if params.is_empty() {
            return Err(Error::InvalidArgument("cubical lattice needs at least one parameter".into()));
        }
        Ok(CubicalLattice { params })
    }

    pub fn params(&self) -> &[u32] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.len()
    }

    /// Rank of the top vertex, `Σ k_i`.
    pub fn height(&self) -> u32 {
        self.params.iter().sum()
    }

    pub fn num_vertices(&self) -> usize {
        self.params.iter().map(|&k| k as usize + 1).product()
    }

    pub fn num_edges(&self) -> usize {
        let n = self.num_vertices();
        self.params.iter().map(|&k| k as usize * n / (k as usize + 1)).sum()
    }

    /// Drop zero parameters and sort; all zeros collapse to `C(0)`.
    pub fn canonical_form(&self) -> CubicalLattice {
        let mut p: Vec<u32> = self.params.iter().copied().filter(|&k| k > 0).collect();
        p.sort_unstable();
        if p.is_empty() {
            p.push(0);
        }
        CubicalLattice { params: p }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.params)
            .fold(0, |acc, (&m, &k)| acc * (k as usize + 1) + m as usize)
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<u32> {
        let mut c = vec![0; self.dim()];
        for i in (0..self.dim()).rev() {
            let r = self.params[i] as usize + 1;
            c[i] = (index % r) as u32;
            index /= r;
        }
        c
    }

    /// Index step for a unit move along coordinate `i`.
    pub fn stride(&self, i: usize) -> usize {
        self.params[i + 1..].iter().map(|&k| k as usize + 1).product()
    }

    /// All vertices in (rank, lexicographic) order.
    pub fn vertices(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<Vec<u32>> = (0..self.num_vertices()).map(|i| self.coords_of(i)).collect();
        v.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
        v
    }

    /// Edges `u → u + e_i` as pairs of mixed-radix indices, in source order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for u in 0..self.num_vertices() {
            let c = self.coords_of(u);
            for (i, (&ci, &ki)) in c.iter().zip(&self.params).enumerate() {
                if ci < ki {
                    out.push((u, u + self.stride(i)));
                }
            }
        }
        out
    }

    /// `Π [k_i + 1]`.
    pub fn rank_generating_polynomial(&self) -> IntPoly {
        self.params.iter().fold(IntPoly::one(), |acc, &k| {
            multiply(&acc, &quantum_poly(k as i64 + 1).expect("k + 1 >= 1"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: &[u32]) -> CubicalLattice {
        CubicalLattice::new(p.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(c(&[2, 0, 1]).canonical_form(), c(&[1, 2]));
        assert_eq!(c(&[0, 0]).canonical_form(), c(&[0]));
        assert_eq!(c(&[1, 1, 1]).canonical_form(), c(&[1, 1, 1]));
        assert!(CubicalLattice::new(vec![]).is_err());
    }

    #[test]
    fn graph_examples() {
        assert_eq!(c(&[1, 1]).vertices().len(), 4);
        assert_eq!(c(&[1, 1]).edges().len(), 4);
        assert_eq!(c(&[2, 1, 2]).vertices().len(), 18);
        assert_eq!(c(&[0]).vertices().len(), 1);
        assert!(c(&[0]).edges().is_empty());
        assert_eq!(c(&[1, 2]).vertices()[1], vec![0, 1]);
    }

    #[test]
    fn generating_polynomials() {
        assert_eq!(c(&[1, 2]).rank_generating_polynomial(), IntPoly::from_i64s(&[1, 2, 2, 1]));
        assert!(c(&[0]).rank_generating_polynomial().is_one());
        assert_eq!(c(&[1, 1, 1]).rank_generating_polynomial(), IntPoly::from_i64s(&[1, 3, 3, 1]));
    }

    #[test]
    fn radix_round_trip() {
        let l = c(&[2, 3, 1]);
        for i in 0..l.num_vertices() {
            assert_eq!(l.index_of(&l.coords_of(i)), i);
        }
        assert_eq!(l.index_of(&[0, 1, 0]), l.stride(1));
    }
}
