//! Type tags, Coxeter matrices of the named families, and finite-type recognition.
//!
//! Generator labels (position in parentheses is the internal index):
//!
//! | type      | labels | Coxeter graph                                        |
//! |-----------|--------|------------------------------------------------------|
//! | A_n       | 1..n   | 1 - 2 - ... - n                                      |
//! | B_n = C_n | 1..n   | 1 =4= 2 - 3 - ... - n (special node first)           |
//! | D_n       | 1..n   | 1 - ... - (n-2), with (n-1) and n both on (n-2)       |
//! | E_6,7,8   | 1..n   | 1 - 3 - 4 - 5 - ... - n, with 2 on 4                  |
//! | F_4       | 1..4   | 1 - 2 =4= 3 - 4                                       |
//! | G_2       | 1,2    | 1 =6= 2                                               |
//! | H_3, H_4  | 1..n   | 1 =5= 2 - 3 (- 4)                                     |
//! | I_2(m)    | 1,2    | 1 =m= 2                                               |
//! | Ã_1       | 0,1    | 0 =∞= 1                                               |
//! | Ã_n       | 0..n   | cycle 0 - 1 - ... - n - 0                             |
//! | B̃_n      | 0..n   | B_n in Bourbaki order (n-1 =4= n), 0 on 2             |
//! | C̃_n      | 0..n   | 0 =4= 1 - ... - (n-1) =4= n                           |
//! | D̃_n      | 0..n   | D_n, 0 on 2                                           |
//! | Ẽ_6,7,8  | 0..n   | E_n, 0 on 2 / 1 / 8                                   |
//! | F̃_4      | 0..4   | 0 - 1 - 2 =4= 3 - 4                                   |
//! | G̃_2      | 0..2   | 0 - 2 =6= 1                                           |
//!
//! Explicit matrices are labeled 1..n.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entry of a Coxeter matrix; `None` is ∞.
pub type MEntry = Option<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteType {
    A(u32),
    B(u32),
    D(u32),
    E(u32),
    F4,
    H(u32),
    I2(u32),
}

impl FiniteType {
    pub fn rank(&self) -> u32 {
        match *self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) | FiniteType::E(n) => n,
            FiniteType::H(n) => n,
            FiniteType::F4 => 4,
            FiniteType::I2(_) => 2,
        }
    }

    /// Exponents of the group; their sum is the number of reflections.
    pub fn exponents(&self) -> Vec<u32> {
        match *self {
            FiniteType::A(n) => (1..=n).collect(),
            FiniteType::B(n) => (1..=n).map(|i| 2 * i - 1).collect(),
            FiniteType::D(n) => {
                let mut e: Vec<u32> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            FiniteType::E(6) => vec![1, 4, 5, 7, 8, 11],
            FiniteType::E(7) => vec![1, 5, 7, 9, 11, 13, 17],
            FiniteType::E(8) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            FiniteType::E(_) => unreachable!("E_n only for n = 6, 7, 8"),
            FiniteType::F4 => vec![1, 5, 7, 11],
            FiniteType::H(3) => vec![1, 5, 9],
            FiniteType::H(4) => vec![1, 11, 19, 29],
            FiniteType::H(_) => unreachable!("H_n only for n = 3, 4"),
            FiniteType::I2(m) => vec![1, m - 1],
        }
    }

    /// Group order, `Π (e_i + 1)`.
    pub fn order(&self) -> u64 {
        self.exponents().iter().map(|&e| e as u64 + 1).product()
    }

    pub fn num_reflections(&self) -> u64 {
        self.exponents().iter().map(|&e| e as u64).sum()
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => write!(f, "F4"),
            FiniteType::H(n) => write!(f, "H{n}"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Irreducible affine type, e.g. `C̃_2` is `AffineType { family: 'C', n: 2 }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineType {
    pub family: char,
    pub n: u32,
}

impl AffineType {
    /// The finite Weyl group whose affine extension this is.
    pub fn finite_part(&self) -> FiniteType {
        match self.family {
            'A' => FiniteType::A(self.n),
            'B' | 'C' => FiniteType::B(self.n),
            'D' => FiniteType::D(self.n),
            'E' => FiniteType::E(self.n),
            'F' => FiniteType::F4,
            'G' => FiniteType::I2(6),
            _ => unreachable!("validated at parse time"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    Finite(FiniteType),
    Affine(AffineType),
    Explicit,
}

impl TypeTag {
    /// Offset between internal positions and printed labels.
    pub fn label_offset(&self) -> i64 {
        match self {
            TypeTag::Affine(_) => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Finite(t) => write!(f, "{t}"),
            TypeTag::Affine(t) => write!(f, "{}tilde{}", t.family, t.n),
            TypeTag::Explicit => write!(f, "explicit"),
        }
    }
}

fn empty(n: usize) -> Vec<Vec<MEntry>> {
    (0..n)
        .map(|i| (0..n).map(|j| Some(if i == j { 1 } else { 2 })).collect())
        .collect()
}

fn set(m: &mut [Vec<MEntry>], i: usize, j: usize, v: MEntry) {
    m[i][j] = v;
    m[j][i] = v;
}

fn path(m: &mut [Vec<MEntry>], nodes: &[usize]) {
    for w in nodes.windows(2) {
        set(m, w[0], w[1], Some(3));
    }
}

/// Coxeter matrix of a finite type, labels 1..n at positions 0..n-1.
pub fn finite_matrix(t: FiniteType) -> Vec<Vec<MEntry>> {
    let n = t.rank() as usize;
    let mut m = empty(n);
    match t {
        FiniteType::A(_) => path(&mut m, &(0..n).collect::<Vec<_>>()),
        FiniteType::B(_) => {
            path(&mut m, &(1..n).collect::<Vec<_>>());
            set(&mut m, 0, 1, Some(4));
        }
        FiniteType::D(_) => {
            path(&mut m, &(0..n - 1).collect::<Vec<_>>());
            set(&mut m, n - 3, n - 1, Some(3));
        }
        FiniteType::E(_) => {
            let mut chain = vec![0];
            chain.extend(2..n);
            path(&mut m, &chain);
            set(&mut m, 1, 3, Some(3));
        }
        FiniteType::F4 => {
            path(&mut m, &[0, 1, 2, 3]);
            set(&mut m, 1, 2, Some(4));
        }
        FiniteType::H(_) => {
            path(&mut m, &(0..n).collect::<Vec<_>>());
            set(&mut m, 0, 1, Some(5));
        }
        FiniteType::I2(k) => set(&mut m, 0, 1, Some(k)),
    }
    m
}

/// Coxeter matrix of an affine type, labels 0..n at positions 0..n.
pub fn affine_matrix(t: AffineType) -> Vec<Vec<MEntry>> {
    let n = t.n as usize;
    let mut m = empty(n + 1);
    match t.finite_part() {
        _ if t.family == 'C' => {
            path(&mut m, &(0..=n).collect::<Vec<_>>());
            set(&mut m, 0, 1, Some(4));
            set(&mut m, n - 1, n, Some(4));
        }
        FiniteType::A(1) => set(&mut m, 0, 1, None),
        FiniteType::A(_) => {
            path(&mut m, &(0..=n).collect::<Vec<_>>());
            set(&mut m, n, 0, Some(3));
        }
        FiniteType::B(_) => {
            path(&mut m, &(1..=n).collect::<Vec<_>>());
            set(&mut m, n - 1, n, Some(4));
            set(&mut m, 0, 2, Some(3));
        }
        FiniteType::D(_) => {
            path(&mut m, &(1..n).collect::<Vec<_>>());
            set(&mut m, n - 2, n, Some(3));
            set(&mut m, 0, 2, Some(3));
        }
        FiniteType::E(k) => {
            let mut chain = vec![1];
            chain.extend(3..=n);
            path(&mut m, &chain);
            set(&mut m, 2, 4, Some(3));
            let hook = match k {
                6 => 2,
                7 => 1,
                _ => 8,
            };
            set(&mut m, 0, hook, Some(3));
        }
        FiniteType::F4 => {
            path(&mut m, &[0, 1, 2, 3, 4]);
            set(&mut m, 2, 3, Some(4));
        }
        FiniteType::I2(6) => {
            set(&mut m, 1, 2, Some(6));
            set(&mut m, 0, 2, Some(3));
        }
        other => unreachable!("no affine extension of {other}"),
    }
    m
}

/// Parse a type descriptor such as `A3`, `I2(7)`, `Atilde2` or `Gtilde2`.
pub fn parse_descriptor(s: &str) -> Result<(TypeTag, Vec<Vec<MEntry>>)> {
    let bad = || Error::UnknownSystem(s.to_string());
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = inner.trim().parse().map_err(|_| bad())?;
        if m < 2 {
            return Err(bad());
        }
        let t = FiniteType::I2(m);
        return Ok((TypeTag::Finite(t), finite_matrix(t)));
    }
    let (fam, rest) = s.split_at(s.chars().next().ok_or_else(bad)?.len_utf8());
    if let Some(num) = rest.strip_prefix("tilde") {
        let n: u32 = num.parse().map_err(|_| bad())?;
        let ok = match fam {
            "A" => n >= 1,
            "B" => n >= 3,
            "C" => n >= 2,
            "D" => n >= 4,
            "E" => (6..=8).contains(&n),
            "F" => n == 4,
            "G" => n == 2,
            _ => false,
        };
        if !ok {
            return Err(bad());
        }
        let t = AffineType { family: fam.chars().next().unwrap(), n };
        return Ok((TypeTag::Affine(t), affine_matrix(t)));
    }
    let n: u32 = rest.parse().map_err(|_| bad())?;
    let t = match (fam, n) {
        ("A", n) if n >= 1 => FiniteType::A(n),
        ("B" | "C", n) if n >= 2 => FiniteType::B(n),
        ("D", n) if n >= 4 => FiniteType::D(n),
        ("E", 6..=8) => FiniteType::E(n),
        ("F", 4) => FiniteType::F4,
        ("G", 2) => FiniteType::I2(6),
        ("H", 3 | 4) => FiniteType::H(n),
        _ => return Err(bad()),
    };
    Ok((TypeTag::Finite(t), finite_matrix(t)))
}

/// Check symmetry, unit diagonal and off-diagonal entries ≥ 2.
pub fn validate_matrix(m: &[Vec<MEntry>]) -> Result<()> {
    let n = m.len();
    if n == 0 || n > 255 {
        return Err(Error::InvalidMatrix(format!("rank {n} out of range")));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        for (j, e) in row.iter().enumerate() {
            if *e != m[j][i] {
                return Err(Error::InvalidMatrix(format!("asymmetric at ({i},{j})")));
            }
            match (i == j, e) {
                (true, Some(1)) => {}
                (true, _) => return Err(Error::InvalidMatrix(format!("diagonal entry at {i} is not 1"))),
                (false, Some(v)) if *v < 2 => {
                    return Err(Error::InvalidMatrix(format!("entry ({i},{j}) below 2")))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Connected components of the Coxeter graph restricted to `nodes`.
pub fn components(m: &[Vec<MEntry>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; m.len()];
    let mut out = Vec::new();
    for &start in nodes {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            for &v in nodes {
                if !seen[v] && m[u][v] != Some(2) {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Finite type of a connected set of generators, or `None` if it generates an
/// infinite group.
pub fn classify_component(m: &[Vec<MEntry>], comp: &[usize]) -> Option<FiniteType> {
    let n = comp.len();
    if n == 1 {
        return Some(FiniteType::A(1));
    }
    let mut edges = Vec::new();
    for (a, &i) in comp.iter().enumerate() {
        for &j in &comp[a + 1..] {
            match m[i][j] {
                None => return None,
                Some(2) => {}
                Some(v) => edges.push((i, j, v)),
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    if n == 2 {
        let v = edges[0].2;
        return Some(match v {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            _ => FiniteType::I2(v),
        });
    }
    let degree = |x: usize| edges.iter().filter(|e| e.0 == x || e.1 == x).count();
    let heavy: Vec<_> = edges.iter().filter(|e| e.2 > 3).collect();
    let branch: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) >= 3).collect();
    if !branch.is_empty() {
        if branch.len() > 1 || degree(branch[0]) != 3 || !heavy.is_empty() {
            return None;
        }
        let b = branch[0];
        let mut arms: Vec<usize> = edges
            .iter()
            .filter_map(|e| {
                let start = if e.0 == b { e.1 } else if e.1 == b { e.0 } else { return None };
                let mut len = 1;
                let (mut prev, mut cur) = (b, start);
                loop {
                    let next = edges.iter().find_map(|f| {
                        if f.0 == cur && f.1 != prev {
                            Some(f.1)
                        } else if f.1 == cur && f.0 != prev {
                            Some(f.0)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(x) => {
                            prev = cur;
                            cur = x;
                            len += 1;
                        }
                        None => break,
                    }
                }
                Some(len)
            })
            .collect();
        arms.sort_unstable();
        let n = n as u32;
        return match arms.as_slice() {
            [1, 1, _] => Some(FiniteType::D(n)),
            [1, 2, 2] => Some(FiniteType::E(6)),
            [1, 2, 3] => Some(FiniteType::E(7)),
            [1, 2, 4] => Some(FiniteType::E(8)),
            _ => None,
        };
    }
    // a path
    if heavy.is_empty() {
        return Some(FiniteType::A(n as u32));
    }
    if heavy.len() > 1 {
        return None;
    }
    let (i, j, v) = *heavy[0];
    let at_end = degree(i) == 1 || degree(j) == 1;
    match (v, n, at_end) {
        (4, _, true) => Some(FiniteType::B(n as u32)),
        (4, 4, false) => Some(FiniteType::F4),
        (5, 3 | 4, true) => Some(FiniteType::H(n as u32)),
        _ => None,
    }
}

/// Finite types of the components of the parabolic subgroup on `nodes`, or
/// `None` if that subgroup is infinite.
pub fn classify(m: &[Vec<MEntry>], nodes: &[usize]) -> Option<Vec<FiniteType>> {
    components(m, nodes)
        .iter()
        .map(|c| classify_component(m, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_types_classify_back() {
        for t in [
            FiniteType::A(4),
            FiniteType::B(3),
            FiniteType::D(5),
            FiniteType::E(6),
            FiniteType::E(7),
            FiniteType::E(8),
            FiniteType::F4,
            FiniteType::H(3),
            FiniteType::H(4),
            FiniteType::I2(7),
        ] {
            let m = finite_matrix(t);
            let all: Vec<usize> = (0..m.len()).collect();
            assert_eq!(classify(&m, &all), Some(vec![t]), "{t}");
        }
    }

    #[test]
    fn affine_types_are_infinite_with_finite_facets() {
        for d in ["Atilde1", "Atilde2", "Atilde3", "Btilde3", "Ctilde2", "Ctilde3", "Dtilde4", "Etilde6", "Etilde7", "Etilde8", "Ftilde4", "Gtilde2"] {
            let (_, m) = parse_descriptor(d).unwrap();
            validate_matrix(&m).unwrap();
            let all: Vec<usize> = (0..m.len()).collect();
            assert_eq!(classify(&m, &all), None, "{d}");
            for drop in 0..m.len() {
                let rest: Vec<usize> = all.iter().copied().filter(|&x| x != drop).collect();
                assert!(classify(&m, &rest).is_some(), "{d} minus {drop}");
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(FiniteType::A(3).order(), 24);
        assert_eq!(FiniteType::B(3).order(), 48);
        assert_eq!(FiniteType::D(4).order(), 192);
        assert_eq!(FiniteType::E(6).order(), 51840);
        assert_eq!(FiniteType::F4.order(), 1152);
        assert_eq!(FiniteType::H(4).order(), 14400);
        assert_eq!(FiniteType::I2(7).order(), 14);
    }

    #[test]
    fn parse_errors() {
        for d in ["", "A0", "Q3", "E9", "H5", "I2(1)", "Atilde0", "Gtilde3"] {
            assert!(parse_descriptor(d).is_err(), "{d}");
        }
    }
}
