//! Coxeter systems, their geometric representation, and canonical elements.
//!
//! Elements are stored as their lexicographically first reduced word over
//! internal generator positions `0..rank`. Printed labels differ by the type's
//! label offset (affine types start at 0, everything else at 1).

pub(crate) mod ring;
pub mod types;

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use ring::{CycloRing, IntRing, Ring};
pub use types::{AffineType, FiniteType, MEntry, TypeTag};

/// Exact scalar of the representation, as coefficients of powers of
/// `c = 2cos(π/L)`; a single entry for the integer tier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingScalar(pub Vec<i64>);

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVector {
    pub coords: Vec<RingScalar>,
    signs: Vec<Ordering>,
}

impl RootVector {
    pub fn is_positive(&self) -> bool {
        self.signs.iter().all(|s| *s != Ordering::Less) && self.signs.contains(&Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.signs.iter().all(|s| *s != Ordering::Greater) && self.signs.contains(&Ordering::Less)
    }

    /// Sign of each coordinate.
    pub fn signs(&self) -> &[Ordering] {
        &self.signs
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tier {
    Integer,
    /// ℤ[2cos(π/5)]
    Quadratic,
    /// ℤ[2cos(π/L)]
    General { l: u32 },
}

/// Group element, identified by its canonical word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    sys: u64,
    word: Vec<u8>,
}

impl Element {
    /// The lexicographically first reduced word, over internal positions.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl Ord for Element {
    /// Shortlex on canonical words.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.word, self.sys).cmp(&(other.word.len(), &other.word, other.sys))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element{:?}", self.word)
    }
}

type Mat<E> = Vec<E>;

/// Geometric representation over a scalar ring: `s_i(α_j) = α_j - A_ij α_i`.
#[derive(Debug)]
struct Repr<R: Ring> {
    ring: R,
    n: usize,
    cartan: Vec<R::E>,
    nbrs: Vec<Vec<usize>>,
}

impl<R: Ring> Repr<R> {
    fn new(ring: R, cartan: Vec<R::E>, n: usize) -> Self {
        let nbrs = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && !ring.is_zero(&cartan[i * n + j])).collect())
            .collect();
        Repr { ring, n, cartan, nbrs }
    }

    fn identity(&self) -> Mat<R::E> {
        let n = self.n;
        (0..n * n)
            .map(|k| if k / n == k % n { self.ring.lift(1) } else { self.ring.zero() })
            .collect()
    }

    /// `m <- ρ(s_i) m`; only row i changes.
    fn left_mul(&self, m: &mut [R::E], i: usize) {
        let n = self.n;
        let r = &self.ring;
        for c in 0..n {
            let mut v = r.neg(&m[i * n + c]);
            for &k in &self.nbrs[i] {
                v = r.sub(&v, &r.mul(&self.cartan[i * n + k], &m[k * n + c]));
            }
            m[i * n + c] = v;
        }
    }

    /// `m <- m ρ(s_i)`; column i flips and its neighbours pick up multiples of it.
    fn right_mul(&self, m: &mut [R::E], i: usize) {
        let n = self.n;
        let r = &self.ring;
        for &j in &self.nbrs[i] {
            let a = &self.cartan[i * n + j];
            for row in 0..n {
                let v = r.sub(&m[row * n + j], &r.mul(a, &m[row * n + i]));
                m[row * n + j] = v;
            }
        }
        for row in 0..n {
            m[row * n + i] = r.neg(&m[row * n + i]);
        }
    }

    fn col_sign(&self, m: &[R::E], j: usize) -> Ordering {
        for row in 0..self.n {
            let s = self.ring.signum(&m[row * self.n + j]);
            if s != Ordering::Equal {
                return s;
            }
        }
        Ordering::Equal
    }

    /// ρ(a_1 ... a_k).
    fn word_matrix(&self, word: &[u8]) -> Mat<R::E> {
        let mut m = self.identity();
        for &a in word.iter().rev() {
            self.left_mul(&mut m, a as usize);
        }
        m
    }

    /// ρ((a_1 ... a_k)^-1) = ρ(a_k) ... ρ(a_1).
    fn inverse_matrix(&self, word: &[u8]) -> Mat<R::E> {
        let mut m = self.identity();
        for &a in word {
            self.left_mul(&mut m, a as usize);
        }
        m
    }

    fn negative_columns(&self, m: &[R::E]) -> Vec<u8> {
        (0..self.n)
            .filter(|&j| self.col_sign(m, j) == Ordering::Less)
            .map(|j| j as u8)
            .collect()
    }

    /// Repeatedly strip the smallest left descent.
    fn nf(&self, letters: &[u8]) -> Vec<u8> {
        let mut m = self.inverse_matrix(letters);
        let mut out = Vec::with_capacity(letters.len());
        'outer: loop {
            for s in 0..self.n {
                if self.col_sign(&m, s) == Ordering::Less {
                    out.push(s as u8);
                    self.right_mul(&mut m, s);
                    continue 'outer;
                }
            }
            return out;
        }
    }

    fn is_reflection(&self, word: &[u8]) -> bool {
        if word.len().is_multiple_of(2) {
            return false;
        }
        let n = self.n;
        let r = &self.ring;
        let m = self.word_matrix(word);
        // ρ(w)^2 = I
        for i in 0..n {
            for j in 0..n {
                let mut acc = r.zero();
                for k in 0..n {
                    acc = r.add(&acc, &r.mul(&m[i * n + k], &m[k * n + j]));
                }
                let want = if i == j { r.lift(1) } else { r.zero() };
                if acc != want {
                    return false;
                }
            }
        }
        // ρ(w) - I has rank 1: nonzero with all 2x2 minors zero
        let d: Vec<R::E> = (0..n * n)
            .map(|k| if k / n == k % n { r.sub(&m[k], &r.lift(1)) } else { m[k].clone() })
            .collect();
        if d.iter().all(|x| r.is_zero(x)) {
            return false;
        }
        for i1 in 0..n {
            for i2 in i1 + 1..n {
                for j1 in 0..n {
                    for j2 in j1 + 1..n {
                        let a = r.mul(&d[i1 * n + j1], &d[i2 * n + j2]);
                        let b = r.mul(&d[i1 * n + j2], &d[i2 * n + j1]);
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn export(&self, m: &[R::E]) -> Vec<Vec<RingScalar>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| RingScalar(self.ring.coeffs(&m[i * self.n + j]))).collect())
            .collect()
    }

    fn root_image(&self, word: &[u8], s: usize) -> RootVector {
        let m = self.word_matrix(word);
        let coords = (0..self.n).map(|i| RingScalar(self.ring.coeffs(&m[i * self.n + s]))).collect();
        let signs = (0..self.n).map(|i| self.ring.signum(&m[i * self.n + s])).collect();
        RootVector { coords, signs }
    }
}

#[derive(Debug)]
enum Arith {
    Int(Repr<IntRing>),
    Cyclo(Repr<CycloRing>),
}

macro_rules! with_repr {
    ($self:expr, $r:ident => $body:expr) => {
        match &$self.arith {
            Arith::Int($r) => $body,
            Arith::Cyclo($r) => $body,
        }
    };
}

/// A Coxeter system with a faithful exact geometric representation.
#[derive(Debug)]
pub struct CoxeterSystem {
    name: String,
    tag: TypeTag,
    matrix: Vec<Vec<MEntry>>,
    offset: i64,
    fingerprint: u64,
    tier: Tier,
    arith: Arith,
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// True if the Coxeter graph, restricted to edges with label ≥ 3, has no cycles.
fn graph_is_forest(m: &[Vec<MEntry>]) -> bool {
    let n = m.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (i, row) in m.iter().enumerate() {
        for (j, &mij) in row.iter().enumerate().skip(i + 1) {
            if mij != Some(2) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
        }
    }
    true
}

fn integer_cartan(m: &[Vec<MEntry>]) -> Option<Vec<i64>> {
    let n = m.len();
    let all_symmetric = m.iter().flatten().all(|e| matches!(e, None | Some(1..=3)));
    if !all_symmetric && !graph_is_forest(m) {
        return None;
    }
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            // s_i(α_j) = α_j - A_ij α_i with A_ij A_ji = 4cos²(π/m)
            a[i * n + j] = match m[i][j] {
                Some(1) => 2,
                Some(2) => 0,
                Some(3) => -1,
                None => -2,
                Some(4) => if i < j { -1 } else { -2 },
                Some(6) => if i < j { -1 } else { -3 },
                Some(_) => return None,
            };
        }
    }
    Some(a)
}

impl CoxeterSystem {
    /// Build from a type descriptor (`A3`, `I2(7)`, `Atilde2`, ...) or a JSON
    /// matrix, either a bare array of rows or `{"coxeter_matrix": rows}`, with
    /// `"inf"`, `null` or `0` for ∞.
    pub fn build(descriptor: &str) -> Result<CoxeterSystem> {
        let d = descriptor.trim();
        if d.starts_with('[') || d.starts_with('{') {
            let v: Value = serde_json::from_str(d)
                .map_err(|e| Error::InvalidMatrix(format!("bad JSON: {e}")))?;
            let rows = match &v {
                Value::Object(o) => o
                    .get("coxeter_matrix")
                    .ok_or_else(|| Error::InvalidMatrix("missing coxeter_matrix".into()))?,
                other => other,
            };
            return CoxeterSystem::from_matrix(parse_json_matrix(rows)?);
        }
        let (tag, m) = types::parse_descriptor(d)?;
        CoxeterSystem::from_parts(tag, m, d.to_string())
    }

    pub fn from_matrix(m: Vec<Vec<MEntry>>) -> Result<CoxeterSystem> {
        CoxeterSystem::from_parts(TypeTag::Explicit, m, "explicit".to_string())
    }

    fn from_parts(tag: TypeTag, matrix: Vec<Vec<MEntry>>, name: String) -> Result<CoxeterSystem> {
        types::validate_matrix(&matrix)?;
        let n = matrix.len();
        let mut h = DefaultHasher::new();
        matrix.hash(&mut h);
        tag.hash(&mut h);
        let fingerprint = h.finish();
        let (tier, arith) = match integer_cartan(&matrix) {
            Some(a) => (Tier::Integer, Arith::Int(Repr::new(IntRing, a, n))),
            None => {
                let l = matrix
                    .iter()
                    .flatten()
                    .filter_map(|e| *e)
                    .filter(|&v| v > 3)
                    .fold(1, lcm);
                let l = if l < 4 { 4 } else { l };
                let ring = CycloRing::new(l);
                let mut a = vec![ring.zero(); n * n];
                for i in 0..n {
                    for j in 0..n {
                        a[i * n + j] = match matrix[i][j] {
                            Some(1) => ring.lift(2),
                            Some(2) => ring.zero(),
                            Some(3) => ring.lift(-1),
                            None => ring.lift(-2),
                            Some(v) => ring.neg(&ring.two_cos_multiple(l / v)),
                        };
                    }
                }
                let tier = if ring.l() == 5 { Tier::Quadratic } else { Tier::General { l: ring.l() } };
                (tier, Arith::Cyclo(Repr::new(ring, a, n)))
            }
        };
        Ok(CoxeterSystem { name, offset: tag.label_offset(), tag, matrix, fingerprint, tier, arith })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// A string that [`CoxeterSystem::build`] turns back into this system.
    pub fn descriptor(&self) -> String {
        match self.tag {
            TypeTag::Explicit => {
                let rows: Vec<Vec<Value>> = self
                    .matrix
                    .iter()
                    .map(|r| r.iter().map(|e| e.map_or(Value::from("inf"), Value::from)).collect())
                    .collect();
                serde_json::to_string(&rows).expect("plain data")
            }
            _ => self.name.clone(),
        }
    }

    pub fn tag(&self) -> &TypeTag {
        &self.tag
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    pub fn coxeter_matrix(&self) -> &[Vec<MEntry>] {
        &self.matrix
    }

    /// `m(s_i, s_j)` on internal positions; `None` is ∞.
    pub fn m(&self, i: usize, j: usize) -> MEntry {
        self.matrix[i][j]
    }

    pub fn label(&self, pos: u8) -> i64 {
        pos as i64 + self.offset
    }

    pub fn position(&self, label: i64) -> Result<u8> {
        let p = label - self.offset;
        if p < 0 || p >= self.rank() as i64 {
            return Err(Error::BadGenerator(label));
        }
        Ok(p as u8)
    }

    pub fn labels(&self, w: &Element) -> Vec<i64> {
        w.word.iter().map(|&p| self.label(p)).collect()
    }

    /// Human readable form such as `s1s2s1`, or `1` for the identity.
    pub fn format(&self, w: &Element) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        let labels = self.labels(w);
        if labels.iter().all(|&l| l < 10) {
            let mut s = String::from("s");
            for l in labels {
                s.push_str(&l.to_string());
            }
            s
        } else {
            labels.iter().map(|l| format!("s{l}")).collect::<Vec<_>>().join(".")
        }
    }

    fn wrap(&self, word: Vec<u8>) -> Element {
        Element { sys: self.fingerprint, word }
    }

    fn check(&self, w: &Element) -> Result<()> {
        if w.sys != self.fingerprint {
            return Err(Error::MixedSystems);
        }
        Ok(())
    }

    pub fn identity(&self) -> Element {
        self.wrap(Vec::new())
    }

    /// Simple reflection with the given printed label.
    pub fn gen(&self, label: i64) -> Result<Element> {
        Ok(self.wrap(vec![self.position(label)?]))
    }

    /// Canonical element for a word of printed labels.
    pub fn element(&self, labels: &[i64]) -> Result<Element> {
        let word = labels.iter().map(|&l| self.position(l)).collect::<Result<Vec<u8>>>()?;
        Ok(self.shortlex_nf(&word))
    }

    /// Canonical element for a word over internal positions.
    pub fn shortlex_nf(&self, word: &[u8]) -> Element {
        assert!(word.iter().all(|&a| (a as usize) < self.rank()), "generator out of range");
        self.wrap(with_repr!(self, r => r.nf(word)))
    }

    /// Whether `w` was produced by this system.
    pub fn owns(&self, w: &Element) -> bool {
        w.sys == self.fingerprint
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// Product without the ownership check.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if b.word.is_empty() {
            return a.clone();
        }
        if a.word.is_empty() {
            return b.clone();
        }
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        self.shortlex_nf(&w)
    }

    /// `w s` for a generator position `s`.
    pub fn mul_gen(&self, w: &Element, s: u8) -> Element {
        let mut word = w.word.clone();
        word.push(s);
        self.shortlex_nf(&word)
    }

    /// `s w` for a generator position `s`.
    pub fn gen_mul(&self, s: u8, w: &Element) -> Element {
        let mut word = Vec::with_capacity(w.len() + 1);
        word.push(s);
        word.extend_from_slice(&w.word);
        self.shortlex_nf(&word)
    }

    pub fn inverse(&self, w: &Element) -> Element {
        let rev: Vec<u8> = w.word.iter().rev().copied().collect();
        self.shortlex_nf(&rev)
    }

    /// `{s : ℓ(ws) < ℓ(w)}` as positions, read off the signs of `w(α_s)`.
    pub fn right_descents(&self, w: &Element) -> Vec<u8> {
        with_repr!(self, r => r.negative_columns(&r.word_matrix(&w.word)))
    }

    /// `{s : ℓ(sw) < ℓ(w)}` as positions.
    pub fn left_descents(&self, w: &Element) -> Vec<u8> {
        with_repr!(self, r => r.negative_columns(&r.inverse_matrix(&w.word)))
    }

    pub fn is_reflection(&self, w: &Element) -> bool {
        with_repr!(self, r => r.is_reflection(&w.word))
    }

    /// Generator positions occurring in the canonical word, ascending.
    pub fn support(&self, w: &Element) -> Vec<u8> {
        let mut s: Vec<u8> = w.word.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The image `w(α_s)` of a simple root.
    pub fn root_image(&self, w: &Element, s: u8) -> RootVector {
        with_repr!(self, r => r.root_image(&w.word, s as usize))
    }

    /// Matrix of an arbitrary word in the representation, rows indexed by
    /// simple-root coordinates.
    pub fn word_matrix(&self, word: &[u8]) -> Vec<Vec<RingScalar>> {
        with_repr!(self, r => r.export(&r.word_matrix(word)))
    }

    /// `w = x_1 ... x_n` with `x_j` in the parabolic subgroup on the first `j`
    /// generators and having no left descent among the first `j - 1`.
    ///
    /// The canonical word of `w` is the concatenation of those of the `x_j`, and
    /// each nontrivial factor starts with its largest letter, so the factors
    /// begin exactly where the running maximum of the word increases.
    pub fn parabolic_factorize(&self, w: &Element) -> Vec<Element> {
        let mut parts: Vec<Vec<u8>> = vec![Vec::new(); self.rank()];
        let mut current: Option<usize> = None;
        for &a in &w.word {
            if current.is_none_or(|c| (a as usize) > c) {
                current = Some(a as usize);
            }
            parts[current.unwrap()].push(a);
        }
        parts.into_iter().map(|p| self.wrap(p)).collect()
    }

    /// Finite types of the irreducible components, or `None` if infinite.
    pub fn finite_types(&self) -> Option<Vec<FiniteType>> {
        let all: Vec<usize> = (0..self.rank()).collect();
        types::classify(&self.matrix, &all)
    }

    pub fn is_finite(&self) -> bool {
        self.finite_types().is_some()
    }

    /// Order of the group, if finite.
    pub fn order(&self) -> Option<u64> {
        self.finite_types().map(|ts| ts.iter().map(|t| t.order()).product())
    }

    /// Whether the parabolic subgroup on `gens` is finite.
    pub fn parabolic_is_finite(&self, gens: &[u8]) -> bool {
        let nodes: Vec<usize> = gens.iter().map(|&g| g as usize).collect();
        types::classify(&self.matrix, &nodes).is_some()
    }

    pub fn longest_element(&self) -> Result<Element> {
        let all: Vec<u8> = (0..self.rank() as u8).collect();
        self.longest_element_of(&all)
    }

    /// Longest element of the parabolic subgroup on `gens`, by greedy ascent.
    pub fn longest_element_of(&self, gens: &[u8]) -> Result<Element> {
        if !self.parabolic_is_finite(gens) {
            return Err(Error::InfiniteSystem);
        }
        let mut w = self.identity();
        loop {
            let d = self.right_descents(&w);
            match gens.iter().copied().filter(|g| !d.contains(g)).min() {
                Some(s) => w = self.mul_gen(&w, s),
                None => return Ok(w),
            }
        }
    }

    /// Whether `perm` (position `i` maps to `perm[i]`) preserves the Coxeter matrix.
    pub fn is_diagram_automorphism(&self, perm: &[u8]) -> bool {
        let n = self.rank();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p as usize >= n || seen[p as usize] {
                return false;
            }
            seen[p as usize] = true;
        }
        (0..n).all(|i| (0..n).all(|j| self.matrix[perm[i] as usize][perm[j] as usize] == self.matrix[i][j]))
    }

    pub fn diagram_automorphism(&self, perm: &[u8], w: &Element) -> Result<Element> {
        if !self.is_diagram_automorphism(perm) {
            return Err(Error::NotAutomorphism);
        }
        self.check(w)?;
        let word: Vec<u8> = w.word.iter().map(|&a| perm[a as usize]).collect();
        Ok(self.shortlex_nf(&word))
    }

    /// All diagram automorphisms, identity first, in lexicographic order.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<u8>> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm: Vec<u8> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(sys: &CoxeterSystem, perm: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
            let i = perm.len();
            let n = sys.rank();
            if i == n {
                out.push(perm.clone());
                return;
            }
            for p in 0..n {
                if used[p] {
                    continue;
                }
                let ok = (0..i).all(|j| sys.matrix[p][perm[j] as usize] == sys.matrix[i][j]);
                if ok {
                    used[p] = true;
                    perm.push(p as u8);
                    rec(sys, perm, used, out);
                    perm.pop();
                    used[p] = false;
                }
            }
        }
        rec(self, &mut perm, &mut used, &mut out);
        out
    }

    /// Elements sorted by length then word, level by level up to `max_len`.
    pub fn ball(&self, max_len: usize) -> Vec<Vec<Element>> {
        let mut levels = vec![vec![self.identity()]];
        for _ in 0..max_len {
            let prev = levels.last().unwrap();
            let mut next: HashSet<Element> = HashSet::new();
            for w in prev {
                let d = self.right_descents(w);
                for s in 0..self.rank() as u8 {
                    if !d.contains(&s) {
                        next.insert(self.mul_gen(w, s));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let mut next: Vec<Element> = next.into_iter().collect();
            next.sort();
            levels.push(next);
        }
        levels
    }

    /// Every element of a finite group, in shortlex order.
    pub fn enumerate(&self) -> Result<Vec<Element>> {
        let w0 = self.longest_element()?;
        Ok(self.ball(w0.len()).into_iter().flatten().collect())
    }
}

fn parse_json_matrix(v: &Value) -> Result<Vec<Vec<MEntry>>> {
    let bad = |msg: &str| Error::InvalidMatrix(msg.to_string());
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("row must be an array"))?
                .iter()
                .map(|e| match e {
                    Value::Null => Ok(None),
                    Value::String(s) if s == "inf" || s == "∞" => Ok(None),
                    Value::Number(n) => match n.as_u64() {
                        Some(0) => Ok(None),
                        Some(k) if k <= u32::MAX as u64 => Ok(Some(k as u32)),
                        _ => Err(bad("entry must be a non-negative integer")),
                    },
                    _ => Err(bad("entry must be an integer, \"inf\" or null")),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(d: &str) -> CoxeterSystem {
        CoxeterSystem::build(d).unwrap()
    }

    #[test]
    fn build_examples() {
        let a3 = sys("A3");
        assert_eq!(a3.rank(), 3);
        assert_eq!(a3.m(0, 1), Some(3));
        assert_eq!(a3.m(0, 2), Some(2));
        let at2 = sys("Atilde2");
        assert_eq!(at2.rank(), 3);
        assert!((0..3).all(|i| (0..3).all(|j| i == j || at2.m(i, j) == Some(3))));
        assert_eq!(at2.label(0), 0);
        let i27 = sys("I2(7)");
        assert_eq!(i27.tier(), Tier::General { l: 7 });
        assert_eq!(sys("H3").tier(), Tier::Quadratic);
        assert_eq!(sys("F4").tier(), Tier::Integer);
        assert_eq!(sys("Atilde1").m(0, 1), None);
    }

    #[test]
    fn explicit_matrix() {
        let s = sys(r#"{"coxeter_matrix": [[1, 3, "inf"], [3, 1, 3], ["inf", 3, 1]]}"#);
        assert_eq!(*s.tag(), TypeTag::Explicit);
        assert_eq!(s.m(0, 2), None);
        assert!(!s.is_finite());
        assert!(CoxeterSystem::build("[[1,3],[2,1]]").is_err());
        assert!(CoxeterSystem::build("[[1,1],[1,1]]").is_err());
        // a 4 on a cycle forces the cyclotomic tier
        let c = sys("[[1,4,3],[4,1,3],[3,3,1]]");
        assert_eq!(c.tier(), Tier::General { l: 4 });
        assert_eq!(sys(&s.descriptor()).coxeter_matrix(), s.coxeter_matrix());
        assert_eq!(sys("B3").descriptor(), "B3");
    }

    #[test]
    fn multiply_examples() {
        let a2 = sys("A2");
        let s1 = a2.gen(1).unwrap();
        assert!(a2.multiply(&s1, &s1).unwrap().is_identity());
        let s1s2 = a2.element(&[1, 2]).unwrap();
        let w = a2.multiply(&s1s2, &s1).unwrap();
        assert_eq!(a2.labels(&w), vec![1, 2, 1]);
        assert_eq!(a2.labels(&a2.element(&[2, 1, 2]).unwrap()), vec![1, 2, 1]);
        assert_eq!(a2.labels(&a2.element(&[1, 1, 2]).unwrap()), vec![2]);
        let b2 = sys("B2");
        assert!(matches!(a2.multiply(&s1, &b2.gen(1).unwrap()), Err(Error::MixedSystems)));
    }

    #[test]
    fn descents() {
        let a2 = sys("A2");
        assert!(a2.right_descents(&a2.identity()).is_empty());
        let w0 = a2.longest_element().unwrap();
        assert_eq!(a2.right_descents(&w0), vec![0, 1]);
        assert_eq!(a2.right_descents(&a2.element(&[1, 2]).unwrap()), vec![1]);
        assert_eq!(a2.left_descents(&a2.element(&[1, 2]).unwrap()), vec![0]);
    }

    #[test]
    fn reflections() {
        let a2 = sys("A2");
        assert!(a2.is_reflection(&a2.gen(1).unwrap()));
        assert!(!a2.is_reflection(&a2.element(&[1, 2]).unwrap()));
        assert!(a2.is_reflection(&a2.element(&[1, 2, 1]).unwrap()));
        assert!(!a2.is_reflection(&a2.identity()));
    }

    #[test]
    fn support_examples() {
        let at2 = sys("Atilde2");
        let y1 = at2.element(&[1, 2, 1, 0, 2]).unwrap();
        assert_eq!(at2.support(&y1), vec![0, 1, 2]);
        let a3 = sys("A3");
        assert_eq!(a3.support(&a3.element(&[1, 3]).unwrap()), vec![0, 2]);
        assert!(a3.support(&a3.identity()).is_empty());
    }

    #[test]
    fn factorization_examples() {
        let a3 = sys("A3");
        let f = a3.parabolic_factorize(&a3.longest_element().unwrap());
        let labels: Vec<Vec<i64>> = f.iter().map(|x| a3.labels(x)).collect();
        assert_eq!(labels, vec![vec![1], vec![2, 1], vec![3, 2, 1]]);
        let a2 = sys("A2");
        let f = a2.parabolic_factorize(&a2.element(&[2, 1]).unwrap());
        assert!(f[0].is_identity());
        assert_eq!(a2.labels(&f[1]), vec![2, 1]);
        assert!(a3.parabolic_factorize(&a3.identity()).iter().all(|x| x.is_identity()));
    }

    #[test]
    fn longest_lengths() {
        assert_eq!(sys("A2").longest_element().unwrap().len(), 3);
        assert_eq!(sys("B2").longest_element().unwrap().len(), 4);
        assert_eq!(sys("F4").longest_element().unwrap().len(), 24);
        assert_eq!(sys("H3").longest_element().unwrap().len(), 15);
        assert_eq!(sys("I2(7)").longest_element().unwrap().len(), 7);
        assert!(matches!(sys("Atilde2").longest_element(), Err(Error::InfiniteSystem)));
    }

    #[test]
    fn automorphisms() {
        let at2 = sys("Atilde2");
        let y1 = at2.element(&[1, 2, 1, 0, 2]).unwrap();
        let img = at2.diagram_automorphism(&[0, 2, 1], &y1).unwrap();
        assert_eq!(img, at2.element(&[2, 1, 2, 0, 1]).unwrap());
        assert_eq!(at2.diagram_automorphism(&[0, 1, 2], &y1).unwrap(), y1);
        assert_eq!(at2.diagram_automorphisms().len(), 6);
        let a3 = sys("A3");
        let w = a3.element(&[1, 2]).unwrap();
        assert_eq!(a3.labels(&a3.diagram_automorphism(&[2, 1, 0], &w).unwrap()), vec![3, 2]);
        assert!(matches!(a3.diagram_automorphism(&[1, 0, 2], &w), Err(Error::NotAutomorphism)));
    }

    #[test]
    fn group_orders_by_enumeration() {
        for (d, n) in [("A3", 24), ("B3", 48), ("H3", 120), ("I2(7)", 14), ("G2", 12), ("D4", 192), ("F4", 1152)] {
            let s = sys(d);
            assert_eq!(s.enumerate().unwrap().len() as u64, n, "{d}");
            assert_eq!(s.order(), Some(n));
        }
    }
}
