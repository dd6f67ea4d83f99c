//! Closed-form cubulations: Boolean intervals, dihedral intervals, path
//! normal form forests in types A and B, and the `y_m` family in affine A2.
//!
//! Every construction checks its output with [`verify_certificate`] before
//! returning it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bruhat::BruhatInterval;
use crate::coxeter::types::{AffineType, TypeTag};
use crate::coxeter::{CoxeterSystem, Element};
use crate::error::{Error, Result};
use crate::kl::all_trivial;
use crate::lattice::CubicalLattice;
use crate::search::{verify_certificate, Cubulation, Verification};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Boolean,
    Dihedral,
    NffA,
    NffB,
    Atilde2,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Boolean => "boolean",
            Provenance::Dihedral => "dihedral",
            Provenance::NffA => "nff-A",
            Provenance::NffB => "nff-B",
            Provenance::Atilde2 => "atilde2",
        };
        f.write_str(s)
    }
}

/// A verified cubulation of `[1, top]`.
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub provenance: Provenance,
    pub top: Element,
    pub interval: BruhatInterval,
    pub certificate: Cubulation,
}

impl ConstructionResult {
    pub fn lattice(&self) -> &CubicalLattice {
        &self.certificate.lattice
    }

    /// Image of the lattice vertex at `coords`.
    pub fn image(&self, coords: &[u32]) -> &Element {
        let i = self.certificate.lattice.index_of(coords);
        self.interval.vertex(self.certificate.assignment[i])
    }
}

/// Turn a map from lattice vertices to group elements into a checked certificate.
fn certify(
    sys: &CoxeterSystem,
    top: &Element,
    lattice: CubicalLattice,
    image: impl Fn(&[u32]) -> Element,
    provenance: Provenance,
) -> Result<ConstructionResult> {
    let iv = BruhatInterval::new(sys, top)?;
    let mut assignment = Vec::with_capacity(lattice.num_vertices());
    for i in 0..lattice.num_vertices() {
        let x = image(&lattice.coords_of(i));
        let id = iv.id_of(&x).ok_or_else(|| {
            Error::Inconsistent(format!("{provenance} construction sends {:?} outside [1, y]", lattice.coords_of(i)))
        })?;
        assignment.push(id);
    }
    let certificate = Cubulation { lattice, assignment };
    match verify_certificate(sys, &iv, &certificate) {
        Verification::Valid => Ok(ConstructionResult { provenance, top: top.clone(), interval: iv, certificate }),
        Verification::Invalid(why) => Err(Error::Inconsistent(format!("{provenance} construction failed to verify: {why}"))),
    }
}

/// One tree of a normal form forest; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfTree {
    pub elements: Vec<Element>,
    pub parent: Vec<Option<usize>>,
    /// Generator position on the edge into each node.
    pub label: Vec<Option<u8>>,
}

impl NfTree {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_path(&self) -> bool {
        let mut children = vec![0usize; self.len()];
        for p in self.parent.iter().flatten() {
            children[*p] += 1;
        }
        children.iter().all(|&c| c <= 1)
    }

    /// Edge labels from the root down, if the tree is a path.
    pub fn path_labels(&self) -> Option<Vec<u8>> {
        if !self.is_path() {
            return None;
        }
        let deepest = (0..self.len()).max_by_key(|&i| self.elements[i].len())?;
        Some(self.elements[deepest].word().to_vec())
    }
}

/// Trees `τ_1, ..., τ_n`; the vertices of `τ_j` are the minimal left coset
/// representatives of `W_[j-1]` in `W_[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormForest {
    pub trees: Vec<NfTree>,
}

impl NormalFormForest {
    pub fn is_path_forest(&self) -> bool {
        self.trees.iter().all(NfTree::is_path)
    }

    /// Label sequences of the paths, as printed labels.
    pub fn path_labels(&self, sys: &CoxeterSystem) -> Option<Vec<Vec<i64>>> {
        self.trees
            .iter()
            .map(|t| t.path_labels().map(|w| w.iter().map(|&a| sys.label(a)).collect()))
            .collect()
    }

    /// Concatenate one root-path word per tree, in every possible way.
    pub fn products(&self) -> Vec<Vec<u8>> {
        let mut out: Vec<Vec<u8>> = vec![Vec::new()];
        for t in &self.trees {
            out = out
                .iter()
                .flat_map(|pre| {
                    t.elements.iter().map(move |x| {
                        let mut w = pre.clone();
                        w.extend_from_slice(x.word());
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// Elements of the standard parabolic subgroup on positions `0..j`.
fn parabolic_elements(sys: &CoxeterSystem, j: usize) -> Vec<Element> {
    let mut seen: HashSet<Element> = HashSet::new();
    let mut frontier = vec![sys.identity()];
    seen.insert(sys.identity());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..j as u8 {
                let ws = sys.mul_gen(w, s);
                if ws.len() > w.len() && seen.insert(ws.clone()) {
                    next.push(ws);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Element> = seen.into_iter().collect();
    all.sort();
    all
}

pub fn normal_form_forest(sys: &CoxeterSystem) -> Result<NormalFormForest> {
    if !sys.is_finite() {
        return Err(Error::InfiniteSystem);
    }
    let mut trees = Vec::with_capacity(sys.rank());
    for j in 1..=sys.rank() {
        let last = (j - 1) as u8;
        let reps: Vec<Element> = parabolic_elements(sys, j)
            .into_iter()
            .filter(|x| sys.left_descents(x).iter().all(|&s| s == last))
            .collect();
        // sorted by length, so parents are inserted before children
        let mut index: HashMap<Element, usize> = HashMap::new();
        let mut tree = NfTree { elements: Vec::new(), parent: Vec::new(), label: Vec::new() };
        for x in reps {
            let (parent, label) = match x.word().split_last() {
                None => (None, None),
                Some((&a, pre)) => {
                    let p = sys.shortlex_nf(pre);
                    let pid = *index.get(&p).ok_or_else(|| {
                        Error::Inconsistent(format!("prefix of {} is not a coset representative", sys.format(&x)))
                    })?;
                    (Some(pid), Some(a))
                }
            };
            index.insert(x.clone(), tree.elements.len());
            tree.elements.push(x);
            tree.parent.push(parent);
            tree.label.push(label);
        }
        trees.push(tree);
    }
    Ok(NormalFormForest { trees })
}

/// Hang a copy of path `τ_n` off every vertex of the embedding for `W_[n-1]`,
/// which amounts to `φ(k_1, ..., k_n) = x_1(k_1) ⋯ x_n(k_n)` with `x_j(k)` the
/// depth-`k` vertex of `τ_j`. Covers types A and B.
pub fn path_forest_cubulation(sys: &CoxeterSystem) -> Result<ConstructionResult> {
    let provenance = match sys.tag() {
        TypeTag::Finite(crate::coxeter::types::FiniteType::A(_)) => Provenance::NffA,
        TypeTag::Finite(crate::coxeter::types::FiniteType::B(_)) => Provenance::NffB,
        t => return Err(Error::Precondition(format!("path forest construction needs type A or B, got {t}"))),
    };
    let forest = normal_form_forest(sys)?;
    if !forest.is_path_forest() {
        return Err(Error::Precondition("normal form forest is not a union of paths".into()));
    }
    let paths: Vec<Vec<u8>> = forest.trees.iter().map(|t| t.path_labels().unwrap()).collect();
    let lattice = CubicalLattice::new(paths.iter().map(|p| p.len() as u32).collect())?;
    let top = sys.longest_element()?;
    certify(
        sys,
        &top,
        lattice,
        |c| {
            let word: Vec<u8> = c.iter().zip(&paths).flat_map(|(&k, p)| p[..k as usize].iter().copied()).collect();
            sys.shortlex_nf(&word)
        },
        provenance,
    )
}

/// Elements whose canonical word has no repeated letter span Boolean intervals.
pub fn standard_parabolic_coxeter_cubulation(sys: &CoxeterSystem, y: &Element) -> Result<ConstructionResult> {
    if !sys.owns(y) {
        return Err(Error::MixedSystems);
    }
    let word = y.word().to_vec();
    if sys.support(y).len() != word.len() {
        return Err(Error::Precondition(format!("{} repeats a generator", sys.format(y))));
    }
    let lattice = CubicalLattice::new(if word.is_empty() { vec![0] } else { vec![1; word.len()] })?;
    certify(
        sys,
        y,
        lattice,
        |c| {
            let sub: Vec<u8> = word.iter().zip(c).filter(|(_, &b)| b == 1).map(|(&a, _)| a).collect();
            sys.shortlex_nf(&sub)
        },
        Provenance::Boolean,
    )
}

/// `C(1, ℓ(y) - 1)` for `y` in a rank-2 parabolic: `(0, j)` goes to the
/// alternating word of length `j` starting with `t`, `(1, j)` to the one of
/// length `j + 1` starting with `s`, where `y` starts with `s`.
pub fn dihedral_cubulation(sys: &CoxeterSystem, y: &Element) -> Result<ConstructionResult> {
    if !sys.owns(y) {
        return Err(Error::MixedSystems);
    }
    let support = sys.support(y);
    if support.len() != 2 || y.len() < 3 {
        return Err(Error::Precondition(format!(
            "dihedral construction needs two generators and length at least 3, got {}",
            sys.format(y)
        )));
    }
    let s = y.word()[0];
    let t = if support[0] == s { support[1] } else { support[0] };
    let alt = |first: u8, len: u32| -> Element {
        let w: Vec<u8> = (0..len).map(|i| if i % 2 == 0 { first } else if first == s { t } else { s }).collect();
        sys.shortlex_nf(&w)
    };
    let lattice = CubicalLattice::new(vec![1, y.len() as u32 - 1])?;
    certify(sys, y, lattice, |c| if c[0] == 0 { alt(t, c[1]) } else { alt(s, c[1] + 1) }, Provenance::Dihedral)
}

fn check_atilde2(sys: &CoxeterSystem) -> Result<()> {
    match sys.tag() {
        TypeTag::Affine(AffineType { family: 'A', n: 2 }) => Ok(()),
        t => Err(Error::Precondition(format!("expected Atilde2, got {t}"))),
    }
}

/// `y_m`: the first `3 + 2m` letters of `(s1 s2 s1)(s0 s2 s1)^m`.
pub fn y_m(sys: &CoxeterSystem, m: u32) -> Result<Element> {
    check_atilde2(sys)?;
    let mut labels: Vec<i64> = vec![1, 2, 1];
    while labels.len() < 3 + 2 * m as usize {
        labels.extend_from_slice(&[0, 2, 1]);
    }
    labels.truncate(3 + 2 * m as usize);
    let y = sys.element(&labels)?;
    if y.len() != labels.len() {
        return Err(Error::Inconsistent(format!("y_{m} word is not reduced")));
    }
    Ok(y)
}

/// Level-0 labelling `(k_2, k_3) ↦ φ_m(0, k_2, k_3)` on `[0, m] × [0, m + 1]`.
fn atilde2_level0(sys: &CoxeterSystem, m: u32) -> Vec<Vec<Element>> {
    let e = |labels: &[u8]| sys.shortlex_nf(labels);
    let mut grid = vec![vec![e(&[]), e(&[2]), e(&[2, 0])], vec![e(&[0]), e(&[0, 2]), e(&[2, 0, 2])]];
    for mm in 1..m {
        let sm = (mm % 3) as u8;
        let sm1 = ((mm + 2) % 3) as u8;
        let mu = mm as usize;
        for row in grid.iter_mut().take(mu + 1) {
            let x = sys.mul_gen(&row[mu + 1], sm);
            row.push(x);
        }
        let mut new_row: Vec<Element> = (0..=mu).map(|k3| sys.mul_gen(&grid[mu][k3], sm)).collect();
        let corner = sys.mul_gen(&new_row[mu], sm1);
        let far = sys.mul_gen(&corner, sm);
        new_row.push(corner);
        new_row.push(far);
        grid.push(new_row);
    }
    grid
}

/// `C(2, m, m + 1)` cubulation of `[1, y_m]`, built by extending the level-0
/// labelling one `m` at a time and lifting to levels 1 and 2 by `s1` then `s2`.
pub fn atilde2_cubulation(sys: &CoxeterSystem, m: u32) -> Result<ConstructionResult> {
    check_atilde2(sys)?;
    if m == 0 {
        return Err(Error::Precondition("m = 0 is the dihedral case".into()));
    }
    let y = y_m(sys, m)?;
    let grid = atilde2_level0(sys, m);
    let lattice = CubicalLattice::new(vec![2, m, m + 1])?;
    certify(
        sys,
        &y,
        lattice,
        |c| {
            let mut x = grid[c[1] as usize][c[2] as usize].clone();
            for k in 1..=c[0] {
                x = sys.gen_mul(k as u8, &x);
            }
            x
        },
        Provenance::Atilde2,
    )
}

/// Representatives of the classes of trivial elements in affine A2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atilde2Class {
    Identity,
    S1,
    S1S2,
    S1S2S0,
    Y(u32),
    /// `y_0 s_0`, trivial and cubulable but missing from the reduction list.
    Y0S0,
    /// `s_0 y_0`, the inverse class of [`Atilde2Class::Y0S0`].
    S0Y0,
}

impl Atilde2Class {
    pub fn representative(&self, sys: &CoxeterSystem) -> Result<Element> {
        match self {
            Atilde2Class::Identity => Ok(sys.identity()),
            Atilde2Class::S1 => sys.element(&[1]),
            Atilde2Class::S1S2 => sys.element(&[1, 2]),
            Atilde2Class::S1S2S0 => sys.element(&[1, 2, 0]),
            Atilde2Class::Y(m) => y_m(sys, *m),
            Atilde2Class::Y0S0 => sys.element(&[1, 2, 1, 0]),
            Atilde2Class::S0Y0 => sys.element(&[0, 1, 2, 1]),
        }
    }

    /// Whether this is one of `1, s1, s1s2, s1s2s0, y_m`.
    pub fn in_reduction_list(&self) -> bool {
        !matches!(self, Atilde2Class::Y0S0 | Atilde2Class::S0Y0)
    }
}

impl fmt::Display for Atilde2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atilde2Class::Identity => f.write_str("1"),
            Atilde2Class::S1 => f.write_str("s1"),
            Atilde2Class::S1S2 => f.write_str("s1s2"),
            Atilde2Class::S1S2S0 => f.write_str("s1s2s0"),
            Atilde2Class::Y(m) => write!(f, "y_{m}"),
            Atilde2Class::Y0S0 => f.write_str("y_0 s0"),
            Atilde2Class::S0Y0 => f.write_str("s0 y_0"),
        }
    }
}

/// Every `y` with `ℓ(y) ≤ max_length` whose interval is KL-trivial, with the
/// representative it is carried to by a diagram automorphism.
///
/// Besides `1, s1, s1s2, s1s2s0` and the `y_m`, the classes of `y_0 s0` and
/// `s0 y_0` turn up at length 4; callers can tell them apart with
/// [`Atilde2Class::in_reduction_list`].
pub fn atilde2_trivial_enumeration(sys: &CoxeterSystem, max_length: usize) -> Result<Vec<(Element, Atilde2Class)>> {
    check_atilde2(sys)?;
    let mut reps: HashMap<Element, Atilde2Class> = HashMap::new();
    let mut classes = vec![
        Atilde2Class::Identity,
        Atilde2Class::S1,
        Atilde2Class::S1S2,
        Atilde2Class::S1S2S0,
        Atilde2Class::Y0S0,
        Atilde2Class::S0Y0,
    ];
    classes.extend((0..=(max_length.saturating_sub(3) / 2) as u32).map(Atilde2Class::Y));
    for c in classes {
        reps.insert(c.representative(sys)?, c);
    }
    let auts = sys.diagram_automorphisms();
    let mut out = Vec::new();
    for y in sys.ball(max_length).into_iter().flatten() {
        let iv = BruhatInterval::new(sys, &y)?;
        if !all_trivial(&iv) {
            continue;
        }
        let class = auts
            .iter()
            .find_map(|p| reps.get(&sys.diagram_automorphism(p, &y).ok()?).cloned())
            .ok_or_else(|| Error::Inconsistent(format!("trivial element {} matches no class representative", sys.format(&y))))?;
        out.push((y, class));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(d: &str) -> CoxeterSystem {
        CoxeterSystem::build(d).unwrap()
    }

    #[test]
    fn forests() {
        let a3 = sys("A3");
        let f = normal_form_forest(&a3).unwrap();
        assert_eq!(f.path_labels(&a3).unwrap(), vec![vec![1], vec![2, 1], vec![3, 2, 1]]);
        let b2 = sys("B2");
        assert_eq!(normal_form_forest(&b2).unwrap().path_labels(&b2).unwrap(), vec![vec![1], vec![2, 1, 2]]);
        assert!(!normal_form_forest(&sys("D4")).unwrap().is_path_forest());
        assert!(normal_form_forest(&sys("Atilde2")).is_err());
    }

    #[test]
    fn path_forests() {
        for (d, p) in [("A1", vec![1]), ("A3", vec![1, 2, 3]), ("B3", vec![1, 3, 5])] {
            let r = path_forest_cubulation(&sys(d)).unwrap();
            assert_eq!(r.lattice().params(), p.as_slice());
        }
        assert!(path_forest_cubulation(&sys("D4")).is_err());
    }

    #[test]
    fn boolean_and_dihedral() {
        let a3 = sys("A3");
        let r = standard_parabolic_coxeter_cubulation(&a3, &a3.element(&[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r.lattice().params(), &[1, 1, 1]);
        assert!(standard_parabolic_coxeter_cubulation(&a3, &a3.element(&[1, 2, 1]).unwrap()).is_err());
        let a2 = sys("A2");
        let r = dihedral_cubulation(&a2, &a2.longest_element().unwrap()).unwrap();
        assert_eq!(r.lattice().params(), &[1, 2]);
        let i5 = sys("I2(5)");
        let r = dihedral_cubulation(&i5, &i5.element(&[1, 2, 1, 2]).unwrap()).unwrap();
        assert_eq!(r.lattice().params(), &[1, 3]);
        let at1 = sys("Atilde1");
        let r = dihedral_cubulation(&at1, &at1.element(&[0, 1, 0, 1, 0, 1]).unwrap()).unwrap();
        assert_eq!(r.lattice().params(), &[1, 5]);
    }

    #[test]
    fn y_m_words() {
        let at2 = sys("Atilde2");
        assert_eq!(at2.labels(&y_m(&at2, 0).unwrap()), vec![1, 2, 1]);
        let y2 = y_m(&at2, 2).unwrap();
        assert_eq!(y2, at2.element(&[1, 2, 1, 0, 2, 1, 0]).unwrap());
        assert!(y_m(&sys("A2"), 1).is_err());
    }

    #[test]
    fn atilde2_family() {
        let at2 = sys("Atilde2");
        let r = atilde2_cubulation(&at2, 1).unwrap();
        assert_eq!(r.lattice().params(), &[2, 1, 2]);
        assert_eq!(r.image(&[2, 1, 2]), &y_m(&at2, 1).unwrap());
        for m in 2..=4 {
            let r = atilde2_cubulation(&at2, m).unwrap();
            assert_eq!(r.interval.len(), 3 * (m as usize + 1) * (m as usize + 2));
        }
    }

    #[test]
    fn trivial_classes() {
        let at2 = sys("Atilde2");
        let found = atilde2_trivial_enumeration(&at2, 5).unwrap();
        let classes: HashSet<Atilde2Class> = found.iter().map(|(_, c)| c.clone()).collect();
        assert!(classes.contains(&Atilde2Class::Y(1)));
        assert!(classes.contains(&Atilde2Class::S1S2S0));
        assert!(classes.contains(&Atilde2Class::Y0S0));
        let y1 = y_m(&at2, 1).unwrap();
        let swapped = at2.diagram_automorphism(&[0, 2, 1], &y1).unwrap();
        assert!(found.iter().any(|(y, c)| *y == swapped && *c == Atilde2Class::Y(1)));
    }
}
