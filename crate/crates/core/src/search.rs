//! Search for cubical lattices spanning the Bruhat graph of `[1, y]`.
//!
//! Lattice vertices are assigned in (rank, lexicographic) order, so every
//! predecessor of a vertex is placed before it. The candidates for a vertex
//! are the unused interval elements of the right length that have a Bruhat
//! edge from the image of each predecessor, found by intersecting bitsets.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::bruhat::BruhatInterval;
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::lattice::CubicalLattice;
use crate::poly::{quantum_factorizations, QuantumShape};

/// A cubical lattice together with a bijection onto the interval's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cubulation {
    pub lattice: CubicalLattice,
    /// Interval vertex id of each lattice vertex, by mixed-radix index.
    pub assignment: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    Found,
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Candidate assignments tried.
    pub nodes: u64,
    pub shapes_tried: u32,
    /// Nodes charged against the budget, including earlier resumed runs.
    pub budget_used: u64,
    /// Wall time in milliseconds; left out of serialized output so that it is byte-stable.
    #[serde(skip)]
    pub wall_ms: u128,
}

/// Resumable position of a single-worker search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// Index into the candidate shape list.
    pub shape_index: usize,
    pub shape: QuantumShape,
    /// Current DFS path as (lattice coordinates, interval vertex id); the last
    /// entry had not been expanded yet.
    pub path: Vec<(Vec<u32>, u32)>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub certificate: Option<Cubulation>,
    pub stats: SearchStats,
    pub checkpoint: Option<Checkpoint>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum node expansions; `None` is unlimited.
    pub budget: Option<u64>,
    pub workers: usize,
    pub resume: Option<Checkpoint>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: None, workers: 1, resume: None }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions { budget: Some(budget), ..Default::default() }
    }
}

/// Quantum factorizations of `p_y` with one factor per generator in the support of `y`.
pub fn candidate_shapes(sys: &CoxeterSystem, iv: &BruhatInterval) -> Vec<QuantumShape> {
    let n = sys.support(iv.top()).len();
    quantum_factorizations(&iv.poincare_polynomial())
        .into_iter()
        .filter(|s| s.0.len() == n)
        .collect()
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    Invalid(String),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

/// Check a cubulation from scratch with group arithmetic only.
pub fn verify_certificate(sys: &CoxeterSystem, iv: &BruhatInterval, cert: &Cubulation) -> Verification {
    let lat = &cert.lattice;
    let n = iv.len();
    if cert.assignment.len() != lat.num_vertices() || lat.num_vertices() != n {
        return Verification::Invalid(format!(
            "lattice {} has {} vertices, assignment {}, interval {}",
            lat,
            lat.num_vertices(),
            cert.assignment.len(),
            n
        ));
    }
    let mut seen = vec![false; n];
    for (i, &id) in cert.assignment.iter().enumerate() {
        if id as usize >= n || seen[id as usize] {
            return Verification::Invalid(format!("vertex {:?} maps to a repeated or unknown id {id}", lat.coords_of(i)));
        }
        seen[id as usize] = true;
        let rank: u32 = lat.coords_of(i).iter().sum();
        if iv.vertex(id).len() != rank as usize {
            return Verification::Invalid(format!(
                "vertex {:?} of rank {rank} maps to {} of length {}",
                lat.coords_of(i),
                sys.format(iv.vertex(id)),
                iv.vertex(id).len()
            ));
        }
    }
    for (u, v) in lat.edges() {
        let x = iv.vertex(cert.assignment[u]);
        let y = iv.vertex(cert.assignment[v]);
        let t = sys.mul(&sys.inverse(x), y);
        if y.len() <= x.len() || !sys.is_reflection(&t) {
            return Verification::Invalid(format!(
                "edge {:?} -> {:?} maps to {} -> {}, which is not a Bruhat edge",
                lat.coords_of(u),
                lat.coords_of(v),
                sys.format(x),
                sys.format(y)
            ));
        }
    }
    Verification::Valid
}

/// Static data of one (interval, lattice) search problem.
struct Problem {
    lattice: CubicalLattice,
    /// Lattice mixed-radix index at each DFS position.
    order: Vec<usize>,
    rank: Vec<u32>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    up: Vec<BitSet>,
    level: Vec<BitSet>,
    /// DFS position of `e_i` for each coordinate `i`.
    atom_pos: Vec<usize>,
    /// For atom position `p` (coordinate `i`), the position of `e_{i+1}` when
    /// `k_{i+1} = k_i`; the smaller coordinate must get the smaller id.
    tie_with: Vec<Option<usize>>,
    /// Diagram automorphisms fixing `y`, as maps on interval ids of atoms.
    auts: Vec<Vec<u32>>,
    /// Coordinate blocks of equal parameters.
    blocks: Vec<std::ops::Range<usize>>,
}

impl Problem {
    fn new(sys: &CoxeterSystem, iv: &BruhatInterval, lattice: CubicalLattice) -> Problem {
        let mut order: Vec<usize> = (0..lattice.num_vertices()).collect();
        let coords: Vec<Vec<u32>> = order.iter().map(|&i| lattice.coords_of(i)).collect();
        order.sort_by(|&a, &b| {
            let ra: u32 = coords[a].iter().sum();
            let rb: u32 = coords[b].iter().sum();
            (ra, &coords[a]).cmp(&(rb, &coords[b]))
        });
        let mut pos_of = vec![0; order.len()];
        for (p, &i) in order.iter().enumerate() {
            pos_of[i] = p;
        }
        let dim = lattice.dim();
        let mut preds = vec![Vec::new(); order.len()];
        let mut succs = vec![Vec::new(); order.len()];
        for (u, v) in lattice.edges() {
            preds[pos_of[v]].push(pos_of[u]);
            succs[pos_of[u]].push(pos_of[v]);
        }
        let rank = order.iter().map(|&i| coords[i].iter().sum()).collect();
        let n = iv.len();
        let mut up: Vec<BitSet> = (0..n as u32)
            .map(|u| BitSet::from_iter(n, iv.upper_neighbors(u).iter().map(|&v| v as usize)))
            .collect();
        up.shrink_to_fit();
        let mut level = vec![BitSet::new(n); iv.top().len() + 1];
        for v in 0..n {
            level[iv.length(v as u32)].insert(v);
        }
        let params = lattice.params();
        let trivial = params == [0];
        let atom_pos: Vec<usize> = if trivial {
            Vec::new()
        } else {
            (0..dim)
                .map(|i| {
                    let mut c = vec![0; dim];
                    c[i] = 1;
                    pos_of[lattice.index_of(&c)]
                })
                .collect()
        };
        let mut tie_with = vec![None; order.len()];
        let mut blocks = Vec::new();
        if !trivial {
            let mut start = 0;
            for i in 1..=dim {
                if i == dim || params[i] != params[start] {
                    blocks.push(start..i);
                    start = i;
                }
            }
            for i in 0..dim.saturating_sub(1) {
                if params[i] == params[i + 1] {
                    tie_with[atom_pos[i]] = Some(atom_pos[i + 1]);
                }
            }
        }
        let y = iv.top();
        let mut auts = Vec::new();
        for perm in sys.diagram_automorphisms().into_iter().skip(1) {
            if sys.diagram_automorphism(&perm, y).ok().as_ref() != Some(y) {
                continue;
            }
            let mut map = vec![u32::MAX; n];
            for s in 0..sys.rank() as u8 {
                let a = iv.id_of(&sys.shortlex_nf(&[s]));
                let b = iv.id_of(&sys.shortlex_nf(&[perm[s as usize]]));
                if let (Some(a), Some(b)) = (a, b) {
                    map[a as usize] = b;
                }
            }
            auts.push(map);
        }
        Problem { lattice, order, rank, preds, succs, up, level, atom_pos, tie_with, auts, blocks }
    }

    fn positions(&self) -> usize {
        self.order.len()
    }

    fn candidates(&self, pos: usize, assign: &[u32], used: &BitSet) -> BitSet {
        let mut dom = self.level[self.rank[pos] as usize].clone();
        dom.difference_with(used);
        for &p in &self.preds[pos] {
            dom.intersect_with(&self.up[assign[p] as usize]);
        }
        dom
    }

    /// Every successor of `pos` still has a candidate given what is assigned so far.
    fn lookahead_ok(&self, pos: usize, assign: &[u32], used: &BitSet) -> bool {
        let mut scratch = BitSet::new(0);
        for &q in &self.succs[pos] {
            scratch.clone_from(&self.level[self.rank[q] as usize]);
            scratch.difference_with(used);
            for &p in &self.preds[q] {
                if p <= pos {
                    scratch.intersect_with(&self.up[assign[p] as usize]);
                }
            }
            if scratch.is_empty() {
                return false;
            }
        }
        true
    }

    /// Lex-leader test on the atom images once all of them are placed.
    fn atoms_canonical(&self, assign: &[u32]) -> bool {
        if self.auts.is_empty() {
            return true;
        }
        let a: Vec<u32> = self.atom_pos.iter().map(|&p| assign[p]).collect();
        for map in &self.auts {
            let mut b: Vec<u32> = a.iter().map(|&x| map[x as usize]).collect();
            for blk in &self.blocks {
                b[blk.clone()].sort_unstable();
            }
            if b < a {
                return false;
            }
        }
        true
    }

    fn last_atom_pos(&self) -> Option<usize> {
        self.atom_pos.iter().copied().max()
    }

    fn certificate(&self, assign: &[u32]) -> Cubulation {
        let mut out = vec![0; self.positions()];
        for (p, &i) in self.order.iter().enumerate() {
            out[i] = assign[p];
        }
        Cubulation { lattice: self.lattice.clone(), assignment: out }
    }
}

/// Shared node counter and stop flag.
struct Control<'a> {
    budget: Option<u64>,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
}

enum DfsEnd {
    Found(Vec<u32>),
    Exhausted,
    /// Path of positions 1..=p with the last entry not yet expanded.
    Budget(Vec<u32>),
    Stopped,
}

/// Depth-first search from a fixed prefix `assign[..start]`.
///
/// `resume` lists the ids to re-enter at positions `start, start + 1, ...`.
fn dfs(prob: &Problem, prefix: &[u32], resume: &[u32], ctl: &Control) -> Result<DfsEnd> {
    let total = prob.positions();
    let n = prob.up.len();
    let mut assign = vec![u32::MAX; total];
    let mut used = BitSet::new(n);
    for (p, &id) in prefix.iter().enumerate() {
        assign[p] = id;
        used.insert(id as usize);
    }
    let start = prefix.len();
    if start == total {
        return Ok(DfsEnd::Found(assign));
    }
    let last_atom = prob.last_atom_pos();
    struct Frame {
        cands: Vec<u32>,
        next: usize,
        current: Option<u32>,
        fresh: bool,
    }
    // the checkpoint path is replayed on the first descent only
    let make_frame = |pos: usize, assign: &[u32], used: &BitSet, replay: bool| -> Result<Frame> {
        let cands: Vec<u32> = prob.candidates(pos, assign, used).iter().map(|c| c as u32).collect();
        let mut next = 0;
        if let Some(&want) = resume.get(pos - start).filter(|_| replay) {
            next = cands.iter().position(|&c| c == want).ok_or_else(|| {
                Error::InvalidArgument(format!("checkpoint does not match the search at position {pos}"))
            })?;
        }
        Ok(Frame { cands, next, current: None, fresh: true })
    };
    let mut stack = vec![make_frame(start, &assign, &used, true)?];
    let mut replaying = true;
    let mut local: u64 = 0;
    while !stack.is_empty() {
        let pos = start + stack.len() - 1;
        let frame = stack.last_mut().unwrap();
        if let Some(prev) = frame.current.take() {
            used.remove(prev as usize);
            assign[pos] = u32::MAX;
        }
        // a second pick at any level leaves the replayed path
        if !std::mem::replace(&mut frame.fresh, false) {
            replaying = false;
        }
        if frame.next >= frame.cands.len() {
            stack.pop();
            replaying = false;
            continue;
        }
        let c = frame.cands[frame.next];
        frame.next += 1;
        local += 1;
        if local.is_multiple_of(4096) && ctl.stop.load(AtomicOrdering::Relaxed) {
            return Ok(DfsEnd::Stopped);
        }
        let count = ctl.nodes.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if ctl.budget.is_some_and(|b| count > b) {
            ctl.nodes.fetch_sub(1, AtomicOrdering::Relaxed);
            let mut path: Vec<u32> = assign[1..pos].to_vec();
            path.push(c);
            return Ok(DfsEnd::Budget(path));
        }
        if let Some(other) = prob.tie_with[pos] {
            // e_{i+1} sits earlier in DFS order than e_i
            if c >= assign[other] {
                continue;
            }
        }
        assign[pos] = c;
        used.insert(c as usize);
        frame.current = Some(c);
        if Some(pos) == last_atom && !prob.atoms_canonical(&assign) {
            continue;
        }
        if !prob.lookahead_ok(pos, &assign, &used) {
            continue;
        }
        if pos + 1 == total {
            return Ok(DfsEnd::Found(assign));
        }
        let f = make_frame(pos + 1, &assign, &used, replaying)?;
        stack.push(f);
    }
    Ok(DfsEnd::Exhausted)
}

/// Search for a cubulation of `iv` by the lattice of one quantum shape.
pub fn search(
    sys: &CoxeterSystem,
    iv: &BruhatInterval,
    shape: &QuantumShape,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    search_indexed(sys, iv, shape, 0, opts)
}

fn search_indexed(
    sys: &CoxeterSystem,
    iv: &BruhatInterval,
    shape: &QuantumShape,
    shape_index: usize,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if opts.budget == Some(0) {
        return Err(Error::InvalidArgument("search budget must be positive".into()));
    }
    if shape.degree() as usize != iv.top().len() {
        return Err(Error::Precondition(format!(
            "shape {shape} has degree {} but the interval has height {}",
            shape.degree(),
            iv.top().len()
        )));
    }
    let t0 = Instant::now();
    let params = if shape.0.is_empty() { vec![0] } else { shape.lattice_params() };
    let lattice = CubicalLattice::new(params)?.canonical_form();
    let prior = opts.resume.as_ref().map_or(0, |c| c.stats.budget_used);
    let mut stats = SearchStats { shapes_tried: 1, ..Default::default() };
    let finish = |status, certificate, checkpoint, mut stats: SearchStats| {
        stats.wall_ms = t0.elapsed().as_millis();
        Ok(SearchOutcome { status, certificate, stats, checkpoint })
    };
    if lattice.num_vertices() != iv.len() {
        return finish(SearchStatus::Exhausted, None, None, stats);
    }
    let prob = Problem::new(sys, iv, lattice);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let ctl = Control { budget: opts.budget.map(|b| b.saturating_sub(prior)), nodes: &nodes, stop: &stop };
    let resume: Vec<u32> = match &opts.resume {
        Some(c) => {
            if c.shape != *shape {
                return Err(Error::InvalidArgument("checkpoint belongs to a different shape".into()));
            }
            c.path.iter().map(|(_, id)| *id).collect()
        }
        None => Vec::new(),
    };
    let end = if opts.workers > 1 && opts.resume.is_none() {
        parallel_dfs(&prob, &ctl, opts.workers)?
    } else {
        dfs(&prob, &[0], &resume, &ctl)?
    };
    stats.nodes = nodes.load(AtomicOrdering::Relaxed);
    stats.budget_used = prior + stats.nodes;
    match end {
        DfsEnd::Found(assign) => {
            let cert = prob.certificate(&assign);
            match verify_certificate(sys, iv, &cert) {
                Verification::Valid => finish(SearchStatus::Found, Some(cert), None, stats),
                Verification::Invalid(why) => Err(Error::Inconsistent(format!("search produced a bad certificate: {why}"))),
            }
        }
        DfsEnd::Exhausted => finish(SearchStatus::Exhausted, None, None, stats),
        DfsEnd::Budget(path) => {
            let path = path
                .iter()
                .enumerate()
                .map(|(k, &id)| (prob.lattice.coords_of(prob.order[k + 1]), id))
                .collect();
            let cp = Checkpoint { shape_index, shape: shape.clone(), path, stats: stats.clone() };
            finish(SearchStatus::BudgetExceeded, None, Some(cp), stats)
        }
        DfsEnd::Stopped => finish(SearchStatus::BudgetExceeded, None, None, stats),
    }
}

/// Split the tree at the atom level and explore the branches on a thread pool.
fn parallel_dfs(prob: &Problem, ctl: &Control, workers: usize) -> Result<DfsEnd> {
    let depth = prob.atom_pos.len().min(prob.positions().saturating_sub(2));
    let mut prefixes: Vec<Vec<u32>> = vec![vec![0]];
    for pos in 1..=depth {
        let mut next = Vec::new();
        for pre in &prefixes {
            let mut assign = vec![u32::MAX; prob.positions()];
            let mut used = BitSet::new(prob.up.len());
            for (p, &id) in pre.iter().enumerate() {
                assign[p] = id;
                used.insert(id as usize);
            }
            for c in prob.candidates(pos, &assign, &used).iter() {
                let c = c as u32;
                if prob.tie_with[pos].is_some_and(|o| c >= assign[o]) {
                    continue;
                }
                assign[pos] = c;
                used.insert(c as usize);
                let ok = (Some(pos) != prob.last_atom_pos() || prob.atoms_canonical(&assign))
                    && prob.lookahead_ok(pos, &assign, &used);
                used.remove(c as usize);
                if ok {
                    let mut p = pre.clone();
                    p.push(c);
                    next.push(p);
                }
            }
        }
        prefixes = next;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    let found: Mutex<Option<(usize, Vec<u32>)>> = Mutex::new(None);
    let over_budget = AtomicBool::new(false);
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    pool.install(|| {
        prefixes.par_iter().enumerate().for_each(|(k, pre)| {
            if ctl.stop.load(AtomicOrdering::Relaxed) {
                return;
            }
            match dfs(prob, pre, &[], ctl) {
                Ok(DfsEnd::Found(a)) => {
                    let mut f = found.lock().unwrap();
                    if f.as_ref().is_none_or(|(j, _)| k < *j) {
                        *f = Some((k, a));
                    }
                    ctl.stop.store(true, AtomicOrdering::Relaxed);
                }
                Ok(DfsEnd::Budget(_)) => {
                    over_budget.store(true, AtomicOrdering::Relaxed);
                    ctl.stop.store(true, AtomicOrdering::Relaxed);
                }
                Ok(DfsEnd::Exhausted | DfsEnd::Stopped) => {}
                Err(e) => {
                    *failure.lock().unwrap() = Some(e);
                    ctl.stop.store(true, AtomicOrdering::Relaxed);
                }
            }
        })
    });
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    if let Some((_, a)) = found.into_inner().unwrap() {
        return Ok(DfsEnd::Found(a));
    }
    if over_budget.load(AtomicOrdering::Relaxed) {
        return Ok(DfsEnd::Stopped);
    }
    Ok(DfsEnd::Exhausted)
}

/// Try every candidate shape in lexicographic order.
pub fn cubulate(sys: &CoxeterSystem, iv: &BruhatInterval, opts: &SearchOptions) -> Result<SearchOutcome> {
    if opts.budget == Some(0) {
        return Err(Error::InvalidArgument("search budget must be positive".into()));
    }
    let t0 = Instant::now();
    let shapes = candidate_shapes(sys, iv);
    let first = opts.resume.as_ref().map_or(0, |c| c.shape_index);
    let mut total = SearchStats {
        budget_used: opts.resume.as_ref().map_or(0, |c| c.stats.budget_used),
        shapes_tried: opts.resume.as_ref().map_or(0, |c| c.stats.shapes_tried.saturating_sub(1)),
        ..Default::default()
    };
    if first > shapes.len() {
        return Err(Error::InvalidArgument("checkpoint shape index out of range".into()));
    }
    for (k, shape) in shapes.iter().enumerate().skip(first) {
        let mut o = opts.clone();
        if k != first {
            o.resume = None;
        }
        if o.resume.is_none() {
            o.resume = None;
            // carry the budget already spent into this shape
            o.budget = opts.budget.map(|b| b.saturating_sub(total.budget_used));
            if o.budget == Some(0) {
                total.wall_ms = t0.elapsed().as_millis();
                let cp = Checkpoint { shape_index: k, shape: shape.clone(), path: Vec::new(), stats: total.clone() };
                return Ok(SearchOutcome { status: SearchStatus::BudgetExceeded, certificate: None, stats: total, checkpoint: Some(cp) });
            }
        }
        let before = total.budget_used;
        let mut out = search_indexed(sys, iv, shape, k, &o)?;
        total.nodes += out.stats.nodes;
        total.shapes_tried += 1;
        total.budget_used = if o.resume.is_some() { out.stats.budget_used } else { before + out.stats.nodes };
        if out.status != SearchStatus::Exhausted {
            total.wall_ms = t0.elapsed().as_millis();
            if let Some(cp) = out.checkpoint.as_mut() {
                cp.stats = total.clone();
            }
            out.stats = total;
            return Ok(out);
        }
    }
    total.wall_ms = t0.elapsed().as_millis();
    Ok(SearchOutcome { status: SearchStatus::Exhausted, certificate: None, stats: total, checkpoint: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(d: &str) -> CoxeterSystem {
        CoxeterSystem::build(d).unwrap()
    }

    fn run(s: &CoxeterSystem, labels: &[i64]) -> (SearchOutcome, BruhatInterval) {
        let y = s.element(labels).unwrap();
        let iv = BruhatInterval::new(s, &y).unwrap();
        (cubulate(s, &iv, &SearchOptions::default()).unwrap(), iv)
    }

    #[test]
    fn shape_examples() {
        let a2 = sys("A2");
        let iv = BruhatInterval::new(&a2, &a2.longest_element().unwrap()).unwrap();
        assert_eq!(candidate_shapes(&a2, &iv), vec![QuantumShape(vec![2, 3])]);
        let a3 = sys("A3");
        let iv = BruhatInterval::new(&a3, &a3.element(&[2, 1, 3, 2]).unwrap()).unwrap();
        assert!(candidate_shapes(&a3, &iv).is_empty());
    }

    #[test]
    fn w0_examples() {
        let a3 = sys("A3");
        let w0 = a3.longest_element().unwrap();
        let (out, _) = run(&a3, &a3.labels(&w0));
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.certificate.unwrap().lattice.params(), &[1, 2, 3]);
        let b3 = sys("B3");
        let w0 = b3.longest_element().unwrap();
        let (out, _) = run(&b3, &b3.labels(&w0));
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.certificate.unwrap().lattice.params(), &[1, 3, 5]);
    }

    #[test]
    fn small_examples() {
        let at2 = sys("Atilde2");
        let (out, _) = run(&at2, &[1, 2, 1, 0, 2, 1, 0]);
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.certificate.unwrap().lattice.params(), &[2, 2, 3]);
        let (out, _) = run(&at2, &[1, 2, 0]);
        assert_eq!(out.certificate.unwrap().lattice.params(), &[1, 1, 1]);
        let (out, _) = run(&sys("A3"), &[2, 1, 3, 2]);
        assert_eq!(out.status, SearchStatus::Exhausted);
        assert_eq!(out.stats.shapes_tried, 0);
        let (out, iv) = run(&at2, &[]);
        assert_eq!(out.status, SearchStatus::Found);
        assert!(verify_certificate(&at2, &iv, out.certificate.as_ref().unwrap()).is_valid());
    }

    #[test]
    fn mutated_certificate_fails() {
        let a3 = sys("A3");
        let w0 = a3.longest_element().unwrap();
        let (out, iv) = run(&a3, &a3.labels(&w0));
        let cert = out.certificate.unwrap();
        assert!(verify_certificate(&a3, &iv, &cert).is_valid());
        let lat = &cert.lattice;
        let mut broken = false;
        let idx: Vec<usize> = (0..lat.num_vertices()).collect();
        'outer: for &i in &idx {
            for &j in &idx {
                let ri: u32 = lat.coords_of(i).iter().sum();
                let rj: u32 = lat.coords_of(j).iter().sum();
                if i < j && ri == rj {
                    let mut c = cert.clone();
                    c.assignment.swap(i, j);
                    if !verify_certificate(&a3, &iv, &c).is_valid() {
                        broken = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(broken);
    }

    #[test]
    fn budget_and_resume() {
        let a3 = sys("A3");
        let w0 = a3.longest_element().unwrap();
        let iv = BruhatInterval::new(&a3, &w0).unwrap();
        assert!(cubulate(&a3, &iv, &SearchOptions::with_budget(0)).is_err());
        let full = cubulate(&a3, &iv, &SearchOptions::default()).unwrap();
        let partial = cubulate(&a3, &iv, &SearchOptions::with_budget(5)).unwrap();
        assert_eq!(partial.status, SearchStatus::BudgetExceeded);
        let cp = partial.checkpoint.unwrap();
        let resumed = cubulate(&a3, &iv, &SearchOptions { resume: Some(cp), ..Default::default() }).unwrap();
        assert_eq!(resumed.status, SearchStatus::Found);
        assert_eq!(resumed.certificate, full.certificate);

        // chained resumes with small budgets must still make progress
        let b4 = sys("B4");
        let w0 = b4.longest_element().unwrap();
        let iv = BruhatInterval::new(&b4, &w0).unwrap();
        let full = cubulate(&b4, &iv, &SearchOptions::default()).unwrap();
        let mut opts = SearchOptions::with_budget(20_000);
        let mut hops = 0;
        let out = loop {
            let out = cubulate(&b4, &iv, &opts).unwrap();
            if out.status != SearchStatus::BudgetExceeded {
                break out;
            }
            hops += 1;
            let cp = out.checkpoint.unwrap();
            opts = SearchOptions { budget: Some(cp.stats.budget_used + 20_000), resume: Some(cp), workers: 1 };
        };
        assert!(hops > 2);
        assert_eq!(out.certificate, full.certificate);
    }

    #[test]
    fn parallel_matches_single() {
        let b3 = sys("B3");
        let w0 = b3.longest_element().unwrap();
        let iv = BruhatInterval::new(&b3, &w0).unwrap();
        let opts = SearchOptions { workers: 4, ..Default::default() };
        let out = cubulate(&b3, &iv, &opts).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
    }
}
