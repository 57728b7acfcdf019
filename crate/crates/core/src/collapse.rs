//! Elementary collapses and budgeted collapsibility search.
//!
//! The search is a depth-first walk over elementary collapses with a visited
//! set keyed by a Zobrist hash of the remaining faces, so different orders
//! of independent collapses are explored once. Pairs are tried with the
//! highest-dimensional cofacet first, then lexicographically.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::homology::{betti, BettiProfile};
use crate::{Error, Obstruction, Result, Simplex, SimplicialComplex, TriState, Vertex, MAX_VERTICES};

/// Removal of a free face together with its unique cofacet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CollapseStep {
    pub free_face: Simplex,
    pub cofacet: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseSequence {
    pub start: SimplicialComplex,
    pub steps: Vec<CollapseStep>,
    pub end: SimplicialComplex,
    /// True when `start` is the barycentric subdivision of the complex the
    /// search was asked about.
    pub subdivided: bool,
}

impl CollapseSequence {
    /// Applies the steps one by one from `start`, validating each.
    pub fn replay(&self) -> Result<SimplicialComplex> {
        let mut k = self.start.clone();
        for step in &self.steps {
            k = collapse_step(&k, *step)?;
        }
        Ok(k)
    }

    /// Whether replaying reproduces `end`.
    pub fn verify(&self) -> bool {
        self.replay().map(|k| k == self.end).unwrap_or(false)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Highest cofacet dimension first, then lexicographic.
    #[default]
    DecreasingDimension,
    /// Lexicographic on the free face only.
    Lexicographic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: usize,
    pub strategy: Strategy,
    /// Retry once on the barycentric subdivision when the plain search
    /// runs out of budget.
    pub subdivide_on_failure: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 1_000_000,
            strategy: Strategy::DecreasingDimension,
            subdivide_on_failure: false,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(max_nodes: usize) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            ..Self::default()
        }
    }
}

/// All `(free face, principal cofacet)` pairs, in search order.
pub fn free_faces(k: &SimplicialComplex) -> Vec<(Simplex, Simplex)> {
    let state = FaceState::new(k);
    let mut pairs = state.free_pairs(&HashSet::new(), i32::MIN);
    order_pairs(&mut pairs, Strategy::DecreasingDimension);
    pairs.into_iter().map(|s| (s.free_face, s.cofacet)).collect()
}

/// `K − {τ, σ}` for a valid elementary collapse.
pub fn collapse_step(k: &SimplicialComplex, step: CollapseStep) -> Result<SimplicialComplex> {
    let CollapseStep { free_face, cofacet } = step;
    if free_face.is_empty() {
        return Err(Error::InvalidCollapse("the empty face is never free".into()));
    }
    if !free_face.is_face_of(cofacet) || free_face.len() + 1 != cofacet.len() {
        return Err(Error::InvalidCollapse(format!("{free_face} is not a ridge of {cofacet}")));
    }
    if !k.is_facet(cofacet) {
        return Err(Error::InvalidCollapse(format!("{cofacet} is not a principal simplex")));
    }
    if k.facets().iter().any(|f| *f != cofacet && free_face.is_face_of(*f)) {
        return Err(Error::InvalidCollapse(format!("{free_face} is not a free face")));
    }
    let gens = k
        .facets()
        .iter()
        .copied()
        .filter(|f| *f != cofacet)
        .chain(cofacet.facets().filter(|r| *r != free_face));
    Ok(SimplicialComplex::from_facets(gens))
}

/// Searches for a collapse of `k` to a single vertex.
///
/// `No` means either nonzero reduced integral homology or that every
/// collapse order was tried and got stuck.
pub fn is_collapsible(k: &SimplicialComplex, budget: SearchBudget) -> Result<TriState<CollapseSequence>> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    let profile = betti(k)?;
    if !profile.is_acyclic() {
        return Ok(TriState::No(Obstruction::Homology(profile)));
    }
    let goal = Goal::SingleVertex;
    match search(k, &SimplicialComplex::void(), goal, budget) {
        Search::Found(seq) => Ok(TriState::Yes(seq)),
        Search::Exhausted(n) if !budget.subdivide_on_failure => Ok(TriState::No(Obstruction::Stuck { explored: n })),
        Search::Exhausted(n) | Search::OutOfBudget(n) => {
            if budget.subdivide_on_failure {
                if let Some(sd) = barycentric_subdivision(k) {
                    if let Search::Found(mut seq) = search(&sd, &SimplicialComplex::void(), goal, budget) {
                        seq.subdivided = true;
                        return Ok(TriState::Yes(seq));
                    }
                }
            }
            Ok(TriState::Unknown(format!("no collapse to a vertex found after {n} nodes")))
        }
    }
}

/// Searches for a collapse of `k` onto the subcomplex `l`.
pub fn collapses_to(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: SearchBudget,
) -> Result<TriState<CollapseSequence>> {
    if !l.is_subcomplex_of(k) {
        return Err(Error::NotASubcomplex);
    }
    if k == l {
        return Ok(TriState::Yes(trivial_sequence(k)));
    }
    let (source, target) = (profile_or_zero(k)?, profile_or_zero(l)?);
    if !source.same_groups(&target) || l.is_void() {
        return Ok(TriState::No(Obstruction::HomologyMismatch { source, target }));
    }
    match search(k, l, Goal::Subcomplex, budget) {
        Search::Found(seq) => Ok(TriState::Yes(seq)),
        Search::Exhausted(n) => Ok(TriState::No(Obstruction::Stuck { explored: n })),
        Search::OutOfBudget(n) => Ok(TriState::Unknown(format!(
            "no collapse onto the subcomplex after {n} nodes"
        ))),
    }
}

/// Collapses only simplices of dimension above `target_dim` until none
/// remain.
pub fn collapse_to_dimension(
    k: &SimplicialComplex,
    target_dim: i32,
    budget: SearchBudget,
) -> Result<TriState<CollapseSequence>> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if k.dim().unwrap_or(-1) <= target_dim {
        return Ok(TriState::Yes(trivial_sequence(k)));
    }
    match search(k, &SimplicialComplex::void(), Goal::Dimension(target_dim), budget) {
        Search::Found(seq) => Ok(TriState::Yes(seq)),
        Search::Exhausted(n) => Ok(TriState::No(Obstruction::Stuck { explored: n })),
        Search::OutOfBudget(n) => Ok(TriState::Unknown(format!("budget exhausted after {n} nodes"))),
    }
}

/// A spine: collapses of `m` down to a complex of smaller dimension,
/// removing top-dimensional simplices first.
pub fn spine(m: &SimplicialComplex, budget: SearchBudget) -> Result<CollapseSequence> {
    let d = m.dim().ok_or(Error::VoidComplex)?;
    match search(m, &SimplicialComplex::void(), Goal::Dimension(d - 1), budget) {
        Search::Found(seq) => Ok(seq),
        Search::Exhausted(n) | Search::OutOfBudget(n) => Err(Error::BudgetExhausted { explored: n }),
    }
}

/// Checks `k_dual ↗ l_tau` by searching for the reverse collapse. A `Yes`
/// carries the expansions in the order they are applied to `k_dual`.
pub fn expansion_check(
    k_dual: &SimplicialComplex,
    l_tau: &SimplicialComplex,
    budget: SearchBudget,
) -> Result<TriState<Vec<CollapseStep>>> {
    Ok(collapses_to(l_tau, k_dual, budget)?.map(|seq| seq.steps.into_iter().rev().collect()))
}

/// Barycentric subdivision with vertices indexed by the nonempty faces in
/// lexicographic order. `None` when there are more faces than vertex slots.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Option<SimplicialComplex> {
    let faces: Vec<Simplex> = k.all_faces().into_iter().filter(|s| !s.is_empty()).collect();
    if faces.len() > MAX_VERTICES {
        return None;
    }
    let index: HashMap<Simplex, usize> = faces.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut chains = Vec::new();
    for &f in k.facets() {
        if f.is_empty() {
            continue;
        }
        flags(f, Simplex::EMPTY, &index, &mut chains);
    }
    if chains.is_empty() {
        return Some(k.clone());
    }
    Some(SimplicialComplex::from_facets(chains))
}

fn flags(face: Simplex, acc: Simplex, index: &HashMap<Simplex, usize>, out: &mut Vec<Simplex>) {
    let acc = acc.with(Vertex(index[&face] as u8));
    if face.len() == 1 {
        out.push(acc);
        return;
    }
    for r in face.facets() {
        flags(r, acc, index, out);
    }
}

fn trivial_sequence(k: &SimplicialComplex) -> CollapseSequence {
    CollapseSequence {
        start: k.clone(),
        steps: Vec::new(),
        end: k.clone(),
        subdivided: false,
    }
}

fn profile_or_zero(k: &SimplicialComplex) -> Result<BettiProfile> {
    if k.is_void() {
        Ok(BettiProfile::zero())
    } else {
        betti(k)
    }
}

#[derive(Clone, Copy, Debug)]
enum Goal {
    SingleVertex,
    Subcomplex,
    Dimension(i32),
}

enum Search {
    Found(CollapseSequence),
    /// Every reachable state was visited.
    Exhausted(usize),
    OutOfBudget(usize),
}

fn zobrist(s: Simplex) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    let bits = s.bits();
    mix(bits as u64 ^ mix((bits >> 64) as u64))
}

/// Face poset with immediate-coface counts.
struct FaceState {
    cofaces: HashMap<Simplex, u32>,
    ground: Simplex,
    by_dim: Vec<usize>,
    hash: u64,
}

impl FaceState {
    fn new(k: &SimplicialComplex) -> Self {
        let faces = k.all_faces();
        let ground = k.vertex_set();
        let mut cofaces: HashMap<Simplex, u32> = faces.iter().map(|s| (*s, 0)).collect();
        let mut by_dim = vec![0usize; ground.len() + 2];
        let mut hash = 0u64;
        for &s in &faces {
            by_dim[s.len()] += 1;
            hash ^= zobrist(s);
            for r in s.facets() {
                *cofaces.get_mut(&r).unwrap() += 1;
            }
        }
        FaceState {
            cofaces,
            ground,
            by_dim,
            hash,
        }
    }

    fn top_dim(&self) -> i32 {
        self.by_dim.iter().rposition(|&c| c > 0).map_or(-2, |i| i as i32 - 1)
    }

    fn free_pairs(&self, protected: &HashSet<Simplex>, above_dim: i32) -> Vec<CollapseStep> {
        let mut out = Vec::new();
        for (&s, &c) in &self.cofaces {
            if c != 1 || s.is_empty() || s.dim() + 1 < above_dim || protected.contains(&s) {
                continue;
            }
            let tau = self
                .ground
                .difference(s)
                .vertices()
                .map(|v| s.with(v))
                .find(|t| self.cofaces.contains_key(t))
                .expect("coface count is consistent");
            if self.cofaces[&tau] == 0 && !protected.contains(&tau) {
                out.push(CollapseStep {
                    free_face: s,
                    cofacet: tau,
                });
            }
        }
        out
    }

    fn remove(&mut self, s: Simplex) {
        self.cofaces.remove(&s);
        self.by_dim[s.len()] -= 1;
        self.hash ^= zobrist(s);
        for r in s.facets() {
            *self.cofaces.get_mut(&r).unwrap() -= 1;
        }
    }

    fn insert(&mut self, s: Simplex, count: u32) {
        self.cofaces.insert(s, count);
        self.by_dim[s.len()] += 1;
        self.hash ^= zobrist(s);
        for r in s.facets() {
            *self.cofaces.get_mut(&r).unwrap() += 1;
        }
    }

    fn apply(&mut self, step: CollapseStep) {
        self.remove(step.cofacet);
        self.remove(step.free_face);
    }

    fn undo(&mut self, step: CollapseStep) {
        self.insert(step.free_face, 0);
        self.insert(step.cofacet, 0);
    }

    fn face_count(&self) -> usize {
        self.cofaces.len()
    }

    fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.cofaces.iter().filter(|(_, &c)| c == 0).map(|(s, _)| *s))
    }
}

fn order_pairs(pairs: &mut [CollapseStep], strategy: Strategy) {
    match strategy {
        Strategy::DecreasingDimension => pairs.sort_by(|a, b| {
            b.cofacet
                .len()
                .cmp(&a.cofacet.len())
                .then(a.free_face.cmp(&b.free_face))
                .then(a.cofacet.cmp(&b.cofacet))
        }),
        Strategy::Lexicographic => pairs.sort_by(|a, b| a.free_face.cmp(&b.free_face).then(a.cofacet.cmp(&b.cofacet))),
    }
}

struct Walker {
    state: FaceState,
    protected: HashSet<Simplex>,
    goal: Goal,
    target_faces: usize,
    budget: SearchBudget,
    visited: HashSet<u64>,
    nodes: usize,
    path: Vec<CollapseStep>,
}

impl Walker {
    fn reached(&self) -> bool {
        match self.goal {
            // ∅ plus one vertex.
            Goal::SingleVertex => self.state.face_count() == 2,
            Goal::Subcomplex => self.state.face_count() == self.target_faces,
            Goal::Dimension(d) => self.state.top_dim() <= d,
        }
    }

    /// `Some(true)` found, `Some(false)` dead end, `None` out of budget.
    fn dfs(&mut self) -> Option<bool> {
        if self.reached() {
            return Some(true);
        }
        if self.nodes >= self.budget.max_nodes {
            return None;
        }
        self.nodes += 1;
        if !self.visited.insert(self.state.hash) {
            return Some(false);
        }
        let above = match self.goal {
            Goal::Dimension(d) => d + 1,
            _ => i32::MIN,
        };
        let mut pairs = self.state.free_pairs(&self.protected, above);
        order_pairs(&mut pairs, self.budget.strategy);
        for step in pairs {
            self.state.apply(step);
            self.path.push(step);
            match self.dfs() {
                Some(true) => return Some(true),
                Some(false) => {}
                None => {
                    self.state.undo(step);
                    self.path.pop();
                    return None;
                }
            }
            self.state.undo(step);
            self.path.pop();
        }
        Some(false)
    }
}

fn search(k: &SimplicialComplex, target: &SimplicialComplex, goal: Goal, budget: SearchBudget) -> Search {
    let protected: HashSet<Simplex> = match goal {
        Goal::Subcomplex => target.all_faces().into_iter().collect(),
        _ => HashSet::new(),
    };
    let mut walker = Walker {
        state: FaceState::new(k),
        target_faces: protected.len(),
        protected,
        goal,
        budget,
        visited: HashSet::new(),
        nodes: 0,
        path: Vec::new(),
    };
    match walker.dfs() {
        Some(true) => Search::Found(CollapseSequence {
            start: k.clone(),
            steps: walker.path,
            end: walker.state.to_complex(),
            subdivided: false,
        }),
        Some(false) => Search::Exhausted(walker.nodes),
        None => Search::OutOfBudget(walker.nodes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{letter_simplex as sx, letters as cx};
    use crate::homology::mod2_betti;

    fn budget() -> SearchBudget {
        SearchBudget::with_nodes(100_000)
    }

    #[test]
    fn free_face_examples() {
        assert_eq!(free_faces(&cx("ab")), vec![(sx("a"), sx("ab")), (sx("b"), sx("ab"))]);
        assert!(free_faces(&cx("ab bc ac")).is_empty());
        let mut got = free_faces(&cx("abc cd"));
        got.sort();
        let mut want = vec![
            (sx("d"), sx("cd")),
            (sx("ab"), sx("abc")),
            (sx("ac"), sx("abc")),
            (sx("bc"), sx("abc")),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn collapse_step_examples() {
        let step = |s: &str, t: &str| CollapseStep {
            free_face: sx(s),
            cofacet: sx(t),
        };
        assert_eq!(collapse_step(&cx("ab"), step("a", "ab")).unwrap(), cx("b"));
        assert_eq!(collapse_step(&cx("abc cd"), step("d", "cd")).unwrap(), cx("abc"));
        assert!(collapse_step(&cx("ab bc ac"), step("a", "ab")).is_err());
        assert!(collapse_step(&cx("abc"), step("a", "abc")).is_err());
    }

    #[test]
    fn collapsibility_examples() {
        let seq = is_collapsible(&cx("abc"), budget()).unwrap().yes().unwrap();
        assert_eq!(seq.steps.len(), 3);
        assert!(seq.verify());
        assert_eq!(seq.end.num_vertices(), 1);
        assert!(is_collapsible(&cx("ab bc ac"), budget()).unwrap().is_no());
        assert!(is_collapsible(&cx("abc cd"), budget()).unwrap().is_yes());
        assert!(is_collapsible(&SimplicialComplex::void(), budget()).is_err());
    }

    #[test]
    fn collapses_to_examples() {
        assert!(collapses_to(&cx("ab"), &cx("b"), budget()).unwrap().is_yes());
        let seq = collapses_to(&cx("abc cd"), &cx("abc"), budget()).unwrap().yes().unwrap();
        assert_eq!(seq.steps.len(), 1);
        assert!(collapses_to(&cx("ab bc ac"), &cx("a"), budget()).unwrap().is_no());
        assert!(collapses_to(&cx("ab"), &cx("c"), budget()).is_err());
    }

    #[test]
    fn spine_examples() {
        let s = spine(&cx("abc abd"), budget()).unwrap();
        assert!(s.verify());
        assert!(s.end.dim().unwrap() <= 1);
        let e = mod2_betti(&s.end).unwrap();
        assert!(e.iter().all(|&b| b == 0));
        assert!(spine(&cx("abc"), budget()).unwrap().end.dim().unwrap() < 2);
        assert_eq!(spine(&cx("abc cd"), budget()).unwrap().end.dim(), Some(1));
    }

    #[test]
    fn expansion_examples() {
        use crate::alexander::{dual, relative_dual};
        let k = cx("abc cd");
        let l = cx("abc");
        let kd = dual(&k).unwrap();
        let lt = relative_dual(&l, sx("d")).unwrap();
        let exp = expansion_check(&kd, &lt, budget()).unwrap().yes().unwrap();
        assert_eq!(exp.len(), 1);
        let same = expansion_check(&kd, &kd, budget()).unwrap().yes().unwrap();
        assert!(same.is_empty());
    }

    #[test]
    fn moebius_strip_is_an_exact_no() {
        let m = cx("abc bcd cde dea eab");
        assert!(is_collapsible(&m, budget()).unwrap().is_no());
    }

    #[test]
    fn barycentric_subdivision_of_triangle() {
        let sd = barycentric_subdivision(&cx("abc")).unwrap();
        assert_eq!(sd.facets().len(), 6);
        assert_eq!(sd.num_vertices(), 7);
    }

    #[test]
    fn out_of_budget_is_unknown() {
        let tight = SearchBudget::with_nodes(1);
        let k = cx("abcd");
        assert!(is_collapsible(&k, tight).unwrap().is_unknown());
    }

    #[test]
    fn exhausted_search_is_an_exact_no() {
        // A hexagon has no free faces at all.
        let k = cx("ab bc cd de ef fa");
        assert!(matches!(
            collapse_to_dimension(&k, 0, budget()).unwrap(),
            TriState::No(Obstruction::Stuck { .. })
        ));
    }
}
