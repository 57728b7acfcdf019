//! Pseudomanifold predicates and recursive recognition of combinatorial
//! and NH-manifolds, balls and spheres.
//!
//! Classification recurses through vertex links. A ball verdict carries a
//! collapse sequence, a sphere verdict carries a decomposition `S = B + L`
//! and negative verdicts carry an obstruction. Anything the budget cuts
//! short is reported as unknown.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::collapse::{is_collapsible, CollapseSequence, SearchBudget};
use crate::homology::{betti, BettiProfile};
use crate::{Error, Obstruction, Result, Simplex, SimplicialComplex, TriState, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    CombinatorialBall,
    CombinatorialSphere,
    NHBall,
    NHSphere,
    /// An NH-manifold that is neither an NH-ball nor an NH-sphere.
    NHManifoldOnly,
    NotNHManifold,
    Unknown,
}

impl Kind {
    pub fn is_ball(self) -> bool {
        matches!(self, Kind::CombinatorialBall | Kind::NHBall)
    }

    pub fn is_sphere(self) -> bool {
        matches!(self, Kind::CombinatorialSphere | Kind::NHSphere)
    }

    pub fn is_nh_manifold(self) -> bool {
        self.is_ball() || self.is_sphere() || self == Kind::NHManifoldOnly
    }
}

/// `S = B + L` with `B ∩ L = ∂L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub b: SimplicialComplex,
    pub l: SimplicialComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    Collapse(CollapseSequence),
    Decomposition(Decomposition),
    Obstruction(Obstruction),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub kind: Kind,
    pub dim: i32,
    /// Dimension of `L` in the decomposition; set exactly for sphere kinds.
    pub homotopy_dim: Option<i32>,
    pub witness: Witness,
}

impl Classification {
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match &self.witness {
            Witness::Decomposition(d) => Some(d),
            _ => None,
        }
    }

    pub fn collapse(&self) -> Option<&CollapseSequence> {
        match &self.witness {
            Witness::Collapse(c) => Some(c),
            _ => None,
        }
    }

    fn unknown(dim: i32, reason: String) -> Self {
        Classification {
            kind: Kind::Unknown,
            dim,
            homotopy_dim: None,
            witness: Witness::Unknown(reason),
        }
    }

    fn obstructed(kind: Kind, dim: i32, o: Obstruction) -> Self {
        Classification {
            kind,
            dim,
            homotopy_dim: None,
            witness: Witness::Obstruction(o),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryData {
    pub boundary: SimplicialComplex,
    /// Faces whose links are NH-balls. Includes ∅ when the complex itself
    /// is an NH-ball.
    pub pseudoboundary: BTreeSet<Simplex>,
    /// Faces whose links are NH-spheres.
    pub interior: BTreeSet<Simplex>,
}

/// Separate verdicts for "combinatorial ball" and "combinatorial sphere".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallSphere {
    pub ball: TriState<CollapseSequence>,
    pub sphere: TriState<Decomposition>,
}

enum LinkCheck {
    Fine,
    Bad(Vertex, Kind),
    Unknown(Vertex, String),
}

/// Classifier with a memo shared by all recursive calls.
pub struct Recognizer {
    budget: SearchBudget,
    max_candidates: usize,
    memo: HashMap<SimplicialComplex, Classification>,
}

impl Recognizer {
    pub fn new(budget: SearchBudget) -> Self {
        Recognizer {
            budget,
            max_candidates: 20_000,
            memo: HashMap::new(),
        }
    }

    /// Caps the number of candidate `L` examined per sphere search.
    pub fn with_max_candidates(mut self, n: usize) -> Self {
        self.max_candidates = n.max(1);
        self
    }

    pub fn classify(&mut self, m: &SimplicialComplex) -> Result<Classification> {
        if m.is_void() {
            return Err(Error::VoidComplex);
        }
        if let Some(c) = self.memo.get(m) {
            return Ok(c.clone());
        }
        let c = self.classify_fresh(m)?;
        self.memo.insert(m.clone(), c.clone());
        Ok(c)
    }

    fn classify_fresh(&mut self, m: &SimplicialComplex) -> Result<Classification> {
        let d = m.dim().expect("not void");
        if m.is_empty_face() {
            return Ok(Classification {
                kind: Kind::CombinatorialSphere,
                dim: -1,
                homotopy_dim: Some(-1),
                witness: Witness::Decomposition(Decomposition {
                    b: SimplicialComplex::void(),
                    l: SimplicialComplex::void(),
                }),
            });
        }
        if d == 0 {
            return self.classify_points(m);
        }
        match self.check_vertex_links(m, |k| k.is_ball() || k.is_sphere())? {
            LinkCheck::Fine => {}
            LinkCheck::Bad(vertex, kind) => {
                return Ok(Classification::obstructed(
                    Kind::NotNHManifold,
                    d,
                    Obstruction::BadLink {
                        vertex,
                        reason: format!("{kind:?}"),
                    },
                ))
            }
            LinkCheck::Unknown(v, why) => {
                return Ok(Classification::unknown(d, format!("link of {v}: {why}")));
            }
        }
        let homogeneous = m.is_homogeneous();
        let profile = betti(m)?;
        if profile.is_acyclic() {
            return Ok(match is_collapsible(m, self.budget)? {
                TriState::Yes(seq) => Classification {
                    kind: if homogeneous { Kind::CombinatorialBall } else { Kind::NHBall },
                    dim: d,
                    homotopy_dim: None,
                    witness: Witness::Collapse(seq),
                },
                TriState::No(o) => Classification::obstructed(Kind::NHManifoldOnly, d, o),
                TriState::Unknown(why) => Classification::unknown(d, why),
            });
        }
        let Some(k) = profile.sphere_dim().filter(|&k| k >= 0) else {
            return Ok(Classification::obstructed(Kind::NHManifoldOnly, d, Obstruction::Homology(profile)));
        };
        Ok(match self.find_decomposition(m, k)? {
            TriState::Yes(dec) => Classification {
                kind: if homogeneous { Kind::CombinatorialSphere } else { Kind::NHSphere },
                dim: d,
                homotopy_dim: Some(k),
                witness: Witness::Decomposition(dec),
            },
            TriState::No(o) => Classification::obstructed(Kind::NHManifoldOnly, d, o),
            TriState::Unknown(why) => Classification::unknown(d, why),
        })
    }

    /// Zero-dimensional complexes: one point is a ball, two points a
    /// sphere, more points only a manifold.
    fn classify_points(&mut self, m: &SimplicialComplex) -> Result<Classification> {
        let pts = m.facets();
        Ok(match pts.len() {
            1 => Classification {
                kind: Kind::CombinatorialBall,
                dim: 0,
                homotopy_dim: None,
                witness: Witness::Collapse(CollapseSequence {
                    start: m.clone(),
                    steps: Vec::new(),
                    end: m.clone(),
                    subdivided: false,
                }),
            },
            2 => Classification {
                kind: Kind::CombinatorialSphere,
                dim: 0,
                homotopy_dim: Some(0),
                witness: Witness::Decomposition(Decomposition {
                    b: SimplicialComplex::simplex(pts[0]),
                    l: SimplicialComplex::simplex(pts[1]),
                }),
            },
            _ => Classification::obstructed(Kind::NHManifoldOnly, 0, Obstruction::Homology(betti(m)?)),
        })
    }

    fn check_vertex_links(&mut self, m: &SimplicialComplex, accept: impl Fn(Kind) -> bool) -> Result<LinkCheck> {
        let mut pending = None;
        for v in m.vertices() {
            let link = m.link_unchecked(Simplex::vertex(v));
            let c = self.classify(&link)?;
            if c.kind == Kind::Unknown {
                if pending.is_none() {
                    let Witness::Unknown(why) = c.witness else { unreachable!() };
                    pending = Some((v, why));
                }
            } else if !accept(c.kind) {
                return Ok(LinkCheck::Bad(v, c.kind));
            }
        }
        Ok(match pending {
            Some((v, why)) => LinkCheck::Unknown(v, why),
            None => LinkCheck::Fine,
        })
    }

    /// Searches connected sets of principal `k`-simplices, smallest first,
    /// for an `L` with `B ∩ L = ∂L`, `L` a combinatorial ball and `B` an
    /// NH-ball of full dimension.
    fn find_decomposition(&mut self, s: &SimplicialComplex, k: i32) -> Result<TriState<Decomposition>> {
        let d = s.dim().expect("not void");
        let facets = s.facets();
        let pool: Vec<usize> = (0..facets.len()).filter(|&i| facets[i].dim() == k).collect();
        // Principal k-simplices sharing a (k−1)-face.
        let mut neighbours: HashMap<usize, Vec<usize>> = HashMap::new();
        for (x, &i) in pool.iter().enumerate() {
            for &j in &pool[x + 1..] {
                if facets[i].intersection(facets[j]).dim() == k - 1 {
                    neighbours.entry(i).or_default().push(j);
                    neighbours.entry(j).or_default().push(i);
                }
            }
        }
        let mut level: Vec<Vec<usize>> = pool.iter().map(|&i| vec![i]).collect();
        let mut examined = 0usize;
        let mut unknown: Option<String> = None;
        while !level.is_empty() {
            for cand in &level {
                examined += 1;
                if examined > self.max_candidates {
                    return Ok(TriState::Unknown(format!(
                        "decomposition search stopped after {} candidates",
                        self.max_candidates
                    )));
                }
                match self.try_candidate(s, d, cand)? {
                    TriState::Yes(dec) => return Ok(TriState::Yes(dec)),
                    TriState::Unknown(why) => {
                        unknown.get_or_insert(why);
                    }
                    TriState::No(_) => {}
                }
            }
            if k == 0 {
                break;
            }
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut next = Vec::new();
            for cand in &level {
                for &i in cand {
                    for &j in neighbours.get(&i).map(Vec::as_slice).unwrap_or(&[]) {
                        if cand.contains(&j) {
                            continue;
                        }
                        let mut grown = cand.clone();
                        grown.push(j);
                        grown.sort_unstable();
                        if seen.insert(grown.clone()) {
                            next.push(grown);
                        }
                    }
                }
            }
            level = next;
        }
        Ok(match unknown {
            Some(why) => TriState::Unknown(why),
            None => TriState::No(Obstruction::NoDecomposition),
        })
    }

    fn try_candidate(&mut self, s: &SimplicialComplex, d: i32, cand: &[usize]) -> Result<TriState<Decomposition>> {
        let facets = s.facets();
        let l = SimplicialComplex::from_facets(cand.iter().map(|&i| facets[i]));
        let b = SimplicialComplex::from_facets(
            (0..facets.len()).filter(|i| !cand.contains(i)).map(|i| facets[i]),
        );
        let reject = || Ok(TriState::No(Obstruction::NoDecomposition));
        if b.dim() != Some(d) || l.reduced_euler_characteristic() != 0 || b.reduced_euler_characteristic() != 0 {
            return reject();
        }
        let Some(boundary) = ball_boundary(&l) else { return reject() };
        if b.intersection(&l) != boundary {
            return reject();
        }
        let lc = self.classify(&l)?;
        if lc.kind == Kind::Unknown {
            return Ok(TriState::Unknown("a candidate L could not be classified".into()));
        }
        if lc.kind != Kind::CombinatorialBall {
            return reject();
        }
        let bc = self.classify(&b)?;
        if bc.kind == Kind::Unknown {
            return Ok(TriState::Unknown("a candidate B could not be classified".into()));
        }
        if !bc.kind.is_ball() {
            return reject();
        }
        Ok(TriState::Yes(Decomposition { b, l }))
    }
}

/// Boundary of a homogeneous complex that may be a ball: the complex
/// generated by ridges in exactly one facet, `{∅}` for a single point.
/// `None` when some ridge lies in more than two facets or nothing is free.
fn ball_boundary(l: &SimplicialComplex) -> Option<SimplicialComplex> {
    if l.dim() == Some(0) {
        return (l.facets().len() == 1).then(SimplicialComplex::empty_face);
    }
    let degrees: BTreeMap<Simplex, usize> = l.ridge_degrees();
    if degrees.values().any(|&c| c > 2) {
        return None;
    }
    let free: Vec<Simplex> = degrees.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
    (!free.is_empty()).then(|| SimplicialComplex::from_facets(free))
}

/// Checks a decomposition without any search: `B + L = S`,
/// `B ∩ L = ∂L`, both parts top generated in `S`, `L` homogeneous.
pub fn verify_decomposition(s: &SimplicialComplex, dec: &Decomposition) -> bool {
    if s.is_empty_face() {
        return dec.b.is_void() && dec.l.is_void();
    }
    let top = |x: &SimplicialComplex| x.top_generated_in(s).unwrap_or(false);
    dec.b.union(&dec.l) == *s
        && dec.l.is_homogeneous()
        && top(&dec.b)
        && top(&dec.l)
        && ball_boundary(&dec.l).is_some_and(|bd| dec.b.intersection(&dec.l) == bd)
}

/// Every ridge lies in exactly two facets, or at most two when
/// `with_boundary` is set.
pub fn is_weak_pseudomanifold(k: &SimplicialComplex, with_boundary: bool) -> Result<bool> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if !k.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(k.ridge_degrees()
        .values()
        .all(|&c| if with_boundary { c <= 2 } else { c == 2 }))
}

/// Weak pseudomanifold (with boundary allowed) that is strongly connected.
pub fn is_pseudomanifold(k: &SimplicialComplex) -> Result<bool> {
    Ok(is_weak_pseudomanifold(k, true)? && k.is_strongly_connected())
}

/// Ridge links are points or NH-spheres of homotopy dimension 0, and the
/// principal simplices are connected through adjacency.
///
/// Fails with [`Error::UnclassifiedLink`] when a ridge link cannot be
/// decided within the budget.
pub fn is_nh_pseudomanifold(m: &SimplicialComplex, budget: SearchBudget) -> Result<bool> {
    if m.is_void() {
        return Err(Error::VoidComplex);
    }
    if !m.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut rec = Recognizer::new(budget);
    let ridges: BTreeSet<Simplex> = m.facets().iter().flat_map(|f| f.facets()).collect();
    for sigma in ridges {
        let link = m.link_unchecked(sigma);
        if link.dim() == Some(0) && link.facets().len() == 1 {
            continue;
        }
        let c = rec.classify(&link)?;
        if c.kind == Kind::Unknown {
            return Err(Error::UnclassifiedLink { simplex: sigma });
        }
        if !(c.kind.is_sphere() && c.homotopy_dim == Some(0)) {
            return Ok(false);
        }
    }
    Ok(m.is_strongly_connected())
}

/// Homogeneous, with every vertex link a combinatorial ball or sphere.
pub fn is_combinatorial_manifold(k: &SimplicialComplex, budget: SearchBudget) -> Result<TriState<()>> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if !k.is_homogeneous() {
        return Ok(TriState::No(Obstruction::NotHomogeneous));
    }
    let mut rec = Recognizer::new(budget);
    link_verdict(rec.check_vertex_links(k, |c| {
        matches!(c, Kind::CombinatorialBall | Kind::CombinatorialSphere)
    })?)
}

/// Every vertex link is an NH-ball or an NH-sphere.
pub fn is_nh_manifold(m: &SimplicialComplex, budget: SearchBudget) -> Result<TriState<()>> {
    if m.is_void() {
        return Err(Error::VoidComplex);
    }
    if m.dim() == Some(0) || m.is_empty_face() {
        return Ok(TriState::Yes(()));
    }
    let mut rec = Recognizer::new(budget);
    link_verdict(rec.check_vertex_links(m, |c| c.is_ball() || c.is_sphere())?)
}

fn link_verdict(check: LinkCheck) -> Result<TriState<()>> {
    Ok(match check {
        LinkCheck::Fine => TriState::Yes(()),
        LinkCheck::Bad(vertex, kind) => TriState::No(Obstruction::BadLink {
            vertex,
            reason: format!("{kind:?}"),
        }),
        LinkCheck::Unknown(v, why) => TriState::Unknown(format!("link of {v}: {why}")),
    })
}

/// Full NH classification with its witness.
pub fn classify_nh(m: &SimplicialComplex, budget: SearchBudget) -> Result<Classification> {
    Recognizer::new(budget).classify(m)
}

/// Separate ball and sphere verdicts for a homogeneous complex.
pub fn classify_ball_sphere(k: &SimplicialComplex, budget: SearchBudget) -> Result<BallSphere> {
    if k.is_void() {
        return Err(Error::VoidComplex);
    }
    if !k.is_homogeneous() {
        return Ok(BallSphere {
            ball: TriState::No(Obstruction::NotHomogeneous),
            sphere: TriState::No(Obstruction::NotHomogeneous),
        });
    }
    let d = k.dim().expect("not void");
    let profile = betti(k)?;
    let ball_possible = profile.is_acyclic();
    let sphere_possible = profile.sphere_dim() == Some(d) || k.is_empty_face();
    if !ball_possible && !sphere_possible {
        return Ok(BallSphere {
            ball: TriState::No(Obstruction::Homology(profile.clone())),
            sphere: TriState::No(Obstruction::Homology(profile)),
        });
    }
    let c = classify_nh(k, budget)?;
    let ball = match (c.kind, c.collapse()) {
        (Kind::CombinatorialBall, Some(seq)) => TriState::Yes(seq.clone()),
        _ => negative(&c, ball_possible, &profile),
    };
    let sphere = match (c.kind, c.decomposition()) {
        (Kind::CombinatorialSphere, Some(dec)) => TriState::Yes(dec.clone()),
        _ => negative(&c, sphere_possible, &profile),
    };
    Ok(BallSphere { ball, sphere })
}

fn negative<T>(c: &Classification, possible: bool, profile: &BettiProfile) -> TriState<T> {
    match (&c.witness, possible) {
        (Witness::Unknown(why), true) => TriState::Unknown(why.clone()),
        (Witness::Obstruction(o), true) => TriState::No(o.clone()),
        _ => TriState::No(Obstruction::Homology(profile.clone())),
    }
}

/// Pseudoboundary, interior and boundary of an NH-manifold.
///
/// ∅ counts as a face whose link is the whole complex. A face whose link
/// cannot be classified fails with [`Error::UnclassifiedLink`].
pub fn boundary_data(m: &SimplicialComplex, budget: SearchBudget) -> Result<BoundaryData> {
    let mut rec = Recognizer::new(budget);
    let whole = rec.classify(m)?;
    if whole.kind == Kind::Unknown {
        return Err(Error::UnclassifiedLink { simplex: Simplex::EMPTY });
    }
    if !whole.kind.is_nh_manifold() {
        return Err(Error::InvalidArgument("not an NH-manifold".into()));
    }
    let mut pseudoboundary = BTreeSet::new();
    let mut interior = BTreeSet::new();
    for sigma in m.all_faces() {
        let kind = if sigma.is_empty() {
            whole.kind
        } else {
            rec.classify(&m.link_unchecked(sigma))?.kind
        };
        if kind.is_ball() {
            pseudoboundary.insert(sigma);
        } else if kind.is_sphere() {
            interior.insert(sigma);
        } else if !sigma.is_empty() {
            return Err(Error::UnclassifiedLink { simplex: sigma });
        }
    }
    let boundary = SimplicialComplex::from_facets(pseudoboundary.iter().copied());
    Ok(BoundaryData {
        boundary,
        pseudoboundary,
        interior,
    })
}
