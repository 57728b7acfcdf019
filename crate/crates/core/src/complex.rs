//! Facet-based simplicial complexes and the elementary constructions on them.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::simplex::fresh_vertices;
use crate::{Error, GroundSet, Result, Simplex, Vertex};

/// A finite simplicial complex given by its maximal faces.
///
/// The facet list is kept sorted and free of containments, so two complexes
/// are equal exactly when they have the same faces. The void complex has no
/// facets at all; `{∅}` has the single facet ∅.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn void() -> Self {
        SimplicialComplex { facets: Vec::new() }
    }

    /// `{∅}`, the (−1)-sphere.
    pub fn empty_face() -> Self {
        SimplicialComplex {
            facets: vec![Simplex::EMPTY],
        }
    }

    /// The full simplex `Δ(σ)`. `Δ(∅) = {∅}`.
    pub fn simplex(sigma: Simplex) -> Self {
        SimplicialComplex {
            facets: vec![sigma],
        }
    }

    /// The boundary `∂Δ(σ)`: all proper faces of σ. `∂Δ(v) = {∅}` and
    /// `∂Δ(∅)` is void.
    pub fn boundary_of(sigma: Simplex) -> Self {
        Self::from_facets(sigma.facets())
    }

    /// Builds the complex generated by `generators`. Non-maximal and repeated
    /// entries are dropped. An empty iterator gives the void complex.
    pub fn from_facets<I: IntoIterator<Item = Simplex>>(generators: I) -> Self {
        let mut all: Vec<Simplex> = generators.into_iter().collect();
        // Larger simplices first so containment only needs a backward scan.
        all.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        all.dedup();
        let mut kept: Vec<Simplex> = Vec::with_capacity(all.len());
        for s in all {
            if !kept.iter().any(|k| s.is_face_of(*k)) {
                kept.push(s);
            }
        }
        kept.sort_unstable();
        SimplicialComplex { facets: kept }
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// True for `{∅}`.
    pub fn is_empty_face(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// True if the complex is a single full simplex (including `{∅} = Δ(∅)`).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    /// `V_K`, the union of the facets.
    pub fn vertex_set(&self) -> Simplex {
        self.facets
            .iter()
            .fold(Simplex::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        self.vertex_set().vertices()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_set().len()
    }

    /// Dimension; `None` for the void complex, −1 for `{∅}`.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.dim()).max()
    }

    pub fn contains(&self, sigma: Simplex) -> bool {
        self.facets.iter().any(|f| sigma.is_face_of(*f))
    }

    pub fn is_facet(&self, sigma: Simplex) -> bool {
        self.facets.binary_search(&sigma).is_ok()
    }

    /// Whether every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(*f))
    }

    /// All faces, including ∅ when the complex is not void, in
    /// lexicographic order.
    pub fn all_faces(&self) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                out.insert(s);
            }
        }
        out
    }

    pub fn num_faces(&self) -> usize {
        let mut seen = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                seen.insert(s);
            }
        }
        seen.len()
    }

    /// The `q`-dimensional faces in lexicographic order.
    pub fn faces(&self, q: i32) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        if q < -1 {
            return out;
        }
        let size = (q + 1) as usize;
        for f in &self.facets {
            if f.len() < size {
                continue;
            }
            for s in f.subsets() {
                if s.len() == size {
                    out.insert(s);
                }
            }
        }
        out
    }

    /// Face numbers `f_{-1}, f_0, …, f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let Some(d) = self.dim() else {
            return Vec::new();
        };
        let mut counts = vec![0usize; (d + 2) as usize];
        for s in self.all_faces() {
            counts[s.len()] += 1;
        }
        counts
    }

    /// Euler characteristic of the reduced chain complex, `Σ (−1)^q f_q` for
    /// `q ≥ −1`. Zero for acyclic complexes.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum()
    }

    /// `K + L`.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().chain(other.facets.iter()).copied())
    }

    /// `K ∩ L` as complexes. Two non-void complexes always share ∅.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut gens = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                gens.push(a.intersection(*b));
            }
        }
        Self::from_facets(gens)
    }

    /// The join `K ∗ L` on disjoint vertex sets. `K ∗ {∅} = K` and
    /// `K ∗ ∅ = ∅`.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let overlap = self.vertex_set().intersection(other.vertex_set());
        if !overlap.is_empty() {
            return Err(Error::Overlap(overlap));
        }
        let mut gens = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                gens.push(a.union(*b));
            }
        }
        Ok(Self::from_facets(gens))
    }

    /// `σ ∗ K` for a simplex σ disjoint from `V_K`.
    pub fn cone(&self, apex: Simplex) -> Result<SimplicialComplex> {
        SimplicialComplex::simplex(apex).join(self)
    }

    /// `lk(σ, K)`. `lk(∅, K) = K`.
    pub fn link(&self, sigma: Simplex) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        Ok(self.link_unchecked(sigma))
    }

    /// Link without the membership check: void when σ is not a face.
    pub fn link_unchecked(&self, sigma: Simplex) -> SimplicialComplex {
        Self::from_facets(
            self.facets
                .iter()
                .filter(|f| sigma.is_face_of(**f))
                .map(|f| f.difference(sigma)),
        )
    }

    /// Closed star `st(σ, K) = σ ∗ lk(σ, K)`.
    pub fn star(&self, sigma: Simplex) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        Ok(Self::from_facets(
            self.facets.iter().filter(|f| sigma.is_face_of(**f)).copied(),
        ))
    }

    /// Deletion `K − v`: the closure of the simplices not containing `v`.
    pub fn deletion(&self, v: Vertex) -> Result<SimplicialComplex> {
        if !self.vertex_set().contains(v) {
            return Err(Error::NotAVertex(v));
        }
        Ok(self.deletion_unchecked(v))
    }

    /// Deletion that returns the complex unchanged when `v ∉ V_K`.
    pub fn deletion_unchecked(&self, v: Vertex) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().map(|f| f.without(v)))
    }

    /// Removes a set of simplices together with all their cofaces.
    pub fn remove_open_stars(&self, simplices: &[Simplex]) -> SimplicialComplex {
        let mut gens = Vec::new();
        for &f in &self.facets {
            let hits: Vec<Simplex> = simplices.iter().copied().filter(|s| s.is_face_of(f)).collect();
            if hits.is_empty() {
                gens.push(f);
                continue;
            }
            // Faces of f avoiding every hit simplex.
            for s in f.subsets() {
                if hits.iter().all(|h| !h.is_face_of(s)) {
                    gens.push(s);
                }
            }
        }
        Self::from_facets(gens)
    }

    /// `t`-fold suspension `∂Δ^t ∗ K` on `t + 1` fresh vertices.
    /// `t = 0` returns `K` and the suspension of the void complex is void.
    pub fn suspension(&self, t: usize) -> Result<SimplicialComplex> {
        if t == 0 {
            return Ok(self.clone());
        }
        let apexes = fresh_vertices(self.vertex_set(), t + 1)?;
        SimplicialComplex::boundary_of(apexes).join(self)
    }

    /// Subcomplex generated by the faces of dimension ≤ `q`.
    pub fn skeleton(&self, q: i32) -> SimplicialComplex {
        let mut gens: Vec<Simplex> = Vec::new();
        for f in &self.facets {
            if f.dim() <= q {
                gens.push(*f);
            } else {
                gens.extend(f.subsets().filter(|s| s.dim() == q));
            }
        }
        Self::from_facets(gens)
    }

    /// Subcomplex generated by the facets of dimension exactly `q`.
    pub fn pure_part(&self, q: i32) -> SimplicialComplex {
        Self::from_facets(self.facets.iter().filter(|f| f.dim() == q).copied())
    }

    /// Whether all facets have the same dimension.
    pub fn is_homogeneous(&self) -> bool {
        match self.facets.first() {
            None => true,
            Some(first) => self.facets.iter().all(|f| f.len() == first.len()),
        }
    }

    /// `L` is top generated in `K`: every facet of `L` is a facet of `K`.
    pub fn top_generated_in(&self, ambient: &SimplicialComplex) -> Result<bool> {
        if !self.is_subcomplex_of(ambient) {
            return Err(Error::NotASubcomplex);
        }
        Ok(self.facets.iter().all(|f| ambient.is_facet(*f)))
    }

    /// Connected components as vertex sets. `{∅}` has none.
    pub fn components(&self) -> Vec<Simplex> {
        let mut comps: Vec<Simplex> = Vec::new();
        for f in &self.facets {
            if f.is_empty() {
                continue;
            }
            let mut merged = *f;
            comps.retain(|c| {
                if c.is_disjoint(merged) {
                    true
                } else {
                    merged = merged.union(*c);
                    false
                }
            });
            comps.push(merged);
        }
        comps.sort();
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Index pairs of adjacent facets: their intersection is an immediate
    /// face of one of them.
    pub fn facet_adjacency(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.facets.len() {
            for j in (i + 1)..self.facets.len() {
                let (a, b) = (self.facets[i], self.facets[j]);
                let common = a.intersection(b).len();
                if common + 1 == a.len() || common + 1 == b.len() {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// Whether the facets form one class under the adjacency relation.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.facets.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (i, j) in self.facet_adjacency() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// Ridges (immediate faces of facets) with the number of facets
    /// containing each.
    pub fn ridge_degrees(&self) -> BTreeMap<Simplex, usize> {
        let mut ridges: BTreeMap<Simplex, usize> = BTreeMap::new();
        for f in &self.facets {
            for r in f.facets() {
                ridges.entry(r).or_insert(0);
            }
        }
        for (r, count) in ridges.iter_mut() {
            *count = self.facets.iter().filter(|f| r.is_face_of(**f)).count();
        }
        ridges
    }

    pub fn structure_report(&self) -> Result<StructureReport> {
        let dim = self.dim().ok_or(Error::VoidComplex)?;
        let ridge_degrees = self.ridge_degrees();
        Ok(StructureReport {
            dim,
            principal: self.facets.clone(),
            ridges: ridge_degrees.keys().copied().collect(),
            ridge_degrees: ridge_degrees.into_iter().collect(),
            homogeneous: self.is_homogeneous(),
            adjacency: self.facet_adjacency(),
            strongly_connected: self.is_strongly_connected(),
        })
    }

    /// Relabels vertices through `map`, which must be injective on `V_K`.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        Self::from_facets(
            self.facets
                .iter()
                .map(|f| f.vertices().map(&map).collect::<Simplex>()),
        )
    }

    /// Relabels the vertices onto `0..n` preserving order.
    pub fn compacted(&self) -> SimplicialComplex {
        let order: Vec<Vertex> = self.vertices().collect();
        self.relabel(|v| Vertex(order.binary_search(&v).unwrap() as u8))
    }

    /// Whether every subset of `ground` with at most three vertices is a
    /// face. Such a complex contains the full 2-skeleton of `Δ(ground)` and
    /// is therefore simply connected.
    pub fn contains_full_2_skeleton(&self, ground: GroundSet) -> bool {
        let verts: Vec<Vertex> = ground.simplex().vertices().collect();
        if verts.len() < 3 {
            return self.contains(ground.simplex());
        }
        for i in 0..verts.len() {
            for j in (i + 1)..verts.len() {
                for k in (j + 1)..verts.len() {
                    if !self.contains(Simplex::from_vertices([verts[i], verts[j], verts[k]])) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Compact replayable text form: facets as dot-separated vertex indices,
    /// `void` and `{∅}` spelled out.
    pub fn fingerprint(&self) -> String {
        if self.is_void() {
            return "void".into();
        }
        if self.is_empty_face() {
            return "{∅}".into();
        }
        self.facets
            .iter()
            .map(|f| {
                f.vertices()
                    .map(|v| v.0.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`SimplicialComplex::fingerprint`].
    pub fn from_fingerprint(text: &str) -> Result<SimplicialComplex> {
        let text = text.trim();
        if text == "void" {
            return Ok(Self::void());
        }
        if text == "{∅}" {
            return Ok(Self::empty_face());
        }
        let mut gens = Vec::new();
        for word in text.split_whitespace() {
            let idx: std::result::Result<Vec<usize>, _> =
                word.split('.').map(|p| p.parse::<usize>()).collect();
            let idx = idx.map_err(|e| Error::InvalidArgument(format!("bad fingerprint `{word}`: {e}")))?;
            gens.push(Simplex::from_indices(idx)?);
        }
        Ok(Self::from_facets(gens))
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, s) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub dim: i32,
    pub principal: Vec<Simplex>,
    pub ridges: Vec<Simplex>,
    pub ridge_degrees: Vec<(Simplex, usize)>,
    pub homogeneous: bool,
    pub adjacency: Vec<(usize, usize)>,
    pub strongly_connected: bool,
}

/// Test helper: parses whitespace-separated facets written with single
/// letters `a..z` mapped to vertices `0..25`. `"∅"` alone is `{∅}`, an empty
/// string is the void complex.
#[doc(hidden)]
pub fn letters(text: &str) -> SimplicialComplex {
    let text = text.trim();
    if text == "∅" {
        return SimplicialComplex::empty_face();
    }
    SimplicialComplex::from_facets(text.split_whitespace().map(letter_simplex))
}

#[doc(hidden)]
pub fn letter_simplex(word: &str) -> Simplex {
    if word == "∅" {
        return Simplex::EMPTY;
    }
    word.chars()
        .map(|c| {
            assert!(c.is_ascii_lowercase(), "bad letter {c}");
            Vertex(c as u8 - b'a')
        })
        .collect()
}
