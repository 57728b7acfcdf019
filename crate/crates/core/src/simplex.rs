use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of addressable vertices. Simplices are bitmasks over this range.
pub const MAX_VERTICES: usize = 128;

/// First index of the reserved namespace for fresh vertices (cone apices,
/// suspension points, the extra simplices of relative duals).
pub const FRESH_BASE: u8 = 96;

/// A vertex label. Labels are totally ordered by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub u8);

impl Vertex {
    pub fn new(index: usize) -> Result<Self> {
        if index >= MAX_VERTICES {
            return Err(Error::VertexCapacity {
                capacity: MAX_VERTICES,
            });
        }
        Ok(Vertex(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_fresh(self) -> bool {
        self.0 >= FRESH_BASE
    }

    /// Default textual label: `v00`..`v95` for ordinary vertices and
    /// `w00`.. for the reserved namespace. Zero padding keeps the string
    /// order equal to the index order.
    pub fn default_label(self) -> String {
        if self.is_fresh() {
            format!("w{:02}", self.0 - FRESH_BASE)
        } else {
            format!("v{:02}", self.0)
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.default_label())
    }
}

/// A finite set of vertices, possibly empty (the empty simplex ∅).
///
/// Ordering is lexicographic on the increasing vertex lists, so `a < ab < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Simplex(u128);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub fn from_bits(bits: u128) -> Self {
        Simplex(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(1u128 << v.0)
    }

    /// Simplex on the vertex indices `0..n`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            Simplex(u128::MAX)
        } else {
            Simplex((1u128 << n) - 1)
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        Simplex(vertices.into_iter().fold(0, |acc, v| acc | (1u128 << v.0)))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u128;
        for i in indices {
            bits |= 1u128 << Vertex::new(i)?.0;
        }
        Ok(Simplex(bits))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// `|σ| - 1`; the empty simplex has dimension −1.
    pub fn dim(self) -> i32 {
        self.len() as i32 - 1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 & (1u128 << v.0) != 0
    }

    pub fn is_face_of(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Simplex) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn intersection(self, other: Simplex) -> Simplex {
        Simplex(self.0 & other.0)
    }

    pub fn difference(self, other: Simplex) -> Simplex {
        Simplex(self.0 & !other.0)
    }

    pub fn with(self, v: Vertex) -> Simplex {
        Simplex(self.0 | (1u128 << v.0))
    }

    pub fn without(self, v: Vertex) -> Simplex {
        Simplex(self.0 & !(1u128 << v.0))
    }

    pub fn min_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| Vertex(self.0.trailing_zeros() as u8))
    }

    pub fn max_vertex(self) -> Option<Vertex> {
        (self.0 != 0).then(|| Vertex(127 - self.0.leading_zeros() as u8))
    }

    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// The codimension-one faces, in order of the omitted vertex.
    pub fn facets(self) -> impl Iterator<Item = Simplex> {
        self.vertices().map(move |v| self.without(v))
    }

    /// Every face of this simplex, including ∅ and the simplex itself.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(0),
        }
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let low = diff.trailing_zeros();
        let above = if low == 127 { 0 } else { u128::MAX << (low + 1) };
        // The side owning the lowest differing vertex is smaller unless the
        // other side ends right there.
        let (owner, rest) = if self.0 & (1u128 << low) != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if rest & above != 0 {
            owner
        } else {
            owner.reverse()
        }
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Vertex> for Simplex {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Simplex::from_vertices(iter)
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices().map(|v| v.0))
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<u8>::deserialize(d)?;
        Simplex::from_indices(raw.into_iter().map(usize::from)).map_err(serde::de::Error::custom)
    }
}

pub struct Vertices(u128);

impl Iterator for Vertices {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Vertex(v as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    full: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = Simplex;

    fn next(&mut self) -> Option<Simplex> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            Some(cur.wrapping_sub(self.full) & self.full)
        };
        Some(Simplex(cur))
    }
}

/// An ordered vertex set used as the ambient ground of a dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroundSet(pub Simplex);

impl GroundSet {
    pub fn new(vertices: Simplex) -> Self {
        GroundSet(vertices)
    }

    pub fn simplex(self) -> Simplex {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

impl From<Simplex> for GroundSet {
    fn from(s: Simplex) -> Self {
        GroundSet(s)
    }
}

/// Pick `count` vertices outside `avoid`, preferring the reserved namespace.
pub(crate) fn fresh_vertices(avoid: Simplex, count: usize) -> Result<Simplex> {
    let mut out = Simplex::EMPTY;
    let order = (FRESH_BASE as usize..MAX_VERTICES).chain((0..FRESH_BASE as usize).rev());
    for i in order {
        if out.len() == count {
            break;
        }
        let v = Vertex(i as u8);
        if !avoid.contains(v) {
            out = out.with(v);
        }
    }
    if out.len() < count {
        return Err(Error::VertexCapacity {
            capacity: MAX_VERTICES,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(idx: &[usize]) -> Simplex {
        Simplex::from_indices(idx.iter().copied()).unwrap()
    }

    fn lex(a: Simplex) -> Vec<u8> {
        a.vertices().map(|v| v.0).collect()
    }

    #[test]
    fn ordering_matches_vertex_list_order() {
        let all: Vec<Simplex> = Simplex::range(5).subsets().collect();
        for &a in &all {
            for &b in &all {
                assert_eq!(a.cmp(&b), lex(a).cmp(&lex(b)), "{a} vs {b}");
            }
        }
        assert!(s(&[0]) < s(&[0, 1]) && s(&[0, 1]) < s(&[1]));
        assert!(s(&[126, 127]) > s(&[126]));
    }

    #[test]
    fn subsets_cover_power_set() {
        assert_eq!(s(&[1, 4, 7]).subsets().count(), 8);
        assert_eq!(Simplex::EMPTY.subsets().collect::<Vec<_>>(), vec![Simplex::EMPTY]);
    }

    #[test]
    fn fresh_vertices_avoid_and_prefer_namespace() {
        let f = fresh_vertices(s(&[96, 3]), 2).unwrap();
        assert_eq!(f, s(&[97, 98]));
        assert!(fresh_vertices(Simplex::range(128), 1).is_err());
    }

    #[test]
    fn dimension_of_empty_simplex() {
        assert_eq!(Simplex::EMPTY.dim(), -1);
        assert_eq!(s(&[2, 5]).dim(), 1);
    }
}
