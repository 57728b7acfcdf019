//! JSON complex documents with human-readable vertex labels.
//!
//! ```json
//! { "vertices": ["a", "b", "c"], "facets": [["a", "b"], ["c"]],
//!   "includes_empty": true, "ground": ["a", "b", "c", "t"] }
//! ```
//!
//! Labels are sorted and assigned indices in that order, so equal documents
//! always produce equal complexes. Serialization writes the canonical form:
//! sorted vertices, facets sorted by their label lists.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, GroundSet, Result, Simplex, SimplicialComplex, Vertex, FRESH_BASE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    /// `false` together with no facets is the void complex.
    #[serde(default = "yes")]
    pub includes_empty: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground: Option<Vec<String>>,
}

fn yes() -> bool {
    true
}

/// Bidirectional map between vertex indices and labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    names: BTreeMap<Vertex, String>,
    index: BTreeMap<String, Vertex>,
}

impl Labels {
    /// Assigns indices to the labels in lexicographic order.
    pub fn from_sorted(labels: impl IntoIterator<Item = String>) -> Result<Self> {
        let sorted: BTreeSet<String> = labels.into_iter().collect();
        let mut out = Labels::default();
        for name in sorted {
            out.intern(&name)?;
        }
        Ok(out)
    }

    /// Default labels for every vertex index.
    pub fn standard() -> Self {
        Labels::default()
    }

    /// The vertex carrying `name`, allocating the next free index below the
    /// fresh namespace for a new label.
    pub fn intern(&mut self, name: &str) -> Result<Vertex> {
        if let Some(v) = self.index.get(name) {
            return Ok(*v);
        }
        let next = (0..FRESH_BASE)
            .map(Vertex)
            .find(|v| !self.names.contains_key(v))
            .ok_or(Error::VertexCapacity {
                capacity: FRESH_BASE as usize,
            })?;
        self.names.insert(next, name.to_string());
        self.index.insert(name.to_string(), next);
        Ok(next)
    }

    pub fn get(&self, name: &str) -> Option<Vertex> {
        self.index.get(name).copied()
    }

    /// The label of `v`; unnamed vertices get their default label, primed
    /// until it does not clash with a user label.
    pub fn label(&self, v: Vertex) -> String {
        if let Some(n) = self.names.get(&v) {
            return n.clone();
        }
        let mut name = v.default_label();
        while self.index.contains_key(&name) {
            name.push('\'');
        }
        name
    }

    pub fn simplex_labels(&self, s: Simplex) -> Vec<String> {
        s.vertices().map(|v| self.label(v)).collect()
    }
}

/// A parsed document: the complex, its optional ground set and the labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub complex: SimplicialComplex,
    pub ground: Option<GroundSet>,
    pub labels: Labels,
}

fn doc_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        location: location.into(),
        message: message.into(),
    }
}

/// Parses JSON text into a canonical complex.
pub fn parse_document(text: &str) -> Result<Parsed> {
    let doc: ComplexDocument = serde_json::from_str(text)
        .map_err(|e| doc_err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    from_document(&doc)
}

/// Validates a document and builds the complex it describes.
pub fn from_document(doc: &ComplexDocument) -> Result<Parsed> {
    let mut declared = BTreeSet::new();
    for (i, name) in doc.vertices.iter().enumerate() {
        if !declared.insert(name.clone()) {
            return Err(doc_err(format!("vertices[{i}]"), format!("duplicate vertex `{name}`")));
        }
    }
    let mut universe = declared.clone();
    if let Some(ground) = &doc.ground {
        let mut seen = BTreeSet::new();
        for (i, name) in ground.iter().enumerate() {
            if !seen.insert(name) {
                return Err(doc_err(format!("ground[{i}]"), format!("duplicate vertex `{name}`")));
            }
            universe.insert(name.clone());
        }
        if let Some(missing) = declared.iter().find(|n| !seen.contains(n)) {
            return Err(doc_err("ground", format!("ground set is missing vertex `{missing}`")));
        }
    }
    let labels = Labels::from_sorted(universe)?;

    if !doc.includes_empty && !doc.facets.is_empty() {
        return Err(doc_err("includes_empty", "a complex with facets always contains the empty face"));
    }
    let mut used = BTreeSet::new();
    let mut seen_facets = BTreeSet::new();
    let mut gens = Vec::with_capacity(doc.facets.len());
    for (i, facet) in doc.facets.iter().enumerate() {
        let mut s = Simplex::EMPTY;
        for (j, name) in facet.iter().enumerate() {
            if !declared.contains(name) {
                return Err(doc_err(format!("facets[{i}][{j}]"), format!("unknown vertex `{name}`")));
            }
            let v = labels.get(name).expect("declared labels are interned");
            if s.contains(v) {
                return Err(doc_err(format!("facets[{i}][{j}]"), format!("vertex `{name}` repeated")));
            }
            s = s.with(v);
            used.insert(name.clone());
        }
        if !seen_facets.insert(s) {
            return Err(doc_err(format!("facets[{i}]"), "duplicate facet"));
        }
        gens.push(s);
    }
    if let Some(unused) = declared.iter().find(|n| !used.contains(*n)) {
        return Err(doc_err(
            "vertices",
            format!("vertex `{unused}` lies in no facet; list it under ground instead"),
        ));
    }
    let complex = if doc.includes_empty && gens.is_empty() {
        SimplicialComplex::empty_face()
    } else {
        SimplicialComplex::from_facets(gens)
    };
    let ground = doc.ground.as_ref().map(|g| {
        GroundSet::new(g.iter().fold(Simplex::EMPTY, |s, n| s.with(labels.get(n).expect("interned"))))
    });
    Ok(Parsed {
        complex,
        ground,
        labels,
    })
}

/// Canonical document for a complex.
pub fn to_document(k: &SimplicialComplex, ground: Option<GroundSet>, labels: &Labels) -> ComplexDocument {
    let mut vertices: Vec<String> = k.vertices().map(|v| labels.label(v)).collect();
    vertices.sort();
    let mut facets: Vec<Vec<String>> = k
        .facets()
        .iter()
        .map(|f| {
            let mut names = labels.simplex_labels(*f);
            names.sort();
            names
        })
        .collect();
    facets.sort();
    if k.is_empty_face() {
        facets.clear();
    }
    let ground = ground.map(|g| {
        let mut names = labels.simplex_labels(g.simplex());
        names.sort();
        names
    });
    ComplexDocument {
        vertices,
        facets,
        includes_empty: !k.is_void(),
        ground,
    }
}

/// Pretty-printed canonical JSON.
pub fn serialize_document(k: &SimplicialComplex, ground: Option<GroundSet>, labels: &Labels) -> String {
    serde_json::to_string_pretty(&to_document(k, ground, labels)).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::letters as cx;

    #[test]
    fn parse_examples() {
        let p = parse_document(r#"{"vertices":["a","b"],"facets":[["a","b"]],"includes_empty":true}"#).unwrap();
        assert_eq!(p.complex, cx("ab"));
        let p = parse_document(r#"{"vertices":[],"facets":[],"includes_empty":true}"#).unwrap();
        assert!(p.complex.is_empty_face());
        let p = parse_document(r#"{"vertices":[],"facets":[],"includes_empty":false}"#).unwrap();
        assert!(p.complex.is_void());
    }

    #[test]
    fn containment_is_normalized_and_duplicates_rejected() {
        let p = parse_document(r#"{"vertices":["a","b"],"facets":[["a","b"],["a"]]}"#).unwrap();
        assert_eq!(p.complex, cx("ab"));
        let e = parse_document(r#"{"vertices":["a","b"],"facets":[["a","b"],["b","a"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Document { ref location, .. } if location == "facets[1]"));
        let e = parse_document(r#"{"vertices":["a","a"],"facets":[["a"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Document { ref location, .. } if location == "vertices[1]"));
    }

    #[test]
    fn unknown_labels_and_malformed_text_report_positions() {
        let e = parse_document(r#"{"vertices":["a"],"facets":[["a","z"]]}"#).unwrap_err();
        assert!(matches!(e, Error::Document { ref location, .. } if location == "facets[0][1]"));
        let e = parse_document("{\n  \"vertices\": [\"a\",\n").unwrap_err();
        assert!(matches!(e, Error::Document { ref location, .. } if location.starts_with("line ")));
    }

    #[test]
    fn ground_must_cover_vertices() {
        let p = parse_document(r#"{"vertices":["b"],"facets":[["b"]],"ground":["a","b","t"]}"#).unwrap();
        assert_eq!(p.ground.unwrap().len(), 3);
        assert!(parse_document(r#"{"vertices":["b"],"facets":[["b"]],"ground":["a"]}"#).is_err());
    }

    #[test]
    fn labels_sort_lexicographically() {
        let p = parse_document(r#"{"vertices":["z","m","a"],"facets":[["z","m"],["a"]]}"#).unwrap();
        assert_eq!(p.labels.get("a"), Some(Vertex(0)));
        assert_eq!(p.labels.get("z"), Some(Vertex(2)));
    }

    #[test]
    fn fresh_vertices_get_distinct_labels() {
        let p = parse_document(r#"{"vertices":["w00"],"facets":[["w00"]]}"#).unwrap();
        assert_eq!(p.labels.label(Vertex(FRESH_BASE)), "w00'");
    }

    #[test]
    fn round_trip() {
        let text = r#"{"vertices":["c","a","b"],"facets":[["c"],["b","a"]],"ground":["t","a","b","c"]}"#;
        let p = parse_document(text).unwrap();
        let out = serialize_document(&p.complex, p.ground, &p.labels);
        let q = parse_document(&out).unwrap();
        assert_eq!(p, q);
        assert_eq!(serialize_document(&q.complex, q.ground, &q.labels), out);
    }
}
