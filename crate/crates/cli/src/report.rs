//! JSON renderings of results, with vertices shown by label.

use serde::Serialize;
use serde_json::{json, Value};

use nhdual_core::collapse::CollapseSequence;
use nhdual_core::document::{to_document, Labels};
use nhdual_core::homology::BettiProfile;
use nhdual_core::recognition::{Classification, Witness};
use nhdual_core::{Obstruction, SimplicialComplex, TriState};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn complex(k: &SimplicialComplex, labels: &Labels) -> Value {
    serde_json::to_value(to_document(k, None, labels)).expect("documents serialize")
}

fn obstruction(o: &Obstruction) -> Value {
    serde_json::to_value(o).expect("obstructions serialize")
}

pub fn collapse_sequence(seq: &CollapseSequence, labels: &Labels) -> Value {
    // Barycentric subdivisions have their own vertex set.
    let standard = Labels::standard();
    let names = if seq.subdivided { &standard } else { labels };
    let steps: Vec<Value> = seq
        .steps
        .iter()
        .map(|s| {
            json!({
                "free_face": names.simplex_labels(s.free_face),
                "cofacet": names.simplex_labels(s.cofacet),
            })
        })
        .collect();
    json!({
        "subdivided": seq.subdivided,
        "steps": steps,
        "end": complex(&seq.end, names),
    })
}

pub fn classification(c: &Classification, labels: &Labels) -> Value {
    let witness = match &c.witness {
        Witness::Collapse(seq) => json!({ "collapse": collapse_sequence(seq, labels) }),
        Witness::Decomposition(d) => json!({
            "decomposition": { "b": complex(&d.b, labels), "l": complex(&d.l, labels) }
        }),
        Witness::Obstruction(o) => json!({ "obstruction": obstruction(o) }),
        Witness::Unknown(why) => json!({ "unknown": why }),
    };
    json!({
        "version": VERSION,
        "kind": c.kind,
        "dim": c.dim,
        "homotopy_dim": c.homotopy_dim,
        "witness": witness,
    })
}

pub fn collapse(verdict: &TriState<CollapseSequence>, labels: &Labels) -> Value {
    let body = match verdict {
        TriState::Yes(seq) => json!({ "verdict": "yes", "sequence": collapse_sequence(seq, labels) }),
        TriState::No(o) => json!({ "verdict": "no", "obstruction": obstruction(o) }),
        TriState::Unknown(why) => json!({ "verdict": "unknown", "reason": why }),
    };
    with_version(body)
}

#[derive(Serialize)]
struct Homology<'a> {
    version: &'a str,
    profile: &'a BettiProfile,
    groups: Vec<String>,
    acyclic: bool,
    sphere_dim: Option<i32>,
    reduced_euler_characteristic: i64,
}

pub fn homology(k: &SimplicialComplex, profile: &BettiProfile) -> Value {
    let groups = (-1..profile.integral.len() as i32 - 1)
        .map(|i| format!("H{i} = {}", profile.integral_at(i)))
        .collect();
    serde_json::to_value(Homology {
        version: VERSION,
        profile,
        groups,
        acyclic: profile.is_acyclic(),
        sphere_dim: profile.sphere_dim(),
        reduced_euler_characteristic: k.reduced_euler_characteristic(),
    })
    .expect("homology reports serialize")
}

fn with_version(mut body: Value) -> Value {
    body["version"] = json!(VERSION);
    body
}
